"""Graded presentations of cobordism rings of classifying spaces.

A presentation is a list of generators with positive degrees plus a list
of relation series in those generators, over a coefficient ring that is
either a formal group law model (truncated at a bound) or the integers.
Over the integers the graded pieces are computed exactly with the Smith
normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .chern import dual_chern, elementary, p_series, roots_of, symmetric_reduce, Line, Sum, Tensor
from .coeff import CoeffPoly
from .errors import BoundTooSmall, NonHomogeneousRelation, PSeriesObstructed, UnsupportedGroup
from .fgl import FGLModel, formal_sum, inverse_series, n_series
from .series import Series, SeriesVar, express_in, substitute, var
from .snf import rank_and_torsion, reduce_mod_lattice

__all__ = [
    "Group",
    "Coefficients",
    "GradedPresentation",
    "GradedComponent",
    "parse_group",
    "present",
    "bq_relations",
    "bq_auxiliary",
    "chow_specialize",
    "graded_component",
    "kunneth",
    "reduce_modulo",
    "dihedral_chow",
    "point",
]


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class Group:
    family: str                 # GL, SL, Sp, O, SO, Z, Q8, D8, point
    params: Tuple[int, ...] = ()

    def __str__(self):
        if self.family == "Z":
            return "x".join(f"Z/{n}" for n in self.params)
        if self.family in ("Q8", "D8", "point"):
            return self.family
        return f"{self.family}({self.params[0]})"


_CLASSICAL = re.compile(r"^(GL|SL|Sp|SO|O)\((\d+)\)$")


def parse_group(text: Union[str, Group]) -> Group:
    """Read ``GL(n)``, ``SL(n)``, ``Sp(2n)``, ``O(n)``, ``SO(2n+1)``,
    ``Z/2xZ/3`` (or ``Z(2,3)``), ``Q8``, ``D8`` and ``point``."""
    if isinstance(text, Group):
        return text
    s = text.replace(" ", "")
    m = _CLASSICAL.match(s)
    if m:
        fam, n = m.group(1), int(m.group(2))
        if n < 1:
            raise UnsupportedGroup(f"{text}: rank must be positive")
        if fam == "Sp" and n % 2:
            raise UnsupportedGroup(f"{text}: symplectic groups are written Sp(2n)")
        if fam == "SO" and n % 2 == 0:
            raise UnsupportedGroup(f"{text}: only odd special orthogonal groups are supported")
        return Group(fam, (n,))
    if s.upper() in ("Q8", "D8", "POINT"):
        return Group(s.upper() if s.upper() != "POINT" else "point")
    m = re.match(r"^Z\((\d+(?:,\d+)*)\)$", s)
    if m:
        ns = tuple(int(k) for k in m.group(1).split(","))
    elif re.match(r"^Z/\d+(?:[x*]Z/\d+)*$", s):
        ns = tuple(int(k) for k in re.findall(r"Z/(\d+)", s))
    else:
        raise UnsupportedGroup(f"unsupported group {text!r}")
    if any(n < 1 for n in ns):
        raise UnsupportedGroup(f"{text}: cyclic orders must be positive")
    return Group("Z", ns)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Coefficients:
    kind: str                   # free | log | add | mult | custom | integers
    D: Optional[int] = None
    Dc: Optional[int] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "D": self.D, "Dc": self.Dc}


INTEGERS = Coefficients("integers")


@dataclass(frozen=True)
class GradedPresentation:
    coefficient: Coefficients
    generators: Tuple[Tuple[str, int], ...]
    relations: Tuple[Series, ...]
    meta: Dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(sorted(((n, int(d)) for n, d in self.generators), key=lambda g: (g[1], g[0])))
        if any(d < 1 for _, d in gens):
            raise ValueError("generator degrees must be positive")
        vars = tuple(SeriesVar(n, d) for n, d in gens)
        rels = tuple(r.with_vars(vars) for r in self.relations)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)

    @property
    def vars(self) -> Tuple[SeriesVar, ...]:
        return tuple(SeriesVar(n, d) for n, d in self.generators)

    def to_json(self) -> dict:
        return {
            "coefficient": self.coefficient.to_json(),
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": [r.to_json() for r in self.relations],
            "meta": {"group": self.meta.get("group", ""), "paper_eq": self.meta.get("paper_eq", "")},
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedPresentation":
        c = data["coefficient"]
        return cls(Coefficients(c["kind"], c.get("D"), c.get("Dc")),
                   tuple((g["name"], g["degree"]) for g in data["generators"]),
                   tuple(Series.from_json(r) for r in data["relations"]),
                   dict(data.get("meta", {})))

    def to_text(self) -> str:
        gens = ", ".join(f"{n}({d})" for n, d in self.generators)
        lines = [f"group: {self.meta.get('group', '')}",
                 f"coefficients: {self.coefficient.kind}"
                 + (f" D={self.coefficient.D}" if self.coefficient.D is not None else ""),
                 f"generators: {gens}",
                 f"relations: {len(self.relations)}"]
        lines += [f"  {r.to_text()}" for r in self.relations]
        return "\n".join(lines)


def _coefficients(F: FGLModel, D: int) -> Coefficients:
    return Coefficients(F.kind, D, F.coeff_bound)


def point(coefficient: Coefficients = INTEGERS) -> GradedPresentation:
    return GradedPresentation(coefficient, (), (), {"group": "point", "paper_eq": "coefficient ring"})


def _orthogonal_relations(n: int, F: FGLModel, D: int, drop_c1: bool) -> List[Series]:
    rels = []
    lo = 2 if drop_c1 else 1
    zero = {"c1": Series.zero(D)} if drop_c1 else {}
    for i in range(lo, n + 1):
        ci = var(f"c{i}", i, D)
        star = dual_chern(n, i, F, D)
        rel = ci - star
        if zero:
            rel = substitute(rel, zero)
        rels.append(rel)
    return rels


def present(group: Union[str, Group], F: FGLModel, D: Optional[int] = None) -> GradedPresentation:
    """Presentation of the cobordism ring of ``BG`` at bound ``D``."""
    G = parse_group(group)
    D = F.bound if D is None else min(D, F.bound)
    coeff = _coefficients(F, D)
    fam = G.family
    meta = {"group": str(G)}
    if fam == "point":
        meta["paper_eq"] = "coefficient ring"
        return GradedPresentation(coeff, (), (), meta)
    if fam in ("GL", "SL", "O", "SO"):
        n = G.params[0]
        lo = 2 if fam in ("SL", "SO") else 1
        gens = tuple((f"c{i}", i) for i in range(lo, n + 1))
    elif fam == "Sp":
        n = G.params[0] // 2
        gens = tuple((f"c{2 * i}", 2 * i) for i in range(1, n + 1))
    elif fam == "Z":
        r = len(G.params)
        gens = (("x", 1),) if r == 1 else tuple((f"x{i}", 1) for i in range(1, r + 1))
    elif fam == "Q8":
        gens = (("x", 1), ("y", 1), ("z", 2))
    else:
        raise UnsupportedGroup(f"{G} has no cobordism presentation here; see dihedral_chow")
    top = max((d for _, d in gens), default=0)
    if D < top:
        raise BoundTooSmall(f"bound D={D} is below the top generator degree {top} of {G}")

    rels: List[Series] = []
    if fam == "GL":
        meta["paper_eq"] = "Omega*[[c1,...,cn]]"
    elif fam == "SL":
        meta["paper_eq"] = "Omega*[[c2,...,cn]]"
    elif fam == "Sp":
        meta["paper_eq"] = "Omega*[[c2,c4,...,c2n]]"
    elif fam == "O":
        meta["paper_eq"] = "Omega*[[c1,...,cn]]/<ci = ci*>"
        rels = _orthogonal_relations(G.params[0], F, D, drop_c1=False)
    elif fam == "SO":
        meta["paper_eq"] = "Omega*[[c2,...,c2n+1]]/<ci = ci*>"
        rels = _orthogonal_relations(G.params[0], F, D, drop_c1=True)
    elif fam == "Z":
        meta["paper_eq"] = "Omega*[[x1,...,xr]]/([n1](x1),...,[nr](xr))"
        names = [g for g, _ in gens]
        rels = [n_series(F, n).truncated(D).rename({"x": name}) for n, name in zip(G.params, names)]
    elif fam == "Q8":
        meta["paper_eq"] = "Omega*[[x,y,z]]/I, I generated by six relation series"
        rels = bq_relations(F, D)
    return GradedPresentation(coeff, gens, tuple(rels), meta)


def dihedral_chow() -> GradedPresentation:
    """Chow ring of ``BD8`` as a fixed integral presentation."""
    D = 4
    x, y, z = var("x", 1, D), var("y", 1, D), var("z", 2, D)
    rels = (x.scale(2), y.scale(2), z.scale(4), x * y - z.scale(2))
    return GradedPresentation(INTEGERS, (("x", 1), ("y", 1), ("z", 2)), rels,
                              {"group": "D8", "paper_eq": "Z[x,y,z]/(2x, 2y, 4z, xy - 2z)"})


# ---------------------------------------------------------------------------
# the quaternion group


def _bq_context(F: FGLModel, D: int):
    P, res = p_series(F, D)
    if res:
        raise PSeriesObstructed(
            f"x + i(x) is not a series in x*i(x) at D={D}; residual starts in degree {res.lowest_degree()}")
    Pp = P.rename({"u": "p"})
    a, b, m, n = (var(v, 1, D) for v in "abmn")

    def finish(rel: Series) -> Series:
        # symmetric in (m, n): pass to (s, p), use s = P(p), then rename
        red = symmetric_reduce(rel, ["m", "n"], ["s", "p"])
        red = substitute(red, {"s": Pp})
        return red.rename({"a": "x", "b": "y", "p": "z"})

    return a, b, m, n, finish


def bq_relations(F: FGLModel, D: Optional[int] = None) -> List[Series]:
    """The six relation series for the quaternion group, in ``x, y, z``.

    Roots: ``a, b`` for the two sign characters, ``m, n`` for the
    two-dimensional representation, ``c = F(a, b)``.
    """
    D = F.bound if D is None else min(D, F.bound)
    a, b, m, n, finish = _bq_context(F, D)
    mn = m * n
    r1 = formal_sum(F, a, m) * formal_sum(F, a, n) - mn
    r2 = formal_sum(F, b, m) * formal_sum(F, b, n) - mn
    two = n_series(F, 2).truncated(D)
    r3 = substitute(two, {"x": a})
    r4 = substitute(two, {"x": b})
    c = formal_sum(F, a, b)
    r5 = a * b + b * c + c * a - substitute(two, {"x": m}) * substitute(two, {"x": n})
    rels = [finish(r) for r in (r1, r2)]
    rels += [r3.rename({"a": "x"}), r4.rename({"b": "y"})]
    rels.append(finish(r5))
    rels.append(_r6(F, D))
    xyz = (SeriesVar("x", 1), SeriesVar("y", 1), SeriesVar("z", 2))
    return [r.with_vars(xyz) for r in rels]


def _r6(F: FGLModel, D: int) -> Series:
    """``c2(4 eta) - c2(eta^3)`` as a series in ``z = c2(eta)``."""
    m = var("m", 1, D)
    eta = Sum(Line(m), Line(substitute(inverse_series(F).truncated(D), {"x": m})))
    G = elementary(roots_of(Sum(eta, eta, eta, eta), F), D)[2]
    H = elementary(roots_of(Tensor(eta, eta, eta), F), D)[2]
    e2 = elementary(roots_of(eta, F), D)[2]
    out, res = express_in(G - H, [("z", e2)])
    if res:
        raise PSeriesObstructed(f"c2(4V) - c2(V^3) is not a series in c2(V) at D={D}")
    return out


def bq_auxiliary(F: FGLModel, D: Optional[int] = None) -> Dict[str, Series]:
    """The first and third Chern class comparisons, reduced like the six relations.

    These are not part of the presentation; they are kept for auditing
    whether the second comparison implies them.
    """
    D = F.bound if D is None else min(D, F.bound)
    a, b, m, n, finish = _bq_context(F, D)
    c = formal_sum(F, a, b)
    two = n_series(F, 2).truncated(D)
    tm, tn = substitute(two, {"x": m}), substitute(two, {"x": n})
    xyz = (SeriesVar("x", 1), SeriesVar("y", 1), SeriesVar("z", 2))
    return {
        "R5a": finish(a + b + c - tm - tn).with_vars(xyz),
        "R5c": (a * b * c).rename({"a": "x", "b": "y"}).with_vars(xyz),
    }


# ---------------------------------------------------------------------------
# Chow specialization and graded pieces


def chow_specialize(p: GradedPresentation) -> GradedPresentation:
    """Send every coefficient generator to zero and keep the integral part."""
    rels = []
    for r in p.relations:
        img = r.map_coeffs(lambda c: CoeffPoly.const(c.terms.get((), 0)))
        if not img:
            continue
        if not img.is_homogeneous():
            raise NonHomogeneousRelation(f"Chow image {img.to_text()} is not homogeneous")
        rels.append(img)
    return GradedPresentation(INTEGERS, p.generators, tuple(rels), dict(p.meta))


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    rank: int
    torsion: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": [str(t) for t in self.torsion]}


def _monomials(weights: Sequence[int], d: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of weighted degree exactly ``d``, lex-descending."""
    out = []

    def rec(i, left, acc):
        if i == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // weights[i], -1, -1):
            rec(i + 1, left - e * weights[i], acc + [e])

    rec(0, d, [])
    return out


def _integral_terms(r: Series) -> Dict[Tuple[int, ...], int]:
    out = {}
    for e, c in r.terms.items():
        if not c.is_constant():
            raise ValueError("relation has non-integral coefficients; apply chow_specialize first")
        out[e] = c.constant()
    return out


def _relation_lattice(p: GradedPresentation, d: int, relations=None):
    weights = [deg for _, deg in p.generators]
    basis = _monomials(weights, d)
    index = {e: k for k, e in enumerate(basis)}
    rows = []
    for r in (p.relations if relations is None else relations):
        if not r:
            continue
        if not r.is_homogeneous():
            raise NonHomogeneousRelation(f"relation {r.to_text()} is not homogeneous")
        rd = r.lowest_degree()
        if rd > d:
            continue
        terms = _integral_terms(r)
        for mono in _monomials(weights, d - rd):
            row = [0] * len(basis)
            for e, c in terms.items():
                row[index[tuple(a + b for a, b in zip(e, mono))]] += c
            if any(row):
                rows.append(row)
    return basis, rows


def graded_component(p: GradedPresentation, d: int) -> GradedComponent:
    """Free rank and torsion of the degree ``d`` piece of an integral presentation."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    basis, rows = _relation_lattice(p, d)
    rank, torsion = rank_and_torsion(rows, len(basis))
    return GradedComponent(d, rank, tuple(torsion))


def reduce_modulo(f: Series, p: GradedPresentation, relations: Optional[Sequence[Series]] = None) -> Series:
    """Canonical representative of a homogeneous ``f`` modulo the relation lattice.

    ``relations`` defaults to all relations of ``p``; monomials are ordered
    lexicographically in the generator order of ``p``.
    """
    f = f.with_vars(p.vars)
    if not f:
        return f
    if not f.is_homogeneous():
        raise NonHomogeneousRelation("can only reduce homogeneous elements")
    d = f.lowest_degree()
    basis, rows = _relation_lattice(p, d, relations)
    terms = _integral_terms(f)
    vec = [terms.get(e, 0) for e in basis]
    red = reduce_mod_lattice(vec, rows) if rows else vec
    return Series(p.vars, {e: c for e, c in zip(basis, red) if c}, f.bound)


def kunneth(*ps: GradedPresentation) -> GradedPresentation:
    """Tensor product of presentations over a common coefficient ring.

    A generator name used by more than one factor is renamed to
    ``name<k>`` in factor ``k`` (counting from 1).
    """
    if not ps:
        return point()
    coeffs = {p.coefficient for p in ps if p.generators or p.relations}
    if len(coeffs) > 1:
        raise ValueError(f"factors live over different coefficient rings: {sorted(map(str, coeffs))}")
    coefficient = coeffs.pop() if coeffs else ps[0].coefficient
    counts: Dict[str, int] = {}
    for p in ps:
        for name, _ in p.generators:
            counts[name] = counts.get(name, 0) + 1
    gens, rels, groups = [], [], []
    for k, p in enumerate(ps, start=1):
        mapping = {name: f"{name}{k}" for name, _ in p.generators if counts[name] > 1}
        gens += [(mapping.get(n, n), d) for n, d in p.generators]
        rels += [r.rename(mapping) for r in p.relations]
        if p.meta.get("group", "point") != "point":
            groups.append(p.meta["group"])
    meta = {"group": " x ".join(groups) or "point",
            "paper_eq": "tensor product over the coefficient ring"}
    return GradedPresentation(coefficient, tuple(gens), tuple(rels), meta)
