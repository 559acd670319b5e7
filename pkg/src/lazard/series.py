"""Truncated multivariate power series with :class:`CoeffPoly` coefficients.

Variables carry positive integer weights (the cohomological degree of the
class they stand for), and a series is truncated at a bound ``D`` on the
weighted total degree.  Everything of weighted degree above ``D`` is
dropped; all operations below are exact up to that bound.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .coeff import CoeffPoly, ONE, _min_bound, mul_terms_into
from .errors import NonNilpotentSubstitution, NotInvertible

__all__ = [
    "SeriesVar",
    "Series",
    "var",
    "substitute",
    "compositional_inverse",
    "express_in",
    "DEFAULT_BOUND",
]

DEFAULT_BOUND = 6

Exps = Tuple[int, ...]
Scalar = Union[int, CoeffPoly]


class SeriesVar(NamedTuple):
    name: str
    weight: int = 1


def _as_coeff(c: Scalar) -> CoeffPoly:
    return c if isinstance(c, CoeffPoly) else CoeffPoly.const(c)


class Series:
    """Immutable truncated power series.

    ``terms`` maps exponent vectors (aligned with ``vars``) to nonzero
    coefficients; every stored exponent has weighted degree ``<= bound``.
    """

    __slots__ = ("vars", "terms", "bound", "_weights")

    def __init__(self, vars: Sequence[SeriesVar], terms: Mapping[Exps, Scalar], bound: int):
        vars = tuple(SeriesVar(*v) if not isinstance(v, SeriesVar) else v for v in vars)
        names = [v.name for v in vars]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if any(v.weight < 1 for v in vars):
            raise ValueError("variable weights must be positive")
        if bound < 0:
            raise ValueError("series bound must be non-negative")
        self.vars = vars
        self.bound = bound
        self._weights = tuple(v.weight for v in vars)
        clean: Dict[Exps, CoeffPoly] = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != len(vars) or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            if self._wdeg(e) > bound:
                continue
            c = _as_coeff(c)
            if e in clean:
                c = clean[e] + c
            clean[e] = c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, vars, terms, bound) -> "Series":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.bound = bound
        obj._weights = tuple(v.weight for v in vars)
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c: Scalar, bound: int = DEFAULT_BOUND, vars: Sequence[SeriesVar] = ()) -> "Series":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, bound)

    @classmethod
    def zero(cls, bound: int = DEFAULT_BOUND, vars: Sequence[SeriesVar] = ()) -> "Series":
        return cls(tuple(vars), {}, bound)

    def _wdeg(self, e: Exps) -> int:
        return sum(x * w for x, w in zip(e, self._weights))

    # ---- inspection -------------------------------------------------------

    @property
    def var_names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def coeff_bound(self) -> Optional[int]:
        bound = None
        for c in self.terms.values():
            bound = _min_bound(bound, c.bound)
        return bound

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lowest_degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(self._wdeg(e) for e in self.terms)

    def constant_term(self) -> CoeffPoly:
        return self.terms.get((0,) * len(self.vars), CoeffPoly())

    def homogeneous_part(self, d: int) -> "Series":
        return Series._raw(self.vars, {e: c for e, c in self.terms.items() if self._wdeg(e) == d},
                           self.bound)

    def coefficient(self, **exps: int) -> CoeffPoly:
        """Coefficient of the monomial given by keyword exponents, e.g. ``f.coefficient(x=1, y=2)``."""
        unknown = set(exps) - set(self.var_names)
        if any(exps[n] for n in unknown):
            return CoeffPoly()
        key = tuple(exps.get(v.name, 0) for v in self.vars)
        return self.terms.get(key, CoeffPoly())

    def is_homogeneous(self) -> bool:
        return len({self._wdeg(e) for e in self.terms}) <= 1

    def occurring_vars(self) -> Tuple[str, ...]:
        return tuple(v.name for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    # ---- variable bookkeeping --------------------------------------------

    def with_vars(self, vars: Sequence[SeriesVar]) -> "Series":
        """Re-express over a variable list that contains every occurring variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v.name: (i, v.weight) for i, v in enumerate(vars)}
        index = []
        for k, v in enumerate(self.vars):
            if v.name in pos:
                i, w = pos[v.name]
                if w != v.weight:
                    raise ValueError(f"variable {v.name} has conflicting weights {w} and {v.weight}")
                index.append(i)
            else:
                index.append(None)
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(vars)
            for k, x in enumerate(e):
                if x:
                    if index[k] is None:
                        raise ValueError(f"variable {self.vars[k].name} missing from target list")
                    new[index[k]] = x
            out[tuple(new)] = c
        return Series._raw(vars, out, self.bound)

    def rename(self, mapping: Mapping[str, str]) -> "Series":
        vars = tuple(SeriesVar(mapping.get(v.name, v.name), v.weight) for v in self.vars)
        return Series(vars, self.terms, self.bound)

    def truncated(self, bound: int) -> "Series":
        bound = min(bound, self.bound)
        return Series._raw(self.vars, {e: c for e, c in self.terms.items() if self._wdeg(e) <= bound},
                           bound)

    def truncated_coeffs(self, coeff_bound: Optional[int]) -> "Series":
        return self.map_coeffs(lambda c: c.truncated(coeff_bound))

    def map_coeffs(self, fn) -> "Series":
        out = {}
        for e, c in self.terms.items():
            c = fn(c)
            if c:
                out[e] = c
        return Series._raw(self.vars, out, self.bound)

    # ---- arithmetic -------------------------------------------------------

    def _align(self, other: "Series"):
        if self.vars == other.vars:
            return self.vars, self, other
        have = {v.name for v in self.vars}
        vars = self.vars + tuple(v for v in other.vars if v.name not in have)
        return vars, self.with_vars(vars), other.with_vars(vars)

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, CoeffPoly)):
            return Series.constant(other, self.bound, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        vars, f, g = self._align(other)
        bound = min(f.bound, g.bound)
        out = {e: c for e, c in f.terms.items() if f._wdeg(e) <= bound}
        for e, c in g.terms.items():
            if g._wdeg(e) > bound:
                continue
            out[e] = out[e] + c if e in out else c
        return Series._raw(vars, {e: c for e, c in out.items() if c}, bound)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.bound)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Series":
        c = _as_coeff(c)
        out = {}
        for e, v in self.terms.items():
            p = v * c
            if p:
                out[e] = p
        return Series._raw(self.vars, out, self.bound)

    def __mul__(self, other):
        if isinstance(other, (int, CoeffPoly)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        vars, f, g = self._align(other)
        bound = min(f.bound, g.bound)
        cbound = _min_bound(f.coeff_bound, g.coeff_bound)
        gs = sorted(((g._wdeg(e), e, c.terms) for e, c in g.terms.items()), key=lambda t: t[0])
        acc: Dict[Exps, dict] = {}
        for ea, ca in f.terms.items():
            da = f._wdeg(ea)
            for db, eb, cb in gs:
                if da + db > bound:
                    break
                e = tuple(map(add, ea, eb))
                slot = acc.get(e)
                if slot is None:
                    slot = acc[e] = {}
                mul_terms_into(slot, ca.terms, cb, cbound)
        out = {}
        for e, raw in acc.items():
            c = CoeffPoly._raw(raw, cbound)
            if c:
                out[e] = c
        return Series._raw(vars, out, bound)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative power of a series")
        result = Series.constant(1, self.bound, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ---- comparison -------------------------------------------------------

    def canonical(self) -> Dict[Tuple[Tuple[str, int], ...], CoeffPoly]:
        """Terms keyed by (name, exponent) pairs, independent of variable order."""
        out = {}
        for e, c in self.terms.items():
            key = tuple(sorted((v.name, x) for v, x in zip(self.vars, e) if x))
            out[key] = c
        return out

    def __eq__(self, other):
        if isinstance(other, (int, CoeffPoly)):
            other = Series.constant(other, self.bound, self.vars)
        if not isinstance(other, Series):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(frozenset(self.canonical().items()))

    # ---- text / json ------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (self._wdeg(ec[0]), tuple(-x for x in ec[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        items = self.sorted_terms()
        pieces = []
        for k, (e, c) in enumerate(items):
            mono = "*".join(v.name + ("^%d" % x if x > 1 else "") for v, x in zip(self.vars, e) if x)
            negative = False
            if c.is_constant():
                n = c.constant()
                negative = n < 0
                mag = abs(n)
                if not mono:
                    body = str(mag)
                else:
                    body = mono if mag == 1 else f"{mag}*{mono}"
            elif len(c) == 1:
                ((cm, n),) = c.terms.items()
                negative = n < 0
                ctext = (-c).to_text() if negative else c.to_text()
                body = f"{ctext}*{mono}" if mono else ctext
            else:
                ctext = c.to_text()
                if mono:
                    body = f"({ctext})*{mono}"
                else:
                    body = ctext if len(items) == 1 else f"({ctext})"
            if k == 0:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    __str__ = to_text

    def __repr__(self):
        return f"Series({self.to_text()!r}, bound={self.bound})"

    def to_json(self) -> dict:
        return {
            "vars": [{"name": v.name, "weight": v.weight} for v in self.vars],
            "bound": self.bound,
            "coeff_bound": self.coeff_bound,
            "terms": [{"exponents": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        vars = tuple(SeriesVar(v["name"], v["weight"]) for v in data["vars"])
        cb = data.get("coeff_bound")
        terms = {tuple(t["exponents"]): CoeffPoly.from_json(t["coeff"], cb) for t in data["terms"]}
        return cls(vars, terms, data["bound"])


def var(name: str, weight: int = 1, bound: int = DEFAULT_BOUND) -> Series:
    return Series((SeriesVar(name, weight),), {(1,): 1}, bound)


# ---------------------------------------------------------------------------
# composition


def substitute(f: Series, bindings: Mapping[str, Series], certified: bool = False) -> Series:
    """Replace variables of ``f`` by series.

    Unbound variables pass through.  A replacement with a nonzero constant
    term is refused unless ``certified`` is set, since the truncated tail of
    ``f`` would then leak into low degrees.
    """
    bindings = {k: v for k, v in bindings.items() if k in f.var_names}
    if not bindings:
        return f
    for name, s in bindings.items():
        if s.constant_term() and not certified:
            raise NonNilpotentSubstitution(f"replacement for {name} has a nonzero constant term")
    bound = min([f.bound] + [s.bound for s in bindings.values()])
    free_idx = [i for i, v in enumerate(f.vars) if v.name not in bindings]
    bound_idx = [i for i, v in enumerate(f.vars) if v.name in bindings]
    free_vars = tuple(f.vars[i] for i in free_idx)

    # common variable list for the output
    vars = list(free_vars)
    have = {v.name for v in vars}
    for i in bound_idx:
        for v in bindings[f.vars[i].name].vars:
            if v.name not in have:
                vars.append(v)
                have.add(v.name)
    vars = tuple(vars)
    reps = [bindings[f.vars[i].name].with_vars(vars) for i in bound_idx]
    low = [r.lowest_degree() for r in reps]

    groups: Dict[Exps, Dict[Exps, CoeffPoly]] = {}
    for e, c in f.terms.items():
        key = tuple(e[i] for i in bound_idx)
        rest = tuple(e[i] for i in free_idx)
        groups.setdefault(key, {})[rest] = c

    powers: Dict[Tuple[int, int], Series] = {}

    def power(k: int, n: int) -> Series:
        if (k, n) not in powers:
            if n == 0:
                powers[(k, n)] = Series.constant(1, bound, vars)
            elif n == 1:
                powers[(k, n)] = reps[k].truncated(bound)
            else:
                half = power(k, n // 2)
                sq = half * half
                powers[(k, n)] = sq * reps[k] if n % 2 else sq
        return powers[(k, n)]

    acc = Series.zero(bound, vars)
    for key, rest_terms in sorted(groups.items()):
        rest = Series(free_vars, rest_terms, bound).with_vars(vars)
        lowest = rest.lowest_degree()
        skip = False
        for k, n in enumerate(key):
            if n and low[k] is None:
                skip = True
                break
            if n and not certified:
                lowest += n * low[k]
        if skip or lowest > bound:
            continue
        term = rest
        for k, n in enumerate(key):
            if n:
                term = term * power(k, n)
        acc = acc + term
    return acc


def compositional_inverse(f: Series) -> Series:
    """The series ``g`` in the same variable with ``f(g(t)) = g(f(t)) = t``."""
    if len(f.vars) != 1:
        raise NotInvertible("compositional inverse needs a univariate series")
    (t,) = f.vars
    if f.constant_term():
        raise NotInvertible("series has a nonzero constant term")
    lin = f.terms.get((1,), CoeffPoly())
    if not lin.is_constant() or lin.constant() not in (1, -1):
        raise NotInvertible(f"linear coefficient {lin} is not a unit")
    unit = lin.constant()
    D = f.bound
    cb = f.coeff_bound
    g = Series((t,), {(1,): unit}, D)
    for k in range(2, D // t.weight + 1):
        err = substitute(f.truncated(k * t.weight), {t.name: g.truncated(k * t.weight)})
        eps = err.terms.get((k,))
        if eps:
            g = g - Series((t,), {(k,): (eps * unit).truncated(cb)}, D)
    return g


# ---------------------------------------------------------------------------
# re-expression in terms of other series


def _weighted_exponents(weights: Sequence[int], d: int) -> List[Exps]:
    if not weights:
        return [()] if d == 0 else []
    out = []
    w, rest = weights[0], weights[1:]
    for k in range(d // w + 1):
        for tail in _weighted_exponents(rest, d - k * w):
            out.append((k,) + tail)
    return out


class _RationalSolver:
    """Fixed particular-solution map for an integer linear system ``M c = b``."""

    def __init__(self, matrix: List[List[int]], ncols: int):
        nrows = len(matrix)
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == k)) for k in range(nrows)]
               for i, row in enumerate(matrix)]
        pivots = []
        r = 0
        for col in range(ncols):
            p = next((i for i in range(r, nrows) if aug[i][col] != 0), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            piv = aug[r][col]
            aug[r] = [x / piv for x in aug[r]]
            for i in range(nrows):
                if i != r and aug[i][col] != 0:
                    factor = aug[i][col]
                    aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
            pivots.append(col)
            r += 1
        self.rank = r
        self.pivots = pivots
        self.ncols = ncols
        self.transform = [row[ncols:] for row in aug]

    def solve(self, b: List[int]) -> Optional[List[int]]:
        bb = [sum((e * x for e, x in zip(row, b) if x), Fraction(0)) for row in self.transform]
        if any(bb[i] for i in range(self.rank, len(bb))):
            return None
        sol = [Fraction(0)] * self.ncols
        for i, col in enumerate(self.pivots):
            sol[col] = bb[i]
        if any(v.denominator != 1 for v in sol):
            return None
        return [int(v) for v in sol]


def express_in(g: Series, targets: Sequence[Tuple[str, Series]],
               bound: Optional[int] = None) -> Tuple[Series, Series]:
    """Rewrite ``g`` as a power series in the ``targets``.

    Works degree by degree from the bottom: the lowest remaining homogeneous
    part of ``g`` is matched against the lowest homogeneous parts of target
    monomials of the same degree by exact integer linear algebra.  What
    cannot be matched is moved to the residual, never guessed.

    Returns ``(result, residual)`` where ``result`` is a series in new
    variables named after the targets (weight = lowest degree of the target)
    and ``substitute(result, targets) + residual == g`` up to the bound.
    """
    D = min([g.bound] + [t.bound for _, t in targets])
    if bound is not None:
        D = min(D, bound)
    weights = []
    for name, t in targets:
        w = t.lowest_degree()
        if w is None:
            # vanishes to this bound, so it cannot contribute
            weights.append(D + 1)
            continue
        if w == 0:
            raise ValueError(f"target {name} must have zero constant term")
        lead = t.homogeneous_part(w)
        if not all(c.is_constant() for c in lead.terms.values()):
            raise ValueError(f"lowest part of target {name} must have integer coefficients")
        weights.append(w)
    out_vars = tuple(SeriesVar(name, w) for (name, _), w in zip(targets, weights))

    # common variable space for g and all targets
    vars = list(g.vars)
    have = {v.name for v in vars}
    for _, t in targets:
        for v in t.vars:
            if v.name not in have:
                vars.append(v)
                have.add(v.name)
    vars = tuple(vars)
    tgt = [t.with_vars(vars).truncated(D) for _, t in targets]
    leads = [{e: c.constant() for e, c in t.homogeneous_part(w).terms.items()} if w <= D else {}
             for t, w in zip(tgt, weights)]
    remaining = g.with_vars(vars).truncated(D)

    lead_cache: Dict[Exps, Dict[Exps, int]] = {(0,) * len(tgt): {(0,) * len(vars): 1}}
    full_cache: Dict[Exps, Series] = {(0,) * len(tgt): Series.constant(1, D, vars)}

    def lead_of(alpha: Exps) -> Dict[Exps, int]:
        if alpha not in lead_cache:
            k = next(i for i, a in enumerate(alpha) if a)
            prev = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
            base = lead_of(prev)
            prod: Dict[Exps, int] = {}
            for e1, c1 in base.items():
                for e2, c2 in leads[k].items():
                    e = tuple(map(add, e1, e2))
                    prod[e] = prod.get(e, 0) + c1 * c2
            lead_cache[alpha] = {e: c for e, c in prod.items() if c}
        return lead_cache[alpha]

    def full_of(alpha: Exps) -> Series:
        if alpha not in full_cache:
            k = next(i for i, a in enumerate(alpha) if a)
            prev = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
            full_cache[alpha] = full_of(prev) * tgt[k]
        return full_cache[alpha]

    result_terms: Dict[Exps, CoeffPoly] = {}
    residual = Series.zero(D, vars)
    for d in range(D + 1):
        part = remaining.homogeneous_part(d)
        if not part:
            continue
        alphas = _weighted_exponents(weights, d)
        cols = [lead_of(a) for a in alphas]
        rows = sorted(set(part.terms).union(*[set(c) for c in cols]))
        matrix = [[col.get(r, 0) for col in cols] for r in rows]
        solver = _RationalSolver(matrix, len(alphas))
        cbound = part.coeff_bound
        monos = sorted({m for c in part.terms.values() for m in c.terms},
                       key=lambda m: repr(m))
        solved: Dict[Exps, dict] = {}
        unsolved: Dict[Exps, dict] = {}
        for mu in monos:
            b = [part.terms[r].terms.get(mu, 0) if r in part.terms else 0 for r in rows]
            sol = solver.solve(b)
            if sol is None:
                for r, x in zip(rows, b):
                    if x:
                        unsolved.setdefault(r, {})[mu] = x
            else:
                for a, x in zip(alphas, sol):
                    if x:
                        solved.setdefault(a, {})[mu] = x
        for a, raw in solved.items():
            c = CoeffPoly._raw(raw, cbound)
            result_terms[a] = c
            remaining = remaining - full_of(a).scale(c)
        if unsolved:
            res_d = Series._raw(vars, {r: CoeffPoly._raw(raw, cbound) for r, raw in unsolved.items()}, D)
            residual = residual + res_d
            remaining = remaining - res_d
    result = Series(out_vars, result_terms, D)
    return result, residual
