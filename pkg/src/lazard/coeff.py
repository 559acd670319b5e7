"""Exact arithmetic in graded coefficient rings.

Two polynomial rings over the integers are used throughout the package:

* the Lazard ring in its "free" presentation, generated by ``a[i,j]``
  (``i <= j``) in cohomological degree ``-(i+j-1)``;
* the logarithm ring ``Z[m1, m2, ...]`` with ``m[k]`` in degree ``-k``.

A third family of generators, ``Named(symbol, degree)``, covers one-off
parameters such as the ``beta`` of the multiplicative law.

A :class:`CoeffPoly` is a sparse map from monomials to Python integers,
truncated at a coefficient bound: monomials whose degree has absolute value
above the bound are discarded (never rounded).  ``bound=None`` means no
truncation.
"""

from __future__ import annotations

import enum
import re
from functools import lru_cache
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple, Union

from .errors import DegreeMismatch, MissingImage

__all__ = [
    "Gen",
    "A",
    "M",
    "Named",
    "CoeffPoly",
    "DegreeMarker",
    "NOT_HOMOGENEOUS",
    "UNDEFINED",
    "apply_hom",
    "compose_homs",
    "degree_of",
    "poly_mul",
]


class Gen(NamedTuple):
    """A coefficient generator.  Use :func:`A`, :func:`M` or :func:`Named`."""

    kind: str  # "a", "g" (named) or "m"; also the canonical sort order
    index: tuple
    degree: int

    def text(self) -> str:
        if self.kind == "a":
            return "a[%d,%d]" % self.index
        if self.kind == "m":
            return "m[%d]" % self.index
        return self.index[0]

    def __repr__(self) -> str:
        return self.text()


def A(i: int, j: int) -> Gen:
    if i < 1 or j < 1:
        raise ValueError(f"a[{i},{j}] needs positive indices")
    if i > j:
        i, j = j, i
    return Gen("a", (i, j), -(i + j - 1))


def M(k: int) -> Gen:
    if k < 1:
        raise ValueError(f"m[{k}] needs k >= 1")
    return Gen("m", (k,), -k)


def Named(symbol: str, degree: int) -> Gen:
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", symbol) or symbol in ("a", "m"):
        raise ValueError(f"bad generator symbol {symbol!r}")
    return Gen("g", (symbol,), degree)


Monomial = Tuple[Tuple[Gen, int], ...]
ONE: Monomial = ()


@lru_cache(maxsize=None)
def _mono_mul(p: Monomial, q: Monomial) -> Monomial:
    if not p:
        return q
    if not q:
        return p
    merged = dict(p)
    for g, e in q:
        merged[g] = merged.get(g, 0) + e
    return tuple(sorted(merged.items()))


@lru_cache(maxsize=None)
def _mono_degree(m: Monomial) -> int:
    return sum(g.degree * e for g, e in m)


def _canon_mono(m) -> Monomial:
    merged: Dict[Gen, int] = {}
    for g, e in m:
        if e < 0:
            raise ValueError("negative exponent in coefficient monomial")
        if e:
            merged[g] = merged.get(g, 0) + e
    return tuple(sorted(merged.items()))


def _fits(m: Monomial, bound: Optional[int]) -> bool:
    return bound is None or abs(_mono_degree(m)) <= bound


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _sort_key(m: Monomial):
    return (abs(_mono_degree(m)), tuple((g, -e) for g, e in m))


def mul_terms_into(acc: dict, p: dict, q: dict, bound: Optional[int]) -> None:
    """Accumulate the product of two raw term maps into ``acc``."""
    for mp, cp in p.items():
        dp = _mono_degree(mp)
        for mq, cq in q.items():
            if bound is not None and abs(dp + _mono_degree(mq)) > bound:
                continue
            m = _mono_mul(mp, mq)
            acc[m] = acc.get(m, 0) + cp * cq


class DegreeMarker(enum.Enum):
    NOT_HOMOGENEOUS = "NotHomogeneous"
    UNDEFINED = "Undefined"


NOT_HOMOGENEOUS = DegreeMarker.NOT_HOMOGENEOUS
UNDEFINED = DegreeMarker.UNDEFINED


class CoeffPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("terms", "bound")

    def __init__(self, terms: Optional[Mapping] = None, bound: Optional[int] = None):
        if bound is not None and bound < 1:
            raise ValueError("coefficient bound must be positive")
        clean: Dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            mono = _canon_mono(mono)
            if not _fits(mono, bound):
                continue
            clean[mono] = clean.get(mono, 0) + int(c)
        self.terms = {m: c for m, c in clean.items() if c}
        self.bound = bound

    @classmethod
    def _raw(cls, terms: dict, bound: Optional[int]) -> "CoeffPoly":
        # terms must already be canonical and inside the bound
        obj = cls.__new__(cls)
        obj.terms = {m: c for m, c in terms.items() if c}
        obj.bound = bound
        return obj

    @classmethod
    def const(cls, c: int, bound: Optional[int] = None) -> "CoeffPoly":
        return cls._raw({ONE: int(c)}, bound)

    @classmethod
    def of(cls, g: Gen, bound: Optional[int] = None, power: int = 1) -> "CoeffPoly":
        return cls({((g, power),): 1}, bound)

    # ---- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> int:
        return self.terms.get(ONE, 0)

    def generators(self) -> set:
        return {g for m in self.terms for g, _ in m}

    def degrees(self) -> set:
        return {_mono_degree(m) for m in self.terms}

    def __len__(self) -> int:
        return len(self.terms)

    # ---- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CoeffPoly":
        if isinstance(other, CoeffPoly):
            return other
        if isinstance(other, int):
            return CoeffPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bound = _min_bound(self.bound, other.bound)
        out = {m: c for m, c in self.terms.items() if _fits(m, bound)}
        for m, c in other.terms.items():
            if _fits(m, bound):
                out[m] = out.get(m, 0) + c
        return CoeffPoly._raw(out, bound)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly._raw({m: -c for m, c in self.terms.items()}, self.bound)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CoeffPoly._raw({m: c * other for m, c in self.terms.items()}, self.bound)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        bound = _min_bound(self.bound, other.bound)
        acc: dict = {}
        mul_terms_into(acc, self.terms, other.terms, bound)
        return CoeffPoly._raw(acc, bound)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = CoeffPoly.const(1, self.bound)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def truncated(self, bound: Optional[int]) -> "CoeffPoly":
        bound = _min_bound(self.bound, bound)
        return CoeffPoly._raw({m: c for m, c in self.terms.items() if _fits(m, bound)}, bound)

    def exact_div(self, n: int) -> "CoeffPoly":
        """Divide every coefficient by ``n``; raises if any division is inexact."""
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, n)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {n}")
            out[m] = q
        return CoeffPoly._raw(out, self.bound)

    # ---- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ---- text / json ------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _sort_key(mc[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            body = "*".join(g.text() + ("^%d" % e if e > 1 else "") for g, e in mono)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + s)
            else:
                pieces.append((" - " if c < 0 else " + ") + s)
        return "".join(pieces)

    __str__ = to_text

    def __repr__(self):
        return f"CoeffPoly({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, named: Optional[Mapping[str, int]] = None,
              bound: Optional[int] = None) -> "CoeffPoly":
        """Inverse of :meth:`to_text`.  ``named`` gives degrees of named symbols."""
        text = text.strip()
        if text == "0":
            return cls({}, bound)
        sign = 1
        if text.startswith("-"):
            sign, text = -1, text[1:]
        parts = re.split(r"\s+([+-])\s+", text)
        chunks = [(sign, parts[0])]
        for op, chunk in zip(parts[1::2], parts[2::2]):
            chunks.append((1 if op == "+" else -1, chunk))
        terms: Dict[Monomial, int] = {}
        for s, chunk in chunks:
            c, mono = _parse_term(chunk, named or {})
            terms[mono] = terms.get(mono, 0) + s * c
        return cls(terms, bound)

    def to_json(self) -> list:
        out = []
        for mono, c in self.sorted_terms():
            out.append({"monomial": [_gen_json(g, e) for g, e in mono], "coeff": str(c)})
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict], bound: Optional[int] = None) -> "CoeffPoly":
        terms: Dict[Monomial, int] = {}
        for item in data:
            mono = _canon_mono(_gen_from_json(entry) for entry in item["monomial"])
            terms[mono] = terms.get(mono, 0) + int(item["coeff"])
        return cls(terms, bound)


_FACTOR = re.compile(r"(?:a\[(\d+),(\d+)\]|m\[(\d+)\]|([A-Za-z_][A-Za-z_0-9]*))(?:\^(\d+))?$")


def _parse_term(chunk: str, named: Mapping[str, int]):
    coeff = 1
    factors = []
    for k, tok in enumerate(chunk.split("*")):
        tok = tok.strip()
        if k == 0 and tok.isdigit():
            coeff = int(tok)
            continue
        match = _FACTOR.match(tok)
        if not match:
            raise ValueError(f"cannot parse coefficient factor {tok!r}")
        i, j, k_m, sym, power = match.groups()
        if i is not None:
            g = A(int(i), int(j))
        elif k_m is not None:
            g = M(int(k_m))
        else:
            if sym not in named:
                raise ValueError(f"unknown named generator {sym!r}")
            g = Named(sym, named[sym])
        factors.append((g, int(power) if power else 1))
    return coeff, _canon_mono(factors)


def _gen_json(g: Gen, e: int) -> list:
    if g.kind == "a":
        return ["a", g.index[0], g.index[1], e]
    if g.kind == "m":
        return ["m", g.index[0], e]
    return ["g", g.index[0], g.degree, e]


def _gen_from_json(entry) -> Tuple[Gen, int]:
    kind = entry[0]
    if kind == "a":
        return A(entry[1], entry[2]), entry[3]
    if kind == "m":
        return M(entry[1]), entry[2]
    if kind == "g":
        return Named(entry[1], entry[2]), entry[3]
    raise ValueError(f"unknown generator kind {kind!r}")


def poly_mul(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    return a * b


def degree_of(p: CoeffPoly) -> Union[int, DegreeMarker]:
    degs = p.degrees()
    if not degs:
        return UNDEFINED
    if len(degs) > 1:
        return NOT_HOMOGENEOUS
    return degs.pop()


def apply_hom(p: CoeffPoly, images: Mapping[Gen, Union[CoeffPoly, int]],
              check_degrees: bool = True) -> CoeffPoly:
    """Evaluate the ring homomorphism sending each generator to its image."""
    imgs: Dict[Gen, CoeffPoly] = {}
    for g in p.generators():
        if g not in images:
            raise MissingImage(f"no image assigned to {g.text()}")
        img = images[g]
        if isinstance(img, int):
            img = CoeffPoly.const(img)
        if check_degrees and img:
            d = degree_of(img)
            if d != g.degree:
                raise DegreeMismatch(f"image of {g.text()} has degree {d}, expected {g.degree}")
        imgs[g] = img
    bound = p.bound
    for img in imgs.values():
        bound = _min_bound(bound, img.bound)
    powers: Dict[Tuple[Gen, int], CoeffPoly] = {}
    acc: dict = {}
    for mono, c in p.terms.items():
        term = {ONE: c}
        for g, e in mono:
            key = (g, e)
            if key not in powers:
                powers[key] = imgs[g] ** e
            nxt: dict = {}
            mul_terms_into(nxt, term, powers[key].terms, bound)
            term = nxt
            if not term:
                break
        for m, v in term.items():
            acc[m] = acc.get(m, 0) + v
    return CoeffPoly._raw({m: v for m, v in acc.items() if _fits(m, bound)}, bound)


def compose_homs(f: Mapping[Gen, CoeffPoly], g: Mapping[Gen, CoeffPoly],
                 check_degrees: bool = True) -> Dict[Gen, CoeffPoly]:
    """The homomorphism ``g o f`` (apply ``f`` first)."""
    return {gen: apply_hom(img if isinstance(img, CoeffPoly) else CoeffPoly.const(img), g,
                           check_degrees) for gen, img in f.items()}
