"""Chern classes through formal roots.

A bundle expression is reduced to a multiset of formal roots (one power
series per rank unit): sums concatenate roots, duals apply the inverse
series, tensor products add roots under the formal group law.  Chern
classes are the elementary symmetric functions of the roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import IndexOutOfRange, NotSymmetric
from .fgl import FGLModel, formal_sum, inverse_series
from .series import Series, SeriesVar, express_in, substitute, var

__all__ = [
    "Line",
    "Sum",
    "Tensor",
    "Dual",
    "Trivial",
    "BundleExpression",
    "rank",
    "parse_bundle",
    "roots_of",
    "elementary",
    "chern_class",
    "symmetric_reduce",
    "p_series",
    "sp2_series",
    "Sp2Result",
    "dual_chern",
]


@dataclass(frozen=True)
class Line:
    root: Union[str, Series]


@dataclass(frozen=True)
class Sum:
    parts: Tuple["BundleExpression", ...]

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = parts[0]
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Tensor:
    parts: Tuple["BundleExpression", ...]

    def __init__(self, *parts):
        if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
            parts = parts[0]
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Dual:
    expr: "BundleExpression"


@dataclass(frozen=True)
class Trivial:
    rank: int


BundleExpression = Union[Line, Sum, Tensor, Dual, Trivial]


def rank(e: BundleExpression) -> int:
    if isinstance(e, Line):
        return 1
    if isinstance(e, Trivial):
        return e.rank
    if isinstance(e, Dual):
        return rank(e.expr)
    if isinstance(e, Sum):
        return sum(rank(p) for p in e.parts)
    if isinstance(e, Tensor):
        out = 1
        for p in e.parts:
            out *= rank(p)
        return out
    raise TypeError(f"not a bundle expression: {e!r}")


# ---------------------------------------------------------------------------
# text grammar:  L(x) | 1^r | dual(e) | e + e | e * e | (e)

_TOKEN = re.compile(r"\s*(?:(L)\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*\)|(dual)\s*\(|(\d+)\^(\d+)|([()+*]))")


def parse_bundle(text: str) -> BundleExpression:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse bundle expression at {text[pos:]!r}")
        line, root, dual, one, r, punct = m.groups()
        if line:
            tokens.append(("line", root))
        elif dual:
            tokens.append(("dual", None))
        elif one:
            if one != "1":
                raise ValueError("trivial bundles are written 1^r")
            tokens.append(("trivial", int(r)))
        else:
            tokens.append((punct, None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(k, tok):
        if k >= len(tokens) or tokens[k][0] != tok:
            raise ValueError(f"expected {tok!r} in bundle expression {text!r}")
        return k + 1

    def parse_sum(k):
        parts = []
        node, k = parse_prod(k)
        parts.append(node)
        while k < len(tokens) and tokens[k][0] == "+":
            node, k = parse_prod(k + 1)
            parts.append(node)
        return (parts[0] if len(parts) == 1 else Sum(parts)), k

    def parse_prod(k):
        parts = []
        node, k = parse_atom(k)
        parts.append(node)
        while k < len(tokens) and tokens[k][0] == "*":
            node, k = parse_atom(k + 1)
            parts.append(node)
        return (parts[0] if len(parts) == 1 else Tensor(parts)), k

    def parse_atom(k):
        if k >= len(tokens):
            raise ValueError(f"unexpected end of bundle expression {text!r}")
        kind, val = tokens[k]
        if kind == "line":
            return Line(val), k + 1
        if kind == "trivial":
            return Trivial(val), k + 1
        if kind == "dual":
            node, k = parse_sum(k + 1)
            return Dual(node), expect(k, ")")
        if kind == "(":
            node, k = parse_sum(k + 1)
            return node, expect(k, ")")
        raise ValueError(f"unexpected {kind!r} in bundle expression {text!r}")

    node, k = parse_sum(0)
    if k != len(tokens):
        raise ValueError(f"trailing input in bundle expression {text!r}")
    return node


# ---------------------------------------------------------------------------


def roots_of(e: BundleExpression, F: FGLModel) -> List[Series]:
    D = F.bound
    if isinstance(e, Line):
        return [var(e.root, 1, D) if isinstance(e.root, str) else e.root]
    if isinstance(e, Trivial):
        return [Series.zero(D) for _ in range(e.rank)]
    if isinstance(e, Sum):
        return [r for p in e.parts for r in roots_of(p, F)]
    if isinstance(e, Dual):
        inv = inverse_series(F)
        return [substitute(inv, {"x": r}) for r in roots_of(e.expr, F)]
    if isinstance(e, Tensor):
        acc = roots_of(e.parts[0], F)
        for p in e.parts[1:]:
            rs = roots_of(p, F)
            acc = [formal_sum(F, a, b) for a in acc for b in rs]
        return acc
    raise TypeError(f"not a bundle expression: {e!r}")


def elementary(roots: Sequence[Series], bound: Optional[int] = None) -> List[Series]:
    """``[e0, e1, ..., ek]`` of the given series."""
    if bound is None:
        bound = min((r.bound for r in roots), default=6)
    es = [Series.constant(1, bound)] + [Series.zero(bound) for _ in roots]
    for n, r in enumerate(roots, start=1):
        for j in range(n, 0, -1):
            es[j] = es[j] + es[j - 1] * r
    return es


def chern_class(e: BundleExpression, i: int, F: FGLModel) -> Series:
    n = rank(e)
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"c_{i} requested for a bundle of rank {n}")
    return elementary(roots_of(e, F), F.bound)[i]


def _swap(f: Series, a: str, b: str) -> Series:
    return f.rename({a: "\0", b: a}).rename({"\0": b})


def symmetric_reduce(f: Series, roots: Sequence[str], names: Optional[Sequence[str]] = None) -> Series:
    """Rewrite ``f`` (symmetric in ``roots``) in elementary symmetric functions.

    Lexicographic leading-term elimination with ``roots[0] > roots[1] > ...``.
    Variables of ``f`` outside ``roots`` pass through unchanged.  The new
    variables ``names`` (default ``e1..ek``) get weight ``j * w`` where ``w``
    is the common root weight.
    """
    k = len(roots)
    names = list(names) if names is not None else [f"e{j}" for j in range(1, k + 1)]
    if len(names) != k:
        raise ValueError("need one name per elementary symmetric function")
    weights = {v.name: v.weight for v in f.vars}
    root_w = {weights[r] for r in roots if r in weights}
    if len(root_w) > 1:
        raise ValueError("roots must share a weight")
    w = root_w.pop() if root_w else 1
    vars = f.vars + tuple(SeriesVar(r, w) for r in roots if r not in weights)
    f = f.with_vars(vars)

    for a, b in zip(roots, roots[1:]):
        if _swap(f, a, b) != f:
            raise NotSymmetric(f"series is not symmetric under {a} <-> {b}", witness=(a, b))

    D = f.bound
    ridx = [f.var_names.index(r) for r in roots]
    pidx = [i for i in range(len(vars)) if i not in ridx]
    root_series = [var(r, w, D).with_vars(vars) for r in roots]
    es = elementary(root_series, D)
    out_vars = tuple(vars[i] for i in pidx) + tuple(SeriesVar(n, (j + 1) * w) for j, n in enumerate(names))

    cache: Dict[Tuple[int, ...], Dict] = {}

    def e_mono(beta):
        if beta not in cache:
            s = Series.constant(1, D, vars)
            for j, b in enumerate(beta):
                if b:
                    s = s * es[j + 1] ** b
            cache[beta] = {tuple(e[i] for i in ridx): c.constant() for e, c in s.terms.items()}
        return cache[beta]

    remaining = dict(f.terms)
    result = {}
    while remaining:
        lead = max(remaining, key=lambda e: (tuple(e[i] for i in ridx), tuple(e[i] for i in pidx)))
        lam = [lead[i] for i in ridx]
        if any(lam[j] < lam[j + 1] for j in range(k - 1)):
            raise NotSymmetric("leading exponent is not a partition", witness=(roots[0], roots[-1]))
        beta = tuple(lam[j] - lam[j + 1] for j in range(k - 1)) + ((lam[-1],) if k else ())
        c = remaining[lead]
        passive = [lead[i] for i in pidx]
        for rexp, n in e_mono(beta).items():
            full = [0] * len(vars)
            for i, x in zip(pidx, passive):
                full[i] = x
            for i, x in zip(ridx, rexp):
                full[i] = x
            key = tuple(full)
            v = remaining.get(key)
            v = -(c * n) if v is None else v - c * n
            if v:
                remaining[key] = v
            else:
                remaining.pop(key, None)
        result[tuple(passive) + beta] = c
    return Series(out_vars, result, D)


# ---------------------------------------------------------------------------
# the named series


def p_series(F: FGLModel, D: Optional[int] = None) -> Tuple[Series, Series]:
    """``x + i(x) = P(x * i(x))``: returns ``(P(u), residual)``."""
    D = F.bound if D is None else min(D, F.bound)
    x = var("x", 1, D)
    i = inverse_series(F).truncated(D)
    return express_in(x + i, [("u", x * i)])


class Sp2Result(NamedTuple):
    P1: Series
    residual1: Series
    P3: Series
    residual3: Series


def sp2_roots(F: FGLModel, D: int, config: str = "triple") -> List[Series]:
    inv = inverse_series(F).truncated(D)
    if config == "triple":
        r, s, t = (var(n, 1, D) for n in "rst")
        total = formal_sum(F, formal_sum(F, r, s), t)
        return [r, s, t, substitute(inv, {"x": total})]
    if config == "paired":
        r, s = var("r", 1, D), var("s", 1, D)
        return [r, substitute(inv, {"x": r}), s, substitute(inv, {"x": s})]
    raise ValueError(f"unknown root configuration {config!r}")


def sp2_series(F: FGLModel, D: Optional[int] = None, config: str = "triple") -> Sp2Result:
    """Try to write ``d1`` and ``d3`` as series in ``d2`` and ``d4``.

    ``config="triple"`` uses roots ``r, s, t, [-1](r +_F s +_F t)``;
    ``config="paired"`` uses ``r, [-1](r), s, [-1](s)``.  Nothing is
    asserted: failure to express shows up in the residuals.
    """
    D = F.bound if D is None else min(D, F.bound)
    d = elementary(sp2_roots(F, D, config), D)
    targets = [("v2", d[2]), ("v4", d[4])]
    P1, res1 = express_in(d[1], targets)
    P3, res3 = express_in(d[3], targets)
    return Sp2Result(P1, res1, P3, res3)


def dual_chern(n: int, i: int, F: FGLModel, D: Optional[int] = None) -> Series:
    """``c_i`` of the dual of a rank ``n`` bundle, as a series in ``c1..cn``."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"dual Chern class c_{i}* needs 1 <= i <= {n}")
    D = F.bound if D is None else min(D, F.bound)
    key = ("dual_chern", n, D)
    if key not in F._cache:
        xs = [f"x{j}" for j in range(1, n + 1)]
        inv = inverse_series(F).truncated(D)
        zs = [substitute(inv, {"x": var(x, 1, D)}) for x in xs]
        es = elementary(zs, D)
        names = [f"c{j}" for j in range(1, n + 1)]
        F._cache[key] = [None] + [symmetric_reduce(es[j], xs, names) for j in range(1, n + 1)]
    return F._cache[key][i]
