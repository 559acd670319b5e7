"""Formal group law models and the operations built on them.

Models
------
``free``
    ``x + y + sum a[i,j] x^i y^j`` with only ``a[i,j] = a[j,i]`` imposed.
    This is the ring the classical hand computations live in.
``log``
    ``exp(log x + log y)`` with ``log t = t + sum m[k] t^(k+1)``.  Its
    coefficients are integer polynomials in the ``m[k]`` and it is
    associative on the nose, so it serves as the exact model of the
    universal law.  With this normalisation ``a[1,1] -> -2 m[1]``.
``add``
    ``x + y`` (Chow rings, integral cohomology).
``mult``
    ``x + y + beta x y`` with ``beta`` of degree -1.
``custom``
    anything produced by :func:`specialize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

from .coeff import A, M, CoeffPoly, Gen, Named, apply_hom
from .errors import BoundTooSmall
from .series import DEFAULT_BOUND, Series, SeriesVar, compositional_inverse, substitute, var

__all__ = [
    "KINDS",
    "BETA",
    "FGLModel",
    "AxiomReport",
    "build_model",
    "formal_sum",
    "n_series",
    "inverse_series",
    "check_axioms",
    "specialize",
    "log_series",
    "log_images",
    "push_to_log",
]

KINDS = ("free", "log", "add", "mult", "custom")
BETA = Named("beta", -1)
X = SeriesVar("x", 1)
Y = SeriesVar("y", 1)


@dataclass(frozen=True, eq=False)
class FGLModel:
    kind: str
    F: Series
    bound: int
    coeff_bound: Optional[int]
    _cache: Dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, FGLModel):
            return NotImplemented
        return self.kind == other.kind and self.F == other.F

    def __hash__(self):
        return hash((self.kind, self.F))

    def to_json(self) -> dict:
        return {"kind": self.kind, "bound": self.bound, "coeff_bound": self.coeff_bound,
                "F": self.F.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "FGLModel":
        return cls(data["kind"], Series.from_json(data["F"]), data["bound"], data["coeff_bound"])


def log_series(D: int, Dc: Optional[int] = None, name: str = "t") -> Series:
    """``t + m1 t^2 + m2 t^3 + ...`` up to ``t^D``."""
    terms = {(1,): 1}
    for k in range(1, D):
        terms[(k + 1,)] = CoeffPoly.of(M(k), Dc)
    return Series((SeriesVar(name, 1),), terms, D)


def build_model(kind: str, D: int = DEFAULT_BOUND, Dc: Optional[int] = None) -> FGLModel:
    """Construct one of the built-in models truncated at weighted degree ``D``.

    ``Dc`` bounds the absolute degree of coefficient monomials; it defaults
    to ``D``, which never loses information for homogeneous input.
    """
    if D < 1:
        raise BoundTooSmall(f"series bound must be at least 1, got {D}")
    if Dc is None:
        Dc = D
    if kind == "free":
        terms = {(1, 0): 1, (0, 1): 1}
        for i in range(1, D):
            for j in range(1, D - i + 1):
                terms[(i, j)] = CoeffPoly.of(A(i, j), Dc)
        F = Series((X, Y), terms, D)
    elif kind == "log":
        lg = log_series(D, Dc)
        ex = compositional_inverse(lg)
        s = substitute(lg, {"t": var("x", 1, D)}) + substitute(lg, {"t": var("y", 1, D)})
        F = substitute(ex, {"t": s}).with_vars((X, Y))
    elif kind == "add":
        F = Series((X, Y), {(1, 0): 1, (0, 1): 1}, D)
    elif kind == "mult":
        F = Series((X, Y), {(1, 0): 1, (0, 1): 1, (1, 1): CoeffPoly.of(BETA, Dc)}, D)
    else:
        raise ValueError(f"unknown model kind {kind!r}; choose from {KINDS[:-1]}")
    return FGLModel(kind, F, D, Dc)


def formal_sum(F: FGLModel, f: Series, g: Series) -> Series:
    """``f +_F g``."""
    return substitute(F.F, {"x": f, "y": g})


def inverse_series(F: FGLModel, name: str = "x") -> Series:
    """The series ``i(x)`` with ``F(x, i(x)) = 0``, solved degree by degree."""
    key = ("inverse",)
    if key not in F._cache:
        D = F.bound
        x = var("x", 1, D)
        i = -x
        for k in range(2, D + 1):
            err = substitute(F.F.truncated(k), {"x": x.truncated(k), "y": i.truncated(k)})
            eps = err.coefficient(x=k)
            if eps:
                # the y-linear coefficient of F is 1 + (terms in x), so this fixes degree k
                i = i - Series(x.vars, {(k,): eps}, D)
        F._cache[key] = i
    i = F._cache[key]
    return i if name == "x" else i.rename({"x": name})


def n_series(F: FGLModel, n: int, name: str = "x") -> Series:
    """``[n](x)``: ``[0] = 0``, ``[n] = F(x, [n-1](x))``, ``[-n](x) = [n](i(x))``."""
    key = ("n", n)
    if key not in F._cache:
        D = F.bound
        x = var("x", 1, D)
        if n == 0:
            s = Series.zero(D, x.vars)
        elif n == 1:
            s = x
        elif n > 1:
            s = formal_sum(F, x, n_series(F, n - 1))
        else:
            s = substitute(n_series(F, -n), {"x": inverse_series(F)})
        F._cache[key] = s
    s = F._cache[key]
    return s if name == "x" else s.rename({"x": name})


@dataclass
class AxiomReport:
    """Residual series for each axiom and the lowest degree where it fails."""

    residuals: Dict[str, Series]

    @property
    def failures(self) -> Dict[str, Optional[int]]:
        return {k: r.lowest_degree() for k, r in self.residuals.items()}

    def ok(self, axiom: Optional[str] = None) -> bool:
        if axiom is None:
            return all(r.is_zero() for r in self.residuals.values())
        return self.residuals[axiom].is_zero()

    def to_json(self) -> List[dict]:
        return [{"axiom": k, "residual_degree": r.lowest_degree()} for k, r in self.residuals.items()]


def check_axioms(F: FGLModel, D: Optional[int] = None) -> AxiomReport:
    D = F.bound if D is None else min(D, F.bound)
    G = F.F.truncated(D)
    x, y, z = var("x", 1, D), var("y", 1, D), var("z", 1, D)
    zero = Series.zero(D)
    left_unit = substitute(G, {"y": zero}) - x
    right_unit = substitute(G, {"x": zero}) - y
    swapped = substitute(G, {"x": y, "y": x})
    comm = G - swapped
    left = substitute(G, {"x": G, "y": z})
    right = substitute(G, {"x": x, "y": substitute(G, {"x": y, "y": z})})
    return AxiomReport({
        "unitality_left": left_unit,
        "unitality_right": right_unit,
        "commutativity": comm,
        "associativity": left - right,
    })


def specialize(F: FGLModel, hom: Mapping[Gen, CoeffPoly], check_degrees: bool = True) -> FGLModel:
    """Push every coefficient of ``F`` through a ring homomorphism."""
    G = F.F.map_coeffs(lambda c: apply_hom(c, hom, check_degrees))
    return FGLModel("custom", G, F.bound, F.coeff_bound)


def log_images(D: int = DEFAULT_BOUND, Dc: Optional[int] = None) -> Dict[Gen, CoeffPoly]:
    """``a[i,j] -> coefficient of x^i y^j`` in the log model, for ``i + j <= D``."""
    logF = build_model("log", D, Dc)
    images = {}
    for i in range(1, D):
        for j in range(i, D - i + 1):
            images[A(i, j)] = logF.F.coefficient(x=i, y=j)
    return images


def push_to_log(s: Series, D: Optional[int] = None, Dc: Optional[int] = None) -> Series:
    """Apply the ``a[i,j] -> log image`` homomorphism to every coefficient."""
    D = s.bound if D is None else D
    images = log_images(D, Dc)
    return s.map_coeffs(lambda c: apply_hom(c, images))
