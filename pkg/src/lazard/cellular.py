"""Cell decompositions and the free-module structure they give.

A space with a filtration by affine cells has cobordism free over the
coefficient ring with one generator per cell, placed in codimension
(ambient dimension minus cell dimension).  Only degrees and ranks are
produced; no preferred basis is chosen.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as _pairs
from typing import List, Tuple, Union

from .errors import InvalidParameters

__all__ = [
    "CellComplex",
    "Space",
    "P",
    "Gr",
    "Product",
    "Point",
    "parse_space",
    "build_complex",
    "module_presentation",
    "ModulePresentation",
    "partitions_in_box",
]


@dataclass(frozen=True)
class P:
    n: int


@dataclass(frozen=True)
class Gr:
    k: int
    n: int


@dataclass(frozen=True)
class Point:
    pass


@dataclass(frozen=True)
class Product:
    a: "Space"
    b: "Space"


Space = Union[P, Gr, Point, Product]


@dataclass(frozen=True)
class CellComplex:
    name: str
    cells: Tuple[Tuple[str, int], ...]
    dim: int

    def __post_init__(self):
        labels = [l for l, _ in self.cells]
        if len(set(labels)) != len(labels):
            raise InvalidParameters(f"{self.name}: duplicate cell labels")
        if any(not 0 <= d <= self.dim for _, d in self.cells):
            raise InvalidParameters(f"{self.name}: cell dimension outside [0, {self.dim}]")
        if not any(d == 0 for _, d in self.cells):
            raise InvalidParameters(f"{self.name}: no 0-cell")

    def to_json(self) -> dict:
        return {"space": self.name, "cells": [{"label": l, "dim": d} for l, d in self.cells]}


def partitions_in_box(rows: int, cols: int) -> List[Tuple[int, ...]]:
    """Partitions with at most ``rows`` parts, each at most ``cols``, as weakly decreasing tuples of length ``rows``."""
    if rows == 0:
        return [()]
    out = []
    for first in range(cols, -1, -1):
        for rest in partitions_in_box(rows - 1, first):
            out.append((first,) + rest)
    return out


def _name(space: Space) -> str:
    if isinstance(space, P):
        return f"P({space.n})"
    if isinstance(space, Gr):
        return f"Gr({space.k},{space.n})"
    if isinstance(space, Point):
        return "point"
    return f"{_name(space.a)} x {_name(space.b)}"


def build_complex(space: Space) -> CellComplex:
    if isinstance(space, Point):
        return CellComplex("point", (("pt", 0),), 0)
    if isinstance(space, P):
        if space.n < 0:
            raise InvalidParameters(f"P({space.n}): dimension must be non-negative")
        return CellComplex(_name(space), tuple((f"A{d}", d) for d in range(space.n + 1)), space.n)
    if isinstance(space, Gr):
        k, n = space.k, space.n
        if not 0 <= k <= n:
            raise InvalidParameters(f"Gr({k},{n}) needs 0 <= k <= n")
        cells = tuple(("(" + ",".join(map(str, lam)) + ")", sum(lam))
                      for lam in partitions_in_box(k, n - k))
        return CellComplex(_name(space), cells, k * (n - k))
    if isinstance(space, Product):
        A, B = build_complex(space.a), build_complex(space.b)
        cells = tuple((f"{la}*{lb}", da + db) for (la, da), (lb, db) in _pairs(A.cells, B.cells))
        return CellComplex(_name(space), cells, A.dim + B.dim)
    raise InvalidParameters(f"not a space: {space!r}")


@dataclass(frozen=True)
class ModulePresentation:
    space: str
    degrees: Tuple[int, ...]
    ranks: Tuple[int, ...]

    def to_json(self, cells: CellComplex = None) -> dict:
        out = {"space": self.space, "ranks": list(self.ranks)}
        if cells is not None:
            out["cells"] = [{"label": l, "dim": d} for l, d in cells.cells]
        return out


def module_presentation(c: CellComplex) -> ModulePresentation:
    """One free generator per cell, in degree ``dim - cell dim``."""
    degrees = tuple(sorted(c.dim - d for _, d in c.cells))
    ranks = [0] * (c.dim + 1)
    for d in degrees:
        ranks[d] += 1
    return ModulePresentation(c.name, degrees, tuple(ranks))


def parse_space(words: Union[str, List[str]]) -> Space:
    """``p 3``, ``gr 2 4``, ``point``, or ``x``-separated products like ``p 1 x p 1``."""
    if isinstance(words, str):
        words = re.split(r"\s+", words.strip())
    words = [w for w in words if w]
    if "x" in words:
        i = words.index("x")
        return Product(parse_space(words[:i]), parse_space(words[i + 1:]))
    try:
        head, args = words[0].lower(), [int(w) for w in words[1:]]
    except (IndexError, ValueError):
        raise InvalidParameters(f"cannot read space {' '.join(words)!r}") from None
    if head == "point" and not args:
        return Point()
    if head == "p" and len(args) == 1:
        return P(args[0])
    if head == "gr" and len(args) == 2:
        return Gr(*args)
    raise InvalidParameters(f"cannot read space {' '.join(words)!r}")
