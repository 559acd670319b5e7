"""Integer lattice tools: Smith normal form and Hermite reduction.

Plain Python integers throughout, so pivots never overflow.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal of the Smith normal form, each entry dividing the next."""
    A = [list(map(int, row)) for row in matrix]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # enforce divisibility of the rest of the block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def rank_and_torsion(matrix: Sequence[Sequence[int]], ncols: int) -> Tuple[int, List[int]]:
    """Free rank and invariant factors (> 1) of ``Z^ncols / rowspan(matrix)``."""
    diag = smith_diagonal(matrix) if matrix else []
    return ncols - len(diag), [d for d in diag if d > 1]


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form (positive pivots, reduced above and below)."""
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return []
    n = len(A[0])
    out: Matrix = []
    r = 0
    for col in range(n):
        rows_here = [i for i in range(r, len(A)) if A[i][col]]
        if not rows_here:
            continue
        # gcd-combine all entries of this column into row r
        while True:
            rows_here = [i for i in range(r, len(A)) if A[i][col]]
            k = min(rows_here, key=lambda i: abs(A[i][col]))
            A[r], A[k] = A[k], A[r]
            others = [i for i in range(r + 1, len(A)) if A[i][col]]
            if not others:
                break
            for i in others:
                q = A[i][col] // A[r][col]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][col] // A[r][col]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return [row for row in A[:r] if any(row)]


def reduce_mod_lattice(vector: Sequence[int], rows: Sequence[Sequence[int]]) -> List[int]:
    """Canonical representative of ``vector`` modulo the row lattice.

    Entries in pivot columns land in ``[0, pivot)``.
    """
    v = list(map(int, vector))
    for row in hermite_rows(rows):
        col = next(j for j, a in enumerate(row) if a)
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v
