"""Exact Gaussian elimination over any field whose elements support
``+ - * /`` and compare equal to 0 (Fraction, GoldenNumber).

Pivoting takes the first nonzero entry; with exact arithmetic there is no
stability reason to prefer a larger one.
"""

from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence], zero, one):
    """Return (reduced row echelon form, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence], zero, one) -> int:
    return len(rref(rows, zero, one)[1])


def nullspace(rows: Sequence[Sequence], zero, one) -> list[list]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, zero, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve_linear(a: Sequence[Sequence], b: Sequence[Sequence], zero, one):
    """Solve ``a . X = b`` exactly for X (a: m x n, b: m x k).

    Returns ``(X, rank, consistent)``. X is None unless a has full column
    rank and the system is consistent.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(m)]
    red, pivots = rref(aug, zero, one)
    a_pivots = [p for p in pivots if p < n]
    consistent = len(a_pivots) == len(pivots)
    r = len(a_pivots)
    if not consistent or r < n:
        return None, r, consistent
    x = [red[i][n:n + k] for i in range(n)]
    return x, r, True
