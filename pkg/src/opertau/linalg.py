"""Small dense exact linear algebra over Fraction.

Matrices are lists of lists of Fraction.  Everything here is Gaussian
elimination at desk scale; no pivot-growth heuristics are needed because
all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form; returns (matrix, pivot column indices)."""
    m = [row[:] for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, echelonized, free variables set to 1."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(m)
    cols = len(m[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free-ish exact elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in m]
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        acc *= piv
        inv = Fraction(1) / piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return acc * sign


def in_span(vectors: list[list[Fraction]], target: list[Fraction]) -> bool:
    """Is target in the row span of vectors?"""
    if not vectors:
        return all(x == 0 for x in target)
    base = rank(vectors)
    return rank(vectors + [target]) == base
