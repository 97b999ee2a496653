"""Dense exact linear algebra over the rationals.

Matrices are lists of lists of :class:`fractions.Fraction`.  Everything here
is plain Gaussian elimination with exact pivoting — no floating point — which
is as fast as we need for the small dense systems this package solves (Gram
matrices, trace forms, character systems; dimensions stay in the low
hundreds).

>>> from fractions import Fraction as F
>>> rank([[F(1), F(2)], [F(2), F(4)]])
1
>>> nullspace([[F(1), F(2)], [F(2), F(4)]])
[[Fraction(-2, 1), Fraction(1, 1)]]
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _as_fraction_rows(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and the list of pivot column indices."""
    m = _as_fraction_rows(rows)
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        pivot_row = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows) -> list[Vector]:
    """A basis of the right null space {x : M x = 0}."""
    m = _as_fraction_rows(rows)
    if not m:
        return []
    ncols = len(m[0])
    red, pivots = rref(m)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][free]
        basis.append(vec)
    return basis


def solve(rows, rhs) -> Vector | None:
    """One solution of M x = b, or None if the system is inconsistent.

    When the solution is not unique an arbitrary representative (free
    variables set to zero) is returned.
    """
    m = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    if not m:
        return [] if all(x == 0 for x in b) else None
    ncols = len(m[0])
    aug = [row + [bi] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if ncols in pivots:  # a pivot in the augmented column: inconsistent
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def mat_mul(a, b) -> Matrix:
    a = _as_fraction_rows(a)
    b = _as_fraction_rows(b)
    if not a or not b:
        return []
    ncols_b = len(b[0])
    return [
        [sum((ar[k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(ncols_b)]
        for ar in a
    ]


def mat_vec(a, x) -> Vector:
    return [sum((ai * xi for ai, xi in zip(row, x)), Fraction(0)) for row in a]


def trace(rows) -> Fraction:
    return sum((rows[i][i] for i in range(len(rows))), Fraction(0))
