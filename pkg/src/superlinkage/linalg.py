"""Small exact linear algebra helpers over Q and over F_p."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def rational_pivot_inverse(rows: Sequence[Sequence[Fraction]]):
    """For linearly independent ``rows`` return ``(cols, inv)``.

    ``cols`` picks coordinates on which the rows are invertible and ``inv`` is
    the inverse of that square block, so ``w[cols] @ inv`` gives the
    coefficients of ``w`` in the row basis whenever ``w`` lies in their span.
    """
    r = len(rows)
    n = len(rows[0]) if r else 0
    a = [[Fraction(x) for x in row] for row in rows]
    cols: list[int] = []
    work = [row[:] for row in a]
    row_idx = 0
    for j in range(n):
        piv = next((i for i in range(row_idx, r) if work[i][j] != 0), None)
        if piv is None:
            continue
        work[row_idx], work[piv] = work[piv], work[row_idx]
        for i in range(r):
            if i != row_idx and work[i][j] != 0:
                f = work[i][j] / work[row_idx][j]
                work[i] = [x - f * y for x, y in zip(work[i], work[row_idx])]
        cols.append(j)
        row_idx += 1
        if row_idx == r:
            break
    if len(cols) != r:
        raise ValueError("rows are linearly dependent")
    block = [[a[i][j] for j in cols] for i in range(r)]
    return cols, rational_inverse(block)


def rational_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for j in range(n):
        piv = next((i for i in range(j, n) if aug[i][j] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = 1 / aug[j][j]
        aug[j] = [x * inv for x in aug[j]]
        for i in range(n):
            if i != j and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[j])]
    return [row[n:] for row in aug]


# --- F_p -----------------------------------------------------------------

def fp_rref(m: Matrix, p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    a = [[x % p for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][j], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return a, pivots


def fp_rank(m: Matrix, p: int) -> int:
    if not m or not m[0]:
        return 0
    return len(fp_rref(m, p)[1])


def fp_transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def fp_matmul(a: Matrix, b: Matrix, p: int) -> Matrix:
    bt = fp_transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def fp_kernel(m: Matrix, p: int, ncols: int | None = None) -> Matrix:
    """Basis of the right kernel, returned as a list of column vectors."""
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return [[int(i == j) for i in range(cols)] for j in range(cols)]
    a, pivots = fp_rref(m, p)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pj in enumerate(pivots):
            v[pj] = (-a[i][f]) % p
        basis.append(v)
    return basis


def fp_column_space(m: Matrix, p: int) -> Matrix:
    """Basis (as vectors) of the column space."""
    if not m or not m[0]:
        return []
    a, pivots = fp_rref(fp_transpose(m), p)
    return [row for row in a[:len(pivots)]]


def fp_span_equal(u: Matrix, v: Matrix, p: int, dim: int) -> bool:
    """Whether two lists of vectors span the same subspace of F_p^dim."""
    ru = fp_rank(u, p) if u else 0
    rv = fp_rank(v, p) if v else 0
    if ru != rv:
        return False
    both = [list(x) for x in u] + [list(x) for x in v]
    return (fp_rank(both, p) if both else 0) == ru
