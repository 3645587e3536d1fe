"""Smith normal form over the integers with unimodular transforms.

Matrices are lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(M: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M: Matrix, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular
    and ``D`` diagonal with each diagonal entry dividing the next.

    Pivots are the smallest nonzero absolute value in the remaining block,
    first in row-major order.  ``ncols`` is only needed for 0-row matrices.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row[dst] -= q * row[src]
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col[dst] -= q * col[src]
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for s in range(min(m, n)):
        while True:
            pivot = None
            for i in range(s, m):
                for j in range(s, n):
                    if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return U, D, V
            swap_rows(s, pivot[0])
            swap_cols(s, pivot[1])
            p = D[s][s]
            dirty = False
            for i in range(s + 1, m):
                if D[i][s]:
                    add_row(s, i, D[i][s] // p)
                    dirty |= D[i][s] != 0
            for j in range(s + 1, n):
                if D[s][j]:
                    add_col(s, j, D[s][j] // p)
                    dirty |= D[s][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row into row s so the next pass lowers the pivot
            add_row(bad[0], s, -1)
        if D[s][s] < 0:
            D[s] = [-a for a in D[s]]
            U[s] = [-a for a in U[s]]
    return U, D, V


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(M: Matrix, ncols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    _, D, _ = smith_normal_form(M, ncols)
    return [d for d in diagonal(D) if d]


def rank(M: Matrix) -> int:
    return len(invariant_factors(M))


def is_smith_form(D: Matrix) -> bool:
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j and v:
                return False
    d = diagonal(D)
    nz = [x for x in d if x]
    if any(x < 0 for x in d) or d[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))
