"""Independent ground truth: exact determinants and ranks of integer matrices.

Nothing here knows about binomial structure, so it can check every closed
form in :mod:`bindet.formulas`.
"""
from __future__ import annotations

from typing import Sequence

from .binomial import BinMatrix, exact_div
from .errors import PreconditionError

Matrix = Sequence[Sequence[int]]

COFACTOR_MAX_N = 8


def _grid(M) -> list[list[int]]:
    if isinstance(M, BinMatrix):
        M = M.entries
    return [list(row) for row in M]


def _square(M) -> list[list[int]]:
    A = _grid(M)
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise PreconditionError("determinant needs a non-empty square matrix")
    return A


def det_bareiss(M) -> int:
    """One-step fraction-free elimination.

    Each update ``(a_ij a_kk - a_ik a_kj) / a_{k-1,k-1}`` is divided with
    :func:`exact_div`, so any non-exact step raises instead of rounding.
    """
    A = _square(M)
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for p in range(k + 1, n):
                if A[p][k] != 0:
                    A[k], A[p] = A[p], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = exact_div(row_i[j] * akk - aik * row_k[j], prev)
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def det_cofactor(M) -> int:
    """Laplace expansion along the first row. Limited to n <= 8."""
    A = _square(M)
    if len(A) > COFACTOR_MAX_N:
        raise PreconditionError(f"cofactor expansion limited to n <= {COFACTOR_MAX_N}")

    def expand(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        if len(rows) == 1:
            return A[rows[0]][cols[0]]
        r, rest = rows[0], rows[1:]
        total = 0
        for pos, c in enumerate(cols):
            a = A[r][c]
            if a:
                minor = expand(rest, cols[:pos] + cols[pos + 1:])
                total += -a * minor if pos % 2 else a * minor
        return total

    n = len(A)
    return expand(tuple(range(n)), tuple(range(n)))


def rank(M) -> int:
    """Exact rank by fraction-free elimination with row pivoting."""
    A = _grid(M)
    if not A or not A[0]:
        raise PreconditionError("rank of an empty matrix")
    m, ncols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        pivot = next((p for p in range(r, m) if A[p][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        arc = A[r][c]
        for i in range(r + 1, m):
            aic = A[i][c]
            for j in range(c + 1, ncols):
                A[i][j] = exact_div(A[i][j] * arc - aic * A[r][j], prev)
            A[i][c] = 0
        prev = arc
        r += 1
    return r
