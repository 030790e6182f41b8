from fractions import Fraction
from math import comb

import pytest
from hypothesis import strategies as st


def gauss_det(rows, cols):
    """Determinant of [C(i, j)] by plain rational elimination (test-only oracle)."""
    A = [[Fraction(comb(i, j)) for j in cols] for i in rows]
    n = len(A)
    result = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if A[r][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            A[k], A[p] = A[p], A[k]
            result = -result
        result *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            for c in range(k, n):
                A[r][c] -= f * A[k][c]
    assert result.denominator == 1
    return result.numerator


@st.composite
def index_sets(draw, min_size=1, max_size=6, max_index=20):
    size = draw(st.integers(min_size, max_size))
    vals = draw(st.sets(st.integers(0, max_index), min_size=size, max_size=size))
    return tuple(sorted(vals))


@st.composite
def pairs_below(draw, max_size=6, max_index=20):
    """(I, J) with |I| = |J| and J <= I componentwise."""
    I = draw(index_sets(max_size=max_size, max_index=max_index))
    J, lo = [], 0
    for i in I:
        j = draw(st.integers(lo, i))
        J.append(j)
        lo = j + 1
    return I, tuple(J)


@pytest.fixture
def oracle_det():
    return gauss_det
