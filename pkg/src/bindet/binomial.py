"""Exact binomial coefficients, binomial submatrices and the scalar quotients
that the closed forms pull out of a binomial determinant.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`;
both are arbitrary precision and ``Fraction`` is always kept in lowest terms
with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

from .errors import InexactDivision, PreconditionError
from .indexsets import IndexSet, SetLike, as_indexset


def binom(i: int, j: int) -> int:
    """C(i, j) by the running product prod_{t=1..j} (i-j+t)/t; zero for j > i."""
    if i < 0 or j < 0:
        raise PreconditionError(f"binom({i}, {j}) needs non-negative arguments")
    if j > i:
        return 0
    j = min(j, i - j)
    acc = 1
    for t in range(1, j + 1):
        # acc * (i-j+t) is t * C(i-j+t, t), so the division is exact.
        acc = acc * (i - j + t) // t
    return acc


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise InexactDivision(f"{a} is not divisible by {b}")
    return q


def as_int(x: Fraction) -> int:
    """Integer value of a rational that must be integral."""
    if x.denominator != 1:
        raise InexactDivision(f"{x} is not an integer")
    return x.numerator


def rat_str(x: int | Fraction) -> str:
    """Decimal string form used in JSON: ``"6"``, ``"-20/3"``."""
    return str(Fraction(x))


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class BinMatrix:
    rows: IndexSet
    cols: IndexSet
    entries: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def submatrix(I: SetLike, J: SetLike) -> BinMatrix:
    """The matrix ``B^I_J`` with entries C(i, j) for i in I, j in J."""
    I, J = as_indexset(I), as_indexset(J)
    if not len(I) or not len(J):
        raise PreconditionError("row and column sets must be non-empty")
    return BinMatrix(I, J, tuple(tuple(binom(i, j) for j in J) for i in I))


def pi(I: SetLike, J: SetLike) -> Fraction:
    """prod_t C(i_t, j_1) / prod_t C(j_t, j_1)."""
    I, J = as_indexset(I), as_indexset(J)
    if len(I) != len(J) or not len(I):
        raise PreconditionError(f"pi needs equal non-empty sizes, got {len(I)} and {len(J)}")
    j1 = J.first
    return Fraction(prod(binom(i, j1) for i in I), prod(binom(j, j1) for j in J))


def q_quotient(J: SetLike, I: SetLike, n: int) -> Fraction:
    """prod_t C(n, j_t) / prod_t C(n, i_t), the interchange factor."""
    I, J = as_indexset(I), as_indexset(J)
    if len(I) != len(J):
        raise PreconditionError(f"size mismatch: |J|={len(J)} but |I|={len(I)}")
    if n < max(I.last, J.last):
        raise PreconditionError(f"n={n} is below max index {max(I.last, J.last)}")
    return Fraction(prod(binom(n, j) for j in J), prod(binom(n, i) for i in I))


def vandermonde(values) -> int:
    """prod_{k<l} (v_l - v_k)."""
    v = list(values)
    return prod(v[l] - v[k] for k in range(len(v)) for l in range(k + 1, len(v)))


def superfactorial(m: int) -> int:
    """0! 1! ... m!"""
    return prod(factorial(k) for k in range(m + 1))
