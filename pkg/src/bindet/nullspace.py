"""Left nullspace generators of d x (d-1) binomial matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Sequence

from .binomial import binom, rat_str, submatrix
from .errors import IdentityMismatch, PreconditionError, RankDeficient
from .formulas import det_value
from .indexsets import IndexSet, SetLike, as_indexset, interval, leq
from .oracle import rank


@dataclass(frozen=True)
class NullVector:
    """Row vector ``x`` with ``x . B^I_J = 0``, in the basis u_1, ..., u_d."""

    coeffs: tuple[Fraction, ...]

    @property
    def integral_coeffs(self) -> tuple[int, ...]:
        """Smallest integer vector that is a positive multiple of ``coeffs``."""
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints) or 1
        return tuple(v // g for v in ints)

    def to_json(self) -> dict:
        return {
            "coeffs": [rat_str(c) for c in self.coeffs],
            "integral_coeffs": [str(v) for v in self.integral_coeffs],
        }


@dataclass(frozen=True)
class LambdaForm:
    lam: Fraction
    per_index_terms: tuple[Fraction, ...]


def annihilates(coeffs: Sequence[Fraction | int], I: SetLike, J: SetLike) -> bool:
    I, J = as_indexset(I), as_indexset(J)
    return all(sum(c * binom(i, j) for c, i in zip(coeffs, I)) == 0 for j in J)


def _check_shape(I: IndexSet, J: IndexSet) -> None:
    if len(J) == 0 or len(I) != len(J) + 1:
        raise PreconditionError(f"need |I| = |J| + 1 >= 2, got {len(I)} and {len(J)}")


def nullspace_cramer(I: SetLike, J: SetLike) -> NullVector:
    """Cramer generator: entry r is (-1)^(r-1) det(I minus i_r, J).

    Refuses (``RankDeficient``) when rank(B^I_J) < d-1.
    """
    I, J = as_indexset(I), as_indexset(J)
    _check_shape(I, J)
    d = len(I)
    rk = rank(submatrix(I, J))
    if rk < d - 1:
        raise RankDeficient(rk, d - 1)
    coeffs = tuple(
        Fraction((-1) ** r * det_value(I.without(i), J)) for r, i in enumerate(I)
    )
    if not annihilates(coeffs, I, J):
        raise IdentityMismatch(f"Cramer vector does not annihilate B^{I}_{J}")
    return NullVector(coeffs)


def nullspace_family(i: int, d: int, j: int) -> tuple[IndexSet, IndexSet]:
    """Rows ``[i, i+d-1]`` and columns ``{0} u [j, j+d-3]``."""
    if d < 3 or j < 1:
        raise PreconditionError(f"need d >= 3 and j >= 1; got d={d} j={j}")
    return interval(i, i + d - 1), IndexSet((0,) + tuple(range(j, j + d - 2)))


def lambda_form(i: int, d: int, j: int) -> LambdaForm:
    I, J = nullspace_family(i, d, j)
    if not leq(J, interval(i, i + d - 2)):
        raise PreconditionError(f"J={J} is not <= [{i},{i + d - 2}] (need j <= i+1)")
    lam = Fraction(
        prod(binom(i + k - 1, j - 1) for k in range(1, d)),
        # the k = 0 factor is C(j-1, j-1) = 1
        prod(binom(j + k - 1, j - 1) for k in range(0, d - 2)),
    )
    terms = [Fraction(1, binom(i, j - 1))]
    for r in range(2, d):
        terms.append(
            Fraction(binom(d - 2, r - 1), binom(i + r - 1, j - 1))
            + Fraction(binom(d - 2, r - 2), binom(i + r - 2, j - 1))
        )
    terms.append(Fraction(1, binom(i + d - 2, j - 1)))
    return LambdaForm(lam, tuple(terms))


def nullspace_lambda(i: int, d: int, j: int, check: bool = True) -> tuple[LambdaForm, NullVector]:
    """Closed-form generator for rows ``[i, i+d-1]``, columns ``{0} u [j, j+d-3]``.

    Requires ``d >= 3`` and ``1 <= j <= i+1``. With ``check`` the vector is
    verified to equal the Cramer vector divided by lambda, entry by entry.
    """
    form = lambda_form(i, d, j)
    vec = NullVector(tuple((-1) ** r * t for r, t in enumerate(form.per_index_terms)))
    if check:
        I, J = nullspace_family(i, d, j)
        cramer = nullspace_cramer(I, J)
        if tuple(form.lam * c for c in vec.coeffs) != cramer.coeffs:
            raise IdentityMismatch(f"lambda vector is not Cramer/lambda for i={i} d={d} j={j}")
    return form, vec


def family_params(I: IndexSet, J: IndexSet) -> tuple[int, int, int] | None:
    """``(i, d, j)`` if (I, J) belongs to the closed-form family, else ``None``."""
    d = len(I)
    if d < 3 or len(J) != d - 1 or not I.is_interval() or J.first != 0:
        return None
    rest = IndexSet(J.elems[1:])
    if not rest.is_interval() or rest.first < 1:
        return None
    i, j = I.first, rest.first
    if j > i + 1:
        return None
    return i, d, j
