"""Interchanging the roles of rows and columns: det(I, J) = q(J, I, n) det(n-J, n-I)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional

from .binomial import pi, q_quotient, rat_str, submatrix, superfactorial
from .errors import IdentityMismatch, PreconditionError
from .indexsets import IndexSet, SetLike, as_indexset, derived_chain, format_indexset, interval, leq, reflect, shift_up
from .oracle import det_bareiss

VERIFY_MAX_D = 6


@dataclass(frozen=True)
class InterchangeResult:
    q_factor: Fraction
    new_rows: IndexSet
    new_cols: IndexSet
    n: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": rat_str(self.q_factor),
            "new_rows": format_indexset(self.new_rows),
            "new_cols": format_indexset(self.new_cols),
        }


def _validate(I: IndexSet, J: IndexSet, n: int) -> None:
    if len(I) != len(J) or not len(I):
        raise PreconditionError(f"need |I| = |J| >= 1, got {len(I)} and {len(J)}")
    if not leq(J, I):
        raise PreconditionError(f"J={J} is not <= I={I}")
    if n < I.last:
        raise PreconditionError(f"n={n} is below max(I)={I.last}")


def interchange(I: SetLike, J: SetLike, n: int, verify: Optional[bool] = None) -> InterchangeResult:
    """Rewrite det(I, J) as ``q_factor * det(n - J, n - I)``.

    ``verify`` defaults to on for d <= 6 and checks both sides with the oracle.
    """
    I, J = as_indexset(I), as_indexset(J)
    _validate(I, J, n)
    res = InterchangeResult(q_quotient(J, I, n), reflect(J, n), reflect(I, n), n)
    if verify is None:
        verify = len(I) <= VERIFY_MAX_D
    if verify:
        lhs = det_bareiss(submatrix(I, J))
        rhs = res.q_factor * det_bareiss(submatrix(res.new_rows, res.new_cols))
        if lhs != rhs:
            raise IdentityMismatch(f"interchange failed for I={I}, J={J}, n={n}: {lhs} != {rhs}")
    return res


def double_interchange(I: SetLike, J: SetLike, n: int, m: int) -> tuple[Fraction, IndexSet, IndexSet]:
    """``(q(J,I,n) q(n-I,n-J,m), I+m-n, J+m-n)`` for ``m >= n >= max(I)``."""
    I, J = as_indexset(I), as_indexset(J)
    _validate(I, J, n)
    if m < n:
        raise PreconditionError(f"need m >= n, got m={m} n={n}")
    factor = q_quotient(J, I, n) * q_quotient(reflect(I, n), reflect(J, n), m)
    return factor, shift_up(I, m - n), shift_up(J, m - n)


# Readings of the index range in the Vandermonde-type product over J. The
# verbatim range contains k = l and so vanishes; "strict" is the usual
# Vandermonde range. "strict_below_d" is the narrower range, kept as a
# diagnostic.
READINGS = {
    "literal": lambda k, l, d: k <= l < d,  # 1 <= k <= l < d, verbatim
    "strict": lambda k, l, d: k < l <= d,  # 1 <= k < l <= d
    "strict_below_d": lambda k, l, d: k < l < d,  # 1 <= k < l < d
}


@dataclass(frozen=True)
class PiProductReport:
    i: int
    d: int
    cols: IndexSet
    n: int
    pi_product: Fraction
    det: int
    readings: dict = field(default_factory=dict)

    @property
    def matching(self) -> list[str]:
        return [name for name, v in self.readings.items() if v == self.det]

    @property
    def holds(self) -> bool:
        return self.pi_product == self.det and bool(self.matching)

    def to_json(self) -> dict:
        return {
            "rows": format_indexset(interval(self.i, self.i + self.d - 1)),
            "cols": format_indexset(self.cols),
            "n": self.n,
            "pi_product": rat_str(self.pi_product),
            "det": str(self.det),
            "readings": {k: rat_str(v) for k, v in self.readings.items()},
            "matching": self.matching,
        }


def pi_product_identity_report(i: int, d: int, J: SetLike, n: int) -> PiProductReport:
    """Evaluate both sides of the pi-product / interchange identity exactly.

    The left side is the product of pi over the derived-pair chain. The right
    side ``q(J,I,n) pi(n-J, n-I) prod(j_l - j_k) / 0!...(d-1)!`` is computed
    once per index-range reading in :data:`READINGS`; mismatches are reported,
    not reconciled.
    """
    J = as_indexset(J)
    I = interval(i, i + d - 1)
    if len(J) != d:
        raise PreconditionError(f"|J|={len(J)} but d={d}")
    _validate(I, J, n)
    lhs = prod((pi(p.rows, p.cols) for p in derived_chain(I, J)), start=Fraction(1))
    scale = q_quotient(J, I, n) * pi(reflect(J, n), reflect(I, n))
    readings = {}
    for name, keep in READINGS.items():
        vprod = prod(
            J[l - 1] - J[k - 1]
            for k in range(1, d + 1)
            for l in range(1, d + 1)
            if keep(k, l, d)
        )
        readings[name] = scale * Fraction(vprod, superfactorial(d - 1))
    return PiProductReport(i, d, J, n, lhs, det_bareiss(submatrix(I, J)), readings)


def pi_product_identity_check(i: int, d: int, J: SetLike, n: int) -> bool:
    """True when the pi product equals the determinant and some reading of the
    right-hand side does too."""
    return pi_product_identity_report(i, d, J, n).holds
