"""Closed forms for binomial determinants and the dispatcher that picks one.

Every public ``det_*`` function returns an exact ``int``. Where a formula is
a product of rationals that must be integral, the final conversion goes
through :func:`bindet.binomial.as_int` and raises on a non-integer.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional

from .binomial import as_int, binom, exact_div, pi, rat_str, submatrix, superfactorial, vandermonde
from .errors import MethodNotApplicable, PreconditionError, TermCapExceeded
from .indexsets import (
    IndexSet,
    IntervalSpec,
    SetLike,
    as_indexset,
    derived_chain,
    format_indexset,
    interval,
    leq,
    shift_down,
)
from .oracle import det_bareiss

DEFAULT_TERM_CAP = 10**6


class Method(str, enum.Enum):
    AUTO = "auto"
    ORACLE = "oracle"
    REDUCE_SHIFT = "reduce_shift"
    SIZE_REDUCTION = "size_reduction"
    COLS_INTERVAL = "cols_interval"
    ROWS_INTERVAL = "rows_interval"
    MOH = "moh"
    ROWS_ALMOST_COLS = "rows_almost_cols"
    ALMOST_ROWS_COLS = "almost_rows_cols"
    ZERO_RULE = "zero_rule"
    IDENTITY_RULE = "identity_rule"


@dataclass(frozen=True)
class ExpansionTerm:
    ks: tuple[int, ...]
    reduced_rows: IndexSet
    reduced_cols: IndexSet


@dataclass(frozen=True)
class EvalReport:
    rows: IndexSet
    cols: IndexSet
    value: int
    method: Method
    pi_factor: Fraction = Fraction(1)

    def to_json(self) -> dict:
        return {
            "rows": format_indexset(self.rows),
            "cols": format_indexset(self.cols),
            "det": str(self.value),
            "method": self.method.value,
            "pi": rat_str(self.pi_factor),
        }


def _pair(I: SetLike, J: SetLike) -> tuple[IndexSet, IndexSet]:
    I, J = as_indexset(I), as_indexset(J)
    if len(I) != len(J) or not len(I):
        raise PreconditionError(f"need |I| = |J| >= 1, got {len(I)} and {len(J)}")
    return I, J


def _require_leq(I: IndexSet, J: IndexSet) -> None:
    if not leq(J, I):
        raise PreconditionError(f"J={J} is not <= I={I}")


# -- Reduction to j_1 = 0 and size reduction ---------------------------------


def reduce_shift(I: SetLike, J: SetLike) -> tuple[Fraction, IndexSet, IndexSet]:
    """``(pi^I_J, I - j_1, J - j_1)``; the determinant is pi times the shifted one."""
    I, J = _pair(I, J)
    _require_leq(I, J)
    j1 = J.first
    return pi(I, J), shift_down(I, j1), shift_down(J, j1)


def expansion_size(I: SetLike) -> int:
    I = as_indexset(I)
    return prod(b - a for a, b in zip(I, I.elems[1:]))


def size_reduction_expand(
    I: SetLike, J: SetLike, term_cap: int = DEFAULT_TERM_CAP
) -> list[ExpansionTerm]:
    """One term per tuple in [i_1-j_1, i_2-j_1-1] x ... x [i_{d-1}-j_1, i_d-j_1-1].

    The determinant equals ``pi(I, J)`` times the sum of the term determinants.
    """
    I, J = _pair(I, J)
    _require_leq(I, J)
    d = len(I)
    if d < 2:
        raise PreconditionError("size reduction needs d >= 2")
    count = expansion_size(I)
    if count > term_cap:
        raise TermCapExceeded(f"{count} terms exceed cap {term_cap}")
    j1 = J.first
    cols = IndexSet.trusted(tuple(j - j1 - 1 for j in J.elems[1:]))
    ranges = [range(I[s - 1] - j1, I[s] - j1) for s in range(1, d)]
    terms = []
    for ks in itertools.product(*ranges):
        # Consecutive ranges are disjoint and ordered, so ks is strictly increasing.
        terms.append(ExpansionTerm(ks, IndexSet.trusted(ks), cols))
    return terms


# -- Consecutive columns -----------------------------------------------------


def det_cols_interval(I: SetLike, j: int) -> int:
    """Determinant with columns ``[j, j+d-1]``: pi times Vandermonde over 0!1!...(d-1)!."""
    I = as_indexset(I)
    d = len(I)
    J = interval(j, j + d - 1)
    base = exact_div(vandermonde(I), superfactorial(d - 1))
    return as_int(pi(I, J) * base)


def counting_identity_lhs(I: SetLike, term_cap: int = DEFAULT_TERM_CAP) -> int:
    """Count the nested tuple chains by direct enumeration.

    Level one ranges over [i_1, i_2-1] x ... x [i_{d-1}, i_d-1]; every later
    level ranges over the gaps of the tuple chosen one level up, down to a
    single coordinate.
    """
    I = as_indexset(I)

    def count(seq: tuple[int, ...]) -> int:
        if len(seq) == 1:
            return 1
        size = prod(b - a for a, b in zip(seq, seq[1:]))
        if size > term_cap:
            raise TermCapExceeded(f"{size} tuples exceed cap {term_cap}")
        ranges = [range(a, b) for a, b in zip(seq, seq[1:])]
        return sum(count(ks) for ks in itertools.product(*ranges))

    return count(I.elems)


# -- Consecutive rows --------------------------------------------------------


def det_rows_interval(i: int, d: int, J: SetLike) -> int:
    """Rows ``[i, i+d-1]``: product of pi over the derived-pair chain."""
    J = as_indexset(J)
    I = interval(i, i + d - 1)
    if len(J) != d:
        raise PreconditionError(f"|J|={len(J)} but d={d}")
    _require_leq(I, J)
    return as_int(prod((pi(p.rows, p.cols) for p in derived_chain(I, J)), start=Fraction(1)))


def det_moh(i: int, j: int, d: int) -> int:
    """Both rows and columns consecutive: the value is pi itself (0 when i < j)."""
    if d < 1:
        raise PreconditionError("d must be >= 1")
    if i < j:
        return 0
    return as_int(pi(interval(i, i + d - 1), interval(j, j + d - 1)))


# -- Consecutive rows, almost consecutive columns ----------------------------


def det_punctured_prefix(i: int, d: int, r: int) -> int:
    """Rows ``[i, i+d-2]``, columns ``[0, d-1]`` minus ``r-1``."""
    if d < 2 or i < 1 or not 1 <= r <= d:
        raise PreconditionError(f"need d >= 2, i >= 1, 1 <= r <= d; got i={i} d={d} r={r}")
    return binom(i + d - r - 1, d - r)


def det_rows_interval_cols_punctured(i: int, d: int, j: int, r: int) -> int:
    """Rows ``[i, i+d-2]``, columns ``[j, j+d-1]`` minus ``j+r-1``."""
    if d < 2 or not 1 <= r <= d:
        raise PreconditionError(f"need d >= 2 and 1 <= r <= d; got d={d} r={r}")
    if j > i - 1:
        raise PreconditionError(f"need j <= i-1; got i={i} j={j}")
    I = interval(i, i + d - 2)
    J = IntervalSpec(j, j + d - 1, j + r - 1).to_indexset()
    p = pi(I, J)
    if 2 <= r <= d - 1:
        return as_int(p * binom(i + d - j - r - 1, d - r))
    return as_int(p)


# -- Almost consecutive rows, consecutive columns ----------------------------


def det_rows_punctured_cols_interval(i: int, d: int, j: int, r: int) -> int:
    """Rows ``[i, i+d-1]`` minus ``i+r-1``, columns ``[j, j+d-2]``."""
    if d < 2 or not 1 <= r <= d:
        raise PreconditionError(f"need d >= 2 and 1 <= r <= d; got d={d} r={r}")
    if j > i:
        raise PreconditionError(f"need j <= i; got i={i} j={j}")
    I = IntervalSpec(i, i + d - 1, i + r - 1).to_indexset()
    J = interval(j, j + d - 2)
    return as_int(pi(I, J) * binom(d - 1, r - 1))


def binomial_sum_split(
    i: int, d: int, J: SetLike, r: int
) -> list[tuple[IndexSet, IndexSet]]:
    """Smaller (rows, cols) pairs whose determinants add up to that of
    rows ``[i, i+d-1]`` minus ``i+r-1`` against ``J = {0, j_2, ..., j_{d-1}}``.

    Two pairs for ``2 <= r <= d-1``, one pair for ``r`` in ``{1, d}``.
    """
    J = as_indexset(J)
    if d < 3:
        raise PreconditionError("binomial sum split needs d >= 3")
    if len(J) != d - 1:
        raise PreconditionError(f"|J|={len(J)} but d-1={d - 1}")
    if J.first != 0:
        raise PreconditionError(f"first column must be 0, got {J.first}")
    if not 1 <= r <= d:
        raise PreconditionError(f"r={r} outside [1, {d}]")
    if not leq(J, interval(i, i + d - 2)):
        raise PreconditionError(f"J={J} is not <= [{i},{i + d - 2}]")
    cols = IndexSet(tuple(j - 1 for j in J.elems[1:]))
    if r == 1:
        return [(interval(i + 1, i + d - 2), cols)]
    if r == d:
        return [(interval(i, i + d - 3), cols)]
    base = interval(i, i + d - 2)
    return [(base.without(i + r - 1), cols), (base.without(i + r - 2), cols)]


# -- Dispatcher --------------------------------------------------------------


def _as_punctured(S: IndexSet) -> Optional[IntervalSpec]:
    """``S`` as ``[lo, lo+|S|] minus one element``; intervals drop their top."""
    if S.is_interval():
        return IntervalSpec(S.first, S.last + 1, S.last + 1)
    return S.punctured_form()


def _try_method(
    method: Method, I: IndexSet, J: IndexSet, term_cap: int, memo: dict
) -> Optional[EvalReport]:
    """Evaluate with ``method`` or return ``None`` when it does not apply.

    ``memo`` caches automatic sub-determinants for the duration of one
    top-level call; the same reduced pair recurs across expansion branches.
    """
    d = len(I)
    below = leq(J, I)

    def report(value: int, p: Fraction = Fraction(1)) -> EvalReport:
        return EvalReport(I, J, value, method, p)

    if method is Method.ORACLE:
        return report(det_bareiss(submatrix(I, J)))
    if method is Method.ZERO_RULE:
        return report(0) if not below else None
    if method is Method.IDENTITY_RULE:
        return report(1) if I == J else None
    if method is Method.MOH:
        if I.is_interval() and J.is_interval():
            return report(det_moh(I.first, J.first, d), pi(I, J))
        return None
    if method is Method.ROWS_INTERVAL:
        if I.is_interval() and below:
            return report(det_rows_interval(I.first, d, J), pi(I, J))
        return None
    if method is Method.COLS_INTERVAL:
        if J.is_interval():
            return report(det_cols_interval(I, J.first), pi(I, J))
        return None
    if method is Method.ROWS_ALMOST_COLS:
        spec = _as_punctured(J)
        if I.is_interval() and spec is not None and spec.lo <= I.first - 1:
            r = spec.punctured_at - spec.lo + 1
            value = det_rows_interval_cols_punctured(I.first, d + 1, spec.lo, r)
            return report(value, pi(I, J))
        return None
    if method is Method.ALMOST_ROWS_COLS:
        spec = _as_punctured(I)
        if J.is_interval() and spec is not None and J.first <= spec.lo:
            r = spec.punctured_at - spec.lo + 1
            value = det_rows_punctured_cols_interval(spec.lo, d + 1, J.first, r)
            return report(value, pi(I, J))
        return None
    if method is Method.REDUCE_SHIFT:
        if not below:
            return None
        p, I0, J0 = reduce_shift(I, J)
        return report(as_int(p * _auto(I0, J0, term_cap, memo).value), p)
    if method is Method.SIZE_REDUCTION:
        if not below or d < 2 or expansion_size(I) > term_cap:
            return None
        p = pi(I, J)
        total = sum(
            _auto(t.reduced_rows, t.reduced_cols, term_cap, memo).value
            for t in size_reduction_expand(I, J, term_cap)
        )
        return report(as_int(p * total), p)
    raise ValueError(f"unknown method {method!r}")  # pragma: no cover


AUTO_ORDER = (
    Method.ZERO_RULE,
    Method.IDENTITY_RULE,
    Method.MOH,
    Method.ROWS_INTERVAL,
    Method.COLS_INTERVAL,
    Method.ROWS_ALMOST_COLS,
    Method.ALMOST_ROWS_COLS,
    Method.SIZE_REDUCTION,
    Method.ORACLE,
)


def _auto(I: IndexSet, J: IndexSet, term_cap: int, memo: dict) -> EvalReport:
    key = (I.elems, J.elems)
    if key not in memo:
        for m in AUTO_ORDER:
            rep = _try_method(m, I, J, term_cap, memo)
            if rep is not None:
                memo[key] = rep
                break
    return memo[key]


def det(
    I: SetLike,
    J: SetLike,
    method: Method | str = Method.AUTO,
    term_cap: int = DEFAULT_TERM_CAP,
) -> EvalReport:
    """Exact ``det(B^I_J)`` by the requested formula, or the first applicable
    one in :data:`AUTO_ORDER`."""
    I, J = _pair(I, J)
    method = Method(method)
    memo: dict = {}
    if method is Method.AUTO:
        return _auto(I, J, term_cap, memo)
    rep = _try_method(method, I, J, term_cap, memo)
    if rep is None:
        raise MethodNotApplicable(f"method {method.value} does not apply to I={I}, J={J}")
    return rep


def det_value(I: SetLike, J: SetLike, **kw) -> int:
    return det(I, J, **kw).value
