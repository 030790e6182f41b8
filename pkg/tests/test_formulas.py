from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from bindet.binomial import binom, pi, submatrix
from bindet.errors import MethodNotApplicable, PreconditionError, TermCapExceeded
from bindet.formulas import (
    Method,
    binomial_sum_split,
    counting_identity_lhs,
    det,
    det_cols_interval,
    det_moh,
    det_punctured_prefix,
    det_rows_interval,
    det_rows_interval_cols_punctured,
    det_rows_punctured_cols_interval,
    reduce_shift,
    size_reduction_expand,
)
from bindet.indexsets import IndexSet, IntervalSpec, interval, leq
from bindet.oracle import det_bareiss

from conftest import gauss_det, index_sets, pairs_below


def oracle(I, J):
    return det_bareiss(submatrix(I, J))


# -- dispatcher ---------------------------------------------------------------


def test_identity_rule():
    rep = det([4, 7, 9], [4, 7, 9])
    assert (rep.value, rep.method) == (1, Method.IDENTITY_RULE)


def test_zero_rule():
    rep = det([1, 4], [2, 3])
    assert (rep.value, rep.method) == (0, Method.ZERO_RULE)


def test_general_pair_uses_size_reduction():
    rep = det([3, 5, 7, 8], [0, 3, 5, 7])
    assert rep.method == Method.SIZE_REDUCTION
    assert rep.value == oracle([3, 5, 7, 8], [0, 3, 5, 7]) == 791


def test_auto_precedence():
    assert det(interval(3, 5), interval(1, 3)).method == Method.MOH
    assert det(interval(3, 5), [0, 2, 5]).method == Method.ROWS_INTERVAL
    assert det([2, 6, 9], interval(1, 3)).method == Method.COLS_INTERVAL
    assert det([1], [0]).method == Method.MOH


def test_falls_back_to_oracle_past_cap():
    rep = det([0, 9, 19], [0, 1, 2 + 3], term_cap=5)
    assert rep.method == Method.ORACLE
    assert rep.value == oracle([0, 9, 19], [0, 1, 5])


def test_inapplicable_method():
    with pytest.raises(MethodNotApplicable):
        det([3, 5, 7, 8], [0, 3, 5, 7], method="moh")
    with pytest.raises(MethodNotApplicable):
        det([1, 4], [2, 3], method="size_reduction")
    with pytest.raises(PreconditionError):
        det([1, 2], [0])


@settings(max_examples=80, deadline=None)
@given(pairs_below(max_size=6, max_index=20))
def test_every_applicable_method_matches_oracle(pair):
    I, J = pair
    truth = gauss_det(I, J)
    for m in Method:
        try:
            rep = det(I, J, method=m)
        except MethodNotApplicable:
            continue
        assert rep.value == truth, m


@settings(max_examples=150, deadline=None)
@given(index_sets(max_size=7, max_index=25), index_sets(max_size=7, max_index=25))
def test_positivity(a, b):
    d = min(len(a), len(b))
    I, J = a[:d], b[:d]
    value = det(I, J).value
    assert value >= 0
    assert (value > 0) == leq(J, I)


def test_counterexample_fixture():
    assert det(interval(2, 3), [0, 2]).value == 2
    assert det([1, 3], interval(0, 1)).value == 2
    assert det([3], [0]).value == 1


# -- reduction and size reduction ------------------------------------------------


def test_reduce_shift():
    p, I0, J0 = reduce_shift(interval(4, 5), [1, 3])
    assert (p, I0.elems, J0.elems) == (Fraction(20, 3), (3, 4), (0, 2))
    p, I0, J0 = reduce_shift([3, 6], [0, 2])
    assert (p, I0.elems, J0.elems) == (1, (3, 6), (0, 2))
    with pytest.raises(PreconditionError):
        reduce_shift([1, 4], [2, 3])


@settings(max_examples=100, deadline=None)
@given(pairs_below(max_size=6, max_index=20))
def test_reduce_shift_preserves_det(pair):
    I, J = pair
    p, I0, J0 = reduce_shift(I, J)
    assert p * oracle(I0, J0) == oracle(I, J)


def test_size_reduction_paper_example():
    terms = size_reduction_expand([3, 5, 7, 8], [0, 3, 5, 7])
    assert [t.ks for t in terms] == [(3, 5, 7), (3, 6, 7), (4, 5, 7), (4, 6, 7)]
    assert all(t.reduced_cols.elems == (2, 4, 6) for t in terms)
    assert [oracle(t.reduced_rows, t.reduced_cols) for t in terms] == [105, 210, 140, 336]


def test_size_reduction_eight_terms_first_two_zero():
    terms = size_reduction_expand([1, 5, 7, 8], [0, 3, 5, 7])
    assert len(terms) == 8
    values = [oracle(t.reduced_rows, t.reduced_cols) for t in terms]
    assert values[:2] == [0, 0]
    assert all(v > 0 for v in values[2:])
    assert sum(values) == oracle([1, 5, 7, 8], [0, 3, 5, 7]) == 896


def test_size_reduction_interval_rows_single_term():
    terms = size_reduction_expand(interval(5, 9), [1, 2, 4, 6, 9])
    assert len(terms) == 1
    assert terms[0].reduced_rows == interval(5 - 1, 5 - 1 + 3)


def test_size_reduction_cap_and_errors():
    with pytest.raises(TermCapExceeded):
        size_reduction_expand([0, 10, 20], [0, 1, 2], term_cap=99)
    with pytest.raises(PreconditionError):
        size_reduction_expand([4], [1])
    with pytest.raises(PreconditionError):
        size_reduction_expand([1, 4], [2, 3])


@settings(max_examples=100, deadline=None)
@given(pairs_below(max_size=6, max_index=16))
def test_size_reduction_sum(pair):
    I, J = pair
    if len(I) < 2:
        return
    terms = size_reduction_expand(I, J)
    assert len(terms) == prod(b - a for a, b in zip(I, I[1:]))
    total = sum(oracle(t.reduced_rows, t.reduced_cols) for t in terms)
    assert pi(I, J) * total == oracle(I, J)


# -- consecutive columns and rows -------------------------------------------------


def vdm_quotient(I):
    d = len(I)
    v = prod(I[l] - I[k] for k in range(d) for l in range(k + 1, d))
    return Fraction(v, prod(factorial(k) for k in range(d)))


@given(index_sets(max_size=6, max_index=20))
def test_cols_interval_at_zero(I):
    value = det_cols_interval(I, 0)
    assert value > 0
    assert value == vdm_quotient(I) == gauss_det(I, range(len(I)))


def test_cols_interval_fixtures():
    assert det_cols_interval([3, 5, 7, 8], 0) == oracle([3, 5, 7, 8], interval(0, 3))
    for i in range(1, 6):
        for d in range(1, 6):
            assert det_cols_interval(interval(i, i + d - 1), 1) == binom(i + d - 1, d)
    assert det_cols_interval([1, 5], 2) == 0


@given(index_sets(max_size=6, max_index=20), st.integers(0, 20))
def test_cols_interval_matches_oracle(I, j):
    assert det_cols_interval(I, j) == gauss_det(I, range(j, j + len(I)))


def test_rows_interval_fixtures():
    for i in range(0, 6):
        for d in range(1, 6):
            assert det_rows_interval(i, d, interval(0, d - 1)) == 1
    assert det_rows_interval(2, 3, [0, 1, 3]) == oracle(interval(2, 4), [0, 1, 3]) == 2
    assert det_rows_interval(5, 3, interval(2, 4)) == pi(interval(5, 7), interval(2, 4))
    with pytest.raises(PreconditionError):
        det_rows_interval(2, 2, [0, 4])


@settings(max_examples=100)
@given(st.integers(0, 15), st.integers(1, 7), st.data())
def test_rows_interval_matches_oracle(i, d, data):
    J, lo = [], 0
    for x in range(i, i + d):
        j = data.draw(st.integers(lo, x))
        J.append(j)
        lo = j + 1
    assert det_rows_interval(i, d, J) == gauss_det(range(i, i + d), J)


def test_both_intervals():
    for i in range(8):
        for d in range(1, 6):
            assert det_moh(i, 0, d) == 1
            if i >= 1:
                assert det_moh(i, 1, d) == binom(i + d - 1, d)
    assert det_moh(2, 3, 3) == 0


@given(st.integers(0, 15), st.integers(0, 15), st.integers(1, 6))
def test_both_intervals_match_oracle_and_interval_difference(i, j, d):
    I, J = interval(i, i + d - 1), interval(j, j + d - 1)
    value = det_moh(i, j, d)
    assert value == gauss_det(I, J)
    common = set(I) & set(J)
    I2 = [x for x in I if x not in common]
    J2 = [x for x in J if x not in common]
    if I2:
        assert value == gauss_det(I2, J2)
    else:
        assert value == 1


# -- punctured forms ---------------------------------------------------------------


def test_punctured_prefix():
    for i in range(1, 6):
        for d in range(2, 7):
            assert det_punctured_prefix(i, d, d) == 1
            assert det_punctured_prefix(i, d, 1) == binom(i + d - 2, d - 1)
    assert det_punctured_prefix(2, 4, 2) == oracle(interval(2, 4), [0, 2, 3]) == 3
    with pytest.raises(PreconditionError):
        det_punctured_prefix(0, 3, 1)
    with pytest.raises(PreconditionError):
        det_punctured_prefix(2, 3, 4)


@given(st.integers(1, 12), st.integers(2, 7), st.data())
def test_punctured_prefix_matches_oracle(i, d, data):
    r = data.draw(st.integers(1, d))
    cols = [c for c in range(d) if c != r - 1]
    assert det_punctured_prefix(i, d, r) == gauss_det(range(i, i + d - 1), cols)


def test_rows_interval_cols_punctured_fixtures():
    i, d, j = 4, 4, 2
    I = interval(i, i + d - 2)
    assert det_rows_interval_cols_punctured(i, d, j, 1) == pi(I, interval(j + 1, j + d - 1))
    assert det_rows_interval_cols_punctured(i, d, j, d) == pi(I, interval(j, j + d - 2))
    assert det_rows_interval_cols_punctured(4, 4, 2, 3) == oracle(interval(4, 6), [2, 3, 5])
    with pytest.raises(PreconditionError):
        det_rows_interval_cols_punctured(3, 4, 3, 2)
    with pytest.raises(PreconditionError):
        det_rows_interval_cols_punctured(5, 4, 1, 5)


@given(st.integers(1, 14), st.integers(2, 7), st.data())
def test_rows_interval_cols_punctured_matches_oracle(i, d, data):
    j = data.draw(st.integers(0, i - 1))
    r = data.draw(st.integers(1, d))
    cols = IntervalSpec(j, j + d - 1, j + r - 1).to_indexset()
    assert det_rows_interval_cols_punctured(i, d, j, r) == gauss_det(range(i, i + d - 1), cols)


def test_rows_punctured_cols_interval_fixtures():
    for i in range(0, 5):
        for d in range(2, 6):
            for r in range(1, d + 1):
                assert det_rows_punctured_cols_interval(i, d, 0, r) == binom(d - 1, r - 1)
    rows = IntervalSpec(3, 6, 4).to_indexset()
    assert det_rows_punctured_cols_interval(3, 4, 1, 2) == oracle(rows, interval(1, 3))
    with pytest.raises(PreconditionError):
        det_rows_punctured_cols_interval(2, 3, 3, 1)


@given(st.integers(0, 14), st.integers(2, 7), st.data())
def test_rows_punctured_cols_interval_matches_oracle(i, d, data):
    j = data.draw(st.integers(0, i))
    r = data.draw(st.integers(1, d))
    rows = IntervalSpec(i, i + d - 1, i + r - 1).to_indexset()
    assert det_rows_punctured_cols_interval(i, d, j, r) == gauss_det(rows, range(j, j + d - 1))


def test_binomial_sum_split_single_terms():
    J = [0, 2, 3]
    (pair,) = binomial_sum_split(3, 4, J, 1)
    assert pair == (interval(4, 5), IndexSet((1, 2)))
    (pair,) = binomial_sum_split(3, 4, J, 4)
    assert pair == (interval(3, 4), IndexSet((1, 2)))


def test_binomial_sum_split_errors():
    with pytest.raises(PreconditionError):
        binomial_sum_split(3, 4, [1, 2, 3], 2)
    with pytest.raises(PreconditionError):
        binomial_sum_split(3, 2, [0], 1)
    with pytest.raises(PreconditionError):
        binomial_sum_split(1, 4, [0, 3, 5], 2)


@given(st.integers(0, 12), st.integers(3, 7), st.data())
def test_binomial_sum_split_matches_oracle(i, d, data):
    J, lo = [0], 1
    for x in range(i + 1, i + d - 1):
        j = data.draw(st.integers(lo, x))
        J.append(j)
        lo = j + 1
    r = data.draw(st.integers(1, d))
    rows = interval(i, i + d - 1).without(i + r - 1)
    pieces = binomial_sum_split(i, d, J, r)
    assert len(pieces) == (2 if 2 <= r <= d - 1 else 1)
    assert sum(gauss_det(a, b) for a, b in pieces) == gauss_det(rows, J)


# -- counting identity ------------------------------------------------------------


def test_counting_identity_small():
    assert counting_identity_lhs([7]) == 1
    assert counting_identity_lhs([3, 11]) == 8
    assert counting_identity_lhs([0, 2, 5]) == 15


@given(index_sets(max_size=4, max_index=12))
def test_counting_identity(I):
    assert counting_identity_lhs(I) == vdm_quotient(I)


def test_counting_identity_cap():
    with pytest.raises(TermCapExceeded):
        counting_identity_lhs([0, 30, 60], term_cap=100)
