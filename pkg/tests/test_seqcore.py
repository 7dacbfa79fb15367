from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selrec.errors import ContractViolation
from selrec.seqcore import (Seq, checked_call, concat, const_seq, from_list, init_seg,
                            init_seg_zero, overwrite, periodic, restrict_outcome,
                            segment, seq_at, shift, table_outcome, zero_seq)

values = st.integers(min_value=0, max_value=3)
paths = st.lists(values, max_size=4).map(tuple)
periods = st.lists(values, min_size=1, max_size=6)


def test_zero_seq_reads_zero_everywhere():
    z = zero_seq()
    assert seq_at(z, 0) == 0
    assert seq_at(z, 10 ** 6) == 0
    assert overwrite((), zero_seq()).take(100) == zero_seq().take(100)


def test_seq_at_reads_prefix_then_suffix():
    assert seq_at(zero_seq(), 3) == 0
    assert seq_at(overwrite((1, 2), zero_seq()), 1) == 2
    assert seq_at(overwrite((1, 2), zero_seq()), 5) == 0


def test_overwrite_shifts_the_suffix_by_the_prefix_length():
    assert overwrite((2,), const_seq(1)).take(3) == (2, 1, 1)
    alpha = Seq(lambda i: i)
    assert overwrite((), alpha).take(10) == alpha.take(10)
    assert overwrite((1, 1), zero_seq()).take(4) == (1, 1, 0, 0)
    # with a non-constant suffix the index shift is visible
    assert overwrite((9,), alpha).take(4) == (9, 2, 3, 4)
    assert concat((9,), alpha).take(4) == (9, 0, 1, 2)


def test_shift_examples():
    alpha = periodic([0, 1, 2])
    assert shift(alpha, 0).take(20) == alpha.take(20)
    assert shift(overwrite((5,), zero_seq()), 1).take(21) == zero_seq().take(21)
    assert shift(shift(alpha, 2), 3).take(21) == shift(alpha, 5).take(21)


def test_initial_segments():
    ones = const_seq(1)
    assert init_seg(ones, 0) == ()
    assert init_seg_zero(ones, 2).take(4) == (1, 1, 0, 0)
    assert segment(zero_seq(), 1, 3) == (0, 0, 0)
    assert segment(periodic([0, 1, 2, 3]), 1, 3) == (1, 2, 3)


def test_restrict_outcome_examples():
    conj = table_outcome([0, 0, 0, 1], 2, 2)  # a and b, big-endian
    assert restrict_outcome(conj, ()) is conj
    q1 = restrict_outcome(conj, (1,))
    assert q1.modulus == 1
    for beta in (zero_seq(), const_seq(1), periodic([0, 1]), periodic([1, 0])):
        assert q1(beta) == beta[0]
    assert restrict_outcome(conj, (1, 1, 0)).modulus == 0


@given(st.lists(values, max_size=3), st.lists(values, max_size=3), periods)
def test_restrict_outcome_associates(x, y, period):
    q = table_outcome([i % 3 for i in range(4 ** 4)], 4, 4)
    beta = periodic(period)
    nested = restrict_outcome(restrict_outcome(q, tuple(x)), tuple(y))
    assert nested(beta) == restrict_outcome(q, tuple(x) + tuple(y))(beta)
    assert nested.modulus == max(0, 4 - len(x) - len(y))


def test_long_restriction_chain_is_cheap():
    q = table_outcome([0, 1], 2, 1)
    for _ in range(20000):
        q = restrict_outcome(q, (1,))
    assert q(zero_seq()) == 1
    assert len(q.prefix) == 20000


@given(periods, st.integers(0, 8), st.integers(0, 20))
def test_shift_law(period, n, i):
    alpha = periodic(period)
    assert seq_at(shift(alpha, n), i) == seq_at(alpha, n + i)


@given(paths, periods)
def test_overwrite_law(s, period):
    alpha = periodic(period)
    ow = overwrite(s, alpha)
    for i in range(11):
        assert ow[i] == (s[i] if i < len(s) else alpha[i + len(s)])


@given(periods, st.integers(0, 8))
def test_init_seg_zero_agrees_then_zeros(period, n):
    alpha = periodic(period)
    z = init_seg_zero(alpha, n)
    assert z.take(n) == alpha.take(n)
    assert all(z[i] == 0 for i in range(n, n + 20))


@given(st.lists(st.integers(0, 50), max_size=40))
def test_memo_runs_generator_once_per_index(reads):
    calls = []
    alpha = Seq(lambda i: calls.append(i) or i * i)
    for i in reads:
        assert alpha[i] == alpha[i] == i * i
    assert alpha.evaluations == len(set(reads)) == len(calls)


def test_memo_first_write_wins_under_reentrancy():
    box = {}

    def gen(i):
        if i == 0 and "inner" not in box:
            box["inner"] = True
            box["seen"] = alpha[0]  # re-entrant read of the same slot
            return "outer"
        return "inner"

    alpha = Seq(gen)
    assert alpha[0] == box["seen"] == "inner"
    assert alpha[0] == "inner"


def test_negative_index_rejected():
    with pytest.raises(IndexError):
        zero_seq()[-1]


def test_from_list_pads():
    assert from_list([3, 2], fill=7).take(4) == (3, 2, 7, 7)


def test_checked_call_enforces_modulus():
    q = table_outcome([0, 1, 1, 0], 2, 2)
    assert checked_call(q, periodic([1, 0])) == 1
    sneaky = type(q)(lambda a: a[5], 2)
    with pytest.raises(ContractViolation):
        checked_call(sneaky, zero_seq())
