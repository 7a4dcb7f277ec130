from math import comb

import pytest
from hypothesis import given, strategies as st

from projlab.errors import DomainError
from projlab.hnumbers import (
    HTable,
    binom,
    build_H,
    build_H_blocks,
    h_direct,
    h_direct_profile,
    h_increment,
    h_incremental,
    h_recurrence,
    h_sum_backward,
    h_sum_forward,
)

from oracles import mq_strings


def test_build_H_examples():
    assert build_H(3, 1).to_strings() == ["000"]
    assert build_H(2, 3).to_strings() == ["00", "01", "10"]
    assert build_H(3, 5).to_strings() == ["000", "001", "010", "011", "100"]
    for bad in [(3, 0), (3, 9), (0, 1), (65, 1)]:
        with pytest.raises(DomainError):
            build_H(*bad)


@pytest.mark.parametrize("n", range(1, 8))
def test_block_definition_gives_same_rows(n):
    for k in range(1, 2**n + 1):
        blocks = build_H_blocks(n, k)
        assert sorted(blocks.rows) == list(build_H(n, k).rows)


def test_block_definition_small_case():
    # top: H_{2,2} + 0 column, bottom: H_{2,1} + 1 column
    assert build_H_blocks(3, 3).to_strings() == ["000", "010", "001"]


def test_h_direct_examples():
    for n in range(1, 7):
        for q in range(n + 1):
            assert h_direct(q, n, 1) == comb(n, q)
        for k in (1, 2**n // 2 + 1, 2**n):
            assert h_direct(n, n, k) == k
    assert h_direct(2, 3, 4) == 8 == mq_strings(3, range(4), 2)


def test_h_recurrence_examples():
    table = HTable()
    assert h_recurrence(2, 3, 4, table) == h_recurrence(2, 3, 2, table) + h_recurrence(1, 2, 2, table) == 8
    for n in range(1, 6):
        for q in range(n + 1):
            assert h_recurrence(q, n, 0, table) == 0
        for k in range(1, 2**n + 1):
            assert h_recurrence(0, n, k, table) == 1
    with pytest.raises(DomainError):
        h_recurrence(4, 3, 1)
    with pytest.raises(DomainError):
        h_recurrence(1, 3, 9)
    assert all(v == h_recurrence(q, n, k) for (q, n, k), v in table.memo.items())


def test_table_invariants():
    table = HTable()
    for n in range(1, 8):
        for q in range(n + 1):
            table.profile(q, n)
    for (q, n, k), v in table.memo.items():
        if k == 0:
            assert v == 0
        elif q == 0:
            assert v == 1
        elif k == 1:
            assert v == comb(n, q)
    rec = table.records()[0]
    assert set(rec) == {"q", "n", "k", "h"}


def test_h_increment_examples():
    assert h_increment(2, 3, 3) == 1 == h_direct(2, 3, 4) - h_direct(2, 3, 3)
    for n in range(1, 6):
        for q in range(n + 1):
            assert h_increment(q, n, 0) == comb(n, q)
    assert h_increment(1, 4, 7) == 0  # |7| = 3 > q
    with pytest.raises(DomainError):
        h_increment(1, 3, 8)


def test_binom_convention():
    assert binom(3, -1) == 0 and binom(3, 4) == 0 and binom(-1, 0) == 0
    assert binom(5, 2) == 10


def test_summed_forms_examples():
    assert h_sum_forward(2, 3, 2, 2) == 3 == h_direct(2, 3, 4) - h_direct(2, 3, 2)
    for x in range(8):
        assert h_sum_forward(2, 3, x, 1) == h_increment(2, 3, x)
    assert h_sum_backward(2, 3, 2, 1) == 1 == h_direct(1, 2, 2) - h_direct(1, 2, 1)
    with pytest.raises(DomainError):
        h_sum_forward(2, 3, 7, 2)
    with pytest.raises(DomainError):
        h_sum_backward(2, 3, 5, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_three_routes_agree(n):
    table = HTable()
    for q in range(n + 1):
        profile = h_direct_profile(q, n)
        for k in range(1, 2**n + 1):
            rec = h_recurrence(q, n, k, table)
            assert profile[k - 1] == rec
            assert h_incremental(q, n, k) == rec
            if k < 2**n:
                assert h_recurrence(q, n, k + 1, table) - rec == h_increment(q, n, k)


def test_per_k_direct_matches_profile():
    for n in range(1, 7):
        for q in range(n + 1):
            profile = h_direct_profile(q, n)
            assert [h_direct(q, n, k) for k in range(1, 2**n + 1)] == profile


@given(st.integers(1, 30), st.data())
def test_full_cube_and_monotone(n, data):
    q = data.draw(st.integers(0, n))
    assert h_recurrence(q, n, 2**n) == comb(n, q) * 2**q
    k = data.draw(st.integers(0, 2**n - 1))
    assert h_recurrence(q, n, k + 1) >= h_recurrence(q, n, k)


@given(st.integers(1, 10), st.data())
def test_corollary_identities(n, data):
    q = data.draw(st.integers(0, n))
    x = data.draw(st.integers(0, 2**n - 1))
    j = data.draw(st.integers(1, 2**n - x))
    assert h_recurrence(q, n, x + j) == h_recurrence(q, n, x) + h_sum_forward(q, n, x, j)
    if q >= 1:
        x = data.draw(st.integers(1, 2 ** (n - 1)))
        j = data.draw(st.integers(1, x))
        assert h_recurrence(q - 1, n - 1, x - j) == h_recurrence(q - 1, n - 1, x) - h_sum_backward(q, n, x, j)


def test_big_values_are_exact():
    # 64 columns: values exceed 64-bit integers
    assert h_recurrence(32, 64, 2**64) == comb(64, 32) * 2**32
    assert h_recurrence(32, 64, 2**40) > 2**63
