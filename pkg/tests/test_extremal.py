from math import comb

import pytest

from projlab.bitmatrix import BinaryMatrix, m_q
from projlab.errors import BudgetExceeded, DomainError
from projlab.extremal import (
    lemma_4_7_sums,
    minimize_all_q,
    minimize_mq,
    sweep_lemma_4_7,
    sweep_theorem_3_1,
    verify_corollary_4_2,
    verify_isoperimetry,
    verify_lemma_3_3,
    verify_lemma_4_1,
    verify_lemma_4_7,
    verify_theorem_2_1,
    verify_theorem_3_1,
)
from projlab.hnumbers import build_H, h_recurrence

from oracles import min_mq_bruteforce


def test_minimize_examples():
    for n in range(1, 5):
        for q in range(1, n + 1):
            assert minimize_mq(n, 1, q).min_value == comb(n, q)
            full = minimize_mq(n, 2**n, q)
            assert full.min_value == comb(n, q) * 2**q
            assert full.candidates_examined == 1
    assert minimize_mq(2, 3, 1).min_value == 4


@pytest.mark.parametrize("n", [1, 2, 3])
def test_minimize_matches_pure_python_oracle(n):
    for k in range(1, 2**n + 1):
        found = minimize_all_q(n, k)
        for q in range(1, n + 1):
            value, rows = min_mq_bruteforce(n, k, q)
            assert found[q].min_value == value
            assert found[q].witness.rows == rows
            assert found[q].candidates_examined == comb(2**n, k)


def test_result_invariants():
    res = minimize_mq(4, 6, 2)
    assert res.witness.is_distinct and res.witness.k == 6
    assert m_q(res.witness, 2) == res.min_value <= m_q(build_H(4, 6), 2)
    assert res.to_json()["witness"] == res.witness.to_strings()


def test_prune_gives_same_witness():
    for n, k in [(3, 3), (3, 5), (4, 5), (4, 7)]:
        plain = minimize_all_q(n, k)
        pruned = minimize_all_q(n, k, prune=True)
        for q in plain:
            assert plain[q].min_value == pruned[q].min_value
            assert plain[q].witness == pruned[q].witness
            assert pruned[q].candidates_examined == comb(2**n - 1, k - 1)


def test_workers_do_not_change_result():
    base = minimize_mq(4, 5, 2)
    for w in (2, 3):
        assert minimize_mq(4, 5, 2, workers=w) == base


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as exc:
        minimize_mq(5, 10, 2, budget=1000)
    assert exc.value.required == comb(32, 10)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("PROJLAB_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        minimize_mq(3, 3, 1)


def test_domain_errors():
    for args in [(0, 1, 1), (3, 0, 1), (3, 9, 1), (3, 2, 0), (3, 2, 4)]:
        with pytest.raises(DomainError):
            minimize_mq(*args)


def test_theorem_2_1_small():
    report = verify_theorem_2_1(3)
    assert report.ok
    assert report.tuples_checked == 2 * 1 + 4 * 2 + 8 * 3
    checks = {(t["n"], t["k"], t["q"]): t for t, _ in report.checks}
    assert checks[(2, 3, 1)]["min"] == checks[(2, 3, 1)]["h"] == 4
    assert checks[(3, 4, 2)]["min"] == 8


def test_theorem_3_1_single():
    r = verify_theorem_3_1(2, 3, 4)
    assert r.ok
    profile = {p["x"]: p["f"] for p in r.details["profile"]}
    assert profile[2] == h_recurrence(2, 3, 2) + h_recurrence(1, 2, 2)
    assert profile[2] == min(profile.values())
    assert verify_theorem_3_1(1, 3, 2).details["profile"] == [{"x": 1, "f": 3 + 1}]
    assert verify_theorem_3_1(1, 3, 1).notes  # outside domain, skipped


def test_theorem_3_1_sweep_small():
    r = sweep_theorem_3_1(8, 256)
    assert r.ok and r.tuples_checked > 0


def test_lemma_3_3():
    r = verify_lemma_3_3(3)
    assert r.ok
    checks = {(t["n"], t["k"], t["q"]): t for t, _ in r.checks}
    assert checks[(2, 3, 1)]["lhs"] == 4
    assert checks[(2, 2, 1)]["rhs"] == minimize_mq(2, 1, 1).min_value + 1


def test_lemma_4_7():
    assert lemma_4_7_sums(2, 3, 2, 1) == (2, 1, 2)  # shifted: i = 0 gives C(2, 1)
    assert verify_lemma_4_7(2, 3, 2, 1).ok
    # all terms vanish: |i| > q across the range
    assert lemma_4_7_sums(1, 3, 7, 1) == (0, 0, 0)
    with pytest.raises(DomainError):
        lemma_4_7_sums(1, 3, 2, 3)
    assert sweep_lemma_4_7(6).ok


def test_lemma_4_7_sweep_counts():
    # brute-force tuple count for n <= 3
    expected = 0
    for n in range(1, 4):
        for q in range(1, n + 1):
            for x in range(1, 2**n + 1):
                for j in range(1, x + 1):
                    if x + j - 1 <= 2**n:
                        expected += 1
    assert sweep_lemma_4_7(3).tuples_checked == expected


def test_lemma_4_7_sweep_matches_pointwise():
    r = sweep_lemma_4_7(4)
    assert r.ok
    for n in range(1, 5):
        for q in range(1, n + 1):
            for x in range(1, 2**n + 1):
                for j in range(1, min(x, 2**n + 1 - x) + 1):
                    assert verify_lemma_4_7(q, n, x, j).ok


def test_lemma_4_1_and_corollary():
    assert verify_lemma_4_1(7).ok
    assert verify_corollary_4_2(7).ok


def test_isoperimetry_examples():
    full = BinaryMatrix(3, tuple(range(8)))
    assert m_q(full, 2) == 8 * 3 - 3 * 4
    r = verify_isoperimetry(5, 50, seed=7)
    assert r.ok and r.seed == 7 and r.tuples_checked == 50
    assert verify_isoperimetry(5, 50, seed=7).checks == r.checks
    with pytest.raises(DomainError):
        verify_isoperimetry(21, 1)
