import json
import random
from itertools import combinations

import pytest

from projlab.bitmatrix import BinaryMatrix
from projlab.errors import BudgetExceeded, DomainError
from projlab.teaching import (
    ConceptClass,
    TeacherMap,
    greedy_teach,
    shortlex_witnesses,
    teaching_dimension_census,
    validate_teacher,
)


def naive_greedy(cc):
    """Enumerate every witness, sort by the shortlex key, run the loop."""
    n = cc.matrix.n
    pos = {x: i for i, x in enumerate(cc.example_order)}
    witnesses = []
    for size in range(n + 1):
        for xs in combinations(range(1, n + 1), size):
            for labels in range(2**size):
                w = tuple(
                    sorted(((x, (labels >> (size - 1 - i)) & 1) for i, x in enumerate(xs)), key=lambda p: pos[p[0]])
                )
                witnesses.append(w)
    witnesses.sort(key=lambda w: (len(w), [(pos[x], b) for x, b in w]))
    taught = {}
    for w in witnesses:
        for c in cc.concept_order:
            if c not in taught and all(cc.label(c, x) == b for x, b in w):
                taught[c] = w
                break
    return taught


def test_single_concept():
    tm = greedy_teach(ConceptClass.natural(BinaryMatrix(3, (5,))))
    assert tm.assignments == {0: ()} and tm.teaching_dimension == 0


def test_four_concepts_example():
    cc = ConceptClass.natural(BinaryMatrix.from_strings(["00", "01", "10", "11"]))
    tm = greedy_teach(cc)
    assert tm.assignments == {0: (), 1: ((1, 0),), 2: ((1, 1),), 3: ((2, 1),)}
    assert tm.teaching_dimension == 1
    assert naive_greedy(cc) == tm.assignments


def test_shortlex_order():
    size2 = list(shortlex_witnesses((1, 2, 3), 2))
    assert size2[:5] == [
        ((1, 0), (2, 0)),
        ((1, 0), (2, 1)),
        ((1, 0), (3, 0)),
        ((1, 0), (3, 1)),
        ((1, 1), (2, 0)),
    ]
    assert len(size2) == 3 * 4
    assert list(shortlex_witnesses((2, 1), 1)) == [((2, 0),), ((2, 1),), ((1, 0),), ((1, 1),)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_naive_on_all_classes(n):
    rng = random.Random(n)
    for k in range(1, 2**n + 1):
        for rows in combinations(range(2**n), k):
            m = BinaryMatrix(n, rows)
            cc = ConceptClass.natural(m)
            assert greedy_teach(cc).assignments == naive_greedy(cc)
            corder = list(range(k))
            xorder = list(range(1, n + 1))
            rng.shuffle(corder)
            rng.shuffle(xorder)
            cc2 = ConceptClass(m, tuple(corder), tuple(xorder))
            tm = greedy_teach(cc2)
            assert tm.assignments == naive_greedy(cc2)
            assert validate_teacher(cc2, tm)


def test_random_larger_classes_match_naive():
    rng = random.Random(5)
    for _ in range(20):
        n = 5
        rows = tuple(rng.sample(range(32), rng.randint(1, 32)))
        cc = ConceptClass.natural(BinaryMatrix(n, rows))
        tm = greedy_teach(cc)
        assert tm.assignments == naive_greedy(cc)
        assert tm.teaching_dimension <= n
        # sizes are handed out in nondecreasing order of the assignment sequence
        sizes = [len(w) for w in tm.assignments.values()]
        assert sizes == sorted(sizes)


def test_unique_positive_concept_gets_small_witness():
    for rows in combinations(range(4), 3):
        m = BinaryMatrix(2, rows)
        cc = ConceptClass.natural(m)
        tm = greedy_teach(cc)
        for x in (1, 2):
            ones = [c for c in range(m.k) if cc.label(c, x) == 1]
            if len(ones) == 1:
                assert len(tm.assignments[ones[0]]) <= 1


def test_validate_rejects():
    cc = ConceptClass.natural(BinaryMatrix.from_strings(["00", "01", "10"]))
    tm = greedy_teach(cc)
    bad = TeacherMap(dict(tm.assignments), tm.teaching_dimension, 3, 2)
    bad.assignments[1] = ((2, 0),)
    assert not validate_teacher(cc, bad)
    missing = TeacherMap({0: (), 1: ((1, 0), (2, 1))}, 2, 3, 2)
    diag = validate_teacher(cc, missing)
    assert not diag and any("without" in p for p in diag.problems)
    shared = TeacherMap({0: ((1, 0),), 1: ((1, 0),), 2: ((1, 1),)}, 1, 3, 2)
    assert not validate_teacher(cc, shared)
    wrong_dim = TeacherMap(dict(tm.assignments), 5, 3, 2)
    assert not validate_teacher(cc, wrong_dim)


def test_concept_class_checks():
    with pytest.raises(DomainError):
        ConceptClass.natural(BinaryMatrix(2, (1, 1)))
    with pytest.raises(DomainError):
        ConceptClass(BinaryMatrix(2, (1, 2)), (0, 0), (1, 2))


def test_budget():
    cc = ConceptClass.natural(BinaryMatrix(3, tuple(range(8))))
    with pytest.raises(BudgetExceeded):
        greedy_teach(cc, budget=3)


def test_json_roundtrip_and_determinism():
    cc = ConceptClass.natural(BinaryMatrix(4, (0, 3, 5, 6, 9, 15)))
    a = json.dumps(greedy_teach(cc).to_json())
    b = json.dumps(greedy_teach(cc).to_json())
    assert a == b
    assert TeacherMap.from_json(json.loads(a)) == greedy_teach(cc)


def test_census_examples():
    r = teaching_dimension_census(1, 2)
    assert r.ok and r.tuples_checked == 1 and r.details["max_dimension"] <= 1
    r = teaching_dimension_census(3, 1)
    assert r.details["distribution"] == {"0": 8}
    r = teaching_dimension_census(3, 4)
    assert r.ok and r.tuples_checked == 70 and r.details["max_dimension"] <= 3
    with pytest.raises(BudgetExceeded):
        teaching_dimension_census(5, 10, budget=100)
