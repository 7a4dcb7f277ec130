"""The Greedy teacher for a concept class given as a consistency matrix.

Rows are concepts, columns are examples, and M(c, x) = 1 when concept c
labels example x positively. Witnesses (sets of labelled examples) are
visited in shortlex order; each goes to the earliest untaught concept
consistent with it, or is dropped.

Shortlex order used here: smaller witnesses first; equal sizes compare
their (example position, label) lists lexicographically, where the
position is the example's rank in the example order and label 0 comes
before label 1.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

from projlab.bitmatrix import BinaryMatrix
from projlab.errors import BudgetExceeded, DomainError
from projlab.report import Diagnosis, Report

Witness = tuple[tuple[int, int], ...]  # ((example, label), ...) in example order


@dataclass(frozen=True)
class ConceptClass:
    matrix: BinaryMatrix
    concept_order: tuple[int, ...]
    example_order: tuple[int, ...]  # 1-based column indices

    def __post_init__(self):
        m = self.matrix
        if not m.is_distinct:
            raise DomainError("concepts (rows) must be pairwise distinct")
        if sorted(self.concept_order) != list(range(m.k)):
            raise DomainError("concept_order must be a permutation of the row indices")
        if sorted(self.example_order) != list(range(1, m.n + 1)):
            raise DomainError("example_order must be a permutation of 1..n")

    @classmethod
    def natural(cls, matrix: BinaryMatrix) -> "ConceptClass":
        return cls(matrix, tuple(range(matrix.k)), tuple(range(1, matrix.n + 1)))

    def label(self, concept: int, example: int) -> int:
        return (self.matrix.rows[concept] >> (self.matrix.n - example)) & 1

    def consistent(self, concept: int, witness: Witness) -> bool:
        return all(self.label(concept, x) == b for x, b in witness)


@dataclass
class TeacherMap:
    assignments: dict[int, Witness]
    teaching_dimension: int
    concepts: int
    examples: int

    def to_json(self) -> dict:
        return {
            "concepts": self.concepts,
            "examples": self.examples,
            "assignments": [
                {"concept": c, "witness": [[x, b] for x, b in w]}
                for c, w in sorted(self.assignments.items())
            ],
            "teaching_dimension": self.teaching_dimension,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TeacherMap":
        assignments = {
            int(a["concept"]): tuple((int(x), int(b)) for x, b in a["witness"])
            for a in data["assignments"]
        }
        return cls(assignments, int(data["teaching_dimension"]), int(data["concepts"]), int(data["examples"]))


def shortlex_witnesses(example_order, size: int):
    """All witnesses of one size, in shortlex order."""
    order = tuple(example_order)

    def walk(start, left, prefix):
        if left == 0:
            yield tuple(prefix)
            return
        for pos in range(start, len(order) - left + 1):
            for b in (0, 1):
                prefix.append((order[pos], b))
                yield from walk(pos + 1, left - 1, prefix)
                prefix.pop()

    yield from walk(0, size, [])


def witness_count(n: int) -> int:
    """Size of the full witness space, sum_q C(n,q) 2^q = 3^n."""
    return 3**n


def greedy_teach(cc: ConceptClass, budget: int | None = None) -> TeacherMap:
    """Run Greedy until every concept holds a witness.

    A witness prefix that matches no untaught concept is skipped as a
    whole subtree: every witness below it would be dropped anyway.
    ``budget`` caps the number of witnesses visited.
    """
    m = cc.matrix
    n = m.n
    if n > 20:
        raise DomainError(f"greedy_teach supports n <= 20, got {n}")
    order = cc.example_order
    shifts = [n - x for x in order]
    rows = m.rows
    taught: dict[int, Witness] = {}
    visited = 0

    def walk(start, left, prefix, candidates):
        nonlocal visited
        if left == 0:
            visited += 1
            if budget is not None and visited > budget:
                raise BudgetExceeded(visited, budget, "witnesses")
            for c in candidates:
                if c not in taught:
                    taught[c] = tuple(prefix)
                    return
            return
        for pos in range(start, n - left + 1):
            shift = shifts[pos]
            for b in (0, 1):
                narrowed = [c for c in candidates if c not in taught and (rows[c] >> shift) & 1 == b]
                if not narrowed:
                    continue
                prefix.append((order[pos], b))
                walk(pos + 1, left - 1, prefix, narrowed)
                prefix.pop()
                if len(taught) == m.k:
                    return

    for size in range(n + 1):
        if len(taught) == m.k:
            break
        walk(0, size, [], list(cc.concept_order))
    if len(taught) != m.k:
        raise DomainError("some concept received no witness; rows must be distinct")
    dim = max((len(w) for w in taught.values()), default=0)
    return TeacherMap(taught, dim, m.k, n)


def validate_teacher(cc: ConceptClass, tm: TeacherMap) -> Diagnosis:
    """Injectivity, consistency, totality and the reported dimension."""
    problems = []
    seen: dict[frozenset, int] = {}
    for c, w in tm.assignments.items():
        if not 0 <= c < cc.matrix.k:
            problems.append(f"unknown concept {c}")
            continue
        xs = [x for x, _ in w]
        if len(set(xs)) != len(xs):
            problems.append(f"concept {c}: witness repeats an example")
        if any(not 1 <= x <= cc.matrix.n for x in xs):
            problems.append(f"concept {c}: example index out of range")
            continue
        if not cc.consistent(c, w):
            problems.append(f"concept {c}: witness {list(w)} is inconsistent")
        key = frozenset(w)
        if key in seen:
            problems.append(f"concepts {seen[key]} and {c} share witness {list(w)}")
        seen[key] = c
    missing = sorted(set(range(cc.matrix.k)) - set(tm.assignments))
    if missing:
        problems.append(f"concepts without a witness: {missing}")
    dim = max((len(w) for w in tm.assignments.values()), default=0)
    if dim != tm.teaching_dimension:
        problems.append(f"teaching_dimension is {tm.teaching_dimension}, witnesses give {dim}")
    return Diagnosis(not problems, problems)


def _teach_rows(args) -> tuple[tuple[int, ...], int, bool]:
    n, rows = args
    cc = ConceptClass.natural(BinaryMatrix(n, rows))
    tm = greedy_teach(cc)
    return rows, tm.teaching_dimension, validate_teacher(cc, tm).ok


def teaching_dimension_census(
    n: int,
    k: int | None = None,
    *,
    budget: int = 10**6,
    workers: int = 1,
) -> Report:
    """Greedy on every class of k distinct rows over n examples (natural orders).

    ``k=None`` runs every nonempty row set. Each class is recorded with its
    teaching dimension; a class fails when its map is invalid or its
    dimension exceeds n.
    """
    size = 1 << n
    ks = range(1, size + 1) if k is None else [k]
    if k is not None and not 1 <= k <= size:
        raise DomainError(f"k must be in [1, 2^{n}], got {k}")
    total = sum(comb(size, kk) for kk in ks)
    if total > budget:
        raise BudgetExceeded(total, budget, "concept classes")
    jobs = [(n, rows) for kk in ks for rows in combinations(range(size), kk)]
    report = Report("census", {"n": n, "k": k})
    dims = Counter()
    with report.timed():
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_teach_rows, jobs, chunksize=64))
        else:
            results = [_teach_rows(job) for job in jobs]
        for rows, dim, valid in results:
            dims[dim] += 1
            item = {"rows": [format(r, f"0{n}b") for r in rows], "teaching_dimension": dim}
            report.record(item, valid and dim <= n, keep=total <= 5000)
    report.details["distribution"] = {str(d): c for d, c in sorted(dims.items())}
    report.details["max_dimension"] = max(dims)
    return report
