"""Exhaustive minimization of m_q over distinct-row matrices, and the
suites that check the h-number identities against it.

The search space is the set of k-element row sets drawn from the 2^n
possible rows. m_q is invariant under row permutations, so this covers
every matrix in M_{n,k}. Row sets are visited in lexicographic order of
their sorted values, which fixes the witness tie-break: the first
minimizer met is the lexicographically smallest one.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import chain, combinations, islice
from math import comb

import numpy as np

from projlab.bitmatrix import (
    BinaryMatrix,
    distinct_counts_batch,
    induced_cube_edges,
    m_q,
    subset_masks,
)
from projlab.errors import BudgetExceeded, DomainError
from projlab.hnumbers import HTable, binom, h_recurrence, increment_prefix_sums
from projlab.report import Report

DEFAULT_BUDGET = 2 * 10**7
CHUNK = 1 << 15


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("PROJLAB_BUDGET")
    if not raw:
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise DomainError(f"PROJLAB_BUDGET must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class MinimizationResult:
    n: int
    k: int
    q: int
    min_value: int
    witness: BinaryMatrix
    candidates_examined: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "min_value": self.min_value,
            "witness": self.witness.to_strings(),
            "candidates_examined": self.candidates_examined,
        }


def _search_space(n: int, k: int, prune: bool) -> tuple[range, int, int]:
    """(row pool, subset size, candidate count). With pruning the row set
    is translated so that it contains 0."""
    size = 1 << n
    if prune:
        return range(1, size), k - 1, comb(size - 1, k - 1)
    return range(size), k, comb(size, k)


def _scan(args) -> dict[int, tuple[int, int]]:
    """Best (value, rank) per q over candidate ranks [start, stop)."""
    n, k, qs, prune, start, stop = args
    pool, kk, _ = _search_space(n, k, prune)
    dtype = np.uint32 if n <= 32 else np.uint64
    masks_by_q = {q: list(subset_masks(n, q)) for q in qs}
    all_masks = sorted({m for ms in masks_by_q.values() for m in ms})
    best: dict[int, tuple[int, int]] = {}
    it = combinations(pool, kk)
    it = islice(it, start, stop)
    offset = start
    while offset < stop:
        count = min(CHUNK, stop - offset)
        flat = np.fromiter(chain.from_iterable(islice(it, count)), dtype=dtype, count=count * kk)
        sets = flat.reshape(count, kk)
        if prune:
            sets = np.hstack([np.zeros((count, 1), dtype=dtype), sets])
        difs = {mask: distinct_counts_batch(sets, mask) for mask in all_masks}
        for q in qs:
            values = np.zeros(count, dtype=np.int64)
            for mask in masks_by_q[q]:
                values += difs[mask]
            i = int(np.argmin(values))
            cand = (int(values[i]), offset + i)
            if q not in best or cand < best[q]:
                best[q] = cand
        offset += count
    return best


def _partition(total: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, total))
    step, extra = divmod(total, workers)
    bounds, lo = [], 0
    for w in range(workers):
        hi = lo + step + (1 if w < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _unrank(n: int, k: int, prune: bool, rank: int) -> tuple[int, ...]:
    pool, kk, _ = _search_space(n, k, prune)
    combo = next(islice(combinations(pool, kk), rank, None))
    return (0,) + combo if prune else combo


def minimize_all_q(
    n: int,
    k: int,
    qs=None,
    *,
    budget: int | None = None,
    workers: int = 1,
    prune: bool = False,
) -> dict[int, MinimizationResult]:
    """Exhaustive minimum of m_q over M_{n,k} for several q in one enumeration.

    ``prune`` fixes row 0 in every candidate: XOR-ing all rows with a
    constant complements columns and leaves every dif unchanged, so some
    minimizer always contains 0, and the lexicographically smallest one
    does. The reported witness is identical with or without pruning.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 1 <= k <= 1 << n:
        raise DomainError(f"k must be in [1, 2^{n}], got {k}")
    qs = list(range(1, n + 1)) if qs is None else sorted(set(qs))
    for q in qs:
        if not 1 <= q <= n:
            raise DomainError(f"q must be in [1, {n}], got {q}")
    budget = budget_from_env() if budget is None else budget
    _, _, total = _search_space(n, k, prune)
    if total > budget:
        raise BudgetExceeded(total, budget, "candidate row sets")

    jobs = [(n, k, qs, prune, lo, hi) for lo, hi in _partition(total, workers)]
    if len(jobs) == 1:
        parts = [_scan(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as ex:
            parts = list(ex.map(_scan, jobs))

    results = {}
    for q in qs:
        value, rank = min(p[q] for p in parts)
        witness = BinaryMatrix(n, _unrank(n, k, prune, rank))
        results[q] = MinimizationResult(n, k, q, value, witness, total)
    return results


def minimize_mq(
    n: int,
    k: int,
    q: int,
    *,
    budget: int | None = None,
    workers: int = 1,
    prune: bool = False,
) -> MinimizationResult:
    """Exact m_q(n,k) with the lexicographically smallest minimizing row set."""
    return minimize_all_q(n, k, [q], budget=budget, workers=workers, prune=prune)[q]


def verify_theorem_2_1(
    n_max: int = 4,
    *,
    k_cap_from: int = 5,
    k_cap: int = 6,
    budget: int | None = None,
    workers: int = 1,
    prune: bool = False,
    table: HTable | None = None,
) -> Report:
    """Brute-force m_q(n,k) against h_q(n,k) for all n <= n_max.

    For n >= ``k_cap_from`` only k <= ``k_cap`` is enumerated.
    """
    report = Report(
        "theorem21",
        {"n_max": n_max, "k_cap_from": k_cap_from, "k_cap": k_cap, "prune": prune},
    )
    with report.timed():
        for n in range(1, n_max + 1):
            k_top = 1 << n
            if n >= k_cap_from:
                k_top = min(k_top, k_cap)
                report.notes.append(f"n={n}: k restricted to <= {k_top}")
            for k in range(1, k_top + 1):
                found = minimize_all_q(n, k, budget=budget, workers=workers, prune=prune)
                for q, res in found.items():
                    h = h_recurrence(q, n, k, table)
                    witness_ok = res.witness.is_distinct and m_q(res.witness, q) == res.min_value
                    item = {"n": n, "k": k, "q": q, "min": res.min_value, "h": h}
                    report.record(item, res.min_value == h and witness_ok)
    return report


def _theorem_3_1_domain(q: int, n: int, k: int) -> tuple[list[int], list[int]]:
    lo, hi = (k + 1) // 2, k - 1
    inside, skipped = [], []
    for x in range(lo, hi + 1):
        if x <= 1 << n and k - x <= 1 << (n - 1):
            inside.append(x)
        else:
            skipped.append(x)
    return inside, skipped


def verify_theorem_3_1(q: int, n: int, k: int, table: HTable | None = None) -> Report:
    """Profile f(x) = h_q(n,x) + h_{q-1}(n-1,k-x) over ceil(k/2) <= x <= k-1
    and check that its minimum is attained at x = ceil(k/2)."""
    report = Report("theorem31", {"q": q, "n": n, "k": k})
    with report.timed():
        if not (1 <= q <= n and 2 <= k <= 1 << n):
            report.notes.append("parameters outside 1 <= q <= n, 2 <= k <= 2^n; skipped")
            return report
        xs, skipped = _theorem_3_1_domain(q, n, k)
        if skipped:
            report.notes.append(f"x values outside the h domain skipped: {skipped}")
        profile = {x: h_recurrence(q, n, x, table) + h_recurrence(q - 1, n - 1, k - x, table) for x in xs}
        report.details["profile"] = [{"x": x, "f": f} for x, f in profile.items()]
        half = (k + 1) // 2
        low = min(profile.values())
        ties = [x for x, f in profile.items() if f == low and x != half]
        if ties:
            report.notes.append(f"minimum also attained at x = {ties}")
        report.record({"q": q, "n": n, "k": k, "min": low, "at_half": profile[half]}, low == profile[half])
    return report


def _as_array(values: list[int]) -> np.ndarray:
    big = max(values, default=0) >= 1 << 62
    return np.array(values, dtype=object if big else np.int64)


def sweep_theorem_3_1(n_max: int = 12, k_limit: int = 4096, table: HTable | None = None) -> Report:
    """Vectorized check of the split minimization for all q, n <= n_max, k <= k_limit.

    Each tuple also checks that the value at x = ceil(k/2) reproduces
    h_q(n,k), which is the halving recurrence read the other way.
    """
    table = table if table is not None else HTable()
    report = Report("theorem31", {"n_max": n_max, "k_limit": k_limit})
    with report.timed():
        for n in range(1, n_max + 1):
            k_top = min(1 << n, k_limit)
            for q in range(1, n + 1):
                hq = _as_array(table.profile(q, n))
                hq1 = _as_array(table.profile(q - 1, n - 1))
                for k in range(2, k_top + 1):
                    lo = max((k + 1) // 2, k - (1 << (n - 1)))
                    hi = min(k - 1, 1 << n)
                    xs = np.arange(lo, hi + 1)
                    f = hq[xs] + hq1[k - xs]
                    half = f[0] if lo == (k + 1) // 2 else None
                    passed = half is not None and f.min() == half and half == hq[k]
                    report.record({"q": q, "n": n, "k": k}, bool(passed), keep=False)
    return report


def _min_value(n: int, k: int, q: int, budget: int | None, cache: dict) -> int:
    """m_q(n,k) with the q = 0 and n = 0 boundary values."""
    if k == 0:
        return 0
    if q == 0:
        return 1
    if (n, k) not in cache:
        cache[(n, k)] = minimize_all_q(n, k, budget=budget)
    return cache[(n, k)][q].min_value


def verify_lemma_3_3(n_max: int = 3, budget: int | None = None) -> Report:
    """m_q(n,k) >= min_x m_q(n,x) + m_{q-1}(n-1,k-x), all sides by brute force."""
    report = Report("lemma33", {"n_max": n_max})
    cache: dict = {}
    with report.timed():
        for n in range(1, n_max + 1):
            for k in range(2, (1 << n) + 1):
                for q in range(1, n + 1):
                    lhs = _min_value(n, k, q, budget, cache)
                    xs, _ = _theorem_3_1_domain(q, n, k)
                    rhs = min(
                        _min_value(n, x, q, budget, cache) + _min_value(n - 1, k - x, q - 1, budget, cache)
                        for x in xs
                    )
                    report.record({"n": n, "k": k, "q": q, "lhs": lhs, "rhs": rhs}, lhs >= rhs)
    return report


def lemma_4_7_sums(q: int, n: int, x: int, j: int) -> tuple[int, int, int | None]:
    """(left sum, right sum, shifted right sum or None when x - j < 1)."""
    if min(q, n, x, j) < 1 or x + j - 1 > 1 << n or x - j < 0:
        raise DomainError(
            f"need positive q, n, x, j with x + j - 1 <= 2^n and x >= j; got {(q, n, x, j)}"
        )

    def up(i):
        return binom(n - i.bit_count(), q - i.bit_count())

    def down(i):
        return binom(n - 1 - i.bit_count(), q - 1 - i.bit_count())

    left = sum(up(i) for i in range(x, x + j))
    right = sum(down(i) for i in range(x - j, x))
    shifted = sum(down(i) for i in range(x - j - 1, x - 1)) if x - j >= 1 else None
    return left, right, shifted


def verify_lemma_4_7(q: int, n: int, x: int, j: int) -> Report:
    report = Report("lemma47", {"q": q, "n": n, "x": x, "j": j})
    with report.timed():
        left, right, shifted = lemma_4_7_sums(q, n, x, j)
        item = {"q": q, "n": n, "x": x, "j": j, "left": left, "right": right}
        passed = left >= right
        if shifted is not None:
            item["right_shifted"] = shifted
            passed = passed and left >= shifted
        report.record(item, passed)
    return report


def sweep_lemma_4_7(n_max: int = 10) -> Report:
    """Both sum inequalities for every in-range (q, n, x, j), 1 <= q <= n <= n_max."""
    report = Report("lemma47", {"n_max": n_max})
    with report.timed():
        for n in range(1, n_max + 1):
            top = (1 << n) + 1  # x + j - 1 <= 2^n
            for q in range(1, n + 1):
                up = increment_prefix_sums(q, n, top)
                down = increment_prefix_sums(q - 1, n - 1, top)
                for x in range(1, top):
                    j = np.arange(1, min(x, top - x) + 1)
                    left = up[x + j] - up[x]
                    right = down[x] - down[x - j]
                    bad = left < right
                    inner = j[j <= x - 1]
                    if inner.size:
                        shifted = down[x - 1] - down[x - inner - 1]
                        bad[: inner.size] |= left[: inner.size] < shifted
                    report.tuples_checked += int(j.size)
                    for jj in j[bad]:
                        report.violations.append({"q": q, "n": n, "x": x, "j": int(jj)})
    return report


def verify_lemma_4_1(n_max: int = 10, table: HTable | None = None) -> Report:
    """One-row increments against consecutive recurrence values, both forms."""
    table = table if table is not None else HTable()
    report = Report("lemma41", {"n_max": n_max})
    with report.timed():
        for n in range(1, n_max + 1):
            for q in range(0, n + 1):
                h = table.profile(q, n)
                for x in range(1 << n):
                    w = x.bit_count()
                    ok = h[x + 1] - h[x] == binom(n - w, q - w)
                    report.record({"form": 1, "q": q, "n": n, "x": x}, ok, keep=False)
            for q in range(1, n + 1):
                h = table.profile(q - 1, n - 1)
                for x in range(1, (1 << (n - 1)) + 1):
                    w = (x - 1).bit_count()
                    ok = h[x - 1] == h[x] - binom(n - 1 - w, q - 1 - w)
                    report.record({"form": 2, "q": q, "n": n, "x": x}, ok, keep=False)
    return report


def verify_corollary_4_2(n_max: int = 10, table: HTable | None = None) -> Report:
    """The three summed forms against recurrence values for all in-range tuples."""
    table = table if table is not None else HTable()
    report = Report("lemma42", {"n_max": n_max})
    with report.timed():
        for n in range(1, n_max + 1):
            size = 1 << n
            for q in range(0, n + 1):
                h = _as_array(table.profile(q, n))
                p = increment_prefix_sums(q, n, size)
                for x in range(0, size):
                    j = np.arange(1, size - x + 1)
                    bad = h[x + j] != h[x] + (p[x + j] - p[x])
                    report.tuples_checked += int(j.size)
                    for jj in j[bad]:
                        report.violations.append({"form": 1, "q": q, "n": n, "x": x, "j": int(jj)})
            half = 1 << (n - 1)
            for q in range(1, n + 1):
                h = _as_array(table.profile(q - 1, n - 1))
                p = increment_prefix_sums(q - 1, n - 1, half + 1)
                for x in range(1, half + 1):
                    j = np.arange(1, x + 1)
                    bad = h[x - j] != h[x] - (p[x] - p[x - j])
                    report.tuples_checked += int(j.size)
                    for jj in j[bad]:
                        report.violations.append({"form": 2, "q": q, "n": n, "x": x, "j": int(jj)})
                for x in range(2, half + 2):
                    j = np.arange(1, x)
                    bad = h[x - j - 1] != h[x - 1] - (p[x - 1] - p[x - j - 1])
                    report.tuples_checked += int(j.size)
                    for jj in j[bad]:
                        report.violations.append({"form": 3, "q": q, "n": n, "x": x, "j": int(jj)})
    return report


def verify_isoperimetry(n: int, trials: int, seed: int = 0, keep_checks: bool = True) -> Report:
    """m_{n-1}(M) = k*n - (induced cube edges) on random distinct row sets."""
    if not 1 <= n <= 20 or trials < 1:
        raise DomainError(f"need 1 <= n <= 20 and trials >= 1, got n={n}, trials={trials}")
    report = Report("isoperimetry", {"n": n, "trials": trials}, seed=seed)
    rng = random.Random(seed)
    size = 1 << n
    with report.timed():
        for trial in range(trials):
            k = rng.randint(1, size)
            rows = rng.sample(range(size), k)
            m = BinaryMatrix(n, tuple(rows))
            lhs = m_q(m, n - 1)
            edges = induced_cube_edges(m)
            item = {"trial": trial, "k": k, "m": lhs, "edges": edges}
            report.record(item, lhs == k * n - edges, keep=keep_checks)
    return report

