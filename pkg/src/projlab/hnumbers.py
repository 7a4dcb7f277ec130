"""The binary-counting matrices H_{n,k} and their numbers h_q(n,k).

h_q(n,k) = m_q(H_{n,k}) is available by three independent routes:

* :func:`h_direct` counts distinct projected rows of the constructed matrix;
* :func:`h_recurrence` uses the halving recurrence
  h_q(n,k) = h_q(n, ceil(k/2)) + h_{q-1}(n-1, floor(k/2)) with
  h_q(n,1) = C(n,q);
* :func:`h_incremental` sums the one-row increments C(n-|i|, q-|i|).

Boundary conventions: h_0(n,k) = 1 for k > 0 and h_q(n,0) = 0.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from math import comb

import numpy as np

from projlab.bitmatrix import MAX_COLUMNS, BinaryMatrix, m_q, m_q_prefixes
from projlab.errors import DomainError


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    """C(a, b), taken to be 0 when b < 0 or b > a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def _check_qn(q: int, n: int) -> None:
    if n < 0 or not 0 <= q <= n:
        raise DomainError(f"need 0 <= q <= n, got q={q}, n={n}")


def build_H(n: int, k: int) -> BinaryMatrix:
    """Rows 0, 1, ..., k-1 written as n-bit numerals, in increasing order."""
    if not 1 <= n <= MAX_COLUMNS:
        raise DomainError(f"n must be in [1, {MAX_COLUMNS}], got {n}")
    if not 1 <= k <= 1 << n:
        raise DomainError(f"k must be in [1, 2^{n}], got {k}")
    return BinaryMatrix(n, tuple(range(k)))


def build_H_blocks(n: int, k: int) -> BinaryMatrix:
    """H_{n,k} by the block recursion, in block row order.

    The top block is H_{n-1, ceil(k/2)} with a 0 column appended on the
    right and the bottom block H_{n-1, floor(k/2)} with a 1 column appended.
    """
    if not 0 <= n <= MAX_COLUMNS or not 1 <= k <= 1 << n:
        raise DomainError(f"H_{{n,k}} undefined for n={n}, k={k}")

    def rows(n: int, k: int) -> list[int]:
        if k == 1:
            return [0]
        top = rows(n - 1, (k + 1) // 2)
        bottom = rows(n - 1, k // 2)
        return [r << 1 for r in top] + [(r << 1) | 1 for r in bottom]

    return BinaryMatrix(n, tuple(rows(n, k)))


def h_direct(q: int, n: int, k: int) -> int:
    """m_q(H_{n,k}) counted on the matrix itself."""
    return m_q(build_H(n, k), q)


def h_direct_profile(q: int, n: int, k_max: int | None = None) -> list[int]:
    """[h_q(n,1), ..., h_q(n,k_max)] counted on the rows of H_{n,k_max}.

    Since H_{n,k} is the first k rows of H_{n,k_max}, one prefix scan of
    every projection yields all of them.
    """
    if k_max is None:
        k_max = 1 << n
    return m_q_prefixes(build_H(n, k_max), q)


class HTable:
    """Memo of h_q(n,k) values filled by the halving recurrence.

    Lookups and inserts go through a lock, so one table may be shared
    between threads; racing computations of the same key agree anyway.
    """

    def __init__(self):
        self.memo: dict[tuple[int, int, int], int] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.memo)

    def __contains__(self, key) -> bool:
        return key in self.memo

    def get(self, q: int, n: int, k: int) -> int:
        key = (q, n, k)
        with self._lock:
            if key in self.memo:
                return self.memo[key]
        value = self._compute(q, n, k)
        with self._lock:
            self.memo.setdefault(key, value)
        return value

    def _compute(self, q: int, n: int, k: int) -> int:
        if k == 0:
            return 0
        if q == 0:
            return 1
        if k == 1:
            return binom(n, q)
        return self.get(q, n, (k + 1) // 2) + self.get(q - 1, n - 1, k // 2)

    def profile(self, q: int, n: int) -> list[int]:
        """[h_q(n,0), h_q(n,1), ..., h_q(n,2^n)]."""
        return [h_recurrence(q, n, k, self) for k in range((1 << n) + 1)]

    def records(self) -> list[dict]:
        return [
            {"q": q, "n": n, "k": k, "h": h}
            for (q, n, k), h in sorted(self.memo.items())
        ]


_default_table = HTable()


def h_recurrence(q: int, n: int, k: int, table: HTable | None = None) -> int:
    _check_qn(q, n)
    if not 0 <= k <= 1 << n:
        raise DomainError(f"k must be in [0, 2^{n}], got {k}")
    return (table if table is not None else _default_table).get(q, n, k)


def h_increment(q: int, n: int, x: int) -> int:
    """h_q(n, x+1) - h_q(n, x), which is C(n - |x|, q - |x|)."""
    _check_qn(q, n)
    if not 0 <= x <= (1 << n) - 1:
        raise DomainError(f"x must be in [0, 2^{n} - 1], got {x}")
    w = x.bit_count()
    return binom(n - w, q - w)


def h_incremental(q: int, n: int, k: int) -> int:
    """h_q(n,k) as the sum of the first k one-row increments."""
    _check_qn(q, n)
    if not 0 <= k <= 1 << n:
        raise DomainError(f"k must be in [0, 2^{n}], got {k}")
    return sum(binom(n - w, q - w) for w in map(int.bit_count, range(k)))


def h_sum_forward(q: int, n: int, x: int, j: int) -> int:
    """sum_{i=x}^{x+j-1} C(n-|i|, q-|i|), i.e. h_q(n,x+j) - h_q(n,x)."""
    _check_qn(q, n)
    if x < 0 or j < 1 or x + j > 1 << n:
        raise DomainError(f"need x >= 0, j >= 1, x + j <= 2^{n}; got x={x}, j={j}")
    return sum(binom(n - i.bit_count(), q - i.bit_count()) for i in range(x, x + j))


def h_sum_backward(q: int, n: int, x: int, j: int) -> int:
    """sum_{i=x-j}^{x-1} C(n-1-|i|, q-1-|i|), i.e. h_{q-1}(n-1,x) - h_{q-1}(n-1,x-j)."""
    if not 1 <= q <= n:
        raise DomainError(f"need 1 <= q <= n, got q={q}, n={n}")
    if not 1 <= j <= x <= 1 << (n - 1):
        raise DomainError(f"need 1 <= j <= x <= 2^{n - 1}; got x={x}, j={j}")
    return sum(
        binom(n - 1 - i.bit_count(), q - 1 - i.bit_count()) for i in range(x - j, x)
    )


def increment_prefix_sums(q: int, n: int, length: int) -> np.ndarray:
    """P with P[i] = sum_{i' < i} C(n-|i'|, q-|i'|) for i in [0, length].

    Returned as int64 when the values fit, else as an object array.
    Negative q gives an all-zero array (every binomial vanishes).
    """
    weights = np.array([i.bit_count() for i in range(length)], dtype=np.int64)
    table = [binom(n - w, q - w) for w in range(max(n, 0) + 65)]
    big = max(table) * max(length, 1) >= 1 << 62
    values = np.array([table[w] for w in weights], dtype=object if big else np.int64)
    out = np.zeros(length + 1, dtype=values.dtype)
    if length:
        out[1:] = np.cumsum(values)
    return out
