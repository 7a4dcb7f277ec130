"""Binary matrices with bit-packed rows, projections and the m_q measure.

A row over ``n`` columns is stored as an ``n``-bit integer. Column 1 is the
most significant bit and column ``n`` the least significant one, so the rows
of H_{n,k} read as ordinary binary numerals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from projlab.errors import DomainError

MAX_COLUMNS = 64

# below this row count a Python set beats np.unique
_SET_THRESHOLD = 48


class MatrixFormatError(ValueError):
    """Raised for malformed matrix text; ``line`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class BinaryMatrix:
    """A k x n binary matrix with rows packed into integers.

    Rows may repeat; use :attr:`is_distinct` to test membership in M_{n,k}.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_COLUMNS:
            raise DomainError(f"column count must be in [0, {MAX_COLUMNS}], got {self.n!r}")
        rows = tuple(int(r) for r in self.rows)
        limit = 1 << self.n
        for r in rows:
            if not 0 <= r < limit:
                raise DomainError(f"row value {r} does not fit in {self.n} bits")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def is_distinct(self) -> bool:
        return len(set(self.rows)) == len(self.rows)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BinaryMatrix":
        if not lines:
            raise DomainError("a matrix needs at least one row")
        n = len(lines[0])
        rows = []
        for line in lines:
            if len(line) != n or set(line) - {"0", "1"}:
                raise DomainError(f"bad row {line!r}")
            rows.append(int(line, 2) if n else 0)
        return cls(n, tuple(rows))

    def to_strings(self) -> list[str]:
        if self.n == 0:
            return ["" for _ in self.rows]
        return [format(r, f"0{self.n}b") for r in self.rows]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "rows": self.to_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "BinaryMatrix":
        rows = data["rows"]
        n = int(data["n"])
        return cls(n, tuple(int(r, 2) if n else 0 for r in rows))

    def as_array(self) -> np.ndarray:
        return np.fromiter(self.rows, dtype=np.uint64, count=len(self.rows))

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


@dataclass(frozen=True)
class ColumnSubset:
    """Strictly increasing 1-based column indices selecting a projection."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i < 1 for i in idx):
            raise DomainError(f"column indices are 1-based, got {idx}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise DomainError(f"column indices must be strictly increasing, got {idx}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, indices: Iterable[int]) -> "ColumnSubset":
        return cls(tuple(sorted(set(indices))))

    @property
    def q(self) -> int:
        return len(self.indices)

    def mask(self, n: int) -> int:
        """Bit mask of the selected columns in an ``n``-column row."""
        if self.indices and self.indices[-1] > n:
            raise DomainError(f"column {self.indices[-1]} out of range for n={n}")
        return column_mask(n, self.indices)


def column_mask(n: int, indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        mask |= 1 << (n - j)
    return mask


def column_subsets(n: int, q: int) -> Iterator[tuple[int, ...]]:
    """All q-subsets of [1, n] in lexicographic order."""
    return combinations(range(1, n + 1), q)


def subset_masks(n: int, q: int) -> Iterator[int]:
    """Column masks of all q-subsets of [1, n], in lexicographic subset order."""
    bits = [1 << (n - j) for j in range(1, n + 1)]
    for combo in combinations(bits, q):
        yield sum(combo)


def hamming_weight(x: int) -> int:
    if x < 0:
        raise DomainError("Hamming weight is defined for nonnegative integers")
    return int(x).bit_count()


def dif(m: BinaryMatrix) -> int:
    """Number of distinct rows; a matrix with no columns but some rows gives 1."""
    return len(set(m.rows))


def project(m: BinaryMatrix, q_set: ColumnSubset | Iterable[int]) -> BinaryMatrix:
    """The submatrix M(Q) keeping the selected columns in increasing order."""
    if not isinstance(q_set, ColumnSubset):
        q_set = ColumnSubset.of(q_set)
    q_set.mask(m.n)  # range check
    shifts = [m.n - j for j in q_set.indices]
    rows = []
    for r in m.rows:
        v = 0
        for s in shifts:
            v = (v << 1) | ((r >> s) & 1)
        rows.append(v)
    return BinaryMatrix(q_set.q, tuple(rows))


def _distinct_masked(rows: Sequence[int], arr: np.ndarray | None, mask: int) -> int:
    if arr is None:
        return len({r & mask for r in rows})
    return int(np.unique(arr & np.uint64(mask)).size)


def m_q(m: BinaryMatrix, q: int) -> int:
    """Sum of dif(M(Q)) over all q-subsets Q of the columns, exactly.

    Distinctness of a projection only depends on the masked row values, so
    each subset costs one pass of masking plus a set/sort count.
    """
    if not 0 <= q <= m.n:
        raise DomainError(f"q must be in [0, {m.n}], got {q}")
    if m.k == 0:
        return 0
    arr = m.as_array() if m.k > _SET_THRESHOLD else None
    total = 0
    for mask in subset_masks(m.n, q):
        total += _distinct_masked(m.rows, arr, mask)
    return total


def m_q_prefixes(m: BinaryMatrix, q: int) -> list[int]:
    """m_q of every leading block of rows: entry j is m_q of rows[:j+1].

    Each projection is scanned once, marking the first occurrence of every
    projected value; the running count of first occurrences is dif of the
    prefix.
    """
    if not 0 <= q <= m.n:
        raise DomainError(f"q must be in [0, {m.n}], got {q}")
    k = m.k
    if k == 0:
        return []
    if math.comb(m.n, q) * k >= 1 << 62:
        dtype = object
    else:
        dtype = np.int64
    arr = m.as_array()
    total = np.zeros(k, dtype=dtype)
    for mask in subset_masks(m.n, q):
        _, first = np.unique(arr & np.uint64(mask), return_index=True)
        fresh = np.zeros(k, dtype=np.int64)
        fresh[first] = 1
        total += np.cumsum(fresh).astype(dtype)
    return [int(v) for v in total]


def distinct_counts_batch(row_sets: np.ndarray, mask: int) -> np.ndarray:
    """dif of the masked projection for each row of a (C, k) array of row sets."""
    vals = np.sort(row_sets & np.asarray(mask, dtype=row_sets.dtype), axis=1)
    return 1 + np.count_nonzero(np.diff(vals, axis=1), axis=1)


def induced_cube_edges(m: BinaryMatrix) -> int:
    """Edges of the n-cube subgraph induced by the (distinct) rows."""
    present = set(m.rows)
    if len(present) != m.k:
        raise DomainError("induced_cube_edges needs pairwise distinct rows")
    bits = [1 << b for b in range(m.n)]
    edges = 0
    for r in m.rows:
        for b in bits:
            if r & b and (r ^ b) in present:
                edges += 1
    return edges


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse the one-row-per-line '0'/'1' text format.

    Blank lines and lines starting with '#' are skipped.
    """
    width = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        bad = set(line) - {"0", "1"}
        if bad:
            raise MatrixFormatError(f"unexpected characters {sorted(bad)}", lineno)
        if width is None:
            width = len(line)
            if width > MAX_COLUMNS:
                raise MatrixFormatError(f"{width} columns exceeds the {MAX_COLUMNS}-column limit", lineno)
        elif len(line) != width:
            raise MatrixFormatError(f"row has {len(line)} columns, expected {width}", lineno)
        rows.append(int(line, 2))
    if width is None:
        raise MatrixFormatError("no rows found")
    return BinaryMatrix(width, tuple(rows))


def read_matrix(path: str | Path) -> BinaryMatrix:
    return parse_matrix(Path(path).read_text())


def format_matrix(m: BinaryMatrix) -> str:
    return "\n".join(m.to_strings()) + "\n"
