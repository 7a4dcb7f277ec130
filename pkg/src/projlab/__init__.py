"""Exact projection-distinctness numbers for binary matrices.

Computes m_q(M), the sum over all q-column projections of the number of
distinct rows, together with the binary-counting matrices H_{n,k} that
minimize it, brute-force verifiers, Hamming-weight bijections, and the
Greedy machine-teaching algorithm.
"""

from projlab.bitmatrix import (
    BinaryMatrix,
    ColumnSubset,
    MatrixFormatError,
    dif,
    hamming_weight,
    induced_cube_edges,
    m_q,
    project,
)
from projlab.hnumbers import HTable, build_H, h_direct, h_increment, h_recurrence

__all__ = [
    "BinaryMatrix",
    "ColumnSubset",
    "HTable",
    "MatrixFormatError",
    "build_H",
    "dif",
    "h_direct",
    "h_increment",
    "h_recurrence",
    "hamming_weight",
    "induced_cube_edges",
    "m_q",
    "project",
]

__version__ = "0.1.0"
