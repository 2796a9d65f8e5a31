"""Gershgorin-type inclusion intervals for M-eigenvalues.

Each diagonal entry a_{ijij} carries a radius r_ij built from the absolute
off-diagonal entries of the four slice families through position (i, j);
every M-eigenvalue lies in the union of the resulting row intervals and in
the union of the column intervals.  Diagonal dominance (a_{ijij} >= r_ij
everywhere) certifies positive semi-definiteness, strict dominance positive
definiteness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import diagonal_matrix, off_diagonal


@dataclass(frozen=True)
class GershgorinReport:
    radii: np.ndarray                 # m x n matrix of r_ij
    row_intervals: list               # m pairs (lo_i, hi_i)
    col_intervals: list               # n pairs (lo_j, hi_j)
    global_interval: tuple            # (lo, hi)
    diagonally_dominated: bool
    strictly_dominated: bool


def gershgorin_radii(A):
    """The m x n matrix of radii

    r_ij = 1/4 sum_{i1} (sum_{j2} |abar_{i1 j i j2}| + sum_{j1} |abar_{i1 j1 i j}|)
         + 1/4 sum_{i2} (sum_{j2} |abar_{i j i2 j2}| + sum_{j1} |abar_{i j1 i2 j}|),

    where abar zeroes the diagonal positions (i, j, i, j).  For weakly
    symmetric input this equals the half-sum over the last two families, and
    for symmetric input the single-family sum sum_{i2,j2} |abar_{i j i2 j2}|.
    """
    ab = np.abs(off_diagonal(A))
    t1 = np.einsum("ajib->ij", ab)   # |abar_{i1 j i j2}| summed over i1, j2
    t2 = np.einsum("abij->ij", ab)   # |abar_{i1 j1 i j}| summed over i1, j1
    t3 = np.einsum("ijab->ij", ab)   # |abar_{i j i2 j2}| summed over i2, j2
    t4 = np.einsum("iabj->ij", ab)   # |abar_{i j1 i2 j}| summed over j1, i2
    return 0.25 * (t1 + t2 + t3 + t4)


def is_diagonally_dominated(A, radii=None):
    """Returns (dominated, strict): a_{ijij} >= r_ij for all (i, j)."""
    r = gershgorin_radii(A) if radii is None else radii
    d = diagonal_matrix(A)
    return bool(np.all(d >= r)), bool(np.all(d > r))


def gershgorin_intervals(A):
    """Full inclusion report: per-row and per-column intervals plus their
    common global enclosure [min(a_{ijij} - r_ij), max(a_{ijij} + r_ij)]."""
    r = gershgorin_radii(A)
    d = diagonal_matrix(A)
    lo = d - r
    hi = d + r
    rows = [(float(lo[i].min()), float(hi[i].max())) for i in range(A.m)]
    cols = [(float(lo[:, j].min()), float(hi[:, j].max())) for j in range(A.n)]
    dominated, strict = is_diagonally_dominated(A, radii=r)
    return GershgorinReport(
        radii=r,
        row_intervals=rows,
        col_intervals=cols,
        global_interval=(float(lo.min()), float(hi.max())),
        diagonally_dominated=dominated,
        strictly_dominated=strict,
    )
