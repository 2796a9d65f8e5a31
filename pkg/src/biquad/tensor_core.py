"""Dense biquadratic tensors (shape m x n x m x n) and their basic algebra.

A biquadratic tensor A = (a_{i1 j1 i2 j2}) is contracted with two vectors as
f(x, y) = sum a_{i1 j1 i2 j2} x_{i1} y_{j1} x_{i2} y_{j2}.  This module holds
the storage type, symmetry predicates, the multilinear contractions used by
the eigenvalue machinery, and the standard constructors (identity, shifts,
diagonal tensors, indicator pattern tensors).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DimensionMismatchError(ValueError):
    """A vector or matrix argument does not match the tensor's dimensions."""


def _as_unit_check(name, vec, dim):
    v = np.asarray(vec, dtype=float)
    if v.shape != (dim,):
        raise DimensionMismatchError(
            f"{name} has shape {v.shape}, expected ({dim},)"
        )
    return v


@dataclass(frozen=True)
class BiquadraticTensor:
    """Dense real tensor of shape (m, n, m, n), immutable after construction.

    Entries are indexed (i1, j1, i2, j2) with 0-based indices internally;
    file formats use 1-based indices.
    """

    entries: np.ndarray
    m: int = field(init=False)
    n: int = field(init=False)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[2] or arr.shape[1] != arr.shape[3]:
            raise DimensionMismatchError(
                f"entries must have shape (m, n, m, n), got {arr.shape}"
            )
        m, n = arr.shape[0], arr.shape[1]
        if m < 2 or n < 2:
            raise ValueError(f"dimensions must satisfy m, n >= 2, got m={m}, n={n}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    # -- tolerances -------------------------------------------------------
    def sym_tol(self):
        """Symmetry comparison tolerance, scaled to the entry magnitude."""
        return 1e-12 * (1.0 + float(np.max(np.abs(self.entries), initial=0.0)))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return BiquadraticTensor(self.entries + _coerce(other, self).entries)

    def __sub__(self, other):
        return BiquadraticTensor(self.entries - _coerce(other, self).entries)

    def __mul__(self, scalar):
        return BiquadraticTensor(self.entries * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return BiquadraticTensor(-self.entries)


def _coerce(other, like):
    if not isinstance(other, BiquadraticTensor):
        raise TypeError("expected a BiquadraticTensor")
    if (other.m, other.n) != (like.m, like.n):
        raise DimensionMismatchError(
            f"dimension mismatch: ({other.m},{other.n}) vs ({like.m},{like.n})"
        )
    return other


def evaluate_form(A, x, y):
    """The biquadratic form f(x, y) = <A, x o y o x o y>.  No normalization."""
    x = _as_unit_check("x", x, A.m)
    y = _as_unit_check("y", y, A.n)
    return float(np.einsum("ijkl,i,j,k,l->", A.entries, x, y, x, y, optimize=True))


def is_weakly_symmetric(A, tol=None):
    """True iff a_{i1 j1 i2 j2} = a_{i2 j2 i1 j1} everywhere (up to tol)."""
    tol = A.sym_tol() if tol is None else tol
    return bool(np.max(np.abs(A.entries - A.entries.transpose(2, 3, 0, 1))) <= tol)


def is_symmetric(A, tol=None):
    """True iff both partial exchanges i1<->i2 and j1<->j2 hold everywhere.

    Implies weak symmetry (the composition of the two exchanges).
    """
    tol = A.sym_tol() if tol is None else tol
    e = A.entries
    return bool(
        np.max(np.abs(e - e.transpose(2, 1, 0, 3))) <= tol
        and np.max(np.abs(e - e.transpose(0, 3, 2, 1))) <= tol
    )


def symmetrize(A):
    """Average over the four index exchanges; preserves the form f(x, y)."""
    e = A.entries
    sym = 0.25 * (
        e + e.transpose(2, 1, 0, 3) + e.transpose(0, 3, 2, 1) + e.transpose(2, 3, 0, 1)
    )
    return BiquadraticTensor(sym)


def identity_tensor(m, n):
    """Tensor with ones at (i, j, i, j); f(x, y) = (x.x)(y.y)."""
    e = np.zeros((m, n, m, n))
    ii, jj = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    e[ii, jj, ii, jj] = 1.0
    return BiquadraticTensor(e)


def diagonal_tensor(D):
    """Diagonal tensor with entries a_{ijij} = D[i, j]."""
    D = np.asarray(D, dtype=float)
    m, n = D.shape
    e = np.zeros((m, n, m, n))
    ii, jj = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    e[ii, jj, ii, jj] = D
    return BiquadraticTensor(e)


def shift(A, lam, reverse=False):
    """A - lam*I, or lam*I - A if reverse; shifts every M-eigenvalue by -lam
    (resp. maps mu to lam - mu) with the same eigenvectors."""
    I = identity_tensor(A.m, A.n)
    if reverse:
        return BiquadraticTensor(lam * I.entries - A.entries)
    return BiquadraticTensor(A.entries - lam * I.entries)


def diagonal_matrix(A):
    """The m x n matrix D with D[i, j] = a_{ijij}."""
    ii, jj = np.meshgrid(np.arange(A.m), np.arange(A.n), indexing="ij")
    return np.array(A.entries[ii, jj, ii, jj])


def off_diagonal(A):
    """Entries with the diagonal positions (i, j, i, j) zeroed out."""
    e = A.entries.copy()
    ii, jj = np.meshgrid(np.arange(A.m), np.arange(A.n), indexing="ij")
    e[ii, jj, ii, jj] = 0.0
    return e


def contract_x(A, x, y):
    """Vector of length m; entry i is
    sum_{i1,j1,j2} a_{i1 j1 i j2} x_{i1} y_{j1} y_{j2}
    + sum_{i2,j1,j2} a_{i j1 i2 j2} y_{j1} x_{i2} y_{j2}.

    Satisfies x.contract_x(A, x, y) = 2 f(x, y).
    """
    x = _as_unit_check("x", x, A.m)
    y = _as_unit_check("y", y, A.n)
    e = A.entries
    t1 = np.einsum("ajkb,a,j,b->k", e, x, y, y, optimize=True)
    t2 = np.einsum("kjab,j,a,b->k", e, y, x, y, optimize=True)
    return t1 + t2


def contract_y(A, x, y):
    """Vector of length n; mirror of contract_x with x and y roles swapped."""
    x = _as_unit_check("x", x, A.m)
    y = _as_unit_check("y", y, A.n)
    e = A.entries
    t1 = np.einsum("ajbk,a,j,b->k", e, x, y, x, optimize=True)
    t2 = np.einsum("akbj,a,b,j->k", e, x, x, y, optimize=True)
    return t1 + t2


def scale_modes(A, d, f):
    """Congruence scaling by positive diagonals:
    c_{i1 j1 i2 j2} = d_{i1} f_{j1} d_{i2} f_{j2} a_{i1 j1 i2 j2}."""
    d = _as_unit_check("d", d, A.m)
    f = _as_unit_check("f", f, A.n)
    if np.any(d <= 0):
        raise ValueError("mode-1/3 scale factors must be positive")
    if np.any(f <= 0):
        raise ValueError("mode-2/4 scale factors must be positive")
    e = np.einsum("ijkl,i,j,k,l->ijkl", A.entries, d, f, d, f, optimize=True)
    return BiquadraticTensor(e)


def pattern_tensor(m, n, support):
    """Indicator tensor over a set of index pairs (0-based):
    entry (i1, j1, i2, j2) is 1 iff both (i1, j1) and (i2, j2) are in support.

    f(x, y) = (sum_{(i,j) in support} x_i y_j)^2 >= 0 for all x, y.
    """
    mask = np.zeros((m, n))
    for (i, j) in support:
        if not (0 <= i < m and 0 <= j < n):
            raise ValueError(f"support pair ({i},{j}) out of range for ({m},{n})")
        mask[i, j] = 1.0
    e = np.einsum("ij,kl->ijkl", mask, mask)
    return BiquadraticTensor(e)
