"""Brute-force verification of extreme M-eigenvalues on small instances.

Dense sampling of the product of unit spheres plus a short projected-gradient
polish.  Deliberately independent of the LBFGS solver path so the two can
cross-check each other: the only shared code is the tensor contraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor_core import contract_x, contract_y, evaluate_form


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 200      # samples per angular dimension
    polish_steps: int = 50     # projected-gradient refinement iterations
    polish_rate: float = 1e-2

    def __post_init__(self):
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")
        if self.polish_steps < 0 or self.polish_rate <= 0:
            raise ValueError("invalid polish parameters")


def _circle_points(resolution):
    # [0, pi) suffices: x and -x give the same form value
    theta = np.arange(resolution) * (np.pi / resolution)
    return np.stack([np.cos(theta), np.sin(theta)], axis=0)  # (2, resolution)


def _halton(n_points, dim, skip=1):
    primes = [2, 3, 5, 7, 11, 13]
    out = np.empty((n_points, dim))
    for d in range(dim):
        b = primes[d]
        idx = np.arange(skip, skip + n_points)
        col = np.zeros(n_points)
        f = 1.0 / b
        i = idx.astype(float)
        while np.any(i > 0):
            col += f * np.mod(i, b)
            i = np.floor(i / b)
            f /= b
        out[:, d] = col
    return out


def _sphere_points(dim, count):
    """Deterministic low-discrepancy point set on the unit sphere in R^dim.

    Halton points mapped through the inverse normal CDF and normalized; the
    set for a larger count is a superset (prefix property), so grid minima
    are monotone under refinement.
    """
    from scipy.special import ndtri

    u = _halton(count, dim)
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    z = ndtri(u)
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z.T  # (dim, count)


def _grid_argmin(A, X, Y, chunk=1024):
    """Minimum form value over every (column of X, column of Y) pair.

    Evaluated in chunks of X columns so the full pairwise value matrix is
    never materialized.  Returns (min value, x column index, y column index).
    """
    best = np.inf
    best_a = best_b = 0
    for start in range(0, X.shape[1], chunk):
        Xc = X[:, start:start + chunk]
        M = np.einsum("ijkl,ia,ka->ajl", A.entries, Xc, Xc, optimize=True)
        vals = np.einsum("ajl,jb,lb->ab", M, Y, Y, optimize=True)
        a, b = np.unravel_index(np.argmin(vals), vals.shape)
        if vals[a, b] < best:
            best = float(vals[a, b])
            best_a, best_b = start + a, b
    return best, best_a, best_b


def _polish(A, x, y, steps, rate, sign=1.0):
    """Tangent-projected gradient descent on sign*f, fixed step size."""
    for _ in range(steps):
        gx = sign * contract_x(A, x, y)
        gy = sign * contract_y(A, x, y)
        gx -= (gx @ x) * x
        gy -= (gy @ y) * y
        x = x - rate * gx
        y = y - rate * gy
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
    return x, y


def grid_min(A, spec=None):
    """Grid minimum of the form over the sphere product, then polish.

    Returns (value, x, y).  The value is an upper bound on the smallest
    M-eigenvalue; with polish it is accurate to grid tolerance on smooth
    instances.  Guarded to m, n <= 4.
    """
    spec = spec or GridSpec()
    if A.m > 4 or A.n > 4:
        raise ValueError(f"grid oracle guarded to m, n <= 4, got ({A.m},{A.n})")
    X = _circle_points(spec.resolution) if A.m == 2 else _sphere_points(A.m, spec.resolution**2)
    Y = _circle_points(spec.resolution) if A.n == 2 else _sphere_points(A.n, spec.resolution**2)
    _, a, b = _grid_argmin(A, X, Y)
    x, y = X[:, a].copy(), Y[:, b].copy()
    x, y = _polish(A, x, y, spec.polish_steps, spec.polish_rate, sign=1.0)
    return evaluate_form(A, x, y), x, y


def grid_max(A, spec=None):
    """Grid maximum of the form (grid_min applied to -A, value negated)."""
    val, x, y = grid_min(-A, spec)
    return -val, x, y


def grid_min_raw(A, spec=None):
    """Grid minimum before polish; monotone under nested refinement."""
    spec = spec or GridSpec()
    if A.m > 4 or A.n > 4:
        raise ValueError(f"grid oracle guarded to m, n <= 4, got ({A.m},{A.n})")
    X = _circle_points(spec.resolution) if A.m == 2 else _sphere_points(A.m, spec.resolution**2)
    Y = _circle_points(spec.resolution) if A.n == 2 else _sphere_points(A.n, spec.resolution**2)
    val, _, _ = _grid_argmin(A, X, Y)
    return val
