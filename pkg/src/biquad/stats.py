"""Fourth-order covariance tensors estimated from matrix-valued samples.

For iid samples X^(t) of a random m x n matrix, the estimator
sigma_{ijkl} = (1/T) sum_t (X^(t)_ij - Xbar_ij)(X^(t)_kl - Xbar_kl)
is a weakly symmetric, positive semi-definite biquadratic tensor whose
diagonal holds the entrywise sample variances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import GridSpec, grid_min
from .spectra import SolverConfig, solve_extreme
from .tensor_core import BiquadraticTensor


@dataclass(frozen=True)
class SampleBatch:
    """T matrix samples stacked as an array of shape (T, m, n)."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 3:
            raise ValueError(f"samples must have shape (T, m, n), got {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("batch is empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sample entries must be finite")
        object.__setattr__(self, "samples", arr)

    @property
    def t_count(self):
        return self.samples.shape[0]

    @property
    def m(self):
        return self.samples.shape[1]

    @property
    def n(self):
        return self.samples.shape[2]


def simulate_uniform(t_count, m, n, low=0.0, high=10.0, seed=0):
    """Seeded iid uniform entries; the stock generator for the experiments."""
    rng = np.random.default_rng(seed)
    return SampleBatch(rng.uniform(low, high, size=(t_count, m, n)))


def sample_mean(batch):
    """Entrywise arithmetic mean Xbar."""
    return batch.samples.mean(axis=0)


def covariance_tensor(batch):
    """The 1/T covariance estimator as a biquadratic tensor (two-pass)."""
    if batch.t_count < 2:
        raise ValueError("covariance estimation needs at least 2 samples")
    centered = batch.samples - sample_mean(batch)
    e = np.einsum("tij,tkl->ijkl", centered, centered, optimize=True) / batch.t_count
    return BiquadraticTensor(e)


def verify_psd(A, config=None, tol=1e-8, grid_spec=None):
    """Numerical PSD check via the smallest M-eigenvalue.

    Runs the multi-start solver and, when dimensions permit, the brute-force
    grid; returns (flag, min_lambda_estimate) with the smaller estimate.
    """
    config = config or SolverConfig()
    best, _ = solve_extreme(A, mode="min", config=config)
    lam = best.lam
    if A.m <= 4 and A.n <= 4:
        val, _, _ = grid_min(A, grid_spec or GridSpec())
        lam = min(lam, val)
    return lam >= -tol, lam
