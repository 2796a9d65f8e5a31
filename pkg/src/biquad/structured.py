"""Structured biquadratic tensor classes and certificates.

Covers the Z / B0 / B predicates, M-tensor classification with certification
tiers, the constructive decomposition of symmetric B0 tensors into a
diagonally dominated Z part plus nested pattern-tensor corrections, and the
sum-of-squares certificate obtained from the mn x mn unfolding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import gershgorin_intervals, gershgorin_radii, is_diagonally_dominated
from .spectra import SolverConfig, solve_extreme
from .tensor_core import (
    BiquadraticTensor,
    diagonal_matrix,
    identity_tensor,
    is_symmetric,
    off_diagonal,
    pattern_tensor,
    scale_modes,
)


def _sign_tol(A):
    return 1e-12 * (1.0 + float(np.max(np.abs(A.entries), initial=0.0)))


def is_z_tensor(A, tol=None):
    """True iff every off-diagonal entry is nonpositive (within tolerance)."""
    tol = _sign_tol(A) if tol is None else tol
    return bool(np.max(off_diagonal(A)) <= tol)


def _row_sums(entries):
    """S_ij: the four slice-family sums through position (i, j), all entries."""
    t1 = np.einsum("ajib->ij", entries)
    t2 = np.einsum("abij->ij", entries)
    t3 = np.einsum("ijab->ij", entries)
    t4 = np.einsum("iabj->ij", entries)
    return t1 + t2 + t3 + t4


def _offdiag_family_max(A):
    """M_ij: max off-diagonal entry over the four slice families at (i, j)."""
    ab = off_diagonal(A)
    m1 = np.max(ab, axis=(0, 3)).T           # max_{i1,j2} ab[i1, j, i, j2] -> [i,j]
    m2 = np.max(ab, axis=(0, 1))             # max_{i1,j1} ab[i1, j1, i, j] -> [i,j]
    m3 = np.max(ab, axis=(2, 3))             # max_{i2,j2} ab[i, j, i2, j2] -> [i,j]
    m4 = np.max(ab, axis=(1, 2))             # max_{j1,i2} ab[i, j1, i2, j] -> [i,j]
    return np.maximum(np.maximum(m1, m2), np.maximum(m3, m4))


def is_b0_tensor(A, tol=None):
    """Returns (b0, b) per the slice-sum dominance conditions:
    S_ij >= 0 and S_ij / (4mn) >= max of the off-diagonal slice families;
    b requires both strictly."""
    tol = _sign_tol(A) if tol is None else tol
    S = _row_sums(A.entries)
    M = _offdiag_family_max(A)
    lhs = S / (4.0 * A.m * A.n)
    b0 = bool(np.all(S >= -tol) and np.all(lhs >= M - tol))
    b = bool(np.all(S > tol) and np.all(lhs > M + tol))
    return b0, b


@dataclass(frozen=True)
class ClassificationReport:
    is_z: bool
    is_b0: bool
    is_b: bool
    m_status: str   # certified-M | certified-strong-M | certified-not-M |
                    # numerical-M | numerical-strong-M | indeterminate
    evidence: dict = field(default_factory=dict)


_CERT_MARGIN = 1e-10


def _dominance_slack(A):
    return float(np.min(diagonal_matrix(A) - gershgorin_radii(A)))


def _scaling_search(A, sweeps=100, factor=1.1):
    """Coordinate descent over positive diagonal scalings (d, f), maximizing
    the worst dominance slack of the scaled tensor.  Upgrade path only."""
    d = np.ones(A.m)
    f = np.ones(A.n)
    best = _dominance_slack(A)
    for _ in range(sweeps):
        improved = False
        for vec, idx in [(d, i) for i in range(A.m)] + [(f, j) for j in range(A.n)]:
            for mult in (factor, 1.0 / factor):
                old = vec[idx]
                vec[idx] = old * mult
                slack = _dominance_slack(scale_modes(A, d, f))
                if slack > best + 1e-15:
                    best = slack
                    improved = True
                else:
                    vec[idx] = old
        if not improved:
            break
    return d, f, best


def classify_m_tensor(A, config=None, use_scaling_search=True):
    """Classify a Z-tensor as (strong) M / not-M with certification tiers.

    Writes A = alpha*I - B with alpha = max diag + margin so that B is
    nonnegative; compares alpha against a Gershgorin upper bound and a
    solver lower estimate for the largest M-eigenvalue of B.  A positive
    diagonal scaling that achieves dominance also certifies (congruence
    preserves M-eigenvalue signs).
    """
    config = config or SolverConfig()
    z = is_z_tensor(A)
    b0, b = is_b0_tensor(A)
    if not z:
        return ClassificationReport(z, b0, b, "indeterminate", {})

    diag = diagonal_matrix(A)
    alpha = float(diag.max()) + 1.0
    B = BiquadraticTensor(alpha * identity_tensor(A.m, A.n).entries - A.entries)
    upper = gershgorin_intervals(B).global_interval[1]
    best_max, _ = solve_extreme(B, mode="max", config=config)
    lower = best_max.lam  # a feasible point's value: true lower bound on max

    evidence = {
        "alpha": alpha,
        "lambda_max_upper": float(upper),
        "lambda_max_estimate": float(lower),
        "scaling": None,
    }

    if alpha - upper > _CERT_MARGIN:
        return ClassificationReport(z, b0, b, "certified-strong-M", evidence)
    if alpha >= upper - _CERT_MARGIN:
        return ClassificationReport(z, b0, b, "certified-M", evidence)
    if lower - alpha > _CERT_MARGIN:
        return ClassificationReport(z, b0, b, "certified-not-M", evidence)

    if use_scaling_search and np.all(diag >= 0):
        d, f, slack = _scaling_search(A)
        if slack >= 0.0:
            evidence["scaling"] = (d, f)
            status = (
                "certified-strong-M"
                if slack > _CERT_MARGIN and np.all(diag > 0)
                else "certified-M"
            )
            return ClassificationReport(z, b0, b, status, evidence)

    status = "numerical-strong-M" if alpha - lower > _CERT_MARGIN else "numerical-M"
    return ClassificationReport(z, b0, b, status, evidence)


@dataclass(frozen=True)
class B0Decomposition:
    m_part: BiquadraticTensor
    corrections: list  # ordered (h_k, frozenset of (i, j) pairs), J nested


def _symmetric_b0_check(B, tol):
    """The symmetric-form condition: row sums nonnegative and
    (1/mn) * row sum >= every off-diagonal entry of the row slice."""
    S = np.einsum("ijab->ij", B.entries)
    bar_max = np.max(off_diagonal(B), axis=(2, 3))
    if np.any(S < -tol):
        i, j = np.unravel_index(np.argmin(S), S.shape)
        raise ValueError(
            f"not a B0 tensor: slice sum at (i={i+1}, j={j+1}) is {S[i, j]:.6g} < 0"
        )
    viol = S / (B.m * B.n) - bar_max
    if np.any(viol < -tol):
        i, j = np.unravel_index(np.argmin(viol), viol.shape)
        k, l = np.unravel_index(
            np.argmax(off_diagonal(B)[i, j]), (B.m, B.n)
        )
        raise ValueError(
            "not a B0 tensor: average-dominance fails at "
            f"(i={i+1}, j={j+1}, i2={k+1}, j2={l+1})"
        )


def decompose_b0(B, tol=None):
    """Constructive decomposition of a symmetric B0 tensor:
    B = M + sum_k h_k * pattern(J_k) with h_k > 0, strictly nested J_k, and
    M a diagonally dominated symmetric Z tensor.

    Each round peels off h_k = min over the positive support of the largest
    off-diagonal row-slice entry; the argmin positions leave the support, so
    the loop terminates.
    """
    tol = _sign_tol(B) if tol is None else tol
    if not is_symmetric(B):
        raise ValueError("decompose_b0 requires a symmetric tensor")
    _symmetric_b0_check(B, tol)

    current = B
    corrections = []
    prev_support = None
    for _ in range(B.m * B.n + 1):
        od = off_diagonal(current)
        d = np.max(od, axis=(2, 3))  # d_ij on the current iterate
        support = frozenset(
            (int(i), int(j)) for i, j in np.argwhere(d > tol)
        )
        if not support:
            break
        if prev_support is not None and not (support < prev_support):
            raise AssertionError("support sets failed to nest strictly")
        h = float(min(d[i, j] for (i, j) in support))
        if h <= 0:
            raise AssertionError("correction weight must be positive")
        current = current - h * pattern_tensor(B.m, B.n, support)
        corrections.append((h, support))
        prev_support = support
    else:
        raise AssertionError("decomposition failed to terminate")

    if not is_z_tensor(current, tol):
        raise AssertionError("remainder is not a Z tensor")
    dominated, _ = is_diagonally_dominated(current)
    if not dominated:
        # tolerate tolerance-level slack from floating subtraction
        slack = _dominance_slack(current)
        if slack < -10 * tol:
            raise AssertionError("remainder is not diagonally dominated")
    return B0Decomposition(m_part=current, corrections=corrections)


def reconstruct(decomp, m, n):
    """Sum the decomposition back into a tensor (round-trip check helper)."""
    total = decomp.m_part
    for h, support in decomp.corrections:
        total = total + h * pattern_tensor(m, n, support)
    return total


def build_from_factors(factors):
    """Weakly symmetric tensor sum_k A^(k) (x) A^(k): entries
    a_{i1 j1 i2 j2} = sum_k a^(k)_{i1 j1} a^(k)_{i2 j2}; its form is
    sum_k (x' A^(k) y)^2 >= 0."""
    mats = [np.asarray(F, dtype=float) for F in factors]
    if not mats:
        raise ValueError("at least one factor matrix is required")
    shape = mats[0].shape
    if any(F.shape != shape for F in mats):
        raise ValueError("factor matrices must share one shape")
    stack = np.stack(mats)  # (K, m, n)
    e = np.einsum("kij,kab->ijab", stack, stack)
    return BiquadraticTensor(e)


def unfold(A):
    """The mn x mn matrix U[(i1, j1), (i2, j2)] = a_{i1 j1 i2 j2}."""
    return A.entries.reshape(A.m * A.n, A.m * A.n)


def sos_certificate(A, tol=None):
    """Factor matrices A^(k) with sum_k A^(k) (x) A^(k) reproducing the form,
    or None when the symmetrized unfolding is not PSD (not a disproof of
    nonnegativity).  Boundary eigenvalues are clamped at zero."""
    U = unfold(A)
    U = 0.5 * (U + U.T)  # form-preserving
    tol = 1e-10 * (1.0 + float(np.max(np.abs(U), initial=0.0))) if tol is None else tol
    w, V = np.linalg.eigh(U)
    if w[0] < -tol:
        return None
    w = np.clip(w, 0.0, None)
    factors = []
    for k in range(len(w)):
        if w[k] <= tol:
            continue
        factors.append(np.sqrt(w[k]) * V[:, k].reshape(A.m, A.n))
    if not factors:  # zero tensor: certificate is the empty sum; keep one zero
        factors.append(np.zeros((A.m, A.n)))
    return factors
