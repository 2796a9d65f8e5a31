import numpy as np
import pytest

from biquad import fixtures
from biquad.oracle import GridSpec, grid_max
from biquad.spectra import SolverConfig
from biquad.structured import (
    build_from_factors,
    classify_m_tensor,
    decompose_b0,
    is_b0_tensor,
    is_z_tensor,
    sos_certificate,
    unfold,
)
from biquad.tensor_core import (
    BiquadraticTensor,
    evaluate_form,
    identity_tensor,
    pattern_tensor,
    symmetrize,
)

FULL_22 = [(i, j) for i in range(2) for j in range(2)]


def test_is_z_tensor():
    assert is_z_tensor(identity_tensor(2, 3))
    e = identity_tensor(2, 2).entries.copy()
    e[0, 0, 1, 1] = 0.1
    assert not is_z_tensor(BiquadraticTensor(e))


def test_is_b0_identity_and_zero():
    assert is_b0_tensor(identity_tensor(2, 3)) == (True, True)
    assert is_b0_tensor(BiquadraticTensor(np.zeros((2, 2, 2, 2)))) == (True, False)


def test_is_b0_symmetric_form_cross_check():
    # for symmetric input the general four-family test must agree with the
    # single-family symmetric form: sum_{i2 j2} b_{i j i2 j2} >= 0 and
    # (1/mn) sum >= max off-diagonal
    rng = np.random.default_rng(9)
    for _ in range(20):
        m, n = rng.integers(2, 4, size=2)
        B = symmetrize(BiquadraticTensor(rng.normal(size=(m, n, m, n))))
        b0, b = is_b0_tensor(B)
        S = np.einsum("ijab->ij", B.entries)
        off = B.entries.copy()
        for i in range(m):
            for j in range(n):
                off[i, j, i, j] = -np.inf
        # bbar zeroes the diagonal, so the family max is never below zero
        mx = np.maximum(off.max(axis=(2, 3)), 0.0)
        sym_b0 = bool(np.all(S >= 0) and np.all(S / (m * n) >= mx))
        sym_b = bool(np.all(S > 0) and np.all(S / (m * n) > mx))
        assert (b0, b) == (sym_b0, sym_b)


def test_classify_identity_certified_strong_m():
    rep = classify_m_tensor(identity_tensor(2, 2), SolverConfig(seed=0, n_starts=4))
    assert rep.is_z and rep.m_status == "certified-strong-M"


def test_classify_non_z_is_indeterminate():
    e = identity_tensor(2, 2).entries.copy()
    e[0, 0, 1, 1] = e[1, 1, 0, 0] = 0.3
    rep = classify_m_tensor(BiquadraticTensor(e), SolverConfig(seed=0, n_starts=4))
    assert not rep.is_z and rep.m_status == "indeterminate"


def test_classify_certified_not_m():
    # A = alpha*I - B with alpha below the true max eigenvalue of B
    rng = np.random.default_rng(3)
    B = symmetrize(BiquadraticTensor(np.abs(rng.normal(size=(2, 2, 2, 2)))))
    lam_max, _, _ = grid_max(B, GridSpec(resolution=200))
    alpha = lam_max - 0.1
    A = BiquadraticTensor(alpha * identity_tensor(2, 2).entries - B.entries)
    rep = classify_m_tensor(A, SolverConfig(seed=0, n_starts=10))
    assert rep.m_status == "certified-not-M"


def test_decompose_spec_example():
    B = BiquadraticTensor(
        identity_tensor(2, 2).entries + pattern_tensor(2, 2, FULL_22).entries
    )
    d = decompose_b0(B)
    assert len(d.corrections) == 1
    h, support = d.corrections[0]
    assert h == 1.0 and support == set(FULL_22)
    assert np.array_equal(d.m_part.entries, identity_tensor(2, 2).entries)


def test_decompose_diagonal_no_corrections():
    D = BiquadraticTensor(3.0 * identity_tensor(2, 3).entries)
    d = decompose_b0(D)
    assert d.corrections == []
    assert np.array_equal(d.m_part.entries, D.entries)


def test_decompose_rejects_non_b0_with_named_indices():
    e = -2.0 * identity_tensor(2, 2).entries
    with pytest.raises(ValueError, match=r"\d"):
        decompose_b0(BiquadraticTensor(e))


def test_decompose_rejects_weakly_symmetric_only():
    rng = np.random.default_rng(8)
    raw = rng.normal(size=(2, 2, 2, 2))
    W = BiquadraticTensor(0.5 * (raw + raw.transpose(2, 3, 0, 1)))
    with pytest.raises(ValueError, match="symmetric"):
        decompose_b0(W)


def test_unfold_round_trip_values():
    rng = np.random.default_rng(10)
    A = BiquadraticTensor(rng.normal(size=(2, 3, 2, 3)))
    U = unfold(A)
    assert U.shape == (6, 6)
    assert U[0 * 3 + 1, 1 * 3 + 2] == A.entries[0, 1, 1, 2]


def test_sos_reproduces_form_pointwise():
    rng = np.random.default_rng(12)
    factors = [rng.normal(size=(3, 2)) for _ in range(2)]
    A = build_from_factors(factors)
    got = sos_certificate(A)
    assert got is not None
    for _ in range(10):
        x = rng.normal(size=3)
        y = rng.normal(size=2)
        f = evaluate_form(A, x, y)
        s = sum(float(x @ F @ y) ** 2 for F in got)
        assert abs(f - s) <= 1e-10 * (1.0 + abs(f))


def test_sos_returns_none_on_indefinite_unfolding():
    D = fixtures.diagonal_2x2(1.0, 1.0, -1.0)
    assert sos_certificate(D) is None


def test_sos_zero_tensor():
    Z = BiquadraticTensor(np.zeros((2, 2, 2, 2)))
    got = sos_certificate(Z)
    assert got is not None and len(got) == 1
    assert np.array_equal(got[0], np.zeros((2, 2)))
