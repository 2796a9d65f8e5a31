import numpy as np
import pytest

from biquad.tensor_core import (
    BiquadraticTensor,
    DimensionMismatchError,
    contract_x,
    contract_y,
    diagonal_tensor,
    evaluate_form,
    identity_tensor,
    is_symmetric,
    is_weakly_symmetric,
    pattern_tensor,
    shift,
    symmetrize,
)


def test_shape_validation():
    with pytest.raises(DimensionMismatchError):
        BiquadraticTensor(np.zeros((2, 3, 2, 2)))  # i-dims disagree
    with pytest.raises(DimensionMismatchError):
        BiquadraticTensor(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        BiquadraticTensor(np.zeros((1, 3, 1, 3)))  # m >= 2 required
    with pytest.raises(ValueError):
        BiquadraticTensor(np.full((2, 2, 2, 2), np.nan))


def test_entries_immutable():
    A = identity_tensor(2, 2)
    with pytest.raises(ValueError):
        A.entries[0, 0, 0, 0] = 5.0


def test_identity_form_is_product_of_norms():
    rng = np.random.default_rng(0)
    I = identity_tensor(3, 4)
    for _ in range(10):
        x = rng.normal(size=3)
        y = rng.normal(size=4)
        assert np.isclose(evaluate_form(I, x, y), (x @ x) * (y @ y))


def test_symmetry_predicates():
    rng = np.random.default_rng(1)
    raw = BiquadraticTensor(rng.normal(size=(3, 2, 3, 2)))
    S = symmetrize(raw)
    assert is_symmetric(S) and is_weakly_symmetric(S)
    assert not is_symmetric(raw)
    # weakly symmetric but not symmetric: symmetrize only across pair exchange
    e = 0.5 * (raw.entries + raw.entries.transpose(2, 3, 0, 1))
    W = BiquadraticTensor(e)
    assert is_weakly_symmetric(W) and not is_symmetric(W)


def test_symmetrize_preserves_form_and_is_idempotent():
    rng = np.random.default_rng(2)
    A = BiquadraticTensor(rng.normal(size=(3, 3, 3, 3)))
    S = symmetrize(A)
    for _ in range(10):
        x = rng.normal(size=3)
        y = rng.normal(size=3)
        assert np.isclose(evaluate_form(A, x, y), evaluate_form(S, x, y))
    assert np.allclose(symmetrize(S).entries, S.entries)


def test_contractions_match_form_derivative():
    # for weakly symmetric A: x . contract_x = 2 f and y . contract_y = 2 f
    rng = np.random.default_rng(3)
    A = symmetrize(BiquadraticTensor(rng.normal(size=(3, 4, 3, 4))))
    x = rng.normal(size=3)
    y = rng.normal(size=4)
    f = evaluate_form(A, x, y)
    assert np.isclose(x @ contract_x(A, x, y), 2.0 * f)
    assert np.isclose(y @ contract_y(A, x, y), 2.0 * f)


def test_diagonal_and_shift():
    D = diagonal_tensor([[1.0, 2.0], [3.0, 4.0]])
    x = np.array([1.0, 0.0])
    y = np.array([0.0, 1.0])
    assert evaluate_form(D, x, y) == 2.0
    S = shift(D, 1.5)  # D - 1.5*I shifts the form down by 1.5 on unit pairs
    assert np.isclose(evaluate_form(S, x, y), 2.0 - 1.5)
    R = shift(D, 1.5, reverse=True)
    assert np.isclose(evaluate_form(R, x, y), 1.5 - 2.0)


def test_pattern_tensor_square_identity():
    rng = np.random.default_rng(4)
    for _ in range(100):
        m, n = rng.integers(2, 5, size=2)
        count = rng.integers(1, m * n + 1)
        all_pairs = [(i, j) for i in range(m) for j in range(n)]
        idx = rng.choice(len(all_pairs), size=count, replace=False)
        support = [all_pairs[k] for k in idx]
        P = pattern_tensor(m, n, support)
        x = rng.normal(size=m)
        y = rng.normal(size=n)
        expect = sum(x[i] * y[j] for (i, j) in support) ** 2
        assert abs(evaluate_form(P, x, y) - expect) <= 1e-12 * (1.0 + abs(expect))
        assert is_weakly_symmetric(P)


def test_pattern_tensor_singleton_and_product_support():
    P = pattern_tensor(3, 3, [(1, 2)])
    e = np.zeros((3, 3, 3, 3))
    e[1, 2, 1, 2] = 1.0
    assert np.array_equal(P.entries, e)
    # product support is closed under cross pairs -> fully symmetric
    prod = [(i, j) for i in range(2) for j in range(2)]
    assert is_symmetric(pattern_tensor(3, 3, prod))
