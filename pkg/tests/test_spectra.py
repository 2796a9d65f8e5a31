import numpy as np
import pytest

from biquad import fixtures
from biquad.spectra import (
    LineSearchError,
    SolverConfig,
    cayley_step,
    gradient,
    lbfgs_direction,
    line_search,
    objective,
    pairs_equal,
    random_starts,
    residual,
    solve,
    solve_extreme,
)
from biquad.tensor_core import BiquadraticTensor, symmetrize


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(eta=0.0)
    with pytest.raises(ValueError):
        SolverConfig(beta=1.0)
    with pytest.raises(ValueError):
        SolverConfig(memory=0)
    with pytest.warns(UserWarning):
        SolverConfig(eta=1.5)


def test_cayley_step_stays_on_sphere():
    rng = np.random.default_rng(0)
    for _ in range(50):
        dim = rng.integers(2, 6)
        x = rng.normal(size=dim)
        x /= np.linalg.norm(x)
        p = rng.normal(size=dim)
        p -= (p @ x) * x  # tangent
        alpha = rng.uniform(1e-4, 1.0)
        xn = cayley_step(x, p, alpha)
        assert abs(np.linalg.norm(xn) - 1.0) <= 1e-12
    # zero direction is a fixed point
    x = np.array([1.0, 0.0])
    assert np.allclose(cayley_step(x, np.zeros(2), 0.7), x)


def test_gradient_requires_unit_vectors():
    A = fixtures.elasticity_tensor_symmetric()
    with pytest.raises(ValueError):
        gradient(A, np.array([2.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]))


def test_line_search_decreases_objective():
    rng = np.random.default_rng(1)
    A = symmetrize(BiquadraticTensor(rng.normal(size=(3, 3, 3, 3))))
    config = SolverConfig()
    x = rng.normal(size=3)
    y = rng.normal(size=3)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    g = gradient(A, x, y)
    p = -g
    alpha = line_search(A, x, y, p, config)
    xn = cayley_step(x, p[:3], alpha)
    yn = cayley_step(y, p[3:], alpha)
    assert objective(A, xn, yn) < objective(A, x, y)


def test_lbfgs_fallback_on_empty_history():
    g = np.array([1.0, -2.0, 0.5, 0.0, 1.0])
    p, source = lbfgs_direction([], g, 3, SolverConfig())
    assert source in ("lbfgs", "fallback")
    assert np.allclose(p, -g)


def test_solve_residual_satisfies_eigen_equations():
    A = fixtures.elasticity_tensor_symmetric()
    for x0, y0 in random_starts(3, 3, 5, seed=3):
        pair, _ = solve(A, x0, y0, SolverConfig())
        assert pair.converged
        assert pair.residual <= 1e-5
        assert residual(A, pair) == pair.residual


def test_solve_extreme_max_is_min_of_negation():
    A = fixtures.elasticity_tensor_symmetric()
    config = SolverConfig(seed=2, n_starts=10)
    best_max, _ = solve_extreme(A, mode="max", config=config)
    best_min_neg, _ = solve_extreme(-A, mode="min", config=config)
    assert abs(best_max.lam + best_min_neg.lam) <= 1e-6


def test_solve_extreme_rejects_bad_mode():
    A = fixtures.elasticity_tensor_symmetric()
    with pytest.raises(ValueError):
        solve_extreme(A, mode="both")


def test_random_starts_deterministic():
    a = random_starts(3, 4, 5, seed=7)
    b = random_starts(3, 4, 5, seed=7)
    for (xa, ya), (xb, yb) in zip(a, b):
        assert np.array_equal(xa, xb) and np.array_equal(ya, yb)
        assert abs(np.linalg.norm(xa) - 1.0) <= 1e-12


def test_pairs_equal_handles_sign_flips():
    from biquad.spectra import MEigenpair

    x = np.array([0.6, 0.8])
    y = np.array([1.0, 0.0])
    a = MEigenpair(1.0, x, y, 0.0, True, 3)
    b = MEigenpair(1.0, -x, -y, 0.0, True, 5)
    assert pairs_equal(a, b)
    c = MEigenpair(1.0, np.array([0.8, 0.6]), y, 0.0, True, 5)
    assert not pairs_equal(a, c)


def test_stationary_start_returns_immediately():
    alpha, beta, gamma = 0.2, 0.3, 0.5
    A = fixtures.diagonal_2x2(alpha, beta, gamma)
    lam, x, y = fixtures.interior_eigenpair(alpha, beta, gamma)
    pair, trace = solve(A, x, y, SolverConfig())
    assert pair.iterations == 0 and pair.converged
    assert abs(pair.lam - lam) <= 1e-12
    assert len(trace.records) == 1  # initial record present
