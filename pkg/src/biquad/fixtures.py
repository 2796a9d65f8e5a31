"""Reference tensors used across the test suite and the reproduction runs.

The main fixture is a tetragonal elastic-moduli tensor with 7 independent
constants, given in BQ(3, 3); its symmetrization has known integer
Gershgorin endpoints and extreme M-eigenvalues 2.5 / 3.0.  Also provides the
parametrized diagonal tensor whose interior M-eigenvalue has a closed form,
and the random symmetric integer tensors of the bounds benchmark.
"""

from __future__ import annotations

import numpy as np

from .tensor_core import BiquadraticTensor, diagonal_tensor, identity_tensor, symmetrize

# 7 independent constants of the tetragonal system (1-based index quadruples)
_TETRAGONAL_CONSTANTS = {
    (1, 1, 1, 1): 4.0,
    (1, 1, 2, 2): -4.0,
    (1, 1, 3, 3): -2.0,
    (1, 1, 1, 2): 1.0,
    (3, 3, 3, 3): 3.0,
    (2, 3, 2, 3): 4.0,
    (1, 2, 1, 2): 4.0,
}

# dependent constants and structural zeros of the tetragonal class
_TETRAGONAL_DERIVED = {
    (2, 2, 1, 2): -1.0,   # = -c_1112
    (2, 2, 2, 2): 4.0,    # = c_1111
    (2, 2, 3, 3): -2.0,   # = c_1133
    (3, 1, 3, 1): 4.0,    # = c_2323
}

_TETRAGONAL_ZEROS = [
    (1, 1, 2, 3), (1, 1, 3, 1), (2, 2, 2, 3), (2, 2, 3, 1), (3, 3, 2, 3),
    (3, 3, 3, 1), (3, 3, 1, 2), (2, 3, 3, 1), (2, 3, 1, 2), (3, 1, 1, 2),
]


def _elasticity_closure(assignments):
    """Close an elasticity-constant table under the index symmetries
    c_{ijkl} = c_{jikl} = c_{ijlk} = c_{klij}; unassigned entries are zero."""
    e = np.zeros((3, 3, 3, 3))
    seen = np.zeros((3, 3, 3, 3), dtype=bool)
    for (i, j, k, l), val in assignments.items():
        stack = [(i - 1, j - 1, k - 1, l - 1)]
        while stack:
            a, b, c, d = stack.pop()
            if seen[a, b, c, d]:
                if abs(e[a, b, c, d] - val) > 1e-12:
                    raise ValueError(
                        f"inconsistent symmetry closure at ({a+1},{b+1},{c+1},{d+1})"
                    )
                continue
            e[a, b, c, d] = val
            seen[a, b, c, d] = True
            stack.extend([(b, a, c, d), (a, b, d, c), (c, d, a, b)])
    return e


# symmetrized entries as printed in the source table (1-based), for the
# build-time consistency assertion
_SYMMETRIZED_ENTRIES = {
    (1, 1, 1, 1): 4.0, (1, 1, 1, 2): 1.0, (1, 2, 1, 1): 1.0,
    (1, 1, 2, 1): 1.0, (2, 1, 1, 1): 1.0, (1, 2, 1, 2): 4.0,
    (1, 2, 2, 2): -1.0, (2, 2, 1, 2): -1.0,
    (1, 1, 3, 3): 1.0, (1, 3, 3, 1): 1.0, (3, 1, 1, 3): 1.0, (3, 3, 1, 1): 1.0,
    (1, 3, 1, 3): 4.0, (2, 1, 2, 1): 4.0,
    (2, 1, 2, 2): -1.0, (2, 2, 2, 1): -1.0,
    (2, 2, 2, 2): 4.0,
    (2, 2, 3, 3): 1.0, (2, 3, 3, 2): 1.0, (3, 2, 2, 3): 1.0, (3, 3, 2, 2): 1.0,
    (2, 3, 2, 3): 4.0, (3, 1, 3, 1): 4.0, (3, 2, 3, 2): 4.0,
    (3, 3, 3, 3): 3.0,
}


def elasticity_tensor():
    """The raw (weakly symmetric, nonsymmetric) tetragonal tensor C in BQ(3,3)."""
    table = dict(_TETRAGONAL_CONSTANTS)
    table.update(_TETRAGONAL_DERIVED)
    for idx in _TETRAGONAL_ZEROS:
        table[idx] = 0.0
    return BiquadraticTensor(_elasticity_closure(table))


def elasticity_tensor_symmetric():
    """The symmetrization A of the tetragonal tensor, validated entry by
    entry against the published table."""
    A = symmetrize(elasticity_tensor())
    expected = np.zeros((3, 3, 3, 3))
    for (i, j, k, l), val in _SYMMETRIZED_ENTRIES.items():
        expected[i - 1, j - 1, k - 1, l - 1] = val
    if not np.allclose(A.entries, expected, atol=1e-12):
        raise AssertionError("symmetrized elasticity fixture drifted")
    return A


def elasticity_variant(overrides):
    """The symmetric fixture with selected entries replaced (symmetrically).

    `overrides` maps 1-based (i1, j1, i2, j2) to new values; the full orbit
    under both partial exchanges is updated so the result stays symmetric.
    """
    e = elasticity_tensor_symmetric().entries.copy()
    for (i, j, k, l), val in overrides.items():
        a, b, c, d = i - 1, j - 1, k - 1, l - 1
        for idx in {(a, b, c, d), (c, b, a, d), (a, d, c, b), (c, d, a, b)}:
            e[idx] = val
    return BiquadraticTensor(e)


def diagonal_2x2(alpha, beta, gamma):
    """Diagonal BQ(2,2) tensor with diagonal [[1, alpha], [beta, gamma]]."""
    return diagonal_tensor([[1.0, alpha], [beta, gamma]])


def interior_eigenpair(alpha, beta, gamma):
    """Closed-form interior M-eigenpair of diagonal_2x2, valid when the
    denominator gamma + 1 - alpha - beta and all four squared components
    are positive.  Returns (lam, x, y)."""
    denom = gamma + 1.0 - alpha - beta
    if denom <= 0:
        raise ValueError("denominator must be positive")
    x2 = np.array([(gamma - beta) / denom, (1.0 - alpha) / denom])
    y2 = np.array([(gamma - alpha) / denom, (1.0 - beta) / denom])
    if np.any(x2 <= 0) or np.any(y2 <= 0):
        raise ValueError("interior solution sign conditions violated")
    lam = (gamma - alpha * beta) / denom
    return lam, np.sqrt(x2), np.sqrt(y2)


def random_symmetric_integer_tensor(m, n, seed):
    """Random benchmark tensor: symmetrized uniform integers in [1, m+n]
    plus (m+n) times the identity."""
    rng = np.random.default_rng(seed)
    raw = rng.integers(1, m + n + 1, size=(m, n, m, n)).astype(float)
    B = symmetrize(BiquadraticTensor(raw))
    return BiquadraticTensor(B.entries + (m + n) * identity_tensor(m, n).entries)
