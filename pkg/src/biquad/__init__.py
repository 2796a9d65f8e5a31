"""Fourth-order biquadratic tensors: M-eigenvalues, bounds, structure, statistics."""

from .oracle import GridSpec, grid_max, grid_min
from .bounds import GershgorinReport, gershgorin_intervals, gershgorin_radii, is_diagonally_dominated
from .cli_io import ParseError, read_samples_csv, read_tensor, tensor_from_json, tensor_to_json, write_samples_csv, write_tensor
from .spectra import (
    LineSearchError,
    MEigenpair,
    NonConvergenceError,
    SolverConfig,
    SolverTrace,
    solve,
    solve_extreme,
)
from .stats import SampleBatch, covariance_tensor, sample_mean, simulate_uniform, verify_psd
from .structured import (
    B0Decomposition,
    ClassificationReport,
    build_from_factors,
    classify_m_tensor,
    decompose_b0,
    is_b0_tensor,
    is_z_tensor,
    sos_certificate,
    unfold,
)
from .tensor_core import (
    BiquadraticTensor,
    DimensionMismatchError,
    diagonal_tensor,
    evaluate_form,
    identity_tensor,
    pattern_tensor,
    symmetrize,
)

__all__ = [
    "BiquadraticTensor",
    "B0Decomposition",
    "ClassificationReport",
    "DimensionMismatchError",
    "GershgorinReport",
    "GridSpec",
    "LineSearchError",
    "MEigenpair",
    "NonConvergenceError",
    "ParseError",
    "SampleBatch",
    "SolverConfig",
    "SolverTrace",
    "build_from_factors",
    "classify_m_tensor",
    "covariance_tensor",
    "decompose_b0",
    "diagonal_tensor",
    "evaluate_form",
    "gershgorin_intervals",
    "gershgorin_radii",
    "grid_max",
    "grid_min",
    "identity_tensor",
    "is_b0_tensor",
    "is_diagonally_dominated",
    "is_z_tensor",
    "pattern_tensor",
    "read_samples_csv",
    "read_tensor",
    "sample_mean",
    "simulate_uniform",
    "solve",
    "solve_extreme",
    "sos_certificate",
    "symmetrize",
    "tensor_from_json",
    "tensor_to_json",
    "unfold",
    "verify_psd",
    "write_samples_csv",
    "write_tensor",
]

__version__ = "0.1.0"
