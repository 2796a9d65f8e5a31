"""Riemannian LBFGS solver for extreme M-eigenvalues.

Minimizes the Rayleigh-type objective f(x, y) = <A, x o y o x o y> over the
product of two unit spheres.  Search directions come from a safeguarded
limited-memory BFGS two-loop recursion; iterates are retracted back onto the
spheres by a Cayley transform; step sizes by Armijo backtracking.  Every KKT
point of the model is an M-eigenpair with lambda = f(x, y).
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .tensor_core import BiquadraticTensor, contract_x, contract_y, evaluate_form


class NonConvergenceError(RuntimeError):
    """No start reached the stopping tolerances; carries the best trace."""

    def __init__(self, message, best_pair=None, best_trace=None):
        super().__init__(message)
        self.best_pair = best_pair
        self.best_trace = best_trace


class LineSearchError(RuntimeError):
    """Backtracking underflowed or the descent precondition failed."""


@dataclass(frozen=True)
class MEigenpair:
    """An M-eigenvalue with unit eigenvectors and the gradient-norm residual."""

    lam: float
    x: np.ndarray
    y: np.ndarray
    residual: float
    converged: bool = True
    iterations: int = 0


@dataclass(frozen=True)
class SolverConfig:
    eta: float = 1e-3          # Armijo constant, admissible in (0, 2)
    beta: float = 0.5          # backtracking ratio
    k_max: int = 1000
    eps1: float = 1e-6         # relative iterate change
    eps2: float = 1e-6         # gradient norm
    eps3: float = 1e-16        # relative objective change
    c_lower: float = 1e-16     # safeguard C_L <= 1
    c_upper: float = 1e16      # safeguard C_U >= 1
    memory: int = 5
    seed: int = 0
    n_starts: int = 20

    def __post_init__(self):
        if not 0.0 < self.eta < 2.0:
            raise ValueError("eta must lie in (0, 2)")
        if self.eta >= 1.0:
            warnings.warn(
                "eta >= 1 makes the Armijo test demand super-linear decrease",
                stacklevel=2,
            )
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.c_lower > 1.0 or self.c_upper < 1.0:
            raise ValueError("require c_lower <= 1 <= c_upper")
        if self.memory < 1 or self.n_starts < 1:
            raise ValueError("memory and n_starts must be positive")
        if min(self.eps1, self.eps2, self.eps3) <= 0.0:
            raise ValueError("stopping tolerances must be positive")


@dataclass
class SolverTrace:
    """Per-iteration history: (k, f, grad_norm, alpha, direction source)."""

    records: list = field(default_factory=list)
    final_f: float = float("nan")
    max_norm_deviation: float = 0.0

    def append(self, k, f, grad_norm, alpha, source):
        self.records.append((k, f, grad_norm, alpha, source))

    def f_values(self):
        vals = [r[1] for r in self.records]
        if not np.isnan(self.final_f):
            vals.append(self.final_f)
        return vals

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["k", "f", "grad_norm", "alpha", "source"])
        for rec in self.records:
            w.writerow(rec)
        return buf.getvalue()


# -- core pieces -----------------------------------------------------------

def objective(A, x, y):
    """Scale-invariant Rayleigh value f = <A,xyxy> / ((x.x)(y.y))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xx = float(x @ x)
    yy = float(y @ y)
    if xx == 0.0 or yy == 0.0:
        raise ValueError("objective undefined for zero vectors")
    return evaluate_form(A, x, y) / (xx * yy)


def gradient(A, x, y):
    """Gradient of the normalized objective at unit (x, y), length m + n.

    Both blocks are tangent: g_x.x = 0 and g_y.y = 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-8 or abs(np.linalg.norm(y) - 1.0) > 1e-8:
        raise ValueError("gradient requires unit vectors; normalize the inputs")
    f = evaluate_form(A, x, y)
    gx = contract_x(A, x, y) - 2.0 * f * x
    gy = contract_y(A, x, y) - 2.0 * f * y
    return np.concatenate([gx, gy])


def residual(A, pair):
    """Norm of the stationarity gradient at the pair's eigenvectors."""
    return float(np.linalg.norm(gradient(A, pair.x, pair.y)))


def cayley_step(x, p, alpha):
    """Sphere-preserving update
    x(a) = {[(1 - a x.p)^2 - a^2 |p|^2] x + 2a p} / {1 + a^2 |p|^2 - (a x.p)^2}.

    Output is exactly unit-norm when x.p = 0 (tangent direction).
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("cayley_step requires a unit base point")
    xp = float(x @ p)
    pp = float(p @ p)
    denom = 1.0 + alpha * alpha * pp - (alpha * xp) ** 2
    if denom <= 1e-14:
        raise ValueError("degenerate Cayley step: denominator too small")
    num = ((1.0 - alpha * xp) ** 2 - alpha * alpha * pp) * x + 2.0 * alpha * p
    return num / denom


def _two_loop(history, grad):
    """Inverse-Hessian application -H.grad by the standard two-loop recursion."""
    q = grad.copy()
    alphas = []
    for s, v, rho in reversed(history):
        a = rho * (s @ q)
        alphas.append(a)
        q -= a * v
    if history:
        s, v, _ = history[-1]
        gamma = (s @ v) / (v @ v)
        q *= gamma
    for (s, v, rho), a in zip(history, reversed(alphas)):
        b = rho * (v @ q)
        q += (a - b) * s
    return -q


def lbfgs_direction(history, grad, m, config):
    """Safeguarded quasi-Newton direction.

    `history` holds (s, v, rho) curvature triples, oldest first; `m` splits the
    concatenated gradient into its x/y blocks.  Falls back to -grad whenever
    the blockwise descent or magnitude safeguards fail.
    """
    p = _two_loop(list(history), np.asarray(grad, dtype=float))
    cl, cu = config.c_lower, config.c_upper
    ok = True
    for blk_p, blk_g in ((p[:m], grad[:m]), (p[m:], grad[m:])):
        gg = float(blk_g @ blk_g)
        if float(blk_p @ blk_g) > -cl * gg:
            ok = False
            break
        if np.linalg.norm(blk_p) > cu * np.sqrt(gg):
            ok = False
            break
    if ok:
        return p, "lbfgs"
    return -np.asarray(grad, dtype=float), "fallback"


def line_search(A, x, y, p, config):
    """Armijo backtracking over alpha in {1, beta, beta^2, ...}.

    Accepts the first alpha with f(z(alpha)) <= f(z) + eta*alpha*p.grad, where
    z(alpha) applies the Cayley update to both blocks.  Requires p.grad < 0.
    """
    m = len(x)
    g = gradient(A, x, y)
    slope = float(p @ g)
    if slope >= 0.0:
        raise LineSearchError(f"not a descent direction: p.grad = {slope:.3e}")
    f0 = objective(A, x, y)
    alpha = 1.0
    while alpha >= 1e-16:
        xn = cayley_step(x, p[:m], alpha)
        yn = cayley_step(y, p[m:], alpha)
        if objective(A, xn, yn) <= f0 + config.eta * alpha * slope:
            return alpha
        alpha *= config.beta
    raise LineSearchError("Armijo backtracking underflowed below 1e-16")


# -- the driver ------------------------------------------------------------

def solve(A, x0, y0, config=None):
    """Run the Riemannian LBFGS iteration from one start.

    Returns (MEigenpair, SolverTrace).  The start is normalized internally.
    Stops when all three tolerance conditions hold (relative iterate change,
    gradient norm, relative objective change) or at k_max, in which case the
    pair is flagged non-converged.
    """
    config = config or SolverConfig()
    m = A.m
    x = np.asarray(x0, dtype=float)
    y = np.asarray(y0, dtype=float)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("starting vectors must be nonzero")
    x, y = x / nx, y / ny

    trace = SolverTrace()
    history = []
    f = objective(A, x, y)
    g = gradient(A, x, y)
    converged = False
    k = 0
    for k in range(config.k_max + 1):
        gnorm = float(np.linalg.norm(g))
        if gnorm <= config.eps2 and k == 0:
            converged = True  # already stationary at the start
            trace.append(k, f, gnorm, 0.0, "initial")
            break
        p, source = lbfgs_direction(history, g, m, config)
        try:
            alpha = line_search(A, x, y, p, config)
        except LineSearchError:
            # numerically stationary, or the model is locally inconsistent;
            # accept only if the gradient tolerance is already met
            converged = gnorm <= config.eps2
            break
        trace.append(k, f, gnorm, alpha, source)

        xn = cayley_step(x, p[:m], alpha)
        yn = cayley_step(y, p[m:], alpha)
        # defensive renormalization against drift (retraction keeps this tiny)
        dev = max(abs(np.linalg.norm(xn) - 1.0), abs(np.linalg.norm(yn) - 1.0))
        trace.max_norm_deviation = max(trace.max_norm_deviation, dev)
        xn /= np.linalg.norm(xn)
        yn /= np.linalg.norm(yn)

        fn = objective(A, xn, yn)
        gn = gradient(A, xn, yn)

        s = np.concatenate([xn - x, yn - y])
        v = gn - g
        sv = float(s @ v)
        if sv > 1e-12 * np.linalg.norm(s) * np.linalg.norm(v):
            history.append((s, v, 1.0 / sv))
            if len(history) > config.memory:
                history.pop(0)

        z_change = np.linalg.norm(s) / np.linalg.norm(np.concatenate([x, y]))
        f_change = abs(fn - f) / (abs(f) + 1.0)
        x, y, f, g = xn, yn, fn, gn
        if (
            z_change <= config.eps1
            and np.linalg.norm(g) <= config.eps2
            and f_change <= config.eps3
        ):
            converged = True
            k += 1
            break

    trace.final_f = f
    pair = MEigenpair(
        lam=f,
        x=x,
        y=y,
        residual=float(np.linalg.norm(g)),
        converged=converged,
        iterations=k,
    )
    return pair, trace


def random_starts(m, n, n_starts, seed):
    """Reproducible standard-normal starts, normalized on each sphere."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n_starts):
        x = rng.standard_normal(m)
        y = rng.standard_normal(n)
        out.append((x / np.linalg.norm(x), y / np.linalg.norm(y)))
    return out


def pairs_equal(a, b, lam_tol=1e-4, vec_tol=1e-3):
    """Dedup rule: eigenvalues within lam_tol and vectors matching up to sign."""
    if abs(a.lam - b.lam) > lam_tol:
        return False
    best = min(
        np.linalg.norm(sx * a.x - b.x) + np.linalg.norm(sy * a.y - b.y)
        for sx in (1.0, -1.0)
        for sy in (1.0, -1.0)
    )
    return best <= vec_tol


def deduplicate(pairs, lam_tol=1e-4, vec_tol=1e-3):
    kept = []
    for p in pairs:
        if not any(pairs_equal(p, q, lam_tol, vec_tol) for q in kept):
            kept.append(p)
    return kept


def solve_extreme(A, mode="min", config=None, extra_starts=()):
    """Seeded multi-start driver for the smallest or largest M-eigenvalue.

    mode="max" solves on -A and negates the eigenvalues (shared eigenvectors).
    Returns (best MEigenpair, deduplicated list of converged stationary pairs).
    `extra_starts` may supply additional (x0, y0) tuples run after the seeded
    random starts.
    """
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    config = config or SolverConfig()
    work = -A if mode == "max" else A

    results = []
    best_failed = None
    starts = random_starts(A.m, A.n, config.n_starts, config.seed)
    starts.extend(extra_starts)
    for idx, (x0, y0) in enumerate(starts):
        pair, trace = solve(work, x0, y0, config)
        if mode == "max":
            pair = MEigenpair(
                lam=-pair.lam,
                x=pair.x,
                y=pair.y,
                residual=pair.residual,
                converged=pair.converged,
                iterations=pair.iterations,
            )
        if pair.converged:
            results.append((pair.lam, idx, pair, trace))
        elif best_failed is None or pair.residual < best_failed[0].residual:
            best_failed = (pair, trace)
    if not results:
        pair, trace = best_failed
        raise NonConvergenceError(
            f"no start converged within k_max={config.k_max}",
            best_pair=pair,
            best_trace=trace,
        )
    results.sort(key=lambda t: (t[0] if mode == "min" else -t[0], t[1]))
    best = results[0][2]
    stationary = deduplicate([r[2] for r in results])
    return best, stationary
