"""Finite-difference eigensolver for the weighted Sturm-Liouville problem.

This module is the numerical ground truth the closed-form spectra are
checked against, so it deliberately shares no mathematics with them: the
problem -(mu R')' + mu U R = eps * w * R is discretized with second-order
flux-form differences and solved as a generalized symmetric tridiagonal
eigenproblem by bisection on the factorization inertia, followed by inverse
iteration for eigenfunctions.

The kernels are plain scalar loops, JIT-compiled when numba is importable
and run as-is otherwise (slower, identical results).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DomainError, FactorizationBreakdown, SingularCoefficient,
                     SlowConvergence)
from .radial import RadialProblem

try:  # pragma: no cover - exercised implicitly by every solve
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


__all__ = [
    "DiscreteProblem",
    "EigenResult",
    "Grid",
    "count_below",
    "count_nodes",
    "discretize",
    "eigenfunction",
    "eigenvalues",
    "oscillator_problem",
]

DEFAULT_N = 4000
BRACKET_REL = 1e-12  # bisection stops at width <= BRACKET_REL * max(1, |eps|)
SHIFT_NUDGE = 1e-14  # relative shift perturbation on pivot breakdown
MAX_BREAKDOWN_RETRIES = 3
INVIT_MAX_STEPS = 50
INVIT_TOL = 1e-10  # on the B^{-1}-norm defect, a generalized eigenvalue-error bound


@dataclass(frozen=True)
class Grid:
    """Uniform interior grid for Dirichlet boundaries at 0 and rho_max.

    Nodes are rho_j = j*h for j = 1..n_points with h = rho_max/(n_points+1);
    both boundary values are eliminated from the discrete operator.
    """

    n_points: int
    rho_max: float

    def __post_init__(self) -> None:
        if self.n_points < 100:
            raise DomainError(f"need at least 100 interior points, got {self.n_points!r}")
        if not self.rho_max > 0.0:
            raise DomainError(f"rho_max must be positive, got {self.rho_max!r}")

    @property
    def h(self) -> float:
        return self.rho_max / (self.n_points + 1)

    @property
    def rho_min(self) -> float:
        return self.h

    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_points + 1, dtype=float)


@dataclass(frozen=True)
class DiscreteProblem:
    """Symmetric tridiagonal stiffness plus positive diagonal mass."""

    diag: np.ndarray
    off: np.ndarray
    mass: np.ndarray
    grid: Grid

    @property
    def size(self) -> int:
        return self.diag.shape[0]


@dataclass(frozen=True)
class EigenResult:
    """One converged eigenpair of a DiscreteProblem.

    ``R`` is sampled on the interior nodes, normalized to unit discrete norm
    under the problem weight (sum R_j^2 w_j h = 1) with a positive first
    nonzero sample; ``index`` is the 0-based position in the ascending
    spectrum, recovered from the factorization inertia just below epsilon.
    """

    epsilon: float
    R: np.ndarray
    rho: np.ndarray
    index: int
    provenance: str = "numeric"


# ---------------------------------------------------------------------------
# kernels


@njit(cache=True)
def _pivot_count(diag, off, mass, shift):
    """Negative-pivot count of the LDL^T factorization of (A - shift*B).

    Returns -1 on an exact zero (or NaN) pivot; the caller perturbs the
    shift.  By Sylvester's law of inertia the count equals the number of
    generalized eigenvalues below ``shift``.
    """
    n = diag.shape[0]
    count = 0
    d = diag[0] - shift * mass[0]
    if d == 0.0 or d != d:
        return -1
    if d < 0.0:
        count += 1
    for j in range(1, n):
        d = diag[j] - shift * mass[j] - off[j - 1] * off[j - 1] / d
        if d == 0.0 or d != d:
            return -1
        if d < 0.0:
            count += 1
    return count


@njit(cache=True)
def _factor(diag, off, mass, shift, d, lower):
    """LDL^T factors of (A - shift*B); False on zero pivot."""
    n = diag.shape[0]
    dj = diag[0] - shift * mass[0]
    if dj == 0.0 or dj != dj:
        return False
    d[0] = dj
    for j in range(1, n):
        lj = off[j - 1] / d[j - 1]
        lower[j - 1] = lj
        dj = diag[j] - shift * mass[j] - lj * off[j - 1]
        if dj == 0.0 or dj != dj:
            return False
        d[j] = dj
    return True


@njit(cache=True)
def _solve_factored(d, lower, x):
    """In-place solve of L D L^T x = b given b in x."""
    n = d.shape[0]
    for j in range(1, n):
        x[j] -= lower[j - 1] * x[j - 1]
    x[n - 1] /= d[n - 1]
    for j in range(n - 2, -1, -1):
        x[j] = x[j] / d[j] - lower[j] * x[j + 1]


# ---------------------------------------------------------------------------
# assembly


def discretize(problem: RadialProblem, grid: Grid) -> DiscreteProblem:
    """Flux-form second-order discretization with Dirichlet boundaries.

    Off-diagonal entries are -mu_{j+1/2}/h^2, diagonal entries
    (mu_{j-1/2} + mu_{j+1/2})/h^2 + mu_j U_j, and the mass diagonal is the
    weight at the nodes.
    """
    if grid.rho_max > problem.rho_max * (1.0 + 1e-12):
        raise DomainError(
            f"grid end {grid.rho_max!r} exceeds problem domain {problem.rho_max!r}")
    h = grid.h
    rho = grid.nodes()
    mu_mid = np.asarray(problem.mu(np.concatenate(([0.5 * h], rho + 0.5 * h))), dtype=float)
    mu_node = np.asarray(problem.mu(rho), dtype=float)
    u_node = np.asarray(problem.U(rho), dtype=float)
    w_node = np.asarray(problem.weight(rho), dtype=float)
    for name, arr in (("mu", mu_mid), ("mu", mu_node), ("U", u_node), ("weight", w_node)):
        if not np.all(np.isfinite(arr)):
            raise SingularCoefficient(f"{name} is not finite on the grid")
    if np.any(w_node <= 0.0) or np.any(mu_mid <= 0.0):
        raise SingularCoefficient("mu and weight must stay positive on the grid")

    diag = (mu_mid[:-1] + mu_mid[1:]) / h**2 + mu_node * u_node
    off = -mu_mid[1:-1] / h**2
    return DiscreteProblem(diag=diag, off=off, mass=w_node, grid=grid)


def oscillator_problem(rho_max: float = 12.0) -> RadialProblem:
    """Half-line unit-oscillator calibration case: -R'' + x^2 R = eps R.

    With Dirichlet conditions at 0 this keeps exactly the odd oscillator
    levels eps = 3, 7, 11, ... which calibrates solver and grid defaults
    against a textbook closed form that shares nothing with the radial
    assembly.
    """
    return RadialProblem(
        mu=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        U=lambda x: np.asarray(x, dtype=float) ** 2,
        weight=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        origin_exponent=1.0,
        rho_max=rho_max,
        label="oscillator-calibration",
    )


# ---------------------------------------------------------------------------
# eigen machinery


def count_below(dp: DiscreteProblem, shift: float, trace: list | None = None) -> int:
    """Number of generalized eigenvalues strictly below ``shift``.

    Zero pivots are handled by nudging the shift by 1e-14 relative, up to
    three times, after which FactorizationBreakdown is raised.
    """
    step = SHIFT_NUDGE * max(1.0, abs(shift))
    for attempt in range(MAX_BREAKDOWN_RETRIES + 1):
        count = _pivot_count(dp.diag, dp.off, dp.mass, shift + attempt * step)
        if count >= 0:
            if trace is not None:
                trace.append((shift + attempt * step, count))
            return count
    raise FactorizationBreakdown(
        f"zero pivot persisted near shift {shift!r} after {MAX_BREAKDOWN_RETRIES} retries")


def _search_bounds(dp: DiscreteProblem) -> tuple[float, float]:
    # Gershgorin bounds of B^{-1}A contain the whole generalized spectrum
    radius = np.zeros_like(dp.diag)
    radius[:-1] += np.abs(dp.off)
    radius[1:] += np.abs(dp.off)
    lo = float(np.min((dp.diag - radius) / dp.mass))
    hi = float(np.max((dp.diag + radius) / dp.mass))
    pad = 1e-8 * max(1.0, abs(lo), abs(hi))
    return lo - pad, hi + pad


def eigenvalues(dp: DiscreteProblem, count: int, trace: list | None = None) -> np.ndarray:
    """The ``count`` smallest generalized eigenvalues, ascending.

    Each eigenvalue is isolated by bisection on the inertia of
    stiffness - eps*mass until the bracket width drops below
    1e-12 * max(1, |eps|).  Passing a list as ``trace`` records every
    (shift, inertia) evaluation for diagnostics.
    """
    if not 1 <= count <= dp.size:
        raise DomainError(f"count must be in [1, {dp.size}], got {count!r}")
    lo0, hi0 = _search_bounds(dp)
    out = np.empty(count, dtype=float)
    for index in range(count):
        lo, hi = lo0, hi0
        while True:
            mid = 0.5 * (lo + hi)
            if hi - lo <= BRACKET_REL * max(1.0, abs(mid)):
                break
            if count_below(dp, mid, trace) >= index + 1:
                hi = mid
            else:
                lo = mid
        out[index] = 0.5 * (lo + hi)
    return out


def count_nodes(R: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Interior sign changes, ignoring samples below rel_floor * max|R|."""
    R = np.asarray(R, dtype=float)
    keep = R[np.abs(R) > rel_floor * np.max(np.abs(R))]
    return int(np.count_nonzero(np.diff(np.sign(keep)) != 0))


def eigenfunction(dp: DiscreteProblem, epsilon: float) -> EigenResult:
    """Inverse-iteration eigenfunction at an isolated eigenvalue estimate.

    Convergence is declared when the B^{-1}-norm of (A - eps B) x over the
    B-norm of x (a rigorous bound on the eigenvalue error) falls below
    1e-10 * max(1, |eps|) within 50 iterations.
    """
    n = dp.size
    d = np.empty(n, dtype=float)
    lower = np.empty(n - 1, dtype=float)
    shift = epsilon
    step = SHIFT_NUDGE * max(1.0, abs(epsilon))
    for attempt in range(MAX_BREAKDOWN_RETRIES + 1):
        if _factor(dp.diag, dp.off, dp.mass, shift, d, lower):
            break
        shift = epsilon + (attempt + 1) * step
    else:
        raise FactorizationBreakdown(
            f"zero pivot persisted near shift {epsilon!r} after {MAX_BREAKDOWN_RETRIES} retries")

    h = dp.grid.h
    x = np.ones(n, dtype=float)
    x /= math.sqrt(h * float(np.sum(x * x * dp.mass)))
    tol = INVIT_TOL * max(1.0, abs(epsilon))
    for _ in range(INVIT_MAX_STEPS):
        y = (dp.mass * x).copy()
        _solve_factored(d, lower, y)
        y /= math.sqrt(h * float(np.sum(y * y * dp.mass)))
        defect = _apply_shifted(dp, epsilon, y)
        err = math.sqrt(float(np.sum(defect * defect / dp.mass))
                        / float(np.sum(y * y * dp.mass)))
        x = y
        if err <= tol:
            break
    else:
        raise SlowConvergence(
            f"inverse iteration stalled at defect {err:.3e} (tol {tol:.3e})")

    first = np.flatnonzero(np.abs(x) > 1e-8 * np.max(np.abs(x)))[0]
    if x[first] < 0.0:
        x = -x
    index = count_below(dp, epsilon - 1e-11 * max(1.0, abs(epsilon)))
    return EigenResult(epsilon=float(epsilon), R=x, rho=dp.grid.nodes(), index=index)


def _apply_shifted(dp: DiscreteProblem, epsilon: float, x: np.ndarray) -> np.ndarray:
    out = (dp.diag - epsilon * dp.mass) * x
    out[:-1] += dp.off * x[1:]
    out[1:] += dp.off * x[:-1]
    return out
