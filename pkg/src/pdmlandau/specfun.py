"""Power-series special functions used by the closed-form spectra.

Two families are implemented from their defining ODEs:

* Kummer's confluent hypergeometric function 1F1(a; b; x), which carries the
  quadratic-mass-profile eigenfunctions, and
* the biconfluent Heun function H_B(alpha, beta, gamma, delta; r), which
  carries the linear-mass-profile eigenfunctions.

Both are summed with compensated (Kahan) accumulation and a conservative
stopping rule: the sum ends once two consecutive terms fall below
1e-16 times the running partial sum, which guards against terms that merely
pass through zero.  Exactly terminating (polynomial) cases are detected and
reported with a zero truncation estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence, PoleError

__all__ = [
    "HeunParams",
    "SeriesResult",
    "TerminationReport",
    "heun_biconfluent",
    "heun_coefficients",
    "heun_termination_check",
    "kummer_1f1",
]

MAX_TERMS = 10000  # series budget; beyond this the argument is out of practical range
STOP_REL = 1e-16  # two consecutive terms under STOP_REL * |partial sum| end the series
COEFF_ZERO_REL = 1e-10  # relative floor for the termination-condition coefficient test


@dataclass(frozen=True)
class SeriesResult:
    """Value of a summed series plus bookkeeping.

    ``terms_used`` counts evaluated terms (polynomial cases stop right after
    the last nonzero one); ``truncation_estimate`` is the magnitude of the
    final discarded term, zero for exact termination.
    """

    value: float
    terms_used: int
    truncation_estimate: float


@dataclass(frozen=True)
class HeunParams:
    """Parameter quadruple (alpha, beta, gamma, delta) of the biconfluent equation."""

    alpha: float
    beta: float
    gamma: float
    delta: float


@dataclass(frozen=True)
class TerminationReport:
    """Outcome of the two polynomial-termination conditions at level n."""

    first_condition: bool  # gamma - 2 - alpha == 2n (within 1e-10)
    coefficient_condition: bool  # A_{n+1} == 0 (relative to max |A_k|, k <= n)
    a_next_magnitude: float


def _check_real(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if isinstance(value, complex):
            raise DomainError(f"{name} must be real, got complex {value!r}")
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def kummer_1f1(a: float, b: float, x: float) -> SeriesResult:
    """Confluent hypergeometric function 1F1(a; b; x) by direct summation.

    Parameters
    ----------
    a, b : float
        Series parameters.  ``b`` must not be zero or a negative integer
        unless ``a`` is a negative integer of smaller magnitude, in which
        case the series terminates before the pole is reached.
    x : float
        Argument.  Negative arguments are evaluated through Kummer's
        transformation 1F1(a; b; x) = exp(x) * 1F1(b - a; b; -x) so that
        the summed series has a non-negative argument.

    Returns
    -------
    SeriesResult

    Raises
    ------
    PoleError
        If a Pochhammer factor (b)_k vanishes before the series terminates.
    NoConvergence
        If the term budget is exhausted or the partial sum leaves the
        finite range.
    """
    _check_real(a=a, b=b, x=x)
    if x < 0.0:
        # sum the stable all-positive-argument side of Kummer's relation
        inner = kummer_1f1(b - a, b, -x)
        scale = math.exp(x)
        return SeriesResult(scale * inner.value, inner.terms_used,
                            scale * inner.truncation_estimate)

    total = 1.0
    comp = 0.0  # Kahan compensation
    term = 1.0
    small_streak = 0
    terms_used = 1
    for k in range(MAX_TERMS):
        if a + k == 0.0:
            # (a)_{k+1} vanishes: every further term is exactly zero
            return SeriesResult(total + comp, terms_used, 0.0)
        if b + k == 0.0:
            raise PoleError(f"1F1 pole: b={b!r} hit a nonpositive integer at term {k + 1}")
        term *= (a + k) / (b + k) * x / (k + 1.0)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        terms_used = k + 2
        if not math.isfinite(total):
            raise NoConvergence(f"1F1({a!r}, {b!r}, {x!r}) overflowed after {terms_used} terms")
        if abs(term) < STOP_REL * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return SeriesResult(total, terms_used, abs(term))
        else:
            small_streak = 0
    raise NoConvergence(f"1F1({a!r}, {b!r}, {x!r}) did not settle in {MAX_TERMS} terms")


def heun_coefficients(p: HeunParams, count: int) -> np.ndarray:
    """Taylor coefficients A_0 .. A_count of the analytic biconfluent solution.

    The three-term recurrence follows from inserting sum A_k r^k into the
    biconfluent equation

        r u'' + (1 + alpha - beta r - 2 r^2) u'
              + ((gamma - 2 - alpha) r - (delta + (1 + alpha) beta) / 2) u = 0

    and collecting powers of r:

        (k+2)(k+2+alpha) A_{k+2} = (beta (k+1) + (delta + beta (1+alpha)) / 2) A_{k+1}
                                   - (gamma - 2 - alpha - 2k) A_k
    """
    if p.alpha <= -1.0:
        raise DomainError(f"alpha must exceed -1, got {p.alpha!r}")
    half = 0.5 * (p.delta + p.beta * (1.0 + p.alpha))
    A = np.empty(count + 1, dtype=float)
    A[0] = 1.0
    if count >= 1:
        A[1] = half / (1.0 + p.alpha)
    for k in range(count - 1):
        A[k + 2] = ((p.beta * (k + 1.0) + half) * A[k + 1]
                    - (p.gamma - 2.0 - p.alpha - 2.0 * k) * A[k]) / ((k + 2.0) * (k + 2.0 + p.alpha))
    return A


def heun_biconfluent(alpha: float, beta: float, gamma: float, delta: float,
                     r: float) -> SeriesResult:
    """Biconfluent Heun function H_B(alpha, beta, gamma, delta; r), r >= 0.

    Sums the analytic-at-the-origin Frobenius solution normalized to
    H_B(0) = 1 using the recurrence in :func:`heun_coefficients`.  When both
    polynomial-termination conditions hold the recurrence yields exact zeros
    from degree n + 1 on and the sum is reported with zero truncation.
    """
    _check_real(alpha=alpha, beta=beta, gamma=gamma, delta=delta, r=r)
    if alpha <= -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    if r < 0.0:
        raise DomainError(f"r must be non-negative, got {r!r}")
    if r == 0.0:
        return SeriesResult(1.0, 1, 0.0)
    half = 0.5 * (delta + beta * (1.0 + alpha))

    # track the terms T_k = A_k r^k themselves: A_k underflows and r^k
    # overflows long before their product stops mattering
    t_prev = 1.0  # T_k
    t_cur = half / (1.0 + alpha) * r  # T_{k+1}
    total = 1.0
    comp = 0.0
    small_streak = 0
    terms_used = 1
    for k in range(MAX_TERMS):
        term = t_cur
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        terms_used = k + 2
        if not math.isfinite(total):
            raise NoConvergence(
                f"H_B series overflowed at r={r!r} after {terms_used} terms")
        t_next = (r * (beta * (k + 1.0) + half) * t_cur
                  - r * r * (gamma - 2.0 - alpha - 2.0 * k) * t_prev) \
            / ((k + 2.0) * (k + 2.0 + alpha))
        if t_cur == 0.0 and t_next == 0.0:
            # two consecutive zero coefficients force all later ones to zero
            return SeriesResult(total, terms_used, 0.0)
        t_prev, t_cur = t_cur, t_next
        if abs(term) < STOP_REL * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return SeriesResult(total, terms_used, abs(term))
        else:
            small_streak = 0
    raise NoConvergence(f"H_B series did not settle at r={r!r} in {MAX_TERMS} terms")


def heun_termination_check(p: HeunParams, n: int) -> TerminationReport:
    """Evaluate both polynomial-termination conditions at level n.

    The series reduces to a degree-n polynomial only when the parameter
    condition gamma - 2 - alpha = 2n *and* the coefficient condition
    A_{n+1} = 0 hold together; the first alone fixes the eigenvalue scale
    while the second generically fails, so callers report rather than
    assume exactness.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n!r}")
    A = heun_coefficients(p, n + 1)
    scale = float(np.max(np.abs(A[: n + 1])))
    a_next = float(abs(A[n + 1]))
    return TerminationReport(
        first_condition=abs(p.gamma - 2.0 - p.alpha - 2.0 * n) <= 1e-10,
        coefficient_condition=a_next <= COEFF_ZERO_REL * max(scale, 1e-300),
        a_next_magnitude=a_next,
    )


# ---------------------------------------------------------------------------
# array evaluation for eigenfunction sampling


def _series_values(scaled_coeff_next, x: np.ndarray,
                   limit: int | None = None) -> np.ndarray:
    """Sum a power series over the scaled grid x = r / r_scale, |x| <= 1.

    ``scaled_coeff_next(k)`` returns the coefficient of x^k, i.e. the raw
    coefficient times r_scale^k.  Working at the scale of the outermost
    radius keeps every factor representable: raw coefficients underflow and
    raw powers overflow long before their product (the term) stops
    mattering.  Stops once two consecutive terms are below STOP_REL
    relative to the partial sums everywhere on the grid; ``limit`` caps the
    number of terms regardless (for series known to terminate, where the
    rounded coefficients beyond the cutoff seed the unbounded solution).
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    power = np.ones_like(x)
    small_streak = 0
    for k in range(MAX_TERMS if limit is None else min(limit, MAX_TERMS)):
        d = scaled_coeff_next(k)
        if k > 0:
            power = power * x
        term = d * power
        total = total + term
        if not np.all(np.isfinite(total)):
            raise NoConvergence(f"series overflowed at term {k + 1}")
        # relative to the overall function scale: a per-node test would stall
        # at zero crossings of the partial sums
        scale = max(float(np.max(np.abs(total))), 1e-300)
        if float(np.max(np.abs(term))) <= STOP_REL * scale:
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    if limit is not None:
        return total
    raise NoConvergence(f"series did not settle in {MAX_TERMS} terms")


def heun_values(p: HeunParams, r, terms: int | None = None) -> np.ndarray:
    """Vectorized H_B over an array of radii (shared coefficient stream).

    Absolute accuracy is bounded by machine epsilon times the largest
    intermediate term; for non-terminating parameter sets the terms reach
    exp(r^2 + |beta| r) while the sum can stay O(1), so digits are lost at
    large radii.  Terminating (polynomial) cases are exact to rounding
    provided ``terms`` pins the cutoff: with parameters that satisfy the
    termination conditions only to rounding, the open-ended sum drifts onto
    the exponentially growing second solution.
    """
    if p.alpha <= -1.0:
        raise DomainError(f"alpha must exceed -1, got {p.alpha!r}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise DomainError("r must be non-negative")
    s = float(np.max(r, initial=0.0))
    if s == 0.0:
        return np.ones_like(r)
    half = 0.5 * (p.delta + p.beta * (1.0 + p.alpha))
    state = {"prev": 1.0, "cur": None}

    def scaled_coeff(k: int) -> float:
        # D_k = A_k s^k via the recurrence with factors s and s^2
        if k == 0:
            return 1.0
        if k == 1:
            state["cur"] = half / (1.0 + p.alpha) * s
            return state["cur"]
        j = k - 2
        nxt = (s * (p.beta * (j + 1.0) + half) * state["cur"]
               - s * s * (p.gamma - 2.0 - p.alpha - 2.0 * j) * state["prev"]) \
            / (k * (k + p.alpha))
        state["prev"], state["cur"] = state["cur"], nxt
        return nxt

    return _series_values(scaled_coeff, r / s, limit=terms)


def kummer_values(a: float, b: float, x) -> np.ndarray:
    """Vectorized 1F1 over an array of non-negative arguments."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError("x must be non-negative for array evaluation")
    s = float(np.max(x, initial=0.0))
    if s == 0.0:
        return np.ones_like(x)
    state = {"c": 1.0}

    def scaled_coeff(k: int) -> float:
        if k == 0:
            return 1.0
        if b + k - 1.0 == 0.0 and state["c"] != 0.0:
            raise PoleError(f"1F1 pole: b={b!r} hit a nonpositive integer at term {k}")
        state["c"] = state["c"] * s * (a + k - 1.0) / ((b + k - 1.0) * k) \
            if state["c"] != 0.0 else 0.0
        return state["c"]

    return _series_values(scaled_coeff, x / s)
