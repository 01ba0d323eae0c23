"""Radial equation assembly for power-law position-dependent masses.

For a mass profile g(rho) = eta * rho**p the planar-motion radial equation

    R'' - (g'/g - 1/rho) R'
       - (1/4)(g''/g + g'/(rho g)) R + (7/16)(g'/g)^2 R
       + g (epsilon - V_eff) R - (m^2/rho^2 + Q^2 B0^2 rho^2
       - 2 Q B0 m + kz^2) R = 0

multiplied by mu(rho) = rho / g(rho) becomes the weighted Sturm-Liouville
form

    -(mu R')' + mu U R = epsilon * rho * R,

so the eigenvalue enters only through the universal weight rho = mu * g and a
single generalized eigensolver covers every profile and field variant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, GridTooCoarse, UnsupportedProfile
from .fields import ElectricFieldKind, PhysicalParams, effective_scalar_potential

__all__ = [
    "PdmProfile",
    "QuantumNumbers",
    "RadialProblem",
    "assemble",
    "first_derivative_coefficient",
    "residual",
]


@dataclass(frozen=True)
class PdmProfile:
    """Mass profile g(rho) = eta * rho**power with power in {1, 2}."""

    eta: float
    power: int

    def __post_init__(self) -> None:
        if self.power not in (1, 2):
            raise UnsupportedProfile(
                f"power must be 1 or 2, got {self.power!r}; closed-form "
                "origin exponents exist only for these profiles")
        if not self.eta > 0.0:
            raise DomainError(f"eta must be positive, got {self.eta!r}")

    def g(self, rho):
        out = self.eta * np.asarray(rho, dtype=float) ** self.power
        return float(out) if out.ndim == 0 else out

    def g_prime(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = self.eta * self.power * rho ** (self.power - 1)
        return float(out) if out.ndim == 0 else out

    def g_second(self, rho):
        rho = np.asarray(rho, dtype=float)
        value = 0.0 if self.power == 1 else 2.0 * self.eta
        out = np.full_like(rho, value)
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial number, magnetic number and axial wavenumber of one state."""

    n_rho: int
    m: int
    k_z: float = 0.0

    def __post_init__(self) -> None:
        if self.n_rho < 0:
            raise DomainError(f"n_rho must be non-negative, got {self.n_rho!r}")


@dataclass(frozen=True)
class RadialProblem:
    """Symmetrized Sturm-Liouville data on the half-line (0, rho_max].

    ``mu``, ``U`` and ``weight`` accept scalars or arrays; ``origin_exponent``
    is the leading power of the regular solution at rho -> 0, which justifies
    a plain Dirichlet condition at the origin.
    """

    mu: Callable
    U: Callable
    weight: Callable
    origin_exponent: float
    rho_max: float
    label: str = "custom"

    def __post_init__(self) -> None:
        if not self.rho_max > 0.0:
            raise DomainError(f"rho_max must be positive, got {self.rho_max!r}")


def default_rho_max(Q: float, B0: float) -> float:
    # Gaussian decay scale: tails of the first few levels are < 1e-20 here
    return 12.0 / np.sqrt(Q * B0)


def first_derivative_coefficient(profile: PdmProfile, rho):
    """Coefficient of R' when the equation is written as R'' + c(rho) R' + ... = 0.

    c = -(g'/g - 1/rho): identically zero for the linear profile, -1/rho for
    the quadratic one.
    """
    rho = np.asarray(rho, dtype=float)
    # g'/g = p/rho, so c = (1 - p)/rho: 0 for p=1, -1/rho for p=2
    out = (1.0 - profile.power) / rho
    return float(out) if out.ndim == 0 else out


def assemble(profile: PdmProfile, params: PhysicalParams, kind: ElectricFieldKind,
             qn: QuantumNumbers, rho_max: float | None = None) -> RadialProblem:
    """Build the weighted Sturm-Liouville problem for one (m, k_z) channel.

    The effective potential collects the profile curvature terms, the
    centrifugal barrier, the magnetic confinement and the electric-field
    interaction:

        U = (1/4)(g''/g + g'/(rho g)) - (7/16)(g'/g)^2 + g * V_eff
            + m^2/rho^2 + Q^2 B0^2 rho^2 - 2 Q B0 m + k_z^2

    For p = 1 this reduces the centrifugal coefficient to m^2 - 3/16 and for
    p = 2 to m^2 - 3/4.  ``rho_max`` overrides the default Gaussian-decay
    domain; near-threshold states (omega -> 0) need a wider box.
    """
    if profile.eta != params.eta:
        raise DomainError(
            f"profile.eta={profile.eta!r} disagrees with params.eta={params.eta!r}")
    Q, B0, lam = params.Q, params.B0, params.lam
    m = float(qn.m)
    kz2 = qn.k_z * qn.k_z
    p = profile.power

    def U(rho):
        rho = np.asarray(rho, dtype=float)
        g = profile.g(rho)
        gp_over_g = p / rho
        gpp_over_g = p * (p - 1.0) / rho**2
        curvature = 0.25 * (gpp_over_g + gp_over_g / rho) - (7.0 / 16.0) * gp_over_g**2
        v_eff = effective_scalar_potential(Q, kind, lam, rho)
        out = (curvature + g * v_eff + m * m / rho**2
               + (Q * B0) ** 2 * rho**2 - 2.0 * Q * B0 * m + kz2)
        return float(out) if out.ndim == 0 else out

    def mu(rho):
        rho = np.asarray(rho, dtype=float)
        out = rho / profile.g(rho)
        return float(out) if out.ndim == 0 else out

    def weight(rho):
        rho = np.asarray(rho, dtype=float)
        out = rho * np.ones_like(rho)
        return float(out) if out.ndim == 0 else out

    if p == 1:
        ell = np.sqrt(m * m + 1.0 / 16.0)
        exponent = ell + 0.5
    else:
        ell = np.sqrt(m * m + 0.25)
        exponent = ell + 1.0

    return RadialProblem(
        mu=mu,
        U=U,
        weight=weight,
        origin_exponent=float(exponent),
        rho_max=default_rho_max(Q, B0) if rho_max is None else float(rho_max),
        label=f"p{p}-{kind.value}-m{qn.m}",
    )


def residual(problem: RadialProblem, epsilon: float, rho: np.ndarray,
             R: np.ndarray, min_rho: float = 0.0) -> float:
    """Max scaled defect of the Sturm-Liouville form over interior samples.

    Evaluates |-(mu R')' + mu U R - epsilon w R| / (1 + |epsilon w R|) with
    flux-form centered differences on the uniformly spaced samples and
    returns the maximum over nodes with both neighbors present and
    rho >= min_rho.

    Near a singular origin the finite-difference truncation of the
    centrifugal terms dominates the defect no matter how fine the grid, so
    consistency checks against closed-form eigenfunctions should mask the
    first few tenths of the radial range via ``min_rho``; eigenvalues are
    unaffected because the weighted amplitude vanishes there.
    """
    rho = np.asarray(rho, dtype=float)
    R = np.asarray(R, dtype=float)
    if rho.shape != R.shape or rho.ndim != 1:
        raise DomainError("rho and R must be matching 1-D arrays")
    if rho.size < 6:
        raise GridTooCoarse(f"need at least 4 interior samples, got {max(rho.size - 2, 0)}")
    h = rho[1] - rho[0]
    if not np.allclose(np.diff(rho), h, rtol=1e-10, atol=1e-14):
        raise DomainError("residual expects a uniformly spaced grid")

    mu_plus = problem.mu(rho[1:-1] + 0.5 * h)
    mu_minus = problem.mu(rho[1:-1] - 0.5 * h)
    flux = (mu_plus * (R[2:] - R[1:-1]) - mu_minus * (R[1:-1] - R[:-2])) / h**2
    eps_term = epsilon * problem.weight(rho[1:-1]) * R[1:-1]
    defect = -flux + problem.mu(rho[1:-1]) * problem.U(rho[1:-1]) * R[1:-1] - eps_term
    scaled = np.abs(defect) / (1.0 + np.abs(eps_term))
    mask = rho[1:-1] >= min_rho
    if not np.any(mask):
        raise DomainError(f"min_rho={min_rho!r} masks every interior sample")
    return float(np.max(scaled[mask]))
