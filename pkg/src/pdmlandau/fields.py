"""Field configuration for a neutral carrier with an electric quadrupole moment.

Everything here works in natural units (hbar = 2*m0 = c = 1).  The carrier
moves in the z = 0 plane of a magnetic field B = (B0/2) * rho^2 z_hat whose
interaction with the diagonal quadrupole tensor (Q, Q, -2Q) reduces to a
minimal coupling with the effective azimuthal vector potential
A_eff = -Q*B0*rho, i.e. a uniform effective field -2*Q*B0 along z.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonUniformField

__all__ = [
    "ElectricFieldKind",
    "PhysicalParams",
    "QuadrupoleTensor",
    "effective_magnetic_field",
    "effective_scalar_potential",
    "effective_vector_potential",
    "electric_field_radial",
    "landau_condition_check",
    "require_landau_coupling",
]


class ElectricFieldKind(enum.Enum):
    """Radial electric field variants the closed-form solutions cover."""

    NONE = "none"
    COULOMB = "coulomb"  # E_rho = lam / rho
    LINEAR = "linear"  # E_rho = lam * rho / 2


@dataclass(frozen=True)
class QuadrupoleTensor:
    """Diagonal, traceless quadrupole tensor built from a single strength Q."""

    Q: float

    @property
    def diagonal(self) -> tuple[float, float, float]:
        return (self.Q, self.Q, -2.0 * self.Q)

    @property
    def trace(self) -> float:
        d = self.diagonal
        return d[0] + d[1] + d[2]


@dataclass(frozen=True)
class PhysicalParams:
    """Couplings shared by every scenario.

    Q    quadrupole strength
    B0   magnetic gradient amplitude
    eta  mass-profile amplitude, m(rho) = eta * rho**p; must be positive
    lam  electric field amplitude (0 when no electric field is applied)
    """

    Q: float
    B0: float
    eta: float = 1.0
    lam: float = 0.0

    def __post_init__(self) -> None:
        for name in ("Q", "B0", "eta", "lam"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.eta <= 0.0:
            raise DomainError(f"eta must be positive, got {self.eta!r}")


def require_landau_coupling(params: PhysicalParams) -> None:
    """Reject parameter sets with Q*B0 <= 0.

    Every change of variable behind the closed-form spectra rescales rho by
    sqrt(Q*B0), so the bound-state machinery needs a strictly positive
    product.  Field-level helpers below stay valid for any sign.
    """
    if not params.Q * params.B0 > 0.0:
        raise DomainError(
            f"Q*B0 must be positive for bound states, got Q={params.Q!r} B0={params.B0!r}"
        )


def effective_vector_potential(Q: float, B0: float, rho):
    """Azimuthal effective vector potential A_eff = -Q*B0*rho."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0.0):
        raise DomainError("rho must be non-negative")
    out = -Q * B0 * rho
    return float(out) if out.ndim == 0 else out


def effective_magnetic_field(Q: float, B0: float) -> float:
    """Uniform effective field along z: curl(A_eff) = -2*Q*B0."""
    return -2.0 * Q * B0


def landau_condition_check(
    Q: float,
    B0: float,
    a_phi=None,
    radii=None,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-12,
) -> dict:
    """Verify that the azimuthal potential produces a uniform z field.

    Evaluates (1/rho) d(rho * A_phi)/drho by centered differences on a radius
    sample and checks the spread around -2*Q*B0.  ``a_phi`` defaults to the
    built-in effective potential; passing a custom profile lets callers vet
    future field configurations, and a profile with a non-constant curl
    raises :class:`NonUniformField`.

    Returns {"uniform": True, "value": measured_constant}.
    """
    if a_phi is None:
        def a_phi(r):
            return effective_vector_potential(Q, B0, r)

    if radii is None:
        radii = np.linspace(0.5, 10.0, 32)
    radii = np.asarray(radii, dtype=float)

    expected = effective_magnetic_field(Q, B0)
    # step ~1e-3: centered differences are exact for the built-in rho^2 flux,
    # so the only error left is roundoff, far below the 1e-10 tolerance
    step = 1e-3 * np.maximum(1.0, radii)
    hi = radii + step
    lo = radii - step
    curl = (hi * np.asarray(a_phi(hi)) - lo * np.asarray(a_phi(lo))) / (2.0 * step * radii)

    tol = max(rel_tol * abs(expected), abs_tol)
    spread = float(np.max(np.abs(curl - expected)))
    if spread > tol:
        raise NonUniformField(
            f"curl(A_eff) deviates from {expected!r} by up to {spread:.3e} (tol {tol:.3e})"
        )
    return {"uniform": True, "value": float(np.mean(curl))}


def electric_field_radial(kind: ElectricFieldKind, lam: float, rho):
    """Radial electric field amplitude E_rho(rho) for the given variant."""
    rho = np.asarray(rho, dtype=float)
    if kind is ElectricFieldKind.NONE:
        out = np.zeros_like(rho)
    elif kind is ElectricFieldKind.COULOMB:
        if np.any(rho <= 0.0):
            raise DomainError("Coulomb-type field requires rho > 0")
        out = lam / rho
    elif kind is ElectricFieldKind.LINEAR:
        if np.any(rho < 0.0):
            raise DomainError("rho must be non-negative")
        out = lam * rho / 2.0
    else:  # pragma: no cover - enum is closed
        raise DomainError(f"unknown field kind {kind!r}")
    return float(out) if out.ndim == 0 else out


def effective_scalar_potential(Q: float, kind: ElectricFieldKind, lam: float, rho):
    """Quadrupole-field interaction energy V_eff(rho) = -Q * dE_rho/drho.

    Coulomb variant: +Q*lam/rho**2 (repulsive core); linear variant: the
    constant -Q*lam/2; no field: 0.
    """
    rho = np.asarray(rho, dtype=float)
    if kind is ElectricFieldKind.NONE:
        out = np.zeros_like(rho)
    elif kind is ElectricFieldKind.COULOMB:
        if np.any(rho <= 0.0):
            raise DomainError("Coulomb-type potential requires rho > 0")
        out = Q * lam / rho**2
    elif kind is ElectricFieldKind.LINEAR:
        out = np.full_like(rho, -Q * lam / 2.0)
    else:  # pragma: no cover - enum is closed
        raise DomainError(f"unknown field kind {kind!r}")
    return float(out) if out.ndim == 0 else out
