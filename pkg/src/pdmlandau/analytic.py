"""Closed-form spectra and eigenfunctions for the two solvable mass profiles.

Six scenarios are covered: the linear profile g = eta*rho (series solution of
biconfluent Heun type) and the quadratic profile g = eta*rho**2 (confluent
hypergeometric type), each with no electric field, a Coulomb-type field or a
linear-type field.

For the linear profile the eigenvalue formula rests on the first of the two
polynomial-termination conditions of the Heun series only; the coefficient
condition A_{n+1} = 0 generically fails, so the returned pairs carry a
``heun_terminates`` flag and downstream comparisons treat these values as
quasi-exact (measured against the numeric solver, never assumed).  For the
quadratic profile the series terminates exactly and the formulas are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotNormalizable
from .fields import ElectricFieldKind, PhysicalParams, require_landau_coupling
from .radial import QuantumNumbers
from .specfun import (HeunParams, heun_termination_check, heun_values,
                      kummer_values)

__all__ = [
    "AnalyticEigenpair",
    "Scenario",
    "Validity",
    "spectrum_model1",
    "spectrum_model2",
    "shift_property_check",
]


@dataclass(frozen=True)
class Validity:
    """Normalizability plus, for the linear profile, series termination."""

    normalizable: bool
    heun_terminates: bool | None = None  # None for the quadratic profile


@dataclass(frozen=True)
class AnalyticEigenpair:
    """Closed-form eigenvalue with its (unnormalized) radial eigenfunction."""

    epsilon: float
    ell_tilde: float
    eigenfunction: Callable
    validity: Validity
    heun: HeunParams | None = None
    provenance: str = "analytic"


@dataclass(frozen=True)
class Scenario:
    """One (profile, field kind, params) combination of the solvable family."""

    power: int
    kind: ElectricFieldKind
    params: PhysicalParams

    def __post_init__(self) -> None:
        if self.power not in (1, 2):
            from .errors import UnsupportedProfile

            raise UnsupportedProfile(f"power must be 1 or 2, got {self.power!r}")


def spectrum_model1(params: PhysicalParams, kind: ElectricFieldKind,
                    qn: QuantumNumbers) -> AnalyticEigenpair:
    """Linear-profile (g = eta*rho) closed-form level and eigenfunction.

    eps = ((2 Q B0)^{3/2} / eta) * sqrt(1 + n - m + sqrt(m^2 + 1/16)
          + k_z^2 / (2 Q B0)), shifted by -lam*Q/2 for the linear-type
    electric field; the Coulomb-type field leaves the levels unchanged and
    only reparametrizes the eigenfunction.
    """
    require_landau_coupling(params)
    Q, B0, eta, lam = params.Q, params.B0, params.eta, params.lam
    qb = Q * B0
    m = float(qn.m)
    n = qn.n_rho
    ell = math.sqrt(m * m + 1.0 / 16.0)
    bracket = 1.0 + n - m + ell + qn.k_z**2 / (2.0 * qb)
    if bracket < 0.0:
        raise NotNormalizable(
            f"negative level bracket {bracket!r} for m={qn.m}, n={n}, k_z={qn.k_z}")
    base = (2.0 * qb) ** 1.5 / eta * math.sqrt(bracket)
    epsilon = base - lam * Q / 2.0 if kind is ElectricFieldKind.LINEAR else base

    # the combination eta*eps (+ eta*lam*Q/2 for the linear field) that
    # multiplies rho in the radial equation always equals eta*base
    drift = eta * base
    alpha = 2.0 * ell
    beta = -drift / qb**1.5
    delta = 2.0 * eta * lam * Q / math.sqrt(qb) if kind is ElectricFieldKind.COULOMB else 0.0
    gamma = beta * beta / 4.0 + (2.0 * qb * m - qn.k_z**2) / qb
    hp = HeunParams(alpha=alpha, beta=beta, gamma=gamma, delta=delta)
    report = heun_termination_check(hp, n)
    terminates = report.first_condition and report.coefficient_condition
    # a terminating series must be cut at its polynomial degree: the rounded
    # parameters only satisfy the termination conditions to ~1e-16, and the
    # leaked tail is the exponentially growing second solution
    terms = n + 1 if terminates else None

    scale = math.sqrt(qb)

    def eigenfunction(rho):
        rho = np.asarray(rho, dtype=float)
        out = (rho ** (ell + 0.5)
               * np.exp(-((qb * rho) ** 2 - drift * rho) / (2.0 * qb))
               * heun_values(hp, scale * rho, terms=terms))
        return float(out) if out.ndim == 0 else out

    return AnalyticEigenpair(
        epsilon=epsilon,
        ell_tilde=ell,
        eigenfunction=eigenfunction,
        validity=Validity(
            normalizable=True,
            heun_terminates=terminates,
        ),
        heun=hp,
    )


def spectrum_model2(params: PhysicalParams, kind: ElectricFieldKind,
                    qn: QuantumNumbers) -> AnalyticEigenpair:
    """Quadratic-profile (g = eta*rho^2) closed-form level and eigenfunction.

    eps = (Q^2 B0^2 / eta) * (1 - (X / (1 + 2 n + sqrt(m^2 + 1/4)))^2) with
    X = k_z^2/(2 Q B0) - m (the Coulomb-type field adds eta*lam*Q/(2 Q B0)
    to X); the linear-type field shifts the level by -lam*Q/2.  Bound states
    require X < 0, otherwise the Gaussian factor grows and NotNormalizable
    is raised.
    """
    require_landau_coupling(params)
    Q, B0, eta, lam = params.Q, params.B0, params.eta, params.lam
    qb = Q * B0
    m = float(qn.m)
    n = qn.n_rho
    ell = math.sqrt(m * m + 0.25)

    numerator = qn.k_z**2 / (2.0 * qb) - m
    if kind is ElectricFieldKind.COULOMB:
        numerator += eta * lam * Q / (2.0 * qb)
    if not numerator < 0.0:
        raise NotNormalizable(
            "oscillator scale is not positive: requires 2*Q*B0*m - k_z^2"
            + (" - eta*lam*Q" if kind is ElectricFieldKind.COULOMB else "")
            + f" > 0, got m={qn.m}, k_z={qn.k_z}, lam={lam!r}")

    denom = 1.0 + 2.0 * n + ell
    base = qb * qb / eta * (1.0 - (numerator / denom) ** 2)
    epsilon = base - lam * Q / 2.0 if kind is ElectricFieldKind.LINEAR else base
    omega = -qb * numerator / denom  # equals sqrt(Q^2 B0^2 - eta*base), positive

    def eigenfunction(rho):
        rho = np.asarray(rho, dtype=float)
        out = (rho ** (ell + 1.0)
               * np.exp(-0.5 * omega * rho**2)
               * kummer_values(-float(n), ell + 1.0, omega * rho**2))
        return float(out) if out.ndim == 0 else out

    return AnalyticEigenpair(
        epsilon=epsilon,
        ell_tilde=ell,
        eigenfunction=eigenfunction,
        validity=Validity(normalizable=True, heun_terminates=None),
    )


def shift_property_check(params: PhysicalParams, qns) -> dict:
    """Exactness report for the field-induced level shifts.

    Over the given quantum numbers (one or many), measures the defect of

    * spectrum(linear-type, lam) = spectrum(no field) - lam*Q/2, both models,
    * spectrum_model1(Coulomb-type) = spectrum_model1(no field),

    skipping cells outside the normalizability domain.  Returns the maximum
    absolute defects and an overall flag at 1e-12 absolute.
    """
    if isinstance(qns, QuantumNumbers):
        qns = [qns]
    shift = params.lam * params.Q / 2.0
    worst_linear1 = worst_linear2 = worst_coulomb1 = 0.0
    cells = 0
    for qn in qns:
        pair_none1 = spectrum_model1(params, ElectricFieldKind.NONE, qn)
        pair_lin1 = spectrum_model1(params, ElectricFieldKind.LINEAR, qn)
        pair_cou1 = spectrum_model1(params, ElectricFieldKind.COULOMB, qn)
        worst_linear1 = max(worst_linear1,
                            abs(pair_none1.epsilon - pair_lin1.epsilon - shift))
        worst_coulomb1 = max(worst_coulomb1,
                             abs(pair_cou1.epsilon - pair_none1.epsilon))
        try:
            pair_none2 = spectrum_model2(params, ElectricFieldKind.NONE, qn)
            pair_lin2 = spectrum_model2(params, ElectricFieldKind.LINEAR, qn)
        except NotNormalizable:
            continue
        worst_linear2 = max(worst_linear2,
                            abs(pair_none2.epsilon - pair_lin2.epsilon - shift))
        cells += 1
    return {
        "shift": shift,
        "max_defect_linear_model1": worst_linear1,
        "max_defect_linear_model2": worst_linear2,
        "max_defect_coulomb_model1": worst_coulomb1,
        "model2_cells": cells,
        "ok": max(worst_linear1, worst_linear2, worst_coulomb1) <= 1e-12,
    }
