"""Eigensolver: calibration spectrum, inertia counts, inverse iteration."""

import math

import numpy as np
import pytest

from pdmlandau.errors import DomainError, SingularCoefficient, SlowConvergence
from pdmlandau.fields import ElectricFieldKind, PhysicalParams
from pdmlandau.radial import PdmProfile, QuantumNumbers, RadialProblem, assemble
from pdmlandau.solver import (DiscreteProblem, Grid, count_below, count_nodes,
                              discretize, eigenfunction, eigenvalues,
                              oscillator_problem)

ODD_OSCILLATOR = np.array([3.0, 7.0, 11.0])


@pytest.fixture(scope="module")
def osc_dp():
    return discretize(oscillator_problem(12.0), Grid(4000, 12.0))


@pytest.fixture(scope="module")
def osc_levels(osc_dp):
    return eigenvalues(osc_dp, 3)


def test_grid_validation_and_nodes():
    with pytest.raises(DomainError):
        Grid(50, 12.0)
    with pytest.raises(DomainError):
        Grid(200, 0.0)
    g = Grid(199, 10.0)
    assert g.h == 0.05
    nodes = g.nodes()
    assert nodes[0] == g.rho_min == 0.05
    assert nodes[-1] == pytest.approx(10.0 - 0.05)


def test_oscillator_errors_follow_second_order_truncation(osc_levels):
    """The N=4000 errors sit exactly on the h^2/12 <(U-eps)^2> floor.

    The bracketed moments for the first three odd states are 3.75, 18.75
    and 45.75, which pins the discretization error itself, not just an
    upper bound.
    """
    h = 12.0 / 4001
    predicted = h * h / 12.0 * np.array([3.75, 18.75, 45.75])
    errors = np.abs(osc_levels - ODD_OSCILLATOR)
    np.testing.assert_allclose(errors, predicted, rtol=1e-4)


def test_grid_halving_quarters_the_error():
    e1 = eigenvalues(discretize(oscillator_problem(12.0), Grid(1000, 12.0)), 1)[0]
    e2 = eigenvalues(discretize(oscillator_problem(12.0), Grid(2000, 12.0)), 1)[0]
    ratio = (e1 - 3.0) / (e2 - 3.0)
    assert 3.5 <= ratio <= 4.5


def test_count_below_brackets_each_level(osc_dp, osc_levels):
    for k, eps in enumerate(osc_levels):
        assert count_below(osc_dp, float(eps) - 1e-6) == k
        assert count_below(osc_dp, float(eps) + 1e-6) == k + 1


def test_eigenvalue_count_validation(osc_dp):
    with pytest.raises(DomainError):
        eigenvalues(osc_dp, 0)
    with pytest.raises(DomainError):
        eigenvalues(osc_dp, osc_dp.size + 1)


def test_trace_records_bisection_history(osc_dp):
    trace = []
    eigenvalues(osc_dp, 1, trace=trace)
    assert len(trace) > 10
    shifts, counts = zip(*trace)
    assert all(isinstance(c, int) and c >= 0 for c in counts)
    assert min(shifts) < 3.0 < max(shifts)


def test_eigenfunctions_orthonormal_with_node_counts(osc_dp, osc_levels):
    states = [eigenfunction(osc_dp, float(e)) for e in osc_levels]
    h = osc_dp.grid.h
    gram = np.array([[float(np.sum(a.R * b.R * osc_dp.mass) * h) for b in states]
                     for a in states])
    assert float(np.max(np.abs(gram - np.eye(3)))) < 1e-8
    assert [s.index for s in states] == [0, 1, 2]
    assert [count_nodes(s.R) for s in states] == [0, 1, 2]
    for s in states:
        first = np.flatnonzero(np.abs(s.R) > 1e-8 * np.max(np.abs(s.R)))[0]
        assert s.R[first] > 0.0


def test_generalized_problem_against_scipy():
    """Bisection eigenvalues vs a dense tridiagonal reference."""
    scipy_linalg = pytest.importorskip("scipy.linalg")
    params = PhysicalParams(1.0, 1.0, 1.0, 1.0)
    prob = assemble(PdmProfile(1.0, 2), params, ElectricFieldKind.COULOMB,
                    QuantumNumbers(0, 1, 0.0))
    dp = discretize(prob, Grid(1500, prob.rho_max))
    ours = eigenvalues(dp, 5)
    # similarity transform B^{-1/2} A B^{-1/2} keeps the spectrum
    d = dp.diag / dp.mass
    e = dp.off / np.sqrt(dp.mass[:-1] * dp.mass[1:])
    ref = scipy_linalg.eigh_tridiagonal(d, e, eigvals_only=True)[:5]
    np.testing.assert_allclose(ours, ref, rtol=1e-11)


def test_eigenvalues_insensitive_to_box_at_fixed_spacing():
    # widening the Dirichlet box at constant h only moves the level through
    # the (tiny) tail truncation
    ea = eigenvalues(discretize(oscillator_problem(12.0), Grid(2000, 12.0)), 1)[0]
    eb = eigenvalues(discretize(oscillator_problem(14.4), Grid(2400, 14.4)), 1)[0]
    assert abs(ea - eb) < 1e-8


def test_discretize_guards():
    prob = oscillator_problem(12.0)
    with pytest.raises(DomainError):
        discretize(prob, Grid(500, 14.0))
    bad = RadialProblem(mu=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                        U=lambda x: np.full_like(np.asarray(x, dtype=float), np.nan),
                        weight=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                        origin_exponent=1.0, rho_max=10.0)
    with pytest.raises(SingularCoefficient):
        discretize(bad, Grid(100, 10.0))
    flat = RadialProblem(mu=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                         U=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                         weight=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                         origin_exponent=1.0, rho_max=10.0)
    with pytest.raises(SingularCoefficient):
        discretize(flat, Grid(100, 10.0))


def test_zero_pivot_shift_is_nudged():
    # diag == mass and off == 0 makes every pivot vanish at shift 1; the
    # counter must retry at a perturbed shift instead of failing
    n = 120
    dp = DiscreteProblem(diag=np.ones(n), off=np.zeros(n - 1),
                         mass=np.ones(n), grid=Grid(n, 1.0))
    trace = []
    assert count_below(dp, 1.0, trace=trace) == n
    assert trace[0][0] > 1.0


def test_inverse_iteration_rejects_non_eigenvalue():
    dp = discretize(oscillator_problem(12.0), Grid(400, 12.0))
    with pytest.raises(SlowConvergence):
        eigenfunction(dp, 4.0)


def test_count_nodes_ignores_noise_floor():
    R = np.array([1.0, 0.5, 1e-12, -1e-12, 0.5, 1.0])
    assert count_nodes(R) == 0
    assert count_nodes(np.array([1.0, -1.0, 1.0])) == 2
