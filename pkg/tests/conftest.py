"""Shared helpers: cached channel solves so repeated sweeps stay fast."""

from __future__ import annotations

from functools import lru_cache

import pytest

from pdmlandau.fields import ElectricFieldKind, PhysicalParams
from pdmlandau.radial import PdmProfile, QuantumNumbers, assemble
from pdmlandau.solver import Grid, discretize, eigenvalues


@lru_cache(maxsize=None)
def channel_levels(power: int, kind_value: str, Q: float, B0: float, eta: float,
                   lam: float, kz: float, m: int, count: int, grid_n: int,
                   rho_max: float | None) -> tuple[float, ...]:
    """First ``count`` numeric levels of one (m, k_z) channel."""
    params = PhysicalParams(Q, B0, eta, lam)
    problem = assemble(PdmProfile(eta, power), params, ElectricFieldKind(kind_value),
                       QuantumNumbers(0, m, kz), rho_max=rho_max)
    dp = discretize(problem, Grid(grid_n, problem.rho_max))
    return tuple(float(x) for x in eigenvalues(dp, count))


@pytest.fixture(scope="session")
def solve_channel():
    return channel_levels


_CRITERION_LINES: list[str] = []


@pytest.fixture(scope="session")
def criterion_report():
    """Record one pass/fail line per acceptance criterion for the run summary."""
    def report(num, ok, detail) -> str:
        line = f"[criterion {num}] {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        _CRITERION_LINES.append(line)
        return line
    return report


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
