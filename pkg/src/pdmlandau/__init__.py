"""Exact Landau-type spectra for position-dependent-mass neutral particles.

A neutral particle carrying an electric quadrupole moment in a radially
grown magnetic field acquires an effective minimal coupling; for mass
profiles g(rho) = eta*rho and eta*rho**2 the radial problem is solvable in
closed form (biconfluent Heun and confluent hypergeometric series).  This
package pairs those closed forms with an independent finite-difference
Sturm-Liouville eigensolver and a CLI that cross-checks the two routes.
"""

from .errors import (ConfigError, DomainError, FactorizationBreakdown,
                     GridTooCoarse, NoConvergence, NonUniformField,
                     NotNormalizable, PdmLandauError, PoleError,
                     SingularCoefficient, SlowConvergence, UnsupportedProfile)
from .fields import (ElectricFieldKind, PhysicalParams, QuadrupoleTensor,
                     effective_magnetic_field, effective_scalar_potential,
                     effective_vector_potential, electric_field_radial,
                     landau_condition_check, require_landau_coupling)
from .specfun import (HeunParams, SeriesResult, TerminationReport,
                      heun_biconfluent, heun_coefficients,
                      heun_termination_check, heun_values, kummer_1f1,
                      kummer_values)
from .radial import (PdmProfile, QuantumNumbers, RadialProblem, assemble,
                     default_rho_max, first_derivative_coefficient, residual)
from .solver import (DiscreteProblem, EigenResult, Grid, count_below,
                     count_nodes, discretize, eigenfunction, eigenvalues,
                     oscillator_problem)
from .analytic import (AnalyticEigenpair, Scenario, Validity,
                       shift_property_check, spectrum_model1, spectrum_model2)
from .config import RunConfig, load_config, parse_config
from .harness import (MODEL2_TOLERANCE, SolveRow, SpectrumRow, VerifyReport,
                      VerifyRow, run_solve, run_spectrum, run_verify,
                      run_wavefunction)

__version__ = "0.1.0"

__all__ = [
    "AnalyticEigenpair",
    "ConfigError",
    "DiscreteProblem",
    "DomainError",
    "EigenResult",
    "ElectricFieldKind",
    "FactorizationBreakdown",
    "Grid",
    "GridTooCoarse",
    "HeunParams",
    "MODEL2_TOLERANCE",
    "NoConvergence",
    "NonUniformField",
    "NotNormalizable",
    "PdmLandauError",
    "PdmProfile",
    "PhysicalParams",
    "PoleError",
    "QuadrupoleTensor",
    "QuantumNumbers",
    "RadialProblem",
    "RunConfig",
    "Scenario",
    "SeriesResult",
    "SingularCoefficient",
    "SlowConvergence",
    "SolveRow",
    "SpectrumRow",
    "TerminationReport",
    "UnsupportedProfile",
    "Validity",
    "VerifyReport",
    "VerifyRow",
    "assemble",
    "count_below",
    "count_nodes",
    "default_rho_max",
    "discretize",
    "effective_magnetic_field",
    "effective_scalar_potential",
    "effective_vector_potential",
    "eigenfunction",
    "eigenvalues",
    "electric_field_radial",
    "first_derivative_coefficient",
    "heun_biconfluent",
    "heun_coefficients",
    "heun_termination_check",
    "heun_values",
    "kummer_1f1",
    "kummer_values",
    "landau_condition_check",
    "load_config",
    "oscillator_problem",
    "parse_config",
    "require_landau_coupling",
    "residual",
    "run_solve",
    "run_spectrum",
    "run_verify",
    "run_wavefunction",
    "shift_property_check",
    "spectrum_model1",
    "spectrum_model2",
    "__version__",
]
