"""wigner-forge: quantum thermal and stationary states in Wigner phase space.

Thermal states are computed by split-operator spectral propagation in
inverse temperature, pure stationary states by an adaptive cooling loop with
projection for excited levels, and Fermi/Bose ensembles by alternating
series of thermal states.  A real-time propagator verifies stationarity,
and a dense-diagonalization oracle cross-checks every fast path.
"""

from .errors import (
    AliasingError,
    ConfigError,
    ConvergenceError,
    EvaluationError,
    ExpressionError,
    GridError,
    KernelError,
    NumericalError,
    ProjectionError,
    PropagationError,
    SeriesDivergenceError,
    StateFileError,
    WignerForgeError,
)
from .grid import (
    MixedRep,
    PhaseGrid,
    WignerState,
    constant_state,
    from_lambdap,
    from_xtheta,
    make_grid,
    to_lambdap,
    to_xtheta,
    trace_integral,
)
from .expressions import HamiltonianSpec, eval_grid, format_expr, parse
from .bloch import BlochKernels, bloch_step, build_bloch_kernels, gibbs
from .moyal import (
    MoyalKernels,
    build_moyal_kernels,
    moyal_propagate,
    stationarity_residual,
)
from .stationary import (
    SolverConfig,
    ValidityReport,
    check_validity,
    excited_state,
    ground_state,
    project_out,
)
from .ensembles import ThermalSpec, ground_energy_estimate, thermal_state
from .observables import ObservablesReport, energy, marginals, moments, purity, report
from .oracle import OracleSpectrum, diagonalize, wigner_of_mixture
from .stateio import load_state, save_state

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "BlochKernels",
    "ConfigError",
    "ConvergenceError",
    "EvaluationError",
    "ExpressionError",
    "GridError",
    "HamiltonianSpec",
    "KernelError",
    "MixedRep",
    "MoyalKernels",
    "NumericalError",
    "ObservablesReport",
    "OracleSpectrum",
    "PhaseGrid",
    "ProjectionError",
    "PropagationError",
    "SeriesDivergenceError",
    "SolverConfig",
    "StateFileError",
    "ThermalSpec",
    "ValidityReport",
    "WignerForgeError",
    "WignerState",
    "bloch_step",
    "build_bloch_kernels",
    "build_moyal_kernels",
    "check_validity",
    "constant_state",
    "diagonalize",
    "energy",
    "eval_grid",
    "excited_state",
    "format_expr",
    "from_lambdap",
    "from_xtheta",
    "gibbs",
    "ground_energy_estimate",
    "ground_state",
    "load_state",
    "make_grid",
    "marginals",
    "moments",
    "moyal_propagate",
    "parse",
    "project_out",
    "purity",
    "report",
    "save_state",
    "stationarity_residual",
    "thermal_state",
    "to_lambdap",
    "to_xtheta",
    "trace_integral",
    "wigner_of_mixture",
]
