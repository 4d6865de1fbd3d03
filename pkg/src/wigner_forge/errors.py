"""Exception hierarchy.

Configuration-type errors (bad grids, bad expressions, invalid parameters)
are kept distinct from numerical failures (annihilated states, divergent
series, aliasing) so the CLI can map them to different exit codes.
"""


class WignerForgeError(Exception):
    """Base class for all package errors."""


class ConfigError(WignerForgeError):
    """Invalid configuration or precondition (maps to CLI exit code 1)."""


class GridError(ConfigError):
    """Invalid phase-space grid construction parameters."""


class ExpressionError(ConfigError):
    """Syntax error in a Hamiltonian expression.

    Carries the byte offset of the failure in ``offset``.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class NumericalError(WignerForgeError):
    """Numerical failure during a computation (maps to CLI exit code 2)."""


class EvaluationError(NumericalError):
    """Singular expression evaluation (division by zero, log of non-positive).

    Carries the first offending sample value in ``sample``.
    """

    def __init__(self, message: str, sample: float | None = None):
        super().__init__(message)
        self.sample = sample


class KernelError(NumericalError):
    """Kernel construction failed (singular potential at a shifted point)."""


class PropagationError(NumericalError):
    """State annihilated or corrupted during propagation."""


class AliasingError(NumericalError):
    """Imaginary residue exceeded tolerance during real-time propagation."""


class ProjectionError(NumericalError):
    """Projection removed (almost) the whole state, or preconditions failed."""


class ConvergenceError(NumericalError):
    """Adaptive solver exhausted max_iters.

    ``energy_trace`` holds the accepted-step energy history.
    """

    def __init__(self, message: str, energy_trace=None):
        super().__init__(message)
        self.energy_trace = list(energy_trace) if energy_trace is not None else []


class SeriesDivergenceError(NumericalError):
    """Thermal occupation series failed to converge."""


class StateFileError(ConfigError):
    """Malformed or mismatched state file."""
