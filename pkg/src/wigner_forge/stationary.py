"""Adaptive cooling toward pure stationary states, with projection for
excited levels and the physical-validity heuristics.

The loop proposes one inverse-temperature step at the current dbeta and
accepts it only if the energy strictly decreases and the state stays
physically valid (purity not above 1 + slack, Heisenberg product not below
hbar/2).  A rejection restores the previous state and halves dbeta.  An
accepted step whose energy gain falls below energy_tol also halves dbeta:
the trajectory has converged to the fixed point of the current step size,
and only a smaller step can improve further.  The run stops when dbeta
drops below dbeta_min.

Excited states repeat the same loop with every proposal projected against
the already-computed lower states before the energy comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ConvergenceError, ProjectionError, PropagationError
from .expressions import HamiltonianSpec
from .grid import PhaseGrid, WignerState, constant_state, trace_integral
from .bloch import build_bloch_kernels, bloch_step
from .observables import energy, moments, purity

__all__ = [
    "SolverConfig",
    "ValidityReport",
    "check_validity",
    "project_out",
    "ground_state",
    "excited_state",
]


@dataclass(frozen=True)
class SolverConfig:
    """Adaptive-loop parameters plus the optional fixed-step polish stage.

    The adaptive loop stalls once energy differences reach the floating-point
    floor of the energy functional, leaving a residual admixture of higher
    states around 1e-4 in amplitude.  ``polish_steps`` > 0 runs that many
    fixed-size fourth-order steps (with projection for excited levels) after
    the loop, contracting the admixture to roundoff; requires quadratic K(p).
    """

    dbeta_init: float = 1.0
    dbeta_min: float = 1e-8
    energy_tol: float = 1e-12
    max_iters: int = 100_000
    purity_slack: float = 1e-6
    splitting: str = "lie"
    polish_steps: int = 0
    polish_dbeta: float = 0.05

    def __post_init__(self):
        for name in ("dbeta_init", "dbeta_min", "energy_tol", "purity_slack", "polish_dbeta"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.max_iters <= 0:
            raise ConfigError("max_iters must be positive")
        if self.polish_steps < 0:
            raise ConfigError("polish_steps must be non-negative")
        if self.dbeta_min >= self.dbeta_init:
            raise ConfigError("dbeta_min must be smaller than dbeta_init")
        if self.splitting not in ("lie", "strang", "chin4"):
            raise ConfigError(f"unknown splitting {self.splitting!r}")


@dataclass(frozen=True)
class ValidityReport:
    purity: float
    sigma_x: float
    sigma_p: float
    uncertainty_product: float
    passed: bool


def check_validity(state: WignerState, cfg: SolverConfig) -> ValidityReport:
    """Purity and uncertainty heuristics for a normalized state.

    There is no computable test that a Wigner function comes from a positive
    density matrix; purity <= 1 and the uncertainty principle are the usable
    necessary conditions.
    """
    p = purity(state)
    _, _, sigma_x, sigma_p = moments(state)
    product = sigma_x * sigma_p
    hbar = state.grid.hbar
    passed = p <= 1.0 + cfg.purity_slack and product >= (hbar / 2.0) * (1.0 - 1e-9)
    return ValidityReport(p, sigma_x, sigma_p, product, passed)


def _overlap(a: WignerState, b: WignerState) -> float:
    g = a.grid
    return float(2.0 * np.pi * g.hbar * (a.w * b.w).sum() * g.cell)


def project_out(state: WignerState, lower) -> WignerState:
    """Remove the components along ``lower`` states and renormalize.

    Each coefficient c_i = 2*pi*hbar * sum(W * W_i) * dx * dp is the
    population of the i-th lower state.  Preconditions: the lower states are
    normalized and pairwise orthogonal (overlaps below 1e-6).
    """
    lower = list(lower)
    for i, li in enumerate(lower):
        if abs(trace_integral(li) - 1.0) > 1e-6:
            raise ProjectionError(f"lower state {i} is not normalized")
        for j in range(i + 1, len(lower)):
            if abs(_overlap(li, lower[j])) > 1e-6:
                raise ProjectionError(f"lower states {i} and {j} are not orthogonal")
    w = state.w.copy()
    work = WignerState(state.grid, w, state.beta, state.log_norm)
    for li in lower:
        c = _overlap(work, li)
        work.w = work.w - c * li.w
    trace = trace_integral(work)
    if not np.isfinite(trace) or trace <= 1e-12:
        raise ProjectionError("state fully contained in projected subspace")
    work.w /= trace
    work.log_norm += float(np.log(trace))
    return work


def _cool(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    cfg: SolverConfig,
    lower: tuple,
) -> tuple[WignerState, float]:
    state = constant_state(grid)
    state.w /= trace_integral(state)
    if lower:
        state = project_out(state, lower)
    dbeta = cfg.dbeta_init
    kernels = build_bloch_kernels(ham, grid, dbeta, splitting=cfg.splitting)
    current_energy = energy(state, ham)
    history = [current_energy]

    iters = 0
    while dbeta >= cfg.dbeta_min:
        if iters >= cfg.max_iters:
            raise ConvergenceError(
                f"max_iters={cfg.max_iters} reached without convergence "
                f"(last energy {current_energy!r})",
                energy_trace=history,
            )
        iters += 1
        proposal = state.copy()
        try:
            bloch_step(proposal, kernels)
            if lower:
                proposal = project_out(proposal, lower)
        except (PropagationError, ProjectionError):
            # an annihilated or fully-projected proposal is a rejection
            dbeta /= 2.0
            if dbeta >= cfg.dbeta_min:
                kernels = build_bloch_kernels(ham, grid, dbeta, splitting=cfg.splitting)
            continue
        new_energy = energy(proposal, ham)
        if new_energy < current_energy and check_validity(proposal, cfg).passed:
            gain = current_energy - new_energy
            state, current_energy = proposal, new_energy
            history.append(current_energy)
            if gain < cfg.energy_tol:
                dbeta /= 2.0
                if dbeta >= cfg.dbeta_min:
                    kernels = build_bloch_kernels(ham, grid, dbeta, splitting=cfg.splitting)
        else:
            dbeta /= 2.0
            if dbeta >= cfg.dbeta_min:
                kernels = build_bloch_kernels(ham, grid, dbeta, splitting=cfg.splitting)

    if cfg.polish_steps > 0:
        kernels = build_bloch_kernels(ham, grid, cfg.polish_dbeta, splitting="chin4")
        for _ in range(cfg.polish_steps):
            bloch_step(state, kernels)
            if lower:
                state = project_out(state, lower)
        current_energy = energy(state, ham)
    return state, current_energy


def ground_state(
    ham: HamiltonianSpec, grid: PhaseGrid, cfg: SolverConfig | None = None
) -> tuple[WignerState, float]:
    """Lowest-energy Wigner state by adaptive cooling from the constant state."""
    return _cool(ham, grid, cfg or SolverConfig(), ())


def excited_state(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    cfg: SolverConfig | None = None,
    lower=(),
) -> tuple[WignerState, float]:
    """Next stationary state above ``lower``, which must contain every state
    below the target (normalized and mutually orthogonal)."""
    lower = tuple(lower)
    if not lower:
        raise ConfigError("excited_state requires at least one lower state")
    return _cool(ham, grid, cfg or SolverConfig(), lower)
