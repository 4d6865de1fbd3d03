"""Fermi and Bose thermal Wigner distributions from alternating series of
thermal states.

The occupation operator 1/(exp(beta(H - mu)) + s), with s = +1 for
Thomas-Fermi (Fermi-Dirac occupancies, the conventional name) and s = -1
for Bose-Einstein, expands into unnormalized thermal states at inverse
temperatures beta, 2*beta, 3*beta, ...  The terms come from snapshots of a
single continuing trajectory, so the m-th snapshot is bit-identical to an
independent run to m*beta with the same step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, PropagationError, SeriesDivergenceError
from .expressions import HamiltonianSpec
from .grid import PhaseGrid, WignerState, constant_state, trace_integral
from .bloch import build_bloch_kernels, bloch_step

__all__ = ["ThermalSpec", "thermal_state", "ground_energy_estimate"]


@dataclass(frozen=True)
class ThermalSpec:
    """Statistics selector and thermodynamic parameters.

    ``s`` is +1 for Fermi (Thomas-Fermi in the figure terminology) and -1
    for Bose; ``term_tol`` truncates the series once a term's relative trace
    contribution falls below it.
    """

    s: int
    beta: float
    mu: float = 0.0
    term_tol: float = 1e-12
    max_terms: int = 200

    def __post_init__(self):
        if self.s not in (+1, -1):
            raise ConfigError(f"s must be +1 (Fermi) or -1 (Bose), got {self.s}")
        if self.beta <= 0:
            raise ConfigError(f"beta must be positive, got {self.beta}")
        if self.term_tol <= 0:
            raise ConfigError("term_tol must be positive")
        if self.max_terms < 1:
            raise ConfigError("max_terms must be at least 1")


def ground_energy_estimate(ham: HamiltonianSpec, grid: PhaseGrid) -> float:
    """Cheap lower-level estimate: classical minimum plus a local harmonic
    zero-point from lattice curvatures (skipped when a curvature is not
    positive)."""
    v = ham.potential(grid.x)
    k = ham.kinetic(grid.p)
    iv = int(np.argmin(v))
    ik = int(np.argmin(k))
    vpp = (v[(iv + 1) % grid.n_x] - 2 * v[iv] + v[iv - 1]) / grid.dx**2
    kpp = (k[(ik + 1) % grid.n_p] - 2 * k[ik] + k[ik - 1]) / grid.dp**2
    estimate = float(v[iv] + k[ik])
    if vpp > 0 and kpp > 0:
        estimate += 0.5 * grid.hbar * float(np.sqrt(vpp * kpp))
    return estimate


def thermal_state(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    spec: ThermalSpec,
    dbeta: float,
    *,
    splitting: str = "lie",
) -> tuple[WignerState, float]:
    """Occupation-weighted thermal distribution and its total occupation.

    Runs one trajectory with snapshots at m*spec.beta and accumulates
    sign_m * exp(m*beta*mu) * Z_m * W_m, where the sign alternates for Fermi
    statistics and Z_m comes from the accumulated log normalization.
    Returns the normalized state plus the unnormalized trace (the total
    occupation sum over levels).
    """
    if dbeta <= 0:
        raise ConfigError(f"dbeta must be positive, got {dbeta}")
    steps_per_block = spec.beta / dbeta
    if abs(steps_per_block - round(steps_per_block)) > 1e-9:
        raise ConfigError(
            f"dbeta={dbeta} must divide beta={spec.beta} so snapshots land on steps"
        )
    steps_per_block = int(round(steps_per_block))
    if spec.s == -1:
        floor = ground_energy_estimate(ham, grid)
        if spec.mu >= floor:
            raise ConfigError(
                f"Bose statistics require mu < ground energy (mu={spec.mu}, "
                f"estimated ground energy {floor:.6g})"
            )

    kernels = build_bloch_kernels(ham, grid, dbeta, splitting=splitting)
    state = constant_state(grid)
    trace = trace_integral(state)
    state.w /= trace
    state.log_norm = float(np.log(trace))

    accumulated = np.zeros(grid.shape)
    total = 0.0
    growth_streak = 0
    previous_weight = np.inf
    for m in range(1, spec.max_terms + 1):
        for _ in range(steps_per_block):
            bloch_step(state, kernels)
        weight = float(np.exp(m * spec.beta * spec.mu + state.log_norm))
        sign = 1.0 if m % 2 == 1 else -float(spec.s)
        accumulated += sign * weight * state.w
        total += sign * weight
        if weight >= previous_weight:
            growth_streak += 1
            if growth_streak >= 3:
                raise SeriesDivergenceError(
                    "series divergent — check mu < E0 for Bose statistics"
                )
        else:
            growth_streak = 0
        previous_weight = weight
        if total != 0.0 and weight / abs(total) < spec.term_tol:
            break

    occupation = float(accumulated.sum() * grid.cell)
    if not np.isfinite(occupation) or occupation <= 0.0:
        raise PropagationError("thermal series accumulated a non-positive trace")
    result = WignerState(grid, accumulated / occupation, beta=spec.beta)
    result.log_norm = float(np.log(occupation))
    return result, occupation
