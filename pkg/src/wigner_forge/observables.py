"""Scalar and marginal diagnostics of Wigner states.

All integrals are plain lattice Riemann sums, which coincide with the
trapezoid rule on these periodic grids, so quadrature inherits the spectral
exactness of the transforms.  Every function here is read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .expressions import HamiltonianSpec
from .grid import WignerState, trace_integral

__all__ = [
    "energy",
    "purity",
    "marginals",
    "moments",
    "ObservablesReport",
    "report",
]


def marginals(state: WignerState) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate and momentum marginals (integrals over the other axis)."""
    g = state.grid
    marginal_x = state.w.sum(axis=1) * g.dp
    marginal_p = state.w.sum(axis=0) * g.dx
    return marginal_x, marginal_p


def energy(state: WignerState, ham: HamiltonianSpec) -> float:
    """Mean energy of a normalized state, sum of W*(V(x)+K(p))*dx*dp.

    Separability reduces the double sum to two marginal sums.
    """
    g = state.grid
    marginal_x, marginal_p = marginals(state)
    e_pot = float((ham.potential(g.x) * marginal_x).sum() * g.dx)
    e_kin = float((ham.kinetic(g.p) * marginal_p).sum() * g.dp)
    return e_pot + e_kin


def purity(state: WignerState) -> float:
    """2*pi*hbar times the phase-space integral of W^2."""
    g = state.grid
    return float(2.0 * np.pi * g.hbar * (state.w**2).sum() * g.cell)


def moments(state: WignerState) -> tuple[float, float, float, float]:
    """(mean_x, mean_p, sigma_x, sigma_p) from the marginals.

    A variance below -1e-12 signals an invalid signed distribution and
    raises; small negative roundoff is clipped to zero.
    """
    g = state.grid
    marginal_x, marginal_p = marginals(state)
    mean_x = float((g.x * marginal_x).sum() * g.dx)
    mean_p = float((g.p * marginal_p).sum() * g.dp)
    var_x = float((((g.x - mean_x) ** 2) * marginal_x).sum() * g.dx)
    var_p = float((((g.p - mean_p) ** 2) * marginal_p).sum() * g.dp)
    if var_x < -1e-12 or var_p < -1e-12:
        raise NumericalError(
            f"negative variance (var_x={var_x:.3e}, var_p={var_p:.3e}): state is not physical"
        )
    return mean_x, mean_p, float(np.sqrt(max(var_x, 0.0))), float(np.sqrt(max(var_p, 0.0)))


@dataclass(frozen=True)
class ObservablesReport:
    trace: float
    energy: float
    purity: float
    z_estimate: float
    sigma_x: float
    sigma_p: float
    marginal_x: np.ndarray
    marginal_p: np.ndarray


def report(state: WignerState, ham: HamiltonianSpec) -> ObservablesReport:
    """Bundle of the standard diagnostics for summaries and output files."""
    tr = trace_integral(state)
    marginal_x, marginal_p = marginals(state)
    _, _, sigma_x, sigma_p = moments(state)
    return ObservablesReport(
        trace=tr,
        energy=energy(state, ham),
        purity=purity(state),
        z_estimate=float(np.exp(state.log_norm) * tr),
        sigma_x=sigma_x,
        sigma_p=sigma_p,
        marginal_x=marginal_x,
        marginal_p=marginal_p,
    )
