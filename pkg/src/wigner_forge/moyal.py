"""Real-time propagation of Wigner states, used to verify stationarity.

Same split spectral skeleton as the inverse-temperature propagator, with
unit-modulus phase kernels built from half-shifted differences:

    exp(-(i dt/hbar) [V(x - hbar*theta/2) - V(x + hbar*theta/2)])
    exp(-(i dt/hbar) [K(p + hbar*lambda/2) - K(p - hbar*lambda/2)])

The sign convention reproduces the classical limits dx/dt = K'(p) and
dp/dt = -V'(x), which the tests enforce.  Splitting variants: ``lie``
(default), ``strang``, and ``yoshida4`` (triple-jump composition of Strang
steps, fourth order; valid for any K and V since every stage is unitary).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, ConfigError, EvaluationError, KernelError
from .expressions import HamiltonianSpec
from .grid import PhaseGrid, WignerState, _fft_p, _fft_x, _ifft_p, _ifft_x

__all__ = [
    "MoyalKernels",
    "build_moyal_kernels",
    "moyal_propagate",
    "stationarity_residual",
    "MOYAL_SPLITTINGS",
]

MOYAL_SPLITTINGS = ("lie", "strang", "yoshida4")

# triple-jump coefficients: S4(dt) = S2(c1 dt) S2(c0 dt) S2(c1 dt)
_YOSHIDA_C1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
_YOSHIDA_C0 = 1.0 - 2.0 * _YOSHIDA_C1


def _shifted_difference(ham_eval, centers, shifts, axis: str) -> np.ndarray:
    if axis == "x":
        c, s = centers[:, None], shifts[None, :]
    else:
        c, s = centers[None, :], shifts[:, None]
    try:
        return ham_eval(c - s) - ham_eval(c + s)
    except EvaluationError as exc:
        raise KernelError(
            f"potential singular at shifted lattice point {exc.sample!r}"
        ) from exc


@dataclass(frozen=True)
class MoyalKernels:
    """Unit-modulus phase multipliers for one real-time step.

    ``stages`` holds (v_kernel, k_kernel) pairs of Strang substeps and is
    populated only for the ``yoshida4`` composition; ``v_kernel`` is the
    half-step potential kernel when the splitting is symmetric.
    """

    grid: PhaseGrid
    dt: float
    splitting: str
    v_kernel: np.ndarray
    k_kernel: np.ndarray
    stages: tuple | None = None


def _phase_pair(ham: HamiltonianSpec, grid: PhaseGrid, dt: float, half_v: bool):
    h = grid.hbar
    dv = _shifted_difference(ham.potential, grid.x, h * grid.theta / 2.0, "x")
    dk = -_shifted_difference(ham.kinetic, grid.p, h * grid.lam / 2.0, "p")
    v_factor = 0.5 if half_v else 1.0
    v_kernel = np.exp(-1j * (dt / h) * v_factor * dv)
    k_kernel = np.exp(-1j * (dt / h) * dk)
    return v_kernel, k_kernel


def build_moyal_kernels(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    dt: float,
    *,
    splitting: str = "lie",
) -> MoyalKernels:
    """Precompute phase kernels for one step of size ``dt``."""
    if dt <= 0:
        raise ConfigError(f"dt must be positive, got {dt}")
    if splitting not in MOYAL_SPLITTINGS:
        raise ConfigError(f"splitting must be one of {MOYAL_SPLITTINGS}, got {splitting!r}")
    if splitting == "lie":
        v_kernel, k_kernel = _phase_pair(ham, grid, dt, half_v=False)
        return MoyalKernels(grid, dt, splitting, v_kernel, k_kernel)
    if splitting == "strang":
        v_kernel, k_kernel = _phase_pair(ham, grid, dt, half_v=True)
        return MoyalKernels(grid, dt, splitting, v_kernel, k_kernel)
    stages = tuple(
        _phase_pair(ham, grid, c * dt, half_v=True)
        for c in (_YOSHIDA_C1, _YOSHIDA_C0, _YOSHIDA_C1)
    )
    v_kernel, k_kernel = stages[0]
    return MoyalKernels(grid, dt, splitting, v_kernel, k_kernel, stages)


def _strang_substep(u: np.ndarray, v_kernel: np.ndarray, k_kernel: np.ndarray) -> np.ndarray:
    u = _ifft_p(_fft_p(u) * v_kernel)
    u = _ifft_x(_fft_x(u) * k_kernel)
    return _ifft_p(_fft_p(u) * v_kernel)


def _one_step(u: np.ndarray, kernels: MoyalKernels) -> np.ndarray:
    if kernels.splitting == "lie":
        u = _ifft_p(_fft_p(u) * kernels.v_kernel)
        return _ifft_x(_fft_x(u) * kernels.k_kernel)
    if kernels.splitting == "strang":
        return _strang_substep(u, kernels.v_kernel, kernels.k_kernel)
    for v_kernel, k_kernel in kernels.stages:
        u = _strang_substep(u, v_kernel, k_kernel)
    return u


def moyal_propagate(
    state: WignerState,
    ham: HamiltonianSpec,
    t_total: float,
    dt: float,
    *,
    splitting: str = "lie",
    imag_tol: float = 1e-9,
) -> WignerState:
    """Propagate for round(t_total/dt) steps; returns a new state.

    The input is not modified.  After each step the imaginary residue must
    stay below ``imag_tol`` relative to max |W|, otherwise the grid cannot
    represent the sheared distribution and an AliasingError is raised.
    """
    if t_total < 0:
        raise ConfigError(f"t_total must be non-negative, got {t_total}")
    n_steps = int(round(t_total / dt)) if t_total > 0 else 0
    result = state.copy()
    if n_steps == 0:
        return result
    kernels = build_moyal_kernels(ham, grid=state.grid, dt=dt, splitting=splitting)
    u = result.w.astype(complex)
    for _ in range(n_steps):
        u = _one_step(u, kernels)
        scale = np.abs(u.real).max()
        residue = np.abs(u.imag).max()
        if scale > 0 and residue > imag_tol * scale:
            raise AliasingError("aliasing detected — enlarge grid or reduce dt")
        u = u.real.astype(complex)
    result.w = np.ascontiguousarray(u.real)
    return result


def stationarity_residual(
    state: WignerState,
    ham: HamiltonianSpec,
    t_total: float,
    dt: float,
    *,
    splitting: str = "lie",
) -> float:
    """max |W(t) - W(0)| / max |W(0)| after propagating for t_total."""
    before = state.w
    after = moyal_propagate(state, ham, t_total, dt, splitting=splitting).w
    return float(np.abs(after - before).max() / np.abs(before).max())
