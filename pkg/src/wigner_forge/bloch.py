"""Inverse-temperature propagation of Wigner states by split spectral steps.

One step applies the potential kernel in the (x, theta) representation and
then the kinetic kernel in the (lambda, p) representation, in that order.
The kernels are built from the half-shifted scalar functions

    V(x - hbar*theta/2) + V(x + hbar*theta/2)
    K(p + hbar*lambda/2) + K(p - hbar*lambda/2)

Splitting variants:

* ``lie``     first order per step (the default),
* ``strang``  symmetric second order (half potential steps on both ends),
* ``chin4``   forward fourth order with a gradient-corrected midpoint
              potential; all coefficients positive, as imaginary-time
              propagation requires, but limited to quadratic K(p).

States are renormalized to unit trace after every step; the removed factor
accumulates in log_norm so exp(log_norm) estimates the partition function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EvaluationError, KernelError, PropagationError
from .expressions import HamiltonianSpec, eval_grid
from .grid import (
    PhaseGrid,
    WignerState,
    _discard_imag,
    _fft_p,
    _fft_x,
    _ifft_p,
    _ifft_x,
    constant_state,
    trace_integral,
)

__all__ = ["BlochKernels", "build_bloch_kernels", "bloch_step", "gibbs", "SPLITTINGS"]

SPLITTINGS = ("lie", "strang", "chin4")

EXP_FLOOR = -700.0  # exponent arguments below this clamp the kernel to exactly 0


def _shifted_pair(ham_eval, centers: np.ndarray, shifts: np.ndarray, axis: str):
    """Evaluate f(c - s) + f(c + s) on the broadcast 2-D lattice."""
    if axis == "x":
        c = centers[:, None]
        s = shifts[None, :]
    else:
        c = centers[None, :]
        s = shifts[:, None]
    try:
        return ham_eval(c - s) + ham_eval(c + s)
    except EvaluationError as exc:
        raise KernelError(
            f"potential singular at shifted lattice point {exc.sample!r}"
        ) from exc


def _clamped_exp(arg: np.ndarray, floor: float) -> np.ndarray:
    with np.errstate(over="raise"):
        kernel = np.where(arg < floor, 0.0, np.exp(np.maximum(arg, floor)))
    if not np.all(np.isfinite(kernel)):
        raise KernelError("kernel is not finite; check the potential for -inf values")
    return kernel


def _finite_difference(ast, samples: np.ndarray) -> np.ndarray:
    """Central-difference first derivative of an expression, element-wise."""
    h = np.cbrt(np.finfo(float).eps) * np.maximum(1.0, np.abs(samples))
    return (eval_grid(ast, samples + h) - eval_grid(ast, samples - h)) / (2.0 * h)


def _kinetic_curvature(ham: HamiltonianSpec, grid: PhaseGrid) -> float:
    """Second derivative of a quadratic K(p); rejects non-quadratic K."""
    k = ham.kinetic(grid.p)
    second = k[2:] - 2.0 * k[1:-1] + k[:-2]
    scale = max(np.abs(second).max(), grid.dp**2)
    spread = second.max() - second.min()
    if spread > 1e-8 * scale:
        raise KernelError(
            "chin4 splitting requires a quadratic kinetic energy K(p); "
            f"second differences of K vary by {spread:.2e}"
        )
    return float(np.median(second) / grid.dp**2)


@dataclass(frozen=True)
class BlochKernels:
    """Exponential multiplier arrays for one inverse-temperature step.

    ``v_kernel`` lives on (x, theta) and ``k_kernel`` on (lambda, p); both
    are strictly positive up to the exponent clamp and even under reflection
    of the frequency axis.  For ``strang`` the stored v_kernel is the
    half-step kernel (applied twice per step); ``chin4`` adds the midpoint
    kernel ``v_mid``.
    """

    grid: PhaseGrid
    dbeta: float
    splitting: str
    v_kernel: np.ndarray
    k_kernel: np.ndarray
    v_mid: np.ndarray | None = None


def build_bloch_kernels(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    dbeta: float,
    *,
    splitting: str = "lie",
    exp_floor: float = EXP_FLOOR,
) -> BlochKernels:
    """Precompute the kernels for one step of size ``dbeta``."""
    if dbeta <= 0:
        raise ConfigError(f"dbeta must be positive, got {dbeta}")
    if splitting not in SPLITTINGS:
        raise ConfigError(f"splitting must be one of {SPLITTINGS}, got {splitting!r}")
    h = grid.hbar
    vv = _shifted_pair(ham.potential, grid.x, h * grid.theta / 2.0, "x")
    kk = _shifted_pair(ham.kinetic, grid.p, h * grid.lam / 2.0, "p")

    if splitting == "lie":
        v_kernel = _clamped_exp(-(dbeta / 2.0) * vv, exp_floor)
        k_kernel = _clamped_exp(-(dbeta / 2.0) * kk, exp_floor)
        return BlochKernels(grid, dbeta, splitting, v_kernel, k_kernel)

    if splitting == "strang":
        v_kernel = _clamped_exp(-(dbeta / 4.0) * vv, exp_floor)
        k_kernel = _clamped_exp(-(dbeta / 2.0) * kk, exp_floor)
        return BlochKernels(grid, dbeta, splitting, v_kernel, k_kernel)

    # chin4: each of the two half-shifted branches takes a step a = dbeta/2
    # through the sequence V(a/6) K(a/2) Vt(2a/3) K(a/2) V(a/6), where
    # Vt = V + (a^2/48) hbar^2 K'' V'^2 is the gradient-corrected potential.
    a = dbeta / 2.0
    kpp = _kinetic_curvature(ham, grid)
    shifts = h * grid.theta / 2.0
    xm = grid.x[:, None] - shifts[None, :]
    xp = grid.x[:, None] + shifts[None, :]
    try:
        grad2 = _finite_difference(ham.v_ast, xm) ** 2 + _finite_difference(ham.v_ast, xp) ** 2
    except EvaluationError as exc:
        raise KernelError(
            f"potential singular at shifted lattice point {exc.sample!r}"
        ) from exc
    vt = vv + (a * a / 48.0) * h * h * kpp * grad2
    v_kernel = _clamped_exp(-(a / 6.0) * vv, exp_floor)
    v_mid = _clamped_exp(-(2.0 * a / 3.0) * vt, exp_floor)
    k_kernel = _clamped_exp(-(a / 2.0) * kk, exp_floor)
    return BlochKernels(grid, dbeta, splitting, v_kernel, k_kernel, v_mid)


def _apply_v(u: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return _ifft_p(_fft_p(u) * kernel)


def _apply_k(u: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    return _ifft_x(_fft_x(u) * kernel)


def bloch_step(state: WignerState, kernels: BlochKernels) -> WignerState:
    """Advance ``state`` by kernels.dbeta in place; renormalize; return it."""
    if not kernels.grid.same_lattice(state.grid):
        raise ConfigError("kernels were built for a different grid")
    u = state.w.astype(complex)
    if kernels.splitting == "lie":
        u = _apply_k(_apply_v(u, kernels.v_kernel), kernels.k_kernel)
    elif kernels.splitting == "strang":
        u = _apply_v(u, kernels.v_kernel)
        u = _apply_k(u, kernels.k_kernel)
        u = _apply_v(u, kernels.v_kernel)
    else:  # chin4
        u = _apply_v(u, kernels.v_kernel)
        u = _apply_k(u, kernels.k_kernel)
        u = _apply_v(u, kernels.v_mid)
        u = _apply_k(u, kernels.k_kernel)
        u = _apply_v(u, kernels.v_kernel)
    w = _discard_imag(u, 1e-12)
    trace = w.sum() * state.grid.cell
    if not np.isfinite(trace) or trace <= 0.0:
        raise PropagationError("state annihilated — grid too small or dbeta too large")
    state.w = w / trace
    state.log_norm += float(np.log(trace))
    state.beta += kernels.dbeta
    return state


def gibbs(
    ham: HamiltonianSpec,
    grid: PhaseGrid,
    beta_target: float,
    dbeta: float,
    snapshots=None,
    *,
    splitting: str = "lie",
    exp_floor: float = EXP_FLOOR,
):
    """Thermal state at ``beta_target`` from the infinite-temperature start.

    Initializes W = 1/(2*pi*hbar), the phase-space image of the identity,
    and steps in increments of ``dbeta`` (one final partial step when
    beta_target is not a multiple).  Returns a normalized state whose
    exp(log_norm) estimates the partition function.  With ``snapshots`` (a
    sequence of beta values, each a multiple of dbeta) returns
    ``(state, list_of_snapshot_states)`` instead.
    """
    if beta_target < 0:
        raise ConfigError(f"beta_target must be non-negative, got {beta_target}")
    if dbeta <= 0:
        raise ConfigError(f"dbeta must be positive, got {dbeta}")

    snap_steps: dict[int, list[int]] = {}
    if snapshots is not None:
        for i, b in enumerate(snapshots):
            if b < 0 or b > beta_target * (1 + 1e-12) + 1e-15:
                raise ConfigError(f"snapshot beta={b} outside [0, beta_target]")
            steps = b / dbeta
            if abs(steps - round(steps)) > 1e-9:
                raise ConfigError(f"snapshot beta={b} is not a multiple of dbeta={dbeta}")
            snap_steps.setdefault(int(round(steps)), []).append(i)

    state = constant_state(grid)
    trace = trace_integral(state)
    state.w /= trace
    state.log_norm = float(np.log(trace))

    collected: dict[int, WignerState] = {}
    if 0 in snap_steps:
        collected[0] = state.copy()

    n_full = int(np.floor(beta_target / dbeta + 1e-9))
    remainder = beta_target - n_full * dbeta
    if n_full > 0:
        kernels = build_bloch_kernels(ham, grid, dbeta, splitting=splitting, exp_floor=exp_floor)
        for step in range(1, n_full + 1):
            bloch_step(state, kernels)
            if step in snap_steps:
                collected[step] = state.copy()
    if remainder > 1e-12 * dbeta:
        kernels = build_bloch_kernels(
            ham, grid, remainder, splitting=splitting, exp_floor=exp_floor
        )
        bloch_step(state, kernels)

    if snapshots is None:
        return state
    ordered = [None] * len(list(snapshots))
    for step, indices in snap_steps.items():
        for i in indices:
            ordered[i] = collected[step]
    return state, ordered
