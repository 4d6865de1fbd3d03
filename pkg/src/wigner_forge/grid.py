"""Phase-space lattice, state container, and the two conjugate spectral transforms.

The Wigner function lives on a periodic (x, p) lattice with the endpoint
excluded.  Two mixed representations are used by the propagators: (x, theta)
reached by transforming along the momentum axis, and (lambda, p) reached by
transforming along the coordinate axis.  Frequencies follow the signed FFT
ordering, so both transform pairs are exact inverses on the lattice.

Conventions: the forward transforms absorb the continuum measure (dp or dx)
and the phase factor anchored at the lower grid bound, so their values equal
the plain Riemann approximation of the continuum integrals

    g(x, theta)  = sum_k W(x, p_k) exp(-i p_k theta) dp
    h(lambda, p) = sum_j W(x_j, p) exp(-i x_j lambda) dx

For kernel application the anchor phases cancel between a forward/inverse
pair, so the propagators use the raw FFT conjugation (same operator, fewer
multiplies).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as _fft

from .errors import GridError, PropagationError

__all__ = [
    "PhaseGrid",
    "WignerState",
    "MixedRep",
    "make_grid",
    "to_xtheta",
    "from_xtheta",
    "to_lambdap",
    "from_lambdap",
    "trace_integral",
    "fft_worker_count",
]


def fft_worker_count() -> int:
    """Number of FFT worker threads, from WIGNER_FORGE_THREADS (default 1).

    Results are bit-deterministic for any fixed value: rows/columns are
    transformed independently, with no cross-thread reductions.
    """
    raw = os.environ.get("WIGNER_FORGE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise GridError(f"WIGNER_FORGE_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise GridError(f"WIGNER_FORGE_THREADS must be a positive integer, got {raw!r}")
    return n


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhaseGrid:
    """Discretized (x, p) lattice with its conjugate (lambda, theta) lattices.

    Lattice points are x_j = x_min + j*dx (endpoint excluded, periodic
    convention), likewise for p.  The conjugate lattices are

        lambda_m = 2*pi*m~ / (n_x*dx),   theta_n = 2*pi*n~ / (n_p*dp)

    with signed frequency indices m~ in {-n_x/2, ..., n_x/2 - 1} stored in
    FFT order.  Immutable and safely shareable between threads.
    """

    n_x: int
    n_p: int
    x_min: float
    x_max: float
    p_min: float
    p_max: float
    hbar: float = 1.0

    x: np.ndarray = field(init=False, repr=False, compare=False)
    p: np.ndarray = field(init=False, repr=False, compare=False)
    lam: np.ndarray = field(init=False, repr=False, compare=False)
    theta: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name, size in (("n_x", self.n_x), ("n_p", self.n_p)):
            if int(size) != size or size < 8 or size % 2 != 0:
                raise GridError(f"{name} must be an even integer >= 8, got {size}")
        if not (self.x_max > self.x_min):
            raise GridError(f"x bounds must be ordered, got [{self.x_min}, {self.x_max})")
        if not (self.p_max > self.p_min):
            raise GridError(f"p bounds must be ordered, got [{self.p_min}, {self.p_max})")
        if not (self.hbar > 0):
            raise GridError("hbar must be positive")
        object.__setattr__(self, "x", _frozen(self.x_min + self.dx * np.arange(self.n_x)))
        object.__setattr__(self, "p", _frozen(self.p_min + self.dp * np.arange(self.n_p)))
        object.__setattr__(
            self, "lam", _frozen(2.0 * np.pi * _fft.fftfreq(self.n_x, self.dx))
        )
        object.__setattr__(
            self, "theta", _frozen(2.0 * np.pi * _fft.fftfreq(self.n_p, self.dp))
        )

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_x

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / self.n_p

    @property
    def lambda_max(self) -> float:
        """Largest positive lambda on the lattice."""
        return float(self.lam.max())

    @property
    def theta_max(self) -> float:
        """Largest positive theta on the lattice."""
        return float(self.theta.max())

    @property
    def x_shift_max(self) -> float:
        """Largest half-step coordinate shift hbar*|theta|/2 used by kernels."""
        return float(self.hbar * np.abs(self.theta).max() / 2.0)

    @property
    def p_shift_max(self) -> float:
        """Largest half-step momentum shift hbar*|lambda|/2 used by kernels."""
        return float(self.hbar * np.abs(self.lam).max() / 2.0)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_x, self.n_p)

    @property
    def cell(self) -> float:
        """Phase-space volume element dx*dp."""
        return self.dx * self.dp

    def same_lattice(self, other: "PhaseGrid") -> bool:
        return (
            self.n_x == other.n_x
            and self.n_p == other.n_p
            and self.x_min == other.x_min
            and self.x_max == other.x_max
            and self.p_min == other.p_min
            and self.p_max == other.p_max
            and self.hbar == other.hbar
        )


def make_grid(
    n_x: int,
    n_p: int,
    x_bounds: tuple[float, float],
    p_bounds: tuple[float, float],
    hbar: float = 1.0,
) -> PhaseGrid:
    """Construct a PhaseGrid from sizes and half-open bounds."""
    return PhaseGrid(
        n_x=n_x,
        n_p=n_p,
        x_min=float(x_bounds[0]),
        x_max=float(x_bounds[1]),
        p_min=float(p_bounds[0]),
        p_max=float(p_bounds[1]),
        hbar=float(hbar),
    )


@dataclass
class WignerState:
    """Real-valued distribution W(x, p) on a PhaseGrid.

    ``w`` is indexed [x-index][p-index].  ``beta`` is the accumulated inverse
    temperature and ``log_norm`` the accumulated logarithm of normalization
    factors removed during propagation, so exp(log_norm) * trace_integral
    tracks the unnormalized trace.  Single-owner mutable: operations that
    modify a state take exclusive access.
    """

    grid: PhaseGrid
    w: np.ndarray
    beta: float = 0.0
    log_norm: float = 0.0

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.float64)
        if self.w.shape != self.grid.shape:
            raise GridError(
                f"state array shape {self.w.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.w)):
            raise PropagationError("state array contains non-finite values")

    def copy(self) -> "WignerState":
        return WignerState(self.grid, self.w.copy(), self.beta, self.log_norm)


@dataclass
class MixedRep:
    """Complex array in the (x, theta) or (lambda, p) representation."""

    grid: PhaseGrid
    data: np.ndarray
    rep: str  # "xtheta" or "lambdap"


def constant_state(grid: PhaseGrid) -> WignerState:
    """W identically 1/(2*pi*hbar): the phase-space image of the identity."""
    w = np.full(grid.shape, 1.0 / (2.0 * np.pi * grid.hbar))
    return WignerState(grid, w)


def trace_integral(state: WignerState) -> float:
    """Riemann-sum trace: sum of w times the dx*dp cell."""
    return float(state.w.sum() * state.grid.cell)


# -- raw measure-free FFT conjugation helpers (used by the propagators) -----

def _fft_p(array: np.ndarray) -> np.ndarray:
    return _fft.fft(array, axis=1, workers=fft_worker_count())


def _ifft_p(array: np.ndarray) -> np.ndarray:
    return _fft.ifft(array, axis=1, workers=fft_worker_count())


def _fft_x(array: np.ndarray) -> np.ndarray:
    return _fft.fft(array, axis=0, workers=fft_worker_count())


def _ifft_x(array: np.ndarray) -> np.ndarray:
    return _fft.ifft(array, axis=0, workers=fft_worker_count())


# -- public transforms with continuum normalization --------------------------

def _require_finite(array: np.ndarray):
    if not np.all(np.isfinite(array)):
        raise PropagationError("transform input contains non-finite values")


def to_xtheta(state: WignerState) -> MixedRep:
    """Transform along p: g(x, theta) = sum_k W(x, p_k) exp(-i p_k theta) dp."""
    _require_finite(state.w)
    g = state.grid
    phase = np.exp(-1j * g.p_min * g.theta)[None, :]
    data = _fft_p(state.w.astype(complex)) * (g.dp * phase)
    return MixedRep(g, data, "xtheta")


def from_xtheta(rep: MixedRep, imag_tol: float = 1e-12) -> np.ndarray:
    """Invert to_xtheta; returns the real array after checking the residue."""
    if rep.rep != "xtheta":
        raise GridError(f"expected an xtheta representation, got {rep.rep!r}")
    g = rep.grid
    phase = np.exp(1j * g.p_min * g.theta)[None, :]
    w = _ifft_p(rep.data * phase / g.dp)
    return _discard_imag(w, imag_tol)


def to_lambdap(state: WignerState) -> MixedRep:
    """Transform along x: h(lambda, p) = sum_j W(x_j, p) exp(-i x_j lambda) dx."""
    _require_finite(state.w)
    g = state.grid
    phase = np.exp(-1j * g.x_min * g.lam)[:, None]
    data = _fft_x(state.w.astype(complex)) * (g.dx * phase)
    return MixedRep(g, data, "lambdap")


def from_lambdap(rep: MixedRep, imag_tol: float = 1e-12) -> np.ndarray:
    """Invert to_lambdap; returns the real array after checking the residue."""
    if rep.rep != "lambdap":
        raise GridError(f"expected a lambdap representation, got {rep.rep!r}")
    g = rep.grid
    phase = np.exp(1j * g.x_min * g.lam)[:, None]
    w = _ifft_x(rep.data * phase / g.dx)
    return _discard_imag(w, imag_tol)


def _discard_imag(array: np.ndarray, rel_tol: float, message: str | None = None) -> np.ndarray:
    """Drop the imaginary part after asserting it is roundoff-small."""
    real = array.real
    scale = np.abs(real).max()
    residue = np.abs(array.imag).max()
    if scale > 0 and residue > rel_tol * scale:
        raise PropagationError(
            message
            or f"imaginary residue {residue:.3e} exceeds {rel_tol:.1e} of max |w| = {scale:.3e}"
        )
    return np.ascontiguousarray(real)
