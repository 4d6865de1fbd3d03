"""Slow, independent reference: dense coordinate-space diagonalization and
the direct Wigner transform of eigenstate mixtures.

Every fast path in the package is validated against this module.  The
eigenfunctions are sampled on a doubled-resolution lattice (spacing dx/2) so
the half-step shifts of the Wigner transform land exactly on lattice nodes;
no interpolation enters anywhere.  Half-shifts that would leave the box are
treated as zero rather than wrapped, which removes the periodic ghost image
at half the box period and is exact for bound states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .errors import ConfigError, NumericalError
from .expressions import HamiltonianSpec
from .grid import PhaseGrid, WignerState

__all__ = ["OracleSpectrum", "diagonalize", "wigner_of_mixture"]

MAX_DIAG_POINTS = 1024  # cap on n_x for dense diagonalization


@dataclass(frozen=True)
class OracleSpectrum:
    """Eigenvalues and doubled-grid eigenfunction samples.

    ``eigenfunctions`` has one row per state, sampled at
    x = x_min + j*dx/2 for j in range(2*n_x), orthonormal under the dx/2
    Riemann sum.
    """

    grid: PhaseGrid
    energies: np.ndarray
    eigenfunctions: np.ndarray

    @property
    def n_states(self) -> int:
        return len(self.energies)


def diagonalize(ham: HamiltonianSpec, grid: PhaseGrid, n_states: int) -> OracleSpectrum:
    """Lowest ``n_states`` eigenpairs of K(p) + V(x) on the doubled lattice.

    The kinetic term is spectral (exact for band-limited functions); the
    Hamiltonian matrix is Hermitized before the symmetric eigensolve.
    """
    if n_states < 1 or n_states > grid.n_x:
        raise ConfigError(f"n_states must be in [1, n_x={grid.n_x}], got {n_states}")
    if grid.n_x > MAX_DIAG_POINTS:
        raise ConfigError(
            f"diagonalization is capped at n_x <= {MAX_DIAG_POINTS}, got {grid.n_x}"
        )
    m = 2 * grid.n_x
    dx_half = grid.dx / 2.0
    x_half = grid.x_min + dx_half * np.arange(m)
    p_lattice = 2.0 * np.pi * grid.hbar * _fft.fftfreq(m, dx_half)

    # K_mat = F^dagger diag(K(p)) F via one FFT pass over the identity
    identity = np.eye(m, dtype=complex)
    k_mat = _fft.ifft(ham.kinetic(p_lattice)[:, None] * _fft.fft(identity, axis=0), axis=0)
    h_mat = k_mat + np.diag(ham.potential(x_half))
    h_mat = (h_mat + h_mat.conj().T) / 2.0

    try:
        energies, vectors = np.linalg.eigh(h_mat)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc

    psi = vectors[:, :n_states].T / np.sqrt(dx_half)
    # deterministic global phase: largest-magnitude component real positive
    for row in psi:
        pivot = row[int(np.argmax(np.abs(row)))]
        row *= np.conj(pivot) / abs(pivot)
    return OracleSpectrum(grid, np.array(energies[:n_states]), psi)


def wigner_of_mixture(spectrum: OracleSpectrum, weights) -> WignerState:
    """Direct Wigner transform of sum_n w_n |psi_n><psi_n|.

    Builds the half-shifted density matrix rho(x - s, x + s) on the doubled
    lattice and transforms the shift variable to momentum by explicit
    quadrature on the grid's own p lattice.  Weights may be signed; the
    output is unnormalized (its trace is the weight sum for orthonormal
    states).
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or len(weights) > spectrum.n_states:
        raise ConfigError(
            f"weights must be a vector of length <= n_states={spectrum.n_states}"
        )
    grid = spectrum.grid
    psi = spectrum.eigenfunctions
    m = psi.shape[1]
    n_x = grid.n_x

    j = np.arange(n_x)[:, None]
    offsets = np.arange(-n_x, n_x)[None, :]
    idx_minus = 2 * j - offsets
    idx_plus = 2 * j + offsets
    in_box = (idx_minus >= 0) & (idx_minus < m) & (idx_plus >= 0) & (idx_plus < m)
    idx_minus = idx_minus.clip(0, m - 1)
    idx_plus = idx_plus.clip(0, m - 1)

    rho_half = np.zeros((n_x, 2 * n_x), dtype=complex)
    for weight, row in zip(weights, psi):
        rho_half += weight * row[idx_minus] * np.conj(row[idx_plus])
    rho_half[~in_box] = 0.0

    # theta_k = k*dx/hbar makes hbar*theta/2 exactly k half-lattice spacings
    theta = offsets[0] * grid.dx / grid.hbar
    d_theta = grid.dx / grid.hbar
    transform = np.exp(1j * np.outer(theta, grid.p))
    w = (d_theta / (2.0 * np.pi)) * (rho_half @ transform)
    residue = np.abs(w.imag).max()
    scale = np.abs(w.real).max()
    if scale > 0 and residue > 1e-10 * scale:
        raise NumericalError(
            f"mixture transform produced imaginary residue {residue:.3e}"
        )
    return WignerState(grid, np.ascontiguousarray(w.real))
