import numpy as np
import pytest

from wigner_forge import HamiltonianSpec, WignerState, diagonalize, make_grid

MEXHAT_V = "-0.05*x^2 + 0.03*x^4"
KINETIC = "p^2/2"


@pytest.fixture(scope="session")
def grid128():
    return make_grid(128, 128, (-10, 10), (-10, 10))


@pytest.fixture(scope="session")
def grid64():
    return make_grid(64, 64, (-10, 10), (-10, 10))


@pytest.fixture(scope="session")
def ho_ham():
    return HamiltonianSpec.from_strings("x^2/2", "p^2/2")


@pytest.fixture(scope="session")
def mexhat_ham():
    return HamiltonianSpec.from_strings(MEXHAT_V, KINETIC)


@pytest.fixture(scope="session")
def ho_spectrum(ho_ham, grid128):
    return diagonalize(ho_ham, grid128, 40)


@pytest.fixture(scope="session")
def mexhat_spectrum(mexhat_ham, grid128):
    return diagonalize(mexhat_ham, grid128, 60)


def gaussian_state(grid, x0=0.0, p0=0.0, sigma_x=None, sigma_p=None):
    """Normalized Gaussian Wigner state; defaults to the minimum-uncertainty
    width of the unit harmonic oscillator ground state."""
    hbar = grid.hbar
    sx = np.sqrt(hbar / 2.0) if sigma_x is None else sigma_x
    sp = hbar / (2.0 * sx) if sigma_p is None else sigma_p
    X, P = grid.x[:, None], grid.p[None, :]
    w = np.exp(-((X - x0) ** 2) / (2 * sx**2) - ((P - p0) ** 2) / (2 * sp**2))
    w /= w.sum() * grid.cell
    return WignerState(grid, w)


@pytest.fixture
def ho_ground_analytic(grid128):
    """Exact Wigner function of the unit-oscillator ground state."""
    X, P = grid128.x[:, None], grid128.p[None, :]
    w = np.exp(-(X**2 + P**2) / grid128.hbar) / (np.pi * grid128.hbar)
    return WignerState(grid128, w)


def ho_gibbs_analytic(grid, beta, omega=1.0):
    """Closed-form thermal Wigner function of the unit-mass oscillator."""
    hbar = grid.hbar
    t = np.tanh(beta * hbar * omega / 2.0)
    X, P = grid.x[:, None], grid.p[None, :]
    h = P**2 / 2.0 + (omega**2) * X**2 / 2.0
    w = (t / (np.pi * hbar)) * np.exp(-(2.0 * t / (hbar * omega)) * h)
    return WignerState(grid, w, beta=beta)
