import numpy as np
import pytest

from wigner_forge import (
    ConfigError,
    HamiltonianSpec,
    diagonalize,
    gibbs,
    make_grid,
    purity,
    trace_integral,
    wigner_of_mixture,
)

# golden eigenvalues of p^2/2 - 0.05 x^2 + 0.03 x^4, frozen from the first
# verified diagonalization on the 128-point grid over [-10, 10); the 512-point
# values agree with these to 2e-12
MEXHAT_GOLDEN_128 = [
    0.15813085927046136,
    0.6235012414732337,
    1.2965106087833964,
    2.0764218385594377,
    2.9439777161205005,
]


class TestDiagonalize:
    def test_ho_spectrum(self, ho_spectrum):
        expected = 0.5 + np.arange(10)
        assert np.abs(ho_spectrum.energies[:10] - expected).max() < 1e-8

    def test_eigenfunctions_orthonormal(self, ho_spectrum):
        psi = ho_spectrum.eigenfunctions[:12]
        dx_half = ho_spectrum.grid.dx / 2
        gram = (psi * np.conj(psi)[:, None, :]).sum(axis=2) * dx_half
        assert np.abs(gram - np.eye(12)).max() < 1e-8

    def test_energies_ascending(self, mexhat_spectrum):
        assert np.all(np.diff(mexhat_spectrum.energies) > 0)

    def test_mexhat_golden_values(self, mexhat_spectrum):
        assert np.abs(mexhat_spectrum.energies[:5] - MEXHAT_GOLDEN_128).max() < 1e-9

    def test_box_limit_spacing_approaches_oscillator(self):
        # wide box + quadratic potential: low levels spaced by the oscillator
        # quantum regardless of the box
        grid = make_grid(256, 256, (-16, 16), (-16, 16))
        ham = HamiltonianSpec.from_strings("x^2/2", "p^2/2")
        spectrum = diagonalize(ham, grid, 6)
        assert np.abs(np.diff(spectrum.energies) - 1.0).max() < 1e-8

    def test_n_states_bounds(self, ho_ham, grid64):
        with pytest.raises(ConfigError):
            diagonalize(ho_ham, grid64, 0)
        with pytest.raises(ConfigError):
            diagonalize(ho_ham, grid64, 65)

    def test_diagonalization_cap(self, ho_ham):
        grid = make_grid(2048, 8, (-10, 10), (-10, 10))
        with pytest.raises(ConfigError, match="capped"):
            diagonalize(ho_ham, grid, 4)


class TestWignerOfMixture:
    def test_ho_ground_matches_analytic(self, ho_spectrum, grid128):
        state = wigner_of_mixture(ho_spectrum, [1.0])
        expected = np.exp(-(grid128.x[:, None] ** 2 + grid128.p[None, :] ** 2)) / np.pi
        assert np.abs(state.w - expected).max() < 1e-8

    def test_ho_first_excited_negative_origin(self, ho_spectrum, grid128):
        state = wigner_of_mixture(ho_spectrum, [0.0, 1.0])
        i0 = int(np.argmin(np.abs(grid128.x)))
        j0 = int(np.argmin(np.abs(grid128.p)))
        assert state.w[i0, j0] == pytest.approx(-1 / np.pi, abs=1e-6)

    def test_pure_states_have_unit_purity(self, mexhat_spectrum):
        for index in (0, 1):
            weights = np.zeros(index + 1)
            weights[index] = 1.0
            state = wigner_of_mixture(mexhat_spectrum, weights)
            state.w /= trace_integral(state)
            assert abs(purity(state) - 1.0) < 1e-6

    def test_thermal_mixture_matches_bloch_route(self, ho_spectrum, ho_ham, grid128):
        beta = 2.0
        mixture = wigner_of_mixture(ho_spectrum, np.exp(-beta * ho_spectrum.energies))
        mixture.w /= trace_integral(mixture)
        fast = gibbs(ho_ham, grid128, beta, 1e-3)
        assert np.abs(mixture.w - fast.w).max() <= 1e-4

    def test_discrepancy_halves_with_dbeta(self, ho_spectrum, ho_ham, grid128):
        beta = 2.0
        mixture = wigner_of_mixture(ho_spectrum, np.exp(-beta * ho_spectrum.energies))
        mixture.w /= trace_integral(mixture)
        errors = [
            np.abs(mixture.w - gibbs(ho_ham, grid128, beta, dbeta).w).max()
            for dbeta in (2e-3, 1e-3)
        ]
        assert 1.6 <= errors[0] / errors[1] <= 2.4

    def test_mixture_trace_is_weight_sum(self, ho_spectrum):
        weights = np.array([0.4, 0.3, 0.2])
        state = wigner_of_mixture(ho_spectrum, weights)
        assert trace_integral(state) == pytest.approx(weights.sum(), rel=1e-10)

    def test_signed_weights_allowed(self, ho_spectrum):
        state = wigner_of_mixture(ho_spectrum, [1.0, -0.5])
        assert trace_integral(state) == pytest.approx(0.5, rel=1e-9)

    def test_weights_length_checked(self, ho_spectrum):
        with pytest.raises(ConfigError):
            wigner_of_mixture(ho_spectrum, np.ones(ho_spectrum.n_states + 1))
