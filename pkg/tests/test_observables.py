import numpy as np
import pytest

from wigner_forge import (
    HamiltonianSpec,
    NumericalError,
    WignerState,
    energy,
    gibbs,
    marginals,
    moments,
    purity,
    report,
    trace_integral,
)
from conftest import gaussian_state, ho_gibbs_analytic


class TestEnergy:
    def test_ho_ground_gaussian(self, grid128, ho_ham, ho_ground_analytic):
        assert energy(ho_ground_analytic, ho_ham) == pytest.approx(0.5, abs=1e-8)

    def test_ho_thermal(self, grid128, ho_ham):
        state = gibbs(ho_ham, grid128, 2.0, 1e-3)
        assert energy(state, ho_ham) == pytest.approx(0.5 / np.tanh(1.0), abs=1e-4)

    def test_free_gaussian_kinetic_moment(self, grid64):
        free = HamiltonianSpec.from_strings("0", "p^2/2")
        X, P = grid64.x[:, None], grid64.p[None, :]
        w = np.exp(-(P**2)) * np.ones_like(X)
        state = WignerState(grid64, w / (w.sum() * grid64.cell))
        assert energy(state, free) == pytest.approx(0.25, abs=1e-8)


class TestPurity:
    def test_pure_gaussian(self, ho_ground_analytic):
        assert purity(ho_ground_analytic) == pytest.approx(1.0, abs=1e-10)

    def test_ho_thermal(self, grid128, ho_ham):
        state = gibbs(ho_ham, grid128, 2.0, 1e-3)
        assert purity(state) == pytest.approx(np.tanh(1.0), abs=1e-4)

    def test_constant_state_closed_form(self, grid64):
        w = np.full(grid64.shape, 0.7)
        state = WignerState(grid64, w)
        tr = trace_integral(state)
        area = (grid64.x_max - grid64.x_min) * (grid64.p_max - grid64.p_min)
        expected = 2 * np.pi * grid64.hbar * grid64.cell * tr**2 / (grid64.cell * area)
        direct = 2 * np.pi * grid64.hbar * (w**2).sum() * grid64.cell
        assert purity(state) == pytest.approx(direct, rel=1e-14)
        assert direct == pytest.approx(expected, rel=1e-12)


class TestMarginals:
    def test_separable_product(self, grid64):
        fx = np.exp(-((grid64.x - 1) ** 2))
        gp = np.cosh(grid64.p / 4) ** -2
        state = WignerState(grid64, np.outer(fx, gp))
        marginal_x, marginal_p = marginals(state)
        scale = marginal_x[0] / fx[0]
        assert marginal_x == pytest.approx(fx * scale, rel=1e-12)
        assert (marginal_x.sum() * grid64.dx) == pytest.approx(trace_integral(state))
        assert (marginal_p.sum() * grid64.dp) == pytest.approx(trace_integral(state))

    def test_ho_ground_coordinate_density(self, grid128, ho_ground_analytic):
        marginal_x, _ = marginals(ho_ground_analytic)
        expected = np.exp(-grid128.x**2) / np.sqrt(np.pi)
        assert np.abs(marginal_x - expected).max() < 1e-8

    def test_thermal_marginals_nonnegative(self, grid128, mexhat_ham):
        state = gibbs(mexhat_ham, grid128, 1.0, 2e-3)
        marginal_x, marginal_p = marginals(state)
        assert marginal_x.min() >= -1e-12 * marginal_x.max()
        assert marginal_p.min() >= -1e-12 * marginal_p.max()


class TestMoments:
    def test_minimum_uncertainty_gaussian(self, ho_ground_analytic):
        mean_x, mean_p, sigma_x, sigma_p = moments(ho_ground_analytic)
        assert abs(mean_x) < 1e-12 and abs(mean_p) < 1e-12
        assert sigma_x == pytest.approx(np.sqrt(0.5), abs=1e-9)
        assert sigma_p == pytest.approx(np.sqrt(0.5), abs=1e-9)
        assert sigma_x * sigma_p == pytest.approx(0.5, abs=1e-9)

    def test_displaced_gaussian_mean(self, grid64):
        state = gaussian_state(grid64, x0=2.0)
        mean_x, _, _, _ = moments(state)
        assert mean_x == pytest.approx(2.0, abs=1e-8)

    def test_ho_thermal_uncertainty_product(self, grid128, ho_ham):
        state = gibbs(ho_ham, grid128, 2.0, 1e-3)
        _, _, sigma_x, sigma_p = moments(state)
        assert sigma_x * sigma_p == pytest.approx(0.5 / np.tanh(1.0), abs=1e-4)

    def test_negative_variance_rejected(self, grid64):
        # signed distribution engineered so the x^2 moment goes negative
        X, P = grid64.x[:, None], grid64.p[None, :]
        w = (1.0 - 0.9 * X**2) * np.exp(-(X**2) - P**2)
        w /= w.sum() * grid64.cell
        state = WignerState(grid64, w)
        with pytest.raises(NumericalError, match="negative variance"):
            moments(state)


class TestReport:
    def test_bundle_consistency(self, grid128, ho_ham):
        state = gibbs(ho_ham, grid128, 2.0, 1e-2)
        obs = report(state, ho_ham)
        assert obs.trace == pytest.approx(1.0, abs=1e-12)
        assert obs.z_estimate == pytest.approx(np.exp(state.log_norm), rel=1e-12)
        assert (obs.marginal_x.sum() * grid128.dx) == pytest.approx(obs.trace)
        assert obs.sigma_x > 0 and obs.sigma_p > 0

    def test_energy_invariant_under_real_time_flow(self, grid128, ho_ham):
        from wigner_forge import moyal_propagate

        state = ho_gibbs_analytic(grid128, 2.0)
        out = moyal_propagate(state, ho_ham, 1.0, 0.01, splitting="yoshida4")
        assert energy(out, ho_ham) == pytest.approx(energy(state, ho_ham), abs=1e-8)
