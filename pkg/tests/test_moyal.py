import numpy as np
import pytest

from wigner_forge import (
    AliasingError,
    HamiltonianSpec,
    WignerState,
    build_moyal_kernels,
    energy,
    gibbs,
    moments,
    moyal_propagate,
    purity,
    stationarity_residual,
    trace_integral,
)
from conftest import gaussian_state, ho_gibbs_analytic


class TestKernels:
    def test_unit_modulus(self, grid64, mexhat_ham):
        kernels = build_moyal_kernels(mexhat_ham, grid64, 0.05)
        assert np.abs(np.abs(kernels.v_kernel) - 1.0).max() < 1e-14
        assert np.abs(np.abs(kernels.k_kernel) - 1.0).max() < 1e-14

    def test_zero_potential_and_zero_shift_rows(self, grid64, ho_ham):
        free = HamiltonianSpec.from_strings("0", "p^2/2")
        kernels = build_moyal_kernels(free, grid64, 0.05)
        assert np.all(kernels.v_kernel == 1.0)
        kernels = build_moyal_kernels(ho_ham, grid64, 0.05)
        # theta = 0 is column 0: V difference vanishes
        assert kernels.v_kernel[:, 0] == pytest.approx(1.0, abs=1e-15)
        assert kernels.k_kernel[0, :] == pytest.approx(1.0, abs=1e-15)

    def test_conjugate_odd_exponent(self, grid64, mexhat_ham):
        # the Nyquist bin maps to itself under index reflection and carries an
        # unpaired phase, so the conjugate-odd relation holds off-Nyquist
        kernels = build_moyal_kernels(mexhat_ham, grid64, 0.05)
        flip_p = (-np.arange(grid64.n_p)) % grid64.n_p
        flip_x = (-np.arange(grid64.n_x)) % grid64.n_x
        dv = kernels.v_kernel[:, flip_p] - kernels.v_kernel.conj()
        dk = kernels.k_kernel[flip_x, :] - kernels.k_kernel.conj()
        assert np.abs(np.delete(dv, grid64.n_p // 2, axis=1)).max() < 1e-14
        assert np.abs(np.delete(dk, grid64.n_x // 2, axis=0)).max() < 1e-14

    def test_linear_potential_shifts_momentum(self, grid64):
        # V = x gives constant force -1: after time t the state moves p -> p - t
        ham = HamiltonianSpec.from_strings("x", "0")
        dt = 0.25
        state = gaussian_state(grid64, x0=0.0, p0=1.0, sigma_x=1.0, sigma_p=1.0)
        moved = moyal_propagate(state, ham, 4 * dt, dt)
        expected = gaussian_state(grid64, x0=0.0, p0=1.0 - 4 * dt, sigma_x=1.0, sigma_p=1.0)
        assert np.abs(moved.w - expected.w).max() < 1e-12 * expected.w.max()

    def test_quadratic_kinetic_shifts_position(self, grid64):
        # K = p^2/2 gives dx/dt = p: a p0-boosted packet drifts in +x
        ham = HamiltonianSpec.from_strings("0", "p^2/2")
        state = gaussian_state(grid64, x0=-2.0, p0=2.0, sigma_x=1.0)
        moved = moyal_propagate(state, ham, 0.5, 0.1)
        mean_x, mean_p, _, _ = moments(moved)
        assert mean_x == pytest.approx(-1.0, abs=1e-9)
        assert mean_p == pytest.approx(2.0, abs=1e-9)


class TestPropagation:
    def test_zero_time_is_identity(self, grid64, mexhat_ham):
        state = gaussian_state(grid64)
        out = moyal_propagate(state, mexhat_ham, 0.0, 0.01)
        assert np.array_equal(out.w, state.w)
        assert out is not state

    def test_input_not_mutated(self, grid64, ho_ham):
        state = gaussian_state(grid64, x0=1.0)
        before = state.w.copy()
        moyal_propagate(state, ho_ham, 0.1, 0.01)
        assert np.array_equal(state.w, before)

    def test_ho_quarter_period_rotation(self, grid128, ho_ham):
        # for quadratic H the flow is the classical rotation:
        # (x0, 0) -> (0, -x0) after t = pi/2
        x0 = 2.0
        state = gaussian_state(grid128, x0=x0)
        t = np.pi / 2
        out = moyal_propagate(state, ho_ham, t, t / 50, splitting="yoshida4")
        mean_x, mean_p, _, _ = moments(out)
        assert abs(mean_x) < 1e-6
        assert abs(mean_p + x0) < 1e-6

    def test_trace_purity_energy_conserved(self, grid128, mexhat_ham):
        state = gibbs(mexhat_ham, grid128, 1.5, 5e-3, splitting="strang")
        out = moyal_propagate(state, mexhat_ham, 1.0, 0.01, splitting="yoshida4")
        assert trace_integral(out) == pytest.approx(trace_integral(state), rel=1e-12)
        assert purity(out) == pytest.approx(purity(state), abs=1e-9)
        assert energy(out, mexhat_ham) == pytest.approx(energy(state, mexhat_ham), abs=1e-8)

    def test_aliasing_detected(self, grid128):
        steep = HamiltonianSpec.from_strings("x^4", "p^2/2")
        narrow = gaussian_state(grid128, x0=8.5, sigma_x=0.1, sigma_p=0.1)
        with pytest.raises(AliasingError, match="enlarge grid or reduce dt"):
            moyal_propagate(narrow, steep, 1.0, 0.1)


class TestStationarityResidual:
    def test_analytic_ho_gibbs_is_stationary(self, grid128, ho_ham):
        state = ho_gibbs_analytic(grid128, 2.0)
        residual = stationarity_residual(state, ho_ham, 1.0, 0.01, splitting="yoshida4")
        assert residual <= 1e-8

    def test_free_constant_is_stationary(self, grid64):
        free = HamiltonianSpec.from_strings("0", "p^2/2")
        w = np.full(grid64.shape, 1.0 / (2 * np.pi))
        state = WignerState(grid64, w / (w.sum() * grid64.cell))
        residual = stationarity_residual(state, free, 1.0, 0.05)
        assert residual < 1e-13

    def test_displaced_gaussian_is_not_stationary(self, grid128, mexhat_ham):
        # narrow enough that no tail can pick up momenta beyond the p grid
        # while falling down the quartic wall
        state = gaussian_state(grid128, x0=2.0, sigma_x=0.5)
        residual = stationarity_residual(state, mexhat_ham, 1.0, 0.01)
        assert residual > 1e-2

    def test_first_order_scheme_orders(self, grid128, ho_ham):
        # residual of the exact thermal state is limited by the propagator's
        # own splitting order: halving dt halves it for lie, quarters it for
        # strang
        state = ho_gibbs_analytic(grid128, 2.0)
        r_lie = [stationarity_residual(state, ho_ham, 0.5, dt) for dt in (0.02, 0.01)]
        assert 1.7 <= r_lie[0] / r_lie[1] <= 2.3
        r_strang = [
            stationarity_residual(state, ho_ham, 0.5, dt, splitting="strang")
            for dt in (0.02, 0.01)
        ]
        assert 3.4 <= r_strang[0] / r_strang[1] <= 4.6
