import numpy as np
import pytest

from wigner_forge import (
    GridError,
    PropagationError,
    WignerState,
    constant_state,
    from_lambdap,
    from_xtheta,
    make_grid,
    to_lambdap,
    to_xtheta,
    trace_integral,
)


class TestMakeGrid:
    def test_small_even_grid_lattices(self):
        g = make_grid(8, 8, (-4, 4), (-4, 4))
        assert g.dx == 1.0
        # signed frequency indices {-4..3} in FFT order
        idx = np.rint(g.lam * (g.n_x * g.dx) / (2 * np.pi)).astype(int)
        assert sorted(idx) == list(range(-4, 4))
        assert g.lambda_max == pytest.approx(2 * np.pi * 3 / 8, rel=1e-15)

    def test_default_grid_spacing(self):
        g = make_grid(512, 512, (-10, 10), (-10, 10))
        assert g.dx == pytest.approx(0.0390625, abs=0)
        assert g.dp == pytest.approx(0.0390625, abs=0)

    def test_hbar_must_be_positive(self):
        with pytest.raises(GridError, match="hbar must be positive"):
            make_grid(8, 8, (-4, 4), (-4, 4), hbar=0.0)

    @pytest.mark.parametrize("n_x,n_p", [(7, 8), (8, 9), (4, 8), (8, 6)])
    def test_sizes_even_and_large_enough(self, n_x, n_p):
        with pytest.raises(GridError, match="n_[xp]"):
            make_grid(n_x, n_p, (-4, 4), (-4, 4))

    def test_degenerate_bounds(self):
        with pytest.raises(GridError, match="x bounds"):
            make_grid(8, 8, (4, 4), (-4, 4))
        with pytest.raises(GridError, match="p bounds"):
            make_grid(8, 8, (-4, 4), (2, -2))

    def test_half_shift_reported(self):
        g = make_grid(16, 16, (-4, 4), (-4, 4))
        assert g.x_shift_max == pytest.approx(np.pi / (2 * g.dp))
        assert g.p_shift_max == pytest.approx(np.pi / (2 * g.dx))


class TestTransforms:
    def test_constant_concentrates_at_zero_theta(self, grid64):
        state = WignerState(grid64, np.ones(grid64.shape))
        rep = to_xtheta(state)
        assert rep.data[:, 0] == pytest.approx(grid64.p_max - grid64.p_min, rel=1e-13)
        off = np.abs(rep.data[:, 1:])
        assert off.max() < 1e-10 * (grid64.p_max - grid64.p_min)

    def test_constant_concentrates_at_zero_lambda(self, grid64):
        state = WignerState(grid64, np.ones(grid64.shape))
        rep = to_lambdap(state)
        assert rep.data[0, :] == pytest.approx(grid64.x_max - grid64.x_min, rel=1e-13)
        assert np.abs(rep.data[1:, :]).max() < 1e-10 * (grid64.x_max - grid64.x_min)

    def test_round_trip_identity(self, grid64):
        rng = np.random.default_rng(7)
        w = rng.standard_normal(grid64.shape)
        state = WignerState(grid64, w)
        back = from_xtheta(to_xtheta(state))
        assert np.abs(back - w).max() < 1e-13 * np.abs(w).max()
        back = from_lambdap(to_lambdap(state))
        assert np.abs(back - w).max() < 1e-13 * np.abs(w).max()

    def test_single_mode_against_direct_summation(self, grid64):
        # one cosine mode along p lands on the +-theta_1 bins; the expected
        # spectrum is recomputed here by explicit quadrature
        g = grid64
        theta_1 = 2 * np.pi / (g.n_p * g.dp)
        w = np.tile(np.cos(g.p * theta_1), (g.n_x, 1))
        rep = to_xtheta(WignerState(g, w))
        direct = np.array(
            [np.sum(w[0] * np.exp(-1j * g.p * t)) * g.dp for t in g.theta]
        )
        assert np.abs(rep.data[0] - direct).max() < 1e-10 * np.abs(direct).max()
        mags = np.abs(direct)
        top_two = set(np.argsort(mags)[-2:])
        assert top_two == {1, g.n_p - 1}
        assert mags[1] == pytest.approx((g.p_max - g.p_min) / 2, rel=1e-12)

    def test_single_mode_lambda_axis(self, grid64):
        g = grid64
        lam_1 = 2 * np.pi / (g.n_x * g.dx)
        w = np.tile(np.cos(g.x * lam_1)[:, None], (1, g.n_p))
        rep = to_lambdap(WignerState(g, w))
        direct = np.array(
            [np.sum(w[:, 0] * np.exp(-1j * g.x * lam)) * g.dx for lam in g.lam]
        )
        assert np.abs(rep.data[:, 0] - direct).max() < 1e-10 * np.abs(direct).max()

    def test_conjugate_symmetry_for_real_input(self, grid64):
        rng = np.random.default_rng(11)
        w = rng.standard_normal(grid64.shape)
        rep = to_xtheta(WignerState(grid64, w))
        reflected = rep.data[:, (-np.arange(grid64.n_p)) % grid64.n_p]
        assert np.abs(reflected - rep.data.conj()).max() < 1e-13 * np.abs(rep.data).max()

    def test_parseval(self, grid64):
        rng = np.random.default_rng(13)
        w = rng.standard_normal(grid64.shape)
        state = WignerState(grid64, w)
        g = grid64
        lhs = (w**2).sum() * g.cell
        d_theta = 2 * np.pi / (g.n_p * g.dp)
        rep = to_xtheta(state)
        rhs = (np.abs(rep.data) ** 2).sum() * g.dx * d_theta / (2 * np.pi)
        assert rhs == pytest.approx(lhs, rel=1e-12)
        d_lam = 2 * np.pi / (g.n_x * g.dx)
        rep = to_lambdap(state)
        rhs = (np.abs(rep.data) ** 2).sum() * d_lam * g.dp / (2 * np.pi)
        assert rhs == pytest.approx(lhs, rel=1e-12)

    def test_non_finite_input_rejected(self, grid64):
        w = np.ones(grid64.shape)
        state = WignerState(grid64, w)
        state.w[3, 4] = np.inf  # bypasses construction check by mutation
        with pytest.raises(PropagationError):
            to_xtheta(state)


class TestTraceIntegral:
    def test_identity_image_trace(self):
        g = make_grid(64, 64, (-10, 10), (-10, 10))
        state = constant_state(g)
        assert trace_integral(state) == pytest.approx(400 / (2 * np.pi), rel=1e-14)

    def test_normalized_state(self, grid64):
        rng = np.random.default_rng(3)
        w = np.abs(rng.standard_normal(grid64.shape))
        w /= w.sum() * grid64.cell
        assert trace_integral(WignerState(grid64, w)) == pytest.approx(1.0, abs=1e-12)
