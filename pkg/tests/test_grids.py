"""Phase and polar quadrature grids: node layout, weights, resolution gates."""

import numpy as np
import pytest

from npwigner import GridCompatibilityError, PhaseGrid, PolarGrid


class TestPhaseGrid:
    def test_nodes_uniform_on_half_open_interval(self):
        grid = PhaseGrid(8)
        expected = -np.pi + 2.0 * np.pi * np.arange(8) / 8
        assert np.array_equal(grid.nodes, expected)
        assert grid.nodes[0] == -np.pi
        assert grid.nodes[-1] < np.pi
        assert np.all(np.diff(grid.nodes) > 0)

    def test_weight_times_points_spans_full_circle(self):
        grid = PhaseGrid(12)
        assert grid.weight * grid.m_points == pytest.approx(2.0 * np.pi, rel=1e-15)

    def test_default_grid_is_power_of_two_with_margin(self):
        for dim in (1, 2, 5, 16, 33):
            grid = PhaseGrid.default_for(dim)
            m = grid.m_points
            assert m >= 4 * dim
            assert m & (m - 1) == 0
            assert grid.resolves(dim)

    def test_resolution_gate(self):
        grid = PhaseGrid(16)
        assert grid.resolves(8)
        assert not grid.resolves(9)
        grid.require_resolves(8)
        with pytest.raises(GridCompatibilityError):
            grid.require_resolves(9)

    def test_rejects_nonpositive_point_count(self):
        with pytest.raises(GridCompatibilityError):
            PhaseGrid(0)

    def test_quadrature_exact_for_resolved_modes(self):
        # w * sum e^{i m phi_j} = 2 pi delta_{m 0} for |m| < M.
        grid = PhaseGrid(16)
        for m in range(-15, 16):
            total = grid.weight * np.sum(np.exp(1j * m * grid.nodes))
            expected = 2.0 * np.pi if m == 0 else 0.0
            assert abs(total - expected) < 1e-13


class TestPolarGrid:
    def test_radial_nodes_inside_interval_weights_positive(self):
        grid = PolarGrid(r_max=3.0, n_r=40, m_gamma=16)
        assert np.all(grid.r_nodes > 0.0)
        assert np.all(grid.r_nodes < 3.0)
        assert np.all(np.diff(grid.r_nodes) > 0)
        assert np.all(grid.r_weights > 0.0)
        assert np.sum(grid.r_weights) == pytest.approx(3.0, rel=1e-14)

    def test_angular_nodes_uniform(self):
        grid = PolarGrid(r_max=3.0, n_r=10, m_gamma=8)
        expected = -np.pi + 2.0 * np.pi * np.arange(8) / 8
        assert np.array_equal(grid.gamma_nodes, expected)
        assert grid.gamma_weight == pytest.approx(2.0 * np.pi / 8, rel=1e-15)

    def test_unit_gaussian_normalization(self):
        # Integral of e^{-|alpha|^2}/pi over the plane is 1; the default grid
        # must reproduce it to 1e-8 for every supported dimension.
        for dim in (1, 2, 8, 32):
            grid = PolarGrid.default_for(dim)
            samples = np.exp(-grid.r_nodes[:, None] ** 2) / np.pi
            samples = np.broadcast_to(samples, (grid.n_r, grid.m_gamma))
            assert abs(grid.integrate(samples) - 1.0) < 1e-8

    def test_default_r_max_floor(self):
        assert PolarGrid.default_for(2).r_max == pytest.approx(4.5)
        assert PolarGrid.default_for(64).r_max == pytest.approx(1.5 * 8.0)

    def test_integrate_shape_gate(self):
        grid = PolarGrid(r_max=2.0, n_r=5, m_gamma=4)
        with pytest.raises(GridCompatibilityError):
            grid.integrate(np.zeros((4, 4)))

    def test_angular_resolution_gate(self):
        grid = PolarGrid(r_max=2.0, n_r=5, m_gamma=8)
        grid.require_resolves_angular(4)
        with pytest.raises(GridCompatibilityError):
            grid.require_resolves_angular(5)

    def test_rejects_bad_parameters(self):
        with pytest.raises(GridCompatibilityError):
            PolarGrid(r_max=0.0, n_r=5, m_gamma=4)
        with pytest.raises(GridCompatibilityError):
            PolarGrid(r_max=np.inf, n_r=5, m_gamma=4)
        with pytest.raises(GridCompatibilityError):
            PolarGrid(r_max=1.0, n_r=0, m_gamma=4)

    def test_polynomial_radial_exactness(self):
        # Gauss-Legendre with n_r nodes integrates r^2 r dr exactly.
        grid = PolarGrid(r_max=2.0, n_r=6, m_gamma=4)
        samples = np.broadcast_to((grid.r_nodes ** 2)[:, None], (6, 4))
        exact = 2.0 * np.pi * 2.0 ** 4 / 4.0
        assert grid.integrate(samples) == pytest.approx(exact, rel=1e-14)
