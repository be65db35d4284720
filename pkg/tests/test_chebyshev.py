import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specqm.chebyshev import (
    cardinal,
    cardinal_row,
    chebyshev_t,
    chebyshev_u,
    coeffs_from_values,
    diff_matrix,
    interpolate,
    interpolate2d,
    make_grid,
    values_from_coeffs,
)


class TestPolynomials:
    def test_t0_is_one(self):
        assert chebyshev_t(0, 0.37) == 1.0

    def test_t3_at_half(self):
        # cos(3 * 60 deg) = -1
        assert chebyshev_t(3, 0.5) == pytest.approx(-1.0, abs=1e-15)

    def test_t7_matches_trig(self):
        t = 0.123
        assert chebyshev_t(7, t) == pytest.approx(np.cos(7 * np.arccos(t)), abs=1e-14)

    def test_u_start_values(self):
        assert chebyshev_u(-1, 0.9) == 0.0
        assert chebyshev_u(0, 0.44) == 1.0
        assert chebyshev_u(1, 0.25) == pytest.approx(0.5, abs=1e-15)

    def test_u5_matches_trig(self):
        t = 0.3
        theta = np.arccos(t)
        assert chebyshev_u(5, t) == pytest.approx(np.sin(6 * theta) / np.sin(theta),
                                                  abs=1e-14)

    def test_outside_unit_interval(self):
        # recurrence agrees with cosh form for |t| > 1
        t = 1.7
        assert chebyshev_t(6, t) == pytest.approx(np.cosh(6 * np.arccosh(t)),
                                                  rel=1e-13)


class TestGrid:
    def test_single_node(self):
        g = make_grid(1)
        assert g.ref_nodes == pytest.approx([0.0], abs=1e-16)

    def test_two_nodes_symmetric(self):
        g = make_grid(2)
        assert g.ref_nodes == pytest.approx([np.sqrt(2) / 2, -np.sqrt(2) / 2])

    def test_mapped_interval(self):
        g = make_grid(4, 0.0, 2.0)
        k = np.arange(1, 5)
        assert g.nodes == pytest.approx(1 + np.cos(np.pi * (k - 0.5) / 4))

    def test_nodes_interior_and_decreasing(self):
        g = make_grid(33, -2.0, 5.0)
        assert np.all(g.nodes > g.a) and np.all(g.nodes < g.b)
        assert np.all(np.diff(g.nodes) < 0)

    def test_reference_roundtrip_tight(self):
        g = make_grid(24, 0.3, 7.7)
        back = g.to_reference(g.nodes)
        assert np.max(np.abs(back - g.ref_nodes)) < 4 * np.finfo(float).eps

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            make_grid(0)
        with pytest.raises(ValueError):
            make_grid(4, 1.0, 1.0)


class TestCardinal:
    def test_kronecker_property(self):
        g = make_grid(8)
        mat = cardinal_row(g, g.nodes)
        assert np.max(np.abs(mat - np.eye(8))) < 1e-13

    def test_partition_of_unity(self):
        g = make_grid(12, -1.0, 1.0)
        rng = np.random.default_rng(7)
        for x in rng.uniform(-1, 1, 100):
            assert abs(cardinal_row(g, x).sum() - 1.0) < 1e-12

    def test_closed_form_ratio(self):
        # same polynomial as T_N(t) / (T'_N(t_j) (t - t_j))
        g = make_grid(8)
        j, t = 3, 0.2
        tj = g.ref_nodes[j - 1]
        n = 8
        tn = chebyshev_t(n, t)
        # T'_N = N U_{N-1}
        dtn = n * chebyshev_u(n - 1, tj)
        assert cardinal(g, j, t) == pytest.approx(tn / (dtn * (t - tj)), abs=1e-12)


class TestTransforms:
    def test_constant_coefficients(self):
        g = make_grid(5)
        c = coeffs_from_values(g, np.ones(5))
        assert c == pytest.approx([2, 0, 0, 0, 0], abs=1e-14)

    def test_pure_mode(self):
        g = make_grid(6)
        f = chebyshev_t(2, g.ref_nodes)
        c = coeffs_from_values(g, f)
        expect = np.zeros(6)
        expect[2] = 1.0
        assert c == pytest.approx(expect, abs=1e-14)

    def test_round_trip_random(self):
        g = make_grid(17)
        rng = np.random.default_rng(3)
        f = rng.standard_normal(17)
        again = values_from_coeffs(g, coeffs_from_values(g, f))
        assert np.max(np.abs(again - f)) < 1e-13


class TestInterpolation:
    def test_quadratic_reproduced(self):
        g = make_grid(5, 0.0, 2.0)
        f = 3 * g.nodes**2 - g.nodes
        for x in (0.0, 0.31, 1.2, 2.0):
            assert interpolate(g, f, x) == pytest.approx(3 * x**2 - x, abs=1e-13)

    def test_node_value_recovered(self):
        g = make_grid(9, -1.0, 3.0)
        rng = np.random.default_rng(5)
        f = rng.standard_normal(9)
        assert interpolate(g, f, g.nodes[4]) == pytest.approx(f[4], abs=1e-13)

    def test_runge_error_decreases(self):
        # oracle: dense direct Lagrange evaluation through the same nodes
        def direct_lagrange(nodes, vals, x):
            total = 0.0
            for j, (tj, fj) in enumerate(zip(nodes, vals)):
                w = 1.0
                for i, ti in enumerate(nodes):
                    if i != j:
                        w *= (x - ti) / (tj - ti)
                total += w * fj
            return total

        xs = np.linspace(-1, 1, 1000)
        errors = []
        for n in (8, 16, 32, 64):
            g = make_grid(n)
            f = 1.0 / (1.0 + 25.0 * g.ref_nodes**2)
            vals = np.array([interpolate(g, f, x) for x in xs])
            exact = 1.0 / (1.0 + 25.0 * xs**2)
            errors.append(np.max(np.abs(vals - exact)))
        assert errors == sorted(errors, reverse=True)
        # and the fast evaluation agrees with the direct Lagrange oracle
        g = make_grid(12)
        f = 1.0 / (1.0 + 25.0 * g.ref_nodes**2)
        for x in (-0.73, 0.11, 0.62):
            assert interpolate(g, f, x) == pytest.approx(
                direct_lagrange(g.ref_nodes, f, x), abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**32 - 1))
    def test_polynomial_reproduction_property(self, n, seed):
        rng = np.random.default_rng(seed)
        coef = rng.uniform(-2, 2, n)  # degree <= n-1
        g = make_grid(n, -1.0, 1.0)
        f = np.polyval(coef, g.nodes)
        for x in rng.uniform(-1, 1, 5):
            expected = np.polyval(coef, x)
            scale = max(1.0, abs(expected))
            assert abs(interpolate(g, f, x) - expected) < 1e-12 * scale


class TestInterpolate2d:
    def test_bilinear_product(self):
        gx = make_grid(6)
        gy = make_grid(6)
        f = np.outer(gx.ref_nodes, gy.ref_nodes)
        assert interpolate2d(gx, gy, f, 0.3, -0.5) == pytest.approx(0.3 * -0.5,
                                                                    abs=1e-13)

    def test_node_pair(self):
        gx = make_grid(5)
        gy = make_grid(5)
        rng = np.random.default_rng(11)
        f = rng.standard_normal((5, 5))
        assert interpolate2d(gx, gy, f, gx.nodes[1], gy.nodes[3]) == pytest.approx(
            f[1, 3], abs=1e-12)

    def test_exponential_surface(self):
        gx = make_grid(16)
        gy = make_grid(16)
        f = np.exp(gx.ref_nodes[:, None] + gy.ref_nodes[None, :])
        got = interpolate2d(gx, gy, f, 0.1, -0.2)
        assert abs(got - np.exp(0.1 - 0.2)) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            interpolate2d(make_grid(4), make_grid(5), np.zeros((4, 4)), 0, 0)


class TestDifferentiation:
    def test_constant_and_identity(self):
        g = make_grid(10, -1.0, 1.0)
        d = diff_matrix(g)
        assert np.max(np.abs(d @ np.ones(10))) < 1e-12
        assert d @ g.nodes == pytest.approx(np.ones(10), abs=1e-12)

    def test_sine_derivative(self):
        g = make_grid(24)
        d = diff_matrix(g)
        assert np.max(np.abs(d @ np.sin(g.nodes) - np.cos(g.nodes))) < 1e-10

    def test_interval_scaling(self):
        g = make_grid(20, 0.0, 4.0)
        d = diff_matrix(g)
        assert np.max(np.abs(d @ g.nodes**3 - 3 * g.nodes**2)) < 1e-10

    def test_repeated_differentiation_annihilates(self):
        # applying D n times to a degree-(n-1) polynomial gives ~zero up to
        # round-off amplified along the way (bounded by ||D||^n)
        n = 10
        g = make_grid(n)
        d = diff_matrix(g)
        rng = np.random.default_rng(2)
        f = np.polyval(rng.uniform(-1, 1, n), g.nodes)
        out = f.copy()
        for _ in range(n):
            out = d @ out
        guard = np.linalg.norm(d, np.inf) ** n * np.max(np.abs(f))
        assert np.max(np.abs(out)) < 1e-8 * guard
        # a genuinely broken D would land near the guard scale itself
        assert np.max(np.abs(out)) < 1e-3
