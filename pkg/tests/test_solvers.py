import numpy as np
import pytest

from specqm.chebyshev import cardinal_row, make_grid
from specqm.quadrature import integrate_interval, spectral_operators
from specqm.solvers import (
    kernel_on_grid,
    solve_cauchy_singular,
    solve_fredholm,
    solve_integrodiff_1,
    solve_integrodiff_2,
    solve_log_singular,
    solve_ode_ivp,
    solve_ode_mixed,
    solve_semicontinuous,
    solve_volterra,
)


class TestOdeIvp:
    def test_sine(self):
        g = make_grid(32, 0.0, np.pi)
        rep, dy = solve_ode_ivp(1.0, 0.0, 0.0, 1.0, g)
        assert np.max(np.abs(rep.solution - np.sin(g.nodes))) < 1e-11
        assert np.max(np.abs(dy - np.cos(g.nodes))) < 1e-11

    def test_pure_forcing(self):
        g = make_grid(16, 0.0, 1.0)
        rep, _ = solve_ode_ivp(0.0, 1.0, 0.0, 0.0, g)
        assert np.max(np.abs(rep.solution - g.nodes**2 / 2)) < 1e-13

    def test_exponential(self):
        g = make_grid(24, 0.0, 1.0)
        rep, dy = solve_ode_ivp(-1.0, 0.0, 1.0, 1.0, g)
        assert np.max(np.abs(rep.solution - np.exp(g.nodes))) < 1e-11
        assert np.max(np.abs(dy - np.exp(g.nodes))) < 1e-11

    def test_small_grid_rejected(self):
        with pytest.raises(ValueError):
            solve_ode_ivp(1.0, 0.0, 0.0, 1.0, make_grid(2, 0.0, 1.0))


class TestOdeMixed:
    def test_constant(self):
        g = make_grid(12, 0.0, 1.0)
        rep = solve_ode_mixed(0.0, 0.0, 1.0, 0.0, g)
        assert np.max(np.abs(rep.solution - 1.0)) < 1e-13

    def test_quadratic(self):
        g = make_grid(12, 0.0, 1.0)
        rep = solve_ode_mixed(0.0, 2.0, 0.0, 2.0, g)
        assert np.max(np.abs(rep.solution - g.nodes**2)) < 1e-12

    def test_near_resonance_flagged(self):
        # y'' + y = 0 with y(0) = 0, y'(pi/2) = 0 sits on an eigenvalue
        g = make_grid(24, 0.0, np.pi / 2)
        rep = solve_ode_mixed(1.0, 0.0, 0.0, 0.0, g)
        assert rep.cond > 1e12


class TestVolterra:
    def test_exponential_growth(self):
        g = make_grid(24, 0.0, 1.0)
        rep = solve_volterra(lambda x, s: 1.0, 1.0, 1.0, g)
        assert np.max(np.abs(rep.solution - np.exp(g.nodes))) < 1e-11

    def test_lambda_zero_identity(self):
        g = make_grid(10, 0.0, 2.0)
        f = np.sin(g.nodes)
        rep = solve_volterra(lambda x, s: x + s, f, 0.0, g)
        assert np.max(np.abs(rep.solution - f)) < 1e-14

    def test_cosine_from_difference_kernel(self):
        g = make_grid(24, 0.0, 1.0)
        rep = solve_volterra(lambda x, s: x - s, 1.0, -1.0, g)
        assert np.max(np.abs(rep.solution - np.cos(g.nodes))) < 1e-11

    def test_upper_direction(self):
        # y(x) = 1 + int_x^1 y ds has solution e^(1-x)
        g = make_grid(24, 0.0, 1.0)
        rep = solve_volterra(lambda x, s: 1.0, 1.0, 1.0, g, direction="upper")
        assert np.max(np.abs(rep.solution - np.exp(1.0 - g.nodes))) < 1e-11

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            solve_volterra(lambda x, s: 1.0, 1.0, 1.0, make_grid(4), direction="up")


class TestFredholm:
    def test_degenerate_kernel(self):
        # y = x + lam * int_0^1 x s y(s) ds has solution 3x/(3 - lam)
        g = make_grid(16, 0.0, 1.0)
        rep = solve_fredholm(lambda x, s: x * s, lambda x: x, 1.0, g)
        assert np.max(np.abs(rep.solution - 1.5 * g.nodes)) < 1e-12

    def test_lambda_zero(self):
        g = make_grid(8, 0.0, 1.0)
        rep = solve_fredholm(lambda x, s: np.cos(x * s), lambda x: x**2, 0.0, g)
        assert np.max(np.abs(rep.solution - g.nodes**2)) < 1e-14

    def test_characteristic_value_flagged(self):
        g = make_grid(16, 0.0, 1.0)
        rep = solve_fredholm(lambda x, s: x * s, lambda x: x, 3.0, g)
        assert rep.near_singular


class TestSemicontinuous:
    def test_reduces_to_fredholm(self):
        g = make_grid(20, 0.0, 1.0)
        k = lambda x, s: np.exp(-x * s)
        a = solve_fredholm(k, lambda x: x, 0.8, g)
        b = solve_semicontinuous(k, k, lambda x: x, 0.8, g)
        assert np.max(np.abs(a.solution - b.solution)) < 1e-11

    def test_lambda_zero(self):
        g = make_grid(10, 0.0, 1.0)
        f = np.cos(g.nodes)
        rep = solve_semicontinuous(lambda x, s: s, lambda x, s: x, f, 0.0, g)
        assert np.max(np.abs(rep.solution - f)) < 1e-14

    def test_greens_function_kernel_vs_ode(self):
        # kernel -s(1-x) below, -x(1-s) above: y = f + lam int G y solves
        # y'' = -lam y + f'' with y(0) = f(0), y(1) = f(1); cross-check by
        # iterating the equivalent fixed point with the Fredholm structure
        g = make_grid(32, 0.0, 1.0)
        lam = 0.8
        f = np.sin(np.pi * g.nodes) + g.nodes

        rep = solve_semicontinuous(lambda x, s: -s * (1 - x),
                                   lambda x, s: -x * (1 - s), f, lam, g)
        y = rep.solution
        # residual check: y - lam * int G y - f = 0 with dense quadrature
        k1 = kernel_on_grid(g, lambda x, s: -s * (1 - x))
        k2 = kernel_on_grid(g, lambda x, s: -x * (1 - s))
        ops = spectral_operators(32)
        integral = g.halfwidth * ((k1 * ops.antideriv_lower) @ y
                                  + (k2 * ops.antideriv_upper) @ y)
        assert np.max(np.abs(y - lam * integral - f)) < 1e-9


class TestCauchySingular:
    def test_lambda_zero(self):
        g = make_grid(16, -1.0, 1.0)
        f = np.cos(g.nodes)
        rep = solve_cauchy_singular(lambda x, s: 1.0, f, 0.0, 0.2, g)
        assert np.max(np.abs(rep.solution - f)) < 1e-14

    def test_neumann_series_small_lambda(self):
        # k == 1, f == 1: first iterate adds lam * log((1-z)/(1+z)),
        # second iterates the constant again, so y = 1/(1 - lam*L0)
        g = make_grid(24, -1.0, 1.0)
        lam, z = 0.01, 0.3
        ell = np.log((1 - z) / (1 + z))
        rep = solve_cauchy_singular(lambda x, s: 1.0, 1.0, lam, z, g)
        expect = 1.0 / (1.0 - lam * ell)
        assert np.max(np.abs(rep.solution - expect)) < 1e-12

    def test_residual_contract(self):
        g = make_grid(20, 0.0, 2.0)
        rep = solve_cauchy_singular(lambda x, s: np.exp(-x - s), lambda x: x,
                                    0.4, 1.1, g)
        assert rep.residual < 1e-11 * (1.0 + rep.cond) * np.linalg.norm(rep.solution)

    def test_endpoint_rejected(self):
        g = make_grid(8, 0.0, 1.0)
        with pytest.raises(ValueError):
            solve_cauchy_singular(lambda x, s: 1.0, 1.0, 0.1, 1.0, g)


class TestLogSingular:
    def test_lambda_zero(self):
        g = make_grid(12, 0.0, 1.0)
        f = np.exp(g.nodes)
        rep = solve_log_singular(lambda x, s: 1.0, f, 0.0, 0.5, g)
        assert np.max(np.abs(rep.solution - f)) < 1e-14

    def test_constant_solution_closed_form(self):
        # on [-1, 1] with z = 0, k == 1, f == 1: y is constant
        # c = 1 + lam*c*int log|s| ds = 1 - 2*lam*c
        g = make_grid(16, -1.0, 1.0)
        lam = 0.05
        rep = solve_log_singular(lambda x, s: 1.0, 1.0, lam, 0.0, g)
        assert np.max(np.abs(rep.solution - 1.0 / (1.0 + 2.0 * lam))) < 1e-10

    def test_scale_correction_on_shifted_interval(self):
        # same equation mapped to [0, 2] with z = 1: log(h) term exercised;
        # solution constant c = 1/(1 + 2 lam) again since int_0^2 log|s-1| ds = -2
        g = make_grid(32, 0.0, 2.0)
        lam = 0.05
        rep = solve_log_singular(lambda x, s: 1.0, 1.0, lam, 1.0, g)
        assert np.max(np.abs(rep.solution - 1.0 / (1.0 + 2.0 * lam))) < 1e-8

    def test_against_dense_product_oracle(self):
        # fine-grid solve is the oracle for a nonconstant kernel
        lam, z = 0.2, 0.7

        def solve_at(n):
            g = make_grid(n, 0.0, 2.0)
            return g, solve_log_singular(lambda x, s: np.exp(-x) * (1 + s),
                                         lambda x: np.cos(x), lam, z, g).solution

        g_small, y_small = solve_at(24)
        g_big, y_big = solve_at(96)
        interp = cardinal_row(g_big, g_small.nodes).T @ y_big
        assert np.max(np.abs(y_small - interp)) < 1e-8


class TestIntegroDifferential:
    def test_first_order_trivial(self):
        g = make_grid(16, 0.0, 1.0)
        rep = solve_integrodiff_1(0.0, 1.0, lambda x, s: 0.0, 0.0, g)
        assert np.max(np.abs(rep.solution - g.nodes)) < 1e-13

    def test_first_order_decay(self):
        g = make_grid(20, 0.0, 1.0)
        rep = solve_integrodiff_1(1.0, 0.0, lambda x, s: 0.0, 1.0, g)
        assert np.max(np.abs(rep.solution - np.exp(-g.nodes))) < 1e-11

    def test_first_order_full_coupling(self):
        # y' = int_0^1 y ds, y(0) = 1: fixed-point oracle on the mesh,
        # which converges to the closed form y = 1 + 2x
        g = make_grid(16, 0.0, 1.0)
        rep = solve_integrodiff_1(0.0, 0.0, lambda x, s: 1.0, 1.0, g)
        y = np.ones(16)
        for _ in range(60):
            y = 1.0 + integrate_interval(g, y) * g.nodes
        assert np.max(np.abs(rep.solution - y)) < 1e-10
        assert np.max(np.abs(rep.solution - (1.0 + 2.0 * g.nodes))) < 1e-11

    def test_second_order_reduces_to_ivp(self):
        g = make_grid(20, 0.0, 1.0)
        a = solve_integrodiff_2(lambda x: 1.0 + 0 * x, lambda x, s: 0.0,
                                0.3, 0.7, g)
        b, _ = solve_ode_ivp(lambda x: 1.0 + 0 * x, 0.0, 0.3, 0.7, g)
        assert np.max(np.abs(a.solution - b.solution)) < 1e-12

    def test_second_order_linear(self):
        g = make_grid(12, 0.0, 1.0)
        rep = solve_integrodiff_2(0.0, lambda x, s: 0.0, 0.0, 1.0, g)
        assert np.max(np.abs(rep.solution - g.nodes)) < 1e-13

    def test_second_order_separable_self_consistency(self):
        # y'' + y = sin(x) * c with c = int_0^pi sin(s) y(s) ds.  Plain
        # source iteration is repulsive here (resonant forcing), but the
        # separable structure closes exactly with two plain ODE solves:
        # y = y0 + c*y1 and c = (sin, y0) + c (sin, y1).
        g = make_grid(40, 0.0, np.pi)
        p = np.ones(40)
        rep0, _ = solve_ode_ivp(p, 0.0, 0.0, 1.0, g)
        rep1, _ = solve_ode_ivp(p, np.sin(g.nodes), 0.0, 0.0, g)
        a = integrate_interval(g, np.sin(g.nodes) * rep0.solution)
        b = integrate_interval(g, np.sin(g.nodes) * rep1.solution)
        c = a / (1.0 - b)
        oracle = rep0.solution + c * rep1.solution
        direct = solve_integrodiff_2(p, lambda x, s: np.sin(x) * np.sin(s),
                                     0.0, 1.0, g)
        assert np.max(np.abs(direct.solution - oracle)) < 1e-9


class TestAssemblyPieces:
    def test_schur_product_matches_loops(self):
        rng = np.random.default_rng(17)
        a = rng.standard_normal((8, 8))
        b = rng.standard_normal((8, 8))
        loop = np.empty((8, 8))
        for i in range(8):
            for j in range(8):
                loop[i, j] = a[i, j] * b[i, j]
        assert np.array_equal(a * b, loop)

    def test_kernel_on_grid_matrix_input(self):
        g = make_grid(5, 0.0, 1.0)
        k = np.arange(25.0).reshape(5, 5)
        assert np.array_equal(kernel_on_grid(g, k), k)
        with pytest.raises(ValueError):
            kernel_on_grid(g, np.zeros((4, 4)))

    @pytest.mark.parametrize("n", [32, 64])
    def test_refinement_stability(self, n):
        # smooth Fredholm problem changes negligibly beyond N = 32
        g1 = make_grid(n, 0.0, 1.0)
        g2 = make_grid(2 * n, 0.0, 1.0)
        k = lambda x, s: np.exp(-((x - s) ** 2))
        f = lambda x: np.cos(3 * x)
        y1 = solve_fredholm(k, f, 0.7, g1).solution
        y2 = solve_fredholm(k, f, 0.7, g2).solution
        interp = cardinal_row(g2, g1.nodes).T @ y2
        assert np.max(np.abs(y1 - interp)) < 1e-9
