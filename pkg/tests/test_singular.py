import numpy as np
import pytest
from scipy.integrate import quad

from specqm.chebyshev import chebyshev_t, make_grid
from specqm.singular import (
    cardinal_at,
    cauchy_integral_t,
    cauchy_sum_rule,
    cauchy_weights,
    log_integral_t,
    log_sum_rule,
    log_weights,
    singular_weight_set,
)


def pv_oracle(f, z, fz=None):
    """Principal value of int f(t)/(t-z) dt by singularity subtraction."""
    fz = f(z) if fz is None else fz
    reg = quad(lambda t: (f(t) - fz) / (t - z), -1, 1, limit=400,
               points=[z])[0]
    return reg + fz * np.log((1 - z) / (1 + z))


def log_oracle(f, z):
    """int f(t) log|t-z| dt split at the singularity."""
    lo = quad(lambda t: f(t) * np.log(abs(t - z)), -1, z, limit=400)[0]
    hi = quad(lambda t: f(t) * np.log(abs(t - z)), z, 1, limit=400)[0]
    return lo + hi


class TestCauchyIntegrals:
    def test_order_zero(self):
        z = 0.3
        assert cauchy_integral_t(0, z) == pytest.approx(np.log(0.7 / 1.3),
                                                        abs=1e-15)

    def test_order_one_at_origin(self):
        assert cauchy_integral_t(1, 0.0) == pytest.approx(2.0, abs=1e-15)

    def test_order_four_against_subtraction(self):
        z = 0.37
        got = cauchy_integral_t(4, z)
        assert got == pytest.approx(pv_oracle(lambda t: chebyshev_t(4, t), z),
                                    abs=1e-10)

    @pytest.mark.parametrize("k", [2, 3])
    def test_low_orders_pinned(self, k):
        # guards the even-index-only structure of the polynomial part
        for z in (-0.6, 0.1, 0.8):
            got = cauchy_integral_t(k, z)
            assert got == pytest.approx(pv_oracle(lambda t: chebyshev_t(k, t), z),
                                        abs=1e-11)

    def test_endpoint_rejected(self):
        with pytest.raises(ValueError):
            cauchy_integral_t(3, 1.0)
        with pytest.raises(ValueError):
            cauchy_integral_t(3, -1.0 + 1e-14)


class TestCauchyWeights:
    @pytest.mark.parametrize("z", [0.0, 0.5, -0.5, 0.9, -0.9])
    def test_sum_rule(self, z):
        w, _ = cauchy_weights(24, z)
        assert w.sum() == pytest.approx(cauchy_sum_rule(z), abs=1e-12)

    def test_linear_at_origin(self):
        g = make_grid(16)
        w, _ = cauchy_weights(16, 0.0)
        assert w @ g.ref_nodes == pytest.approx(2.0, abs=1e-12)

    def test_exponential_against_subtraction(self):
        z, n = 0.25, 24
        g = make_grid(n)
        w, _ = cauchy_weights(n, z)
        assert w @ np.exp(g.ref_nodes) == pytest.approx(
            pv_oracle(np.exp, z), abs=1e-10)

    def test_split_reconstruction(self):
        n, z = 20, 0.45
        w, w_reg = cauchy_weights(n, z)
        rebuilt = w_reg + cardinal_at(n, z) * np.log((1 - z) / (1 + z))
        assert np.max(np.abs(w - rebuilt)) < 1e-12

    def test_antisymmetric_at_origin(self):
        w, _ = cauchy_weights(18, 0.0)
        assert np.max(np.abs(w + w[::-1])) < 1e-13

    def test_polynomial_exactness(self):
        n, z = 14, -0.3
        g = make_grid(n)
        w, _ = cauchy_weights(n, z)
        rng = np.random.default_rng(4)
        coef = rng.uniform(-1, 1, n)
        f = lambda t: np.polyval(coef, t)
        assert w @ f(g.ref_nodes) == pytest.approx(pv_oracle(f, z), abs=1e-10)


class TestLogIntegrals:
    def test_endpoint_order_zero(self):
        expect = 2 * np.log(2) - 2
        assert log_integral_t(0, 1.0) == pytest.approx(expect, abs=1e-14)
        assert log_integral_t(0, -1.0) == pytest.approx(expect, abs=1e-14)

    def test_endpoint_order_one(self):
        assert log_integral_t(1, 1.0) == pytest.approx(-1.0, abs=1e-14)
        assert log_integral_t(1, -1.0) == pytest.approx(1.0, abs=1e-14)

    def test_origin(self):
        assert log_integral_t(0, 0.0) == pytest.approx(-2.0, abs=1e-14)

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_interior_against_oracle(self, k):
        z = 0.41
        got = log_integral_t(k, z)
        assert got == pytest.approx(log_oracle(lambda t: chebyshev_t(k, t), z),
                                    abs=1e-9)

    def test_outside_rejected(self):
        with pytest.raises(ValueError):
            log_integral_t(2, 1.5)


class TestLogWeights:
    @pytest.mark.parametrize("z", [0.5, 0.0, -0.73])
    def test_sum_rule(self, z):
        w = log_weights(32, z)
        assert w.sum() == pytest.approx(log_sum_rule(z), abs=1e-12)

    def test_sum_rule_half(self):
        w = log_weights(24, 0.5)
        expect = 0.5 * np.log(0.5) + 1.5 * np.log(1.5) - 2.0
        assert w.sum() == pytest.approx(expect, abs=1e-12)

    def test_cosine_against_oracle(self):
        n, z = 32, 0.3
        g = make_grid(n)
        w = log_weights(n, z)
        assert w @ np.cos(g.ref_nodes) == pytest.approx(
            log_oracle(np.cos, z), abs=1e-9)

    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_continuity_at_endpoints(self, sign):
        n = 16
        end = log_weights(n, sign)
        near = log_weights(n, sign * (1.0 - 1e-12))
        assert np.max(np.abs(end - near)) < 1e-10

    def test_polynomial_exactness(self):
        n, z = 12, 0.62
        g = make_grid(n)
        w = log_weights(n, z)
        rng = np.random.default_rng(9)
        coef = rng.uniform(-1, 1, n)
        f = lambda t: np.polyval(coef, t)
        assert w @ f(g.ref_nodes) == pytest.approx(log_oracle(f, z), abs=1e-9)


class TestWeightSet:
    def test_bundle_invariants(self):
        rng = np.random.default_rng(13)
        for n in (4, 8, 16, 32, 64):
            for z in rng.uniform(-0.95, 0.95, 20):
                ws = singular_weight_set(n, z)
                assert abs(ws.cauchy.sum() - cauchy_sum_rule(z)) < 1e-11
                assert abs(ws.log.sum() - log_sum_rule(z)) < 1e-11
                rebuilt = (ws.cauchy_regular
                           + cardinal_at(n, z) * np.log((1 - z) / (1 + z)))
                assert np.max(np.abs(ws.cauchy - rebuilt)) < 1e-11

    def test_immutability(self):
        ws = singular_weight_set(8, 0.2)
        with pytest.raises(ValueError):
            ws.log[0] = 1.0
