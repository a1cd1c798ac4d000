import math

import numpy as np
import pytest
from loguru import logger
from scipy.special import hyp2f1

from hilbertlab.analytic import (
    TaylorSeries,
    circle_values,
    hlog,
    integral_mean,
    make_function,
    resolved_radius,
)
from hilbertlab.errors import DescriptorError, TruncationError
from hilbertlab.models import CircleMeanSpec


class TestTaylorSeries:
    def test_eval_polynomial(self):
        f = TaylorSeries.polynomial([1.0, 2.0, 3.0])
        assert f.eval(0.5) == pytest.approx(2.75)
        assert f(2.0) == pytest.approx(17.0)

    def test_eval_vectorised(self):
        f = TaylorSeries.polynomial([1.0, -1.0])
        z = np.array([0.0, 0.5j, -0.25])
        np.testing.assert_allclose(f.eval(z), 1.0 - z)

    def test_truncated_series_rejects_boundary(self):
        f = hlog(50)
        with pytest.raises(TruncationError):
            f.eval(1.0)
        with pytest.raises(TruncationError):
            f.eval(np.array([0.1, -1.2]))

    def test_sup_bound_is_enforced(self):
        with pytest.raises(ValueError, match="exceeds sup_bound"):
            TaylorSeries(np.array([1.0, 3.0]), sup_bound=2.0, truncated=True)

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(ValueError):
            TaylorSeries(np.array([]))
        with pytest.raises(ValueError):
            TaylorSeries(np.array([1.0, np.nan]))

    def test_differentiate(self):
        f = TaylorSeries.polynomial([1.0, 2.0, 3.0])
        np.testing.assert_allclose(f.differentiate(1).coeffs, [2.0, 6.0])
        np.testing.assert_allclose(f.differentiate(2).coeffs, [6.0])
        assert f.differentiate(0) is f

    def test_differentiate_past_degree_gives_zero(self):
        f = make_function("const:5")
        derivative = f.differentiate(3)
        assert derivative.degree == 0
        assert derivative.eval(0.3) == 0.0

    def test_fractional_derivative(self):
        f = TaylorSeries.polynomial([1.0, 1.0, 1.0])
        np.testing.assert_allclose(
            f.fractional_derivative(0.5).coeffs, [1.0, math.sqrt(2.0), math.sqrt(3.0)]
        )
        np.testing.assert_allclose(f.fractional_derivative(1.0).coeffs, [1.0, 2.0, 3.0])

    def test_tail_bound_geometric(self):
        f = make_function("geom:N=10")
        # sum_{n > 10} 2^-n
        assert f.tail_bound(0.5) == pytest.approx(2.0**-10, rel=1e-12)

    def test_tail_bound_first_derivative(self):
        f = make_function("geom:N=20")
        r = 0.6
        n = np.arange(21, 2000, dtype=float)
        direct = float(np.sum(n * r ** (n - 1.0)))
        assert f.tail_bound(r, order=1) == pytest.approx(direct, rel=1e-10)

    def test_polynomials_have_no_tail(self):
        assert TaylorSeries.polynomial([1.0, 2.0]).tail_bound(0.99, order=2) == 0.0

    def test_scalar_algebra(self):
        f = TaylorSeries.polynomial([1.0, 2.0])
        g = TaylorSeries.polynomial([0.0, 0.0, 1.0])
        np.testing.assert_allclose((f + g).coeffs, [1.0, 2.0, 1.0])
        np.testing.assert_allclose((2.0 * f).coeffs, [2.0, 4.0])
        assert (f * 1j).eval(0.5) == pytest.approx(2.0j)


class TestFactory:
    def test_hlog_coefficients(self):
        f = make_function("hlog:N=5")
        np.testing.assert_allclose(f.coeffs, 1.0 / np.arange(1, 7))
        assert f.truncated
        assert f.sup_bound == 1.0

    def test_monomial(self):
        f = make_function("monomial:k=3")
        assert f.degree == 3
        assert f.eval(0.5) == pytest.approx(0.125)

    def test_poly_with_complex_and_fraction(self):
        f = make_function("poly:1/2,1+2i")
        np.testing.assert_allclose(f.coeffs, [0.5, 1.0 + 2.0j])

    def test_error_points_at_offending_item(self):
        with pytest.raises(DescriptorError) as info:
            make_function("poly:1,x")
        assert info.value.position == 7

    def test_unknown_name(self):
        with pytest.raises(DescriptorError, match="unknown function"):
            make_function("sine:1")


class TestIntegralMeans:
    def test_circle_values_with_folding(self):
        coeffs = np.arange(1.0, 41.0) * 0.9 ** np.arange(40)
        r, nodes = 0.7, 16
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        direct = np.polynomial.polynomial.polyval(r * np.exp(1j * theta), coeffs)
        np.testing.assert_allclose(circle_values(coeffs, r, nodes), direct, rtol=1e-12)

    def test_parseval(self):
        f = TaylorSeries.polynomial([1.0, 2.0, 3.0])
        value = integral_mean(f, 0.5, CircleMeanSpec(p=2.0))
        assert value == pytest.approx(math.sqrt(1.0 + 1.0 + 9.0 / 16.0))

    @pytest.mark.parametrize("r", [0.3, 0.6, 0.9])
    def test_hypergeometric_oracle(self, r):
        # M_1(r, 1 + z) = 2F1(-1/2, -1/2; 1; r^2)
        f = TaylorSeries.polynomial([1.0, 1.0])
        value = integral_mean(f, r, CircleMeanSpec(p=1.0))
        assert value == pytest.approx(hyp2f1(-0.5, -0.5, 1.0, r * r), rel=1e-9)

    def test_sup_mean(self):
        f = TaylorSeries.polynomial([1.0, 1.0])
        assert integral_mean(f, 0.4, CircleMeanSpec(p=math.inf)) == pytest.approx(1.4)

    def test_centre_value(self):
        f = TaylorSeries.polynomial([3.0 + 4.0j, 1.0])
        assert integral_mean(f, 0.0, CircleMeanSpec(p=1.0)) == pytest.approx(5.0)

    def test_outside_disk(self):
        with pytest.raises(TruncationError):
            integral_mean(hlog(10), 1.0, CircleMeanSpec(p=1.0))

    def test_resolved_radius(self):
        assert resolved_radius(TaylorSeries.polynomial([1.0, 2.0])) == 1.0
        assert resolved_radius(hlog(100)) == pytest.approx(1e-3 ** (1.0 / 101.0))

    @pytest.mark.parametrize(("r", "warned"), [(0.5, False), (0.99, True)])
    def test_warns_beyond_resolution(self, r, warned):
        messages = []
        handler = logger.add(messages.append, level="WARNING", format="{message}")
        try:
            integral_mean(hlog(100), r, CircleMeanSpec(p=2.0))
        finally:
            logger.remove(handler)
        assert any("resolution" in message for message in messages) is warned
