import math

import numpy as np
import pytest

from hilbertlab.analytic import TaylorSeries, hlog, integral_mean
from hilbertlab.errors import TruncationError
from hilbertlab.models import CircleMeanSpec, OperatorForm
from hilbertlab.operator import HilbertOperator, cesaro_action, contour_form_derivative

ONE = TaylorSeries.polynomial([1.0])
POINTS = [0.0, 0.5, -0.7j, 0.6 + 0.6j, 0.9, -0.9]


class TestCoefficientForm:
    def test_image_of_one_under_lebesgue(self, lebesgue):
        image = HilbertOperator(lebesgue).coeff_action(ONE, 10)
        np.testing.assert_allclose(image.coeffs, 1.0 / np.arange(1, 12))

    def test_hankel_sums(self, power_two):
        f = TaylorSeries.polynomial([1.0, -2.0, 0.5])
        op = HilbertOperator(power_two)
        mu = power_two.moments(10)
        expected = [mu[n] - 2.0 * mu[n + 1] + 0.5 * mu[n + 2] for n in range(8)]
        np.testing.assert_allclose(op.coeff_action(f, 7).coeffs, expected, rtol=1e-12)

    def test_fft_path_matches_direct_sums(self, lebesgue):
        rng = np.random.default_rng(3)
        a = rng.normal(size=100) * 0.9 ** np.arange(100)
        op = HilbertOperator(lebesgue)
        image = op.coeff_action(TaylorSeries.polynomial(a), 30)
        n = np.arange(31)[:, None]
        k = np.arange(100)[None, :]
        np.testing.assert_allclose(image.coeffs, (a / (n + k + 1.0)).sum(axis=1), rtol=1e-10)

    def test_uncontrolled_truncation(self, lebesgue):
        with pytest.raises(TruncationError):
            HilbertOperator(lebesgue).coeff_action(hlog(100), 10)

    def test_truncated_input_under_atom(self, atom_half):
        op = HilbertOperator(atom_half)
        value, error = op.apply(hlog(200), 0.5)
        # H_mu(f)(z) = w f(t) / (1 - t z) for a single atom
        expected = 2.0 * math.log(2.0) / (1.0 - 0.25)
        assert value == pytest.approx(expected, rel=1e-9)
        assert error < 1e-8

    def test_moment_table_grows(self, power_two):
        op = HilbertOperator(power_two)
        first = op.moments(5).copy()
        np.testing.assert_allclose(op.moments(40)[:5], first)
        assert op.moments(40).size == 40

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.9, 0.99])
    def test_image_of_one_closed_form(self, lebesgue, r):
        image = HilbertOperator(lebesgue).coeff_action(ONE, 2000)
        exact = -math.log1p(-r) / r
        assert abs(image.eval(r) - exact) <= image.tail_bound(r) + 1e-12


class TestIntegralForm:
    @pytest.mark.parametrize("z", POINTS)
    def test_forms_agree_on_polynomials(self, families, corpus, z):
        for measure in families:
            op = HilbertOperator(measure)
            for f in corpus[:5]:
                coeff, _ = op.apply(f, z)
                integral, _ = op.apply(f, z, form=OperatorForm.INTEGRAL)
                assert abs(coeff - integral) < 1e-9, (measure.descriptor, f.label)

    @pytest.mark.parametrize("order", [1, 2])
    def test_derivatives_agree(self, power_two, corpus, order):
        op = HilbertOperator(power_two)
        for f in corpus[:5]:
            coeff, _ = op.apply(f, 0.8j, derivative=order)
            integral = op.kernel_derivative(f, 0.8j, order)
            assert abs(coeff - integral) < 1e-9 * max(1.0, abs(coeff))

    def test_vectorised_points(self, lebesgue):
        op = HilbertOperator(lebesgue)
        z = np.array([0.1, 0.5j, -0.3])
        values = op.integral_action(ONE, z)
        np.testing.assert_allclose(values, -np.log(1.0 - z) / z, rtol=1e-12)

    def test_outside_disk(self, lebesgue):
        with pytest.raises(TruncationError):
            HilbertOperator(lebesgue).integral_action(ONE, 1.0)

    def test_kernel_derivative_order(self, lebesgue):
        with pytest.raises(ValueError):
            HilbertOperator(lebesgue).kernel_derivative(ONE, 0.5, 3)

    def test_derivative_mean_of_image_of_one(self, lebesgue):
        value = HilbertOperator(lebesgue).derivative_mean(ONE, 0.5, 0)
        direct = integral_mean(hlog(2000), 0.5, CircleMeanSpec(p=1.0), rel_tol=1e-12)
        assert value == pytest.approx(direct, rel=1e-7)

    @pytest.mark.parametrize("fixture", ["lebesgue", "power_two", "atom_half"])
    def test_kernel_derivative_matches_differences(self, request, corpus, fixture):
        op = HilbertOperator(request.getfixturevalue(fixture))
        z, h = 0.3 + 0.2j, 1e-5
        for f in (ONE, corpus[0]):
            first = op.kernel_derivative(f, z, 1)
            difference = (op.integral_action(f, z + h) - op.integral_action(f, z - h)) / (2.0 * h)
            assert abs(difference - first) <= 1e-5 * abs(first)
            second = op.kernel_derivative(f, z, 2)
            difference = (op.kernel_derivative(f, z + h, 1) - op.kernel_derivative(f, z - h, 1)) / (
                2.0 * h
            )
            assert abs(difference - second) <= 1e-5 * abs(second)

    @pytest.mark.parametrize("r", [0.5, 0.9, 0.99, 1.0 - 2.0**-10])
    def test_weighted_derivative_bound(self, lebesgue, r):
        # (1 - |z|^2) |H(f)'(z)| <= 2 ||f||_inf, with ||f||_inf = 1 for monomials
        op = HilbertOperator(lebesgue)
        for k in (0, 1, 5):
            f = TaylorSeries.polynomial([0.0] * k + [1.0])
            for angle in (0.0, math.pi / 3.0, math.pi):
                z = r * complex(math.cos(angle), math.sin(angle))
                weighted = (1.0 - r * r) * abs(op.kernel_derivative(f, z, 1))
                assert weighted <= 2.0 + 1e-9, (k, angle)


class TestContourForm:
    @pytest.mark.parametrize("z", [0.3, 0.5 + 0.5j, -0.8, 0.95j])
    def test_matches_coefficient_form(self, lebesgue, corpus, z):
        op = HilbertOperator(lebesgue)
        for f in corpus[:3]:
            coeff, _ = op.apply(f, z, derivative=1)
            contour, error = op.apply(f, z, derivative=1, form=OperatorForm.CONTOUR)
            assert error is None
            assert abs(coeff - contour) < 1e-8 * max(1.0, abs(coeff))

    def test_image_of_one(self):
        # derivative of H(1)(z) = log(1/(1-z))/z
        z = 0.4
        expected = (z / (1.0 - z) + math.log(1.0 - z)) / z**2
        assert contour_form_derivative(ONE, z) == pytest.approx(expected, rel=1e-10)

    def test_requires_lebesgue(self, power_two):
        with pytest.raises(ValueError):
            HilbertOperator(power_two).apply(ONE, 0.5, derivative=1, form=OperatorForm.CONTOUR)

    def test_rejects_bad_derivative(self, lebesgue):
        with pytest.raises(ValueError):
            HilbertOperator(lebesgue).apply(ONE, 0.5, derivative=3)


class TestCesaro:
    def test_coefficients_of_one(self):
        image = cesaro_action(ONE, out_degree=9)
        np.testing.assert_allclose(image.coeffs, 1.0 / np.arange(1, 11))

    def test_averages(self):
        f = TaylorSeries.polynomial([1.0, 2.0, 3.0])
        np.testing.assert_allclose(cesaro_action(f).coeffs, [1.0, 1.5, 2.0])

    def test_integral_form(self):
        z = -0.6 + 0.3j
        f = TaylorSeries.polynomial([1.0, 2.0, 3.0])
        coefficients = cesaro_action(f, out_degree=400)
        assert cesaro_action(f, at=z) == pytest.approx(coefficients.eval(z), rel=1e-10)

    def test_truncated_input_limits_degree(self):
        with pytest.raises(TruncationError):
            cesaro_action(hlog(10), out_degree=20)
