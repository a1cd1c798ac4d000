"""Property-based tests for norm, operator and quadrature invariants."""

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hilbertlab.analytic import TaylorSeries, integral_mean
from hilbertlab.measures import BUNDLED_FAMILIES, PowerWeight, parse_measure
from hilbertlab.models import CircleMeanSpec, GridConfig
from hilbertlab.operator import HilbertOperator
from hilbertlab.spaces import (
    block_equivalence,
    kernel_mean_bounds,
    norm,
    normalized_kernel_mean,
    parse_space,
)

GRID = GridConfig(J=6, angular_nodes=64, truncation=200, rel_tol=1e-9)
NORMED_SPACES = [
    "hardy:q=1", "hardy:q=2", "bloch", "zygmund1", "hl:q=2", "dirichlet:q=2", "bq:q=1/2",
]
# Sup means over a finite angular grid may under-estimate, so p = inf is left out here.
MEAN_SPACES = [space for space in NORMED_SPACES if space != "bloch"]
PROPERTY_SETTINGS = settings(
    max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def polynomials(draw, max_degree: int = 8) -> TaylorSeries:
    """Complex polynomials with coefficients damped by 4^-k."""
    degree = draw(st.integers(min_value=0, max_value=max_degree))
    real = draw(arrays(np.float64, degree + 1, elements=finite))
    imag = draw(arrays(np.float64, degree + 1, elements=finite))
    coeffs = (real + 1j * imag) * 4.0 ** -np.arange(degree + 1)
    assume(np.max(np.abs(coeffs)) > 1e-3)
    return TaylorSeries.polynomial(coeffs)


class TestNormProperties:
    @pytest.mark.parametrize("space", NORMED_SPACES)
    @given(f=polynomials(), scale=st.complex_numbers(min_magnitude=0.1, max_magnitude=10.0))
    @PROPERTY_SETTINGS
    def test_homogeneity(self, space, f, scale):
        spec = parse_space(space)
        base = norm(f, spec, GRID).value
        scaled = norm(f * scale, spec, GRID).value
        assert scaled == pytest.approx(abs(scale) * base, rel=1e-8, abs=1e-10)

    @pytest.mark.parametrize("space", MEAN_SPACES)
    @given(f=polynomials(), g=polynomials())
    @PROPERTY_SETTINGS
    def test_triangle_inequality(self, space, f, g):
        spec = parse_space(space)
        left = norm(f + g, spec, GRID).value
        right = norm(f, spec, GRID).value + norm(g, spec, GRID).value
        assert left <= right * (1.0 + 1e-6) + 1e-10

    @given(
        f=polynomials(),
        p=st.sampled_from([1.0, 2.0, 3.0]),
        radii=st.tuples(
            st.floats(min_value=0.0, max_value=0.95), st.floats(min_value=0.0, max_value=0.95)
        ),
    )
    @PROPERTY_SETTINGS
    def test_integral_means_increase_with_radius(self, f, p, radii):
        small, large = sorted(radii)
        spec = CircleMeanSpec(p=p)
        inner, outer = integral_mean(f, small, spec), integral_mean(f, large, spec)
        assert inner <= outer * (1.0 + 1e-8) + 1e-12


class TestOperatorProperties:
    @given(
        descriptor=st.sampled_from(BUNDLED_FAMILIES),
        f=polynomials(),
        g=polynomials(),
        a=st.complex_numbers(max_magnitude=5.0),
    )
    @PROPERTY_SETTINGS
    def test_linearity(self, descriptor, f, g, a):
        op = HilbertOperator(parse_measure(descriptor))
        combined = op.coeff_action(f * a + g, 40).coeffs
        separate = a * op.coeff_action(f, 40).coeffs + op.coeff_action(g, 40).coeffs
        np.testing.assert_allclose(combined, separate, rtol=1e-10, atol=1e-12)

    @given(alpha=st.floats(min_value=0.05, max_value=20.0))
    @PROPERTY_SETTINGS
    def test_moments_are_positive_and_decreasing(self, alpha):
        mu = PowerWeight(alpha).moments(500)
        assert np.all(mu > 0.0)
        assert np.all(np.diff(mu) <= 1e-15 * mu[:-1])


class TestSequenceProperties:
    @given(
        lam=arrays(
            np.float64,
            st.integers(min_value=1, max_value=64),
            elements=st.floats(min_value=0.0, max_value=10.0),
        )
    )
    @PROPERTY_SETTINGS
    def test_block_sums_bracket_the_weighted_sum(self, lam):
        # p = beta = 1: 2^-n <= 1/(k+1) <= 2^(1-n) for k in the n-th dyadic block
        assume(np.max(lam) > 1e-3)
        comparison = block_equivalence(lam, p=1.0, beta=1.0)
        assert 1.0 - 1e-8 <= comparison.ratio <= 2.0 + 1e-8

    @given(
        c=st.floats(min_value=-0.9, max_value=3.0).filter(lambda c: abs(c) > 1e-3),
        level=st.integers(min_value=0, max_value=12),
    )
    @PROPERTY_SETTINGS
    def test_normalized_kernel_mean_in_bracket(self, c, level):
        lo, hi = kernel_mean_bounds(c)
        value = float(normalized_kernel_mean(2.0**-level, c)[0])
        assert lo * (1.0 - 1e-8) <= value <= hi * (1.0 + 1e-8)
