import math

import pytest
from hypothesis import given, settings, strategies as st

from musbs.errors import DivergenceError, DomainError, QuadratureAccuracyError
from musbs.measures import gaussian_density
from musbs.quadrature import QuadratureSpec, integrate_interval, radial_integral, radial_integral_with_error
from oracle_values import ORACLE

Q = QuadratureSpec()


def test_gaussian_half():
    assert radial_integral(lambda r: math.exp(-r * r), Q) == pytest.approx(0.5, abs=1e-10)


def test_gaussian_plane_mass():
    got = radial_integral(lambda r: 2 * math.pi * gaussian_density(r), Q)
    assert got == pytest.approx(1.0, abs=1e-9)


def test_integrable_origin_singularity():
    got = radial_integral(lambda r: r**-0.8 * math.exp(-r), Q)
    assert got == pytest.approx(ORACLE["singular_integral"], abs=1e-7)
    assert got == pytest.approx(math.gamma(1.2), rel=1e-9)


def test_error_estimate_is_reported():
    value, err = radial_integral_with_error(lambda r: math.exp(-r), Q)
    assert abs(value - 1.0) <= err <= Q.rel_tol


def test_growing_integrand_diverges():
    with pytest.raises(DivergenceError):
        radial_integral(lambda r: math.exp(r), Q)


def test_overflowing_integrand_diverges():
    with pytest.raises(DivergenceError):
        radial_integral(lambda r: math.exp(r * r), Q)


def test_budget_exhaustion_carries_estimate():
    q = QuadratureSpec(rel_tol=1e-13, abs_tol=0.0, max_subdivisions=16)
    with pytest.raises(QuadratureAccuracyError) as info:
        integrate_interval(lambda r: math.sin(1.0 / r), 1e-6, 1.0, q)
    assert math.isfinite(info.value.estimate)
    assert info.value.error > 0


def test_slowly_decaying_tail_is_inconclusive():
    with pytest.raises(QuadratureAccuracyError):
        radial_integral(lambda r: 1.0 / (1.0 + r) ** 3.5, QuadratureSpec(truncation_radius=4.0))


def test_interval_degenerate():
    assert integrate_interval(math.exp, 1.0, 1.0, Q) == (0.0, 0.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"rel_tol": 1e-14},
        {"rel_tol": 1e-3},
        {"abs_tol": -1.0},
        {"max_subdivisions": 15},
        {"truncation_radius": 1.0},
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(DomainError):
        QuadratureSpec(**kwargs)


def test_deterministic():
    g = lambda r: r**0.3 * math.exp(-r * r)
    assert radial_integral(g, Q) == radial_integral(g, Q)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(min_value=0.2, max_value=5.0), p=st.floats(min_value=-0.9, max_value=4.0))
def test_gamma_moments(a, p):
    # int r^p e^{-a r^2} r dr = Gamma((p+2)/2) / (2 a^{(p+2)/2})
    want = math.gamma((p + 2) / 2) / (2 * a ** ((p + 2) / 2))
    got = radial_integral(lambda r: r**p * math.exp(-a * r * r), Q, scale=1 / math.sqrt(a))
    assert got == pytest.approx(want, rel=1e-9)
