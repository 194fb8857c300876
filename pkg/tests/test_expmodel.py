import math

import numpy as np
import pytest
from scipy import special

from bentwire.boundary import bound_state_idealized
from bentwire.errors import SpecFunDomain
from bentwire.expmodel import (
    ExpParams,
    bessel_j_derivative,
    bound_state_exponential,
    coeffs_exponential,
    scatter_exponential,
)
from bentwire.numeric import CurvatureProfile, bound_state_numeric, fit_coefficients, scatter_numeric

UNIT = ExpParams(1.0, math.pi / 4)


def test_params():
    assert UNIT.strength == pytest.approx(math.pi**2 / 256)
    with pytest.raises(ValueError):
        ExpParams(-1.0, 0.5)
    with pytest.raises(ValueError):
        ExpParams(1.0, 0.0)


def test_order_limit():
    with pytest.raises(SpecFunDomain):
        scatter_exponential(UNIT, 5.01)


def test_unitarity_grid():
    worst = 0.0
    for eta in np.linspace(0.05, 3.0, 20):
        for kl in np.linspace(0.01, 5.0, 20):
            amp = scatter_exponential(ExpParams(1.0, eta), kl)
            worst = max(worst, abs(amp.unitarity_defect))
    assert worst < 1e-10


def test_weak_bend_is_transparent():
    amp = scatter_exponential(ExpParams(1.0, 1e-4), 0.5)
    assert 1 - amp.transmittance < 1e-6


@pytest.mark.parametrize("k", [0.05, 0.3, 1.0, 2.5])
def test_matches_numeric_solver(k):
    exact = scatter_exponential(UNIT, k)
    num = scatter_numeric(CurvatureProfile.exponential(1.0, math.pi / 4), k)
    assert abs(exact.transmittance - num.transmittance) < 1e-6
    assert abs(exact.r - num.r) < 1e-6
    assert abs(exact.t - num.t) < 1e-6


@pytest.mark.parametrize("eta", [0.3, math.pi / 4, 2.0])
def test_coefficients_match_numeric_fit(eta):
    closed = coeffs_exponential(ExpParams(1.0, eta))
    fitted = fit_coefficients(CurvatureProfile.exponential(1.0, eta))
    assert abs(closed.a - fitted.a) < 1e-6
    assert abs(closed.c - fitted.c) < 1e-6
    assert abs(closed.b - fitted.b) < 1e-5


def test_coefficients_unit_determinant():
    rng = np.random.default_rng(5)
    for _ in range(100):
        c = coeffs_exponential(ExpParams(rng.uniform(0.1, 5), rng.uniform(0.01, 3.1)))
        assert abs(c.a * c.d - c.b * c.c - 1) < 1e-10


def test_coefficients_scale_with_length():
    c1 = coeffs_exponential(ExpParams(1.0, 0.7))
    c2 = coeffs_exponential(ExpParams(2.5, 0.7))
    assert c2.a == pytest.approx(c1.a, rel=1e-14)
    assert c2.b == pytest.approx(2.5 * c1.b, rel=1e-14)
    assert c2.c == pytest.approx(c1.c / 2.5, rel=1e-14)


def test_c_against_scipy_bessel():
    eta, lam = 1.3, 0.8
    c = coeffs_exponential(ExpParams(lam, eta))
    want = -eta * special.j0(eta / 2) * special.j1(eta / 2) / (2 * lam)
    assert c.c == pytest.approx(want, rel=1e-13)


def test_c_small_angle_limit():
    # weak bend: c -> -(turning angle) * curvature scale / 4 = -eta^2 / (8 Lambda)
    eta = 1e-3
    c = coeffs_exponential(ExpParams(1.0, eta))
    assert c.c == pytest.approx(-eta**2 / 8, rel=1e-5)


def test_bessel_derivative_vs_scipy():
    for order in (0.0, 0.3, 1.7):
        for x in (0.1, 0.9, 1.5):
            assert bessel_j_derivative(order, x) == pytest.approx(special.jvp(order, x), abs=1e-14)


def test_bound_state_near_idealized():
    p = ExpParams(1.0, math.pi / 16)
    kappa = bound_state_exponential(p)
    ideal = coeffs_exponential(p).to_boundary_condition()
    assert abs(kappa - bound_state_idealized(ideal)[-1]) / kappa < 0.01


@pytest.mark.parametrize("eta", [0.1, math.pi / 4, 2.5])
def test_bound_state_properties(eta):
    p = ExpParams(1.3, eta)
    kappa = bound_state_exponential(p)
    assert 0 < kappa**2 < p.strength
    assert abs(special.jvp(2 * kappa * p.lambda_len, eta / 2)) < 1e-10


def test_bound_state_vs_numeric():
    kappa = bound_state_exponential(UNIT)
    roots = bound_state_numeric(CurvatureProfile.exponential(1.0, math.pi / 4))
    assert abs(roots[-1] - kappa) < 1e-6
