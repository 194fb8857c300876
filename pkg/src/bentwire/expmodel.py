"""Exponentially smoothed corner, U(s) = -lam * exp(-|s|/Lambda).

The well strength lam = eta^2 / (16 Lambda^2) makes the curvature
(eta / (2 Lambda)) exp(-|s| / (2 Lambda)) integrate to a turning angle
of 2*eta.  With x = (eta/2) exp(-|s| / (2 Lambda)) the Schroedinger
equation becomes Bessel's equation of order 2 i k Lambda, which gives
closed forms for the scattering amplitudes and for the zero-energy
junction coefficients.

Bound state: U is even, so the ground state is even.  On s < 0 the
decaying solution is J_mu((eta/2) exp(s / (2 Lambda))) with
mu = 2 kappa Lambda, and evenness requires psi'(0) = 0, i.e.

    J'_mu(eta/2) = 0.

Since the first zero of J'_mu exceeds mu, a root needs mu < eta/2, that
is kappa < eta / (4 Lambda) = sqrt(lam).  At kappa -> 0 the derivative
is -J_1(eta/2) < 0 and at kappa = sqrt(lam) it is positive, so a root
always exists in that window.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .boundary import ScatteringAmplitudes
from .coefficients import EffectiveCoefficients
from .errors import DegenerateCoefficient, NoBoundState, SpecFunDomain
from .specfun import (
    EULER_GAMMA,
    bessel_j01,
    bessel_j_complex_order,
    bessel_y01,
    gamma_complex,
)

MAX_ORDER_MODULUS = 10.0
SCAN_POINTS = 400
DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class ExpParams:
    lambda_len: float
    eta: float

    def __post_init__(self):
        if not self.lambda_len > 0:
            raise ValueError(f"lambda_len must be positive, got {self.lambda_len}")
        if not 0 < self.eta < math.pi:
            raise ValueError(f"eta must lie in (0, pi), got {self.eta}")

    @property
    def strength(self) -> float:
        """Well depth lam = eta^2 / (16 Lambda^2)."""
        return self.eta**2 / (16.0 * self.lambda_len**2)


def scatter_exponential(p: ExpParams, k: float) -> ScatteringAmplitudes:
    """Exact r and t of the exponential well, phases referenced to s = 0."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    kl = k * p.lambda_len
    if 2.0 * kl > MAX_ORDER_MODULUS:
        raise SpecFunDomain(
            f"2 k Lambda = {2 * kl} exceeds the Bessel series limit {MAX_ORDER_MODULUS}"
        )
    eta = p.eta
    z = 0.5 * eta
    nu = 2j * kl

    j_p = bessel_j_complex_order(nu, z)
    j_m = bessel_j_complex_order(-nu, z)
    j_p_up = bessel_j_complex_order(nu + 1, z)
    j_p_dn = bessel_j_complex_order(nu - 1, z)
    j_m_up = bessel_j_complex_order(1 - nu, z)
    j_m_dn = bessel_j_complex_order(-nu - 1, z)

    # 2^(8 i k Lambda) eta^(-4 i k Lambda)
    prefactor = cmath.exp(8j * kl * math.log(2.0) - 4j * kl * math.log(eta))
    g_plus = gamma_complex(1 + nu)
    g_minus = gamma_complex(1 - nu)

    bracket = (j_p_up - j_p_dn) / (j_m_dn - j_m_up) - j_p / j_m
    r = 0.5 * prefactor * g_plus * bracket / g_minus

    gamma_ratio = (g_plus / nu) / (g_minus / -nu)  # Gamma(nu) / Gamma(-nu)
    t = -(
        2.0 * prefactor * math.sinh(2.0 * math.pi * kl) * gamma_ratio
        / (math.pi * j_m * (4.0 * kl * j_m - 1j * eta * j_m_up))
    )
    return ScatteringAmplitudes(complex(r), complex(t), float(k))


def coeffs_exponential(p: ExpParams) -> EffectiveCoefficients:
    """Low-energy junction coefficients of the exponential well."""
    eta, lam_len = p.eta, p.lambda_len
    z = 0.5 * eta
    j0, j1 = bessel_j01(z)
    y0, y1 = bessel_y01(z)
    log_term = math.log(0.25 * eta) + EULER_GAMMA

    a = 0.25 * eta * (j0 * (4.0 * log_term * j1 - math.pi * y1) - math.pi * j1 * y0)
    b = (
        0.5 * eta * lam_len
        * (2.0 * log_term * j0 - math.pi * y0)
        * (math.pi * y1 - 2.0 * log_term * j1)
    )
    c = -eta * j0 * j1 / (2.0 * lam_len)
    if abs(a) <= DEGENERATE_TOL:
        raise DegenerateCoefficient(f"a vanishes at eta = {eta}")
    return EffectiveCoefficients(a, b, c, (1.0 + b * c) / a)


def bessel_j_derivative(order: float, x: float) -> float:
    """J'_order(x) for real order via (J_{order-1} - J_{order+1}) / 2."""
    lower = bessel_j_complex_order(order - 1.0, x).real
    upper = bessel_j_complex_order(order + 1.0, x).real
    return 0.5 * (lower - upper)


def _even_matching(p: ExpParams, kappa: float) -> float:
    return bessel_j_derivative(2.0 * kappa * p.lambda_len, 0.5 * p.eta)


def bound_state_exponential(p: ExpParams, scan_points: int = SCAN_POINTS) -> float:
    """Ground-state decay rate kappa from J'_{2 kappa Lambda}(eta/2) = 0."""
    kappa_max = p.eta / (4.0 * p.lambda_len)
    # both window ends are included: the matching function is -J_1(eta/2) < 0
    # at kappa = 0 and positive at kappa_max
    grid = kappa_max * np.arange(0, scan_points + 1) / scan_points
    vals = np.array([_even_matching(p, kap) for kap in grid])
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        raise NoBoundState(f"no bound state for {p}")
    lo, hi = grid[idx[-1]], grid[idx[-1] + 1]
    return brentq(
        lambda kap: _even_matching(p, kap), lo, hi, xtol=1e-16, rtol=1e-14, maxiter=200
    )
