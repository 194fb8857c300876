"""The "open book" corner: a circular arc of radius R and half-turning angle eta.

The arc occupies |s| < R*eta, where the geometric potential is the
constant well -1/(4 R^2); the wire is straight elsewhere.  Here eta is
half the total turning of the tangent, so the integrated curvature over
the arc is 2*eta.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .boundary import ScatteringAmplitudes
from .coefficients import EffectiveCoefficients
from .errors import DegenerateCoefficient, NoBoundState

SCAN_POINTS = 10_000
DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class OpenBookParams:
    radius: float
    eta: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not 0 < self.eta < math.pi:
            raise ValueError(f"eta must lie in (0, pi), got {self.eta}")

    @property
    def half_length(self) -> float:
        """Half length R*eta of the curved arc."""
        return self.radius * self.eta


def scatter_openbook(p: OpenBookParams, k: float) -> ScatteringAmplitudes:
    """Exact r and t for the open book, phases referenced to s = 0."""
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    x = k * p.radius
    eta = p.eta
    q = math.sqrt(4.0 * x * x + 1.0)
    e2 = cmath.exp(2j * eta * q)
    denom = (
        -8.0 * x * x * e2
        + 4.0 * x * q * e2
        - e2
        + 8.0 * x * x
        + 4.0 * x * q
        + 1.0
    )
    r = cmath.exp(-2j * eta * x) * (e2 - 1.0) / denom
    t = 8.0 * x * q * cmath.exp(1j * eta * q - 2j * eta * x) / denom
    return ScatteringAmplitudes(r, t, float(k))


def coeffs_openbook(p: OpenBookParams) -> EffectiveCoefficients:
    """Low-energy junction coefficients of the open book.

    a = eta sin(eta)/2 + cos(eta)
    b = -R sin(eta) (eta^2 + 4 eta cot(eta) - 4) / 2
    c = -sin(eta) / (2R)
    """
    eta, radius = p.eta, p.radius
    s, co = math.sin(eta), math.cos(eta)
    a = 0.5 * eta * s + co
    # sin*cot written as cos to stay finite at small eta
    b = -0.5 * radius * (eta * eta * s + 4.0 * eta * co - 4.0 * s)
    c = -s / (2.0 * radius)
    if abs(a) <= DEGENERATE_TOL:
        raise DegenerateCoefficient(f"a vanishes at eta = {eta}")
    return EffectiveCoefficients(a, b, c, (1.0 + b * c) / a)


def _arc_transfer(kappa, radius: float, length: float):
    # psi'' = -(1/(4R^2) - kappa^2) psi across the arc; kappa < 1/(2R)
    p = np.sqrt(np.maximum(0.25 / radius**2 - kappa * kappa, 0.0))
    cos_ = np.cos(p * length)
    sin_over_p = length * np.sinc(p * length / np.pi)
    return cos_, sin_over_p, -p * p * sin_over_p


def matching_determinant(p: OpenBookParams, kappa):
    """Dimensionless bound-state matching determinant (vectorized in kappa).

    The arc transfer matrix T maps (1, kappa) at s = -R*eta to the
    interior solution at s = +R*eta, which must be parallel to the
    decaying data (1, -kappa).  Returns R * det[T (1, kappa), (1, -kappa)].
    """
    kappa = np.asarray(kappa, dtype=float)
    t11, t12, t21 = _arc_transfer(kappa, p.radius, 2.0 * p.half_length)
    t22 = t11
    psi = t11 + kappa * t12
    dpsi = t21 + kappa * t22
    return p.radius * (-kappa * psi - dpsi)


def bound_state_openbook(p: OpenBookParams, scan_points: int = SCAN_POINTS) -> float:
    """Ground-state decay rate kappa (energy -kappa^2) of the open book.

    The well depth 1/(4R^2) caps kappa below 1/(2R); the window is
    scanned for sign changes of the matching determinant and the largest
    root is polished with Brent's method.
    """
    kappa_max = 0.5 / p.radius
    grid = kappa_max * np.arange(1, scan_points + 1) / (scan_points + 1)
    vals = matching_determinant(p, grid)
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        raise NoBoundState(f"no bound state for {p}")
    i = idx[-1]
    return brentq(
        lambda kap: float(matching_determinant(p, kap)),
        grid[i],
        grid[i + 1],
        xtol=1e-15,
        rtol=1e-14,
        maxiter=200,
    )
