"""Special functions for the exponentially smoothed corner.

Only what the exponential model needs is provided: the complex Gamma
function, Bessel J of complex order at small positive argument, and the
integer-order pair J0/J1, Y0/Y1.  Bessel functions are evaluated from
their ascending power series, which is valid (and accurate) for
arguments up to about 10.  The model itself only ever evaluates them at
x = eta/2 < pi/2.  No asymptotic expansions are implemented.
"""
from __future__ import annotations

import cmath
import math

from .errors import DomainError, NonConvergence, PoleError, SpecFunDomain

EULER_GAMMA = 0.57721566490153286061

SERIES_X_MAX = 10.0
SERIES_MAX_TERMS = 200
SERIES_RTOL = 1e-17
POLE_TOL = 1e-14

# Lanczos approximation, g = 607/128, 15 terms (Godfrey).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def _nearest_pole(z: complex) -> int | None:
    """Return n if z is within POLE_TOL of the pole -n (n >= 0), else None."""
    if abs(z.imag) > POLE_TOL or z.real > POLE_TOL:
        return None
    n = round(-z.real)
    if abs(z.real + n) <= POLE_TOL:
        return n
    return None


def _lanczos(z: complex) -> complex:
    # Gamma(z) for Re z >= 0.5
    z = z - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(_HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t) * acc


def gamma_complex(z: complex) -> complex:
    """Gamma function for complex argument.

    Uses the Lanczos approximation on Re z >= 1/2 and the reflection
    formula elsewhere.  Relative accuracy is better than 1e-12 for
    |z| <= 20.

    Raises
    ------
    PoleError
        If z is a non-positive integer (within 1e-14).
    """
    z = complex(z)
    if _nearest_pole(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * _lanczos(1.0 - z))
    return _lanczos(z)


def rgamma_complex(z: complex) -> complex:
    """Reciprocal Gamma, 1/Gamma(z), which is entire (zero at the poles)."""
    z = complex(z)
    if _nearest_pole(z) is not None:
        return 0j
    return 1.0 / gamma_complex(z)


def _check_series_arg(x: float) -> None:
    if not x > 0.0:
        raise DomainError(f"Bessel series requires x > 0, got {x}")
    if x > SERIES_X_MAX:
        raise SpecFunDomain(
            f"x = {x} exceeds the power-series validity limit {SERIES_X_MAX}"
        )


def _sum_series(first, ratio):
    """Sum a series given its first term and the term ratio t_m / t_{m-1}."""
    total = first
    term = first
    for m in range(1, SERIES_MAX_TERMS):
        term = term * ratio(m)
        total += term
        if abs(term) <= SERIES_RTOL * abs(total) or term == 0:
            return total
    raise NonConvergence(f"series did not converge in {SERIES_MAX_TERMS} terms")


def bessel_j_complex_order(nu: complex, x: float) -> complex:
    """Bessel function of the first kind J_nu(x) for complex order, 0 < x <= 10.

    Summed from the ascending series
    sum_m (-1)^m (x/2)^(nu+2m) / (m! Gamma(nu+m+1)).
    Negative integer orders use J_{-n} = (-1)^n J_n.  Real orders are
    summed in real arithmetic so the result has an exactly zero
    imaginary part.
    """
    _check_series_arg(x)
    nu = complex(nu)
    half = 0.5 * x
    q = -half * half

    if nu.imag == 0.0:
        order = nu.real
        n = round(order)
        if order < 0 and abs(order - n) <= POLE_TOL:
            sign = -1.0 if n % 2 else 1.0
            return sign * bessel_j_complex_order(-n, x)
        # 1/Gamma(order+1) is finite here, order+1 is not a non-positive integer
        first = half**order * rgamma_complex(order + 1.0).real
        return complex(_sum_series(first, lambda m: q / (m * (order + m))), 0.0)

    first = cmath.exp(nu * math.log(half)) * rgamma_complex(nu + 1.0)
    return _sum_series(first, lambda m: q / (m * (nu + m)))


def bessel_j01(x: float) -> tuple[float, float]:
    """Return (J0(x), J1(x)) for 0 < x <= 10."""
    return (
        bessel_j_complex_order(0, x).real,
        bessel_j_complex_order(1, x).real,
    )


def bessel_y01(x: float) -> tuple[float, float]:
    """Return (Y0(x), Y1(x)) from the small-argument series.

    Y0 = (2/pi)[ln(x/2) + gamma_E] J0 + (2/pi) sum_{m>=1} (-1)^(m+1) H_m (x/2)^(2m) / (m!)^2

    Y1 = (2/pi)[ln(x/2) + gamma_E] J1 - 2/(pi x)
         - (1/pi) sum_{m>=0} (-1)^m (H_m + H_{m+1}) (x/2)^(2m+1) / (m! (m+1)!)

    Accurate to better than 1e-10 for 0 < x <= 4.
    """
    if not x > 0.0:
        raise DomainError(f"Y0/Y1 require x > 0, got {x}")
    _check_series_arg(x)
    j0, j1 = bessel_j01(x)
    half = 0.5 * x
    q = half * half
    log_term = math.log(half) + EULER_GAMMA

    # running pieces: p0 = q^m/(m!)^2, p1 = half^(2m+1)/(m!(m+1)!)
    p0 = 1.0
    p1 = half
    h = 0.0  # H_m
    s0_terms = []
    s1_terms = [p1 * (0.0 + 1.0)]  # m = 0: H_0 + H_1 = 1
    for m in range(1, SERIES_MAX_TERMS):
        h += 1.0 / m
        p0 *= q / (m * m)
        p1 *= q / (m * (m + 1))
        sign = -1.0 if m % 2 == 0 else 1.0
        t0 = sign * h * p0
        t1 = -sign * (2.0 * h + 1.0 / (m + 1)) * p1
        s0_terms.append(t0)
        s1_terms.append(t1)
        if max(abs(t0), abs(t1)) < 1e-18 * max(abs(j0), abs(j1), 1e-300):
            break
    else:
        raise NonConvergence("Y0/Y1 series did not converge")

    y0 = (2.0 / math.pi) * (log_term * j0 + math.fsum(s0_terms))
    y1 = (
        (2.0 / math.pi) * log_term * j1
        - 2.0 / (math.pi * x)
        - math.fsum(s1_terms) / math.pi
    )
    return y0, y1
