"""Independent reference computations used only by the tests."""
import cmath
import math

import mpmath as mp
import numpy as np

HP_DPS = 64  # roughly 4x double precision


def gamma_hp(z) -> complex:
    with mp.workdps(HP_DPS):
        return complex(mp.gamma(mp.mpc(z.real, z.imag)))


def bessel_j_naive_hp(nu, x, terms=80) -> complex:
    """Ascending series summed term by term in high precision."""
    nu = complex(nu)
    with mp.workdps(HP_DPS):
        n = mp.mpc(nu.real, nu.imag)
        h = mp.mpf(x) / 2
        total = mp.mpc(0)
        for m in range(terms):
            total += (-1) ** m * h ** (n + 2 * m) * mp.rgamma(n + m + 1) / mp.factorial(m)
        return complex(total)


def bessel_j_hp(nu, x) -> complex:
    """mpmath's own Bessel J (hypergeometric route, not our series)."""
    nu = complex(nu)
    with mp.workdps(HP_DPS):
        return complex(mp.besselj(mp.mpc(nu.real, nu.imag), mp.mpf(x)))


def bessel_y_hp(order, x) -> float:
    with mp.workdps(HP_DPS):
        return float(mp.bessely(order, mp.mpf(x)))


def idealized_closed_form(a, b, c, gamma, k):
    """Closed-form r and t of the sharp junction (requires a != 0)."""
    den = 1j * a * c + (a * a + b * c + 1) * k - 1j * a * b * k * k
    r = -(1j * a * c + (a * a - b * c - 1) * k + 1j * a * b * k * k) / den
    t = 2 * a * cmath.exp(1j * gamma) * k / den
    return r, t


def random_sl2(rng, lim=3.0):
    """K = ((a, b), (c, (1 + bc)/a)) with a in [-lim, lim] minus a small gap at 0."""
    while True:
        a = rng.uniform(-lim, lim)
        if abs(a) > 1e-3:
            break
    b, c = rng.uniform(-lim, lim, 2)
    return np.array([[a, b], [c, (1 + b * c) / a]])


def idealized_kappa_closed_form(eta):
    """kappa R = 1 / (eta + 2 cot(eta/2)) for the open book junction."""
    return 1.0 / (eta + 2.0 / math.tan(eta / 2.0))


def random_sl2_polar(rng, max_log_stretch=1.5):
    """K = R(theta1) diag(e^s, e^-s) R(theta2), |s| <= max_log_stretch.

    Samples SL2(R) with the operator norm bounded by e^max_log_stretch.
    """

    def rot(t):
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])

    t1, t2 = rng.uniform(-math.pi, math.pi, 2)
    s = rng.uniform(-max_log_stretch, max_log_stretch)
    return rot(t1) @ np.diag([math.exp(s), math.exp(-s)]) @ rot(t2)
