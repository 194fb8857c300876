"""scikit-learn style estimators over the corner models.

``IdealizedJunctionRegressor`` learns the three junction parameters
(a, b, c) from measured transmission probabilities |t(k)|^2, the
experimental route to an effective corner.  ``CornerScatteringTransformer``
maps a column of wavenumbers to scattering features for any of the
exact models, so the physics composes with Pipelines and grid search.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import least_squares
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .boundary import BoundaryCondition, scatter_idealized
from .coefficients import EffectiveCoefficients
from .expmodel import ExpParams, coeffs_exponential, scatter_exponential
from .numeric import CurvatureProfile, fit_coefficients, scatter_numeric
from .openbook import OpenBookParams, coeffs_openbook, scatter_openbook


def idealized_transmission(k, a: float, b: float, c: float) -> np.ndarray:
    """|t|^2 of the junction K = ((a, b), (c, (1+bc)/a)), vectorized over k.

    |t|^2 = 4 a^2 k^2 / ((a^2 + bc + 1)^2 k^2 + a^2 (c - b k^2)^2);
    the junction phase gamma drops out.
    """
    k = np.asarray(k, dtype=float)
    k2 = k * k
    den = (a * a + b * c + 1.0) ** 2 * k2 + a * a * (c - b * k2) ** 2
    return 4.0 * a * a * k2 / den


class IdealizedJunctionRegressor(RegressorMixin, BaseEstimator):
    """Fit a sharp-corner junction to transmission data.

    Parameters
    ----------
    init : tuple of float, default=(1.0, 0.0, -0.1)
        Starting guess for (a, b, c).
    max_nfev : int, default=2000
        Evaluation budget of the least-squares solver.

    Attributes
    ----------
    coefficients_ : EffectiveCoefficients
    a_, b_, c_, d_ : float

    Notes
    -----
    |t|^2 = 4k^2 / (c^2 + (a^2 + d^2 + 2) k^2 + b^2 k^4), so transmission
    data fix only c^2, b^2 and a^2 + d^2.  The fitted junction is one
    member of a discrete family (sign flips, a <-> d) with identical |t|^2.
    """

    def __init__(self, init=(1.0, 0.0, -0.1), max_nfev=2000):
        self.init = init
        self.max_nfev = max_nfev

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_min_samples=3, y_numeric=True)
        if X.shape[1] != 1:
            raise ValueError("X must hold a single column of wavenumbers k")
        k = X[:, 0]
        if np.any(k <= 0):
            raise ValueError("wavenumbers must be positive")

        def residuals(theta):
            a, b, c = theta
            if a == 0.0:
                return np.full_like(y, 1e6)
            return idealized_transmission(k, a, b, c) - y

        sol = least_squares(residuals, np.asarray(self.init, dtype=float), max_nfev=self.max_nfev)
        a, b, c = (float(v) for v in sol.x)
        self.coefficients_ = EffectiveCoefficients(a, b, c, (1.0 + b * c) / a)
        self.a_, self.b_, self.c_, self.d_ = self.coefficients_
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coefficients_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("X must hold a single column of wavenumbers k")
        return idealized_transmission(X[:, 0], self.a_, self.b_, self.c_)

    def to_boundary_condition(self, gamma: float = 0.0) -> BoundaryCondition:
        check_is_fitted(self, "coefficients_")
        return BoundaryCondition.from_abc(self.a_, self.b_, self.c_, gamma)


_FEATURES = ("|r|^2", "|t|^2", "re_r", "im_r", "re_t", "im_t")


class CornerScatteringTransformer(TransformerMixin, BaseEstimator):
    """Map wavenumbers to (|r|^2, |t|^2, Re r, Im r, Re t, Im t).

    Parameters
    ----------
    model : {"openbook", "exponential", "numeric", "idealized"}
    eta : float
        Half turning angle (radians), for the openbook and exponential models.
    length : float
        R for openbook, Lambda for exponential.
    profile : CurvatureProfile or None
        Required when ``model="numeric"``.
    effective : bool, default=False
        Replace the exact model by its idealized junction at zero energy.

    ``fit`` computes the effective coefficients (``coefficients_``) and
    validates parameters; ``transform`` does the scattering.
    """

    def __init__(self, model="openbook", eta=np.pi / 4, length=1.0, profile=None, effective=False):
        self.model = model
        self.eta = eta
        self.length = length
        self.profile = profile
        self.effective = effective

    def _exact(self):
        if self.model == "openbook":
            p = OpenBookParams(self.length, self.eta)
            return (lambda k: scatter_openbook(p, k)), (lambda: coeffs_openbook(p))
        if self.model == "exponential":
            p = ExpParams(self.length, self.eta)
            return (lambda k: scatter_exponential(p, k)), (lambda: coeffs_exponential(p))
        if self.model == "numeric":
            if not isinstance(self.profile, CurvatureProfile):
                raise ValueError("model='numeric' needs a CurvatureProfile in `profile`")
            prof = self.profile
            return (lambda k: scatter_numeric(prof, k)), (lambda: fit_coefficients(prof))
        raise ValueError(f"unknown model {self.model!r}")

    def fit(self, X=None, y=None):
        if X is not None:
            check_array(X)
        _, coeffs = self._exact()
        self.coefficients_ = coeffs()
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "coefficients_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError("X must hold a single column of wavenumbers k")
        if self.effective:
            bc = self.coefficients_.to_boundary_condition()
            scatter = lambda k: scatter_idealized(bc, k)  # noqa: E731
        else:
            scatter, _ = self._exact()
        out = np.empty((X.shape[0], len(_FEATURES)))
        for i, k in enumerate(X[:, 0]):
            amp = scatter(float(k))
            out[i] = (amp.reflectance, amp.transmittance,
                      amp.r.real, amp.r.imag, amp.t.real, amp.t.imag)
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(_FEATURES, dtype=object)
