"""Effective junction coefficients of a regularized corner."""
from __future__ import annotations

from dataclasses import astuple, dataclass

import numpy as np

from .boundary import BoundaryCondition

EFFECTIVE_DET_TOL = 1e-10


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Zero-energy junction data (a, b, c, d) of a smooth corner.

    ``b`` carries units of length and ``c`` of inverse length.  Only
    three entries are independent: ad - bc = 1.
    """

    a: float
    b: float
    c: float
    d: float

    @property
    def residual(self) -> float:
        """ad - bc - 1."""
        return self.a * self.d - self.b * self.c - 1.0

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def to_boundary_condition(
        self, gamma: float = 0.0, det_tol: float = EFFECTIVE_DET_TOL
    ) -> BoundaryCondition:
        return BoundaryCondition(gamma, self.as_matrix(), det_tol=det_tol)

    def __iter__(self):
        return iter(astuple(self))
