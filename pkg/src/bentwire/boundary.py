"""Self-adjoint junctions for an idealized (sharp) corner.

The wire is split at s = 0 into two half-lines.  Every unitarity
preserving coupling of the boundary data Y(s) = (psi(s), psi'(s)) on the
two sides can be written in canonical form

    Y(0+) = exp(i*gamma) K Y(0-),   -pi < gamma <= pi,  K in SL2(R),

which is the convention used throughout this package.  The equivalent
two-matrix form A Y(0+) + B Y(0-) = 0 has A = I and B = -exp(i*gamma) K.

Bound states: with psi = A exp(kappa s) on s < 0 and psi = exp(-kappa s)
on s > 0 the junction gives (1, -kappa) = exp(i*gamma) K (A, A kappa).
Eliminating A yields

    b kappa^2 + (a + d) kappa + c = 0,

independent of gamma (the phase is absorbed into A).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularJunction

# symplectic form
E_MATRIX = np.array([[0.0, -1.0], [1.0, 0.0]])

DET_TOL = 1e-12
AB_TOL = 1e-10
SINGULAR_TOL = 1e-14


def _wrap_angle(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped == -math.pi:
        wrapped = math.pi
    return wrapped


@dataclass(frozen=True)
class BoundaryCondition:
    """Canonical junction law Y(0+) = exp(i*gamma) K Y(0-).

    ``gamma`` is wrapped into (-pi, pi].  ``k_matrix`` must be a real 2x2
    matrix with unit determinant (to ``det_tol``).
    """

    gamma: float
    k_matrix: np.ndarray
    det_tol: float = field(default=DET_TOL, compare=False, repr=False)

    def __post_init__(self):
        k_matrix = np.array(self.k_matrix, dtype=float)
        if k_matrix.shape != (2, 2):
            raise ValueError(f"K must be 2x2, got shape {k_matrix.shape}")
        if not np.all(np.isfinite(k_matrix)):
            raise ValueError("K has non-finite entries")
        det = np.linalg.det(k_matrix)
        if abs(det - 1.0) > self.det_tol:
            raise ValueError(f"det K = {det!r} differs from 1 by more than {self.det_tol}")
        k_matrix.flags.writeable = False
        object.__setattr__(self, "k_matrix", k_matrix)
        object.__setattr__(self, "gamma", _wrap_angle(float(self.gamma)))

    @classmethod
    def from_abc(cls, a: float, b: float, c: float, gamma: float = 0.0):
        """Build K = ((a, b), (c, (1 + bc)/a)); requires a != 0."""
        if a == 0:
            raise ValueError("a must be non-zero to infer d = (1 + bc)/a")
        return cls(gamma, [[a, b], [c, (1.0 + b * c) / a]])

    @property
    def a(self) -> float:
        return float(self.k_matrix[0, 0])

    @property
    def b(self) -> float:
        return float(self.k_matrix[0, 1])

    @property
    def c(self) -> float:
        return float(self.k_matrix[1, 0])

    @property
    def d(self) -> float:
        return float(self.k_matrix[1, 1])


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection ``r`` and transmission ``t`` at wavenumber ``k``."""

    r: complex
    t: complex
    k: float

    @property
    def reflectance(self) -> float:
        return abs(self.r) ** 2

    @property
    def transmittance(self) -> float:
        return abs(self.t) ** 2

    @property
    def unitarity_defect(self) -> float:
        """|r|^2 + |t|^2 - 1."""
        return self.reflectance + self.transmittance - 1.0


@dataclass(frozen=True)
class ABPair:
    """Two-matrix junction form A Y(0+) + B Y(0-) = 0."""

    a_matrix: np.ndarray
    b_matrix: np.ndarray


def validate_ab(pair: ABPair, tol: float = AB_TOL) -> bool:
    """Check rank(A, B) = 2 and A E A* - B E B* = 0 (within ``tol``).

    Malformed input (wrong shapes, non-finite entries) gives False.
    """
    try:
        a = np.asarray(pair.a_matrix, dtype=complex)
        b = np.asarray(pair.b_matrix, dtype=complex)
    except (TypeError, ValueError):
        return False
    if a.shape != (2, 2) or b.shape != (2, 2):
        return False
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        return False
    if np.linalg.matrix_rank(np.hstack([a, b]), tol=tol) != 2:
        return False
    defect = a @ E_MATRIX @ a.conj().T - b @ E_MATRIX @ b.conj().T
    return bool(np.max(np.abs(defect)) <= tol)


def to_ab(bc: BoundaryCondition) -> ABPair:
    """Rewrite the canonical form as A = I, B = -exp(i*gamma) K."""
    return ABPair(
        a_matrix=np.eye(2, dtype=complex),
        b_matrix=-cmath.exp(1j * bc.gamma) * bc.k_matrix.astype(complex),
    )


def scatter_idealized(bc: BoundaryCondition, k: float) -> ScatteringAmplitudes:
    """Scattering off the sharp junction for psi = e^{iks} + r e^{-iks} | t e^{iks}.

    Solved as a 2x2 linear system so junctions with a = 0 are covered.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    phase = cmath.exp(1j * bc.gamma)
    a, b, c, d = bc.a, bc.b, bc.c, bc.d
    ik = 1j * k
    # unknowns (r, t); Y(0-) = (1 + r, ik(1 - r)), Y(0+) = (t, ik t)
    lhs = np.array(
        [
            [-phase * (a - ik * b), 1.0],
            [-phase * (c - ik * d), ik],
        ]
    )
    rhs = np.array([phase * (a + ik * b), phase * (c + ik * d)])
    det = lhs[0, 0] * lhs[1, 1] - lhs[0, 1] * lhs[1, 0]
    scale = max(1.0, abs(lhs).max() ** 2)
    if abs(det) <= SINGULAR_TOL * scale:
        raise SingularJunction(f"junction system is singular at k = {k}")
    r, t = np.linalg.solve(lhs, rhs)
    return ScatteringAmplitudes(complex(r), complex(t), float(k))


def bound_state_idealized(bc: BoundaryCondition) -> list[float]:
    """Positive roots kappa of b kappa^2 + (a + d) kappa + c = 0.

    Each root is a bound state with energy -kappa^2.  Roots are returned
    in ascending order; an empty list means no bound state.
    """
    a, b, c, d = bc.a, bc.b, bc.c, bc.d
    trace = a + d
    if b == 0.0:
        if trace == 0.0:
            return []
        kappa = -c / trace
        return [kappa] if kappa > 0 else []
    disc = trace * trace - 4.0 * b * c
    if disc < 0:
        return []
    sq = math.sqrt(disc)
    # stable pair of roots
    q = -0.5 * (trace + math.copysign(sq, trace))
    if q == 0.0:
        roots = [0.0]
    else:
        roots = [q / b, c / q]
    return sorted({r for r in roots if 0 < r < math.inf})
