"""Generic solver for corners of arbitrary curvature profile.

The geometric potential of a wire with curvature k(s) is U = -k(s)^2/4
(units hbar^2/2m = 1).  Inside the curved region the equation
-psi'' + U psi = E psi is integrated with fixed-step RK4.  Because the
equation is linear, each RK4 step is itself a 2x2 matrix acting on
(psi, psi'); the step matrices are built in one vectorized pass and
multiplied by pairwise reduction.

Effective coefficients are the zero-energy transfer matrix with the free
propagation between the support edges and the corner reference point
s = 0 stripped off, K = F(-s_max) M F(s_min), F(L) = ((1, L), (0, 1)).
A straight wire thus yields the identity junction.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .boundary import ScatteringAmplitudes
from .coefficients import EffectiveCoefficients
from .errors import StepTooCoarse

DEFAULT_STEPS = 100_000
DET_DRIFT_MAX = 1e-8
EXP_CUTOFF = 40.0

BOUND_SCAN_POINTS = 10_000
BOUND_SCAN_STEPS = 2_000
_SCAN_CHUNK = 100
_MAX_WIDEN = 8



@dataclass(frozen=True)
class CurvatureProfile:
    """Curvature k(s) of a wire, vanishing outside ``support``.

    ``curvature`` must accept numpy arrays.  Use the ``open_book``,
    ``exponential``, ``from_table`` and ``zero`` constructors for the
    standard shapes.
    """

    support: tuple[float, float]
    curvature: Callable[[np.ndarray], np.ndarray]
    kind: str = "user"
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        lo, hi = (float(v) for v in self.support)
        if not (lo < 0.0 < hi):
            raise ValueError(
                f"support must straddle the corner at s = 0, got ({lo}, {hi})"
            )
        object.__setattr__(self, "support", (lo, hi))

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        lo, hi = self.support
        inside = (s >= lo) & (s <= hi)
        return np.where(inside, self.curvature(np.clip(s, lo, hi)), 0.0)

    @property
    def length(self) -> float:
        return self.support[1] - self.support[0]

    @classmethod
    def open_book(cls, radius: float, eta: float) -> "CurvatureProfile":
        """Circular arc of radius R over |s| <= R*eta."""
        if not radius > 0 or not 0 < eta < math.pi:
            raise ValueError(f"invalid open book parameters R={radius}, eta={eta}")
        half = radius * eta
        return cls(
            (-half, half),
            lambda s: np.full(np.shape(s), 1.0 / radius),
            kind="openbook",
            params={"R": radius, "eta": eta},
        )

    @classmethod
    def exponential(
        cls, lambda_len: float, eta: float, cutoff: float = EXP_CUTOFF
    ) -> "CurvatureProfile":
        """Curvature (eta / 2 Lambda) exp(-|s| / 2 Lambda), cut at |s| = cutoff*Lambda."""
        if not lambda_len > 0 or not 0 < eta < math.pi or not cutoff > 0:
            raise ValueError(
                f"invalid exponential parameters Lambda={lambda_len}, eta={eta}, cutoff={cutoff}"
            )
        amp = eta / (2.0 * lambda_len)
        half = cutoff * lambda_len
        return cls(
            (-half, half),
            lambda s: amp * np.exp(-np.abs(s) / (2.0 * lambda_len)),
            kind="exponential",
            params={"Lambda": lambda_len, "eta": eta, "cutoff": cutoff},
        )

    @classmethod
    def from_table(cls, samples) -> "CurvatureProfile":
        """Cubic spline through [s, curvature] rows with strictly increasing s."""
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
            raise ValueError("samples must be an (n >= 2, 2) array of [s, curvature]")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples contain non-finite values")
        if np.any(np.diff(arr[:, 0]) <= 0):
            raise ValueError("sample positions must be strictly increasing")
        spline = CubicSpline(arr[:, 0], arr[:, 1])
        return cls(
            (arr[0, 0], arr[-1, 0]),
            spline,
            kind="table",
            params={"samples": arr.tolist()},
        )

    @classmethod
    def zero(cls, support=(-1.0, 1.0)) -> "CurvatureProfile":
        """A straight wire."""
        return cls(support, lambda s: np.zeros(np.shape(s)), kind="zero")

    def to_dict(self) -> dict:
        if self.kind in ("openbook", "exponential"):
            return {"kind": self.kind, "params": dict(self.params)}
        if self.kind == "table":
            return {"kind": "table", "samples": self.params["samples"]}
        raise ValueError(f"profile kind {self.kind!r} has no file representation")


def profile_from_dict(doc: Mapping) -> CurvatureProfile:
    """Build a profile from its file representation.

    Accepted documents::

        {"kind": "openbook", "params": {"R": 1.0, "eta": 0.785}}
        {"kind": "exponential", "params": {"Lambda": 0.3, "eta": 0.785, "cutoff": 40}}
        {"kind": "table", "samples": [[-1.0, 0.0], [0.0, 2.0], [1.0, 0.0]]}
    """
    kind = doc.get("kind")
    if kind == "table":
        if "samples" not in doc:
            raise ValueError("table profile requires 'samples'")
        return CurvatureProfile.from_table(doc["samples"])
    params = doc.get("params")
    if not isinstance(params, Mapping):
        raise ValueError(f"profile kind {kind!r} requires a 'params' object")
    try:
        if kind == "openbook":
            return CurvatureProfile.open_book(float(params["R"]), float(params["eta"]))
        if kind == "exponential":
            return CurvatureProfile.exponential(
                float(params["Lambda"]),
                float(params["eta"]),
                float(params.get("cutoff", EXP_CUTOFF)),
            )
    except KeyError as exc:
        raise ValueError(f"profile kind {kind!r} is missing parameter {exc}") from None
    raise ValueError(f"unknown profile kind {kind!r}; expected openbook, exponential or table")


def load_profile(path) -> CurvatureProfile:
    with open(Path(path), encoding="utf-8") as fh:
        return profile_from_dict(json.load(fh))


def potential_from_curvature(p: CurvatureProfile) -> Callable[[np.ndarray], np.ndarray]:
    """Geometric potential U(s) = -curvature(s)^2 / 4."""

    def potential(s):
        return -0.25 * p(s) ** 2

    return potential


def turning_angle(p: CurvatureProfile) -> float:
    """Integrated curvature over the support (adaptive quadrature)."""
    lo, hi = p.support
    total = 0.0
    for a, b in ((lo, 0.0), (0.0, hi)):
        val, _ = quad(lambda s: float(p(s)), a, b, epsabs=1e-13, epsrel=1e-13, limit=500)
        total += val
    return total


@dataclass(frozen=True)
class TransferMatrix:
    """Map of (psi, psi') across a region at wavenumber ``k``."""

    m: np.ndarray
    k: float

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))


def free_transfer(length: float, k: float = 0.0) -> np.ndarray:
    """Transfer matrix of a straight segment of (signed) ``length``."""
    if k == 0.0:
        return np.array([[1.0, length], [0.0, 1.0]])
    c, s = math.cos(k * length), math.sin(k * length)
    return np.array([[c, s / k], [-k * s, c]])


def _mul_a(w, m):
    # [[0, 1], [w, 0]] @ m, matrices stored as (m11, m12, m21, m22)
    return (m[2], m[3], w * m[0], w * m[1])


def _rk4_step_matrices(w0, wm, w1, h):
    """RK4 step of y' = [[0, 1], [w, 0]] y written as a 2x2 matrix per step."""
    one = np.ones_like(w0)
    zero = np.zeros_like(w0)
    k1 = (zero, one, w0, zero)
    k2 = tuple(a + 0.5 * h * b for a, b in zip((zero, one, wm, zero), _mul_a(wm, k1)))
    k3 = tuple(a + 0.5 * h * b for a, b in zip((zero, one, wm, zero), _mul_a(wm, k2)))
    k4 = tuple(a + h * b for a, b in zip((zero, one, w1, zero), _mul_a(w1, k3)))
    ident = (one, zero, zero, one)
    entries = [
        i + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
        for i, a, b, c, d in zip(ident, k1, k2, k3, k4)
    ]
    return np.stack(entries, axis=-1).reshape(*w0.shape, 2, 2)


def _ordered_product(mats: np.ndarray) -> np.ndarray:
    """mats[..., n-1, :, :] @ ... @ mats[..., 0, :, :] by pairwise reduction."""
    while mats.shape[-3] > 1:
        if mats.shape[-3] % 2:
            pad = np.broadcast_to(np.eye(2), mats.shape[:-3] + (1, 2, 2))
            mats = np.concatenate([mats, pad], axis=-3)
        mats = mats[..., 1::2, :, :] @ mats[..., 0::2, :, :]
    return mats[..., 0, :, :]


def _segment(U, lo: float, hi: float, energy, steps: int) -> np.ndarray:
    """RK4 propagator over [lo, hi] for -psi'' + U psi = energy psi.

    ``energy`` may be an array; the result then has shape energy.shape + (2, 2).
    """
    nodes = np.linspace(lo, hi, steps + 1)
    h = (hi - lo) / steps
    u_nodes = np.asarray(U(nodes), dtype=float)
    u_mid = np.asarray(U(0.5 * (nodes[:-1] + nodes[1:])), dtype=float)
    energy = np.asarray(energy, dtype=float)[..., None]
    w0 = u_nodes[:-1] - energy
    wm = u_mid - energy
    w1 = u_nodes[1:] - energy
    return _ordered_product(_rk4_step_matrices(w0, wm, w1, h))


def _split_steps(lo: float, hi: float, steps: int) -> tuple[int, int]:
    length = hi - lo
    return (
        max(1, math.ceil(steps * (-lo) / length)),
        max(1, math.ceil(steps * hi / length)),
    )


def transfer_matrix(U, support, k: float, steps: int = DEFAULT_STEPS) -> TransferMatrix:
    """Propagate (psi, psi') across ``support`` at wavenumber k (k = 0 allowed).

    The columns of the result are the states reached from (1, 0) and
    (0, 1) at the left edge.  ``steps`` sets the step size to at most
    length/steps; s = 0 is always a grid node when it lies inside.

    Raises
    ------
    StepTooCoarse
        If det M drifts from 1 by more than 1e-8.
    """
    lo, hi = (float(v) for v in support)
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ValueError(f"support must be a finite interval, got {support}")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    energy = float(k) ** 2
    if lo < 0.0 < hi:
        n_left, n_right = _split_steps(lo, hi, steps)
        m = _segment(U, 0.0, hi, energy, n_right) @ _segment(U, lo, 0.0, energy, n_left)
    else:
        m = _segment(U, lo, hi, energy, steps)
    drift = abs(np.linalg.det(m) - 1.0)
    if drift > DET_DRIFT_MAX:
        raise StepTooCoarse(f"det drift {drift:.3e} with {steps} steps; refine the grid")
    return TransferMatrix(m, float(k))


def junction_matrix(p: CurvatureProfile, k: float = 0.0, steps: int = DEFAULT_STEPS) -> np.ndarray:
    """Exact junction K(k) = F_k(-s_max) M(k) F_k(s_min) referred to s = 0.

    Scattering off the sharp junction K(k) at wavenumber k reproduces the
    full profile exactly; K(0) gives the effective coefficients.
    """
    lo, hi = p.support
    m = transfer_matrix(potential_from_curvature(p), p.support, k, steps).m
    return free_transfer(-hi, k) @ m @ free_transfer(lo, k)


def fit_coefficients(p: CurvatureProfile, steps: int = DEFAULT_STEPS) -> EffectiveCoefficients:
    """Zero-energy effective junction coefficients (a, b, c, d) of a profile."""
    kmat = junction_matrix(p, 0.0, steps)
    return EffectiveCoefficients(*(float(v) for v in kmat.ravel()))


def scatter_numeric(p: CurvatureProfile, k: float, steps: int = DEFAULT_STEPS) -> ScatteringAmplitudes:
    """r and t for an arbitrary profile, phases referenced to s = 0.

    Matches psi = e^{iks} + r e^{-iks} at s_min and psi = t e^{iks} at
    s_max, written in the absolute coordinate s.
    """
    if not k > 0:
        raise ValueError(f"k must be positive, got {k}")
    lo, hi = p.support
    m = transfer_matrix(potential_from_curvature(p), p.support, k, steps).m
    ik = 1j * k
    incoming = np.exp(ik * lo) * np.array([1.0, ik])
    reflected = np.exp(-ik * lo) * np.array([1.0, -ik])
    outgoing = np.exp(ik * hi) * np.array([1.0, ik])
    lhs = np.column_stack([m @ reflected, -outgoing])
    r, t = np.linalg.solve(lhs, -(m @ incoming))
    return ScatteringAmplitudes(complex(r), complex(t), float(k))


def _bound_mismatch(U, support, kappa, steps: int):
    """Wronskian at s = 0 of the solutions decaying to the left and right."""
    lo, hi = support
    n_left, n_right = _split_steps(lo, hi, steps)
    kappa = np.asarray(kappa, dtype=float)
    energy = -kappa * kappa
    m_left = _segment(U, lo, 0.0, energy, n_left)
    m_right = _segment(U, 0.0, hi, energy, n_right)
    # left: M_left (1, kappa); right: M_right^{-1} (1, -kappa), det M_right = 1
    psi_l = m_left[..., 0, 0] + kappa * m_left[..., 0, 1]
    dpsi_l = m_left[..., 1, 0] + kappa * m_left[..., 1, 1]
    psi_r = m_right[..., 1, 1] + kappa * m_right[..., 0, 1]
    dpsi_r = -m_right[..., 1, 0] - kappa * m_right[..., 0, 0]
    return psi_l * dpsi_r - dpsi_l * psi_r


def bound_state_numeric(
    p: CurvatureProfile,
    scan_points: int = BOUND_SCAN_POINTS,
    scan_steps: int = BOUND_SCAN_STEPS,
    steps: int = DEFAULT_STEPS,
) -> list[float]:
    """All bound-state decay rates kappa (energy -kappa^2), ascending.

    Sign changes of the matching Wronskian are located on a kappa grid
    over (0, sqrt(max|U|)) using a coarse integration grid, then each
    bracket is polished with Brent's method at full resolution.
    """
    U = potential_from_curvature(p)
    lo, hi = p.support
    probe = np.linspace(lo, hi, 20_001)
    u_max = float(np.max(np.abs(U(probe))))
    if u_max == 0.0:
        return []
    kappa_max = math.sqrt(u_max)
    grid = kappa_max * np.arange(1, scan_points + 1) / (scan_points + 1)
    vals = np.concatenate(
        [
            _bound_mismatch(U, p.support, grid[i : i + _SCAN_CHUNK], scan_steps)
            for i in range(0, grid.size, _SCAN_CHUNK)
        ]
    )
    brackets = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]

    def fine(kap):
        return float(_bound_mismatch(U, p.support, kap, steps))

    roots = []
    for i in brackets:
        a, b = i, i + 1
        fa, fb = fine(grid[a]), fine(grid[b])
        # coarse and fine grids may disagree on which side of a grid point a root sits
        for _ in range(_MAX_WIDEN):
            if fa * fb <= 0:
                break
            a, b = max(a - 1, 0), min(b + 1, grid.size - 1)
            fa, fb = fine(grid[a]), fine(grid[b])
        if fa * fb > 0:
            continue
        roots.append(brentq(fine, grid[a], grid[b], xtol=1e-15, rtol=1e-12, maxiter=200))
    return sorted(roots)
