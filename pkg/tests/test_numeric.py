import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bentwire.boundary import BoundaryCondition, scatter_idealized
from bentwire.errors import StepTooCoarse
from bentwire.expmodel import ExpParams, bound_state_exponential
from bentwire.numeric import (
    CurvatureProfile,
    bound_state_numeric,
    fit_coefficients,
    free_transfer,
    junction_matrix,
    load_profile,
    potential_from_curvature,
    profile_from_dict,
    scatter_numeric,
    transfer_matrix,
    turning_angle,
)
from bentwire.openbook import OpenBookParams, bound_state_openbook, coeffs_openbook, scatter_openbook


def arc_transfer(radius, eta, k):
    """Exact propagator across the arc, where U = -1/(4R^2) is constant."""
    p = math.sqrt(k * k + 0.25 / radius**2)
    length = 2 * radius * eta
    c, s = math.cos(p * length), math.sin(p * length)
    return np.array([[c, s / p], [-p * s, c]])


def bump_profile(amp, half, shift):
    # smooth compact bump, off-centre so the profile is not symmetric
    def curvature(s):
        x = s / half
        return amp * np.cos(0.5 * math.pi * x) ** 2 * (1 + shift * x)

    return CurvatureProfile((-half, half), curvature)


def test_free_transfer():
    np.testing.assert_allclose(free_transfer(2.0), [[1, 2], [0, 1]])
    m = transfer_matrix(lambda s: np.zeros_like(s), (-1.0, 2.0), 0.7, steps=200).m
    np.testing.assert_allclose(m, free_transfer(3.0, 0.7), atol=1e-12)


def test_zero_profile_is_identity_junction():
    c = fit_coefficients(CurvatureProfile.zero((-0.5, 2.0)), steps=100)
    np.testing.assert_allclose(c.as_matrix(), np.eye(2), atol=1e-14)


@pytest.mark.parametrize("k", [0.0, 0.3, 2.0])
def test_open_book_transfer_matrix(k):
    prof = CurvatureProfile.open_book(1.5, 0.9)
    got = transfer_matrix(potential_from_curvature(prof), prof.support, k).m
    np.testing.assert_allclose(got, arc_transfer(1.5, 0.9, k), atol=1e-12)


def test_rk4_fourth_order():
    radius, eta, k = 1.0, math.pi / 4, 1.0
    prof = CurvatureProfile.open_book(radius, eta)
    U = potential_from_curvature(prof)
    exact = arc_transfer(radius, eta, k)
    err = [np.abs(transfer_matrix(U, prof.support, k, steps=n).m - exact).max() for n in (100, 200)]
    assert 14 <= err[0] / err[1] <= 18


def test_determinant_random_piecewise():
    rng = np.random.default_rng(8)
    for _ in range(20):
        edges = np.sort(rng.uniform(-3, 3, 5))
        levels = rng.uniform(-4, 1, 4)

        def U(s, edges=edges, levels=levels):
            idx = np.clip(np.searchsorted(edges, s) - 1, 0, 3)
            return levels[idx]

        tm = transfer_matrix(U, (edges[0], edges[-1]), rng.uniform(0, 3), steps=20_000)
        assert abs(tm.det - 1) < 1e-10


def test_step_too_coarse():
    U = lambda s: np.full_like(s, -400.0)  # noqa: E731
    with pytest.raises(StepTooCoarse):
        transfer_matrix(U, (-1.0, 1.0), 0.0, steps=4)


def test_transfer_matrix_validation():
    with pytest.raises(ValueError):
        transfer_matrix(lambda s: s, (1.0, 1.0), 0.0)
    with pytest.raises(ValueError):
        transfer_matrix(lambda s: s, (0.0, 1.0), -1.0)


@pytest.mark.parametrize("eta", [math.pi / 8, math.pi / 4, math.pi / 2])
def test_fit_matches_open_book(eta):
    fitted = fit_coefficients(CurvatureProfile.open_book(1.0, eta))
    exact = coeffs_openbook(OpenBookParams(1.0, eta))
    for name in "abc":
        assert abs(getattr(fitted, name) - getattr(exact, name)) < 1e-8
    assert abs(fitted.residual) < 1e-10


def test_junction_matrix_reproduces_scattering():
    prof = bump_profile(2.0, 1.0, 0.3)
    k = 0.8
    bc = BoundaryCondition(0.0, junction_matrix(prof, k), det_tol=1e-9)
    sharp = scatter_idealized(bc, k)
    full = scatter_numeric(prof, k)
    assert abs(sharp.r - full.r) < 1e-10
    assert abs(sharp.t - full.t) < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.2, 2.0), st.floats(-0.5, 0.5))
def test_low_energy_collapse(amp, half, shift):
    # max|U| * support^2 = (amp^2 (1+|shift|)^2 / 4) * (2 half)^2 <= 25
    if (amp * (1 + abs(shift)) * half) ** 2 > 25:
        return
    prof = bump_profile(amp, half, shift)
    k0 = fit_coefficients(prof, steps=4000).as_matrix()
    dev = [np.abs(junction_matrix(prof, k, steps=4000) - k0).max() for k in (0.02, 0.01)]
    assert dev[0] / dev[1] >= 3.5


def test_scatter_numeric_unitarity():
    profiles = [
        CurvatureProfile.open_book(1.0, 1.2),
        CurvatureProfile.exponential(0.5, 2.0),
        bump_profile(3.0, 1.0, 0.4),
    ]
    worst = 0.0
    for prof in profiles:
        for k in np.linspace(0.01, 6.0, 15):
            worst = max(worst, abs(scatter_numeric(prof, k).unitarity_defect))
    assert worst < 1e-10


def test_scatter_numeric_open_book_grid():
    prof = CurvatureProfile.open_book(0.7, 1.1)
    for k in (0.05, 0.9, 3.0):
        exact = scatter_openbook(OpenBookParams(0.7, 1.1), k)
        num = scatter_numeric(prof, k)
        assert abs(exact.r - num.r) < 1e-8
        assert abs(exact.t - num.t) < 1e-8


def test_straight_wire_scatter():
    # 1e5 RK4 steps accumulate some rounding in the phase
    amp = scatter_numeric(CurvatureProfile.zero(), 1.7)
    assert abs(amp.r) < 1e-10
    assert abs(amp.t - 1) < 1e-10


def test_bound_states():
    assert bound_state_numeric(CurvatureProfile.zero()) == []
    p = OpenBookParams(1.0, math.pi / 4)
    roots = bound_state_numeric(CurvatureProfile.open_book(1.0, math.pi / 4))
    assert abs(roots[-1] - bound_state_openbook(p)) < 1e-8
    roots = bound_state_numeric(CurvatureProfile.exponential(1.0, math.pi / 4))
    assert abs(roots[-1] - bound_state_exponential(ExpParams(1.0, math.pi / 4))) < 1e-6


@pytest.mark.parametrize(
    "prof,eta",
    [
        (CurvatureProfile.open_book(1.3, 0.6), 0.6),
        (CurvatureProfile.open_book(0.2, 2.9), 2.9),
        (CurvatureProfile.exponential(0.4, math.pi / 4), math.pi / 4),
        (CurvatureProfile.exponential(2.0, 1.5), 1.5),
    ],
)
def test_turning_angle(prof, eta):
    assert abs(turning_angle(prof) - 2 * eta) < 1e-8


def test_curvature_clamped_outside_support():
    prof = CurvatureProfile.open_book(1.0, 0.5)
    np.testing.assert_array_equal(prof(np.array([-0.6, 0.0, 0.6])), [0.0, 1.0, 0.0])


def test_table_profile_matches_open_book():
    # dense samples of a smooth bump reproduce the callable version
    half = 1.0
    s = np.linspace(-half, half, 801)
    ref = bump_profile(1.5, half, 0.0)
    table = CurvatureProfile.from_table(np.column_stack([s, ref(s)]))
    a, b = fit_coefficients(ref).as_matrix(), fit_coefficients(table).as_matrix()
    np.testing.assert_allclose(a, b, atol=1e-8)


@pytest.mark.parametrize(
    "samples",
    [[[0.0, 1.0]], [[-1.0, 0.0], [-1.0, 1.0]], [[-1.0, float("nan")], [1.0, 0.0]]],
)
def test_table_validation(samples):
    with pytest.raises(ValueError):
        CurvatureProfile.from_table(samples)


def test_profile_round_trip(tmp_path):
    for prof in (
        CurvatureProfile.open_book(1.0, 0.5),
        CurvatureProfile.exponential(0.3, 1.0),
        CurvatureProfile.from_table([[-1.0, 0.0], [0.0, 2.0], [1.0, 0.0]]),
    ):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(prof.to_dict()))
        back = load_profile(path)
        assert back.kind == prof.kind
        assert back.support == prof.support
        s = np.linspace(*prof.support, 7)
        np.testing.assert_allclose(back(s), prof(s))


@pytest.mark.parametrize(
    "doc",
    [{"kind": "spiral", "params": {}}, {"kind": "openbook"}, {"kind": "openbook", "params": {"R": 1}}, {"kind": "table"}],
)
def test_bad_profile_documents(doc):
    with pytest.raises(ValueError):
        profile_from_dict(doc)


def test_user_profile_has_no_file_form():
    with pytest.raises(ValueError):
        bump_profile(1.0, 1.0, 0.0).to_dict()
