import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavesym.errors import InputError, NotBiaxial
from wavesym.fresnel import (
    Crystal,
    FresnelSample,
    axis_separation,
    compressed_grid,
    compressed_operator,
    fresnel_mesh,
    fresnel_report,
    fresnel_sample,
    maxwell_apply,
    maxwell_matrix,
    min_sheet_gap,
    optic_axes_closed_form,
    sheet_speeds,
    singular_directions,
)
from wavesym.spheremesh import icosphere

from .oracles import (
    AXIS_COS_BETA,
    AXIS_SEPARATION,
    AXIS_SIN_BETA,
    fibonacci_sphere,
    maxwell_root_residual,
    sheet_values_brute,
)

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

BIAXIAL = Crystal(eps=(2.0, 2.5, 3.0))

unit3 = st.tuples(
    st.floats(-1.0, 1.0), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0)
).map(np.array).filter(lambda v: np.linalg.norm(v) > 1e-2).map(
    lambda v: v / np.linalg.norm(v))


# --- crystal ------------------------------------------------------------------


def test_crystal_validation():
    with pytest.raises(InputError):
        Crystal(eps=(0.0, 1.0, 2.0))
    with pytest.raises(InputError):
        Crystal(eps=(1.0, -2.0, 2.0))


def test_biaxial_detection():
    assert BIAXIAL.is_biaxial()
    assert not Crystal(eps=(2.0, 2.0, 3.0)).is_biaxial()
    assert not Crystal(eps=(2.0, 2.0, 2.0)).is_biaxial()


# --- full symbol ---------------------------------------------------------------


def test_apply_cross_only():
    out_e, out_b = maxwell_apply(BIAXIAL, E3, np.zeros(3), E1)
    assert np.allclose(out_e, E2)
    assert np.allclose(out_b, 0.0)


def test_apply_isotropic():
    iso = Crystal(eps=(1.0, 1.0, 1.0))
    out_e, out_b = maxwell_apply(iso, E3, E1, E2)
    assert np.allclose(out_e, -E1)
    assert np.allclose(out_b, -E2)


def test_apply_kernel_direction():
    xi = np.array([0.3, -0.7, 1.1])
    out_e, _ = maxwell_apply(BIAXIAL, xi, xi, xi)
    assert np.allclose(out_e, 0.0)


def test_matrix_agrees_with_apply():
    rng = np.random.default_rng(3)
    for _ in range(20):
        xi, E, B = rng.standard_normal((3, 3))
        M = maxwell_matrix(BIAXIAL, xi)
        out = M @ np.concatenate([E, B])
        ae, ab = maxwell_apply(BIAXIAL, xi, E, B)
        assert np.allclose(out[:3], ae, atol=1e-14)
        assert np.allclose(out[3:], ab, atol=1e-14)


# --- compression ----------------------------------------------------------------


def test_compressed_isotropic():
    iso = Crystal(eps=(1.0, 1.0, 1.0))
    s = compressed_operator(iso, E3)
    assert s.t == pytest.approx(2.0, abs=1e-15)
    assert math.hypot(s.p, s.q) <= 1e-15


def test_compressed_axis_eigenvalues():
    from wavesym.sym2 import eigenvalues
    s = compressed_operator(Crystal(eps=(2.0, 3.0, 4.0)), E3)
    lo, hi = eigenvalues(s)
    assert lo == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert hi == pytest.approx(1.0 / 2.0, abs=1e-15)


def test_compressed_scales_with_norm_squared():
    s1 = compressed_operator(BIAXIAL, E3)
    s2 = compressed_operator(BIAXIAL, 2.0 * E3)
    assert s2.t == pytest.approx(4.0 * s1.t, rel=1e-14)
    with pytest.raises(InputError):
        compressed_operator(BIAXIAL, np.zeros(3))


def test_compressed_frame_independent():
    # eigenvalues agree with dense eigensolves of the projected tensor
    rng = np.random.default_rng(11)
    pts = rng.standard_normal((200, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    t, p, q = compressed_grid(BIAXIAL, pts)
    rad = np.hypot(p, q)
    lam1, lam2 = 0.5 * t - rad, 0.5 * t + rad
    b1, b2 = sheet_values_brute(BIAXIAL.inv_eps, pts)
    assert float(np.abs(lam1 - b1).max()) <= 1e-12
    assert float(np.abs(lam2 - b2).max()) <= 1e-12


# --- slowness sheets -------------------------------------------------------------


def test_sample_isotropic_doubles_sphere():
    iso = Crystal(eps=(1.0, 1.0, 1.0))
    xi = np.array([0.6, 0.0, 0.8])
    s = fresnel_sample(iso, xi)
    assert isinstance(s, FresnelSample)
    assert np.allclose(s.points[0], xi, atol=1e-14)
    assert np.allclose(s.points[1], xi, atol=1e-14)


def test_sample_axis_radii():
    s = fresnel_sample(Crystal(eps=(2.0, 3.0, 4.0)), E3)
    assert np.linalg.norm(s.points[0]) == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-14)
    assert np.linalg.norm(s.points[1]) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)
    assert s.lam1 <= s.lam2
    with pytest.raises(InputError):
        fresnel_sample(BIAXIAL, np.zeros(3))


def test_sample_speeds_solve_full_characteristic_equation():
    # +-sqrt(lambda_i) must be roots of det(tau I + sigma(xi)) for the
    # 6x6 operator; located independently by bracketed bisection
    rng = np.random.default_rng(23)
    inv_eps = BIAXIAL.inv_eps
    for _ in range(24):
        xi = rng.standard_normal(3)
        xi /= np.linalg.norm(xi)
        s = fresnel_sample(BIAXIAL, xi)
        for lam in (s.lam1, s.lam2):
            for sign in (1.0, -1.0):
                tau = sign * math.sqrt(lam)
                assert maxwell_root_residual(inv_eps, xi, tau) <= 1e-9


def test_sheet_speeds_ordering():
    pts = fibonacci_sphere(500)
    v1, v2 = sheet_speeds(BIAXIAL, pts)
    assert np.all(v1 <= v2 + 1e-15)
    assert np.all(v1 > 0.0)


# --- singular directions ----------------------------------------------------------


def test_four_axes_frozen_components():
    axes = singular_directions(BIAXIAL)
    assert len(axes) == 4
    for a in axes:
        assert a.residual <= 1e-10
        assert abs(a.x[1]) <= 1e-8
        assert abs(abs(a.x[0]) - AXIS_SIN_BETA) <= 1e-9
        assert abs(abs(a.x[2]) - AXIS_COS_BETA) <= 1e-9
        assert a.local_index == 1
    assert sum(a.local_index for a in axes) == 4


def test_axes_come_in_antipodal_pairs():
    axes = singular_directions(BIAXIAL)
    xs = [a.x for a in axes]
    for x in xs:
        assert any(np.linalg.norm(x + y) <= 1e-8 for y in xs)


def test_axes_match_dense_grid_minimum():
    # independent location: coarse global scan of the brute sheet gap,
    # then confirm exact degeneracy at the frozen direction
    pts = fibonacci_sphere(200_000)
    b1, b2 = sheet_values_brute(BIAXIAL.inv_eps, pts)
    best = pts[int(np.argmin(b2 - b1))]
    frozen = np.array([AXIS_SIN_BETA, 0.0, AXIS_COS_BETA])
    dist = min(np.linalg.norm(best - s * f)
               for s in (1.0, -1.0)
               for f in (frozen, frozen * np.array([-1.0, 1.0, 1.0])))
    assert dist <= 6e-3
    g1, g2 = sheet_values_brute(BIAXIAL.inv_eps, frozen[None, :])
    assert float(g2[0] - g1[0]) <= 1e-12


def test_closed_form_axes_agree():
    cf = optic_axes_closed_form(BIAXIAL)
    axes = singular_directions(BIAXIAL)
    for a in axes:
        assert min(np.linalg.norm(a.x - c) for c in cf) <= 1e-9


def test_axis_separation_value():
    axes = singular_directions(BIAXIAL)
    assert axis_separation(axes) == pytest.approx(AXIS_SEPARATION, abs=1e-9)


def test_uniaxial_rejected():
    with pytest.raises(NotBiaxial):
        singular_directions(Crystal(eps=(2.0, 2.0, 3.0)))


def test_axes_permutation_invariant_up_to_relabeling():
    # permuting the dielectric eigenvalues permutes the axis components
    axes = singular_directions(Crystal(eps=(3.0, 2.5, 2.0)))
    assert len(axes) == 4
    for a in axes:
        assert abs(a.x[1]) <= 1e-8
        assert abs(abs(a.x[0]) - AXIS_COS_BETA) <= 1e-9
        assert abs(abs(a.x[2]) - AXIS_SIN_BETA) <= 1e-9


# --- meshes ---------------------------------------------------------------------


def test_isotropic_mesh_is_double_unit_sphere():
    inner, outer = fresnel_mesh(Crystal(eps=(1.0, 1.0, 1.0)), subdivisions=3)
    for mesh in (inner, outer):
        norms = np.linalg.norm(mesh.vertices, axis=1)
        assert float(np.abs(norms - 1.0).max()) <= 1e-12
    assert np.array_equal(inner.faces, outer.faces)


def test_sheets_touch_near_axes():
    subdiv = 4
    dirs = icosphere(subdiv).vertices
    v1, v2 = sheet_speeds(BIAXIAL, dirs)
    gap = v2 - v1
    loc = dirs[int(np.argmin(gap))]
    axes = singular_directions(BIAXIAL)
    edge = 4.0 / (2.0**subdiv * math.sqrt(2.0))  # generous icosphere edge bound
    assert min(np.linalg.norm(loc - a.x) for a in axes) <= edge


def test_min_sheet_gap_frozen():
    assert min_sheet_gap(BIAXIAL, subdivisions=4) == pytest.approx(
        0.00035881061591636065, rel=1e-12)


def test_gap_antipodal_symmetry():
    pts = fibonacci_sphere(400)
    v1, v2 = sheet_speeds(BIAXIAL, pts)
    w1, w2 = sheet_speeds(BIAXIAL, -pts)
    assert float(np.abs((v2 - v1) - (w2 - w1)).max()) <= 1e-13


def test_gap_shrinks_toward_isotropy():
    gaps = [min_sheet_gap(Crystal(eps=e), subdivisions=3)
            for e in ((2.0, 2.5, 3.0), (2.2, 2.5, 2.8), (2.4, 2.5, 2.6))]
    assert gaps[0] > gaps[1] > gaps[2] > 0.0


# --- report ----------------------------------------------------------------------


def test_report_shape():
    rep = fresnel_report(BIAXIAL, subdivisions=3)
    assert rep["epsilon"] == [2.0, 2.5, 3.0]
    assert len(rep["singular_directions"]) == 4
    entry = rep["singular_directions"][0]
    assert set(entry) == {"x", "residual", "index"}
    assert len(entry["x"]) == 3
    assert rep["min_sheet_gap"] > 0.0
