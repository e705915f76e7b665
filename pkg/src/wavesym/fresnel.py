"""Plane wave structure of light in a homogeneous anisotropic crystal.

The 6x6 first order symbol of Maxwell's equations in a crystal with
permittivity eps compresses, on each unit covector xi, to the 2x2
symmetric operator A_ij = <eps^{-1} t_i, t_j> in an orthonormal tangent
frame (t1, t2) of xi.  Its eigenvalues are the squared phase speeds; the
two sheets tau = +-sqrt(lambda_i(xi)) |xi| of nonzero roots sweep out the
Fresnel surface.  For a biaxial crystal the sheets touch at four conical
directions, the optic axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotBiaxial
from .multiplicity import local_degree
from .spheremesh import SurfaceMesh, icosphere, refine_on_sphere, tangent_frames
from .sym2 import Sym2Value

AXIS_RESIDUAL_TOL = 1e-10
AXIS_MERGE_ANGLE = 1e-3


@dataclass(frozen=True)
class Crystal:
    """Principal permittivities of a homogeneous dielectric."""

    eps: tuple[float, float, float]

    def __post_init__(self):
        if len(self.eps) != 3 or any(e <= 0.0 for e in self.eps):
            raise InputError("permittivities must be three positive numbers")

    @property
    def inv_eps(self) -> np.ndarray:
        return np.diag([1.0 / e for e in self.eps])

    def is_biaxial(self, rel_tol: float = 1e-12) -> bool:
        e = sorted(self.eps)
        gap = rel_tol * e[2]
        return (e[1] - e[0]) > gap and (e[2] - e[1]) > gap


def _cross_matrix(xi: np.ndarray) -> np.ndarray:
    x, y, z = xi
    return np.array([
        [0.0, -z, y],
        [z, 0.0, -x],
        [-y, x, 0.0],
    ])


def maxwell_matrix(crystal: Crystal, xi: np.ndarray) -> np.ndarray:
    """Full 6x6 symbol [[0, K], [-K eps^{-1}, 0]] with K = cross(xi, .).

    Its characteristic roots are 0 (twice) and +-sqrt(lambda_i(xi)) |xi|
    for the two compressed eigenvalues lambda_i.
    """
    xi = np.asarray(xi, dtype=float)
    K = _cross_matrix(xi)
    top = np.hstack([np.zeros((3, 3)), K])
    bot = np.hstack([-K @ crystal.inv_eps, np.zeros((3, 3))])
    return np.vstack([top, bot])


def maxwell_apply(crystal: Crystal, xi: np.ndarray, E: np.ndarray,
                  B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symbol applied to a field pair: (xi x B, -xi x (eps^{-1} E))."""
    xi = np.asarray(xi, dtype=float)
    E = np.asarray(E, dtype=float)
    B = np.asarray(B, dtype=float)
    return np.cross(xi, B), -np.cross(xi, crystal.inv_eps @ E)


def compressed_grid(crystal: Crystal, points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Compressed operator components (t, p, q) at unit directions.

    points is (N, 3) with unit rows; the frame at each point is the
    deterministic tangent frame, so the components define a section of
    the symmetric operator bundle over the sphere minus nothing (the
    frame convention switches branch near the poles, consistently with
    every other sphere computation here).
    """
    X = np.asarray(points, dtype=float)
    t1, t2 = tangent_frames(X)
    ie = crystal.inv_eps
    a11 = np.einsum("ij,ij->i", t1 @ ie, t1)
    a22 = np.einsum("ij,ij->i", t2 @ ie, t2)
    a12 = np.einsum("ij,ij->i", t1 @ ie, t2)
    return a11 + a22, 0.5 * (a11 - a22), a12


def compressed_operator(crystal: Crystal, xi: np.ndarray) -> Sym2Value:
    """Compressed symbol at a covector, scaled by |xi|^2."""
    xi = np.asarray(xi, dtype=float)
    n2 = float(xi @ xi)
    if n2 <= 0.0:
        raise InputError("covector must be nonzero")
    t, p, q = compressed_grid(crystal, (xi / math.sqrt(n2))[None, :])
    return Sym2Value(t=float(t[0]) * n2, p=float(p[0]) * n2, q=float(q[0]) * n2)


def sheet_speeds(crystal: Crystal, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(sqrt(lambda_1), sqrt(lambda_2)) at unit directions, slow sheet first."""
    t, p, q = compressed_grid(crystal, points)
    rad = np.hypot(p, q)
    lam1 = 0.5 * t - rad
    lam2 = 0.5 * t + rad
    return np.sqrt(np.maximum(lam1, 0.0)), np.sqrt(lam2)


@dataclass(frozen=True)
class FresnelSample:
    """Both surface points sqrt(lambda_i) xi along one unit direction."""

    xi: np.ndarray
    lam1: float
    lam2: float
    points: tuple[np.ndarray, np.ndarray]


def fresnel_sample(crystal: Crystal, xi: np.ndarray) -> FresnelSample:
    xi = np.asarray(xi, dtype=float)
    n = np.linalg.norm(xi)
    if n <= 0.0:
        raise InputError("direction must be nonzero")
    u = xi / n
    t, p, q = compressed_grid(crystal, u[None, :])
    rad = math.hypot(float(p[0]), float(q[0]))
    lam1 = 0.5 * float(t[0]) - rad
    lam2 = 0.5 * float(t[0]) + rad
    return FresnelSample(
        xi=u,
        lam1=lam1,
        lam2=lam2,
        points=(math.sqrt(max(lam1, 0.0)) * u, math.sqrt(lam2) * u),
    )


def _gap_squared(crystal: Crystal):
    def fn(pts: np.ndarray) -> np.ndarray:
        _, p, q = compressed_grid(crystal, pts)
        return p * p + q * q
    return fn


@dataclass(frozen=True)
class SingularDirection:
    """A conical direction: location, sheet gap residual, local index."""

    x: np.ndarray
    residual: float
    local_index: int


def optic_axes_closed_form(crystal: Crystal) -> np.ndarray:
    """The four conical directions of a biaxial crystal.

    With inverse permittivities a1 > a2 > a3 the axes live in the plane
    of the extreme principal directions, at angle beta from the small
    axis with cos^2 beta = (a2 - a3) / (a1 - a3).
    """
    if not crystal.is_biaxial():
        raise NotBiaxial("conical directions require three distinct permittivities")
    a = np.array([1.0 / e for e in crystal.eps])
    order = np.argsort(-a)
    ah, am, al = a[order]
    c2 = (am - al) / (ah - al)
    c, s = math.sqrt(c2), math.sqrt(1.0 - c2)
    e_high = np.eye(3)[order[0]]
    e_low = np.eye(3)[order[2]]
    axes = []
    for sg_s in (1.0, -1.0):
        for sg_c in (1.0, -1.0):
            axes.append(sg_s * s * e_high + sg_c * c * e_low)
    return np.array(sorted(axes, key=lambda d: (round(d[0], 12), round(d[1], 12), round(d[2], 12))))


def singular_directions(crystal: Crystal, subdivisions: int = 4,
                        residual_tol: float = AXIS_RESIDUAL_TOL) -> list[SingularDirection]:
    """Locate the optic axes numerically and attach their local indices.

    Seeds come from the smallest sheet gaps on an icosphere; coordinate
    descent on the squared gap drives each seed to a conical point.
    Raises NotBiaxial when the crystal cannot have four isolated axes.
    """
    if not crystal.is_biaxial():
        raise NotBiaxial("optic axis search requires a biaxial crystal")
    gap2 = _gap_squared(crystal)
    mesh = icosphere(subdivisions)
    vals = gap2(mesh.vertices)
    seeds = mesh.vertices[np.argsort(vals)[:48]]
    found: list[np.ndarray] = []
    for seed in seeds:
        x, v = refine_on_sphere(lambda p: float(gap2(p[None, :])[0]), seed)
        if math.sqrt(v) > residual_tol:
            continue
        if all(float(np.dot(x, y)) < math.cos(AXIS_MERGE_ANGLE) for y in found):
            found.append(x)
    axes = []
    section = lambda pts: compressed_grid(crystal, pts)
    for d in sorted(found, key=lambda d: (round(d[0], 9), round(d[1], 9), round(d[2], 9))):
        g = math.sqrt(float(gap2(d[None, :])[0]))
        idx = local_degree(section, d, radius=5e-3, samples=180)
        axes.append(SingularDirection(x=d, residual=g, local_index=idx))
    return axes


def axis_separation(axes: list[SingularDirection]) -> float:
    """Smallest nonzero angle between axis directions."""
    best = math.pi
    for i in range(len(axes)):
        for j in range(i + 1, len(axes)):
            c = float(np.clip(np.dot(axes[i].x, axes[j].x), -1.0, 1.0))
            ang = math.acos(c)
            if 1e-9 < ang < best:
                best = ang
    return best


def fresnel_mesh(crystal: Crystal, subdivisions: int = 4) -> tuple[SurfaceMesh, SurfaceMesh]:
    """Triangulated inner and outer Fresnel sheets on an icosphere."""
    base = icosphere(subdivisions)
    s1, s2 = sheet_speeds(crystal, base.vertices)
    inner = SurfaceMesh(vertices=base.vertices * s1[:, None], faces=base.faces.copy())
    outer = SurfaceMesh(vertices=base.vertices * s2[:, None], faces=base.faces.copy())
    return inner, outer


def min_sheet_gap(crystal: Crystal, subdivisions: int = 4) -> float:
    base = icosphere(subdivisions)
    s1, s2 = sheet_speeds(crystal, base.vertices)
    return float((s2 - s1).min())


def fresnel_report(crystal: Crystal, subdivisions: int = 4) -> dict:
    """Axis data and sheet statistics as a serializable dict."""
    axes = singular_directions(crystal, subdivisions=subdivisions)
    base = icosphere(subdivisions)
    s1, s2 = sheet_speeds(crystal, base.vertices)
    return {
        "epsilon": [float(e) for e in crystal.eps],
        "singular_directions": [
            {
                "x": [float(c) for c in a.x],
                "residual": a.residual,
                "index": a.local_index,
            }
            for a in axes
        ],
        "min_sheet_gap": float((s2 - s1).min()),
    }
