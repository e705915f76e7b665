"""Multiplicity sets of 2x2 symbol fields over planar charts.

A chart field assigns to every chart point x a coefficient matrix M(x)
(see sym2.LinearSymbol2).  The multiplicity locus of the field projects to
the zero set of f = det M, which is extracted here by marching squares
with edgewise bisection.  On a closed extracted curve the kernel line of
M turns by an integer number of half turns; that integer classifies the
multiplicity curve as a (2, m) torus knot or link.

Everything is deterministic: grids, traversal order, tie breaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DegenerateField,
    InputError,
    LiftFailure,
    OutOfDomain,
    RankZero,
    ZeroOnVertex,
)
from .spheremesh import SurfaceMesh, rotate_pq, tangent_frames
from .sym2 import LinearSymbol2, mod_pi

CONTOUR_REL_TOL = 1e-10
GRADIENT_FLOOR_REL = 1e-6
WINDING_RESIDUAL = 0.1
_JUMP_LIMIT = (math.pi / 2.0) * (1.0 - 1e-9)


MatrixFn = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]]


@dataclass
class ChartSymbolField:
    """Symbol field on the rectangle [x0, x1] x [y0, y1].

    matrix_fn maps coordinate arrays (X, Y) to the four entry arrays
    (m11, m12, m21, m22) of the coefficient matrix; it must be pure, so
    repeated evaluation at the same point is bit identical.
    """

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int
    matrix_fn: MatrixFn
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise InputError("empty chart rectangle")
        if self.nx < 16 or self.ny < 16:
            raise InputError("grid resolution must be at least 16 per axis")

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        if "nodes" not in self._cache:
            xs = np.linspace(self.x0, self.x1, self.nx + 1)
            ys = np.linspace(self.y0, self.y1, self.ny + 1)
            self._cache["nodes"] = (xs, ys)
        return self._cache["nodes"]

    def det_at(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        m11, m12, m21, m22 = self.matrix_fn(np.asarray(X, dtype=float), np.asarray(Y, dtype=float))
        return m11 * m22 - m12 * m21

    def det_grid(self) -> np.ndarray:
        """Determinant on the nodes, indexed [i, j] = (xs[i], ys[j])."""
        if "det_grid" not in self._cache:
            xs, ys = self.nodes()
            X, Y = np.meshgrid(xs, ys, indexing="ij")
            m11, m12, m21, m22 = self.matrix_fn(X, Y)
            self._cache["det_grid"] = m11 * m22 - m12 * m21
            self._cache["max_abs_det"] = float(np.abs(self._cache["det_grid"]).max())
            self._cache["max_frob2"] = float((m11**2 + m12**2 + m21**2 + m22**2).max())
        return self._cache["det_grid"]

    @property
    def max_abs_det(self) -> float:
        self.det_grid()
        return self._cache["max_abs_det"]

    @property
    def max_frobenius(self) -> float:
        self.det_grid()
        return math.sqrt(self._cache["max_frob2"])

    def matrix_at(self, x: float, y: float) -> LinearSymbol2:
        if not self.contains(x, y):
            raise OutOfDomain(f"({x}, {y}) outside chart rectangle")
        m11, m12, m21, m22 = self.matrix_fn(np.array([x]), np.array([y]))
        return LinearSymbol2(float(m11[0]), float(m12[0]), float(m21[0]), float(m22[0]))


def det_field(fld: ChartSymbolField, x: float, y: float) -> float:
    """f(x, y) = det M(x, y); rejects points outside the rectangle."""
    if not fld.contains(x, y):
        raise OutOfDomain(f"({x}, {y}) outside chart rectangle")
    return float(fld.det_at(np.array([x]), np.array([y]))[0])


@dataclass
class SingularCurve:
    """Polyline on the zero set of det M.

    Closed curves repeat their first vertex at the end and run counter
    clockwise in chart coordinates.
    """

    polyline: np.ndarray
    closed: bool
    length: float
    residuals: np.ndarray

    def vertex_count(self) -> int:
        return self.polyline.shape[0] - (1 if self.closed else 0)


def _polyline_length(pts: np.ndarray) -> float:
    return float(np.sum(np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))))


def _shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))


def extract_singular_set(fld: ChartSymbolField, rel_tol: float = CONTOUR_REL_TOL) -> list[SingularCurve]:
    """Marching squares on det M with edgewise bisection refinement.

    Vertices are pushed down to |f| <= rel_tol * max|f| along their grid
    edge.  Curves come back ordered by descending arclength, closed ones
    oriented counter clockwise and starting at their lexicographically
    smallest vertex.
    """
    if rel_tol <= 0.0:
        raise InputError("rel_tol must be positive")
    F = fld.det_grid()
    max_abs = fld.max_abs_det
    frob2 = fld._cache["max_frob2"]
    if max_abs <= 1e-14 * max(1.0, frob2):
        raise DegenerateField("det M vanishes on the whole grid")
    tol = rel_tol * max_abs

    xs, ys = fld.nodes()
    S = F >= 0.0
    hx = S[:-1, :] != S[1:, :]   # edge (i,j)-(i+1,j), shape (nx, ny+1)
    vx = S[:, :-1] != S[:, 1:]   # edge (i,j)-(i,j+1), shape (nx+1, ny)

    cell_cross = hx[:, :-1] | hx[:, 1:] | vx[:-1, :] | vx[1:, :]
    cells = np.argwhere(cell_cross)
    if cells.size == 0:
        return []

    # saddle cells need a center sample to pick the branch pairing
    segments: list[tuple[tuple, tuple]] = []
    saddle_cells = []
    for i, j in cells:
        edges = []
        if hx[i, j]:
            edges.append(("h", i, j))
        if vx[i + 1, j]:
            edges.append(("v", i + 1, j))
        if hx[i, j + 1]:
            edges.append(("h", i, j + 1))
        if vx[i, j]:
            edges.append(("v", i, j))
        if len(edges) == 2:
            segments.append((edges[0], edges[1]))
        elif len(edges) == 4:
            saddle_cells.append((i, j))
        # len 0 cannot happen here; odd counts are impossible by parity

    if saddle_cells:
        sc = np.array(saddle_cells)
        cxs = 0.5 * (xs[sc[:, 0]] + xs[sc[:, 0] + 1])
        cys = 0.5 * (ys[sc[:, 1]] + ys[sc[:, 1] + 1])
        fc = fld.det_at(cxs, cys)
        for (i, j), fcv in zip(saddle_cells, fc):
            south, east = ("h", i, j), ("v", i + 1, j)
            north, west = ("h", i, j + 1), ("v", i, j)
            if (fcv >= 0.0) == S[i, j]:
                # center joins the SW corner region; branches cut SE and NW
                segments.append((south, east))
                segments.append((north, west))
            else:
                segments.append((south, west))
                segments.append((north, east))

    # refine every crossing edge to a vertex by bisection along the edge
    edge_keys = sorted({e for seg in segments for e in seg})
    n_edges = len(edge_keys)
    ax = np.empty(n_edges)
    ay = np.empty(n_edges)
    bx = np.empty(n_edges)
    by = np.empty(n_edges)
    fa = np.empty(n_edges)
    fb = np.empty(n_edges)
    for k, (kind, i, j) in enumerate(edge_keys):
        if kind == "h":
            ax[k], ay[k], fa[k] = xs[i], ys[j], F[i, j]
            bx[k], by[k], fb[k] = xs[i + 1], ys[j], F[i + 1, j]
        else:
            ax[k], ay[k], fa[k] = xs[i], ys[j], F[i, j]
            bx[k], by[k], fb[k] = xs[i], ys[j + 1], F[i, j + 1]
    # orient brackets so fa >= 0 > fb
    swap = fa < 0.0
    ax[swap], bx[swap] = bx[swap], ax[swap].copy()
    ay[swap], by[swap] = by[swap], ay[swap].copy()
    fa[swap], fb[swap] = fb[swap], fa[swap].copy()

    vx_ = 0.5 * (ax + bx)
    vy_ = 0.5 * (ay + by)
    done = np.zeros(n_edges, dtype=bool)
    res = np.empty(n_edges)
    # endpoints already on the curve count as converged immediately
    for end_x, end_y, end_f in ((ax, ay, fa), (bx, by, fb)):
        hit = ~done & (np.abs(end_f) <= tol)
        vx_[hit], vy_[hit], res[hit] = end_x[hit], end_y[hit], np.abs(end_f[hit])
        done |= hit
    for _ in range(64):
        if done.all():
            break
        act = ~done
        mx = 0.5 * (ax[act] + bx[act])
        my = 0.5 * (ay[act] + by[act])
        fm = fld.det_at(mx, my)
        idx = np.nonzero(act)[0]
        conv = np.abs(fm) <= tol
        vx_[idx], vy_[idx] = mx, my
        res[idx] = np.abs(fm)
        done[idx[conv]] = True
        pos = fm >= 0.0
        upd_pos = idx[~conv & pos]
        upd_neg = idx[~conv & ~pos]
        sel_pos = ~conv & pos
        sel_neg = ~conv & ~pos
        ax[upd_pos], ay[upd_pos], fa[upd_pos] = mx[sel_pos], my[sel_pos], fm[sel_pos]
        bx[upd_neg], by[upd_neg], fb[upd_neg] = mx[sel_neg], my[sel_neg], fm[sel_neg]

    key_index = {e: k for k, e in enumerate(edge_keys)}
    adjacency: dict[tuple, list[tuple]] = {e: [] for e in edge_keys}
    for e1, e2 in segments:
        adjacency[e1].append(e2)
        adjacency[e2].append(e1)
    for e in adjacency:
        adjacency[e].sort()

    visited: set[tuple] = set()
    chains: list[tuple[list[tuple], bool]] = []

    def walk(start: tuple) -> list[tuple]:
        chain = [start]
        visited.add(start)
        prev = None
        cur = start
        while True:
            nxt = None
            for nb in adjacency[cur]:
                if nb != prev and nb not in visited:
                    nxt = nb
                    break
            if nxt is None:
                return chain
            chain.append(nxt)
            visited.add(nxt)
            prev, cur = cur, nxt

    endpoints = sorted(e for e in edge_keys if len(adjacency[e]) == 1)
    for e in endpoints:
        if e not in visited:
            chains.append((walk(e), False))
    for e in edge_keys:
        if e not in visited:
            chains.append((walk(e), True))

    curves = []
    for chain, closed in chains:
        idxs = np.array([key_index[e] for e in chain])
        pts = np.column_stack([vx_[idxs], vy_[idxs]])
        rr = res[idxs]
        if closed:
            if _shoelace(np.vstack([pts, pts[:1]])) < 0.0:
                pts = pts[::-1].copy()
                rr = rr[::-1].copy()
            start = int(np.lexsort((pts[:, 1], pts[:, 0]))[0])
            pts = np.roll(pts, -start, axis=0)
            rr = np.roll(rr, -start)
            pts = np.vstack([pts, pts[:1]])
            rr = np.append(rr, rr[0])
        else:
            if tuple(pts[-1]) < tuple(pts[0]):
                pts = pts[::-1].copy()
                rr = rr[::-1].copy()
        curves.append(SingularCurve(polyline=pts, closed=closed, length=_polyline_length(pts), residuals=rr))

    curves.sort(key=lambda c: (-c.length, c.polyline[0, 0], c.polyline[0, 1]))
    return curves


class RegularValueCertificate(NamedTuple):
    transversal: bool
    min_gradient: float
    floor: float


def regular_value_check(fld: ChartSymbolField, curve: SingularCurve,
                        floor_rel: float = GRADIENT_FLOOR_REL) -> RegularValueCertificate:
    """Certify 0 as a regular value of det M along the curve.

    Central differences with a dyadic step much smaller than the grid
    keep truncation error far below the floor, so a genuine tangency
    (zero gradient) separates from discretization noise by orders of
    magnitude.
    """
    pts = curve.polyline[:-1] if curve.closed else curve.polyline
    dx = (fld.x1 - fld.x0) * 2.0**-20
    dy = (fld.y1 - fld.y0) * 2.0**-20
    gx = (fld.det_at(pts[:, 0] + dx, pts[:, 1]) - fld.det_at(pts[:, 0] - dx, pts[:, 1])) / (2.0 * dx)
    gy = (fld.det_at(pts[:, 0], pts[:, 1] + dy) - fld.det_at(pts[:, 0], pts[:, 1] - dy)) / (2.0 * dy)
    gnorm = np.hypot(gx, gy)
    half_width = 0.5 * max(fld.x1 - fld.x0, fld.y1 - fld.y0)
    floor = floor_rel * fld.max_abs_det / half_width
    mg = float(gnorm.min())
    return RegularValueCertificate(transversal=mg > floor, min_gradient=mg, floor=floor)


def _kernel_angles_raw(m11, m12, m21, m22) -> np.ndarray:
    # right singular direction of the least singular value of M,
    # via the top eigenline of M^T M turned a quarter turn
    A = m11 * m11 + m21 * m21
    D = m12 * m12 + m22 * m22
    B = m11 * m12 + m21 * m22
    top = 0.5 * np.arctan2(2.0 * B, A - D)
    ang = np.mod(top + math.pi / 2.0, math.pi)
    return np.where(ang == math.pi, 0.0, ang)


def kernel_angle(fld: ChartSymbolField, x: float, y: float) -> float:
    """Line angle in [0, pi) spanned by ker M(x, y) (covector side).

    Only meaningful on the singular set; the determinant at the point
    must already be small.  Raises RankZero when M itself vanishes.
    """
    m = fld.matrix_at(x, y)
    if abs(m.det()) > 1e-6 * max(fld.max_abs_det, 1e-300):
        raise InputError("kernel angle queried away from the singular set")
    if m.frobenius() <= 1e-12 * max(fld.max_frobenius, 1e-300):
        raise RankZero("coefficient matrix vanishes; kernel line undefined")
    return float(_kernel_angles_raw(np.array(m.m11), np.array(m.m12), np.array(m.m21), np.array(m.m22)))


def kernel_angles_along(fld: ChartSymbolField, pts: np.ndarray) -> np.ndarray:
    """Vectorized kernel line angles at the given (K, 2) points."""
    m11, m12, m21, m22 = fld.matrix_fn(pts[:, 0], pts[:, 1])
    frob = np.sqrt(m11**2 + m12**2 + m21**2 + m22**2)
    if np.any(frob <= 1e-12 * max(fld.max_frobenius, 1e-300)):
        raise RankZero("coefficient matrix vanishes on the curve")
    return _kernel_angles_raw(m11, m12, m21, m22)


def lift_line_angles(angles: np.ndarray) -> np.ndarray:
    """Continuous lift of a sequence of line angles (mod pi).

    Consecutive representatives are chosen nearest to the running lift;
    a forced jump of a quarter turn or more aborts with LiftFailure.
    """
    raw = np.asarray(angles, dtype=float)
    if raw.size == 0:
        return raw.copy()
    d = np.mod(np.diff(raw) + math.pi / 2.0, math.pi) - math.pi / 2.0
    if d.size and float(np.abs(d).max()) >= _JUMP_LIMIT:
        raise LiftFailure("kernel angle jump of a quarter turn; sampling too coarse")
    return raw[0] + np.concatenate([[0.0], np.cumsum(d)])


@dataclass
class MultiplicityComponent:
    """Curve of the singular set with its lifted kernel angle data."""

    base: SingularCurve
    kernel_angles: np.ndarray
    winding: int
    knot: tuple[int, int]
    connected: bool


def trace_component(fld: ChartSymbolField, curve: SingularCurve) -> MultiplicityComponent:
    """Lift the kernel line along a closed curve and read off the winding."""
    if not curve.closed:
        raise InputError("winding requires a closed base curve")
    raw = kernel_angles_along(fld, curve.polyline)
    lifted = lift_line_angles(raw)
    total = float(lifted[-1] - lifted[0]) / math.pi
    m = int(round(total))
    if abs(total - m) >= WINDING_RESIDUAL:
        raise LiftFailure(f"winding residual {abs(total - m):.3g} exceeds {WINDING_RESIDUAL}")
    return MultiplicityComponent(
        base=curve,
        kernel_angles=lifted,
        winding=m,
        knot=(2, m),
        connected=(m % 2 != 0),
    )


def winding_number(component: MultiplicityComponent) -> int:
    """Half turns of the kernel line along one CCW traversal of the base."""
    if not component.base.closed:
        raise InputError("winding requires a closed base curve")
    return component.winding


class KnotType(NamedTuple):
    pair: tuple[int, int]
    connected: bool


def knot_type(m: int) -> KnotType:
    """(2, m) torus knot for odd m, two-component link for even m."""
    return KnotType(pair=(2, m), connected=(m % 2 != 0))


def knot_polyline(m: int, samples: int = 256) -> list[np.ndarray]:
    """Polylines in solid torus coordinates (base angle, fiber angle).

    One component of 2*samples points when m is odd, two components of
    samples points each when m is even.  Rows close up modulo 2 pi.
    """
    if samples < 8:
        raise InputError("samples must be at least 8")
    if m % 2 != 0:
        t = np.linspace(0.0, 4.0 * math.pi, 2 * samples, endpoint=False)
        return [np.column_stack([np.mod(t, 2.0 * math.pi), np.mod(0.5 * m * t, 2.0 * math.pi)])]
    t = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    comps = []
    for offset in (0.0, math.pi):
        comps.append(np.column_stack([t, np.mod(offset + 0.5 * m * t, 2.0 * math.pi)]))
    return comps


def polylines_csv(components: list[MultiplicityComponent]) -> str:
    """CSV rows curve_id,x1,x2,kernel_angle_lifted for every vertex."""
    from .serialize import fmt_float

    lines = ["curve_id,x1,x2,kernel_angle_lifted"]
    for cid, comp in enumerate(components):
        for (x, y), ang in zip(comp.base.polyline, comp.kernel_angles):
            lines.append(f"{cid},{fmt_float(x)},{fmt_float(y)},{fmt_float(ang)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# signed zero counts of traceless sections over surface meshes


def _wrap_angle_diffs(angles: np.ndarray) -> np.ndarray:
    d = np.diff(angles, axis=-1, append=angles[..., :1])
    return np.mod(d + math.pi, 2.0 * math.pi) - math.pi


def vector_loop_turns(p: np.ndarray, q: np.ndarray) -> int:
    """Degree of a closed nonvanishing loop of 2-vectors around 0."""
    angles = np.arctan2(q, p)
    d = _wrap_angle_diffs(angles)
    if float(np.abs(d).max()) >= _JUMP_LIMIT:
        raise LiftFailure("vector loop sampled too coarsely")
    total = float(d.sum()) / (2.0 * math.pi)
    n = int(round(total))
    if abs(total - n) > 0.25:
        raise LiftFailure(f"loop degree residual {abs(total - n):.3g}")
    return n


def _face_boundary_samples(mesh: SurfaceMesh, samples_per_edge: int, spherical: bool) -> np.ndarray:
    """(F, 3 * samples_per_edge, 3) points around each face boundary."""
    v = mesh.vertices
    f = mesh.faces
    ts = np.arange(samples_per_edge, dtype=float) / samples_per_edge
    chunks = []
    for e in range(3):
        a = v[f[:, e]][:, None, :]
        b = v[f[:, (e + 1) % 3]][:, None, :]
        pts = (1.0 - ts)[None, :, None] * a + ts[None, :, None] * b
        chunks.append(pts)
    loop = np.concatenate(chunks, axis=1)
    if spherical:
        loop = loop / np.linalg.norm(loop, axis=2, keepdims=True)
    return loop


def _pq_in_center_frames(points: np.ndarray, centers: np.ndarray, p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Re-express (p, q) given in each point's own frame in the frame of its center.

    points: (F, S, 3), centers: (F, 3); the center frame is transported to
    each point by tangent projection.
    """
    F, S, _ = points.shape
    flat = points.reshape(-1, 3)
    t1c, _ = tangent_frames(centers)
    t1c_rep = np.repeat(t1c, S, axis=0)
    proj = t1c_rep - np.einsum("ij,ij->i", t1c_rep, flat)[:, None] * flat
    proj /= np.linalg.norm(proj, axis=1, keepdims=True)
    t1x, t2x = tangent_frames(flat)
    delta = np.arctan2(np.einsum("ij,ij->i", proj, t2x), np.einsum("ij,ij->i", proj, t1x))
    pr, qr = rotate_pq(p.reshape(-1), q.reshape(-1), -2.0 * delta)
    return pr.reshape(F, S), qr.reshape(F, S)


def signed_zero_count(mesh: SurfaceMesh, section_fn, geometry: str = "sphere",
                      samples_per_edge: int = 8, vertex_tol: float = 1e-9) -> int:
    """Sum of face-local degrees of the traceless part (p, q) of a section.

    section_fn maps an (N, 3) array of surface points to arrays
    (t, p, q) expressed in the standard tangent frame at each point (any
    fixed global frame for planar geometry).  Faces are trivialized from
    their centroid frame, so the total over a closed mesh is the Euler
    number of the traceless operator bundle.

    Raises ZeroOnVertex when the section vanishes on a vertex or hugs
    zero along a face boundary; perturb the mesh and retry.
    """
    if geometry not in ("sphere", "plane"):
        raise InputError("geometry must be 'sphere' or 'plane'")
    spherical = geometry == "sphere"
    _, pv, qv = section_fn(mesh.vertices)
    norms = np.hypot(pv, qv)
    scale = float(norms.max())
    if scale == 0.0:
        raise ZeroOnVertex("section vanishes identically on the vertices")
    if float(norms.min()) <= vertex_tol * scale:
        raise ZeroOnVertex("section vanishes on a mesh vertex")

    spe = samples_per_edge
    faces_todo = np.arange(mesh.n_faces)
    sub = mesh
    total = 0
    while True:
        loop = _face_boundary_samples(sub, spe, spherical)
        F, S, _ = loop.shape
        _, p, q = section_fn(loop.reshape(-1, 3))
        p = p.reshape(F, S)
        q = q.reshape(F, S)
        if float(np.hypot(p, q).min()) <= vertex_tol * scale:
            raise ZeroOnVertex("section nearly vanishes on a face boundary")
        if spherical:
            centers = sub.vertices[sub.faces].mean(axis=1)
            centers /= np.linalg.norm(centers, axis=1, keepdims=True)
            p, q = _pq_in_center_frames(loop, centers, p, q)
        d = _wrap_angle_diffs(np.arctan2(q, p))
        bad = np.abs(d).max(axis=1) >= _JUMP_LIMIT
        ok = ~bad
        turns = d[ok].sum(axis=1) / (2.0 * math.pi)
        rounded = np.round(turns)
        if turns.size and float(np.abs(turns - rounded).max()) > 0.25:
            raise LiftFailure("face boundary loop degree did not settle")
        total += int(rounded.sum())
        if not bad.any():
            return total
        if spe >= 64:
            raise ZeroOnVertex("section hugs zero along a face boundary")
        sub = SurfaceMesh(vertices=sub.vertices, faces=sub.faces[bad])
        spe *= 2


def local_degree(section_fn, center: np.ndarray, radius: float = 1e-2, samples: int = 90) -> int:
    """Degree of (p, q) around a small spherical circle about center."""
    c = np.asarray(center, dtype=float)
    c = c / np.linalg.norm(c)
    t1, t2 = tangent_frames(c)
    beta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    pts = (
        math.cos(radius) * c[None, :]
        + math.sin(radius) * (np.cos(beta)[:, None] * t1[None, :] + np.sin(beta)[:, None] * t2[None, :])
    )
    _, p, q = section_fn(pts)
    p2, q2 = _pq_in_center_frames(pts[None, :, :], c[None, :], p[None, :], q[None, :])
    return vector_loop_turns(p2[0], q2[0])
