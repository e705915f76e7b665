"""Triangle meshes on the unit sphere and their combinatorics.

The icosphere here is the polar orientation: vertices at both poles plus
two pentagonal rings, so (0, 0, +-1) are exact mesh vertices at every
subdivision level.  Midpoint subdivision is deterministic (edge midpoints
are appended in face order), which keeps every export byte reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotClosed, NotConnected, WavesymError


@dataclass
class SurfaceMesh:
    """Triangle mesh: vertices (V, 3) float, faces (F, 3) int."""

    vertices: np.ndarray
    faces: np.ndarray
    # optional labels, e.g. sheet/cylinder regions on glued surfaces
    vertex_tags: np.ndarray | None = field(default=None)

    def __post_init__(self) -> None:
        self.vertices = np.asarray(self.vertices, dtype=float)
        self.faces = np.asarray(self.faces, dtype=int)

    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_faces(self) -> int:
        return int(self.faces.shape[0])


def _edge_counts(faces: np.ndarray) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for a, b, c in faces:
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            counts[key] = counts.get(key, 0) + 1
    return counts


def edge_count(mesh: SurfaceMesh) -> int:
    return len(_edge_counts(mesh.faces))


def is_closed(mesh: SurfaceMesh) -> bool:
    return all(c == 2 for c in _edge_counts(mesh.faces).values())


def euler_characteristic(mesh: SurfaceMesh) -> int:
    """V - E + F of a closed mesh.  Raises NotClosed on boundary edges."""
    counts = _edge_counts(mesh.faces)
    bad = [e for e, c in counts.items() if c != 2]
    if bad:
        raise NotClosed(f"{len(bad)} edges are not shared by exactly two faces")
    return mesh.n_vertices - len(counts) + mesh.n_faces


def connected_components(mesh: SurfaceMesh) -> int:
    """Number of vertex components under the edge graph."""
    parent = list(range(mesh.n_vertices))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b, c in mesh.faces:
        for u, v in ((a, b), (b, c), (c, a)):
            ru, rv = find(int(u)), find(int(v))
            if ru != rv:
                parent[ru] = rv
    used = {int(v) for f in mesh.faces for v in f}
    return len({find(i) for i in used}) if used else 0


def is_consistently_oriented(mesh: SurfaceMesh) -> bool:
    """Each interior edge must be traversed once in each direction."""
    directed: set[tuple[int, int]] = set()
    for a, b, c in mesh.faces:
        for u, v in ((a, b), (b, c), (c, a)):
            if (int(u), int(v)) in directed:
                return False
            directed.add((int(u), int(v)))
    for u, v in directed:
        if (v, u) not in directed:
            return False
    return True


def genus(mesh: SurfaceMesh) -> int:
    """(2 - chi)/2 for a closed connected orientable mesh."""
    if connected_components(mesh) != 1:
        raise NotConnected("genus requires a connected surface")
    chi = euler_characteristic(mesh)
    if chi % 2 != 0:
        raise WavesymError(f"odd Euler characteristic {chi}; mesh is not an orientable surface")
    return (2 - chi) // 2


def boundary_loops(faces: np.ndarray) -> list[list[int]]:
    """Vertex cycles of the boundary (edges used by exactly one face)."""
    counts = _edge_counts(faces)
    directed = {}
    for a, b, c in faces:
        for u, v in ((int(a), int(b)), (int(b), int(c)), (int(c), int(a))):
            key = (u, v) if u < v else (v, u)
            if counts[key] == 1:
                # boundary is traversed opposite to the face direction
                directed[v] = u
    loops: list[list[int]] = []
    seen: set[int] = set()
    for start in sorted(directed):
        if start in seen:
            continue
        loop = [start]
        seen.add(start)
        cur = directed[start]
        while cur != start:
            loop.append(cur)
            seen.add(cur)
            cur = directed[cur]
        loops.append(loop)
    return loops


_PHI_RING_Z = 1.0 / math.sqrt(5.0)
_RING_R = 2.0 / math.sqrt(5.0)


def _icosahedron() -> tuple[np.ndarray, np.ndarray]:
    verts = [(0.0, 0.0, 1.0)]
    for k in range(5):
        a = 2.0 * math.pi * k / 5.0
        verts.append((_RING_R * math.cos(a), _RING_R * math.sin(a), _PHI_RING_Z))
    for k in range(5):
        a = 2.0 * math.pi * k / 5.0 + math.pi / 5.0
        verts.append((_RING_R * math.cos(a), _RING_R * math.sin(a), -_PHI_RING_Z))
    verts.append((0.0, 0.0, -1.0))
    top = [(0, 1 + k, 1 + (k + 1) % 5) for k in range(5)]
    upper = [(1 + k, 6 + k, 1 + (k + 1) % 5) for k in range(5)]
    lower = [(1 + (k + 1) % 5, 6 + k, 6 + (k + 1) % 5) for k in range(5)]
    bottom = [(11, 6 + (k + 1) % 5, 6 + k) for k in range(5)]
    return np.array(verts), np.array(top + upper + lower + bottom)


def icosphere(subdivisions: int = 0) -> SurfaceMesh:
    """Unit icosphere with poles at (0, 0, +-1); 20 * 4^n faces."""
    if subdivisions < 0:
        raise ValueError("subdivisions must be >= 0")
    verts, faces = _icosahedron()
    verts = [np.array(v) for v in verts]
    for _ in range(subdivisions):
        cache: dict[tuple[int, int], int] = {}
        new_faces = []

        def midpoint(i: int, j: int) -> int:
            key = (i, j) if i < j else (j, i)
            if key not in cache:
                m = verts[i] + verts[j]
                m /= np.linalg.norm(m)
                cache[key] = len(verts)
                verts.append(m)
            return cache[key]

        for a, b, c in faces:
            ab = midpoint(int(a), int(b))
            bc = midpoint(int(b), int(c))
            ca = midpoint(int(c), int(a))
            new_faces += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        faces = np.array(new_faces)
    return SurfaceMesh(vertices=np.array(verts), faces=faces)


def tangent_frames(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal tangent frames (t1, t2) at unit points x.

    t1 = normalize(a cross x) with a = e3, switching to a = e1 when
    |<x, e3>| > 0.9; t2 = x cross t1.  Vectorized over (..., 3).
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    a = np.where(np.abs(pts[:, 2:3]) > 0.9, [[1.0, 0.0, 0.0]], [[0.0, 0.0, 1.0]])
    t1 = np.cross(a, pts)
    t1 /= np.linalg.norm(t1, axis=1, keepdims=True)
    t2 = np.cross(pts, t1)
    if single:
        return t1[0], t2[0]
    return t1, t2


def transported_frame_angle(center: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Angle of the center frame's t1, transported to x, inside x's own frame.

    The transport projects t1(center) onto the tangent plane at x and
    renormalizes; valid while x stays well away from +-t1(center).
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    t1c, _ = tangent_frames(np.asarray(center, dtype=float))
    proj = t1c[None, :] - (x @ t1c)[:, None] * x
    nrm = np.linalg.norm(proj, axis=1, keepdims=True)
    proj = proj / nrm
    t1x, t2x = tangent_frames(x)
    ang = np.arctan2(np.einsum("ij,ij->i", proj, t2x), np.einsum("ij,ij->i", proj, t1x))
    return ang


def rotate_pq(p: np.ndarray, q: np.ndarray, angle: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotate 2-vectors (p, q) by the given angles."""
    c, s = np.cos(angle), np.sin(angle)
    return c * p - s * q, s * p + c * q


def refine_on_sphere(f, x0: np.ndarray, minimize: bool = True,
                     step: float = 0.1, min_step: float = 1e-13,
                     max_sweeps: int = 200) -> tuple[np.ndarray, float]:
    """Local coordinate descent of a scalar f over the unit sphere.

    Moves along the two tangent frame directions with step halving; a
    sweep that improves nothing halves the step.  Deterministic.
    """
    sign = 1.0 if minimize else -1.0
    x = np.asarray(x0, dtype=float)
    x = x / np.linalg.norm(x)
    best = sign * float(f(x))
    h = step
    for _ in range(max_sweeps):
        if h < min_step:
            break
        t1, t2 = tangent_frames(x)
        improved = False
        for d in (t1, -t1, t2, -t2):
            cand = x + h * d
            cand /= np.linalg.norm(cand)
            val = sign * float(f(cand))
            if val < best:
                best = val
                x = cand
                improved = True
        if not improved:
            h *= 0.5
    return x, sign * best
