"""Eigenline manifolds of symmetric symbol fields over the sphere.

Away from its multiplicity points a symbol field splits into two
eigenvalue branches with eigenline fields.  The eigenline manifold
resolves the conical multiplicity points: remove a small disk around
each point from both branch sheets and glue the resulting boundary
circles through the projectivized eigenspace of the point.  Each conical
point contributes one cylinder whose core circle is parametrized by the
doubled eigenline angle, so the glued surface is closed with

    chi = 2 (2 - k),    genus = k - 1

for k multiplicity points.  Eigenvalue data rides along as per vertex
scalar fields; critical points are counted combinatorially by star sign
changes, which reproduces chi exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GluingMismatch, InputError, NotConnected, ZeroOnVertex
from .spheremesh import (
    SurfaceMesh,
    _edge_counts,
    boundary_loops,
    connected_components,
    euler_characteristic,
    genus,
    icosphere,
    is_consistently_oriented,
    refine_on_sphere,
    rotate_pq,
    tangent_frames,
)

SHEET1_RADIUS = 0.95
SHEET2_RADIUS = 1.05
LIFT_TOTAL_TOL = 0.15


@dataclass
class CylinderRecord:
    point: np.ndarray
    loop_sheet1: np.ndarray
    loop_sheet2: np.ndarray
    core: np.ndarray
    angles: np.ndarray          # lifted eigenline angles along the gluing loop
    lift_total: float


@dataclass
class EigenlineManifold:
    """Closed surface carrying the two eigenvalue branches of a section.

    Per vertex the three scalar fields satisfy lambda_s = s_r + lambda_s0:
    s_r is the smooth half trace of the section, lambda_s0 the signed
    traceless eigenvalue (negative on sheet 1, positive on sheet 2, zero
    exactly on the cylinder cores), and lambda_s the eigenvalue branch.
    """

    mesh: SurfaceMesh
    base_dirs: np.ndarray
    region: np.ndarray          # 0 sheet1, 1 sheet2, 2 + i core of cylinder i
    lambda_s: np.ndarray
    lambda_s0: np.ndarray
    s_r: np.ndarray
    cylinders: list[CylinderRecord]
    face_groups: list[tuple[str, int, int]]
    tube_radius: float
    collar: float
    subdivisions: int

    @property
    def chi(self) -> int:
        return euler_characteristic(self.mesh)

    @property
    def genus(self) -> int:
        return genus(self.mesh)


def lambda_field(man: EigenlineManifold) -> np.ndarray:
    return man.lambda_s


def lambda0_field(man: EigenlineManifold) -> np.ndarray:
    return man.lambda_s0


def _angular_dist(points: np.ndarray, p: np.ndarray) -> np.ndarray:
    return np.arccos(np.clip(points @ p, -1.0, 1.0))


def _eigenline_angles_about(section_fn, pts: np.ndarray, center: np.ndarray) -> np.ndarray:
    """Top eigenline angles at pts, re-expressed in the frame transported
    from center, so the values are comparable along a loop."""
    _, p, q = section_fn(pts)
    t1c, _ = tangent_frames(center)
    proj = t1c[None, :] - (pts @ t1c)[:, None] * pts
    nrm = np.linalg.norm(proj, axis=1)
    if float(nrm.min()) <= 1e-12:
        raise GluingMismatch("boundary loop reaches the transport antipode")
    proj /= nrm[:, None]
    t1x, t2x = tangent_frames(pts)
    delta = np.arctan2(np.einsum("ij,ij->i", proj, t2x), np.einsum("ij,ij->i", proj, t1x))
    pr, qr = rotate_pq(p, q, -2.0 * delta)
    if float(np.hypot(pr, qr).min()) <= 1e-14:
        raise ZeroOnVertex("section vanishes on a gluing loop")
    return 0.5 * np.arctan2(qr, pr)


def _lift_cyclic_line_angles(raw: np.ndarray) -> tuple[np.ndarray, float]:
    """Lift line angles (mod pi) around a cycle; returns (lift, total)."""
    d = np.mod(np.diff(raw) + math.pi / 2.0, math.pi) - math.pi / 2.0
    if d.size and float(np.abs(d).max()) >= math.pi / 2.0 * (1.0 - 1e-9):
        raise GluingMismatch("eigenline angle jump on a gluing loop")
    lift = raw[0] + np.concatenate([[0.0], np.cumsum(d)])
    closing = float(np.mod(raw[0] - raw[-1] + math.pi / 2.0, math.pi) - math.pi / 2.0)
    return lift, float(lift[-1] + closing - lift[0])


def build_eigenline_manifold(section_fn, multiplicity_points: np.ndarray,
                             tube_radius: float = 0.1, collar: float = 0.5,
                             subdivisions: int = 4) -> EigenlineManifold:
    """Glue the two eigenvalue sheets of a section through its conical points.

    section_fn maps (N, 3) unit directions to component arrays (t, p, q)
    in the deterministic tangent frames.  multiplicity_points is a
    (k, 3) array of directions where the section vanishes; a disk of
    angular radius tube_radius (but never less than one vertex) is
    removed around each and replaced by a cylinder through the
    projectivized eigenspace.  k = 0 yields the disjoint sheet pair.
    """
    if not (0.0 < collar < 1.0):
        raise InputError("collar must sit strictly between 0 and 1")
    if tube_radius <= 0.0 or tube_radius > 0.5:
        raise InputError("tube_radius must lie in (0, 0.5]")
    pts = np.asarray(multiplicity_points, dtype=float).reshape(-1, 3)
    k = pts.shape[0]
    if k:
        nrm = np.linalg.norm(pts, axis=1)
        if np.any(nrm <= 0.0):
            raise InputError("multiplicity points must be nonzero directions")
        pts = pts / nrm[:, None]
        for i in range(k):
            for j in range(i + 1, k):
                sep = math.acos(float(np.clip(pts[i] @ pts[j], -1.0, 1.0)))
                if sep <= 3.0 * tube_radius:
                    raise InputError("multiplicity points closer than 3 tube radii")

    base = icosphere(subdivisions)
    V = base.vertices
    removed = np.zeros(base.n_vertices, dtype=bool)
    for i in range(k):
        d = _angular_dist(V, pts[i])
        inside = d < tube_radius
        if not inside.any():
            inside[np.argmin(d)] = True
        removed |= inside

    faces = base.faces
    while True:
        keep_face = ~removed[faces].any(axis=1)
        kept = faces[keep_face]
        # vertices whose link is pinched would give non simple boundaries
        counts = _edge_counts(kept)
        bdry_deg = np.zeros(base.n_vertices, dtype=int)
        for (a, b), c in counts.items():
            if c == 1:
                bdry_deg[a] += 1
                bdry_deg[b] += 1
        bad = bdry_deg > 2
        if not bad.any():
            break
        removed |= bad

    used = np.zeros(base.n_vertices, dtype=bool)
    used[kept.reshape(-1)] = True
    if k and not used.any():
        raise InputError("tube disks swallow the whole sphere")

    loops_base = boundary_loops(kept)
    if len(loops_base) != k:
        raise GluingMismatch(
            f"disk removal produced {len(loops_base)} boundary loops for {k} points")
    loop_of_point: list[list[int]] = []
    assigned = set()
    for i in range(k):
        best, best_d = None, math.inf
        for li, loop in enumerate(loops_base):
            if li in assigned:
                continue
            d = float(_angular_dist(V[loop], pts[i]).mean())
            if d < best_d:
                best, best_d = li, d
        assigned.add(best)
        loop_of_point.append(loops_base[best])

    # index maps for the two sheet copies of the kept vertices
    old_ids = np.nonzero(used)[0]
    new_of_old = -np.ones(base.n_vertices, dtype=int)
    new_of_old[old_ids] = np.arange(old_ids.size)
    n_kept = old_ids.size

    tK, pK, qK = section_fn(V[old_ids])
    sK = np.hypot(pK, qK)

    verts: list[np.ndarray] = [SHEET1_RADIUS * V[old_ids], SHEET2_RADIUS * V[old_ids]]
    dirs: list[np.ndarray] = [V[old_ids], V[old_ids]]
    lam: list[np.ndarray] = [0.5 * tK - sK, 0.5 * tK + sK]
    lam0: list[np.ndarray] = [-sK, sK]
    srs: list[np.ndarray] = [0.5 * tK, 0.5 * tK]
    region: list[np.ndarray] = [np.zeros(n_kept, dtype=int), np.ones(n_kept, dtype=int)]

    kept_new = new_of_old[kept]
    sheet1_faces = kept_new[:, ::-1]
    sheet2_faces = kept_new + n_kept
    face_list: list[np.ndarray] = [sheet1_faces, sheet2_faces]
    face_groups = [("sheet1", 0, len(sheet1_faces)),
                   ("sheet2", len(sheet1_faces), len(sheet1_faces) + len(sheet2_faces))]

    cylinders: list[CylinderRecord] = []
    next_vert = 2 * n_kept
    face_cursor = face_groups[-1][2]
    for i in range(k):
        loop = np.array(loop_of_point[i], dtype=int)
        L = loop.size
        if L < 3:
            raise GluingMismatch("gluing loop has fewer than 3 vertices")
        p = pts[i]
        loop_pts = V[loop]
        raw = _eigenline_angles_about(section_fn, loop_pts, p)
        lift, total = _lift_cyclic_line_angles(raw)
        if abs(abs(total) - math.pi) > LIFT_TOTAL_TOL * math.pi:
            raise GluingMismatch(
                f"eigenline angle advances {total:.6f} around point {i}; expected +-pi")

        t1, t2 = tangent_frames(p)
        psi = 2.0 * lift
        rc = tube_radius * collar
        core_pts = (
            math.cos(rc) * p[None, :]
            + math.sin(rc) * (np.cos(psi)[:, None] * t1[None, :] + np.sin(psi)[:, None] * t2[None, :])
        )
        tP, _, _ = section_fn(p[None, :])
        core_ids = np.arange(next_vert, next_vert + L)
        next_vert += L

        verts.append(core_pts)
        dirs.append(np.repeat(p[None, :], L, axis=0))
        lam.append(np.full(L, 0.5 * float(tP[0])))
        lam0.append(np.zeros(L))
        srs.append(np.full(L, 0.5 * float(tP[0])))
        region.append(np.full(L, 2 + i, dtype=int))

        a = new_of_old[loop]
        b = new_of_old[loop] + n_kept
        c = core_ids
        jn = np.roll(np.arange(L), -1)
        tri = []
        # ring A (sheet1) to core: traverse a opposite to sheet1's boundary
        tri.append(np.column_stack([a[jn], a, c]))
        tri.append(np.column_stack([a[jn], c, c[jn]]))
        # core to ring B (sheet2): traverse b along the returned loop order
        tri.append(np.column_stack([b, b[jn], c[jn]]))
        tri.append(np.column_stack([b, c[jn], c]))
        cyl_faces = np.vstack(tri)
        face_list.append(cyl_faces)
        face_groups.append((f"cyl_{i}", face_cursor, face_cursor + len(cyl_faces)))
        face_cursor += len(cyl_faces)

        cylinders.append(CylinderRecord(
            point=p.copy(), loop_sheet1=a.copy(), loop_sheet2=b.copy(),
            core=core_ids, angles=lift, lift_total=total,
        ))

    mesh = SurfaceMesh(
        vertices=np.vstack(verts),
        faces=np.vstack(face_list),
        vertex_tags=np.concatenate(region),
    )
    if k and not is_consistently_oriented(mesh):
        raise GluingMismatch("glued surface is not consistently oriented")
    return EigenlineManifold(
        mesh=mesh,
        base_dirs=np.vstack(dirs),
        region=np.concatenate(region),
        lambda_s=np.concatenate(lam),
        lambda_s0=np.concatenate(lam0),
        s_r=np.concatenate(srs),
        cylinders=cylinders,
        face_groups=face_groups,
        tube_radius=tube_radius,
        collar=collar,
        subdivisions=subdivisions,
    )


# ---------------------------------------------------------------------------
# combinatorial critical point counts


def _vertex_stars(mesh: SurfaceMesh) -> list[list[int]]:
    """Cyclically ordered neighbor lists; requires a closed oriented mesh."""
    nxt: list[dict[int, int]] = [dict() for _ in range(mesh.n_vertices)]
    for f in mesh.faces:
        v0, v1, v2 = int(f[0]), int(f[1]), int(f[2])
        nxt[v0][v1] = v2
        nxt[v1][v2] = v0
        nxt[v2][v0] = v1
    stars: list[list[int]] = []
    for v, ring in enumerate(nxt):
        if not ring:
            stars.append([])
            continue
        start = min(ring)
        cyc = [start]
        cur = ring[start]
        while cur != start:
            cyc.append(cur)
            cur = ring[cur]
            if len(cyc) > len(ring):
                raise GluingMismatch(f"vertex {v} has a non cyclic star")
        stars.append(cyc)
    return stars


def _tie_break_jitter(n: int, scale: float) -> np.ndarray:
    idx = np.arange(1, n + 1, dtype=float)
    u = np.modf(np.sin(idx * 12.9898) * 43758.5453123)[0]
    return (2.0 * u - 1.0) * 1e-12 * scale


def ds_r_norm(section_fn, p: np.ndarray, fd_step: float = 1e-5) -> float:
    """Finite difference norm of the sphere gradient of the half trace s_r."""
    p = np.asarray(p, dtype=float)
    p = p / np.linalg.norm(p)
    t1, t2 = tangent_frames(p)

    def half_trace(x: np.ndarray) -> float:
        t, _, _ = section_fn(x[None, :])
        return 0.5 * float(t[0])

    grads = []
    for tv in (t1, t2):
        xp = p + fd_step * tv
        xm = p - fd_step * tv
        xp = xp / np.linalg.norm(xp)
        xm = xm / np.linalg.norm(xm)
        grads.append((half_trace(xp) - half_trace(xm)) / (2.0 * fd_step))
    return math.hypot(grads[0], grads[1])


def critical_scan(man: EigenlineManifold, section_fn=None, fd_step: float = 1e-5) -> dict:
    """Star based critical point census of the eigenvalue field.

    Each vertex contributes 1 - sc/2 to the Euler characteristic, where
    sc counts sign changes of the field around its neighbor cycle; ties
    are broken by a tiny deterministic jitter.  Critical points are
    listed for sheet vertices only (cylinder cores are level circles of
    the field, not honest criticals).  When section_fn is given the
    global sheet extrema are re-refined continuously, and each conical
    point reports its raw |d s_r| value; the derivative condition along
    a multiplicity curve is vacuous for isolated points, so no
    classification is attempted.
    """
    values = man.lambda_s
    scale = max(float(np.abs(values).max()), 1.0)
    g = values + _tie_break_jitter(values.size, scale)
    stars = _vertex_stars(man.mesh)
    n_min = n_max = 0
    saddle_mult = 0
    chi_sum = 0.0
    points = []
    for v, cyc in enumerate(stars):
        if not cyc:
            raise GluingMismatch("isolated vertex in glued surface")
        diffs = np.array([g[u] - g[v] for u in cyc])
        signs = diffs > 0.0
        sc = int(np.count_nonzero(signs != np.roll(signs, -1)))
        chi_sum += 1.0 - sc / 2.0
        kind = None
        if sc == 0:
            if bool(signs.all()):
                n_min += 1
                kind = "min"
            else:
                n_max += 1
                kind = "max"
        elif sc >= 4:
            saddle_mult += sc // 2 - 1
            kind = "saddle"
        if kind is not None and man.region[v] < 2:
            points.append({
                "where": [float(c) for c in man.base_dirs[v]],
                "lambda": float(man.lambda_s[v]),
                "kind": kind,
            })
    chi_combinatorial = int(round(chi_sum))
    report = {
        "minima": n_min,
        "maxima": n_max,
        "saddle_multiplicity": saddle_mult,
        "chi_from_criticals": chi_combinatorial,
        "chi": man.chi,
        "consistent": chi_combinatorial == man.chi,
        "points": points,
    }
    if section_fn is None:
        return report

    def lam_sheet(sign: float):
        def f(x: np.ndarray) -> float:
            t, p, q = section_fn(x[None, :])
            return float(0.5 * t[0] + sign * math.hypot(float(p[0]), float(q[0])))
        return f

    extrema = {}
    for name, sign, sheet_code in (("sheet1", -1.0, 0), ("sheet2", 1.0, 1)):
        mask = man.region == sheet_code
        vals = man.lambda_s[mask]
        dirs = man.base_dirs[mask]
        f = lam_sheet(sign)
        x_min, v_min = refine_on_sphere(f, dirs[int(np.argmin(vals))], minimize=True)
        x_max, v_max = refine_on_sphere(f, dirs[int(np.argmax(vals))], minimize=False)
        extrema[name] = {
            "min": v_min, "min_direction": [float(c) for c in x_min],
            "max": v_max, "max_direction": [float(c) for c in x_max],
        }
    report["sheet_extrema"] = extrema

    conds = []
    for cyl in man.cylinders:
        conds.append({
            "point": [float(c) for c in cyl.point],
            "ds_r_norm": ds_r_norm(section_fn, cyl.point, fd_step=fd_step),
            "status": "vacuous (isolated multiplicity point); classification deferred",
            "lift_total": cyl.lift_total,
        })
    report["necessary_condition"] = conds
    return report


def eigenline_report(man: EigenlineManifold, section_fn=None) -> dict:
    """Topology and critical data of the manifold as a serializable dict."""
    crit = critical_scan(man, section_fn=section_fn)

    report = {
        "chi": man.chi,
        "cylinders": len(man.cylinders),
        "vertices": man.mesh.n_vertices,
        "faces": man.mesh.n_faces,
        "tube_radius": man.tube_radius,
        "collar": man.collar,
        "subdivisions": man.subdivisions,
        "criticals": crit["points"],
        "census": {
            k: crit[k]
            for k in ("minima", "maxima", "saddle_multiplicity",
                      "chi_from_criticals", "consistent")
        },
    }
    if "necessary_condition" in crit:
        report["necessary_condition"] = crit["necessary_condition"]
    if "sheet_extrema" in crit:
        report["sheet_extrema"] = crit["sheet_extrema"]
    try:
        report["genus"] = man.genus
    except NotConnected:
        report["genus"] = None
        report["components"] = connected_components(man.mesh)
    return report
