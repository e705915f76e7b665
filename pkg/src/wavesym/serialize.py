"""Deterministic text serialization for reports and geometry.

Floats are printed with 17 significant digits everywhere, including
inside JSON, so that repeated runs of one configuration produce byte
identical artifacts.  json.dumps has no hook for float formatting, so
the JSON emitter here is hand rolled: keys sorted, no whitespace
games, trailing newline, non-finite values rejected.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InputError
from .spheremesh import SurfaceMesh


def fmt_float(x: float) -> str:
    """17 significant digit decimal form; -0.0 collapses to 0."""
    v = float(x)
    if math.isnan(v) or math.isinf(v):
        raise InputError("non-finite value in serialized output")
    if v == 0.0:
        # normalize -0.0 so sign noise cannot break golden files
        v = 0.0
    text = format(v, ".17g")
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif isinstance(value, (bool, np.bool_)):
        out.append("true" if value else "false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(fmt_float(value))
    elif isinstance(value, dict):
        out.append("{")
        first = True
        for key in sorted(value):
            if not isinstance(key, str):
                raise InputError("JSON object keys must be strings")
            if not first:
                out.append(", ")
            out.append(json.dumps(key))
            out.append(": ")
            _emit(value[key], out)
            first = False
        out.append("}")
    elif isinstance(value, (list, tuple, np.ndarray)):
        if isinstance(value, np.ndarray):
            value = value.tolist()
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(", ")
            _emit(item, out)
        out.append("]")
    else:
        raise InputError(f"cannot serialize value of type {type(value).__name__}")


def canonical_json(value) -> str:
    """Sorted-key JSON text with .17g floats and a trailing newline."""
    out: list[str] = []
    _emit(value, out)
    out.append("\n")
    return "".join(out)


def _vertex_lines(vertices: np.ndarray, out: list[str]) -> None:
    for v in np.asarray(vertices, dtype=float):
        out.append(f"v {fmt_float(v[0])} {fmt_float(v[1])} {fmt_float(v[2])}")


def _face_lines(faces: np.ndarray, offset: int, out: list[str]) -> None:
    for f in np.asarray(faces, dtype=int):
        out.append(f"f {f[0] + 1 + offset} {f[1] + 1 + offset} {f[2] + 1 + offset}")


def obj_objects(parts: list[tuple[str, SurfaceMesh]]) -> str:
    """OBJ text with one named object per mesh, indices 1-based global."""
    out: list[str] = []
    offset = 0
    for name, mesh in parts:
        out.append(f"o {name}")
        _vertex_lines(mesh.vertices, out)
        _face_lines(mesh.faces, offset, out)
        offset += mesh.n_vertices
    return "\n".join(out) + "\n"


def obj_face_groups(mesh: SurfaceMesh, groups: list[tuple[str, np.ndarray]]) -> str:
    """OBJ text for one vertex pool whose faces are split into named groups."""
    out: list[str] = []
    _vertex_lines(mesh.vertices, out)
    for name, face_idx in groups:
        out.append(f"g {name}")
        _face_lines(mesh.faces[np.asarray(face_idx, dtype=int)], 0, out)
    return "\n".join(out) + "\n"
