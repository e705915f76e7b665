"""Command line front end with bit-reproducible output.

Every artifact (JSON report, CSV polyline, OBJ mesh) is assembled from
deterministic module results and printed through the fixed-width float
formatter, so rerunning a command with the same configuration yields
byte-identical files.  Exit codes: 0 success, 2 validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .eigenline import build_eigenline_manifold, eigenline_report
from .errors import InputError, WavesymError
from .fresnel import Crystal, compressed_grid, fresnel_mesh, fresnel_report, singular_directions
from .multiplicity import (
    extract_singular_set,
    knot_polyline,
    knot_type,
    polylines_csv,
    regular_value_check,
    trace_component,
)
from .serialize import canonical_json, fmt_float, obj_face_groups, obj_objects
from .sphere import M_RANGE, N_RANGE, analyze_mn, sigma_mn, z_set

# config-file keys and their parsers; flag values override these
_FIELD_PARSERS = {
    "m": int,
    "n": int,
    "epsilon": lambda s: tuple(float(t) for t in s.split(",")),
    "grid": int,
    "subdiv": int,
    "samples": int,
    "winding": int,
    "tube_radius": float,
    "collar": float,
    "tol_contour": float,
    "tol_root": float,
    "out": str,
    "out_csv": str,
    "out_obj": str,
}


@dataclass
class RunConfig:
    """Resolved parameters of one CLI invocation."""

    subcommand: str
    m: int = 0
    n: int = 1
    epsilon: tuple[float, float, float] = (2.0, 2.5, 3.0)
    grid: int = 512
    subdiv: int = 4
    samples: int = 256
    winding: int = 3
    tube_radius: float = 0.1
    collar: float = 0.5
    tol_contour: float = 1e-10
    tol_root: float = 1e-13
    out: str | None = None
    out_csv: str | None = None
    out_obj: str | None = None

    def validate(self) -> None:
        if not (M_RANGE[0] <= self.m <= M_RANGE[1]):
            raise InputError(f"m must lie in [{M_RANGE[0]}, {M_RANGE[1]}], got {self.m}")
        if not (N_RANGE[0] <= self.n <= N_RANGE[1]):
            raise InputError(f"n must lie in [{N_RANGE[0]}, {N_RANGE[1]}], got {self.n}")
        if len(self.epsilon) != 3 or any(e <= 0.0 for e in self.epsilon):
            raise InputError("epsilon must be three positive comma-separated numbers")
        for name in ("tol_contour", "tol_root", "tube_radius", "collar"):
            if getattr(self, name) <= 0.0:
                raise InputError(f"{name.replace('_', '-')} must be strictly positive")
        if self.grid < 16:
            raise InputError("grid must be at least 16")
        if self.subdiv < 2:
            raise InputError("subdiv must be at least 2")
        if self.samples < 8:
            raise InputError("samples must be at least 8")


def read_config_file(path: str) -> dict:
    """Flat key=value text; # starts a comment, blank lines ignored."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _FIELD_PARSERS:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _FIELD_PARSERS[key](val.strip())
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def _resolve(args: argparse.Namespace) -> RunConfig:
    config_values = read_config_file(args.config) if getattr(args, "config", None) else {}
    cfg = RunConfig(subcommand=args.subcommand)
    for name in _FIELD_PARSERS:
        flag = getattr(args, name, None)
        if flag is not None:
            value = _FIELD_PARSERS[name](flag) if isinstance(flag, str) and name == "epsilon" else flag
            setattr(cfg, name, value)
        elif name in config_values:
            setattr(cfg, name, config_values[name])
    cfg.validate()
    return cfg


def _write_or_print(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_zset(cfg: RunConfig) -> None:
    zs = z_set(cfg.m, cfg.n, tol=cfg.tol_root)
    report = {
        "m": cfg.m,
        "n": cfg.n,
        "radii": list(zs.radii),
        "includes_zero": zs.includes_zero,
        "includes_infinity": zs.includes_infinity,
    }
    _write_or_print(canonical_json(report), cfg.out)


def _cmd_sphere(cfg: RunConfig) -> None:
    report = analyze_mn(cfg.m, cfg.n, grid=cfg.grid,
                        tol_contour=cfg.tol_contour, tol_root=cfg.tol_root)
    _write_or_print(canonical_json(report), cfg.out)


def _cmd_winding(cfg: RunConfig) -> None:
    zs = z_set(cfg.m, cfg.n, tol=cfg.tol_root)
    halfwidth = max(2.0, 1.3 * max(zs.radii))
    fld = sigma_mn(cfg.m, cfg.n).chart_field(chart=1, halfwidth=halfwidth, grid=cfg.grid)
    curves = extract_singular_set(fld, rel_tol=cfg.tol_contour)
    entries = []
    components = []
    for c in curves:
        cert = regular_value_check(fld, c)
        entry = {
            "length": c.length,
            "min_grad": cert.min_gradient,
            "transversal": cert.transversal,
            "winding": None,
            "knot": None,
            "connected": None,
        }
        if c.closed and cert.transversal:
            comp = trace_component(fld, c)
            components.append(comp)
            entry["winding"] = comp.winding
            entry["knot"] = list(comp.knot)
            entry["connected"] = comp.connected
        entries.append(entry)
    _write_or_print(canonical_json({"curves": entries}), cfg.out)
    if cfg.out_csv is not None:
        Path(cfg.out_csv).write_text(polylines_csv(components))


def _cmd_fresnel(cfg: RunConfig) -> None:
    crystal = Crystal(eps=cfg.epsilon)
    report = fresnel_report(crystal, subdivisions=cfg.subdiv)
    _write_or_print(canonical_json(report), cfg.out)
    if cfg.out_obj is not None:
        inner, outer = fresnel_mesh(crystal, subdivisions=cfg.subdiv)
        Path(cfg.out_obj).write_text(
            obj_objects([("fresnel_inner", inner), ("fresnel_outer", outer)]))


def _cmd_eigenline(cfg: RunConfig) -> None:
    crystal = Crystal(eps=cfg.epsilon)
    section = lambda pts: compressed_grid(crystal, pts)
    axes = singular_directions(crystal)
    points = np.array([a.x for a in axes])
    man = build_eigenline_manifold(section, points, tube_radius=cfg.tube_radius,
                                   collar=cfg.collar, subdivisions=cfg.subdiv)
    report = eigenline_report(man, section_fn=section)
    _write_or_print(canonical_json(report), cfg.out)
    if cfg.out_obj is not None:
        groups = [(name, np.arange(lo, hi)) for name, lo, hi in man.face_groups]
        Path(cfg.out_obj).write_text(obj_face_groups(man.mesh, groups))


def _cmd_knots(cfg: RunConfig) -> None:
    kt = knot_type(cfg.winding)
    report = {
        "winding": cfg.winding,
        "knot": list(kt.pair),
        "connected": kt.connected,
    }
    _write_or_print(canonical_json(report), cfg.out)
    if cfg.out_csv is not None:
        lines = ["component_id,base_angle,fiber_angle"]
        for cid, comp in enumerate(knot_polyline(cfg.winding, samples=cfg.samples)):
            for base, fiber in comp:
                lines.append(f"{cid},{fmt_float(base)},{fmt_float(fiber)}")
        Path(cfg.out_csv).write_text("\n".join(lines) + "\n")


_DISPATCH = {
    "zset": _cmd_zset,
    "sphere": _cmd_sphere,
    "winding": _cmd_winding,
    "fresnel": _cmd_fresnel,
    "eigenline": _cmd_eigenline,
    "knots": _cmd_knots,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file; flags take precedence")
    p.add_argument("--out", help="write the JSON report here instead of stdout")


def _add_mn(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, help="exponent of the linear factor v = z^m")
    p.add_argument("--n", type=int, help="exponent of the cubic factor s = z^n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavesym",
        description="hyperbolic symbol analysis: multiplicity circles, "
                    "Fresnel surfaces, eigenline manifolds")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("zset", help="singular radii of the sigma_mn family")
    _add_mn(p)
    p.add_argument("--tol-root", dest="tol_root", type=float)
    _add_common(p)

    p = sub.add_parser("sphere", help="full multiplicity report for sigma_mn")
    _add_mn(p)
    p.add_argument("--grid", type=int)
    p.add_argument("--tol-contour", dest="tol_contour", type=float)
    p.add_argument("--tol-root", dest="tol_root", type=float)
    _add_common(p)

    p = sub.add_parser("winding", help="kernel-line winding along extracted contours")
    _add_mn(p)
    p.add_argument("--grid", type=int)
    p.add_argument("--tol-contour", dest="tol_contour", type=float)
    p.add_argument("--tol-root", dest="tol_root", type=float)
    p.add_argument("--out-csv", dest="out_csv", help="polyline CSV destination")
    _add_common(p)

    p = sub.add_parser("fresnel", help="Fresnel surface and optic axes of a crystal")
    p.add_argument("--epsilon", help="three principal permittivities a,b,c")
    p.add_argument("--subdiv", type=int)
    p.add_argument("--out-obj", dest="out_obj", help="two-object OBJ destination")
    _add_common(p)

    p = sub.add_parser("eigenline", help="glued eigenline manifold of a crystal")
    p.add_argument("--epsilon", help="three principal permittivities a,b,c")
    p.add_argument("--subdiv", type=int)
    p.add_argument("--tube-radius", dest="tube_radius", type=float)
    p.add_argument("--collar", type=float)
    p.add_argument("--out-obj", dest="out_obj", help="grouped OBJ destination")
    _add_common(p)

    p = sub.add_parser("knots", help="(2, m) torus knot data for a winding number")
    p.add_argument("--winding", type=int, help="half-turn count m of the kernel line")
    p.add_argument("--samples", type=int)
    p.add_argument("--out-csv", dest="out_csv", help="torus-coordinate CSV destination")
    _add_common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _resolve(args)
        _DISPATCH[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WavesymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
