"""Sweep the sigma_{m,n} family and tabulate what the analyzer finds.

For every admissible pair this prints the multiplicity radii, the
radial transversality slope, and the winding/knot data of each
extracted circle, so a change anywhere in the chain (chart fields,
contouring, kernel lifting) shows up as a diff of one table.

Usage:
    python3 scripts/survey_symbols.py [--grid 384] [--out survey.json]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from wavesym.serialize import canonical_json
from wavesym.sphere import analyze_mn


@dataclass(frozen=True)
class SurveyConfig:
    grid: int = 384
    out: Path | None = None


def parse_args() -> SurveyConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=384, help="chart grid resolution")
    ap.add_argument("--out", type=Path, default=None, help="write full reports as JSON")
    ns = ap.parse_args()
    return SurveyConfig(grid=ns.grid, out=ns.out)


def describe_circle(circle: dict) -> str:
    r = circle["r"]
    if circle["winding"] is None:
        return f"r={r:.4f} (no trace)"
    knot = "x".join(str(k) for k in circle["knot"])
    link = "conn" if circle["connected"] else "split"
    return f"r={r:.4f} w={circle['winding']:+d} ({knot}) {link}"


def main() -> None:
    cfg = parse_args()
    reports = {}
    print(f"{'m':>2} {'n':>2} {'radii':<22} {'dh/dr(1)':>9} {'tv':>3}  circles")
    for m in range(3):
        for n in range(7):
            rep = analyze_mn(m, n, grid=cfg.grid)
            reports[f"{m},{n}"] = rep
            radii = ", ".join(f"{r:.6f}" for r in rep["radii"])
            tv = "yes" if rep["transversal"] else "NO"
            circles = "; ".join(describe_circle(c) for c in rep["circles"]) or "-"
            print(f"{m:>2} {n:>2} {radii:<22} {rep['dh_dr_1']:>9.3f} {tv:>3}  {circles}")
    if cfg.out is not None:
        cfg.out.write_text(canonical_json(reports))
        print(f"\nwrote {cfg.out}")


if __name__ == "__main__":
    main()
