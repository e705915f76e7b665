"""Symbol fields on the round 2-sphere built from polynomial data.

The sphere is covered by two conformal charts glued over the twice
punctured sphere by the coordinate inversion z -> 1/z.  A symbol field
is specified by a degree <= 2 polynomial v together with three further
degree <= 2 factors whose product s has degree <= 6; in the first chart
its complex representative is

    (u, w)(z) = (lam(|z|) v(z),  lam(|z|)^3 s(z)),   lam(r) = 2 / (1 + r^2).

The model family sigma_mn takes v = z^m and s = z^n.  Its multiplicity
circles |z| = r are the positive roots of (1 + r^2)^2 r^m = 4 r^n, which
depend only on n - m; the kernel line winds n - m half turns along each
transversal circle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import OutOfDomain, OutOfRange
from .multiplicity import (
    ChartSymbolField,
    extract_singular_set,
    regular_value_check,
    trace_component,
)
from .sym2 import SQRT2, ComplexRep, mod_pi, rotate_rep

M_RANGE = (0, 2)
N_RANGE = (0, 6)


def frame_scale(r):
    """Conformal factor lam(r) = 2 / (1 + r^2) of the chart metric."""
    r = np.asarray(r, dtype=float)
    out = 2.0 / (1.0 + r * r)
    return float(out) if out.ndim == 0 else out


def chart1_point(x: float, y: float) -> np.ndarray:
    """Chart 1 coordinates -> point on the unit sphere (misses (0,0,1))."""
    lam = 2.0 / (1.0 + x * x + y * y)
    return np.array([lam * x, lam * y, 1.0 - lam])


def chart2_point(x: float, y: float) -> np.ndarray:
    """Chart 2 coordinates -> point on the unit sphere (misses (0,0,-1))."""
    lam = 2.0 / (1.0 + x * x + y * y)
    return np.array([lam * x, -lam * y, lam - 1.0])


def chart1_coord(p: np.ndarray) -> complex:
    p = np.asarray(p, dtype=float)
    lam = 1.0 - p[2]
    if lam <= 1e-15:
        raise OutOfDomain("chart 1 does not cover (0, 0, 1)")
    return complex(p[0] / lam, p[1] / lam)


def chart2_coord(p: np.ndarray) -> complex:
    p = np.asarray(p, dtype=float)
    lam = 1.0 + p[2]
    if lam <= 1e-15:
        raise OutOfDomain("chart 2 does not cover (0, 0, -1)")
    return complex(p[0] / lam, -p[1] / lam)


@dataclass(frozen=True)
class SpherePoint:
    """Point of the sphere held as (chart, complex coordinate)."""

    chart: int
    coord: complex

    def __post_init__(self):
        if self.chart not in (1, 2):
            raise OutOfRange("chart must be 1 or 2")

    def transition(self) -> "SpherePoint":
        """Same point in the other chart; undefined at the chart origin
        (the origin of each chart is the pole the other chart misses)."""
        if self.coord == 0:
            raise OutOfDomain("chart origin is not covered by the other chart")
        return SpherePoint(chart=3 - self.chart, coord=1.0 / self.coord)

    def to_xyz(self) -> np.ndarray:
        x, y = self.coord.real, self.coord.imag
        return chart1_point(x, y) if self.chart == 1 else chart2_point(x, y)

    @classmethod
    def from_xyz(cls, p: np.ndarray) -> "SpherePoint":
        p = np.asarray(p, dtype=float)
        if p[2] <= 0.0:
            return cls(chart=1, coord=chart1_coord(p))
        return cls(chart=2, coord=chart2_coord(p))


def chart_transition_angle(z: complex) -> float:
    """Angle the chart 2 frame is turned against the chart 1 frame at z.

    The inversion has complex derivative -1/z^2, so frames rotate by
    pi - 2 arg(z) (equivalently pi + 2 arg(z) modulo 2 pi, which acts the
    same on representatives because e^{3 i pi} = e^{i pi}).
    """
    if z == 0:
        raise OutOfDomain("transition angle undefined at the chart origin")
    return math.pi - 2.0 * cmath.phase(z)


@dataclass(frozen=True)
class PolyVF(object):
    """Polynomial vector field a0 + a1 z + a2 z^2 in a chart."""

    a0: complex
    a1: complex
    a2: complex

    def evaluate(self, z):
        return (self.a2 * z + self.a1) * z + self.a0

    def transition(self) -> "PolyVF":
        """Pushforward under z -> 1/z, again polynomial of degree <= 2."""
        return PolyVF(-self.a2, -self.a1, -self.a0)

    @classmethod
    def monomial(cls, k: int) -> "PolyVF":
        if k not in (0, 1, 2):
            raise OutOfRange("monomial degree must be 0, 1 or 2")
        c = [0j, 0j, 0j]
        c[k] = 1.0 + 0j
        return cls(*c)


@dataclass(frozen=True)
class SphereSymbol:
    """Global symbol field from v (degree <= 2) and three cubic-factor
    fields whose product s has degree <= 6."""

    v: PolyVF
    factors: tuple[PolyVF, PolyVF, PolyVF]

    def charts(self) -> tuple["_ChartData", "_ChartData"]:
        c1 = _ChartData(self.v, self.factors)
        c2 = _ChartData(self.v.transition(), tuple(f.transition() for f in self.factors))
        return c1, c2

    def rep_grid(self, Z: np.ndarray, chart: int = 1) -> tuple[np.ndarray, np.ndarray]:
        """Representative (u, w) arrays at complex chart coordinates Z."""
        data = self.charts()[chart - 1]
        lam = 2.0 / (1.0 + (Z.real**2 + Z.imag**2))
        u = lam * data.v.evaluate(Z)
        s = np.ones_like(Z)
        for f in data.factors:
            s = s * f.evaluate(Z)
        return u, lam**3 * s

    def rep_at(self, p: SpherePoint) -> ComplexRep:
        Z = np.array([p.coord])
        u, w = self.rep_grid(Z, chart=p.chart)
        return ComplexRep(complex(u[0]), complex(w[0]))

    def chart_field(self, chart: int = 1, halfwidth: float = 2.0,
                    grid: int = 512) -> ChartSymbolField:
        """Coefficient matrix field of this symbol on a chart square."""

        def matrix_fn(X, Y):
            u, w = self.rep_grid(X + 1j * Y, chart=chart)
            pq = (u + w) / SQRT2
            rs = 1j * (u - w) / SQRT2
            return pq.real, rs.real, pq.imag, rs.imag

        return ChartSymbolField(
            x0=-halfwidth, x1=halfwidth, y0=-halfwidth, y1=halfwidth,
            nx=grid, ny=grid, matrix_fn=matrix_fn,
        )


@dataclass(frozen=True)
class _ChartData:
    v: PolyVF
    factors: tuple[PolyVF, PolyVF, PolyVF]


def _validate_mn(m: int, n: int) -> None:
    if not (isinstance(m, (int, np.integer)) and M_RANGE[0] <= m <= M_RANGE[1]):
        raise OutOfRange(f"m must be an integer in [{M_RANGE[0]}, {M_RANGE[1]}]")
    if not (isinstance(n, (int, np.integer)) and N_RANGE[0] <= n <= N_RANGE[1]):
        raise OutOfRange(f"n must be an integer in [{N_RANGE[0]}, {N_RANGE[1]}]")


def sigma_mn(m: int, n: int) -> SphereSymbol:
    """Model symbol with v = z^m and s = z^n.

    The cubic field splits the monomial z^n over three factors greedily:
    n = 5 becomes (2, 2, 1), n = 1 becomes (1, 0, 0), and so on.
    """
    _validate_mn(m, n)
    degs = []
    left = n
    for _ in range(3):
        d = min(2, left)
        degs.append(d)
        left -= d
    return SphereSymbol(v=PolyVF.monomial(m), factors=tuple(PolyVF.monomial(d) for d in degs))


def evaluate_symbol(sym: SphereSymbol, p: SpherePoint) -> ComplexRep:
    """Representative of sym at p in the frame of p's own chart."""
    return sym.rep_at(p)


def rep_consistency_gap(sym: SphereSymbol, p: SpherePoint) -> float:
    """Norm gap between the two chart evaluations after frame alignment.

    Zero (to rounding) for every well formed symbol; used to confirm
    chart independence numerically.
    """
    q = p.transition()
    rep_here = sym.rep_at(p)
    rep_there = sym.rep_at(q)
    z = p.coord if p.chart == 1 else q.coord
    delta = chart_transition_angle(z)
    if p.chart == 1:
        aligned = rotate_rep(rep_here, delta)
        other = rep_there
    else:
        aligned = rotate_rep(rep_there, delta)
        other = rep_here
    return math.hypot(abs(aligned.u - other.u), abs(aligned.w - other.w))


# ---------------------------------------------------------------------------
# multiplicity radii of the model family


def radial_profile(m: int, n: int, r):
    """h(r) = (lam r^m)^2 - (lam^3 r^n)^2, twice the determinant on |z| = r."""
    r = np.asarray(r, dtype=float)
    lam = 2.0 / (1.0 + r * r)
    out = (lam * r**m) ** 2 - (lam**3 * r**n) ** 2
    return float(out) if out.ndim == 0 else out


def _zset_poly(m: int, n: int, r: np.ndarray) -> np.ndarray:
    # positive roots of lam r^m = lam^3 r^n, cleared of denominators
    return (1.0 + r * r) ** 2 * r**m - 4.0 * r**n


class ZSet(NamedTuple):
    radii: tuple[float, ...]
    includes_zero: bool
    includes_infinity: bool


def z_set(m: int, n: int, tol: float = 1e-13) -> ZSet:
    """Multiplicity radii of sigma_mn in chart 1, plus the isolated
    singular points at the chart origin and at infinity.

    r = 1 always belongs to the set (it is a tangential double root when
    n - m = 2).  Further radii are found by a sign scan of the cleared
    polynomial over twelve decades and bisection; they exist exactly for
    n - m in {1, 3}.
    """
    _validate_mn(m, n)
    radii = [1.0]
    segments = (
        np.logspace(-6.0, math.log10(1.0 - 1e-4), 1600),
        np.logspace(math.log10(1.0 + 1e-4), 6.0, 1600),
    )
    for grid in segments:
        vals = _zset_poly(m, n, grid)
        radii.extend(float(r) for r in grid[vals == 0.0])
        sgn = np.sign(vals)
        flips = np.nonzero(sgn[:-1] * sgn[1:] < 0.0)[0]
        for k in flips:
            lo, hi = float(grid[k]), float(grid[k + 1])
            flo = float(vals[k])
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = _zset_poly(m, n, np.array([mid]))[0]
                if fm == 0.0 or (hi - lo) <= tol * mid:
                    lo = hi = mid
                    break
                if (fm > 0.0) == (flo > 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            radii.append(0.5 * (lo + hi))
    radii.sort()
    kept: list[float] = []
    for r in radii:
        if not kept or r - kept[-1] > 1e-9 * r:
            kept.append(r)
    return ZSet(
        radii=tuple(kept),
        includes_zero=(m > 0 and n > 0),
        includes_infinity=(m < 2 and n < 6),
    )


def alpha_root(tol: float = 1e-15) -> float:
    """Unique real root of r^3 + r^2 + 3 r - 1, the small radius of the
    n - m = 1 multiplicity set (its reciprocal shows up for n - m = 3)."""
    lo, hi = 0.0, 1.0

    def c(r: float) -> float:
        return ((r + 1.0) * r + 3.0) * r - 1.0

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            break
        if c(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TransversalityReport(NamedTuple):
    analytic_slope: float
    numeric_slope: float
    transversal: bool


def transversality_h(m: int, n: int, step: float = 1e-6) -> TransversalityReport:
    """Slope of the radial profile at r = 1; vanishes exactly when
    n - m = 2, the tangential family."""
    _validate_mn(m, n)
    analytic = 2.0 * (2.0 + m - n)
    numeric = (radial_profile(m, n, 1.0 + step) - radial_profile(m, n, 1.0 - step)) / (2.0 * step)
    return TransversalityReport(
        analytic_slope=analytic,
        numeric_slope=float(numeric),
        transversal=(n - m != 2),
    )


def predicted_kernel_angle(m: int, n: int, theta: float) -> float:
    """Kernel line angle on the multiplicity circle at base angle theta."""
    return mod_pi(0.5 * (n - m) * theta + math.pi / 2.0)


def analyze_mn(m: int, n: int, grid: int = 512, tol_contour: float | None = None,
               tol_root: float = 1e-13) -> dict:
    """Full chart 1 pipeline for sigma_mn.

    Extracts the multiplicity curves, certifies transversality, and
    (only when the family is transversal) traces kernel line windings.
    Returns a plain dict ready for serialization.
    """
    _validate_mn(m, n)
    zs = z_set(m, n, tol=tol_root)
    tv = transversality_h(m, n)
    halfwidth = max(2.0, 1.3 * max(zs.radii))
    sym = sigma_mn(m, n)
    fld = sym.chart_field(chart=1, halfwidth=halfwidth, grid=grid)
    if tol_contour is None:
        curves = extract_singular_set(fld)
    else:
        curves = extract_singular_set(fld, rel_tol=tol_contour)
    circles = []
    for c in curves:
        entry = {
            "r": float(np.hypot(c.polyline[:, 0], c.polyline[:, 1]).mean()),
            "winding": None,
            "knot": None,
            "connected": None,
        }
        cert = regular_value_check(fld, c)
        if c.closed and tv.transversal and cert.transversal:
            comp = trace_component(fld, c)
            entry["winding"] = comp.winding
            entry["knot"] = list(comp.knot)
            entry["connected"] = comp.connected
        circles.append(entry)
    return {
        "m": int(m),
        "n": int(n),
        "grid": int(grid),
        "halfwidth": halfwidth,
        "radii": list(zs.radii),
        "includes_zero": zs.includes_zero,
        "includes_infinity": zs.includes_infinity,
        "dh_dr_1": tv.analytic_slope,
        "dh_dr_1_numeric": tv.numeric_slope,
        "transversal": tv.transversal,
        "circles": circles,
    }
