"""Blaschke-Santalo diagram boundaries, membership tests, and rendering.

The three solved diagrams (P, h, r), (R, h, r) and (d, h, r) have complete
lower/upper curves; the partially solved width diagrams expose only their
proven pieces and answer "unknown" in between.  All curves are produced at
unit normalization of the third functional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .cheeger import smallest_crossing
from .errors import CheegerAtlasError, DomainError

PI = math.pi
SQRT3 = math.sqrt(3.0)

# diagram id -> (x functional, y functional, normalizing functional, x-range)
# an x-range upper bound of None means unbounded to the right
DIAGRAM_IDS = {
    "D1_PHR": ("P", "h", "r", (2 * PI, None)),
    "D2_RHR": ("R", "h", "r", (1.0, None)),
    "D3_DHR": ("d", "h", "r", (2.0, None)),
    "HWD": ("w", "h", "d", (0.0, 1.0)),
    "HWR_CIRC": ("w", "h", "R", (0.0, 2.0)),
    "HWP": ("w", "h", "P", (0.0, 1.0 / PI)),
    "HWA": ("w", "h", "A", (0.0, 3.0 ** 0.25)),
    "HRD": ("R", "h", "d", (0.5, 1.0 / SQRT3)),
    "HWR_IN": ("w", "h", "r", (2.0, 3.0)),
}

SOLVED = ("D1_PHR", "D2_RHR", "D3_DHR")

# cap for log-spaced grids on unbounded ranges, relative to the left endpoint
UNBOUNDED_SPAN = 100.0
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class DiagramSpec:
    """A named diagram with a concrete x-grid."""

    id: str
    x_range: tuple[float, float] | None = None
    grid: int = 512

    def __post_init__(self):
        if self.id not in DIAGRAM_IDS:
            raise DomainError(f"unknown diagram id {self.id!r}")
        lo, hi = DIAGRAM_IDS[self.id][3]
        if self.x_range is not None:
            a, b = self.x_range
            if not (lo <= a < b and (hi is None or b <= hi * (1 + 1e-12))):
                raise DomainError(f"x-range {self.x_range} outside admissible [{lo}, {hi}]")
        if self.grid < 2:
            raise DomainError("grid must have at least 2 points")

    def xs(self) -> np.ndarray:
        lo, hi = DIAGRAM_IDS[self.id][3]
        if self.x_range is not None:
            a, b = self.x_range
            return np.linspace(a, b, self.grid)
        if hi is None:
            # log spacing keeps detail near the ball point
            return np.exp(np.linspace(np.log(lo), np.log(lo * UNBOUNDED_SPAN), self.grid))
        lo_eff = lo if lo > 0 else hi * 1e-3
        return np.linspace(lo_eff, hi, self.grid)


@dataclass(frozen=True)
class DiagramPoint:
    x: float
    y: float
    provenance: str = ""


def _lower_y(diagram_id: str, x: float) -> float | None:
    """Proven lower boundary/bound value at abscissa x (None where none)."""
    if diagram_id == "D1_PHR":
        return 1.0 + PI / (x - PI)
    if diagram_id == "D2_RHR":
        return 1.0 / smallest_crossing(bounds.implicit_g("g2", R=x, r=1.0))
    if diagram_id == "D3_DHR":
        return 1.0 / smallest_crossing(bounds.implicit_g("g1", d=x, r=1.0))
    if diagram_id == "HWD":
        return 1.0 / smallest_crossing(bounds.implicit_g("g3", d=1.0, w=x))
    if diagram_id == "HWR_CIRC":
        return 1.0 / smallest_crossing(bounds.implicit_g("g4", w=x, R=1.0))
    if diagram_id == "HWP":
        return 2.0 / x + 2 * PI / (2.0 - PI * x)
    if diagram_id == "HWA":
        return 2.0 / x + PI * x / 2.0
    if diagram_id == "HRD":
        return None
    if diagram_id == "HWR_IN":
        inner = PI * max(1 - 2 / x, 0.0) * math.sqrt(max(4 / x - 1, 0.0))
        return 1.0 + math.sqrt(inner)
    return None


def _upper_y(diagram_id: str, x: float) -> float | None:
    """Proven upper boundary/bound value at abscissa x (None where none)."""
    if diagram_id == "D1_PHR":
        return 1.0 + math.sqrt(2 * PI / x)
    if diagram_id == "D2_RHR":
        den = 2 * (math.sqrt(max(x * x - 1, 0.0)) + math.asin(min(1.0, 1 / x)))
        return 1.0 + math.sqrt(PI / den)
    if diagram_id == "D3_DHR":
        den = math.sqrt(max(x * x - 4, 0.0)) + (PI - 2 * math.acos(min(1.0, 2 / x)))
        return 1.0 + math.sqrt(PI / den)
    if diagram_id == "HWD":
        if x <= SQRT3 / 2:
            return bounds._triangle_h_from_wd(x, 1.0)
        ac = math.acos(min(1.0, x))
        den = PI * x * x - SQRT3 + 6 * x * x * (math.tan(ac) - ac)
        return SQRT3 / (SQRT3 * x - 1.0) + math.sqrt(2 * PI / den)
    if diagram_id == "HWR_CIRC":
        if x <= 1.5:
            return bounds._triangle_h_matched("R", 1.0, "w", x)
        return None
    if diagram_id == "HWP":
        if x <= 1.0 / (2 * SQRT3):
            return bounds._triangle_h_matched("P", 1.0, "w", x)
        return None
    if diagram_id == "HWA":
        if SQRT3 >= x * x:
            return bounds._triangle_h_matched("A", 1.0, "w", x)
        return None
    if diagram_id == "HRD":
        root = math.sqrt(max(4 * x * x - 1.0, 0.0))
        if root == 0.0:
            return None
        return 2 * x * (2 * x + root) / root + math.sqrt(4 * PI * x * x / root)
    if diagram_id == "HWR_IN":
        return 1.0 + math.sqrt(PI * SQRT3) / x
    return None


def _curve(diagram_id: str, xs: np.ndarray, fn) -> np.ndarray:
    pts = []
    for x in xs:
        try:
            y = fn(diagram_id, float(x))
        except (CheegerAtlasError, ValueError):
            y = None
        if y is not None and math.isfinite(y):
            pts.append((float(x), float(y)))
    return np.array(pts) if pts else np.empty((0, 2))


def boundary(spec: DiagramSpec) -> tuple[np.ndarray, np.ndarray]:
    """(lower, upper) curves as (k, 2) arrays of samples; empty where unproven.

    For D3 the implicit lower curve automatically realizes the smoothed
    nonagon branch below d0() and the slice branch above it.
    """
    xs = spec.xs()
    return _curve(spec.id, xs, _lower_y), _curve(spec.id, xs, _upper_y)


def membership(spec: DiagramSpec | str, x: float, y: float,
               tol: float = MEMBERSHIP_TOL) -> str:
    """'inside' / 'outside' for the solved diagrams, else possibly 'unknown'.

    Points are compared against the proven curves with tolerance ``tol``;
    for the partially solved diagrams the region between proven pieces is
    unknown.
    """
    diagram_id = spec.id if isinstance(spec, DiagramSpec) else spec
    if diagram_id not in DIAGRAM_IDS:
        raise DomainError(f"unknown diagram id {diagram_id!r}")
    lo_x, hi_x = DIAGRAM_IDS[diagram_id][3]
    solved = diagram_id in SOLVED
    if x < lo_x - tol or (hi_x is not None and x > hi_x + tol):
        return "outside"
    try:
        lo = _lower_y(diagram_id, max(x, lo_x))
    except (CheegerAtlasError, ValueError):
        lo = None
    try:
        up = _upper_y(diagram_id, max(x, lo_x))
    except (CheegerAtlasError, ValueError):
        up = None
    if lo is not None and y < lo - tol:
        return "outside"
    if up is not None and y > up + tol:
        return "outside"
    if solved:
        return "inside"
    return "unknown"


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

VIEW_W, VIEW_H = 1000, 700
_MARGIN = 70.0


def _ticks(lo: float, hi: float, want: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / max(1, want - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s * mag for s in (1, 2, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-9 * span:
        out.append(round(v, 12))
        v += step
    return out


def render_csv(cloud: list[DiagramPoint],
               curves: list[np.ndarray] | None = None) -> str:
    lines = ["x,y,provenance"]
    for p in cloud:
        lines.append(f"{format(p.x, '.17g')},{format(p.y, '.17g')},{p.provenance}")
    names = ("curve:lower", "curve:upper")
    for i, c in enumerate(curves or []):
        label = names[i] if i < len(names) else f"curve:{i}"
        for x, y in c:
            lines.append(f"{format(float(x), '.17g')},{format(float(y), '.17g')},{label}")
    return "\n".join(lines) + "\n"


def render_svg(cloud: list[DiagramPoint],
               curves: list[np.ndarray] | None = None,
               title: str = "") -> str:
    """Deterministic standalone SVG: 1px dots, polyline curves, labeled axes."""
    curves = [c for c in (curves or []) if len(c)]
    xs = [p.x for p in cloud] + [float(v) for c in curves for v in c[:, 0]]
    ys = [p.y for p in cloud] + [float(v) for c in curves for v in c[:, 1]]
    if not xs:
        raise ValueError("nothing to render")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 - x0 <= 0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 <= 0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    padx, pady = 0.04 * (x1 - x0), 0.04 * (y1 - y0)
    x0, x1, y0, y1 = x0 - padx, x1 + padx, y0 - pady, y1 + pady

    def sx(x):
        return _MARGIN + (x - x0) / (x1 - x0) * (VIEW_W - 2 * _MARGIN)

    def sy(y):
        return VIEW_H - _MARGIN - (y - y0) / (y1 - y0) * (VIEW_H - 2 * _MARGIN)

    fmt = lambda v: f"{v:.3f}"
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W} {VIEW_H}">',
           f'<rect width="{VIEW_W}" height="{VIEW_H}" fill="white"/>']
    if title:
        out.append(f'<text x="{VIEW_W / 2:.0f}" y="28" font-family="sans-serif" '
                   f'font-size="16" text-anchor="middle">{title}</text>')
    ax = (f'M {fmt(_MARGIN)} {fmt(_MARGIN)} L {fmt(_MARGIN)} {fmt(VIEW_H - _MARGIN)} '
          f'L {fmt(VIEW_W - _MARGIN)} {fmt(VIEW_H - _MARGIN)}')
    out.append(f'<path d="{ax}" stroke="black" fill="none" stroke-width="1"/>')
    for tx in _ticks(x0, x1):
        px = sx(tx)
        out.append(f'<line x1="{fmt(px)}" y1="{fmt(VIEW_H - _MARGIN)}" '
                   f'x2="{fmt(px)}" y2="{fmt(VIEW_H - _MARGIN + 5)}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{fmt(px)}" y="{fmt(VIEW_H - _MARGIN + 20)}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="middle">{tx:g}</text>')
    for ty in _ticks(y0, y1):
        py = sy(ty)
        out.append(f'<line x1="{fmt(_MARGIN - 5)}" y1="{fmt(py)}" '
                   f'x2="{fmt(_MARGIN)}" y2="{fmt(py)}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{fmt(_MARGIN - 8)}" y="{fmt(py + 4)}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="end">{ty:g}</text>')
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    for i, c in enumerate(curves):
        pts = " ".join(f"{fmt(sx(float(x)))},{fmt(sy(float(y)))}" for x, y in c)
        out.append(f'<polyline points="{pts}" fill="none" '
                   f'stroke="{palette[i % len(palette)]}" stroke-width="1.5"/>')
    for p in cloud:
        out.append(f'<circle cx="{fmt(sx(p.x))}" cy="{fmt(sy(p.y))}" r="1" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(cloud: list[DiagramPoint], curves, fmt: str, path: str) -> None:
    """Write a cloud + curves to ``path`` as csv or svg (byte-deterministic)."""
    if fmt == "csv":
        text = render_csv(cloud, curves)
    elif fmt == "svg":
        text = render_svg(cloud, curves)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", newline="") as fh:
        fh.write(text)
