"""Extremal shape families: construction, closed forms, parameter solving.

Every family builds a counterclockwise polygon whose vertices lie ON the
true boundary (inscribed discretization), centered at the origin with the
diameter along the x-axis where the family has a canonical one.  Arcs are
sampled with chords subtending at most 2*pi/arc_segments.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from functools import lru_cache

import numpy as np

from .errors import InvalidParam, NonMonotone, Unreachable, Unsupported
from .functionals import Functionals, measure
from .geom import ConvexPolygon, convex_hull

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Resolution:
    """Discretization fineness: chords per full circle equivalent."""

    arc_segments: int = 4096

    def __post_init__(self):
        if self.arc_segments < 16:
            raise InvalidParam("arc_segments must be at least 16")


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise InvalidParam(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class Ball:
    radius: float

    def __post_init__(self):
        _positive("radius", self.radius)


@dataclass(frozen=True)
class Stadium:
    """Convex hull of two balls of equal radius centered at (+-center_gap/2, 0)."""

    radius: float
    center_gap: float

    def __post_init__(self):
        _positive("radius", self.radius)
        if self.center_gap < 0:
            raise InvalidParam("center_gap must be nonnegative")


@dataclass(frozen=True)
class TwoCup:
    """Convex hull of a ball and two tips (+-tip_dist, 0); tip_dist >= radius."""

    radius: float
    tip_dist: float

    def __post_init__(self):
        _positive("radius", self.radius)
        if self.tip_dist < self.radius:
            raise InvalidParam("tip_dist must be at least the radius")


@dataclass(frozen=True)
class Slice:
    """Ball of radius diameter/2 cut by a centered strip of halfwidth inradius."""

    inradius: float
    diameter: float

    def __post_init__(self):
        _positive("inradius", self.inradius)
        if self.diameter < 2 * self.inradius:
            raise InvalidParam("diameter must be at least twice the inradius")


@dataclass(frozen=True)
class SubequilateralTriangle:
    """Isosceles triangle with base angles above pi/3 (height >= sqrt(3)/2 * base)."""

    base: float
    height: float

    def __post_init__(self):
        _positive("base", self.base)
        if self.height < SQRT3 * self.base / 2 * (1 - 1e-12):
            raise InvalidParam("height must be at least sqrt(3)/2 times the base")


@dataclass(frozen=True)
class Yamanouti:
    """Hull of an equilateral triangle and three vertex-centered arcs.

    arc_radius ranges over (0, side]; below the triangle height the hull
    degenerates to the triangle itself, at arc_radius = side it is the
    Reuleaux triangle.
    """

    side: float
    arc_radius: float

    def __post_init__(self):
        _positive("side", self.side)
        if not 0 < self.arc_radius <= self.side:
            raise InvalidParam("arc_radius must lie in (0, side]")


@dataclass(frozen=True)
class SmoothedNonagon:
    """Three-fold body of given inradius and diameter: 3 segments + 6 arcs."""

    inradius: float
    diameter: float

    def __post_init__(self):
        _positive("inradius", self.inradius)
        r, d = self.inradius, self.diameter
        if not 2 * r < d < 2 * SQRT3 * r:
            raise InvalidParam("diameter must lie in (2r, 2*sqrt(3)*r)")


@dataclass(frozen=True)
class ConstantWidthNonagon:
    """Nine-arc constant width body from concentric incircle/circumcircle.

    Constructible for inner_radius in [width*(1 - 1/sqrt(3)), width/2); the
    lower end is the Reuleaux triangle, the upper end the ball.
    """

    width: float
    inner_radius: float

    def __post_init__(self):
        _positive("width", self.width)
        w, r = self.width, self.inner_radius
        if not w * (1 - 1 / SQRT3) - 1e-15 * w <= r < w / 2:
            raise InvalidParam("inner_radius must lie in [width*(1-1/sqrt 3), width/2)")


@dataclass(frozen=True)
class Polygon:
    vertices: tuple

    def __post_init__(self):
        ConvexPolygon(np.asarray(self.vertices, dtype=float))


ShapeSpec = (Ball | Stadium | TwoCup | Slice | SubequilateralTriangle
             | Yamanouti | SmoothedNonagon | ConstantWidthNonagon | Polygon)

_FAMILY_NAMES = {
    Ball: "ball", Stadium: "stadium", TwoCup: "two_cup", Slice: "slice",
    SubequilateralTriangle: "subequilateral_triangle", Yamanouti: "yamanouti",
    SmoothedNonagon: "smoothed_nonagon", ConstantWidthNonagon: "constant_width_nonagon",
    Polygon: "polygon",
}
_FAMILY_BY_NAME = {v: k for k, v in _FAMILY_NAMES.items()}


def spec_to_json(spec: ShapeSpec) -> str:
    params = {f.name: getattr(spec, f.name) for f in fields(spec)}
    if isinstance(spec, Polygon):
        params["vertices"] = [list(p) for p in params["vertices"]]
    return json.dumps({"family": _FAMILY_NAMES[type(spec)], "params": params})


def spec_from_json(text: str) -> ShapeSpec:
    doc = json.loads(text)
    cls = _FAMILY_BY_NAME.get(doc.get("family"))
    if cls is None:
        raise InvalidParam(f"unknown family {doc.get('family')!r}")
    params = dict(doc["params"])
    if cls is Polygon:
        params["vertices"] = tuple(tuple(p) for p in params["vertices"])
    return cls(**params)


def _arc(center, radius, a0, a1, step):
    """Inscribed arc samples from angle a0 to a1 (CCW), endpoints included."""
    span = a1 - a0
    k = max(1, int(math.ceil(span / step)))
    phis = a0 + span * np.arange(k + 1) / k
    return np.asarray(center) + radius * np.column_stack((np.cos(phis), np.sin(phis)))


def _dedupe(chunks, scale):
    pts = np.concatenate(chunks)
    keep = [0]
    for i in range(1, len(pts)):
        if np.hypot(*(pts[i] - pts[keep[-1]])) > 1e-12 * scale:
            keep.append(i)
    if np.hypot(*(pts[keep[-1]] - pts[keep[0]])) <= 1e-12 * scale:
        keep.pop()
    return pts[keep]


def build(spec: ShapeSpec, res: Resolution | int = Resolution()) -> ConvexPolygon:
    """Discretize a shape spec into a strictly convex polygon."""
    m = res.arc_segments if isinstance(res, Resolution) else Resolution(int(res)).arc_segments
    step = 2 * math.pi / m
    if isinstance(spec, Polygon):
        return ConvexPolygon(np.asarray(spec.vertices, dtype=float))
    if isinstance(spec, Ball):
        return ConvexPolygon(_arc((0.0, 0.0), spec.radius, 0.0, 2 * math.pi - 2 * math.pi / m, step))
    if isinstance(spec, Stadium):
        r, half = spec.radius, spec.center_gap / 2.0
        chunks = [_arc((half, 0.0), r, -math.pi / 2, math.pi / 2, step),
                  _arc((-half, 0.0), r, math.pi / 2, 3 * math.pi / 2, step)]
        return ConvexPolygon(_dedupe(chunks, r + half))
    if isinstance(spec, TwoCup):
        r, k = spec.radius, spec.tip_dist
        alpha = math.acos(min(1.0, r / k))
        chunks = [np.array([[k, 0.0]]),
                  _arc((0.0, 0.0), r, alpha, math.pi - alpha, step),
                  np.array([[-k, 0.0]]),
                  _arc((0.0, 0.0), r, math.pi + alpha, 2 * math.pi - alpha, step)]
        return ConvexPolygon(_dedupe(chunks, k))
    if isinstance(spec, Slice):
        r, d = spec.inradius, spec.diameter
        beta = math.asin(min(1.0, 2 * r / d))
        chunks = [_arc((0.0, 0.0), d / 2, -beta, beta, step),
                  _arc((0.0, 0.0), d / 2, math.pi - beta, math.pi + beta, step)]
        return ConvexPolygon(_dedupe(chunks, d / 2))
    if isinstance(spec, SubequilateralTriangle):
        b, height = spec.base, spec.height
        return ConvexPolygon(np.array([[-b / 2, -height / 3], [b / 2, -height / 3], [0.0, 2 * height / 3]]))
    if isinstance(spec, Yamanouti):
        return _build_yamanouti(spec, step)
    if isinstance(spec, SmoothedNonagon):
        return _build_smoothed_nonagon(spec, step)
    if isinstance(spec, ConstantWidthNonagon):
        return _build_cw_nonagon(spec, step)
    raise InvalidParam(f"unknown spec {spec!r}")


def _build_yamanouti(spec: Yamanouti, step: float) -> ConvexPolygon:
    s, rho = spec.side, spec.arc_radius
    v = np.array([[-s / 2, -s / (2 * SQRT3)], [s / 2, -s / (2 * SQRT3)], [0.0, s / SQRT3]])
    chunks = [v]
    for i in range(3):
        center = v[i]
        to_next = v[(i + 1) % 3] - center
        to_prev = v[(i + 2) % 3] - center
        a0 = math.atan2(to_next[1], to_next[0])
        a1 = math.atan2(to_prev[1], to_prev[0])
        if a1 < a0:
            a1 += 2 * math.pi
        # arc endpoints lie exactly on the triangle edges; keep the open arc
        # so collinear points cannot survive into the hull
        pts = _arc(center, rho, a0, a1, step)
        if len(pts) > 2:
            chunks.append(pts[1:-1])
    return convex_hull(np.concatenate(chunks))


def _build_smoothed_nonagon(spec: SmoothedNonagon, step: float) -> ConvexPolygon:
    r, d = spec.inradius, spec.diameter
    dd = d / r  # build at inradius 1, scale at the end
    tau = (3.0 + math.sqrt(dd * dd - 3.0)) / 2.0
    seg = SQRT3 * (tau - 2.0)  # segment half-length; equals sqrt(dd^2 - tau^2)
    eta = np.array([math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6])
    contact = np.column_stack((np.cos(eta), np.sin(eta)))
    tangent = np.column_stack((-np.sin(eta), np.cos(eta)))
    a_pts = contact - seg * tangent
    b_pts = contact + seg * tangent
    m_pts = (1.0 - tau) * contact
    centers = (b_pts + m_pts) / 2.0

    def arc_piece(start, end, center):
        a0 = math.atan2(start[1] - center[1], start[0] - center[0])
        a1 = math.atan2(end[1] - center[1], end[0] - center[0])
        if a1 < a0:
            a1 += 2 * math.pi
        return _arc(center, dd / 2.0, a0, a1, step)

    chunks = []
    for i in range(3):
        j = (i + 2) % 3  # previous index cyclically (i-1)
        chunks.append(np.array([a_pts[i]]))
        chunks.append(np.array([b_pts[i]]))
        chunks.append(arc_piece(b_pts[i], m_pts[j], centers[i]))
        chunks.append(arc_piece(m_pts[j], a_pts[(i + 1) % 3], centers[j]))
    verts = _dedupe(chunks, dd)
    return ConvexPolygon(verts * r)


def _build_cw_nonagon(spec: ConstantWidthNonagon, step: float) -> ConvexPolygon:
    w, r_in = spec.width, spec.inner_radius
    big_r = w - r_in
    theta = np.array([math.pi / 2 + 2 * math.pi * i / 3 for i in range(3)])
    v = big_r * np.column_stack((np.cos(theta), np.sin(theta)))
    u = math.sqrt(max(0.0, w * w - 3 * big_r * big_r)) / 2.0

    def chord_center(i, j):
        mid = (v[i] + v[j]) / 2.0
        mhat = mid / np.hypot(*mid) if np.hypot(*mid) > 0 else np.array([0.0, 0.0])
        return (big_r / 2.0 - u) * mhat

    # half opening angle of the corner's normal cone
    o_prev = chord_center(0, 2)
    delta = math.atan2(*(v[0] - o_prev)[::-1]) - math.pi / 2

    def piece_points(a0, a1, fn):
        span = a1 - a0
        k = max(1, int(math.ceil(span / step)))
        phis = a0 + span * np.arange(k + 1) / k
        return fn(phis)

    chunks = []
    for i in range(3):
        t0 = theta[i]
        prev_i, next_i = (i + 2) % 3, (i + 1) % 3
        chunks.append(np.array([v[i]]))
        o1 = chord_center(i, prev_i)
        chunks.append(piece_points(t0 + delta, t0 + math.pi / 3 - delta,
                                   lambda p, o=o1: o + (w / 2) * np.column_stack((np.cos(p), np.sin(p)))))
        vv = v[prev_i]
        chunks.append(piece_points(t0 + math.pi / 3 - delta, t0 + math.pi / 3 + delta,
                                   lambda p, c=vv: c + w * np.column_stack((np.cos(p), np.sin(p)))))
        o2 = chord_center(next_i, prev_i)
        chunks.append(piece_points(t0 + math.pi / 3 + delta, t0 + 2 * math.pi / 3 - delta,
                                   lambda p, o=o2: o + (w / 2) * np.column_stack((np.cos(p), np.sin(p)))))
    return ConvexPolygon(_dedupe(chunks, w))


def closed_form(spec: ShapeSpec) -> Functionals:
    """Exact functionals where the family admits them (ball, stadium,
    two-cup, slice); the first three also carry the exact Cheeger constant."""
    if isinstance(spec, Ball):
        rho = spec.radius
        return Functionals(math.pi * rho * rho, 2 * math.pi * rho, rho, rho,
                           2 * rho, 2 * rho, cheeger=2 / rho, cheeger_t=rho / 2)
    if isinstance(spec, Stadium):
        r, gap = spec.radius, spec.center_gap
        A = math.pi * r * r + 2 * r * gap
        P = 2 * math.pi * r + 2 * gap
        h = P / A  # stadiums are Cheeger sets of themselves
        return Functionals(A, P, r, r + gap / 2, 2 * r + gap, 2 * r,
                           cheeger=h, cheeger_t=1 / h)
    if isinstance(spec, TwoCup):
        r, k = spec.radius, spec.tip_dist
        A = r * math.sqrt(max(0.0, 4 * k * k - 4 * r * r)) + r * r * (math.pi - 2 * math.acos(min(1.0, r / k)))
        P = 2 * A / r  # homothetic to its form body
        h = 1 / r + math.sqrt(math.pi / A)
        return Functionals(A, P, r, k, 2 * k, 2 * r, cheeger=h, cheeger_t=1 / h)
    if isinstance(spec, Slice):
        r, d = spec.inradius, spec.diameter
        root = math.sqrt(max(0.0, d * d - 4 * r * r))
        asr = math.asin(min(1.0, 2 * r / d))
        A = r * root + (d * d / 2) * asr
        P = 2 * root + 2 * d * asr
        return Functionals(A, P, r, d / 2, d, 2 * r)
    raise Unsupported(f"no closed form for {_FAMILY_NAMES.get(type(spec), '?')}")


def triangle_functionals(base: float, height: float) -> Functionals:
    """Exact functionals of the isosceles triangle, Cheeger constant included.

    Valid for the subequilateral regime (legs at least as long as the base).
    """
    b, hh = float(base), float(height)
    s = math.hypot(hh, b / 2)
    A = b * hh / 2
    P = b + 2 * s
    r = b * hh / (b + 2 * s)
    h = 1 / r + math.sqrt(math.pi / A)  # triangles are form-body homothets
    return Functionals(A, P, r, s * s / (2 * hh), s, b * hh / s,
                       cheeger=h, cheeger_t=1 / h)


# ---------------------------------------------------------------------------
# parameter solving: one dimensionless shape parameter + one scale
# ---------------------------------------------------------------------------

# family name -> (sigma range (lo, hi, hi_unbounded), unit spec builder)
_SIGMA = {
    "stadium": (0.0, 64.0, True, lambda s: Stadium(1.0, s)),
    "two_cup": (1.0, 64.0, True, lambda s: TwoCup(1.0, s)),
    "slice": (1.0, 64.0, True, lambda s: Slice(1.0, 2.0 * s)),
    "subequilateral_triangle": (SQRT3 / 2, 64.0, True, lambda s: SubequilateralTriangle(1.0, s)),
    "yamanouti": (1e-6, 1.0, False, lambda s: Yamanouti(1.0, s)),
    "smoothed_nonagon": (2.0 + 1e-9, 2 * SQRT3 - 1e-9, False, lambda s: SmoothedNonagon(1.0, s)),
    "constant_width_nonagon": ((1 - 1 / SQRT3), 0.5 - 1e-9, False,
                               lambda s: ConstantWidthNonagon(1.0, s)),
}

_EXPONENT = {"A": 2.0, "P": 1.0, "r": 1.0, "R": 1.0, "d": 1.0, "w": 1.0}


def _scale_spec(spec: ShapeSpec, factor: float) -> ShapeSpec:
    vals = {f.name: getattr(spec, f.name) * factor for f in fields(spec)}
    return type(spec)(**vals)


@lru_cache(maxsize=16384)
def _unit_functionals(family: str, sigma: float, res: int) -> Functionals:
    spec = _SIGMA[family][3](sigma)
    try:
        return closed_form(spec)
    except Unsupported:
        if isinstance(spec, SubequilateralTriangle):
            return triangle_functionals(spec.base, spec.height)
        return measure(build(spec, Resolution(res)))


def solve_param(family, target, fixed, res: int = 8192,
                scan_points: int = 65) -> ShapeSpec:
    """Find the family member matching ``target`` once ``fixed`` is imposed.

    ``target`` and ``fixed`` are (functional id, value) pairs with ids from
    {A, P, r, R, d, w}.  The family is reduced to one dimensionless shape
    parameter; for each trial value the ``fixed`` functional pins the scale
    and the target functional is driven to its value by bisection (matched
    to 1e-10 relative).  Raises Unreachable when the target lies outside the
    family's range and NonMonotone when the sampled scan is not monotone.
    """
    fam = family if isinstance(family, str) else _FAMILY_NAMES[family]
    if fam not in _SIGMA:
        raise InvalidParam(f"family {fam!r} has no parameter solver")
    tid, tval = target
    fid, fval = fixed
    if fval <= 0 or tval <= 0:
        raise InvalidParam("target and fixed values must be positive")
    a_t, a_f = _EXPONENT[tid], _EXPONENT[fid]

    def g(sigma: float) -> float:
        f = _unit_functionals(fam, sigma, res)
        scale = (fval / f.value(fid)) ** (1.0 / a_f)
        return f.value(tid) * scale ** a_t

    lo, hi, unbounded, _ = _SIGMA[fam]
    for _ in range(12):
        grid = np.linspace(lo, hi, scan_points)
        vals = np.array([g(s) for s in grid])
        diffs = np.diff(vals)
        tol = 1e-12 * float(np.max(np.abs(vals)))
        if np.any(diffs > tol) and np.any(diffs < -tol):
            raise NonMonotone(f"{tid} is not monotone in the {fam} shape parameter")
        vmin, vmax = float(np.min(vals)), float(np.max(vals))
        if vmin - 1e-12 * vmax <= tval <= vmax + 1e-12 * vmax:
            break
        increasing = vals[-1] >= vals[0]
        beyond_far_end = tval > vals[-1] if increasing else tval < vals[-1]
        if unbounded and beyond_far_end:
            hi *= 4.0
            if hi > 1e12:
                raise Unreachable(f"target {tid}={tval} beyond family range")
            continue
        raise Unreachable(f"target {tid}={tval} outside scanned range [{vmin}, {vmax}]")
    else:
        raise Unreachable(f"target {tid}={tval} beyond family range")

    idx = np.nonzero((vals[:-1] - tval) * (vals[1:] - tval) <= 0.0)[0]
    if idx.size == 0:
        i = int(np.argmin(np.abs(vals - tval)))
        s_lo = s_hi = float(grid[i])
    else:
        i = int(idx[0])
        s_lo, s_hi = float(grid[i]), float(grid[i + 1])
    f_lo = g(s_lo) - tval
    for _ in range(200):
        mid = 0.5 * (s_lo + s_hi)
        fm = g(mid) - tval
        if abs(fm) <= 1e-10 * abs(tval) or (s_hi - s_lo) <= 1e-13 * max(1.0, abs(s_hi)):
            s_lo = s_hi = mid
            break
        if (fm > 0) == (f_lo > 0):
            s_lo, f_lo = mid, fm
        else:
            s_hi = mid
    sigma = 0.5 * (s_lo + s_hi)
    f = _unit_functionals(fam, sigma, res)
    scale = (fval / f.value(fid)) ** (1.0 / a_f)
    return _scale_spec(_SIGMA[fam][3](sigma), scale)
