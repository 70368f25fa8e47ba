"""Cheeger constant and Cheeger set of a convex polygon.

For a planar convex body the Cheeger problem reduces to a scalar equation:
there is a unique t* > 0 with |inner_parallel(poly, t*)| = pi t*^2, the
constant is h = 1/t*, and the Cheeger set is the inner core dilated back by
t*.  The same crossing machinery solves the implicit inequalities g(t) =
pi t^2 used by the bound registry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NoRoot
from .functionals import area, min_width, perimeter
from .geom import ConvexPolygon, OffsetMachine, dilate

# Bisection stops when the bracket is below this fraction of the domain size.
BISECT_REL_TOL = 1e-13
# Uniform samples used to locate a sign change before bisecting.
SCAN_SAMPLES = 1024
# Chords per full circle when discretizing the Cheeger set boundary.
DEFAULT_ARC_SEGMENTS = 4096


@dataclass(frozen=True)
class CheegerResult:
    """Cheeger data of one polygon: h = 1/t_star and the two witness bodies."""

    h: float
    t_star: float
    cheeger_set: ConvexPolygon
    inner_core: ConvexPolygon


@dataclass(frozen=True)
class ImplicitRootProblem:
    """Solve g(t) = pi t^2 on [0, upper] for the smallest or largest root.

    ``g`` must accept numpy arrays (scalars are broadcast); it is the
    caller's job to guarantee continuity on the domain.
    """

    g: Callable[[np.ndarray], np.ndarray]
    upper: float
    mode: str = "smallest"

    def __post_init__(self):
        if self.mode not in ("smallest", "largest"):
            raise ValueError("mode must be 'smallest' or 'largest'")
        if self.upper <= 0:
            raise ValueError("domain upper end must be positive")


def _bisect(f, lo, hi, flo, tol):
    """Plain bisection on a bracketed sign change; returns the midpoint."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cheeger_constant(poly: ConvexPolygon,
                     arc_segments: int = DEFAULT_ARC_SEGMENTS,
                     with_set: bool = True) -> CheegerResult:
    """Cheeger constant via bisection of |poly_{-t}| - pi t^2 on [0, r].

    F(0) = |poly| > 0 and F(r) < 0, and F is strictly decreasing, so the
    crossing is unique.  The bisection brackets on [0, omega/2] (omega/2 >=
    r, and F stays negative past r), which avoids an extra inradius solve.
    ``with_set=False`` skips building the discretized Cheeger set (the
    ``cheeger_set`` field then repeats the inner core).
    """
    machine = OffsetMachine(poly)
    hi, _ = min_width(poly)
    hi *= 0.5

    def f(t):
        return machine.area_at(t) - np.pi * t * t

    # omega/2 <= 1.5 r, so halving the tolerance keeps it below 1e-13 r
    t_star = _bisect(f, 0.0, hi, machine.area0, 0.5 * BISECT_REL_TOL * hi)
    core = machine.polygon_at(t_star)
    while core is None:
        # t_star numerically pinned where the offset vanishes; nudge inside
        t_star *= 1.0 - 1e-12
        core = machine.polygon_at(t_star)
    h = 1.0 / t_star
    cheeger_set = dilate(core, t_star, arc_segments) if with_set else core
    return CheegerResult(h=h, t_star=t_star, cheeger_set=cheeger_set, inner_core=core)


def smallest_crossing(problem: ImplicitRootProblem,
                      samples: int = SCAN_SAMPLES) -> float:
    """First (or last) crossing of g(t) = pi t^2 on [0, upper].

    A uniform scan with ``samples`` points locates a sign change of
    F(t) = g(t) - pi t^2, which is then bisected to BISECT_REL_TOL * upper.
    A root pair closer than the grid step can be missed.
    """
    upper = problem.upper
    ts = np.linspace(0.0, upper, samples + 1)
    gs = np.asarray(problem.g(ts), dtype=float)
    fs = gs - np.pi * ts * ts

    # a zero at t = 0 exactly is vacuous (1/t blows up); require t > 0
    zero_hits = np.flatnonzero((fs == 0.0) & (ts > 0.0))
    signs = np.sign(fs)
    flips = np.flatnonzero(signs[:-1] * signs[1:] < 0.0)
    candidates = []
    if zero_hits.size:
        candidates.extend(("zero", int(i)) for i in zero_hits)
    candidates.extend(("flip", int(i)) for i in flips)
    if not candidates:
        raise NoRoot("g(t) - pi t^2 has no sign change on the domain")

    def key(c):
        kind, i = c
        return ts[i] if kind == "zero" else ts[i] + 1e-30
    chosen = min(candidates, key=key) if problem.mode == "smallest" else max(candidates, key=key)
    kind, i = chosen
    if kind == "zero":
        return float(ts[i])

    # refine by repeated 64-fold subdivision (vectorized g evaluations)
    lo, hi = float(ts[i]), float(ts[i + 1])
    flo = float(fs[i])
    tol = BISECT_REL_TOL * upper
    for _ in range(40):
        if hi - lo <= tol:
            break
        grid = np.linspace(lo, hi, 65)
        vals = np.asarray(problem.g(grid), dtype=float) - np.pi * grid * grid
        matches = vals > 0.0 if flo > 0.0 else vals < 0.0
        flips = np.flatnonzero(~matches)
        k = int(flips[0])
        if k == 0:
            return lo
        lo, hi, flo = float(grid[k - 1]), float(grid[k]), float(vals[k - 1])
    return 0.5 * (lo + hi)


def implicit_bound_value(problem: ImplicitRootProblem, samples: int = SCAN_SAMPLES) -> float:
    """1 / crossing: a lower bound on h for mode='smallest', upper otherwise."""
    return 1.0 / smallest_crossing(problem, samples=samples)


def cheeger_ratio(poly: ConvexPolygon) -> float:
    """Perimeter over area; equals h exactly for bodies Cheeger of themselves."""
    return perimeter(poly) / area(poly)
