"""Planar convex polygon kernel.

Counterclockwise strictly convex vertex chains are the universal carrier;
every operation is a pure function on immutable polygons.  Points are plain
length-2 arrays (or anything ``np.asarray`` turns into one).  Offsets,
Minkowski sums, form bodies and dilations all work on double precision
coordinates; there is no exact arithmetic.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, PolygonJsonError, UnboundedRegion

# Angle below which two half-plane normals are treated as parallel and merged.
PARALLEL_EPS = 1e-10
# Relative area below which an offset/intersection result counts as empty.
DEGENERATE_AREA_REL = 1e-18
# Unit-norm check for half-plane normals.
UNIT_EPS = 1e-12


def _as_vertex_array(vertices) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise DegenerateInput(f"expected an (n, 2) vertex array, got shape {v.shape}")
    return v


def shoelace(vertices: np.ndarray) -> float:
    """Signed area of a closed vertex chain (positive for counterclockwise)."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, vertices counterclockwise.

    Invariants: at least 3 vertices, finite coordinates, positive signed
    area, and every consecutive vertex triple makes a strict left turn.
    Clockwise input is reversed on construction; anything else is rejected.
    """

    vertices: np.ndarray
    _normals: np.ndarray = field(init=False, repr=False, compare=False)
    _offsets: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = _as_vertex_array(self.vertices)
        if len(v) < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise DegenerateInput("vertex coordinates must be finite")
        if shoelace(v) < 0.0:
            v = v[::-1]
        cross = _turn_cross(v)
        if np.any(cross <= 0.0):
            bad = int(np.argmin(cross))
            raise DegenerateInput(
                f"vertex chain is not strictly convex near index {bad} "
                f"(turn cross product {cross[bad]:.3e})"
            )
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        edges = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        normals = np.column_stack((edges[:, 1], -edges[:, 0])) / lengths[:, None]
        offsets = np.einsum("ij,ij->i", normals, v)
        normals.setflags(write=False)
        offsets.setflags(write=False)
        object.__setattr__(self, "_normals", normals)
        object.__setattr__(self, "_offsets", offsets)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_normals(self) -> np.ndarray:
        """Outward unit normal of edge i (from vertex i to vertex i+1)."""
        return self._normals

    @property
    def edge_offsets(self) -> np.ndarray:
        """Support value c_i so that the polygon satisfies n_i . x <= c_i."""
        return self._offsets

    def translate(self, delta) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.asarray(delta, dtype=float))

    def scale(self, factor: float) -> "ConvexPolygon":
        if factor <= 0:
            raise DegenerateInput("scale factor must be positive")
        return ConvexPolygon(self.vertices * float(factor))

    def contains_points(self, points, tol: float = 0.0) -> np.ndarray:
        """Vectorized membership test against the edge half-planes."""
        p = np.atleast_2d(np.asarray(points, dtype=float))
        slack = self._offsets[None, :] - p @ self._normals.T
        return np.all(slack >= -tol, axis=1)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane {x : x . n <= c} with unit normal n."""

    n: np.ndarray
    c: float

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float).reshape(2)
        if abs(np.hypot(n[0], n[1]) - 1.0) > UNIT_EPS:
            raise DegenerateInput("half-plane normal must have unit norm")
        n.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", float(self.c))


def _turn_cross(v: np.ndarray) -> np.ndarray:
    """Cross product of consecutive edge pairs (positive = strict left turn)."""
    e = np.roll(v, -1, axis=0) - v
    e_next = np.roll(e, -1, axis=0)
    return e[:, 0] * e_next[:, 1] - e[:, 1] * e_next[:, 0]


def convex_hull(points) -> ConvexPolygon:
    """Strict convex hull (Andrew monotone chain); collinear points dropped."""
    pts = np.unique(_as_vertex_array(points), axis=0)
    if len(pts) < 3:
        raise DegenerateInput("need at least 3 distinct points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def build(seq):
        chain: list[np.ndarray] = []
        for p in seq:
            while len(chain) >= 2:
                a, b = chain[-2], chain[-1]
                if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) <= 0.0:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return ConvexPolygon(np.array(hull))


def support(poly: ConvexPolygon, direction) -> float:
    """Support function p(y) = max over vertices of x . y (y need not be unit)."""
    d = np.asarray(direction, dtype=float)
    return float(np.max(poly.vertices @ d))


def _clip_chain(start_vertices, start_ids, planes, id_offset=0, tol_rel=1e-14):
    """Sutherland-Hodgman clip tracking which plane supports each edge.

    ``start_ids[i]`` is the plane id of the edge from vertex i to i+1; ids
    below ``id_offset`` refer to the seed polygon (exempt from provenance
    refinement).  Returns (vertices, edge_ids) or None when the region is
    empty.  Final vertices are recomputed from their two supporting lines so
    clipping at a large scale does not pollute the result.
    """
    verts = [np.asarray(p, dtype=float) for p in start_vertices]
    ids = list(start_ids)
    all_planes = {i + id_offset: (np.asarray(n, dtype=float), float(c)) for i, (n, c) in enumerate(planes)}
    seed_lines = {}
    for i, p in enumerate(start_vertices):
        q = start_vertices[(i + 1) % len(start_vertices)]
        e = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
        ln = np.hypot(e[0], e[1])
        n = np.array([e[1], -e[0]]) / ln
        seed_lines[ids[i]] = (n, float(n @ p))

    def line_of(i):
        return all_planes[i] if i in all_planes else seed_lines[i]

    for k, (n, c) in enumerate(planes):
        pid = k + id_offset
        m = len(verts)
        if m == 0:
            return None
        scale = max(1.0, abs(c))
        dist = np.asarray([c - float(n @ v) for v in verts])
        tol = scale * tol_rel
        if np.all(dist >= -tol):
            continue
        new_verts: list[np.ndarray] = []
        new_ids: list[int] = []
        for i in range(m):
            j = (i + 1) % m
            di, dj = dist[i], dist[j]
            inside_i, inside_j = di >= 0.0, dj >= 0.0
            if inside_i:
                new_verts.append(verts[i])
                new_ids.append(ids[i])
            if inside_i != inside_j:
                n_edge, c_edge = line_of(ids[i])
                det = n_edge[0] * n[1] - n_edge[1] * n[0]
                if abs(det) > 1e-300:
                    x = (c_edge * n[1] - c * n_edge[1]) / det
                    y = (n_edge[0] * c - n[0] * c_edge) / det
                    pt = np.array([x, y])
                else:
                    t = di / (di - dj)
                    pt = verts[i] + t * (verts[j] - verts[i])
                new_verts.append(pt)
                new_ids.append(ids[i] if inside_j else pid)
        if len(new_verts) < 3:
            return None
        # a vertex whose incoming and outgoing edge share a plane is interior
        # to that line: keep the edge's first vertex only
        verts, ids = [], []
        for v, i_ in zip(new_verts, new_ids):
            if verts and ids[-1] == i_:
                continue
            verts.append(v)
            ids.append(i_)
        while len(verts) >= 2 and ids[0] == ids[-1]:
            verts.pop(0)
            ids.pop(0)
        if len(verts) < 3:
            return None
    return np.array(verts), ids


def _strictify(vertices: np.ndarray, scale: float) -> np.ndarray | None:
    """Drop duplicate / non-left-turn vertices so the chain is strictly convex."""
    v = vertices
    for _ in range(64):
        if len(v) < 3:
            return None
        d = np.roll(v, -1, axis=0) - v
        keep = np.hypot(d[:, 0], d[:, 1]) > scale * 1e-13
        if not np.all(keep):
            v = v[keep]
            continue
        cross = _turn_cross(v)
        if np.all(cross > 0.0):
            return v
        v = v[np.roll(cross > 0.0, 1)]
    return None


def halfplane_intersection(planes: list[HalfPlane]) -> ConvexPolygon | None:
    """Bounded intersection of half-planes; None when the interior is empty.

    Raises UnboundedRegion when the intersection is unbounded.  Boundedness
    is decided by clipping a huge seed square: a surviving synthetic edge
    means escape to infinity at the working scale.
    """
    if not planes:
        raise DegenerateInput("need at least one half-plane")
    ncs = [(p.n, p.c) for p in planes]
    big = 1e8 * max(1.0, max(abs(c) for _, c in ncs))
    box = [np.array([-big, -big]), np.array([big, -big]), np.array([big, big]), np.array([-big, big])]
    clipped = _clip_chain(box, [-1, -2, -3, -4], ncs, id_offset=0)
    if clipped is None:
        return None
    verts, ids = clipped
    if any(i < 0 for i in ids):
        raise UnboundedRegion("half-plane intersection is unbounded")
    scale = float(np.max(np.abs(verts))) or 1.0
    verts = _strictify(verts, scale)
    if verts is None or abs(shoelace(verts)) <= (scale * scale) * DEGENERATE_AREA_REL:
        return None
    return ConvexPolygon(verts)


def _merge_parallel(normals, offsets):
    """Merge half-planes whose normals agree within PARALLEL_EPS (keep tighter)."""
    angles = np.arctan2(normals[:, 1], normals[:, 0])
    order = np.argsort(angles, kind="stable")
    ns, cs, angs = normals[order], offsets[order], angles[order]
    out_n, out_c = [ns[0]], [cs[0]]
    last_ang = angs[0]
    for i in range(1, len(ns)):
        if angs[i] - last_ang < PARALLEL_EPS:
            if cs[i] < out_c[-1]:
                out_c[-1] = cs[i]
                out_n[-1] = ns[i]
        else:
            out_n.append(ns[i])
            out_c.append(cs[i])
            last_ang = angs[i]
    if len(out_n) > 1 and (angs[0] + 2 * np.pi) - last_ang < PARALLEL_EPS:
        if out_c[0] > out_c[-1]:
            out_n[0], out_c[0] = out_n[-1], out_c[-1]
        out_n.pop()
        out_c.pop()
    return np.array(out_n), np.array(out_c)


def _deque_peel(ns: np.ndarray, cs: np.ndarray) -> list[int] | None:
    """Surviving plane indices of a cyclically sorted half-plane fan.

    Classic deque sweep: a plane pops once the vertex of its two neighbours
    already violates the incoming plane.  Amortized linear; returns None
    when fewer than 3 planes survive.
    """
    k = len(cs)
    nx = ns[:, 0].tolist()
    ny = ns[:, 1].tolist()
    cl = cs.tolist()

    def violates(w, i, j):
        det = nx[i] * ny[j] - ny[i] * nx[j]
        if det <= 0.0:
            return False
        x = (cl[i] * ny[j] - cl[j] * ny[i]) / det
        y = (nx[i] * cl[j] - nx[j] * cl[i]) / det
        return nx[w] * x + ny[w] * y > cl[w]

    dq = deque()
    for i in range(k):
        while len(dq) >= 2 and violates(i, dq[-2], dq[-1]):
            dq.pop()
        while len(dq) >= 2 and violates(i, dq[0], dq[1]):
            dq.popleft()
        dq.append(i)
    while True:
        changed = False
        if len(dq) >= 3 and violates(dq[0], dq[-2], dq[-1]):
            dq.pop()
            changed = True
        if len(dq) >= 3 and violates(dq[-1], dq[0], dq[1]):
            dq.popleft()
            changed = True
        if not changed:
            break
    if len(dq) < 3:
        return None
    return list(dq)


class OffsetMachine:
    """Repeated inward offsets of one polygon (the Cheeger bisection hot path).

    Normal merging and angle bookkeeping happen once; each query reruns only
    the consecutive-intersection chain with redundant planes peeled off.  A
    plane whose neighbor-pair vertex already satisfies it is globally
    redundant, so the peeling is exact.
    """

    def __init__(self, poly: ConvexPolygon):
        self.poly = poly
        self.ns, self.cs = _merge_parallel(poly.edge_normals, poly.edge_offsets)
        self.scale = float(np.max(np.abs(poly.vertices))) or 1.0
        self.area0 = shoelace(poly.vertices)

    def _fast_chain(self, t: float):
        ns, cs = self.ns, self.cs - t
        eps = self.scale * 1e-14
        passes = 0
        while True:
            if len(cs) < 3:
                return None
            n2 = np.concatenate((ns[1:], ns[:1]))
            c2 = np.concatenate((cs[1:], cs[:1]))
            det = ns[:, 0] * n2[:, 1] - ns[:, 1] * n2[:, 0]
            if float(np.min(det)) <= 0.0:
                raise ValueError("normal fan gap")
            vx = (cs * n2[:, 1] - c2 * ns[:, 1]) / det
            vy = (ns[:, 0] * c2 - n2[:, 0] * cs) / det
            adv = -(vx - np.concatenate((vx[-1:], vx[:-1]))) * ns[:, 1] \
                + (vy - np.concatenate((vy[-1:], vy[:-1]))) * ns[:, 0]
            dead = adv <= eps
            if not dead.any():
                return np.column_stack((vx, vy))
            keep = ~dead
            ns, cs = ns[keep], cs[keep]
            passes += 1
            if passes >= 6:
                # long removal cascades (fine arcs eaten by long edges):
                # switch to the linear-time deque peel
                survivors = _deque_peel(ns, cs)
                if survivors is None:
                    return None
                ns, cs = ns[survivors], cs[survivors]
                passes = 0

    def vertices_at(self, t: float) -> np.ndarray | None:
        if t == 0.0:
            return self.poly.vertices
        try:
            verts = self._fast_chain(t)
        except ValueError:
            verts = None
            clipped = _clip_chain(list(self.poly.vertices), list(range(-len(self.poly), 0)),
                                  list(zip(self.ns, self.cs - t)))
            if clipped is not None:
                verts = clipped[0]
        if verts is None:
            return None
        verts = _strictify(verts, self.scale)
        if verts is None or shoelace(verts) <= self.area0 * DEGENERATE_AREA_REL:
            return None
        return verts

    def area_at(self, t: float) -> float:
        if t == 0.0:
            return self.area0
        try:
            verts = self._fast_chain(t)
        except ValueError:
            verts = self.vertices_at(t)
        if verts is None:
            return 0.0
        vx, vy = verts[:, 0], verts[:, 1]
        a = 0.5 * (np.dot(vx, np.concatenate((vy[1:], vy[:1])))
                   - np.dot(vy, np.concatenate((vx[1:], vx[:1]))))
        return 0.0 if a <= self.area0 * DEGENERATE_AREA_REL else float(a)

    def polygon_at(self, t: float) -> ConvexPolygon | None:
        verts = self.vertices_at(t)
        if verts is None:
            return None
        return self.poly if verts is self.poly.vertices else ConvexPolygon(verts)


def inner_parallel(poly: ConvexPolygon, t: float) -> ConvexPolygon | None:
    """Inner parallel set at distance t >= 0; None once the body vanishes."""
    if t < 0:
        raise DegenerateInput("offset distance must be nonnegative")
    if t == 0.0:
        return poly
    return OffsetMachine(poly).polygon_at(t)


def inner_parallel_area(poly: ConvexPolygon, t: float) -> float:
    """Area of the inner parallel set (0 once empty); avoids reconstruction."""
    return OffsetMachine(poly).area_at(t)


def _edge_vectors_from_lowest(poly: ConvexPolygon):
    """Edge vectors in CCW order starting at the lowest (then leftmost) vertex."""
    v = poly.vertices
    start = int(np.lexsort((v[:, 0], v[:, 1]))[0])
    v = np.roll(v, -start, axis=0)
    return v[0], np.roll(v, -1, axis=0) - v


def minkowski_sum(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Minkowski sum by merging the two edge fans (O(n + m))."""
    p0, pe = _edge_vectors_from_lowest(p)
    q0, qe = _edge_vectors_from_lowest(q)

    def keyed(edges):
        ang = np.mod(np.arctan2(edges[:, 1], edges[:, 0]), 2.0 * np.pi)
        return list(zip(ang, map(np.asarray, edges)))

    ep, eq = keyed(pe), keyed(qe)
    merged: list[np.ndarray] = []
    i = j = 0
    while i < len(ep) or j < len(eq):
        if j >= len(eq):
            take = ep[i][1]; i += 1
        elif i >= len(ep):
            take = eq[j][1]; j += 1
        elif abs(ep[i][0] - eq[j][0]) < 1e-12:
            take = ep[i][1] + eq[j][1]; i += 1; j += 1
        elif ep[i][0] < eq[j][0]:
            take = ep[i][1]; i += 1
        else:
            take = eq[j][1]; j += 1
        merged.append(take)
    verts = (p0 + q0) + np.concatenate(([np.zeros(2)], np.cumsum(merged[:-1], axis=0)))
    scale = float(np.max(np.abs(verts))) or 1.0
    verts = _strictify(verts, scale)
    if verts is None:
        raise DegenerateInput("degenerate Minkowski sum")
    return ConvexPolygon(verts)


def interpolate(p: ConvexPolygon, q: ConvexPolygon, t: float) -> ConvexPolygon:
    """Minkowski interpolation t*p + (1-t)*q for t in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise DegenerateInput("interpolation parameter must lie in [0, 1]")
    if t == 0.0:
        return q
    if t == 1.0:
        return p
    return minkowski_sum(p.scale(t), q.scale(1.0 - t))


def dilate(poly: ConvexPolygon, t: float, arc_segments: int = 4096) -> ConvexPolygon:
    """Polygonal approximation of poly + t*B1 (outer parallel body).

    Every vertex arc is replaced by inscribed chords subtending at most
    2*pi/arc_segments, so the result is contained in the true dilation; the
    area deficit is at most (pi*t^2/6) * (2*pi/arc_segments)^2.
    """
    if t <= 0:
        raise DegenerateInput("dilation radius must be positive")
    if arc_segments < 8:
        raise DegenerateInput("arc_segments must be at least 8")
    v = poly.vertices
    ns = poly.edge_normals
    step = 2.0 * np.pi / arc_segments
    angles = np.arctan2(ns[:, 1], ns[:, 0])
    pieces = []
    for i in range(len(v)):
        a_prev = angles[i - 1]
        a_here = angles[i]
        turn = np.mod(a_here - a_prev, 2.0 * np.pi)
        k = max(1, int(np.ceil(turn / step)))
        phis = a_prev + turn * np.arange(k + 1) / k
        pieces.append(v[i] + t * np.column_stack((np.cos(phis), np.sin(phis))))
    verts = np.concatenate(pieces)
    scale = float(np.max(np.abs(verts))) or 1.0
    verts = _strictify(verts, scale)
    if verts is None:
        raise DegenerateInput("degenerate dilation")
    return ConvexPolygon(verts)


def form_body(poly: ConvexPolygon) -> ConvexPolygon:
    """Intersection of {x . u <= 1} over the polygon's edge outward normals."""
    planes = [HalfPlane(n, 1.0) for n in poly.edge_normals]
    result = halfplane_intersection(planes)
    if result is None:
        raise DegenerateInput("form body has empty interior")
    return result


def polygon_to_json(poly: ConvexPolygon) -> str:
    return json.dumps({"vertices": [[x, y] for x, y in poly.vertices.tolist()]})


def polygon_from_json(text: str) -> ConvexPolygon:
    """Parse {"vertices": [[x, y], ...]}, validating all polygon invariants."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolygonJsonError("bad-json", f"not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise PolygonJsonError("missing-vertices", "document must be an object with a 'vertices' key")
    raw = doc["vertices"]
    if (not isinstance(raw, list) or len(raw) < 3
            or not all(isinstance(p, list) and len(p) == 2 for p in raw)):
        raise PolygonJsonError("bad-vertex-list", "'vertices' must be a list of [x, y] pairs, length >= 3")
    try:
        return ConvexPolygon(np.array(raw, dtype=float))
    except (DegenerateInput, ValueError) as exc:
        raise PolygonJsonError("not-convex", str(exc)) from exc
