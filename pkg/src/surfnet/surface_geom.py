"""Plane representations of surfaces and rotation numbers of closed curves.

A network on a surface is drawn inside a fundamental domain.  For genus 0 the
domain is the plane region bounded by the external boundary circle; for genus
``g > 0`` it is a ``4g``-gon whose sides are glued by the word
``a1 b1 a1- b1- ... ag bg ag- bg-``.  The boundary of the cut surface ``T`` is
supplied explicitly as a directed closed polyline.

The closed curve of a path runs along the path and returns along ``dT``.
Every time the curve leaves the domain through a side, it walks the polygon
sides clockwise from the exit point to the matching entry point.  Rotation
numbers are sums of polyline turning angles; the tangent of the smoothed
curve has the same degree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateTurn, GeometryError, NonNormalCurve

COINCIDE_TOL = 1e-9
INTEGRAL_TOL = 1e-6
TURN_TOL = 1e-6

__all__ = [
    "PlaneRepresentation",
    "EdgeDrawing",
    "Crossing",
    "ClosedCurve",
    "assemble_curve",
    "rotation_number",
    "turning_angles",
    "self_intersection_count",
    "boundary_T_rotation",
    "reverse_direction_parity",
    "signed_area",
]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _lerp(p, q, u):
    return (p[0] + (q[0] - p[0]) * u, p[1] + (q[1] - p[1]) * u)


def signed_area(points):
    """Shoelace area; positive for counterclockwise polygons."""
    a = 0.0
    n = len(points)
    for k in range(n):
        a += _cross(points[k], points[(k + 1) % n])
    return a / 2


def side_pairing(labels):
    """Map each side index to the index of the side it is glued to."""
    pos = {lab: k for k, lab in enumerate(labels)}
    pairing = {}
    for k, lab in enumerate(labels):
        other = lab[:-1] if lab.endswith("-") else lab + "-"
        if other not in pos:
            raise GeometryError(f"side {lab!r} has no partner {other!r}")
        pairing[k] = pos[other]
    return pairing


def standard_side_labels(genus):
    labels = []
    for k in range(1, genus + 1):
        labels += [f"a{k}", f"b{k}", f"a{k}-", f"b{k}-"]
    return labels


@dataclass(frozen=True)
class Crossing:
    """The curve leaves through ``exit_side`` and comes back through ``entry_side``.

    Positions are fractions along each side in the polygon's counterclockwise
    traversal.
    """

    exit_side: int
    exit_frac: float
    entry_side: int
    entry_frac: float

    def reversed(self):
        return Crossing(self.entry_side, self.entry_frac, self.exit_side, self.exit_frac)


@dataclass
class PlaneRepresentation:
    genus: int
    boundary_T: list
    boundary_positions: dict
    domain_polygon: list = field(default_factory=list)
    side_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.boundary_T = [tuple(map(float, p)) for p in self.boundary_T]
        self.domain_polygon = [tuple(map(float, p)) for p in self.domain_polygon]
        if self.genus > 0 and not self.side_labels:
            self.side_labels = standard_side_labels(self.genus)
        pts = self.boundary_T
        if len(pts) < 3:
            raise GeometryError("boundary_T needs at least three points")
        seg = [_dist(pts[k], pts[(k + 1) % len(pts)]) for k in range(len(pts))]
        if min(seg) <= COINCIDE_TOL:
            raise GeometryError("boundary_T has coincident consecutive points")
        self._cum = np.concatenate([[0.0], np.cumsum(seg)])
        self.length = float(self._cum[-1])
        self._pairing = side_pairing(self.side_labels) if self.genus > 0 else {}

    # -- dT parameterization ----------------------------------------------------
    def point_at(self, t):
        t = t % 1.0
        s = t * self.length
        k = int(np.searchsorted(self._cum, s, side="right")) - 1
        k = min(max(k, 0), len(self.boundary_T) - 1)
        seglen = self._cum[k + 1] - self._cum[k]
        u = (s - self._cum[k]) / seglen
        p, q = self.boundary_T[k], self.boundary_T[(k + 1) % len(self.boundary_T)]
        return _lerp(p, q, u)

    def tangent_at(self, t):
        s = (t % 1.0) * self.length
        k = int(np.searchsorted(self._cum, s, side="right")) - 1
        k = min(max(k, 0), len(self.boundary_T) - 1)
        p, q = self.boundary_T[k], self.boundary_T[(k + 1) % len(self.boundary_T)]
        d = _sub(q, p)
        n = math.hypot(*d)
        return (d[0] / n, d[1] / n)

    def vertex_params(self):
        """Parameter of every polyline vertex of dT."""
        return [float(c) / self.length for c in self._cum[:-1]]

    def arc(self, t_from, t_to, forward=True):
        """Points of dT from ``phi(t_from)`` to ``phi(t_to)``.

        ``forward`` follows the chosen direction (increasing parameter), wrapping
        through ``phi(0) = phi(1)``; otherwise the opposite direction.  Equal
        endpoints yield the full loop.
        """
        t_from %= 1.0
        t_to %= 1.0
        params = self.vertex_params()
        if forward:
            span = (t_to - t_from) % 1.0 or 1.0
            offs = [((tv - t_from) % 1.0, k) for k, tv in enumerate(params)]
        else:
            span = (t_from - t_to) % 1.0 or 1.0
            offs = [((t_from - tv) % 1.0, k) for k, tv in enumerate(params)]
        mids = [self.boundary_T[k] for off, k in sorted(offs) if 0 < off < span]
        return [self.point_at(t_from)] + mids + [self.point_at(t_to)]

    def position(self, vertex):
        return self.boundary_positions[vertex]

    def ordered_boundary(self):
        return [v for v, _ in sorted(self.boundary_positions.items(), key=lambda kv: kv[1])]

    # -- fundamental polygon ----------------------------------------------------
    def side_points(self, side):
        m = len(self.domain_polygon)
        return self.domain_polygon[side], self.domain_polygon[(side + 1) % m]

    def point_on_side(self, side, frac):
        p, q = self.side_points(side)
        return _lerp(p, q, frac)

    def partner(self, side):
        return self._pairing[side]

    def clockwise_walk(self, crossing):
        """Polygon corners visited walking clockwise from exit point to entry point."""
        m = len(self.domain_polygon)
        s, s2 = crossing.exit_side, crossing.entry_side
        if s == s2:
            raise GeometryError("a side is never glued to itself")
        count = (s - s2) % m
        return [self.domain_polygon[(s - k) % m] for k in range(count)]

    def validate(self, boundary_order=None):
        if self.genus < 0:
            raise GeometryError("genus must be nonnegative")
        if self.genus > 0:
            m = len(self.domain_polygon)
            if m != 4 * self.genus:
                raise GeometryError(f"genus {self.genus} needs a {4 * self.genus}-gon, got {m} sides")
            if len(self.side_labels) != m:
                raise GeometryError("side label count does not match polygon")
            if signed_area(self.domain_polygon) <= 0:
                raise GeometryError("domain polygon must be listed counterclockwise")
            for k, k2 in self._pairing.items():
                l1 = _dist(*self.side_points(k))
                l2 = _dist(*self.side_points(k2))
                if abs(l1 - l2) > 1e-6 * max(l1, l2):
                    raise GeometryError(f"glued sides {k} and {k2} differ in length")
            for p in self.boundary_T:
                if not _inside_convexish(p, self.domain_polygon):
                    raise GeometryError("boundary_T must lie inside the fundamental domain")
        params = sorted(self.boundary_positions.values())
        if any(b - a <= COINCIDE_TOL for a, b in zip(params, params[1:])):
            raise GeometryError("boundary positions must be distinct")
        if any(not 0.0 <= t < 1.0 for t in params):
            raise GeometryError("boundary positions must lie in [0, 1)")
        if boundary_order is not None and self.ordered_boundary() != list(boundary_order):
            raise GeometryError("boundary positions disagree with the declared boundary order")
        if count_crossings(self.boundary_T) != 0:
            raise GeometryError("boundary_T is not simple")


def _inside_convexish(p, polygon):
    # winding-number point-in-polygon, boundary counts as outside
    wn = 0
    n = len(polygon)
    for k in range(n):
        a, b = polygon[k], polygon[(k + 1) % n]
        c = _cross(_sub(b, a), _sub(p, a))
        if abs(c) <= COINCIDE_TOL * max(1.0, _dist(a, b)) and \
                min(a[0], b[0]) - COINCIDE_TOL <= p[0] <= max(a[0], b[0]) + COINCIDE_TOL and \
                min(a[1], b[1]) - COINCIDE_TOL <= p[1] <= max(a[1], b[1]) + COINCIDE_TOL:
            return False
        if a[1] <= p[1] < b[1] and c > 0:
            wn += 1
        elif b[1] <= p[1] < a[1] and c < 0:
            wn -= 1
    return wn != 0


@dataclass
class EdgeDrawing:
    """An edge drawn in the domain as open polylines separated by side crossings.

    ``pieces[0][0]`` is the tail and ``pieces[-1][-1]`` the head; piece ``k``
    ends on ``crossings[k].exit_side`` and piece ``k + 1`` starts on the glued
    entry side.
    """

    pieces: list
    crossings: list = field(default_factory=list)

    def __post_init__(self):
        self.pieces = [[tuple(map(float, p)) for p in piece] for piece in self.pieces]
        if len(self.crossings) != len(self.pieces) - 1:
            raise GeometryError("need exactly one crossing between consecutive pieces")

    @property
    def start(self):
        return self.pieces[0][0]

    @property
    def end(self):
        return self.pieces[-1][-1]

    def reversed(self):
        return EdgeDrawing([list(reversed(p)) for p in reversed(self.pieces)],
                           [c.reversed() for c in reversed(self.crossings)])

    def concat(self, other):
        """Join at the shared vertex (``self.end`` must equal ``other.start``)."""
        if _dist(self.end, other.start) > 1e-7:
            raise GeometryError(f"drawings do not meet: {self.end} vs {other.start}")
        joined = self.pieces[-1] + other.pieces[0][1:]
        return EdgeDrawing(self.pieces[:-1] + [joined] + other.pieces[1:],
                           self.crossings + other.crossings)

    def with_start(self, point):
        pieces = [list(p) for p in self.pieces]
        pieces[0][0] = tuple(point)
        return EdgeDrawing(pieces, list(self.crossings))

    def first_direction(self):
        """Unit direction leaving the tail."""
        return _first_dir(self.pieces[0])

    def last_direction(self):
        """Unit direction arriving at the head."""
        return _first_dir(list(reversed(self.pieces[-1])), negate=True)

    def validate(self, rep):
        for piece in self.pieces:
            if len(piece) < 2:
                raise GeometryError("every drawing piece needs two points")
        for k, c in enumerate(self.crossings):
            if rep.genus == 0:
                raise GeometryError("genus-0 drawings cannot cross polygon sides")
            if rep.partner(c.exit_side) != c.entry_side:
                raise GeometryError(f"sides {c.exit_side} and {c.entry_side} are not glued")
            if abs((1.0 - c.exit_frac) - c.entry_frac) > 1e-7:
                raise GeometryError("exit and entry positions do not match under the gluing")
            exit_pt = rep.point_on_side(c.exit_side, c.exit_frac)
            entry_pt = rep.point_on_side(c.entry_side, c.entry_frac)
            if _dist(exit_pt, self.pieces[k][-1]) > 1e-7:
                raise GeometryError("piece does not end at its exit point")
            if _dist(entry_pt, self.pieces[k + 1][0]) > 1e-7:
                raise GeometryError("piece does not start at its entry point")
            for side, d in ((c.exit_side, _first_dir(list(reversed(self.pieces[k])), True)),
                            (c.entry_side, _first_dir(self.pieces[k + 1]))):
                p, q = rep.side_points(side)
                sd = _sub(q, p)
                sd = (sd[0] / math.hypot(*sd), sd[1] / math.hypot(*sd))
                if abs(_cross(d, sd)) < 1e-6:
                    raise GeometryError("drawing runs parallel to a polygon side")


def _first_dir(points, negate=False):
    p0 = points[0]
    for q in points[1:]:
        d = _sub(q, p0)
        n = math.hypot(*d)
        if n > COINCIDE_TOL:
            d = (d[0] / n, d[1] / n)
            return (-d[0], -d[1]) if negate else d
    raise GeometryError("degenerate drawing piece")


@dataclass
class ClosedCurve:
    points: list

    def __post_init__(self):
        self.points = _clean_closed([tuple(map(float, p)) for p in self.points])

    def as_array(self):
        return np.asarray(self.points, dtype=float)


def _clean_closed(points):
    out = []
    for p in points:
        if out and _dist(out[-1], p) <= COINCIDE_TOL:
            continue
        out.append(p)
    while len(out) > 1 and _dist(out[0], out[-1]) <= COINCIDE_TOL:
        out.pop()
    return out


def concat_drawings(drawings):
    if not drawings:
        return None
    d = drawings[0]
    for nxt in drawings[1:]:
        d = d.concat(nxt)
    return d


def assemble_curve(rep, edge_path, start, end, forward=True):
    """Closed curve of a path: the drawings, then dT from ``end`` back to ``start``.

    ``edge_path`` is a list of :class:`EdgeDrawing` in traversal order (empty
    for the empty path, whose curve is the full loop of dT).  ``forward=False``
    returns along dT against the chosen direction.
    """
    t_start = rep.position(start)
    t_end = rep.position(end)
    pts = []
    if edge_path:
        d = concat_drawings(edge_path)
        if _dist(d.start, rep.point_at(t_start)) > 1e-7:
            raise GeometryError(f"path does not start at boundary vertex {start}")
        if _dist(d.end, rep.point_at(t_end)) > 1e-7:
            raise GeometryError(f"path does not end at boundary vertex {end}")
        for k, piece in enumerate(d.pieces):
            pts.extend(piece)
            if k < len(d.crossings):
                pts.extend(rep.clockwise_walk(d.crossings[k]))
        pts.extend(rep.arc(t_end, t_start, forward)[1:])
    else:
        if start != end:
            raise GeometryError("empty path must start and end at the same vertex")
        pts = rep.arc(t_start, t_start, forward)
    return ClosedCurve(pts)


def turning_angles(curve):
    pts = curve.as_array() if isinstance(curve, ClosedCurve) else np.asarray(curve, float)
    if len(pts) < 2:
        raise GeometryError("closed curve needs at least two points")
    d_in = pts - np.roll(pts, 1, axis=0)
    d_out = np.roll(pts, -1, axis=0) - pts
    cr = d_in[:, 0] * d_out[:, 1] - d_in[:, 1] * d_out[:, 0]
    dt = d_in[:, 0] * d_out[:, 0] + d_in[:, 1] * d_out[:, 1]
    return np.arctan2(cr, dt)


def rotation_number(curve):
    """Tangent degree of a closed polyline; counterclockwise simple curves give +1."""
    ang = turning_angles(curve)
    worst = np.min(np.abs(np.pi - np.abs(ang)))
    if worst < TURN_TOL:
        raise DegenerateTurn("turning angle too close to +-pi (cusp)")
    total = float(np.sum(ang)) / (2 * math.pi)
    r = round(total)
    if abs(total - r) > INTEGRAL_TOL:
        raise GeometryError(f"rotation sum {total} is not integral")
    return int(r)


def _segment_hits(pts):
    """All proper intersections between non-adjacent segments of a closed polyline.

    Returns a list of (i, j, point, u, v) with segment parameters u, v.
    """
    n = len(pts)
    a = pts
    b = np.roll(pts, -1, axis=0)
    d = b - a
    hits = []
    for i in range(n - 2):
        js = np.arange(i + 2, n)
        if i == 0:
            js = js[js != n - 1]
        if js.size == 0:
            continue
        p, r = a[i], d[i]
        q, s = a[js], d[js]
        denom = r[0] * s[:, 1] - r[1] * s[:, 0]
        qp = q - p
        with np.errstate(divide="ignore", invalid="ignore"):
            u = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
            v = (qp[:, 0] * r[1] - qp[:, 1] * r[0]) / denom
        parallel = np.abs(denom) <= 1e-14 * (np.hypot(*r) * np.hypot(s[:, 0], s[:, 1]) + 1e-300)
        if np.any(parallel):
            # collinear overlap counts as tangential contact
            dist = np.abs(qp[:, 0] * r[1] - qp[:, 1] * r[0]) / max(np.hypot(*r), 1e-300)
            for k in np.nonzero(parallel & (dist <= COINCIDE_TOL))[0]:
                j = js[k]
                t0 = _dot(tuple(a[j] - p), tuple(r)) / _dot(tuple(r), tuple(r))
                t1 = _dot(tuple(b[j] - p), tuple(r)) / _dot(tuple(r), tuple(r))
                if max(t0, t1) >= -1e-12 and min(t0, t1) <= 1 + 1e-12:
                    hits.append((i, int(j), tuple(p), None, None))
        eps = 1e-12
        mask = (~parallel) & (u >= -eps) & (u <= 1 + eps) & (v >= -eps) & (v <= 1 + eps)
        for k in np.nonzero(mask)[0]:
            pt = p + u[k] * r
            hits.append((i, int(js[k]), (float(pt[0]), float(pt[1])), float(u[k]), float(v[k])))
    return hits


def count_crossings(points):
    """Number of intersections between non-adjacent segments (no normality checks)."""
    pts = np.asarray(points, dtype=float)
    return len(_segment_hits(pts))


def self_intersection_count(curve):
    """Number of self-intersection points of a normal closed polyline.

    Raises :class:`NonNormalCurve` for tangential contacts, intersections at
    polyline vertices, and points where three or more strands meet.
    """
    pts = curve.as_array() if isinstance(curve, ClosedCurve) else np.asarray(curve, float)
    hits = _segment_hits(pts)
    seen = []
    tol = 1e-9
    for i, j, pt, u, v in hits:
        if u is None:
            raise NonNormalCurve(f"segments {i} and {j} overlap")
        if min(u, 1 - u, v, 1 - v) < tol:
            raise NonNormalCurve(f"self-intersection at a polyline vertex near {pt}")
        for q in seen:
            if _dist(q, pt) <= COINCIDE_TOL:
                raise NonNormalCurve(f"multiple point at {pt}")
        seen.append(pt)
    # adjacent segments folding back onto each other are also tangential
    ang = turning_angles(pts)
    if np.min(np.abs(np.pi - np.abs(ang))) < TURN_TOL:
        raise NonNormalCurve("cusp")
    return len(seen)


def boundary_T_rotation(rep):
    """Rotation number of dT traced once (odd for every valid representation)."""
    return rotation_number(ClosedCurve(rep.boundary_T))


def reverse_direction_parity(rep, edge_path, start, end):
    """Rotation numbers of the curve returning with and against the dT direction."""
    r = rotation_number(assemble_curve(rep, edge_path, start, end, forward=True))
    r2 = rotation_number(assemble_curve(rep, edge_path, start, end, forward=False))
    if (r - r2) % 2:
        raise GeometryError(f"reverse-direction rotation parity mismatch: {r} vs {r2}")
    return r, r2
