"""Regenerate the bundled ``.net`` fixtures.

    python3 tools/make_fixtures.py [outdir]

Disk and annulus drawings are built directly.  Torus drawings are built in
the universal cover and clipped against a lattice window, so one network can
be written for several choices of generators.
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

from surfnet.network import BOUNDARY, INTERIOR, Edge, SurfaceNetwork
from surfnet.netfile import format_network
from surfnet.surface_geom import Crossing, EdgeDrawing, PlaneRepresentation

OUT = Path(__file__).resolve().parent.parent / "src" / "surfnet" / "fixtures"


def polar(r, deg, center=(0.0, 0.0)):
    a = math.radians(deg)
    return (center[0] + r * math.cos(a), center[1] + r * math.sin(a))


def circle_points(r, start_deg, n, ccw=True, center=(0.0, 0.0)):
    step = 360.0 / n if ccw else -360.0 / n
    return [polar(r, start_deg + k * step, center) for k in range(n)]


def params_of(points, indices):
    """Arc-length parameters of selected polyline vertices."""
    cum = [0.0]
    n = len(points)
    for k in range(n):
        p, q = points[k], points[(k + 1) % n]
        cum.append(cum[-1] + math.dist(p, q))
    return {name: cum[k] / cum[-1] for name, k in indices.items()}


def straight(p, q):
    return EdgeDrawing([[p, q]])


def build(vertices, coords, edge_list, sources, rep, drawings):
    edges = [Edge(eid, t, h, var) for eid, t, h, var in edge_list]
    order = rep.ordered_boundary()
    net = SurfaceNetwork(vertices, order, sources, edges, coords, rep, drawings)
    net.validate()
    return net


# -- disk ----------------------------------------------------------------------

def disk_rep(positions_deg, n=64, start=90.0):
    pts = circle_points(1.0, start, n)
    idx = {v: round(((deg - start) % 360) / (360 / n)) for v, deg in positions_deg.items()}
    return pts, PlaneRepresentation(0, pts, params_of(pts, idx))


FIG7_EDGES = [
    ("e1", "1", "a", "x1"),
    ("e2", "b", "2", "x2"),
    ("e3", "3", "c", "x3"),
    ("e4", "d", "4", "x4"),
    ("e5", "a", "b", "x5"),
    ("e6", "b", "c", "x6"),
    ("e7", "c", "d", "x7"),
    ("e8", "d", "a", "x8"),
]
ANGLES = {"1": 135, "2": 225, "3": 315, "4": 45}
INNER = {"a": "1", "b": "2", "c": "3", "d": "4"}


def fig7():
    pts, rep = disk_rep(ANGLES)
    coords = {v: rep.point_at(rep.boundary_positions[v]) for v in ANGLES}
    coords.update({w: polar(0.5, ANGLES[v]) for w, v in INNER.items()})
    vertices = {v: BOUNDARY for v in ANGLES} | {w: INTERIOR for w in INNER}
    drawings = {eid: straight(coords[t], coords[h]) for eid, t, h, _ in FIG7_EDGES}
    return build(vertices, coords, FIG7_EDGES, ["1", "3"], rep, drawings)


def fig10():
    pts, rep = disk_rep(ANGLES)
    coords = {v: rep.point_at(rep.boundary_positions[v]) for v in ANGLES}
    coords["v"] = (0.0, 0.0)
    vertices = {v: BOUNDARY for v in ANGLES} | {"v": INTERIOR}
    edge_list = [("e1", "1", "v", "x1"), ("e2", "v", "2", "x2"),
                 ("e3", "3", "v", "x3"), ("e4", "v", "4", "x4")]
    drawings = {eid: straight(coords[t], coords[h]) for eid, t, h, _ in edge_list}
    return build(vertices, coords, edge_list, ["1", "3"], rep, drawings)


# -- annulus ---------------------------------------------------------------------

def keyhole(cut_deg, r_out=2.0, r_in=1.0, width=0.05, n=96):
    """dT of the annulus cut along a slit at angle ``cut_deg``.

    Outer circle counterclockwise, in along the slit, inner circle clockwise,
    back out.
    """
    a_out = math.degrees(math.asin(width / r_out))
    a_in = math.degrees(math.asin(width / r_in))
    pts = []
    step = 360.0 / n
    deg = cut_deg + a_out
    end = cut_deg + 360.0 - a_out
    while deg < end - 1e-9:
        pts.append(polar(r_out, deg))
        deg = (math.floor(deg / step + 1e-9) + 1) * step
    pts.append(polar(r_out, end))
    deg = cut_deg - a_in
    end = cut_deg - 360.0 + a_in
    pts.append(polar(r_in, deg))
    deg = (math.ceil(deg / step - 1e-9) - 1) * step
    while deg > end + 1e-9:
        pts.append(polar(r_in, deg))
        deg -= step
    pts.append(polar(r_in, end))
    return pts


def index_near(pts, p):
    best = min(range(len(pts)), key=lambda k: math.dist(pts[k], p))
    if math.dist(pts[best], p) > 1e-9:
        raise ValueError(f"{p} is not a vertex of the polyline")
    return best


def fig5(cut_deg, transform=None):
    pts = keyhole(cut_deg)
    p1, p2 = polar(2.0, 0.0), polar(1.0, 180.0)
    path = [p1] + [polar(1.5, d) for d in range(10, 171, 5)] + [p2]
    if transform is not None:
        pts = [transform(p) for p in pts]
        p1, p2 = transform(p1), transform(p2)
        path = [transform(p) for p in densify(path, 40)]
    idx = {"1": index_near(pts, p1), "2": index_near(pts, p2)}
    rep = PlaneRepresentation(0, pts, params_of(pts, idx))
    coords = {"1": p1, "2": p2}
    vertices = {"1": BOUNDARY, "2": BOUNDARY}
    edge_list = [("e1", "1", "2", "x1")]
    return build(vertices, coords, edge_list, ["1"], rep, {"e1": EdgeDrawing([path])})


def densify(path, k):
    out = [path[0]]
    for p, q in zip(path, path[1:]):
        for s in range(1, k + 1):
            u = s / k
            out.append((p[0] + (q[0] - p[0]) * u, p[1] + (q[1] - p[1]) * u))
    return out


def invert(p):
    """``z -> 2 / z``: orientation preserving, swaps the two boundary circles."""
    x, y = p
    r2 = x * x + y * y
    return (2 * x / r2, -2 * y / r2)


def refine_circle_keyhole(cut_deg):
    # the image of a sampled circle is a circle; resample densely before mapping
    return fig5(cut_deg, transform=invert)


# -- torus -------------------------------------------------------------------------

class LatticeWindow:
    """Fundamental parallelogram ``origin + s*a + t*b`` with ``0 <= s, t < 1``."""

    def __init__(self, a, b, origin):
        self.a, self.b, self.origin = a, b, origin
        det = a[0] * b[1] - a[1] * b[0]
        if det <= 0:
            raise ValueError("generators must be positively oriented")
        self.det = det

    def to_lattice(self, p):
        x, y = p[0] - self.origin[0], p[1] - self.origin[1]
        a, b = self.a, self.b
        return ((x * b[1] - y * b[0]) / self.det, (a[0] * y - a[1] * x) / self.det)

    def to_plane(self, st):
        s, t = st
        return (self.origin[0] + s * self.a[0] + t * self.b[0],
                self.origin[1] + s * self.a[1] + t * self.b[1])

    def corners(self):
        return [self.to_plane(c) for c in ((0, 0), (1, 0), (1, 1), (0, 1))]

    def reduce(self, p):
        s, t = self.to_lattice(p)
        return self.to_plane((s - math.floor(s), t - math.floor(t)))

    def clip(self, cover_path):
        """Break a polyline in the cover at lattice lines; returns an EdgeDrawing."""
        st = [self.to_lattice(p) for p in cover_path]
        pieces = [[]]
        crossings = []
        shift = [math.floor(st[0][0]), math.floor(st[0][1])]

        def local(q):
            return self.to_plane((q[0] - shift[0], q[1] - shift[1]))

        pieces[0].append(local(st[0]))
        for p, q in zip(st, st[1:]):
            cuts = []
            for axis in (0, 1):
                lo, hi = sorted((p[axis], q[axis]))
                for n in range(math.floor(lo) + 1, math.ceil(hi)):
                    u = (n - p[axis]) / (q[axis] - p[axis])
                    if 1e-12 < u < 1 - 1e-12:
                        cuts.append((u, axis, q[axis] > p[axis]))
            for u, axis, up in sorted(cuts):
                pt = (p[0] + (q[0] - p[0]) * u, p[1] + (q[1] - p[1]) * u)
                ex = local(pt)
                pieces[-1].append(ex)
                other = (pt[1] - shift[1]) if axis == 0 else (pt[0] - shift[0])
                # sides: 0 bottom (t=0), 1 right (s=1), 2 top (t=1), 3 left (s=0)
                if axis == 0 and up:
                    c = Crossing(1, other, 3, 1 - other)
                    shift[0] += 1
                elif axis == 0:
                    c = Crossing(3, 1 - other, 1, other)
                    shift[0] -= 1
                elif up:
                    c = Crossing(2, 1 - other, 0, other)
                    shift[1] += 1
                else:
                    c = Crossing(0, other, 2, 1 - other)
                    shift[1] -= 1
                crossings.append(c)
                pieces.append([local(pt)])
            pieces[-1].append(local(q))
        return EdgeDrawing(pieces, crossings)


HOLE = (0.5, 0.5)
HOLE_R = 0.1
RING_R = 0.28

TORUS_EDGES = [
    ("e1", "1", "a", "x1"),
    ("e2", "b", "2", "x2"),
    ("e3", "3", "c", "x3"),
    ("e4", "d", "4", "x4"),
    ("e5", "a", "b", "x5"),
    ("e6", "b", "f", "x6"),
    ("e7", "f", "c", "x7"),
    ("e8", "c", "d", "x8"),
    ("e9", "d", "g", "x9"),
    ("e10", "g", "a", "x10"),
    ("e11", "f", "g", "x11"),
]


def torus_cover():
    """Vertex positions and edge polylines in the universal cover."""
    P = {v: polar(HOLE_R, ANGLES[v], HOLE) for v in ANGLES}
    P.update({w: polar(RING_R, ANGLES[v], HOLE) for w, v in INNER.items()})
    a, d = P["a"], P["d"]
    P["f"] = (0.5, 0.5 - RING_R + 0.06)
    g_cover = (1.1, a[1])  # g sits on the wrap from d to a + (1, 0)
    P["g"] = (g_cover[0] - 1.0, g_cover[1])
    paths = {
        "e1": [P["1"], P["a"]],
        "e2": [P["b"], P["2"]],
        "e3": [P["3"], P["c"]],
        "e4": [P["d"], P["4"]],
        "e5": [P["a"], P["b"]],
        "e6": [P["b"], P["f"]],
        "e7": [P["f"], P["c"]],
        "e8": [P["c"], P["d"]],
        "e9": [d, g_cover],
        "e10": [P["g"], P["a"]],
        "e11": [P["f"], (P["g"][0], P["g"][1] - 1.0)],
    }
    return P, paths


def torus(a_gen, b_gen, origin):
    win = LatticeWindow(a_gen, b_gen, origin)
    P, paths = torus_cover()
    # translate so the hole sits in the window, then reduce everything else
    hole_win = win.reduce(HOLE)
    off = (hole_win[0] - HOLE[0], hole_win[1] - HOLE[1])

    def move(p):
        return (p[0] + off[0], p[1] + off[1])

    pts = circle_points(HOLE_R, 90.0, 64, center=move(HOLE))
    idx = {v: round(((deg - 90.0) % 360) / (360 / 64)) for v, deg in ANGLES.items()}
    corners = win.corners()
    rep = PlaneRepresentation(1, pts, params_of(pts, idx), corners)
    coords = {}
    for v in ANGLES:
        coords[v] = rep.point_at(rep.boundary_positions[v])
    for v in ("a", "b", "c", "d", "f", "g"):
        coords[v] = win.reduce(move(P[v]))
    drawings = {}
    for eid, path in paths.items():
        moved = [move(p) for p in path]
        start = moved[0]
        rs = win.reduce(start)
        shift = (rs[0] - start[0], rs[1] - start[1])
        moved = [(p[0] + shift[0], p[1] + shift[1]) for p in moved]
        drawings[eid] = win.clip(moved)
    # boundary vertices use exact dT points
    for eid, t, h, _ in TORUS_EDGES:
        d = drawings[eid]
        if t in ANGLES:
            d = d.with_start(coords[t])
        if h in ANGLES:
            d = d.reversed().with_start(coords[h]).reversed()
        drawings[eid] = d
    vertices = {v: BOUNDARY for v in ANGLES}
    vertices.update({v: INTERIOR for v in ("a", "b", "c", "d", "f", "g")})
    return build(vertices, coords, TORUS_EDGES, ["1", "3"], rep, drawings)


FIXTURES = {
    "fig7": (fig7, "perfectly oriented network on the disk, two sources and four boundary vertices"),
    "fig10": (fig10, "network on the disk with a four-valent vertex; not perfectly oriented"),
    "fig5-left": (lambda: fig5(270.0), "annulus; the cut avoids the edge"),
    "fig5-right": (lambda: fig5(90.0), "annulus; the cut crosses the edge once"),
    "annulus-alt-representation": (lambda: refine_circle_keyhole(270.0),
                                   "fig5-left after z -> 2/z, which swaps the boundary circles"),
    "torus-basic": (lambda: torus((1.0, 0.0), (0.0, 1.0), (0.0, 0.0)),
                    "torus with one hole, unit square domain"),
    "torus-alt-generators": (lambda: torus((1.0, 0.0), (2.0, 1.0), (-1.0, 0.0)),
                             "torus-basic drawn with generators (1,0), (2,1)"),
    "torus-even-generators": (lambda: torus((1.0, 0.0), (1.0, 1.0), (-0.5, 0.0)),
                              "torus-basic drawn with generators (1,0), (1,1); changes some parities"),
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else OUT
    out.mkdir(parents=True, exist_ok=True)
    for name, (fn, note) in FIXTURES.items():
        net = fn()
        (out / f"{name}.net").write_text(format_network(net, comment=f"{name}: {note}"))
        print(f"wrote {name}.net ({len(net.edges)} edges)")


if __name__ == "__main__":
    main()
