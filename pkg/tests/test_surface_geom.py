import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import normal_polylines, regular_polygon, seeded
from conftest import ALL_FIXTURES
from surfnet.boundary_measurement import RotationCache
from surfnet.errors import DegenerateTurn, GeometryError, NonNormalCurve
from surfnet.network import enumerate_paths
from surfnet.surface_geom import (
    ClosedCurve,
    Crossing,
    EdgeDrawing,
    PlaneRepresentation,
    assemble_curve,
    boundary_T_rotation,
    reverse_direction_parity,
    rotation_number,
    self_intersection_count,
)

FIGURE_EIGHT = [(0, 0), (1, 1), (2, 0), (1, -1), (0, 0.0001), (-1, 1), (-2, 0), (-1, -1)]


def figure_eight(n=40):
    # phase keeps polyline vertices off the crossing point
    ts = np.linspace(0, 2 * math.pi, n, endpoint=False) + 0.05
    return [(math.sin(t), math.sin(t) * math.cos(t)) for t in ts]


def disk_rep(n=32):
    circle = regular_polygon(n)
    return PlaneRepresentation(0, circle, {"1": 0.1, "2": 0.6})


def chord(rep):
    return EdgeDrawing([[rep.point_at(0.1), (0.0, 0.0), rep.point_at(0.6)]])


def test_regular_polygon_ccw():
    for n in (3, 4, 7, 50):
        assert rotation_number(ClosedCurve(regular_polygon(n))) == 1
        assert rotation_number(ClosedCurve(regular_polygon(n)[::-1])) == -1


def test_figure_eight():
    c = ClosedCurve(figure_eight())
    assert rotation_number(c) == 0
    assert self_intersection_count(c) == 1


def test_double_loop():
    ts = np.linspace(0, 4 * math.pi, 61, endpoint=False)
    pts = [((2 + math.cos(3 * t / 2)) * math.cos(t), (2 + math.cos(3 * t / 2)) * math.sin(t))
           for t in ts]
    c = ClosedCurve(pts)
    assert rotation_number(c) == 2
    assert self_intersection_count(c) % 2 == 1


def test_convex_has_no_crossings():
    assert self_intersection_count(ClosedCurve(regular_polygon(9))) == 0


def test_cusp_raises():
    with pytest.raises(DegenerateTurn):
        rotation_number(ClosedCurve([(0, 0), (2, 0), (1, 0), (1, 1)]))
    with pytest.raises(NonNormalCurve):
        # two loops touching at one point
        self_intersection_count(ClosedCurve([(0, 0), (1, 1), (1, -1), (0, 0.0), (-1, 1), (-1, -1)]))


def test_triple_point_raises():
    # three strands through the origin
    h = math.sqrt(3) / 2
    pts = [(-1, 0), (1, 0), (-0.5, -h), (0.5, h), (0.5, -h), (-0.5, h)]
    c = ClosedCurve(pts)
    with pytest.raises(NonNormalCurve):
        self_intersection_count(c)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_whitney_parity(seed):
    for pts, x, r in normal_polylines(seeded(seed), 3):
        assert (x + 1 - r) % 2 == 0


@given(st.integers(0, 2**32 - 1), st.floats(0.1, 10), st.floats(-math.pi, math.pi),
       st.tuples(st.floats(-5, 5), st.floats(-5, 5)))
@settings(max_examples=40, deadline=None)
def test_rotation_invariances(seed, scale, angle, shift):
    rng = seeded(seed)
    pts, _, r = normal_polylines(rng, 1)[0]
    k = rng.randrange(len(pts))
    assert rotation_number(ClosedCurve(pts[k:] + pts[:k])) == r
    c, s = math.cos(angle), math.sin(angle)
    moved = [(scale * (c * x - s * y) + shift[0], scale * (s * x + c * y) + shift[1]) for x, y in pts]
    assert rotation_number(ClosedCurve(moved)) == r
    assert rotation_number(ClosedCurve([(-x, y) for x, y in pts])) == -r


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_boundary_T_rotation_odd(net, name):
    r = boundary_T_rotation(net(name).geometry)
    assert r % 2 == 1
    assert r == 1


def test_disk_chord_curve():
    rep = disk_rep()
    c = assemble_curve(rep, [chord(rep)], "1", "2")
    assert self_intersection_count(c) == 0
    assert abs(rotation_number(c)) == 1
    r, r2 = reverse_direction_parity(rep, [chord(rep)], "1", "2")
    assert {r, r2} <= {1, -1} and (r - r2) % 2 == 0


def test_empty_path_is_full_loop():
    rep = disk_rep()
    assert rotation_number(assemble_curve(rep, [], "1", "1")) == 1
    with pytest.raises(GeometryError):
        assemble_curve(rep, [], "1", "2")


def test_endpoint_mismatch():
    rep = disk_rep()
    bad = EdgeDrawing([[(0.9, 0.0), (0.0, 0.0), rep.point_at(0.6)]])
    with pytest.raises(GeometryError):
        assemble_curve(rep, [bad], "1", "2")


def test_fig7_path_parity(net):
    n = net("fig7")
    (p,) = enumerate_paths(n, "1", "2", 3)
    r = RotationCache(n)(p.edges, "1", "2")
    # s_12 = 0 and B_12 has sign +, so r must be odd
    assert r % 2 == 1


@pytest.mark.parametrize("name", ["fig7", "fig5-left", "fig5-right", "torus-basic"])
def test_reverse_parity_on_fixture_paths(net, name):
    n = net(name)
    for i in n.sources:
        for j in n.boundary_order:
            for p in enumerate_paths(n, i, j, 10):
                reverse_direction_parity(n.geometry, [n.drawings[e] for e in p.edges], i, j)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_reverse_parity_random_disk_paths(seed):
    rng = seeded(seed)
    rep = PlaneRepresentation(0, regular_polygon(40), {"1": rng.uniform(0, 0.45),
                                                       "2": rng.uniform(0.55, 0.99)})
    a, b = rep.point_at(rep.position("1")), rep.point_at(rep.position("2"))
    mids = [(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)) for _ in range(rng.randint(0, 4))]
    d = EdgeDrawing([[a] + mids + [b]])
    try:
        r, r2 = reverse_direction_parity(rep, [d], "1", "2")
    except DegenerateTurn:
        return
    assert (r - r2) % 2 == 0


def test_torus_detour_is_clockwise(net):
    n = net("torus-basic")
    rep = n.geometry
    d = n.drawings["e9"]
    (c,) = d.crossings
    walk = rep.clockwise_walk(c)
    exit_pt = rep.point_on_side(c.exit_side, c.exit_frac)
    entry_pt = rep.point_on_side(c.entry_side, c.entry_frac)
    path = [exit_pt] + walk + [entry_pt]
    # every step runs along a polygon side, against the counterclockwise order
    poly = rep.domain_polygon
    m = len(poly)
    for k, corner in enumerate(walk):
        side = (c.exit_side - k) % m
        assert corner == poly[side]
    # closing the detour with a straight chord gives a clockwise loop
    area = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(path, path[1:] + path[:1])) / 2
    assert area < 0
    edges = _torus_path_through(n, "e9")
    curve = assemble_curve(rep, [n.drawings[e] for e in edges], "1", "2")
    for corner in walk:
        assert corner in curve.points


def _torus_path_through(n, eid):
    for p in enumerate_paths(n, "1", "2", 12):
        if eid in p.edges:
            return p.edges
    raise AssertionError("no path through " + eid)


def test_side_walk_rejects_self_gluing(net):
    rep = net("torus-basic").geometry
    with pytest.raises(GeometryError):
        rep.clockwise_walk(Crossing(0, 0.5, 0, 0.5))


def test_arc_directions():
    rep = disk_rep(8)
    fwd = rep.arc(0.1, 0.6)
    back = rep.arc(0.1, 0.6, forward=False)
    assert len(fwd) + len(back) == 8 + 4
    assert np.allclose(fwd[0], back[0]) and np.allclose(fwd[-1], back[-1])
    assert len(rep.arc(0.3, 0.3)) == 8 + 2


@pytest.mark.parametrize("pair", [("fig5-left", "annulus-alt-representation"),
                                  ("torus-basic", "torus-alt-generators")])
def test_representation_independence(net, pair):
    a, b = net(pair[0]), net(pair[1])
    ra, rb = RotationCache(a), RotationCache(b)
    count = 0
    for i in a.sources:
        for j in a.boundary_order:
            for p in enumerate_paths(a, i, j, 12):
                assert (ra(p.edges, i, j) - rb(p.edges, i, j)) % 2 == 0
                count += 1
    assert count > 0


def test_even_generators_break_independence(net):
    a, b = net("torus-basic"), net("torus-even-generators")
    ra, rb = RotationCache(a), RotationCache(b)
    diff = [p.edges for i in a.sources for j in a.boundary_order
            for p in enumerate_paths(a, i, j, 12)
            if (ra(p.edges, i, j) - rb(p.edges, i, j)) % 2]
    assert diff


def test_representation_validation():
    with pytest.raises(GeometryError):
        PlaneRepresentation(0, [(0, 0), (1, 0)], {})
    rep = PlaneRepresentation(0, regular_polygon(6), {"1": 0.5, "2": 0.2})
    with pytest.raises(GeometryError):
        rep.validate(["1", "2"])
    rep.validate(["2", "1"])
    bowtie = PlaneRepresentation(0, [(0, 0), (1, 1), (1, 0), (0, 1)], {"1": 0.1})
    with pytest.raises(GeometryError):
        bowtie.validate()
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    with pytest.raises(GeometryError):
        PlaneRepresentation(1, regular_polygon(6, 0.2, 0.1), {}, sq[::-1]).validate()
    with pytest.raises(GeometryError):
        PlaneRepresentation(1, [(5, 5), (6, 5), (6, 6)], {}, sq).validate()
