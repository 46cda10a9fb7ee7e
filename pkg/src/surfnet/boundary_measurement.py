"""Boundary measurement matrix, edge signs, and Plücker coordinates.

For a path ``P: i ~> j`` the boundary measurement counts ``wt(P)`` with sign
``(-1)^{s_ij + r_P + 1}``, where ``s_ij`` is the number of sources strictly
between ``i`` and ``j`` and ``r_P`` is the rotation number of the closed curve
formed by ``P`` and the arc of dT from ``j`` back to ``i``.

Signs per edge are a body sign times one half-sign at each boundary endpoint;
the recursive construction splits off the first source adjacent to an
interior vertex until no interior vertices are left.
"""
from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from dataclasses import dataclass, field

from .errors import (
    GeometryError,
    Inconsistent,
    InvalidNetwork,
    NoBoundarySource,
    NotPerfectlyOriented,
    SizeMismatch,
)
from .network import (
    BOUNDARY,
    Edge,
    SurfaceNetwork,
    _sorted_boundary,
    default_maxdeg,
    enumerate_flows,
    enumerate_paths,
    enumerate_simple_cycles,
    cycle_denominator,
    inversions,
    longest_simple_cycle,
    validate_perfectly_oriented,
    weighted_path_matrix,
)
from .polyarith import Polynomial, RationalFn, SeriesTruncation, rat_det, rat_series, series_det
from .surface_geom import assemble_curve, rotation_number

log = logging.getLogger(__name__)

SPLIT_OFFSET = 1e-3


def s_between(net, i, j):
    """Number of sources strictly between ``i`` and ``j`` in the boundary order."""
    a, b = sorted((net.order_index(i), net.order_index(j)))
    return sum(1 for s in net.sources if a < net.order_index(s) < b)


# -- rotation numbers of path curves ----------------------------------------------

class RotationCache:
    """Memoized rotation numbers of ``C(P)`` keyed by the edge sequence."""

    def __init__(self, net):
        if net.geometry is None:
            raise GeometryError("rotation numbers need a plane representation")
        self.net = net
        self._memo = {}

    def __call__(self, edges, start, end):
        key = (tuple(edges), start, end)
        if key not in self._memo:
            drawings = [self.net.drawings[e] for e in edges]
            curve = assemble_curve(self.net.geometry, drawings, start, end)
            self._memo[key] = rotation_number(curve)
        return self._memo[key]


def path_rotation(net, path):
    return RotationCache(net)(path.edges, path.start, path.end)


def path_sign(net, path, rot=None):
    rot = rot or RotationCache(net)
    r = rot(path.edges, path.start, path.end)
    return -1 if (s_between(net, path.start, path.end) + r + 1) % 2 else 1


def bmatrix_series(net, maxdeg):
    """Geometric boundary measurement as truncated series, rows sources, columns ``K``."""
    rot = RotationCache(net)
    rows = []
    for i in net.sources:
        row = []
        for j in net.boundary_order:
            terms = {}
            for p in enumerate_paths(net, i, j, maxdeg):
                terms[p.weight] = terms.get(p.weight, 0) + path_sign(net, p, rot)
            row.append(SeriesTruncation(Polynomial(terms), maxdeg))
        rows.append(row)
    return rows


# -- sign assignments ---------------------------------------------------------------

@dataclass
class SignAssignment:
    """Edge signs ``edges[id]``; ``body`` and ``half_edges`` record the factorization.

    ``edges[e] = body[e] * half_edges[u]`` over the boundary endpoints ``u`` of ``e``.
    """

    edges: dict
    body: dict = field(default_factory=dict)
    half_edges: dict = field(default_factory=dict)

    def by_variable(self, net):
        return {net.var_of(e): s for e, s in self.edges.items()}

    def __getitem__(self, eid):
        return self.edges[eid]


def _combine(net, body, half):
    out = {}
    for e in net.edges:
        s = body[e.id]
        for v in (e.tail, e.head):
            if net.is_boundary(v):
                s *= half[v]
        out[e.id] = s
    return out


def find_signs(net):
    """Recursive sign construction; requires a perfectly oriented, drawn network."""
    ok, _ = validate_perfectly_oriented(net)
    if not ok:
        raise NotPerfectlyOriented("recursive signs need a perfectly oriented network")
    if net.geometry is None:
        raise GeometryError("recursive signs need a plane representation")
    if net.interior and not any(net.vertices[e.head] != BOUNDARY
                                for s in net.sources for e in net.out_edges[s]):
        raise NoBoundarySource("no boundary source is adjacent to an interior vertex")
    body, half = _signs_rec(net, depth=0)
    return SignAssignment(_combine(net, body, half), body, half)


def _signs_rec(net, depth):
    if depth > 4 * len(net.edges) + 8:
        raise InvalidNetwork("split recursion does not terminate")
    half = {v: 1 for v in net.boundary_order}
    eligible = [s for s in net.sources
                if any(not net.is_boundary(e.head) for e in net.out_edges[s])]
    if not eligible:
        rot = RotationCache(net)
        body = {}
        for e in net.edges:
            if net.is_boundary(e.tail) and net.is_boundary(e.head):
                r = rot((e.id,), e.tail, e.head)
                body[e.id] = -1 if (s_between(net, e.tail, e.head) + r + 1) % 2 else 1
            else:
                log.debug("edge %s is unreachable from sources; sign +1", e.id)
                body[e.id] = 1
        return body, half

    i0 = eligible[0]
    e0 = net.out_edges[i0][0]
    v0 = e0.head
    child, info = split_at_source(net, i0)
    cbody, chalf = _signs_rec(child, depth + 1)

    e1, e2 = info["e_first"], info["e_second"]
    n1, n2 = info["new_first"], info["new_second"]
    body = {x: s for x, s in cbody.items() if x in net.edge_by_id}
    white = info["color"] == "white"
    first_incoming = e1.head == v0
    if white:
        body[e1.id] = cbody[e1.id] * chalf[n1]
        body[e2.id] = -cbody[e2.id] * chalf[n2]
    elif first_incoming:
        body[e1.id] = -cbody[e1.id] * chalf[n1]
        body[e2.id] = cbody[e2.id] * chalf[n2]
    else:
        body[e1.id] = cbody[e1.id] * chalf[n1]
        body[e2.id] = -cbody[e2.id] * chalf[n2]
    body[e0.id] = 1

    k0 = net.order_index(i0)
    for v in net.boundary_order:
        if v == i0:
            continue
        h = chalf[v]
        if white and net.order_index(v) > k0:
            h = -h
        half[v] = h
    half[i0] = 1
    return body, half


def _angle_cw(d0, d):
    """Clockwise angle in ``[0, 2pi)`` from direction ``d0`` to ``d``."""
    return (math.atan2(d0[1], d0[0]) - math.atan2(d[1], d[0])) % (2 * math.pi)


def _fresh_id(net, base):
    name = base
    while name in net.vertices:
        name += "'"
    return name


def split_at_source(net, i0):
    """Replace source ``i0`` and its interior neighbour ``v0`` by two boundary vertices.

    Returns ``(child, info)``.  In ``info``, ``e_first``/``e_second`` are the
    other two edges at ``v0`` in the order met when rotating around ``v0``
    from the edge to ``i0``, turning away from the surface side of dT, and
    ``new_first`` < ``new_second`` are the boundary vertices replacing them.
    """
    rep = net.geometry
    e0 = net.out_edges[i0][0]
    v0 = e0.head
    if net.is_boundary(v0):
        raise InvalidNetwork(f"source {i0} has no interior neighbour")
    others = [e for e in net.in_edges[v0] + net.out_edges[v0] if e.id != e0.id]
    if len(others) != 2 or any(e.tail == e.head for e in others):
        raise NotPerfectlyOriented(f"vertex {v0} is not trivalent")
    _, coloring = validate_perfectly_oriented(net)
    color = coloring[v0]

    d0e = net.drawings[e0.id]
    t0 = rep.position(i0)
    tau = _boundary_tangent(rep, t0)
    u = d0e.first_direction()
    surface_left = tau[0] * u[1] - tau[1] * u[0] > 0
    last = d0e.last_direction()
    d0 = (-last[0], -last[1])

    def direction(e):
        d = net.drawings[e.id]
        if e.tail == v0:
            return d.first_direction()
        back = d.last_direction()
        return (-back[0], -back[1])

    key = [_angle_cw(d0, direction(e)) for e in others]
    if min(abs(k) for k in key) < 1e-9 or abs(key[0] - key[1]) < 1e-9:
        raise GeometryError(f"edges at {v0} leave in coincident directions")
    if surface_left:
        first = 0 if key[0] < key[1] else 1
    else:
        first = 0 if key[0] > key[1] else 1
    e1, e2 = others[first], others[1 - first]

    params = sorted(rep.boundary_positions.values())
    later = [t for t in params if t > t0 + 1e-15]
    gap = (later[0] - t0) if later else (1.0 - t0)
    delta = min(SPLIT_OFFSET, gap / 2)
    n1 = _fresh_id(net, f"{i0}'")
    tmp_vertices = dict(net.vertices)
    tmp_vertices[n1] = BOUNDARY
    n2 = n1 + "'"
    while n2 in tmp_vertices:
        n2 += "'"
    t1, t2 = t0, t0 + delta
    p1, p2 = rep.point_at(t1), rep.point_at(t2)

    vertices = {v: r for v, r in net.vertices.items() if v not in (i0, v0)}
    vertices[n1] = BOUNDARY
    vertices[n2] = BOUNDARY
    positions = {v: t for v, t in rep.boundary_positions.items() if v != i0}
    positions[n1] = t1
    positions[n2] = t2
    order = []
    for v in net.boundary_order:
        order += [n1, n2] if v == i0 else [v]

    edges = [e for e in net.edges if e.id not in (e0.id, e1.id, e2.id)]
    drawings = {e.id: net.drawings[e.id] for e in edges}
    sources = [s for s in net.sources if s != i0]
    for e, nv, p in ((e1, n1, p1), (e2, n2, p2)):
        lead = d0e.with_start(p)
        if e.tail == v0:
            edges.append(Edge(e.id, nv, e.head, e.var))
            drawings[e.id] = lead.concat(net.drawings[e.id])
            sources.append(nv)
        else:
            edges.append(Edge(e.id, e.tail, nv, e.var))
            drawings[e.id] = net.drawings[e.id].concat(lead.reversed())

    coords = {v: c for v, c in net.coords.items() if v in vertices}
    coords[n1], coords[n2] = p1, p2
    geometry = dataclasses.replace(rep, boundary_positions=positions)
    child = SurfaceNetwork(vertices, order, sources, edges, coords, geometry, drawings)
    info = {"e0": e0, "v0": v0, "color": color, "e_first": e1, "e_second": e2,
            "new_first": n1, "new_second": n2}
    return child, info


def _boundary_tangent(rep, t):
    a = rep.tangent_at(t)
    b = rep.tangent_at(t - 1e-9)
    d = (a[0] + b[0], a[1] + b[1])
    n = math.hypot(*d)
    return (d[0] / n, d[1] / n) if n > 1e-12 else a


# -- mod 2 sign system ------------------------------------------------------------

def sign_constraints(net, maxlen):
    """Rows ``(mask, rhs)`` of ``sum mult_P(e) sigma_e = s + r_P + 1 (mod 2)``."""
    idx = {e.id: k for k, e in enumerate(net.edges)}
    rot = RotationCache(net)
    rows = []
    for i in net.sources:
        for j in net.boundary_order:
            for p in enumerate_paths(net, i, j, maxlen):
                mask = 0
                for e in p.edges:
                    mask ^= 1 << idx[e]
                rhs = (s_between(net, i, j) + rot(p.edges, i, j) + 1) % 2
                rows.append((mask, rhs))
    return rows


def solve_gf2(rows, nvars):
    """One solution of a GF(2) system (free variables 0), or raise :class:`Inconsistent`."""
    pivots = {}  # pivot bit -> (mask, rhs)
    for mask, rhs in rows:
        for bit, (pm, pr) in pivots.items():
            if mask >> bit & 1:
                mask ^= pm
                rhs ^= pr
        if mask == 0:
            if rhs:
                raise Inconsistent("rotation parities admit no edge signs")
            continue
        bit = mask.bit_length() - 1
        for b2, (pm, pr) in list(pivots.items()):
            if pm >> bit & 1:
                pivots[b2] = (pm ^ mask, pr ^ rhs)
        pivots[bit] = (mask, rhs)
    sol = [0] * nvars
    for bit, (mask, rhs) in pivots.items():
        # reduced form: other pivot bits are absent, free bits are 0
        sol[bit] = rhs
    return sol


def find_signs_gf2(net, maxdeg=None):
    """Edge signs from the linear system over GF(2), checked on paths up to ``maxdeg``."""
    if net.geometry is None:
        raise GeometryError("sign system needs a plane representation")
    bound = len(net.edges) + 2 * longest_simple_cycle(net)
    rows = sign_constraints(net, bound)
    sol = solve_gf2(rows, len(net.edges))
    signs = {e.id: -1 if sol[k] else 1 for k, e in enumerate(net.edges)}
    if maxdeg is not None and maxdeg > bound:
        idx = {e.id: k for k, e in enumerate(net.edges)}
        for mask, rhs in sign_constraints(net, maxdeg):
            val = 0
            for e, k in idx.items():
                if mask >> k & 1:
                    val ^= sol[k]
            if val != rhs:
                raise Inconsistent("solution fails on a longer path")
    return SignAssignment(signs)


# -- rational boundary measurement ------------------------------------------------

def bmatrix_rational(net, signs=None):
    """``A(N)`` with every variable multiplied by its edge sign."""
    if signs is None:
        signs = find_signs(net)
    if isinstance(signs, SignAssignment):
        signs = signs.edges
    by_var = {net.var_of(e): s for e, s in signs.items()}
    A = weighted_path_matrix(net)
    return [[a.signed_substitute(by_var) for a in row] for row in A]


def bmatrix_columns(B, net, J):
    J = _sorted_boundary(net, J)
    cols = [net.order_index(j) for j in J]
    return [[row[c] for c in cols] for row in B]


# -- crossings and Plücker coordinates ----------------------------------------------

@dataclass(frozen=True)
class CrossingData:
    I: tuple
    J: tuple
    pi: tuple
    xing: int
    inversions: int


def xing_count(I, J, pi, order=None):
    """Crossing statistic of ``pi: I -> J`` with boundary labels compared by ``order``.

    ``pi`` is a dict or a sequence of images aligned with ``I``.  A pair
    ``i1 < i2`` contributes when
    ``(i1 - pi(i2)) (pi(i2) - pi(i1)) (pi(i1) - i2) (i2 - i1) < 0``.
    """
    if not isinstance(pi, dict):
        pi = dict(zip(I, pi))
    if order is None:
        rank = lambda v: v  # noqa: E731
    else:
        pos = {v: k for k, v in enumerate(order)}
        rank = pos.__getitem__
    items = sorted(I, key=rank)
    if sorted(map(rank, pi.values())) != sorted(map(rank, J)):
        raise SizeMismatch("pi must be a bijection onto J")
    x = 0
    for a, b in itertools.combinations(items, 2):
        i1, i2 = rank(a), rank(b)
        p1, p2 = rank(pi[a]), rank(pi[b])
        if (i1 - p2) * (p2 - p1) * (p1 - i2) * (i2 - i1) < 0:
            x += 1
    tgt = sorted(J, key=rank)
    pos_t = {rank(j): k for k, j in enumerate(tgt)}
    perm = [pos_t[rank(pi[a])] for a in items]
    return CrossingData(tuple(items), tuple(tgt), tuple(pi[a] for a in items), x, inversions(perm))


def _s_between_ranks(rank_i, rank_j, source_ranks):
    a, b = sorted((rank_i, rank_j))
    return sum(1 for s in source_ranks if a < s < b)


def plucker(net, J, rotation=None):
    """Plücker coordinate ``Delta_J`` from flows, with a positive cycle denominator.

    ``rotation(edges, start, end)`` overrides the geometric rotation numbers.
    """
    I = net.sources
    J = _sorted_boundary(net, J)
    if len(J) != len(I):
        raise SizeMismatch(f"|J| = {len(J)} but there are {len(I)} sources")
    rot = rotation or RotationCache(net)
    cycles = enumerate_simple_cycles(net)
    num = {}
    for f in enumerate_flows(net, I, J, cycles=cycles):
        x = xing_count(I, J, f.pi, order=net.boundary_order).xing
        c = x + sum(rot(p.edges, p.start, p.end) + 1 for p in f.paths)
        num[f.weight] = num.get(f.weight, 0) + (-1 if c % 2 else 1)
    den = cycle_denominator(net, signed=False, cycles=cycles)
    return RationalFn(Polynomial(num), den)


def all_column_sets(net):
    return [list(c) for c in itertools.combinations(net.boundary_order, len(net.sources))]


def format_J(J):
    return "{" + ",".join(J) + "}"


@dataclass
class ConjectureRow:
    J: list
    plucker: RationalFn
    det: RationalFn
    rational_match: bool
    series_match: bool

    @property
    def match(self):
        return self.rational_match and self.series_match

    def line(self):
        return (f"J={format_J(self.J)} plucker={self.plucker} det={self.det} "
                f"match={'yes' if self.match else 'no'}")


def verify_conjecture(net, maxdeg=None, signs=None):
    """Compare each Plücker coordinate with the matching maximal minor of ``B``.

    The rational minor uses the constructed signs; the series check uses the
    geometric boundary measurement expanded through ``maxdeg``.
    """
    if maxdeg is None:
        maxdeg = default_maxdeg(net)
    B = bmatrix_rational(net, signs)
    Bs = bmatrix_series(net, maxdeg)
    rows = []
    for J in all_column_sets(net):
        p = plucker(net, J)
        d = rat_det(bmatrix_columns(B, net, J))
        cols = bmatrix_columns([[x.poly for x in row] for row in Bs], net, J)
        sdet = series_det(cols, maxdeg)
        series_ok = rat_series(p, maxdeg).poly == sdet
        rows.append(ConjectureRow(J, p, d, p == d, series_ok))
    return rows
