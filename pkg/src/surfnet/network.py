"""Directed networks embedded on surfaces, and their path/cycle/flow enumerators.

Paths are walks (edges may repeat); flows use self-avoiding, pairwise
vertex-disjoint paths plus a collection of disjoint simple cycles on the
remaining vertices.  The minor of the weighted path matrix is

    sum over flows of sgn(pi) (-1)^{#cycles} wt(F)
    ----------------------------------------------
    sum over cycle collections of (-1)^{#cycles} wt(C)

All enumerations are deterministic: edges are visited in natural order of
their ids.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .errors import InvalidNetwork, SizeMismatch
from .polyarith import ONE, ONE_MONO, Monomial, Polynomial, RationalFn, rat_series, series_det, var_key

log = logging.getLogger(__name__)

BOUNDARY = "boundary"
INTERIOR = "interior"


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    var: str


@dataclass
class SurfaceNetwork:
    """Directed multigraph with boundary/interior vertices.

    ``geometry`` is an optional :class:`~surfnet.surface_geom.PlaneRepresentation`
    and ``drawings`` maps edge id to :class:`~surfnet.surface_geom.EdgeDrawing`.
    """

    vertices: dict
    boundary_order: list
    sources: list
    edges: list
    coords: dict = field(default_factory=dict)
    geometry: object = None
    drawings: dict = field(default_factory=dict)

    def __post_init__(self):
        self.boundary_order = list(self.boundary_order)
        pos = {v: k for k, v in enumerate(self.boundary_order)}
        self.sources = sorted(self.sources, key=lambda v: pos.get(v, len(pos)))
        self.edges = sorted(self.edges, key=lambda e: var_key(e.id))
        self._index()

    def _index(self):
        self.edge_by_id = {e.id: e for e in self.edges}
        self.out_edges = {v: [] for v in self.vertices}
        self.in_edges = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise InvalidNetwork(f"edge {e.id} uses an unknown vertex")
            self.out_edges[e.tail].append(e)
            self.in_edges[e.head].append(e)
        self._pos = {v: k for k, v in enumerate(self.boundary_order)}

    # -- basic queries ----------------------------------------------------------
    @property
    def interior(self):
        return [v for v, role in self.vertices.items() if role == INTERIOR]

    @property
    def sinks(self):
        src = set(self.sources)
        return [v for v in self.boundary_order if v not in src]

    def is_boundary(self, v):
        return self.vertices[v] == BOUNDARY

    def order_index(self, v):
        return self._pos[v]

    def var_of(self, edge_id):
        return self.edge_by_id[edge_id].var

    def variables(self):
        return [e.var for e in self.edges]

    def has_geometry(self):
        return self.geometry is not None

    def validate(self):
        """Check structural invariants; raise :class:`InvalidNetwork` on failure."""
        bset = {v for v, r in self.vertices.items() if r == BOUNDARY}
        for v, r in self.vertices.items():
            if r not in (BOUNDARY, INTERIOR):
                raise InvalidNetwork(f"vertex {v} has unknown role {r!r}")
        if set(self.boundary_order) != bset or len(self.boundary_order) != len(bset):
            raise InvalidNetwork("boundary order must list every boundary vertex exactly once")
        if not set(self.sources) <= bset:
            raise InvalidNetwork("sources must be boundary vertices")
        for v in bset:
            if v in self.sources and self.in_edges[v]:
                raise InvalidNetwork(f"boundary source {v} has an incoming edge")
            if v not in self.sources and self.out_edges[v]:
                raise InvalidNetwork(f"boundary sink {v} has an outgoing edge")
        vars_ = [e.var for e in self.edges]
        if len(set(vars_)) != len(vars_):
            raise InvalidNetwork("edge variables must be distinct")
        if len(self.edge_by_id) != len(self.edges):
            raise InvalidNetwork("edge ids must be distinct")
        if self.geometry is not None:
            self.geometry.validate(self.boundary_order)
            for e in self.edges:
                d = self.drawings.get(e.id)
                if d is None:
                    raise InvalidNetwork(f"edge {e.id} has no drawing")
                d.validate(self.geometry)
        return True


# -- records --------------------------------------------------------------------

@dataclass(frozen=True)
class PathRecord:
    edges: tuple
    start: str
    end: str
    weight: Monomial
    self_avoiding: bool

    @property
    def length(self):
        return len(self.edges)


@dataclass(frozen=True)
class Cycle:
    edges: tuple
    vertices: frozenset
    weight: Monomial


@dataclass(frozen=True)
class CycleCollection:
    cycles: tuple
    weight: Monomial

    @property
    def size(self):
        return len(self.cycles)

    @property
    def sign(self):
        return -1 if self.size % 2 else 1

    @property
    def vertices(self):
        out = set()
        for c in self.cycles:
            out |= c.vertices
        return out


@dataclass(frozen=True)
class Flow:
    paths: tuple
    pi: dict
    cycles: CycleCollection
    weight: Monomial
    perm_sign: int

    @property
    def sign(self):
        """``sgn(pi) * (-1)^{#cycles}``."""
        return self.perm_sign * self.cycles.sign


def permutation_sign_of(pi, order):
    """Sign of the bijection ``pi: I -> J`` after standardizing both sides by ``order``."""
    src = [i for i in order if i in pi]
    targets = set(pi.values())
    tgt_sorted = [j for j in order if j in targets]
    rank = {j: k for k, j in enumerate(tgt_sorted)}
    perm = [rank[pi[i]] for i in src]
    return -1 if inversions(perm) % 2 else 1


def inversions(perm):
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


def _mono_of(net, edge_ids):
    return Monomial((net.var_of(e), 1) for e in edge_ids)


# -- perfect orientation ---------------------------------------------------------

def validate_perfectly_oriented(net):
    """Return ``(ok, coloring)``; coloring maps interior vertex to white/black."""
    coloring = {}
    for v, role in net.vertices.items():
        n_in, n_out = len(net.in_edges[v]), len(net.out_edges[v])
        if role == BOUNDARY:
            if n_in + n_out != 1:
                return False, {}
        else:
            if (n_in, n_out) == (1, 2):
                coloring[v] = "white"
            elif (n_in, n_out) == (2, 1):
                coloring[v] = "black"
            else:
                return False, {}
    return True, coloring


# -- paths ------------------------------------------------------------------------

def enumerate_paths(net, i, j, maxdeg):
    """All walks ``i ~> j`` with at most ``maxdeg`` edges, in lexicographic edge order."""
    out = []
    if i == j:
        out.append(PathRecord((), i, i, ONE_MONO, True))
    live = _reaching(net, j)

    def dfs(v, trail, visited):
        if len(trail) >= maxdeg:
            return
        for e in net.out_edges[v]:
            if e.head not in live:
                continue
            trail.append(e.id)
            w = e.head
            if w == j:
                verts = visited + [w]
                out.append(PathRecord(tuple(trail), i, j, _mono_of(net, trail),
                                      len(set(verts)) == len(verts)))
            dfs(w, trail, visited + [w])
            trail.pop()

    dfs(i, [], [i])
    return out


def _reaching(net, j):
    """Vertices with a directed path to ``j`` (including ``j``)."""
    seen = {j}
    stack = [j]
    while stack:
        v = stack.pop()
        for e in net.in_edges[v]:
            if e.tail not in seen:
                seen.add(e.tail)
                stack.append(e.tail)
    return seen


def self_avoiding_paths(net, i, j, blocked=frozenset()):
    """Self-avoiding paths ``i ~> j`` avoiding ``blocked`` (endpoints excluded)."""
    out = []
    if i == j:
        return [PathRecord((), i, i, ONE_MONO, True)]

    def dfs(v, trail, seen):
        for e in net.out_edges[v]:
            w = e.head
            if w in seen or w in blocked:
                continue
            trail.append(e.id)
            if w == j:
                out.append(PathRecord(tuple(trail), i, j, _mono_of(net, trail), True))
            else:
                seen.add(w)
                dfs(w, trail, seen)
                seen.discard(w)
            trail.pop()

    dfs(i, [], {i})
    return out


def path_vertices(net, path):
    verts = {path.start}
    for eid in path.edges:
        verts.add(net.edge_by_id[eid].head)
    return verts


# -- cycles -----------------------------------------------------------------------

def enumerate_simple_cycles(net):
    """Simple cycles as edge tuples starting at their smallest vertex's first edge."""
    order = {v: k for k, v in enumerate(sorted(net.vertices, key=var_key))}
    cycles = []
    for s in sorted(net.vertices, key=var_key):
        rank = order[s]

        def dfs(v, trail, seen):
            for e in net.out_edges[v]:
                w = e.head
                if order[w] < rank:
                    continue
                if w == s:
                    edges = tuple(trail + [e.id])
                    verts = frozenset(net.edge_by_id[x].tail for x in edges)
                    cycles.append(Cycle(edges, verts, _mono_of(net, edges)))
                elif w not in seen:
                    seen.add(w)
                    trail.append(e.id)
                    dfs(w, trail, seen)
                    trail.pop()
                    seen.discard(w)

        dfs(s, [], {s})
    return cycles


def enumerate_cycle_collections(net, blocked=frozenset(), cycles=None):
    """All families of pairwise vertex-disjoint simple cycles avoiding ``blocked``.

    The empty family comes first.
    """
    if cycles is None:
        cycles = enumerate_simple_cycles(net)
    usable = [c for c in cycles if not (c.vertices & blocked)]
    out = []

    def rec(start, chosen, used):
        w = ONE_MONO
        for c in chosen:
            w = w * c.weight
        out.append(CycleCollection(tuple(chosen), w))
        for k in range(start, len(usable)):
            c = usable[k]
            if c.vertices & used:
                continue
            chosen.append(c)
            rec(k + 1, chosen, used | c.vertices)
            chosen.pop()

    rec(0, [], frozenset())
    return out


def longest_simple_cycle(net):
    return max((len(c.edges) for c in enumerate_simple_cycles(net)), default=0)


def default_maxdeg(net):
    return len(net.edges) + longest_simple_cycle(net)


# -- flows ------------------------------------------------------------------------

def _sorted_boundary(net, subset):
    subset = list(subset)
    for v in subset:
        if v not in net._pos:
            raise InvalidNetwork(f"{v} is not a boundary vertex")
    if len(set(subset)) != len(subset):
        raise SizeMismatch("repeated vertex in index set")
    return sorted(subset, key=net.order_index)


def enumerate_path_systems(net, I, J):
    """Vertex-disjoint self-avoiding path families from ``I`` onto ``J``.

    Yields ``(paths, pi, used_vertices)`` with paths listed in ``I`` order.
    """
    I = _sorted_boundary(net, I)
    J = _sorted_boundary(net, J)
    if len(I) != len(J):
        raise SizeMismatch(f"|I| = {len(I)} but |J| = {len(J)}")
    results = []

    def rec(k, paths, pi, used, free_targets):
        if k == len(I):
            results.append((tuple(paths), dict(pi), frozenset(used)))
            return
        i = I[k]
        if i in used:
            return
        for j in J:
            if j not in free_targets or j in used:
                continue
            for p in self_avoiding_paths(net, i, j, blocked=frozenset(used)):
                verts = path_vertices(net, p)
                if verts & used:
                    continue
                paths.append(p)
                pi[i] = j
                rec(k + 1, paths, pi, used | verts, free_targets - {j})
                paths.pop()
                del pi[i]

    rec(0, [], {}, frozenset(), frozenset(J))
    return results


def enumerate_flows(net, I, J, cycles=None):
    """All flows from ``I`` to ``J``: disjoint path families plus disjoint cycles."""
    if cycles is None:
        cycles = enumerate_simple_cycles(net)
    flows = []
    for paths, pi, used in enumerate_path_systems(net, I, J):
        pw = ONE_MONO
        for p in paths:
            pw = pw * p.weight
        psign = permutation_sign_of(pi, order=net.boundary_order)
        for cc in enumerate_cycle_collections(net, blocked=used, cycles=cycles):
            flows.append(Flow(paths, pi, cc, pw * cc.weight, psign))
    return flows


def cycle_denominator(net, signed=True, cycles=None):
    terms = {}
    for cc in enumerate_cycle_collections(net, cycles=cycles):
        c = cc.sign if signed else 1
        terms[cc.weight] = terms.get(cc.weight, 0) + c
    return Polynomial(terms)


def talaska_minor(net, I, J):
    """Minor of the weighted path matrix with rows ``I`` and columns ``J``."""
    cycles = enumerate_simple_cycles(net)
    num = {}
    for f in enumerate_flows(net, I, J, cycles=cycles):
        num[f.weight] = num.get(f.weight, 0) + f.sign
    return RationalFn(Polynomial(num), cycle_denominator(net, cycles=cycles))


def path_matrix_entry(net, i, j):
    return talaska_minor(net, [i], [j])


def weighted_path_matrix(net):
    """Rows are sources, columns all boundary vertices (``A`` restricted to ``I x K``)."""
    return [[path_matrix_entry(net, i, j) for j in net.boundary_order] for i in net.sources]


def path_series(net, i, j, maxdeg):
    """``sum wt(P)`` over walks ``i ~> j`` of length ``<= maxdeg``, by enumeration."""
    terms = {}
    for p in enumerate_paths(net, i, j, maxdeg):
        terms[p.weight] = terms.get(p.weight, 0) + 1
    return Polynomial(terms)


def series_minor_check(net, I, J, maxdeg):
    """Compare the truncated determinant of enumerated path sums with the expansion
    of :func:`talaska_minor`, termwise through degree ``maxdeg``."""
    I = _sorted_boundary(net, I)
    J = _sorted_boundary(net, J)
    mat = [[path_series(net, i, j, maxdeg) for j in J] for i in I]
    lhs = series_det(mat, maxdeg)
    rhs = rat_series(talaska_minor(net, I, J), maxdeg).poly
    return lhs == rhs


def has_boundary_cycle_risk(net):
    """True when some simple cycle touches a boundary vertex (never in valid input)."""
    bset = set(net.boundary_order)
    return any(c.vertices & bset for c in enumerate_simple_cycles(net))


def warn_if_unusual(net):
    if has_boundary_cycle_risk(net):
        log.warning("a directed cycle passes through a boundary vertex; minors may be ill-posed")
