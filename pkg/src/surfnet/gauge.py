"""Gauge action on edge weights and recovery of the gauge element.

A weight assignment scales each edge variable, ``x_e -> a_e x_e``.  A gauge
element ``g`` (one nonzero rational per interior vertex, 1 on the boundary)
acts by ``a_e -> g_head^{-1} a_e g_tail``; this leaves every boundary to
boundary path product, hence the weighted path matrix, unchanged.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .boundary_measurement import find_signs
from .errors import HypothesisViolated, NotEquivalent, NotPerfectlyOriented, Stuck, UnknownVertex
from .network import validate_perfectly_oriented, weighted_path_matrix
from .polyarith import var_key


def _frac(x):
    f = Fraction(x)
    if f == 0:
        raise ValueError("weights and gauge values must be nonzero")
    return f


class WeightAssignment(dict):
    """Edge id -> nonzero Fraction."""

    def __init__(self, data=()):
        super().__init__()
        for k, v in dict(data).items():
            self[k] = _frac(v)

    @classmethod
    def ones(cls, net):
        return cls({e.id: 1 for e in net.edges})

    @classmethod
    def from_signs(cls, signs):
        edges = getattr(signs, "edges", signs)
        return cls(edges)

    def by_variable(self, net):
        return {net.var_of(e): a for e, a in self.items()}


class GaugeElement(dict):
    """Interior vertex -> nonzero Fraction; boundary vertices are implicitly 1."""

    def __init__(self, data=()):
        super().__init__()
        for k, v in dict(data).items():
            self[k] = _frac(v)

    @classmethod
    def identity(cls, net):
        return cls({v: 1 for v in net.interior})

    def at(self, v):
        return self.get(v, Fraction(1))

    def __mul__(self, other):
        keys = set(self) | set(other)
        return GaugeElement({v: self.at(v) * other.at(v) for v in keys})

    def inverse(self):
        return GaugeElement({v: 1 / a for v, a in self.items()})


def _check_support(net, g, X):
    interior = set(net.interior)
    for v in g:
        if v not in interior:
            raise UnknownVertex(v)
    for e in X:
        if e not in net.edge_by_id:
            raise UnknownVertex(f"edge {e}")


def gauge_act(g, X, net):
    """``(g . X)_e = g_head^{-1} X_e g_tail``."""
    g = GaugeElement(g)
    X = WeightAssignment(X)
    _check_support(net, g, X)
    out = {}
    for e in net.edges:
        if e.id not in X:
            continue
        out[e.id] = X[e.id] * g.at(e.tail) / g.at(e.head)
    return WeightAssignment(out)


# -- weighted path matrix with numeric coefficients --------------------------------

class PathMatrix:
    """``A(N)`` computed once; ``at(X)`` scales every variable by ``X``."""

    def __init__(self, net):
        self.net = net
        self.A = weighted_path_matrix(net)

    def at(self, X):
        factors = WeightAssignment(X).by_variable(self.net)
        return [[a.substitute_scale(factors) for a in row] for row in self.A]

    def equal(self, X, Y):
        return all(a == b for ra, rb in zip(self.at(X), self.at(Y)) for a, b in zip(ra, rb))


def amatrix_equal(net, X, Y, pm=None):
    return (pm or PathMatrix(net)).equal(X, Y)


# -- reachability hypothesis and frontier search -------------------------------------

def _reach(net, starts, forward=True):
    seen = set(starts)
    stack = list(starts)
    while stack:
        v = stack.pop()
        nbrs = [e.head for e in net.out_edges[v]] if forward else [e.tail for e in net.in_edges[v]]
        for w in nbrs:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def vertices_off_boundary_paths(net):
    """Vertices not lying on any directed path between boundary vertices."""
    bd = list(net.boundary_order)
    from_bd = _reach(net, bd, forward=True)
    to_bd = _reach(net, bd, forward=False)
    return sorted((v for v in net.vertices if v not in from_bd or v not in to_bd), key=var_key)


def check_hypothesis(net):
    bad = vertices_off_boundary_paths(net)
    if bad:
        raise HypothesisViolated(f"vertices on no boundary-to-boundary path: {', '.join(bad)}")


def find_gauge(net, X, Y, check_amatrix=False):
    """Frontier construction of ``g`` with ``g . X = Y``.

    Closed set starts at the boundary.  Each step takes the smallest edge id
    from a closed vertex ``u`` to an open vertex ``v`` and sets
    ``g_v = (g . X)_{(u,v)} / Y_{(u,v)}``.
    """
    X, Y = WeightAssignment(X), WeightAssignment(Y)
    if check_amatrix and not amatrix_equal(net, X, Y):
        raise NotEquivalent("weighted path matrices differ")
    g = GaugeElement()
    closed = set(net.boundary_order)
    open_ = set(net.interior)
    while open_:
        step = None
        for e in net.edges:  # sorted by id
            if e.tail in closed and e.head in open_:
                step = e
                break
        if step is None:
            raise Stuck(f"no edge from closed to open vertices; open: {sorted(open_, key=var_key)}")
        # (g . X)_e with g_head still 1
        g[step.head] = X[step.id] * g.at(step.tail) / Y[step.id]
        closed.add(step.head)
        open_.discard(step.head)
    if gauge_act(g, X, net) != Y:
        raise NotEquivalent("the constructed gauge element does not carry X to Y")
    return g


def gauge_equivalent(net, X, Y):
    check_hypothesis(net)
    try:
        find_gauge(net, X, Y)
    except NotEquivalent:
        return False
    return True


# -- uniqueness of signs ------------------------------------------------------------

@dataclass
class UniquenessReport:
    checked: int
    valid: list
    all_equivalent: bool
    reference: dict

    @property
    def n_valid(self):
        return len(self.valid)


def check_sign_uniqueness(net, reference=None, max_edges=12):
    """Every sign vector ``eps`` with ``A(N, eps) = B(N)`` is gauge equivalent to ``reference``.

    ``reference`` defaults to the recursive construction's signs.
    """
    ok, _ = validate_perfectly_oriented(net)
    if not ok:
        raise NotPerfectlyOriented("sign uniqueness needs a perfectly oriented network")
    check_hypothesis(net)
    if len(net.edges) > max_edges:
        raise ValueError(f"exhaustive search limited to {max_edges} edges")
    if reference is None:
        reference = find_signs(net).edges
    ref = WeightAssignment.from_signs(reference)
    pm = PathMatrix(net)
    target = pm.at(ref)
    ids = [e.id for e in net.edges]
    valid = []
    all_eq = True
    checked = 0
    for bits in itertools.product((1, -1), repeat=len(ids)):
        checked += 1
        cand = WeightAssignment(dict(zip(ids, bits)))
        mat = pm.at(cand)
        if all(a == b for ra, rb in zip(mat, target) for a, b in zip(ra, rb)):
            valid.append({k: int(v) for k, v in cand.items()})
            if not gauge_equivalent(net, ref, cand):
                all_eq = False
    return UniquenessReport(checked, valid, all_eq, {k: int(v) for k, v in ref.items()})
