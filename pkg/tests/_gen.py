"""Random instance generators and brute-force oracles shared by the tests."""
import itertools
import math
import random

from surfnet.errors import GeometryError
from surfnet.network import BOUNDARY, INTERIOR, Edge, SurfaceNetwork
from surfnet.polyarith import Monomial, Polynomial
from surfnet.surface_geom import ClosedCurve, rotation_number, self_intersection_count


def random_bijection(rng, n_max=12):
    """Random ``(I, J, pi)`` on labels ``1..n`` with ``pi`` fixing ``I & J``."""
    n = rng.randint(1, n_max)
    k = rng.randint(1, n)
    I = sorted(rng.sample(range(1, n + 1), k))
    J = sorted(rng.sample(range(1, n + 1), k))
    common = set(I) & set(J)
    src = [i for i in I if i not in common]
    tgt = [j for j in J if j not in common]
    rng.shuffle(tgt)
    pi = {i: i for i in common}
    pi.update(zip(src, tgt))
    return I, J, pi


def normal_polylines(rng, count, n_min=4, n_max=10):
    """Random closed polylines that pass normality screening, with their data."""
    out = []
    while len(out) < count:
        n = rng.randint(n_min, n_max)
        pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        curve = ClosedCurve(pts)
        try:
            x = self_intersection_count(curve)
            r = rotation_number(curve)
        except GeometryError:
            continue
        out.append((pts, x, r))
    return out


def grid_dag(rng, rows=3, cols=3, p=0.75):
    """Acyclic planar network: a grid with random right/up edges.

    Row 0 is at the bottom.  Sources hang off the left column, sinks off the
    right column and the top row; the boundary order is counterclockwise from
    the top-left corner.
    """
    vertices = {}
    edges = []
    var = itertools.count(1)

    def add_edge(t, h):
        k = next(var)
        edges.append(Edge(f"e{k}", t, h, f"x{k}"))

    for r in range(rows):
        for c in range(cols):
            vertices[f"v{r}_{c}"] = INTERIOR
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols and rng.random() < p:
                add_edge(f"v{r}_{c}", f"v{r}_{c + 1}")
            if r + 1 < rows and rng.random() < p:
                add_edge(f"v{r}_{c}", f"v{r + 1}_{c}")
    left = [f"s{r}" for r in range(rows)]
    right = [f"t{r}" for r in range(rows)]
    top = [f"u{c}" for c in range(cols)]
    for r in range(rows):
        vertices[left[r]] = BOUNDARY
        vertices[right[r]] = BOUNDARY
        add_edge(left[r], f"v{r}_0")
        add_edge(f"v{r}_{cols - 1}", right[r])
    for c in range(cols - 1):
        vertices[top[c]] = BOUNDARY
        add_edge(f"v{rows - 1}_{c}", top[c])
    top = top[:-1]
    order = list(reversed(left)) + right + list(reversed(top))
    return SurfaceNetwork(vertices, order, left, edges)


def dag_paths(net, i, j):
    """All paths ``i ~> j`` in an acyclic network, by plain recursion."""
    if i == j:
        return [()]
    out = []
    for e in net.out_edges[i]:
        for rest in dag_paths(net, e.head, j):
            out.append((e.id,) + rest)
    return out


def brute_lgv(net, I, J):
    """Signed sum over vertex-disjoint path systems ``I -> J`` (any bijection)."""
    pos = {v: k for k, v in enumerate(net.boundary_order)}
    I = sorted(I, key=pos.get)
    J = sorted(J, key=pos.get)
    terms = {}
    for perm in itertools.permutations(range(len(J))):
        inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        choices = [dag_paths(net, I[k], J[perm[k]]) for k in range(len(I))]
        for system in itertools.product(*choices):
            seen = set()
            ok = True
            for k, path in enumerate(system):
                verts = {I[k]} | {net.edge_by_id[e].head for e in path}
                if verts & seen:
                    ok = False
                    break
                seen |= verts
            if not ok:
                continue
            mono = Monomial((net.var_of(e), 1) for path in system for e in path)
            terms[mono] = terms.get(mono, 0) + (-1) ** inv
    return Polynomial(terms)


def random_digraph(rng, n_vertices=4, n_edges=6):
    """Small random network: two boundary vertices, random interior edges (loops allowed)."""
    interior = [f"v{k}" for k in range(n_vertices)]
    vertices = {v: INTERIOR for v in interior}
    vertices["s"] = BOUNDARY
    vertices["t"] = BOUNDARY
    edges = [Edge("e1", "s", interior[0], "x1"), Edge("e2", interior[-1], "t", "x2")]
    for k in range(3, n_edges + 1):
        a, b = rng.choice(interior), rng.choice(interior)
        edges.append(Edge(f"e{k}", a, b, f"x{k}"))
    return SurfaceNetwork(vertices, ["s", "t"], ["s"], edges)


def transfer_counts(net, i, j, length):
    """Number of walks with exactly ``length`` edges, by matrix powers."""
    idx = {v: k for k, v in enumerate(net.vertices)}
    n = len(idx)
    M = [[0] * n for _ in range(n)]
    for e in net.edges:
        M[idx[e.tail]][idx[e.head]] += 1
    vec = [0] * n
    vec[idx[i]] = 1
    for _ in range(length):
        vec = [sum(vec[a] * M[a][b] for a in range(n)) for b in range(n)]
    return vec[idx[j]]


def regular_polygon(n, r=1.0, phase=0.0):
    return [(r * math.cos(phase + 2 * math.pi * k / n), r * math.sin(phase + 2 * math.pi * k / n))
            for k in range(n)]


def seeded(seed):
    return random.Random(seed)
