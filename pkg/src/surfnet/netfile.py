"""Line-oriented network file format.

Sections start with a ``NAME:`` header; ``#`` starts a comment::

    SURFACE:
    genus 1
    corner 0 0            # 4g corners, counterclockwise (genus > 0 only)
    sides a1 b1 a1- b1-   # optional, this is the default word
    BOUNDARY_T:
    point 0.6 0.5         # directed closed polyline, first point is phi(0)
    position 1 0.125      # boundary vertex -> parameter on dT
    VERTICES:
    1 boundary
    a interior 0.3 0.7
    EDGES:
    e1 1 a x1             # id tail head variable
      via 0.35 0.65       # bend points of the drawing
      cross 1 0.7 3 0.3   # exit side, fraction, entry side, fraction
    SOURCES:
    1 3
    ORDER:                # optional; must agree with the dT positions
    1 2 3 4

Boundary vertex coordinates are ``phi(position)``.  A file without
``SURFACE``/``BOUNDARY_T`` describes a network without geometry and then
needs ``ORDER``.
"""
from __future__ import annotations

from pathlib import Path

from .errors import GeometryError, ParseError
from .network import BOUNDARY, INTERIOR, Edge, SurfaceNetwork
from .surface_geom import Crossing, EdgeDrawing, PlaneRepresentation

SECTIONS = ("SURFACE", "BOUNDARY_T", "VERTICES", "EDGES", "SOURCES", "ORDER")


def _num(tok, lineno):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", lineno) from None


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def parse_network(text, name="<string>"):
    sections = {s: [] for s in SECTIONS}
    current = None
    last_line = 0
    for lineno, line in _lines(text):
        last_line = lineno
        head = line.strip()
        if head.endswith(":") and head[:-1] in SECTIONS:
            current = head[:-1]
            continue
        if head.endswith(":") and head[:-1].isupper():
            raise ParseError(f"unknown section {head[:-1]!r}", lineno)
        if current is None:
            raise ParseError("content before the first section header", lineno)
        sections[current].append((lineno, line))

    if not sections["VERTICES"]:
        raise ParseError(f"{name}: missing VERTICES section", last_line or None)
    if not sections["EDGES"] and not sections["SOURCES"]:
        raise ParseError(f"{name}: missing EDGES/SOURCES sections", last_line or None)

    # surface
    genus = None
    corners, labels = [], []
    for lineno, line in sections["SURFACE"]:
        tok = line.split()
        if tok[0] == "genus" and len(tok) == 2:
            genus = _int(tok[1], lineno)
        elif tok[0] == "corner" and len(tok) == 3:
            corners.append((_num(tok[1], lineno), _num(tok[2], lineno)))
        elif tok[0] == "sides":
            labels = tok[1:]
        else:
            raise ParseError(f"bad SURFACE line {line.strip()!r}", lineno)

    bt_points, positions = [], {}
    for lineno, line in sections["BOUNDARY_T"]:
        tok = line.split()
        if tok[0] == "point" and len(tok) == 3:
            bt_points.append((_num(tok[1], lineno), _num(tok[2], lineno)))
        elif tok[0] == "position" and len(tok) == 3:
            positions[tok[1]] = _num(tok[2], lineno)
        else:
            raise ParseError(f"bad BOUNDARY_T line {line.strip()!r}", lineno)

    rep = None
    if genus is not None or bt_points:
        if genus is None:
            raise ParseError("BOUNDARY_T given without SURFACE genus", sections["BOUNDARY_T"][0][0])
        try:
            rep = PlaneRepresentation(genus, bt_points, positions, corners, labels)
        except GeometryError as exc:
            first = (sections["BOUNDARY_T"] or sections["SURFACE"])[0][0]
            raise ParseError(str(exc), first) from exc

    vertices, coords = {}, {}
    for lineno, line in sections["VERTICES"]:
        tok = line.split()
        if len(tok) < 2 or tok[1] not in (BOUNDARY, INTERIOR):
            raise ParseError(f"bad VERTICES line {line.strip()!r}", lineno)
        v, role = tok[0], tok[1]
        if v in vertices:
            raise ParseError(f"duplicate vertex {v}", lineno)
        vertices[v] = role
        if role == INTERIOR and len(tok) == 4:
            coords[v] = (_num(tok[2], lineno), _num(tok[3], lineno))
        elif len(tok) != 2 and not (role == INTERIOR and len(tok) == 4):
            raise ParseError(f"bad VERTICES line {line.strip()!r}", lineno)
        if role == BOUNDARY and rep is not None:
            if v not in positions:
                raise ParseError(f"boundary vertex {v} has no position on dT", lineno)
            coords[v] = rep.point_at(positions[v])
    if rep is not None:
        for v in positions:
            if vertices.get(v) != BOUNDARY:
                raise ParseError(f"position given for non-boundary vertex {v}",
                                 sections["BOUNDARY_T"][0][0])
        for v, role in vertices.items():
            if role == INTERIOR and v not in coords:
                raise ParseError(f"interior vertex {v} needs coordinates", sections["VERTICES"][0][0])

    edges, drawings = [], {}
    cur = None
    for lineno, line in sections["EDGES"]:
        tok = line.split()
        indented = line[:1].isspace()
        if indented:
            if cur is None:
                raise ParseError("drawing line before any edge", lineno)
            if tok[0] == "via" and len(tok) == 3:
                cur["pieces"][-1].append((_num(tok[1], lineno), _num(tok[2], lineno)))
            elif tok[0] == "cross" and len(tok) == 5:
                if rep is None or rep.genus == 0:
                    raise ParseError("side crossings need a genus > 0 surface", lineno)
                c = Crossing(_int(tok[1], lineno), _num(tok[2], lineno), _int(tok[3], lineno),
                             _num(tok[4], lineno))
                m = len(rep.domain_polygon)
                if not (0 <= c.exit_side < m and 0 <= c.entry_side < m):
                    raise ParseError("side index out of range", lineno)
                cur["pieces"][-1].append(rep.point_on_side(c.exit_side, c.exit_frac))
                cur["crossings"].append(c)
                cur["pieces"].append([rep.point_on_side(c.entry_side, c.entry_frac)])
            else:
                raise ParseError(f"bad drawing line {line.strip()!r}", lineno)
            continue
        if len(tok) != 4:
            raise ParseError(f"bad EDGES line {line.strip()!r} (want: id tail head variable)", lineno)
        eid, tail, head, var = tok
        for v in (tail, head):
            if v not in vertices:
                raise ParseError(f"edge {eid} uses unknown vertex {v}", lineno)
        if any(e.id == eid for e in edges):
            raise ParseError(f"duplicate edge id {eid}", lineno)
        edges.append(Edge(eid, tail, head, var))
        cur = {"id": eid, "tail": tail, "head": head, "pieces": [[]], "crossings": [], "line": lineno}
        drawings[eid] = cur

    if not sections["SOURCES"]:
        raise ParseError(f"{name}: missing or empty SOURCES section", last_line or None)
    sources = []
    for lineno, line in sections["SOURCES"]:
        for v in line.split():
            if vertices.get(v) != BOUNDARY:
                raise ParseError(f"source {v} is not a boundary vertex", lineno)
            sources.append(v)

    order = []
    for lineno, line in sections["ORDER"]:
        order.extend(line.split())
    if rep is not None:
        derived = rep.ordered_boundary()
        if order and order != derived:
            raise ParseError("ORDER disagrees with the dT positions", sections["ORDER"][0][0])
        order = derived
    elif not order:
        order = [v for v, r in vertices.items() if r == BOUNDARY]

    final_drawings = {}
    if rep is not None:
        for eid, d in drawings.items():
            pieces = [list(p) for p in d["pieces"]]
            pieces[0].insert(0, coords[d["tail"]])
            pieces[-1].append(coords[d["head"]])
            try:
                final_drawings[eid] = EdgeDrawing(pieces, d["crossings"])
            except GeometryError as exc:
                raise ParseError(str(exc), d["line"]) from exc

    return SurfaceNetwork(vertices, order, sources, edges, coords, rep, final_drawings)


def load_network(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_network(text, name=str(path))


def _f(x):
    return repr(float(x))


def format_network(net, comment=None):
    """Serialize a network; omits drawing endpoints, which the parser restores."""
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    rep = net.geometry
    if rep is not None:
        out.append("SURFACE:")
        out.append(f"genus {rep.genus}")
        for p in rep.domain_polygon:
            out.append(f"corner {_f(p[0])} {_f(p[1])}")
        if rep.genus > 0:
            out.append("sides " + " ".join(rep.side_labels))
        out.append("BOUNDARY_T:")
        for p in rep.boundary_T:
            out.append(f"point {_f(p[0])} {_f(p[1])}")
        for v in net.boundary_order:
            out.append(f"position {v} {_f(rep.boundary_positions[v])}")
    out.append("VERTICES:")
    for v, role in net.vertices.items():
        if role == INTERIOR and v in net.coords and rep is not None:
            x, y = net.coords[v]
            out.append(f"{v} {role} {_f(x)} {_f(y)}")
        else:
            out.append(f"{v} {role}")
    out.append("EDGES:")
    for e in net.edges:
        out.append(f"{e.id} {e.tail} {e.head} {e.var}")
        d = net.drawings.get(e.id) if rep is not None else None
        if d is None:
            continue
        for k, piece in enumerate(d.pieces):
            for p in piece[1:-1]:
                out.append(f"  via {_f(p[0])} {_f(p[1])}")
            if k < len(d.crossings):
                c = d.crossings[k]
                out.append(f"  cross {c.exit_side} {_f(c.exit_frac)} {c.entry_side} {_f(c.entry_frac)}")
    out.append("SOURCES:")
    out.append(" ".join(net.sources))
    out.append("ORDER:")
    out.append(" ".join(net.boundary_order))
    return "\n".join(out) + "\n"
