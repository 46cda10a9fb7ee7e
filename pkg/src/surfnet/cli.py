"""Command-line front end: ``surfnet <command> FILE ...``.

Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 invariant
failure, 4 computation error (the error class name is printed).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import boundary_measurement as bm
from .errors import GeometryError, InvalidNetwork, ParseError, SurfnetError
from .gauge import GaugeElement, WeightAssignment, find_gauge, gauge_equivalent
from .netfile import load_network
from .network import default_maxdeg, validate_perfectly_oriented, warn_if_unusual, weighted_path_matrix
from .polyarith import var_key
from .surface_geom import boundary_T_rotation

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_INVARIANT, EXIT_COMPUTE = 0, 1, 2, 3, 4


class _Invariant(Exception):
    pass


def _load(path):
    net = load_network(path)
    try:
        net.validate()
    except (InvalidNetwork, GeometryError) as exc:
        raise _Invariant(f"{type(exc).__name__}: {exc}") from exc
    warn_if_unusual(net)
    return net


def _signs(net, args):
    if args.signs == "gf2":
        return bm.find_signs_gf2(net, args.maxdeg)
    return bm.find_signs(net)


def _matrix_out(net, rows, args):
    text = ["\t".join(str(x) for x in row) for row in rows]
    if args.json:
        return {"rows": net.sources, "columns": net.boundary_order,
                "entries": [[str(x) for x in row] for row in rows]}
    return "\n".join(text)


def cmd_validate(net, args):
    ok, coloring = validate_perfectly_oriented(net)
    n_int = len(net.interior)
    n_white = sum(1 for c in coloring.values() if c == "white")
    info = {
        "invariants": "ok",
        "boundary_vertices": net.boundary_order,
        "sources": net.sources,
        "perfectly_oriented": ok,
        "coloring": {v: coloring[v] for v in sorted(coloring, key=var_key)},
    }
    lines = ["invariants: ok",
             f"boundary order: {' '.join(net.boundary_order)}; sources: {' '.join(net.sources)}"]
    if net.geometry is not None:
        info["genus"] = net.geometry.genus
        info["boundary_T_rotation"] = boundary_T_rotation(net.geometry)
        lines.append(f"genus: {info['genus']}; rotation of dT: {info['boundary_T_rotation']}")
    if ok:
        lines.append(f"perfectly oriented: yes; interior vertices: {n_int} "
                     f"({n_white} white, {n_int - n_white} black)")
        if coloring:
            lines.append("coloring: " + " ".join(f"{v}={c}" for v, c in info["coloring"].items()))
    else:
        lines.append("perfectly oriented: no")
    return info if args.json else "\n".join(lines)


def cmd_amatrix(net, args):
    return _matrix_out(net, weighted_path_matrix(net), args)


def cmd_bmatrix(net, args):
    return _matrix_out(net, bm.bmatrix_rational(net, _signs(net, args)), args)


def cmd_signs(net, args):
    s = _signs(net, args).by_variable(net)
    items = sorted(s.items(), key=lambda kv: var_key(kv[0]))
    if args.json:
        return {v: e for v, e in items}
    return "\n".join(f"{v}: {'+1' if e > 0 else '-1'}" for v, e in items)


def cmd_plucker(net, args):
    val = bm.plucker(net, args.J)
    return {"J": args.J, "plucker": str(val)} if args.json else str(val)


def cmd_series(net, args):
    maxdeg = args.maxdeg if args.maxdeg is not None else default_maxdeg(net)
    rows = bm.bmatrix_series(net, maxdeg)
    rows = [[x.poly for x in row] for row in rows]
    out = _matrix_out(net, rows, args)
    if args.json:
        out["maxdeg"] = maxdeg
    return out


def _parse_weights(net, text):
    """``x6=-1,e2=1/2`` (variables or edge ids); unlisted edges keep weight 1."""
    by_var = {e.var: e.id for e in net.edges}
    out = {e.id: Fraction(1) for e in net.edges}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = item.partition("=")
        key = key.strip()
        eid = by_var.get(key, key)
        if eid not in net.edge_by_id:
            raise ParseError(f"unknown edge or variable {key!r} in weights")
        try:
            out[eid] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad weight {val!r} for {key}") from None
    return WeightAssignment(out)


def cmd_gauge(net, args):
    X = _parse_weights(net, args.X)
    Y = _parse_weights(net, args.Y)
    if not gauge_equivalent(net, X, Y):
        return {"equivalent": False} if args.json else "not gauge equivalent"
    g = GaugeElement(find_gauge(net, X, Y))
    items = [(v, g.at(v)) for v in sorted(net.interior, key=var_key)]
    if args.json:
        return {"equivalent": True, "gauge": {v: str(a) for v, a in items}}
    return "\n".join(f"g_{v} = {a}" for v, a in items)


def cmd_verify(net, args):
    maxdeg = args.maxdeg if args.maxdeg is not None else default_maxdeg(net)
    signs = _signs(net, args)
    rows = bm.verify_conjecture(net, maxdeg, signs=signs)
    args._status = EXIT_OK if all(r.match for r in rows) else EXIT_MISMATCH
    if args.json:
        return {"maxdeg": maxdeg, "rows": [
            {"J": r.J, "plucker": str(r.plucker), "det": str(r.det),
             "rational_match": r.rational_match, "series_match": r.series_match,
             "match": r.match} for r in rows]}
    return "\n".join(r.line() for r in rows)


COMMANDS = {
    "validate": (cmd_validate, "check invariants, perfect orientation, and coloring"),
    "amatrix": (cmd_amatrix, "weighted path matrix A(N)"),
    "bmatrix": (cmd_bmatrix, "boundary measurement matrix B(N) via edge signs"),
    "signs": (cmd_signs, "edge signs"),
    "plucker": (cmd_plucker, "Plücker coordinate for a column set J"),
    "series": (cmd_series, "geometric boundary measurement as truncated series"),
    "gauge": (cmd_gauge, "gauge element carrying weights X to Y"),
    "verify": (cmd_verify, "compare Plücker coordinates with maximal minors of B"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--maxdeg", type=int, default=None, help="series truncation degree")
    common.add_argument("--signs", choices=("recursive", "gf2"), default="recursive")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = argparse.ArgumentParser(prog="surfnet", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("file")
        if name == "plucker":
            sp.add_argument("J", nargs="+", help="boundary vertex ids")
        if name == "gauge":
            sp.add_argument("X", help="weights, e.g. 'x6=-1,x2=1/2'")
            sp.add_argument("Y")
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    args._status = EXIT_OK
    try:
        net = _load(args.file)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except _Invariant as exc:
        print(f"invariant failure: {exc}", file=err)
        return EXIT_INVARIANT
    except SurfnetError as exc:
        print(f"invariant failure: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INVARIANT
    fn = COMMANDS[args.command][0]
    try:
        result = fn(net, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except SurfnetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_COMPUTE
    if args.json:
        print(json.dumps(result, indent=2, sort_keys=False), file=out)
    else:
        print(result, file=out)
    return args._status


if __name__ == "__main__":
    sys.exit(main())
