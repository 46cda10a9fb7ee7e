"""End-to-end acceptance checks, one test per criterion.

Each test prints ``criterion N: PASS|FAIL`` with its runtime and limit and
then asserts.  Run directly (``python3 tests/test_acceptance.py``) or
through pytest; the lines are repeated in the pytest terminal summary.
"""
import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _gen import brute_lgv, grid_dag, normal_polylines, random_bijection  # noqa: E402
from surfnet import fixture_names, fixture_path, load_fixture  # noqa: E402
from surfnet.boundary_measurement import (  # noqa: E402
    RotationCache,
    bmatrix_rational,
    bmatrix_series,
    find_signs,
    find_signs_gf2,
    verify_conjecture,
    xing_count,
)
from surfnet.cli import main as cli_main  # noqa: E402
from surfnet.errors import Inconsistent, NotPerfectlyOriented  # noqa: E402
from surfnet.gauge import (  # noqa: E402
    GaugeElement,
    PathMatrix,
    WeightAssignment,
    check_sign_uniqueness,
    find_gauge,
    gauge_act,
)
from surfnet.network import enumerate_paths, talaska_minor  # noqa: E402
from surfnet.polyarith import ONE, Polynomial, RationalFn  # noqa: E402
from surfnet.surface_geom import boundary_T_rotation  # noqa: E402

RESULTS = []
P = Polynomial.parse


def _report(num, title, limit, check):
    t0 = time.perf_counter()
    detail = ""
    try:
        ok = check()
        if isinstance(ok, tuple):
            ok, detail = ok
    except Exception as exc:  # reported, then re-raised by the assert below
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    in_time = dt < limit
    status = "PASS" if ok and in_time else "FAIL"
    if ok and not in_time:
        detail = f"too slow (limit {limit} s)"
    line = f"criterion {num}: {status} ({dt:.2f} s, limit {limit} s) {title}"
    if detail:
        line += f" -- {detail}"
    RESULTS.append(line)
    print(line)
    assert ok and in_time, line


def _rat_matrix(rows):
    return [[RationalFn.parse(x) for x in row.split("\t")] for row in rows]


def _cli(*argv):
    import io
    out = io.StringIO()
    code = cli_main([str(a) for a in argv], out=out, err=io.StringIO())
    return code, out.getvalue().splitlines()


def _m(text):
    return P(text)


def test_golden_matrices():
    q = _m("1*x5*x6*x7*x8")
    a_den, b_den = ONE - q, ONE + q
    A = [[RationalFn(ONE), RationalFn(_m("1*x1*x5*x2"), a_den), RationalFn(_m("0")),
          RationalFn(_m("1*x1*x5*x6*x7*x4"), a_den)],
         [RationalFn(_m("0")), RationalFn(_m("1*x3*x7*x8*x5*x2"), a_den), RationalFn(ONE),
          RationalFn(_m("1*x3*x7*x4"), a_den)]]
    B = [[RationalFn(ONE), RationalFn(_m("1*x1*x5*x2"), b_den), RationalFn(_m("0")),
          RationalFn(_m("-1*x1*x5*x6*x7*x4"), b_den)],
         [RationalFn(_m("0")), RationalFn(_m("1*x3*x7*x8*x5*x2"), b_den), RationalFn(ONE),
          RationalFn(_m("1*x3*x7*x4"), b_den)]]

    def check():
        f = fixture_path("fig7")
        ca, a_rows = _cli("amatrix", f)
        cb, b_rows = _cli("bmatrix", f)
        got_a, got_b = _rat_matrix(a_rows), _rat_matrix(b_rows)
        n = sum(x == y for r1, r2 in zip(got_a, A) for x, y in zip(r1, r2))
        m = sum(x == y for r1, r2 in zip(got_b, B) for x, y in zip(r1, r2))
        return ca == cb == 0 and n == 8 and m == 8, f"A {n}/8, B {m}/8 entries equal"

    _report(1, "golden A and B on the four-vertex disk network", 1.0, check)


def test_annulus_cut_dependence():
    def check():
        rows = {}
        for name in ("fig5-left", "fig5-right"):
            n = load_fixture(name)
            (row,) = bmatrix_rational(n, find_signs(n))
            rows[name] = row
        x = RationalFn(_m("1*x1"))
        ok = rows["fig5-left"] == [RationalFn(ONE), x] and rows["fig5-right"] == [RationalFn(ONE), -x]
        return ok, f"left {list(map(str, rows['fig5-left']))}, right {list(map(str, rows['fig5-right']))}"

    _report(2, "annulus B depends on the cut: [1, x] and [1, -x]", 1.0, check)


def test_plucker_equals_minors_fig7():
    def check():
        rows = verify_conjecture(load_fixture("fig7"), 12)
        code, lines = _cli("verify", "--maxdeg", "12", fixture_path("fig7"))
        ok = len(rows) == 6 and all(r.rational_match and r.series_match for r in rows)
        return ok and code == 0 and len(lines) == 6, f"{sum(r.match for r in rows)}/6 column sets"

    _report(3, "flow formula = det of B columns = series det (maxdeg 12)", 10.0, check)


def test_negative_control():
    def check():
        n = load_fixture("fig10")
        got = []
        for fn, exc in ((find_signs, NotPerfectlyOriented), (lambda m: find_signs_gf2(m, 12), Inconsistent)):
            try:
                fn(n)
                got.append(None)
            except exc as e:
                got.append(type(e).__name__)
        return got == ["NotPerfectlyOriented", "Inconsistent"], f"raised {got}"

    _report(4, "non-perfectly-oriented network is rejected by both sign finders", 1.0, check)


def test_crossing_parity_identity():
    def check():
        rng = random.Random(4100)
        for _ in range(1000):
            I, J, pi = random_bijection(rng, 12)
            Js = sorted(J)
            perm = [Js.index(pi[i]) for i in I]
            inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            s = sum(sum(1 for k in I if min(i, pi[i]) < k < max(i, pi[i])) for i in I)
            if (xing_count(I, J, pi).xing - inv - s) % 2:
                return False, f"counterexample I={I} J={J} pi={pi}"
        return True, "1000 instances"

    _report(5, "(-1)^xing = (-1)^inv * prod (-1)^s on random bijections", 1.0, check)


def test_whitney_parity():
    def check():
        curves = normal_polylines(random.Random(6), 200)
        bad = [c for c in curves if (c[1] + 1 - c[2]) % 2]
        rot = {name: boundary_T_rotation(load_fixture(name).geometry) for name in fixture_names()}
        odd = all(r % 2 == 1 for r in rot.values())
        return not bad and odd, f"{200 - len(bad)}/200 curves; dT rotations {sorted(set(rot.values()))}"

    _report(6, "rotation = crossings + 1 (mod 2); dT rotation odd on all fixtures", 5.0, check)


def test_representation_independence():
    def check():
        detail = []
        ok = True
        for a_name, b_name in (("fig5-left", "annulus-alt-representation"),
                               ("torus-basic", "torus-alt-generators")):
            a, b = load_fixture(a_name), load_fixture(b_name)
            ra, rb = RotationCache(a), RotationCache(b)
            paths = [p for i in a.sources for j in a.boundary_order for p in enumerate_paths(a, i, j, 12)]
            same = sum((ra(p.edges, p.start, p.end) - rb(p.edges, p.start, p.end)) % 2 == 0 for p in paths)
            Ba = [[x.poly for x in row] for row in bmatrix_series(a, 12)]
            Bb = [[x.poly for x in row] for row in bmatrix_series(b, 12)]
            ok &= same == len(paths) and Ba == Bb
            detail.append(f"{a_name}/{b_name}: {same}/{len(paths)} parities, B {'equal' if Ba == Bb else 'differs'}")
        return ok, "; ".join(detail)

    _report(7, "rotation parities and B agree across two representations", 5.0, check)


def test_gauge_suite():
    def check():
        n = load_fixture("fig7")
        rng = random.Random(8)
        pm = PathMatrix(n)

        def rnd():
            while True:
                f = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                if f:
                    return f

        inv_ok = rt_ok = 0
        for _ in range(100):
            X = WeightAssignment({e.id: rnd() for e in n.edges})
            g = GaugeElement({v: rnd() for v in n.interior})
            Y = gauge_act(g, X, n)
            inv_ok += pm.at(X) == pm.at(Y)
            rt_ok += gauge_act(find_gauge(n, X, Y), X, n) == Y
        ref = {e.id: -1 if e.id == "e6" else 1 for e in n.edges}
        rep = check_sign_uniqueness(n, reference=ref)
        ok = inv_ok == 100 and rt_ok == 100 and rep.checked == 256 and rep.n_valid > 0 and rep.all_equivalent
        return ok, (f"invariance {inv_ok}/100, round trip {rt_ok}/100, "
                    f"{rep.n_valid}/{rep.checked} valid signings, all equivalent: {rep.all_equivalent}")

    _report(8, "gauge invariance, round trip, and sign uniqueness by exhaustive search", 30.0, check)


def test_lgv_degeneration():
    def check():
        rng = random.Random(9)
        good = 0
        for _ in range(50):
            n = grid_dag(rng, rows=rng.randint(2, 3), cols=rng.randint(2, 4))
            k = rng.randint(1, len(n.sources))
            I = rng.sample(n.sources, k)
            J = rng.sample(n.sinks, k)
            f = talaska_minor(n, I, J)
            good += f.den == ONE and f.num == brute_lgv(n, I, J)
        return good == 50, f"{good}/50 acyclic networks"

    _report(9, "acyclic networks: denominator 1, numerator = disjoint path systems", 10.0, check)


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
