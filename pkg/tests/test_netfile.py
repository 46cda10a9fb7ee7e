import pytest

from conftest import ALL_FIXTURES
from surfnet import fixture_path
from surfnet.errors import ParseError
from surfnet.netfile import format_network, load_network, parse_network
from surfnet.network import weighted_path_matrix
from surfnet.boundary_measurement import RotationCache
from surfnet.network import enumerate_paths

DISK = """\
# one chord across a square disk
SURFACE:
genus 0
BOUNDARY_T:
point 1 0
point 0 1
point -1 0
point 0 -1
position 1 0.1
position 2 0.6
VERTICES:
1 boundary
2 boundary
EDGES:
e1 1 2 x1
  via 0 0
SOURCES:
1
"""


def test_parse_small_disk():
    n = parse_network(DISK)
    n.validate()
    assert n.boundary_order == ["1", "2"] and n.sources == ["1"]
    assert n.drawings["e1"].pieces[0][1] == (0.0, 0.0)
    assert str(weighted_path_matrix(n)[0][1]) == "(1*x1)"


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_round_trip(name):
    a = load_network(fixture_path(name))
    b = parse_network(format_network(a, comment="copy"))
    assert [(e.id, e.tail, e.head, e.var) for e in a.edges] == [(e.id, e.tail, e.head, e.var) for e in b.edges]
    assert a.boundary_order == b.boundary_order and a.sources == b.sources
    assert a.geometry.genus == b.geometry.genus
    ra, rb = RotationCache(a), RotationCache(b)
    for i in a.sources:
        for j in a.boundary_order:
            for p in enumerate_paths(a, i, j, 9):
                assert ra(p.edges, i, j) == rb(p.edges, i, j)
    assert format_network(b) == format_network(a)


def _lineno(exc):
    return exc.value.lineno


def test_truncated_file_reports_line():
    text = fixture_path("fig7").read_text()
    cut = "\n".join(text.splitlines()[:-3])
    with pytest.raises(ParseError) as exc:
        parse_network(cut)
    assert "line" in str(exc.value)


@pytest.mark.parametrize("bad, line", [
    (DISK.replace("genus 0", "genus zero"), 3),
    (DISK.replace("e1 1 2 x1", "e1 1 x1"), 15),
    (DISK.replace("position 2 0.6", "position 9 0.6"), 13),
    (DISK.replace("SOURCES:", "SOURCE:"), 17),
    ("genus 0\n" + DISK, 1),
    (DISK.replace("  via 0 0", "  via 0"), 16),
])
def test_errors_cite_lines(bad, line):
    with pytest.raises(ParseError) as exc:
        n = parse_network(bad)
        n.validate()
    assert _lineno(exc) == line
    assert str(exc.value).startswith(f"line {line}: ")


def test_missing_sections():
    with pytest.raises(ParseError):
        parse_network("")
    with pytest.raises(ParseError):
        parse_network(DISK.split("SOURCES:")[0].replace("EDGES:", "EDGES:\n"), name="x")


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_network(tmp_path / "none.net")
