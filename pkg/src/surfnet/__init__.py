"""Boundary measurement and Plücker coordinates for networks on oriented surfaces."""
from importlib import resources

from .errors import *  # noqa: F401,F403
from .netfile import format_network, load_network, parse_network
from .network import Edge, SurfaceNetwork, validate_perfectly_oriented, weighted_path_matrix
from .polyarith import Monomial, Polynomial, RationalFn, SeriesTruncation, rat_series
from .surface_geom import EdgeDrawing, PlaneRepresentation, rotation_number

__version__ = "0.1.0"


def fixture_path(name):
    """Path of a bundled fixture, e.g. ``fixture_path("fig7")``."""
    if not name.endswith(".net"):
        name += ".net"
    return resources.files(__name__).joinpath("fixtures", name)


def load_fixture(name):
    return load_network(fixture_path(name))


def fixture_names():
    root = resources.files(__name__).joinpath("fixtures")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".net"))
