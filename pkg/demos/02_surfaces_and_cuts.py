"""
Networks on the annulus and the torus
=====================================

How the boundary measurement depends on the cut, and why it does not
depend on the choice of fundamental domain.
"""

# %%
from surfnet import load_fixture
from surfnet.boundary_measurement import RotationCache, bmatrix_series, verify_conjecture
from surfnet.network import enumerate_paths
from surfnet.surface_geom import assemble_curve, boundary_T_rotation, rotation_number

# %%
# One edge across an annulus.  Moving the cut flips the sign of the entry.
for name in ("fig5-left", "fig5-right", "annulus-alt-representation"):
    net = load_fixture(name)
    (row,) = bmatrix_series(net, 4)
    print(f"{name:28s}", [str(x.poly) for x in row])

# %%
# The cut boundary always has odd rotation number.
for name in ("fig5-left", "torus-basic", "torus-alt-generators"):
    print(name, boundary_T_rotation(load_fixture(name).geometry))

# %%
# Curves of torus paths leave the square and return along its sides.
torus = load_fixture("torus-basic")
(p, *_) = [p for p in enumerate_paths(torus, "1", "2", 12) if "e9" in p.edges]
curve = assemble_curve(torus.geometry, [torus.drawings[e] for e in p.edges], "1", "2")
print(p.edges, "points:", len(curve.points), "rotation:", rotation_number(curve))

# %%
# Two domains for the same torus: rotation parities agree path by path.
alt = load_fixture("torus-alt-generators")
ra, rb = RotationCache(torus), RotationCache(alt)
for i in torus.sources:
    for j in torus.boundary_order:
        for p in enumerate_paths(torus, i, j, 12):
            print(i, j, p.edges, ra(p.edges, i, j), rb(p.edges, i, j))

# %%
# With generators (1,0), (1,1) the second generator has even p + q and the
# parities shift; the flow formula then disagrees with the minors of B.
even = load_fixture("torus-even-generators")
for r in verify_conjecture(even, 12):
    print(r.J, "match" if r.match else "differs")
