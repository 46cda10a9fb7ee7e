"""
A perfectly oriented network on the disk
========================================

Weighted path matrix, boundary measurement, edge signs and Plücker
coordinates for the bundled four-vertex disk network.
"""

# %%
from surfnet import load_fixture
from surfnet.boundary_measurement import (
    bmatrix_rational, bmatrix_series, find_signs, find_signs_gf2, plucker, verify_conjecture,
)
from surfnet.network import enumerate_paths, validate_perfectly_oriented, weighted_path_matrix

net = load_fixture("fig7")
print("boundary:", net.boundary_order, "sources:", net.sources)
ok, colors = validate_perfectly_oriented(net)
print("perfectly oriented:", ok, colors)

# %%
# Paths from 1 to 2 go once around the interior cycle per extra term.
for p in enumerate_paths(net, "1", "2", 11):
    print(p.edges, p.weight)

# %%
# A counts paths with positive signs; the denominator comes from cycle collections.
for row in weighted_path_matrix(net):
    print("\t".join(map(str, row)))

# %%
# B signs every path by the rotation number of its closed curve.
for row in bmatrix_series(net, 9):
    print("\t".join(str(x.poly) for x in row))

# %%
# Edge signs turn A into B.  Two constructions give different but
# gauge-related answers.
rec = find_signs(net).by_variable(net)
lin = find_signs_gf2(net).by_variable(net)
print("recursive:", {v: s for v, s in rec.items() if s < 0})
print("linear   :", {v: s for v, s in lin.items() if s < 0})
for row in bmatrix_rational(net):
    print("\t".join(map(str, row)))

# %%
# Maximal minors of B from flows, compared against determinants.
print(plucker(net, ["2", "4"]))
for r in verify_conjecture(net, 12):
    print(r.line())
