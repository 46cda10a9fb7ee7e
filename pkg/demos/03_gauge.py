"""
Gauge equivalence of edge weights
=================================

Scaling at interior vertices leaves every boundary-to-boundary path
product unchanged.  The frontier search recovers the scaling.
"""

# %%
from fractions import Fraction

from surfnet import load_fixture
from surfnet.gauge import (
    GaugeElement, PathMatrix, WeightAssignment, check_sign_uniqueness, find_gauge, gauge_act,
)

net = load_fixture("fig7")
X = WeightAssignment({e.id: k + 1 for k, e in enumerate(net.edges)})
g = GaugeElement({"a": 2, "b": Fraction(-1, 3), "c": 5, "d": Fraction(1, 7)})
Y = gauge_act(g, X, net)
print(dict(Y))

# %%
pm = PathMatrix(net)
print(pm.at(X) == pm.at(Y))
print(find_gauge(net, X, Y))

# %%
# Two sign choices that both produce B differ by the gauge g_b = -1.
S1 = WeightAssignment({e.id: -1 if e.id == "e6" else 1 for e in net.edges})
S2 = WeightAssignment({e.id: -1 if e.id in ("e2", "e5") else 1 for e in net.edges})
print(find_gauge(net, S1, S2))

# %%
# All 256 sign vectors: the ones reproducing B are exactly one gauge class.
rep = check_sign_uniqueness(net, reference=dict(S1))
print(rep.checked, rep.n_valid, rep.all_equivalent)
