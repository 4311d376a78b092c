#!/usr/bin/env python3
# The exact-series layer at work: base series for trees/components/graphs,
# the coefficient recurrences, and the rho-level counts converging to their
# asymptotic mean r.

from fractions import Fraction

from dexgraph import (
    RationalSeries,
    binary_tree_series,
    check_recurrence,
    check_tree_equation,
    component_series,
    graph_series,
    rho_level_series,
    scaled_graph_count,
    total_rho_series,
)
from dexgraph.egfseries import RHO_INITIALS_N, RHO_RECURRENCE_N

order = 64
b = binary_tree_series(order)
c = component_series(order)
f = graph_series(order)

print("binary tree series:", [str(b[i]) for i in range(8)])
print("tree equation b = z + z b^2 / 2 holds:", check_tree_equation(order, b))
print("f = exp(c):", f.coeffs == c.exp().coeffs)
print("f (1 - z b) = 1:", (f * (RationalSeries.one(order) - b.shift_up(1))).coeffs
      == RationalSeries.one(order).coeffs)

xi = total_rho_series(order)
print("\ntotal-rho coefficients [z^n], n = 2..10:", [str(xi[n]) for n in (2, 4, 6, 8, 10)])
print("order-3 recurrence with u(2) = 3, u(4) = 25/2 holds:",
      check_recurrence(xi.coeffs, RHO_RECURRENCE_N, RHO_INITIALS_N, stride=2))

print("\nexpected number of nodes with rho length exactly r, per graph:")
print(f"{'n':>4} {'r=1':>8} {'r=2':>8} {'r=3':>8}")
for n in (10, 30, 64):
    g = scaled_graph_count(n).exact
    row = [float(rho_level_series(order, r)[n] / g) for r in (1, 2, 3)]
    print(f"{n:4d} {row[0]:8.4f} {row[1]:8.4f} {row[2]:8.4f}")
print("       (r = 1 is exactly 1 for every n; r = 2, 3 rise toward their limits)")

# the level-1 series is the graph series minus its constant term:
lvl1 = rho_level_series(order, 1)
assert all(lvl1[n] == f[n] for n in range(2, order + 1, 2))
