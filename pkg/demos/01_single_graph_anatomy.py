#!/usr/bin/env python3
# Walk through one binary functional graph end to end: build x -> 4^x mod 13,
# look at its in-degree structure, per-node tail/cycle/rho lengths, and the
# exact per-graph aggregates.

from dexgraph import build_exp_graph, export_dot, in_degree_profile, node_metrics, summarize

graph = build_exp_graph(13, 4)
print("successors:", {x: graph.successor(x) for x in range(1, 13)})

hist, m = in_degree_profile(graph)
print("in-degree histogram:", hist, "->", f"{m}-ary" if m else "not m-ary")

metrics = node_metrics(graph)
print("\nnode  tail cycle rho")
for x in range(1, 13):
    t, c, r = metrics.at(x)
    print(f"{x:4d}  {t:4d} {c:5d} {r:3d}")

# node 5 walks 5 -> 10 -> 9 before entering the 4-cycle 1 -> 4 -> 9 -> 12
assert metrics.at(5) == (2, 4, 6)

s = summarize(metrics)
print("\ntotals:   ", s.total_cycle, s.total_tail, s.total_rho)
print("means:    ", s.mean_cycle, s.mean_tail, s.mean_rho)
print("variances:", s.var_cycle, s.var_tail, s.var_rho, "(population, over nodes)")

print("\nDOT output for plotting:\n")
print(export_dot(graph))
