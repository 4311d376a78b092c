#!/usr/bin/env python3
# Three independent routes to the same numbers, compared exactly:
#   1. closed forms (Gamma-function expressions reduced to big rationals),
#   2. generating-function coefficients (exact truncated power series),
#   3. brute force over every binary functional graph on n labeled nodes.

from dexgraph import (
    binary_graph_count,
    enumerate_binary,
    expected_cycle,
    expected_rho,
    expected_tail,
    oracle_means,
    rho_variance,
    scaled_graph_count,
    total_rho_series,
    total_rho_square_series,
)

xi = total_rho_series(12)
xi2 = total_rho_square_series(12)

print(f"{'n':>2} {'graphs':>6} {'mean rho':>10} {'mean cyc':>9} {'mean tail':>10} {'var rho':>12}")
for n in (2, 4, 6):
    report = enumerate_binary(n)
    mr, mc, mt, vr = oracle_means(report)
    print(f"{n:2d} {report.binary_graph_count:6d} {str(mr):>10} {str(mc):>9} "
          f"{str(mt):>10} {str(vr):>12}   (enumerated)")

    ng = n * scaled_graph_count(n).exact
    egf_mean = xi[n] / ng
    egf_var = xi2[n] / ng - egf_mean**2
    print(f"{'':2} {binary_graph_count(n):6d} {str(egf_mean):>10} {'':>9} "
          f"{'':>10} {str(egf_var):>12}   (series coefficients)")

    print(f"{'':2} {'':6} {str(expected_rho(n).exact):>10} {str(expected_cycle(n).exact):>9} "
          f"{str(expected_tail(n).exact):>10} {str(rho_variance(n).exact):>12}   (closed form)")

    assert (mr, mc, mt, vr) == (
        expected_rho(n).exact, expected_cycle(n).exact,
        expected_tail(n).exact, rho_variance(n).exact,
    )
    assert egf_mean == mr and egf_var == vr
print("\nall three routes agree exactly (rational equality)")
