#!/usr/bin/env python3
# Which residues g produce m-ary graphs of x -> g^x mod p?  Writing g = r^a
# for a primitive root r, the answer is classified by gcd(a, p-1): the class
# with gcd = m has phi((p-1)/m) members and every member's graph is m-ary.

from dexgraph import build_exp_graph, euler_phi, find_primitive_root, in_degree_profile, m_ary_generators

p = 29
n = p - 1
print(f"p = {p}, primitive root r = {find_primitive_root(p)}")

total = 0
for m in sorted(d for d in range(1, n + 1) if n % d == 0):
    gens = m_ary_generators(p, m)
    total += len(gens)
    profiles = set()
    for g in gens.generators:
        hist, reported = in_degree_profile(build_exp_graph(p, g))
        profiles.add(tuple(sorted(hist)))
    print(f"m = {m:2d}: phi((p-1)/m) = {euler_phi(n // m):2d}, "
          f"generators = {gens.generators}, in-degree supports = {sorted(profiles)}")

# the classes partition all of {1, ..., p-1}
assert total == n
print(f"\nsum over m of class sizes = {total} = p - 1")

# the binary class is the one the statistics target
binary = m_ary_generators(p, 2)
print(f"binary generators of {p}: {binary.generators} "
      f"({len(binary)} graphs per prime enter the experiment)")
