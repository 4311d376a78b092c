from fractions import Fraction

import numpy as np
import pytest

from dexgraph import graphcore as gc
from dexgraph import numtheory as nt


def naive_metrics(succ, n):
    """Independent O(n^2) pointer-chasing reference."""
    out = {}
    for x0 in range(1, n + 1):
        seen = {}
        x, i = x0, 0
        while x not in seen:
            seen[x] = i
            x = succ[x]
            i += 1
        tail = seen[x]
        out[x0] = (tail, i - seen[x], i)
    return out


@pytest.fixture(scope="module")
def fig1():
    graph = gc.build_exp_graph(13, 4)
    metrics = gc.node_metrics(graph)
    return graph, metrics, gc.summarize(metrics)


class TestBuildExpGraph:
    def test_worked_example_successors(self, fig1):
        graph, _, _ = fig1
        assert graph.successor(5) == 10  # 4^5 = 1024 = 10 mod 13
        assert graph.successor(6) == 1
        want = {x: pow(4, x, 13) for x in range(1, 13)}
        assert {x: graph.successor(x) for x in range(1, 13)} == want

    def test_tiny(self):
        graph = gc.build_exp_graph(3, 2)
        assert {x: graph.successor(x) for x in (1, 2)} == {1: 2, 2: 1}

    def test_errors(self):
        with pytest.raises(ValueError):
            gc.build_exp_graph(13, 0)
        with pytest.raises(ValueError):
            gc.build_exp_graph(13, 13)
        with pytest.raises(ValueError):
            gc.build_exp_graph(12, 5)

    def test_blocked_path_matches_pow(self):
        # first prime above the build block size exercises the array path
        p = 4099
        g = 2
        graph = gc.build_exp_graph(p, g)
        for x in (1, 2, 3, 4095, 4096, 4097, 4098, 2048, 1234):
            assert graph.successor(x) == pow(g, x, p)

    def test_provenance(self, fig1):
        graph, _, _ = fig1
        assert graph.provenance == ("modexp", 13, 4)


class TestInDegreeProfile:
    def test_binary_example(self, fig1):
        graph, _, _ = fig1
        hist, m = gc.in_degree_profile(graph)
        assert hist == {0: 6, 2: 6}
        assert m == 2

    def test_identity_not_m_ary(self):
        graph = gc.SuccessorMap.from_mapping({1: 1, 2: 2, 3: 3, 4: 4})
        hist, m = gc.in_degree_profile(graph)
        assert hist == {1: 4}
        assert m is None

    def test_permutation_graph(self):
        # 2 is a primitive root mod 13, so the map is a permutation
        graph = gc.build_exp_graph(13, 2)
        hist, m = gc.in_degree_profile(graph)
        assert hist == {1: 12}
        assert m is None

    def test_constant_map(self):
        graph = gc.SuccessorMap.from_mapping({1: 1, 2: 1, 3: 1, 4: 1})
        hist, m = gc.in_degree_profile(graph)
        assert hist == {0: 3, 4: 1}
        assert m == 4


class TestNodeMetrics:
    def test_worked_example_nodes(self, fig1):
        _, metrics, _ = fig1
        assert metrics.at(5) == (2, 4, 6)
        assert metrics.at(1) == (0, 4, 4)
        assert metrics.component_count == 1

    def test_permutation_all_tails_zero(self):
        graph = gc.build_exp_graph(13, 2)
        metrics = gc.node_metrics(graph)
        assert metrics.tail[1:].max() == 0
        assert metrics.rho[1:].min() >= 1

    def test_against_naive_oracle(self):
        rng = np.random.default_rng(1234)
        for trial in range(100):
            n = int(rng.integers(1, 65))
            succ = rng.integers(1, n + 1, size=n)
            graph = gc.SuccessorMap.from_mapping(succ.tolist())
            metrics = gc.node_metrics(graph)
            want = naive_metrics({i + 1: int(succ[i]) for i in range(n)}, n)
            got = {x: metrics.at(x) for x in range(1, n + 1)}
            assert got == want, f"trial {trial}, n {n}"

    def test_rho_identity(self):
        rng = np.random.default_rng(99)
        for _ in range(20):
            n = int(rng.integers(2, 2000))
            succ = rng.integers(1, n + 1, size=n)
            metrics = gc.node_metrics(gc.SuccessorMap.from_mapping(succ.tolist()))
            assert (metrics.rho == metrics.tail + metrics.cycle).all()
            assert metrics.rho[1:].max() <= n
            # tail 0 exactly on cycles: cycle members see themselves again
            on_cycle = metrics.tail[1:] == 0
            assert on_cycle.any()
            # same component id implies same cycle length
            comp = metrics.component_id[1:]
            cyc = metrics.cycle[1:]
            for c in np.unique(comp):
                assert len(np.unique(cyc[comp == c])) == 1

    def test_self_loop(self):
        metrics = gc.node_metrics(gc.SuccessorMap.from_mapping({1: 1}))
        assert metrics.at(1) == (0, 1, 1)


class TestSummarize:
    def test_worked_example_totals(self, fig1):
        _, _, s = fig1
        assert (s.total_cycle, s.total_tail, s.total_rho) == (48, 12, 60)
        assert (s.mean_cycle, s.mean_tail, s.mean_rho) == (4, 1, 5)

    def test_worked_example_variances_population(self, fig1):
        # population variance over the 12 nodes: tails {0,1,2} x 4 each
        _, _, s = fig1
        assert s.var_cycle == 0
        assert s.var_tail == Fraction(2, 3)
        assert s.var_rho == Fraction(2, 3)

    def test_worked_example_histograms(self, fig1):
        _, _, s = fig1
        assert s.hist_tail == {0: 4, 1: 4, 2: 4}
        assert s.hist_cycle == {4: 12}
        assert s.hist_rho == {4: 4, 5: 4, 6: 4}
        assert s.is_binary
        assert s.component_count == 1

    def test_mean_linearity_and_hist_sums(self):
        rng = np.random.default_rng(321)
        for _ in range(25):
            n = int(rng.integers(2, 300))
            succ = rng.integers(1, n + 1, size=n)
            s = gc.summarize(gc.node_metrics(gc.SuccessorMap.from_mapping(succ.tolist())))
            assert s.mean_rho == s.mean_cycle + s.mean_tail
            assert s.total_rho == s.total_cycle + s.total_tail
            assert sum(s.hist_rho.values()) == n
            assert sum(r * c for r, c in s.hist_rho.items()) == s.total_rho

    def test_binary_balance(self):
        # in-degree-0 and in-degree-2 node counts agree on binary graphs
        for p in (13, 29, 53):
            for g in nt.m_ary_generators(p, 2).generators:
                s = gc.summarize(gc.node_metrics(gc.build_exp_graph(p, g)))
                assert s.is_binary
                assert s.in_degree_hist[0] == s.in_degree_hist[2]


class TestSuccessorMapValidation:
    def test_out_of_range(self):
        with pytest.raises(ValueError):
            gc.SuccessorMap.from_mapping([1, 5])
        with pytest.raises(ValueError):
            gc.SuccessorMap.from_mapping([0, 1])

    def test_bad_keys(self):
        with pytest.raises(ValueError):
            gc.SuccessorMap.from_mapping({1: 1, 3: 1})

    def test_wrong_array_shape(self):
        with pytest.raises(ValueError):
            gc.SuccessorMap(3, np.array([0, 1, 2], dtype=np.int64))


class TestExportDot:
    def test_tiny_cycle(self):
        text = gc.export_dot(gc.build_exp_graph(3, 2))
        assert "1 -> 2;" in text
        assert "2 -> 1;" in text

    def test_edge_count(self, fig1):
        graph, _, _ = fig1
        text = gc.export_dot(graph)
        assert text.count("->") == 12
        assert text.startswith("digraph")

    def test_self_loop(self):
        text = gc.export_dot(gc.SuccessorMap.from_mapping({1: 1}))
        assert "1 -> 1;" in text


@pytest.mark.slow
class TestLargeGraphs:
    def test_million_node_random_map(self):
        n = 1_000_000
        rng = np.random.default_rng(7)
        succ = np.zeros(n + 1, dtype=np.int64)
        succ[1:] = rng.integers(1, n + 1, size=n)
        metrics = gc.node_metrics(gc.SuccessorMap(n, succ))
        assert (metrics.rho == metrics.tail + metrics.cycle).all()
        assert metrics.component_count >= 1
        on_cycle = metrics.tail[1:] == 0
        assert 0 < int(on_cycle.sum()) < n

    def test_binary_for_all_small_primes(self):
        # every gcd-2 generator of every odd prime p <= 1000 gives a binary
        # graph; the batched runner path raises otherwise
        from dexgraph.xrunner import _prime_graph_totals

        for p in nt.next_primes(3, 168):
            if p > 1000:
                break
            _prime_graph_totals(p, None)
