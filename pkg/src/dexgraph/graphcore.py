"""Functional graph construction and exact tail/cycle/rho statistics.

A functional graph on {1, ..., n} is stored as a successor array.  Metrics
for all n nodes are computed in O(n):

1. leaf peeling on in-degrees isolates the cycle nodes,
2. each cycle is walked once to assign cycle length and component id,
3. a reverse-edge breadth-first sweep layers the tail nodes outward from
   the cycles, so tail(x) = tail(succ(x)) + 1 arrives in distance order.

Everything is iterative (no recursion) and array-based, so million-node
graphs are fine.  Aggregates are exact: integer totals plus Fraction
means/variances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from dexgraph.numtheory import PrimeModulus, is_prime

_EXPLICIT = "explicit"


@dataclass(frozen=True)
class SuccessorMap:
    """Total successor assignment on {1, ..., n}.

    ``succ`` has length n + 1 with index 0 unused, so node labels index
    directly.  ``provenance`` is ("modexp", p, g) for graphs of
    x -> g^x mod p, or "explicit" for caller-supplied maps.
    """

    n: int
    succ: np.ndarray
    provenance: tuple | str = _EXPLICIT

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one node")
        if self.succ.shape != (self.n + 1,):
            raise ValueError("successor array must have length n + 1")
        body = self.succ[1:]
        if body.min() < 1 or body.max() > self.n:
            raise ValueError("successors must lie in [1, n]")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int] | Sequence[int]) -> "SuccessorMap":
        """Build an explicit map from {node: successor} or a 1-based sequence."""
        if isinstance(mapping, Mapping):
            n = len(mapping)
            if sorted(mapping) != list(range(1, n + 1)):
                raise ValueError("mapping keys must be exactly 1..n")
            arr = np.zeros(n + 1, dtype=np.int64)
            for k, v in mapping.items():
                arr[k] = v
        else:
            n = len(mapping)
            arr = np.zeros(n + 1, dtype=np.int64)
            arr[1:] = np.asarray(mapping, dtype=np.int64)
        return cls(n, arr, _EXPLICIT)

    def successor(self, x: int) -> int:
        return int(self.succ[x])


@dataclass(frozen=True)
class NodeMetrics:
    """Per-node tail/cycle/rho lengths and component ids (1-based arrays)."""

    graph: SuccessorMap
    tail: np.ndarray
    cycle: np.ndarray
    rho: np.ndarray
    component_id: np.ndarray
    component_count: int

    def at(self, x: int) -> tuple[int, int, int]:
        """(tail, cycle, rho) seen from node x."""
        return int(self.tail[x]), int(self.cycle[x]), int(self.rho[x])


@dataclass(frozen=True)
class GraphSummary:
    n: int
    total_tail: int
    total_cycle: int
    total_rho: int
    mean_tail: Fraction
    mean_cycle: Fraction
    mean_rho: Fraction
    var_tail: Fraction
    var_cycle: Fraction
    var_rho: Fraction
    hist_tail: dict[int, int]
    hist_cycle: dict[int, int]
    hist_rho: dict[int, int]
    in_degree_hist: dict[int, int]
    component_count: int
    is_binary: bool
    provenance: tuple | str = _EXPLICIT


def build_exp_graph(p: int | PrimeModulus, g: int) -> SuccessorMap:
    """Graph of x -> g^x mod p on {1, ..., p-1}.

    Built with one cumulative multiplication chain (n modular products in
    total); larger graphs use blocked array arithmetic, exact in int64
    since p < 3e9 keeps every product below 2**63.
    """
    pv = p.p if isinstance(p, PrimeModulus) else p
    if not isinstance(p, PrimeModulus) and (pv < 3 or not is_prime(pv)):
        raise ValueError(f"{pv} is not an odd prime")
    if not 1 <= g <= pv - 1:
        raise ValueError(f"generator g = {g} outside [1, {pv - 1}]")
    n = pv - 1
    succ = np.zeros(n + 1, dtype=np.int64)
    block = 4096
    if n <= block:
        cur = 1
        for x in range(1, n + 1):
            cur = cur * g % pv
            succ[x] = cur
    else:
        if pv >= 3_000_000_000:
            raise ValueError("p too large for exact int64 block arithmetic")
        head = np.zeros(block, dtype=np.int64)
        cur = 1
        for x in range(block):
            cur = cur * g % pv
            head[x] = cur
        step = int(head[-1])  # g^block mod p
        shift = 1
        for start in range(0, n, block):
            stop = min(start + block, n)
            succ[start + 1 : stop + 1] = head[: stop - start] * shift % pv
            shift = shift * step % pv
    return SuccessorMap(n, succ, ("modexp", pv, g))


def in_degree_profile(graph: SuccessorMap) -> tuple[dict[int, int], int | None]:
    """In-degree histogram plus m when the support is exactly {0, m}.

    Permutations (support {1}) and mixed profiles report None.
    """
    indeg = np.bincount(graph.succ[1:], minlength=graph.n + 1)[1:]
    hist_arr = np.bincount(indeg)
    hist = {int(d): int(c) for d, c in enumerate(hist_arr) if c}
    support = set(hist)
    m = None
    if len(support) == 2 and 0 in support:
        m = max(support)
    return hist, m


def node_metrics(graph: SuccessorMap) -> NodeMetrics:
    """Exact tail, cycle, and rho length for every node, in O(n)."""
    n = graph.n
    succ = graph.succ
    indeg = np.bincount(succ[1:], minlength=n + 1)

    # Phase 1: peel in-degree-0 layers until only cycle nodes remain.
    work = indeg.copy()
    work[0] = 1  # sentinel slot, never peeled
    removed = np.zeros(n + 1, dtype=bool)
    frontier = np.flatnonzero(work == 0)
    while frontier.size:
        removed[frontier] = True
        targets = succ[frontier]
        np.subtract.at(work, targets, 1)
        cand = np.unique(targets)
        frontier = cand[(work[cand] == 0) & ~removed[cand]]
    on_cycle = ~removed
    on_cycle[0] = False

    # Phase 2: walk each cycle once.
    tail = np.zeros(n + 1, dtype=np.int64)
    cycle = np.zeros(n + 1, dtype=np.int64)
    comp = np.zeros(n + 1, dtype=np.int64)
    comp_count = 0
    for x in np.flatnonzero(on_cycle):
        if comp[x]:
            continue
        comp_count += 1
        ring = [int(x)]
        y = int(succ[x])
        while y != x:
            ring.append(y)
            y = int(succ[y])
        idx = np.array(ring, dtype=np.int64)
        comp[idx] = comp_count
        cycle[idx] = len(ring)

    # Phase 3: reverse-edge BFS from the cycles assigns tails layer by layer.
    # Reverse adjacency as counts + offsets over a counting sort, no per-node
    # lists.
    order = np.argsort(succ[1:], kind="stable") + 1
    starts = np.zeros(n + 2, dtype=np.int64)
    np.cumsum(indeg[1:], out=starts[2:])
    frontier = np.flatnonzero(on_cycle)
    while frontier.size:
        lens = indeg[frontier]
        nz = lens > 0
        frontier = frontier[nz]
        lens = lens[nz]
        if frontier.size == 0:
            break
        begin = starts[frontier]
        total = int(lens.sum())
        run_starts = np.cumsum(lens) - lens
        flat = np.arange(total, dtype=np.int64) - np.repeat(run_starts, lens) + np.repeat(begin, lens)
        preds = order[flat]
        preds = preds[~on_cycle[preds]]
        tail[preds] = tail[succ[preds]] + 1
        cycle[preds] = cycle[succ[preds]]
        comp[preds] = comp[succ[preds]]
        frontier = preds

    rho = tail + cycle
    return NodeMetrics(graph, tail, cycle, rho, comp, comp_count)


def _hist(values: np.ndarray) -> dict[int, int]:
    counts = np.bincount(values)
    return {int(r): int(c) for r, c in enumerate(counts) if c}


def _moments(values: np.ndarray, n: int) -> tuple[int, Fraction, Fraction]:
    """Total, mean, and population variance of an integer node statistic."""
    total = int(values.sum())
    sq = int(np.dot(values, values))
    mean = Fraction(total, n)
    var = Fraction(sq * n - total * total, n * n)
    return total, mean, var


def summarize(metrics: NodeMetrics) -> GraphSummary:
    """Exact per-graph aggregates of the node metrics."""
    graph = metrics.graph
    n = graph.n
    if n > 2_000_000:
        raise ValueError("summary sums need int64 headroom; n capped at 2e6")
    tail = metrics.tail[1:]
    cycle = metrics.cycle[1:]
    rho = metrics.rho[1:]
    tt, mt, vt = _moments(tail, n)
    tc, mc, vc = _moments(cycle, n)
    tr, mr, vr = _moments(rho, n)
    indeg_hist, m = in_degree_profile(graph)
    return GraphSummary(
        n=n,
        total_tail=tt,
        total_cycle=tc,
        total_rho=tr,
        mean_tail=mt,
        mean_cycle=mc,
        mean_rho=mr,
        var_tail=vt,
        var_cycle=vc,
        var_rho=vr,
        hist_tail=_hist(tail),
        hist_cycle=_hist(cycle),
        hist_rho=_hist(rho),
        in_degree_hist=indeg_hist,
        component_count=metrics.component_count,
        is_binary=(m == 2),
        provenance=graph.provenance,
    )


def node_totals(graph: SuccessorMap) -> tuple[int, int, int]:
    """(total_tail, total_cycle, total_rho) without any histogram work.

    Fast path for the experiment runner, identical numbers to summarize().
    """
    m = node_metrics(graph)
    return int(m.tail[1:].sum()), int(m.cycle[1:].sum()), int(m.rho[1:].sum())


def export_dot(graph: SuccessorMap) -> str:
    """DOT text, one edge per node in ascending node order."""
    lines = ["digraph functional_graph {"]
    for x in range(1, graph.n + 1):
        lines.append(f"  {x} -> {int(graph.succ[x])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
