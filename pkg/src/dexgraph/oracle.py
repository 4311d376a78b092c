"""Brute-force ground truth over all binary functional graphs on n nodes.

Walks every successor assignment on {1, ..., n} with an incremental
in-degree filter: a branch dies as soon as some node collects a third
incoming edge, or as soon as the nodes already at in-degree 1 or 2
outnumber the n/2 slots a binary graph has for in-degree-2 nodes.  With
those two prunes every surviving leaf is binary, which cuts the n^n space
down to the 176'400 actual graphs at n = 8.

The work splits into n independent shards by the first node's successor;
aggregation is exact-integer and commutative, so shard order and worker
scheduling cannot change the result.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from dexgraph import graphcore

DEFAULT_BUDGET = 8**8


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured cap."""


@dataclass(frozen=True)
class OracleReport:
    """Exact aggregates over all binary graphs of size n and all their nodes."""

    n: int
    binary_graph_count: int
    sum_tail: int
    sum_cycle: int
    sum_rho: int
    sum_rho_sq: int
    r_hist_tail: dict[int, int]
    r_hist_cycle: dict[int, int]
    r_hist_rho: dict[int, int]

    def merged_with(self, other: "OracleReport") -> "OracleReport":
        def m(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
            out = dict(a)
            for k, v in b.items():
                out[k] = out.get(k, 0) + v
            return out

        return OracleReport(
            self.n,
            self.binary_graph_count + other.binary_graph_count,
            self.sum_tail + other.sum_tail,
            self.sum_cycle + other.sum_cycle,
            self.sum_rho + other.sum_rho,
            self.sum_rho_sq + other.sum_rho_sq,
            m(self.r_hist_tail, other.r_hist_tail),
            m(self.r_hist_cycle, other.r_hist_cycle),
            m(self.r_hist_rho, other.r_hist_rho),
        )


def _empty(n: int) -> OracleReport:
    return OracleReport(n, 0, 0, 0, 0, 0, {}, {}, {})


def _enumerate_shard(args: tuple[int, int]) -> OracleReport:
    """All binary maps with succ(1) fixed; exact aggregation via graphcore."""
    n, first = args
    half = n // 2
    count = 0
    s_tail = s_cycle = s_rho = s_rho_sq = 0
    h_tail: dict[int, int] = {}
    h_cycle: dict[int, int] = {}
    h_rho: dict[int, int] = {}

    succ = np.zeros(n + 1, dtype=np.int64)
    indeg = [0] * (n + 1)
    succ[1] = first
    indeg[first] = 1
    ones, twos = 1, 0  # nodes currently at in-degree 1 / 2

    choice = [0] * (n + 1)  # next successor candidate per position
    pos = 2
    while pos >= 2:
        if pos > n:
            # complete assignment; the prunes guarantee it is binary
            count += 1
            metrics = graphcore.node_metrics(graphcore.SuccessorMap(n, succ.copy()))
            tail, cyc, rho = metrics.tail[1:], metrics.cycle[1:], metrics.rho[1:]
            s_tail += int(tail.sum())
            s_cycle += int(cyc.sum())
            s_rho += int(rho.sum())
            s_rho_sq += int(np.dot(rho, rho))
            for arr, hist in ((tail, h_tail), (cyc, h_cycle), (rho, h_rho)):
                for r in arr.tolist():
                    hist[r] = hist.get(r, 0) + 1
            pos -= 1
            continue
        # undo the previous choice at this position, if any
        prev = choice[pos]
        if prev:
            if indeg[prev] == 2:
                twos -= 1
                ones += 1
            else:
                ones -= 1
            indeg[prev] -= 1
        # advance to the next viable successor
        nxt = prev + 1
        placed = False
        while nxt <= n:
            if indeg[nxt] < 2:
                new_ones = ones + (1 if indeg[nxt] == 0 else -1)
                new_twos = twos + (1 if indeg[nxt] == 1 else 0)
                if new_ones + new_twos <= half:
                    choice[pos] = nxt
                    succ[pos] = nxt
                    indeg[nxt] += 1
                    ones, twos = new_ones, new_twos
                    placed = True
                    break
            nxt += 1
        if placed:
            pos += 1
        else:
            choice[pos] = 0
            pos -= 1
    return OracleReport(n, count, s_tail, s_cycle, s_rho, s_rho_sq, h_tail, h_cycle, h_rho)


def enumerate_binary(n: int, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> OracleReport:
    """Exact statistics over every binary functional graph on n labeled nodes."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"binary functional graphs need even n >= 2, got {n}")
    if n**n > budget:
        raise BudgetExceededError(f"{n}^{n} = {n**n} successor maps exceeds budget {budget}")
    shards = [(n, first) for first in range(1, n + 1)]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_enumerate_shard, shards)
    else:
        parts = [_enumerate_shard(s) for s in shards]
    report = _empty(n)
    for part in parts:
        report = report.merged_with(part)
    return report


def oracle_means(report: OracleReport) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(mean_rho, mean_cycle, mean_tail, var_rho) over all (graph, node) pairs."""
    N = report.n * report.binary_graph_count
    mean_rho = Fraction(report.sum_rho, N)
    mean_cycle = Fraction(report.sum_cycle, N)
    mean_tail = Fraction(report.sum_tail, N)
    var_rho = Fraction(report.sum_rho_sq, N) - mean_rho * mean_rho
    return mean_rho, mean_cycle, mean_tail, var_rho
