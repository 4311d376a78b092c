"""The per-prime experiment pipeline and single-graph inspection reports.

For each prime p the runner builds all binary graphs of x -> g^x mod p,
reduces each to exact integer tail/cycle/rho totals, and standardizes the
experimental mean of the per-graph averages against the closed-form
expectation.  All per-prime aggregation happens on exact integers (the
per-graph totals), and only the final record conversion touches floats,
so records are byte-identical regardless of worker count: primes are
self-contained work units and output order is fixed by sorting.

Standard deviations across graphs use the sample divisor (count - 1).
The per-prime mean weighs every generator's graph equally.
"""

from __future__ import annotations

import json
import math
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from dexgraph import closedform, graphcore, normstat, numtheory

METRICS = ("rho", "cycle", "tail")

CSV_HEADER = "prime,n,num_graphs,metric,exp_mean,exp_sd,theory_mu,z"

_MU_FUNCS = {
    "rho": closedform.expected_rho,
    "cycle": closedform.expected_cycle,
    "tail": closedform.expected_tail,
}


@dataclass(frozen=True)
class ExperimentConfig:
    start_prime: int = 1009
    prime_count: int = 200
    metrics: tuple[str, ...] = METRICS
    max_graphs_per_prime: int | None = None
    threads: int = 1
    output_dir: str = "experiment_out"
    mode: str = "desk"

    def __post_init__(self) -> None:
        if self.prime_count < 1:
            raise ValueError("prime_count must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.max_graphs_per_prime is not None and self.max_graphs_per_prime < 1:
            raise ValueError("max_graphs_per_prime must be >= 1")
        if self.mode not in ("desk", "paper"):
            raise ValueError("mode must be 'desk' or 'paper'")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad:
            raise ValueError(f"unknown metrics: {bad}")
        if self.start_prime < 3:
            raise ValueError("start_prime must be >= 3")
        if self.mode == "paper" and (
            self.start_prime != 100003
            or self.prime_count != 600
            or self.max_graphs_per_prime is not None
        ):
            raise ValueError("paper mode means 600 primes from 100003 with no graph cap")

    @classmethod
    def paper_mode(cls, threads: int = 1, output_dir: str = "experiment_out") -> "ExperimentConfig":
        """The full 600-prime run from 100003 with every graph of every prime."""
        return cls(
            start_prime=100003,
            prime_count=600,
            metrics=METRICS,
            max_graphs_per_prime=None,
            threads=threads,
            output_dir=output_dir,
            mode="paper",
        )


@dataclass(frozen=True)
class PerPrimeRecord:
    prime: int
    n: int
    num_graphs: int
    metric: str
    exp_mean: float
    exp_sd: float
    theory_mu: float
    z: float
    flagged: bool = False

    def csv_row(self) -> str:
        return (
            f"{self.prime},{self.n},{self.num_graphs},{self.metric},"
            f"{self.exp_mean:.17g},{self.exp_sd:.17g},{self.theory_mu:.17g},{self.z:.17g}"
        )


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list[PerPrimeRecord]
    tests: dict[str, dict[str, normstat.TestResult]]
    flagged_primes: list[int]
    output_files: dict[str, str] = field(default_factory=dict)

    def z_column(self, metric: str) -> list[float]:
        return [r.z for r in self.records if r.metric == metric and not r.flagged]


def _subsample(items: tuple, cap: int | None) -> tuple:
    """Deterministic stride over a sorted sequence."""
    if cap is None or len(items) <= cap:
        return items
    stride = len(items) / cap
    return tuple(items[int(i * stride)] for i in range(cap))


# Graphs of one prime are analyzed as disjoint unions: stacking B graphs of
# size n with per-graph label offsets yields one functional graph on B*n
# nodes, so a single O(total) metrics pass serves the whole batch.  Keeps
# the numpy work per prime in a handful of large calls.
_BATCH_NODE_TARGET = 1_000_000


def _prime_graph_totals(p: int, cap: int | None) -> tuple[int, dict[str, list[int]]]:
    """Exact per-graph (tail, cycle, rho) totals for all binary graphs mod p.

    Returns (num_graphs, {"tail": [...], "cycle": [...], "rho": [...]})
    ordered by generator residue.  Aborts if any graph fails the binary
    in-degree profile, which would falsify the generator classification.
    """
    n = p - 1
    root, pairs = numtheory.m_ary_generator_pairs(p, 2)
    pairs = _subsample(pairs, cap)
    count = len(pairs)

    # r^y mod p for y = 0..n-1; g^x = r^(a x mod n) since r has order n.
    pow_r = np.empty(n, dtype=np.int64)
    cur = 1
    for y in range(n):
        pow_r[y] = cur
        cur = cur * root % p

    x_arr = np.arange(1, n + 1, dtype=np.int64)
    totals: dict[str, list[int]] = {"tail": [], "cycle": [], "rho": []}
    batch_size = max(1, _BATCH_NODE_TARGET // n)
    half = n // 2
    for lo in range(0, count, batch_size):
        chunk = pairs[lo : lo + batch_size]
        b = len(chunk)
        a_arr = np.array([a for _, a in chunk], dtype=np.int64)
        vals = pow_r[(a_arr[:, None] * x_arr[None, :]) % n]  # (b, n) residues
        union = (vals + (np.arange(b, dtype=np.int64) * n)[:, None]).ravel()
        indeg = np.bincount(union, minlength=b * n + 1)[1:].reshape(b, n)
        if not ((indeg.max(axis=1) == 2).all() and ((indeg == 0).sum(axis=1) == half).all()):
            raise ArithmeticError(f"non-binary graph among gcd-2 generators of p = {p}")
        smap = graphcore.SuccessorMap(b * n, np.concatenate(([0], union)))
        met = graphcore.node_metrics(smap)
        totals["tail"].extend(int(v) for v in met.tail[1:].reshape(b, n).sum(axis=1))
        totals["cycle"].extend(int(v) for v in met.cycle[1:].reshape(b, n).sum(axis=1))
        totals["rho"].extend(int(v) for v in met.rho[1:].reshape(b, n).sum(axis=1))
    return count, totals


def _process_prime(args: tuple[int, tuple[str, ...], int | None]) -> list[PerPrimeRecord]:
    """All records for one prime; pure function of its arguments."""
    p, metrics, cap = args
    n = p - 1
    count, totals = _prime_graph_totals(p, cap)

    records = []
    for m in metrics:
        ts = totals[m]
        mu = _MU_FUNCS[m](n).approx
        s1 = sum(ts)
        exp_mean = Fraction(s1, count * n)
        if count >= 2:
            s2 = sum(t * t for t in ts)
            var = Fraction(s2 * count - s1 * s1, count * (count - 1) * n * n)
        else:
            var = None
        sd = math.sqrt(var) if var is not None else 0.0
        flagged = count < 2 or var == 0
        z = normstat.normalize_point(float(exp_mean), mu, count, sd) if not flagged else math.nan
        records.append(
            PerPrimeRecord(p, n, count, m, float(exp_mean), sd, mu, z, flagged)
        )
    return records


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Run the full pipeline and write records, normality summary, and QQ data."""
    primes = numtheory.next_primes(config.start_prime, config.prime_count)
    jobs = [(p, config.metrics, config.max_graphs_per_prime) for p in primes]
    if config.threads > 1:
        with multiprocessing.Pool(config.threads) as pool:
            chunks = pool.map(_process_prime, jobs)
    else:
        chunks = [_process_prime(j) for j in jobs]

    by_prime = {chunk[0].prime: chunk for chunk in chunks}
    records = [rec for p in primes for rec in by_prime[p]]
    for rec in records:
        if not rec.flagged and not math.isfinite(rec.z):
            raise ArithmeticError(f"non-finite z for unflagged prime {rec.prime}")

    flagged = sorted({r.prime for r in records if r.flagged})
    tests: dict[str, dict[str, normstat.TestResult]] = {}
    for m in config.metrics:
        zs = [r.z for r in records if r.metric == m and not r.flagged]
        if len(zs) >= 8:
            tests[m] = {
                "shapiro_wilk": normstat.shapiro_wilk(zs),
                "anderson_darling": normstat.anderson_darling(zs),
            }
        else:
            tests[m] = {}

    result = ExperimentResult(config, records, tests, flagged)
    _write_outputs(result)
    return result


def _write_outputs(result: ExperimentResult) -> None:
    out = Path(result.config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    records_path = out / "records.csv"
    lines = [CSV_HEADER] + [r.csv_row() for r in result.records]
    records_path.write_text("\n".join(lines) + "\n")
    result.output_files["records"] = str(records_path)

    summary = {
        "config": {
            "start_prime": result.config.start_prime,
            "prime_count": result.config.prime_count,
            "metrics": list(result.config.metrics),
            "max_graphs_per_prime": result.config.max_graphs_per_prime,
            "threads": result.config.threads,
            "mode": result.config.mode,
            "subsampled": result.config.max_graphs_per_prime is not None,
            "per_prime_mean": "unweighted over generators",
            "sd_divisor": "num_graphs - 1",
        },
        "flagged_primes": result.flagged_primes,
        "tests": {
            m: {name: tr.to_dict() for name, tr in per.items()}
            for m, per in result.tests.items()
        },
    }
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    result.output_files["summary"] = str(summary_path)

    for m in result.config.metrics:
        zs = result.z_column(m)
        if len(zs) < 3:
            continue
        qq = normstat.qq_points(zs)
        qq_path = out / f"qq_{m}.csv"
        qq_lines = ["theoretical,observed"] + [f"{t:.17g},{o:.17g}" for t, o in qq]
        qq_path.write_text("\n".join(qq_lines) + "\n")
        result.output_files[f"qq_{m}"] = str(qq_path)


# ---------------------------------------------------------------------------
# single-graph inspection


@dataclass(frozen=True)
class InspectReport:
    p: int
    g: int
    summary: graphcore.GraphSummary
    metrics: graphcore.NodeMetrics

    def node_rows(self) -> list[tuple[int, int, int, int, int]]:
        m = self.metrics
        return [
            (x, int(m.tail[x]), int(m.cycle[x]), int(m.rho[x]), int(m.component_id[x]))
            for x in range(1, self.summary.n + 1)
        ]


def inspect_graph(p: int, g: int) -> InspectReport:
    graph = graphcore.build_exp_graph(p, g)
    metrics = graphcore.node_metrics(graph)
    return InspectReport(p, g, graphcore.summarize(metrics), metrics)


def render_inspect_text(report: InspectReport, max_node_rows: int = 100) -> str:
    s = report.summary
    lines = [
        f"graph of x -> {report.g}^x mod {report.p} on n = {s.n} nodes",
        f"binary: {s.is_binary}   components: {s.component_count}",
        f"in-degree histogram: {s.in_degree_hist}",
        f"totals:    cycle {s.total_cycle}  tail {s.total_tail}  rho {s.total_rho}",
        f"means:     cycle {s.mean_cycle}  tail {s.mean_tail}  rho {s.mean_rho}",
        f"variances: cycle {s.var_cycle}  tail {s.var_tail}  rho {s.var_rho}",
        f"hist_cycle: {s.hist_cycle}",
        f"hist_tail:  {s.hist_tail}",
        f"hist_rho:   {s.hist_rho}",
    ]
    if s.n <= max_node_rows:
        lines.append("node  tail  cycle  rho  component")
        for x, t, c, r, comp in report.node_rows():
            lines.append(f"{x:4d}  {t:4d}  {c:5d}  {r:3d}  {comp:9d}")
    return "\n".join(lines) + "\n"


def render_inspect_json(report: InspectReport, include_nodes: bool | None = None) -> str:
    s = report.summary
    if include_nodes is None:
        include_nodes = s.n <= 100
    payload = {
        "p": report.p,
        "g": report.g,
        "n": s.n,
        "is_binary": s.is_binary,
        "component_count": s.component_count,
        "totals": {"cycle": s.total_cycle, "tail": s.total_tail, "rho": s.total_rho},
        "means": {"cycle": str(s.mean_cycle), "tail": str(s.mean_tail), "rho": str(s.mean_rho)},
        "variances": {"cycle": str(s.var_cycle), "tail": str(s.var_tail), "rho": str(s.var_rho)},
        "hist_cycle": {str(k): v for k, v in sorted(s.hist_cycle.items())},
        "hist_tail": {str(k): v for k, v in sorted(s.hist_tail.items())},
        "hist_rho": {str(k): v for k, v in sorted(s.hist_rho.items())},
        "in_degree_hist": {str(k): v for k, v in sorted(s.in_degree_hist.items())},
    }
    if include_nodes:
        payload["nodes"] = [
            {"node": x, "tail": t, "cycle": c, "rho": r, "component": comp}
            for x, t, c, r, comp in report.node_rows()
        ]
    return json.dumps(payload, indent=2) + "\n"


def render_inspect_csv(report: InspectReport) -> str:
    rows = ["node,tail,cycle,rho,component"]
    rows += [f"{x},{t},{c},{r},{comp}" for x, t, c, r, comp in report.node_rows()]
    return "\n".join(rows) + "\n"
