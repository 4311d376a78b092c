"""Command-line interface.

Subcommands: theory, generators, inspect, experiment, normality,
egf verify, oracle.  Exit codes: 0 success / all checks passed,
2 invalid arguments, 3 verification failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv as csvmod
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from dexgraph import closedform, egfseries, graphcore, normstat, numtheory, oracle, xrunner

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_IO = 4


def _fmt_exact(v: Fraction | None) -> str:
    return str(v) if v is not None else ""


def cmd_theory(args) -> int:
    rows = closedform.theory_table(args.n, tuple(args.r))
    if args.csv:
        print("kind,n,r,exact,approx")
        for tv in rows:
            print(f"{tv.kind},{tv.n},{tv.r if tv.r is not None else ''},"
                  f"{_fmt_exact(tv.exact)},{tv.approx:.17g}")
    else:
        print(f"closed-form statistics for n = {args.n}")
        for tv in rows:
            tag = f"{tv.kind}" + (f"(r={tv.r})" if tv.r is not None else "")
            exact = f"  = {tv.exact}" if tv.exact is not None else ""
            print(f"  {tag:18s} {tv.approx:.12g}{exact}")
    mr = closedform.expected_rho(args.n)
    mc = closedform.expected_cycle(args.n)
    mt = closedform.expected_tail(args.n)
    if mr.exact is not None and mr.exact != mc.exact + mt.exact:
        print("linearity check FAILED: mean_rho != mean_cycle + mean_tail", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_generators(args) -> int:
    gs = numtheory.m_ary_generators(args.p, args.m)
    expected = numtheory.euler_phi((args.p - 1) // args.m)
    print(f"p = {gs.p}, m = {gs.m}: {len(gs)} generators (phi((p-1)/m) = {expected})")
    shown = gs.generators if len(gs) <= args.limit else gs.generators[: args.limit]
    print(" ".join(str(g) for g in shown) + ("" if len(shown) == len(gs) else " ..."))
    return EXIT_OK if len(gs) == expected else EXIT_VERIFY


def cmd_inspect(args) -> int:
    report = xrunner.inspect_graph(args.p, args.g)
    if args.format == "text":
        sys.stdout.write(xrunner.render_inspect_text(report))
    elif args.format == "json":
        sys.stdout.write(xrunner.render_inspect_json(report, include_nodes=args.nodes or None))
    elif args.format == "csv":
        sys.stdout.write(xrunner.render_inspect_csv(report))
    else:
        sys.stdout.write(graphcore.export_dot(report.metrics.graph))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.mode == "paper":
        n_est = 100003
        graphs_est = numtheory.euler_phi((n_est - 1) // 2)
        print("paper mode: 600 consecutive primes from 100003, all binary generators per prime.")
        print(f"rough cost: ~{600 * graphs_est * n_est:.1e} node operations "
              "(order 1e13; hundreds to thousands of CPU-hours).")
        if not args.i_have_cpu_days:
            print("refusing to start without --i-have-cpu-days", file=sys.stderr)
            return EXIT_USAGE
        config = xrunner.ExperimentConfig.paper_mode(threads=args.threads, output_dir=args.output_dir)
    else:
        config = xrunner.ExperimentConfig(
            start_prime=args.start_prime,
            prime_count=args.count,
            metrics=tuple(args.metrics.split(",")),
            max_graphs_per_prime=args.max_graphs_per_prime,
            threads=args.threads,
            output_dir=args.output_dir,
            mode="desk",
        )
    result = xrunner.run_experiment(config)
    print(f"wrote {result.output_files['records']}")
    print(f"wrote {result.output_files['summary']}")
    for m in config.metrics:
        for name, tr in result.tests.get(m, {}).items():
            print(f"{m:6s} {name:17s} stat={tr.statistic:.6f} p={tr.p_value:.6g} ({tr.verdict()})")
    return EXIT_OK


def cmd_normality(args) -> int:
    path = Path(args.infile)
    try:
        with path.open(newline="") as fh:
            reader = csvmod.DictReader(fh)
            if reader.fieldnames is None or args.column not in reader.fieldnames:
                print(f"column {args.column!r} not found in {path}", file=sys.stderr)
                return EXIT_USAGE
            values = []
            for row in reader:
                v = float(row[args.column])
                if math.isfinite(v):
                    values.append(v)
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if len(values) < 3:
        print("need at least 3 finite values", file=sys.stderr)
        return EXIT_USAGE
    sw = normstat.shapiro_wilk(values)
    ad = normstat.anderson_darling(values)
    print(json.dumps({"shapiro_wilk": sw.to_dict(), "anderson_darling": ad.to_dict()}, indent=2))
    qq_out = Path(args.qq_out) if args.qq_out else path.with_suffix(".qq.csv")
    try:
        lines = ["theoretical,observed"]
        lines += [f"{t:.17g},{o:.17g}" for t, o in normstat.qq_points(values)]
        qq_out.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"cannot write {qq_out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {qq_out}")
    return EXIT_OK


def _egf_identity_checks(order: int) -> list[tuple[str, bool]]:
    b = egfseries.binary_tree_series(order)
    c = egfseries.component_series(order)
    f = egfseries.graph_series(order)
    w = b.shift_up(1)
    one = egfseries.RationalSeries.one(order)
    xi = egfseries.total_rho_series(order)
    xi2 = egfseries.total_rho_square_series(order)
    ks = range(order // 2 + 1)

    checks = [
        ("f = exp(c)", c.exp().coeffs == f.coeffs),
        ("f (1 - z b) = 1", (f * (one - w)).coeffs == one.coeffs),
        ("b = z + z b^2 / 2", egfseries.check_tree_equation(order, b)),
        ("[z^n] f = scaled graph count", all(
            f[2 * k] == closedform.scaled_graph_count(2 * k, exact=True).exact for k in ks if k >= 1
        ) and all(f[i] == 0 for i in range(1, order + 1, 2))),
        ("rho coeffs match closed form", all(
            xi[2 * k] == egfseries.closed_form_coefficient("rho", k) for k in ks
        )),
        ("rho^2 coeffs match closed form", all(
            xi2[2 * k] == egfseries.closed_form_coefficient("rho_sq", k) for k in ks
        )),
        ("rho recurrence (size-indexed)", egfseries.check_recurrence(
            xi.coeffs, egfseries.RHO_RECURRENCE_N, egfseries.RHO_INITIALS_N, stride=2
        )),
        ("rho recurrence (half-indexed)", egfseries.check_recurrence(
            [xi[2 * k] for k in ks], egfseries.RHO_RECURRENCE_K, egfseries.RHO_INITIALS_K
        )),
        ("rho^2 recurrence (size-indexed)", egfseries.check_recurrence(
            xi2.coeffs, egfseries.RHO_SQ_RECURRENCE_N, egfseries.RHO_SQ_INITIALS_N, stride=2
        )),
        ("rho^2 recurrence (half-indexed)", egfseries.check_recurrence(
            [xi2[2 * k] for k in ks], egfseries.RHO_SQ_RECURRENCE_K, egfseries.RHO_SQ_INITIALS_K
        )),
    ]

    mean_ok = True
    var_ok = True
    for k in range(1, order // 2 + 1):
        n = 2 * k
        ng = n * closedform.scaled_graph_count(n, exact=True).exact
        mean_ok = mean_ok and xi[n] / ng == closedform.expected_rho(n, exact=True).exact
        var_ok = var_ok and (
            xi2[n] / ng - (xi[n] / ng) ** 2 == closedform.rho_variance(n, exact=True).exact
        )
    checks.append(("normalized mean matches closed form", mean_ok))
    checks.append(("normalized variance matches closed form", var_ok))

    cons_ok = True
    n_max = min(order, 40)
    levels = egfseries.rho_level_series_batch(order, n_max)
    for n in range(2, n_max + 1, 2):
        total = sum(levels[r][n] for r in range(1, n + 1))
        weighted = sum(r * levels[r][n] for r in range(1, n + 1))
        cons_ok = cons_ok and total == n * f[n] and weighted == xi[n]
    checks.append(("rho level conservation", cons_ok))
    return checks


def cmd_egf_verify(args) -> int:
    if args.order < 26:
        # the recurrence checker demands at least 10 testable shifts
        print("--order must be at least 26", file=sys.stderr)
        return EXIT_USAGE
    checks = _egf_identity_checks(args.order)
    width = max(len(name) for name, _ in checks)
    all_ok = True
    for name, ok in checks:
        print(f"{name:{width}s}  {'PASS' if ok else 'FAIL'}")
        all_ok = all_ok and ok
    rows = ["n,mean_rho_from_egf,var_from_egf,delta_1,delta_2,delta_3"]
    f = egfseries.graph_series(args.order)
    xi = egfseries.total_rho_series(args.order)
    xi2 = egfseries.total_rho_square_series(args.order)
    deltas = {r: egfseries.rho_level_series(args.order, r) for r in (1, 2, 3)}
    for k in range(1, args.order // 2 + 1):
        n = 2 * k
        ng = n * f[n]
        mean = xi[n] / ng
        var = xi2[n] / ng - mean * mean
        dnorm = [deltas[r][n] / f[n] for r in (1, 2, 3)]
        rows.append(f"{n},{float(mean):.17g},{float(var):.17g},"
                    f"{float(dnorm[0]):.17g},{float(dnorm[1]):.17g},{float(dnorm[2]):.17g}")
    out = Path(args.csv_out)
    try:
        out.write_text("\n".join(rows) + "\n")
    except OSError as exc:
        print(f"cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {out}")
    return EXIT_OK if all_ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    try:
        report = oracle.enumerate_binary(args.n, jobs=args.jobs)
    except oracle.BudgetExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    mean_rho, mean_cycle, mean_tail, var_rho = oracle.oracle_means(report)
    expected_count = closedform.binary_graph_count(args.n)
    theory = {
        "count": (report.binary_graph_count, expected_count),
        "mean_rho": (mean_rho, closedform.expected_rho(args.n, exact=True).exact),
        "mean_cycle": (mean_cycle, closedform.expected_cycle(args.n, exact=True).exact),
        "mean_tail": (mean_tail, closedform.expected_tail(args.n, exact=True).exact),
        "var_rho": (var_rho, closedform.rho_variance(args.n, exact=True).exact),
    }
    print(f"enumerated all successor maps on {args.n} nodes")
    print(f"{'quantity':12s} {'enumerated':>16s} {'closed form':>16s}  verdict")
    all_ok = True
    for name, (got, want) in theory.items():
        ok = got == want
        all_ok = all_ok and ok
        print(f"{name:12s} {str(got):>16s} {str(want):>16s}  {'MATCH' if ok else 'MISMATCH'}")
    order = max(args.n, 4)
    levels = egfseries.rho_level_series_batch(order, args.n)
    gexact = closedform.scaled_graph_count(args.n, exact=True).exact
    egf_ok = True
    for r in range(1, args.n + 1):
        want = levels[r][args.n] / gexact
        got = Fraction(report.r_hist_rho.get(r, 0), report.binary_graph_count)
        egf_ok = egf_ok and got == want
    print(f"{'rho levels':12s} {'(hist)':>16s} {'(series)':>16s}  {'MATCH' if egf_ok else 'MISMATCH'}")
    return EXIT_OK if all_ok and egf_ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dexgraph", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("theory", help="closed-form statistics for one graph size")
    t.add_argument("n", type=int)
    t.add_argument("--r", type=int, nargs="*", default=[1, 2, 3])
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_theory)

    g = sub.add_parser("generators", help="residues g producing m-ary graphs mod p")
    g.add_argument("p", type=int)
    g.add_argument("m", type=int)
    g.add_argument("--limit", type=int, default=50)
    g.set_defaults(func=cmd_generators)

    i = sub.add_parser("inspect", help="full statistics of the graph of one (p, g)")
    i.add_argument("p", type=int)
    i.add_argument("g", type=int)
    i.add_argument("--format", choices=("text", "json", "csv", "dot"), default="text")
    i.add_argument("--nodes", action="store_true", help="force per-node output in json")
    i.set_defaults(func=cmd_inspect)

    e = sub.add_parser("experiment", help="per-prime normality experiment")
    e.add_argument("--start-prime", type=int, default=1009)
    e.add_argument("--count", type=int, default=200)
    e.add_argument("--metrics", default="rho,cycle,tail")
    e.add_argument("--max-graphs-per-prime", type=int, default=None)
    e.add_argument("--threads", type=int, default=1)
    e.add_argument("--output-dir", default="experiment_out")
    e.add_argument("--mode", choices=("desk", "paper"), default="desk")
    e.add_argument("--i-have-cpu-days", action="store_true")
    e.set_defaults(func=cmd_experiment)

    nrm = sub.add_parser("normality", help="normality tests over a CSV column")
    nrm.add_argument("--in", dest="infile", required=True)
    nrm.add_argument("--column", required=True)
    nrm.add_argument("--qq-out", default=None)
    nrm.set_defaults(func=cmd_normality)

    egf = sub.add_parser("egf", help="generating-function machinery")
    egf_sub = egf.add_subparsers(dest="egf_command", required=True)
    v = egf_sub.add_parser("verify", help="verify series identities and recurrences")
    v.add_argument("--order", type=int, default=64)
    v.add_argument("--csv-out", default="egf_coefficients.csv")
    v.set_defaults(func=cmd_egf_verify)

    o = sub.add_parser("oracle", help="brute-force enumeration vs closed forms")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--jobs", type=int, default=1)
    o.set_defaults(func=cmd_oracle)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, normstat.DegenerateSampleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
