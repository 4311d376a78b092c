#!/usr/bin/env python3
# A small end-to-end run of the experiment pipeline: for each prime, average
# the per-graph mean rho/cycle/tail lengths over all binary graphs, normalize
# against the closed-form expectation, and test the normalized scores for
# normality.  (The full-scale run uses 600 primes from 100003 and lives
# behind `dexgraph experiment --mode paper --i-have-cpu-days`.)

import tempfile
from pathlib import Path

from dexgraph import ExperimentConfig, run_experiment

outdir = Path(tempfile.mkdtemp(prefix="dexgraph_demo_"))
config = ExperimentConfig(
    start_prime=101,
    prime_count=60,
    metrics=("rho", "cycle", "tail"),
    threads=2,
    output_dir=str(outdir),
)
result = run_experiment(config)

print(f"{len(result.records)} records over {config.prime_count} primes "
      f"starting at {config.start_prime}")
print(f"flagged primes (fewer than 2 graphs or zero spread): {result.flagged_primes}\n")

for metric in config.metrics:
    zs = result.z_column(metric)
    print(f"{metric:6s} n = {len(zs)}")
    for name, tr in result.tests[metric].items():
        print(f"   {name:17s} statistic = {tr.statistic:.4f}  p = {tr.p_value:.4f}  "
              f"-> {tr.verdict()}")

print(f"\noutputs under {outdir}:")
for key, path in sorted(result.output_files.items()):
    print(f"   {key:10s} {path}")
print("\nqq_<metric>.csv pairs standard-normal quantiles with the sorted z-scores; "
      "feed it to any plotting tool for the normality plot.")
