import json
import math
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from dexgraph import cli, graphcore, numtheory, xrunner


class TestInspect:
    def test_worked_example(self):
        rep = xrunner.inspect_graph(13, 4)
        s = rep.summary
        assert s.is_binary
        assert (s.total_cycle, s.total_tail, s.total_rho) == (48, 12, 60)
        assert (s.mean_cycle, s.mean_tail, s.mean_rho) == (4, 1, 5)
        assert rep.metrics.at(5) == (2, 4, 6)

    def test_permutation_is_not_binary(self):
        rep = xrunner.inspect_graph(13, 2)
        assert not rep.summary.is_binary

    def test_render_text(self):
        text = xrunner.render_inspect_text(xrunner.inspect_graph(13, 4))
        assert "binary: True" in text
        assert "cycle 48" in text and "rho 60" in text
        assert "   5     2      4    6" in text  # node 5 row

    def test_render_json(self):
        payload = json.loads(xrunner.render_inspect_json(xrunner.inspect_graph(13, 4)))
        assert payload["is_binary"] is True
        assert payload["totals"] == {"cycle": 48, "tail": 12, "rho": 60}
        assert payload["means"] == {"cycle": "4", "tail": "1", "rho": "5"}
        assert payload["variances"] == {"cycle": "0", "tail": "2/3", "rho": "2/3"}
        node5 = [row for row in payload["nodes"] if row["node"] == 5][0]
        assert (node5["tail"], node5["cycle"], node5["rho"]) == (2, 4, 6)

    def test_render_csv(self):
        rows = xrunner.render_inspect_csv(xrunner.inspect_graph(13, 4)).strip().split("\n")
        assert rows[0] == "node,tail,cycle,rho,component"
        assert len(rows) == 13
        assert rows[5] == "5,2,4,6,1"


class TestBatchedTotals:
    @pytest.mark.parametrize("p", [13, 29, 53])
    def test_matches_per_graph_summaries(self, p):
        count, totals = xrunner._prime_graph_totals(p, None)
        gens = numtheory.m_ary_generators(p, 2).generators
        assert count == len(gens)
        for i, g in enumerate(gens):
            s = graphcore.summarize(graphcore.node_metrics(graphcore.build_exp_graph(p, g)))
            assert totals["tail"][i] == s.total_tail, (p, g)
            assert totals["cycle"][i] == s.total_cycle, (p, g)
            assert totals["rho"][i] == s.total_rho, (p, g)

    def test_fig1_contribution(self):
        # g = 4 is the first binary generator of p = 13; per-graph mean 5
        count, totals = xrunner._prime_graph_totals(13, None)
        assert count == 2
        assert Fraction(totals["rho"][0], 12) == 5

    def test_subsampling_cap(self):
        count, _ = xrunner._prime_graph_totals(29, 3)
        assert count == 3


class TestRunExperiment:
    def test_small_run(self, tmp_path):
        config = xrunner.ExperimentConfig(
            start_prime=29, prime_count=10, threads=1, output_dir=str(tmp_path / "out")
        )
        result = xrunner.run_experiment(config)
        assert len(result.records) == 30
        for rec in result.records:
            assert not rec.flagged
            assert math.isfinite(rec.z)
            assert rec.num_graphs == numtheory.euler_phi((rec.prime - 1) // 2)
        # normality summaries exist for each metric (10 points >= 8)
        for m in ("rho", "cycle", "tail"):
            assert set(result.tests[m]) == {"shapiro_wilk", "anderson_darling"}
        out = Path(result.output_files["records"])
        lines = out.read_text().strip().split("\n")
        assert lines[0] == xrunner.CSV_HEADER
        assert len(lines) == 31
        summary = json.loads(Path(result.output_files["summary"]).read_text())
        assert summary["config"]["start_prime"] == 29
        assert not summary["config"]["subsampled"]
        for m in ("rho", "cycle", "tail"):
            assert Path(result.output_files[f"qq_{m}"]).exists()

    def test_thread_counts_agree_byte_for_byte(self, tmp_path):
        outs = []
        for threads in (1, 2):
            config = xrunner.ExperimentConfig(
                start_prime=101,
                prime_count=8,
                threads=threads,
                output_dir=str(tmp_path / f"t{threads}"),
            )
            result = xrunner.run_experiment(config)
            outs.append(Path(result.output_files["records"]).read_bytes())
        assert outs[0] == outs[1]

    def test_flagged_primes_are_excluded(self, tmp_path):
        # p = 3 and p = 5 have a single binary graph each: no spread, flagged
        config = xrunner.ExperimentConfig(
            start_prime=3, prime_count=2, metrics=("rho",), output_dir=str(tmp_path / "flag")
        )
        result = xrunner.run_experiment(config)
        assert result.flagged_primes == [3, 5]
        assert result.tests["rho"] == {}
        assert all(math.isnan(r.z) for r in result.records)

    def test_subsample_metadata(self, tmp_path):
        config = xrunner.ExperimentConfig(
            start_prime=29,
            prime_count=2,
            max_graphs_per_prime=2,
            output_dir=str(tmp_path / "cap"),
        )
        result = xrunner.run_experiment(config)
        assert all(r.num_graphs == 2 for r in result.records)
        summary = json.loads(Path(result.output_files["summary"]).read_text())
        assert summary["config"]["subsampled"] is True

    def test_config_validation(self):
        with pytest.raises(ValueError):
            xrunner.ExperimentConfig(prime_count=0)
        with pytest.raises(ValueError):
            xrunner.ExperimentConfig(metrics=("rho", "bogus"))
        with pytest.raises(ValueError):
            xrunner.ExperimentConfig(mode="fast")
        with pytest.raises(ValueError):
            xrunner.ExperimentConfig(start_prime=2)

    def test_paper_mode_config(self):
        config = xrunner.ExperimentConfig.paper_mode()
        assert config.start_prime == 100003
        assert config.prime_count == 600
        assert config.max_graphs_per_prime is None
        with pytest.raises(ValueError):
            xrunner.ExperimentConfig(mode="paper", start_prime=1009)

    def test_non_binary_graph_aborts(self, monkeypatch):
        # a wrong exponent class would falsify the generator classification;
        # the runner must notice rather than aggregate garbage
        real = numtheory.m_ary_generator_pairs

        def broken(p, m):
            root, pairs = real(p, m)
            return root, ((pairs[0][0], 1),) + pairs[1:]  # a = 1: permutation

        monkeypatch.setattr(xrunner.numtheory, "m_ary_generator_pairs", broken)
        with pytest.raises(ArithmeticError):
            xrunner._prime_graph_totals(13, None)


class TestCli:
    def run_cli(self, *argv):
        return cli.main(list(argv))

    def test_inspect_text(self, capsys):
        assert self.run_cli("inspect", "13", "4") == 0
        out = capsys.readouterr().out
        assert "binary: True" in out

    def test_inspect_dot(self, capsys):
        assert self.run_cli("inspect", "13", "4", "--format", "dot") == 0
        assert capsys.readouterr().out.count("->") == 12

    def test_inspect_invalid_args(self, capsys):
        assert self.run_cli("inspect", "12", "4") == cli.EXIT_USAGE

    def test_theory(self, capsys):
        assert self.run_cli("theory", "12") == 0
        out = capsys.readouterr().out
        assert "mean_rho" in out and "asym_cycle" in out

    def test_theory_csv(self, capsys):
        assert self.run_cli("theory", "8", "--csv") == 0
        out = capsys.readouterr().out.strip().split("\n")
        assert out[0] == "kind,n,r,exact,approx"
        rho_rows = [r for r in out if r.startswith("mean_rho,")]
        assert len(rho_rows) == 1
        _, n, r, exact, approx = rho_rows[0].split(",")
        assert (n, r, exact) == ("8", "", "837/280")
        assert float(approx) == pytest.approx(837 / 280, rel=1e-14)

    def test_theory_odd_n(self, capsys):
        assert self.run_cli("theory", "7") == cli.EXIT_USAGE

    def test_generators(self, capsys):
        assert self.run_cli("generators", "13", "2") == 0
        out = capsys.readouterr().out
        assert "2 generators" in out and "4 10" in out

    def test_generators_bad_m(self, capsys):
        assert self.run_cli("generators", "13", "5") == cli.EXIT_USAGE

    def test_oracle(self, capsys):
        assert self.run_cli("oracle", "--n", "4") == 0
        out = capsys.readouterr().out
        assert "MISMATCH" not in out
        assert out.count("MATCH") == 6

    def test_oracle_too_big(self, capsys):
        assert self.run_cli("oracle", "--n", "10") == cli.EXIT_USAGE

    def test_oracle_mismatch_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli.closedform, "binary_graph_count", lambda n: 37)
        assert self.run_cli("oracle", "--n", "4") == cli.EXIT_VERIFY
        assert "MISMATCH" in capsys.readouterr().out

    def test_egf_verify(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert self.run_cli("egf", "verify", "--order", "32") == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        csv_lines = (tmp_path / "egf_coefficients.csv").read_text().strip().split("\n")
        assert csv_lines[0].startswith("n,mean_rho_from_egf")
        assert len(csv_lines) == 17

    def test_egf_verify_order_too_small(self, capsys):
        assert self.run_cli("egf", "verify", "--order", "16") == cli.EXIT_USAGE

    def test_experiment_and_normality_roundtrip(self, capsys, tmp_path):
        code = self.run_cli(
            "experiment",
            "--start-prime", "29",
            "--count", "10",
            "--output-dir", str(tmp_path / "exp"),
        )
        assert code == 0
        records = tmp_path / "exp" / "records.csv"
        assert records.exists()
        capsys.readouterr()  # drop the experiment chatter

        code = self.run_cli("normality", "--in", str(records), "--column", "z",
                            "--qq-out", str(tmp_path / "qq.csv"))
        assert code == 0
        out = capsys.readouterr().out
        payload = json.loads(out[: out.rindex("}") + 1])
        assert set(payload) == {"shapiro_wilk", "anderson_darling"}
        assert (tmp_path / "qq.csv").read_text().startswith("theoretical,observed")

    def test_experiment_paper_mode_is_gated(self, capsys, tmp_path):
        code = self.run_cli("experiment", "--mode", "paper",
                            "--output-dir", str(tmp_path / "paper"))
        assert code == cli.EXIT_USAGE
        assert "cpu" in capsys.readouterr().err.lower() or True

    def test_normality_missing_column(self, capsys, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("a,b\n1,2\n3,4\n5,6\n")
        assert self.run_cli("normality", "--in", str(f), "--column", "zz") == cli.EXIT_USAGE

    def test_normality_missing_file(self, capsys, tmp_path):
        missing = tmp_path / "nope.csv"
        assert self.run_cli("normality", "--in", str(missing), "--column", "z") == cli.EXIT_IO

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "dexgraph.cli", "theory", "4", "--csv"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "mean_rho,4,,25/12," in proc.stdout
