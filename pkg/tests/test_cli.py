"""Tests for the command-line interface: outputs, formats, exit codes."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from monopmf import format_counts, format_pmf, parse_pmf, sample, uniform_pmf
from monopmf.cli import main
from monopmf.pmf import Counts

TABLE_COUNTS = Counts(np.array([20, 14, 11, 22, 15, 18]), n=100)


@pytest.fixture
def counts_file(tmp_path):
    path = tmp_path / "sample.counts"
    path.write_text(format_counts(TABLE_COUNTS))
    return path


@pytest.fixture
def truth_file(tmp_path):
    path = tmp_path / "uniform5.pmf"
    path.write_text(format_pmf(uniform_pmf(5)))
    return path


class TestEstimate:
    def test_gren_output_matches_worked_example(self, counts_file, tmp_path):
        out = tmp_path / "fit.pmf"
        code = main(["estimate", "--counts", str(counts_file), "--estimator", "gren", "--out", str(out)])
        assert code == 0
        fit = parse_pmf(out.read_text(), monotone=True)
        assert fit.probs == pytest.approx([0.20, 0.16, 0.16, 0.16, 0.16, 0.16], abs=1e-15)

    def test_distance_table_matches_reference(self, counts_file, truth_file, tmp_path, capsys):
        out = tmp_path / "fit.pmf"
        code = main([
            "estimate", "--counts", str(counts_file), "--estimator", "all",
            "--out", str(out), "--truth", str(truth_file),
        ])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].split("\t") == ["estimator", "hellinger", "l1", "l2", "linf"]
        rows = {parts[0]: [float(v) for v in parts[1:]] for parts in (l.split("\t") for l in lines[1:])}
        # columns: hellinger, l1, l2
        assert rows["empirical"][:3] == pytest.approx([0.08043, 0.2, 0.09129], abs=5e-5)
        assert rows["rear"][:3] == pytest.approx([0.08043, 0.2, 0.09129], abs=5e-5)
        assert rows["gren"][:3] == pytest.approx([0.03048, 0.06667, 0.03651], abs=5e-5)

    def test_estimate_files_round_trip(self, counts_file, tmp_path):
        out = tmp_path / "fit.pmf"
        main(["estimate", "--counts", str(counts_file), "--estimator", "all", "--out", str(out)])
        emp = parse_pmf((tmp_path / "fit.empirical.pmf").read_text())
        assert_array_equal(emp.probs, TABLE_COUNTS.counts / 100.0)
        for name in ("empirical", "rear", "gren"):
            fit = parse_pmf((tmp_path / f"fit.{name}.pmf").read_text())
            assert abs(fit.probs.sum() - 1.0) < 1e-12

    def test_rear_with_interior_zeros_trims_tail(self, tmp_path):
        path = tmp_path / "z.counts"
        path.write_text("0\t3\n1\t0\n2\t1\n")
        out = tmp_path / "z.pmf"
        code = main(["estimate", "--counts", str(path), "--estimator", "rear", "--out", str(out)])
        assert code == 0
        fit = parse_pmf(out.read_text())
        assert fit.probs == pytest.approx([0.75, 0.25])

    def test_single_point_counts(self, tmp_path, capsys):
        path = tmp_path / "one.counts"
        path.write_text("0\t5\n")
        code = main(["estimate", "--counts", str(path), "--estimator", "all"])
        assert code == 0
        body = capsys.readouterr().out
        assert body.count("0\t1\n") == 3

    def test_missing_file_exits_2(self, capsys):
        assert main(["estimate", "--counts", "/no/such/file"]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_invalid_counts_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.counts"
        path.write_text("0\t5\n2\t1\n")
        assert main(["estimate", "--counts", str(path)]) == 2
        assert "invalid counts" in capsys.readouterr().err

    def test_bad_flag_exits_1(self):
        with pytest.raises(SystemExit) as err:
            main(["estimate", "--counts", "x", "--estimator", "mle"])
        assert err.value.code == 1


class TestSimulate:
    def test_deterministic_files(self, tmp_path):
        args = ["simulate", "--truth", "uniform:5", "--n", "100", "--reps", "50",
                "--seed", "7", "--out", str(tmp_path / "runA")]
        assert main(args) == 0
        args[-1] = str(tmp_path / "runB")
        assert main(args) == 0
        for suffix in ("_raw.csv", "_summary.csv"):
            a = (tmp_path / f"runA{suffix}").read_bytes()
            b = (tmp_path / f"runB{suffix}").read_bytes()
            assert a == b

    def test_mixture_truth_spec_parses(self, tmp_path):
        code = main(["simulate", "--truth", "mixture:0.2:3,0.8:7", "--n", "20",
                     "--reps", "5", "--seed", "1", "--out", str(tmp_path / "m")])
        assert code == 0
        meta = json.loads((tmp_path / "m_meta.json").read_text())
        assert meta["truth"] == {"family": "mixture", "weights": [0.2, 0.8], "ys": [3, 7]}

    def test_mixing_target_rows_valid(self, tmp_path):
        code = main(["simulate", "--truth", "geometric:0.75", "--n", "100", "--reps", "30",
                     "--seed", "3", "--target", "mixing", "--estimators", "rear,gren",
                     "--metrics", "l1,l2", "--out", str(tmp_path / "mix")])
        assert code == 0
        with open(tmp_path / "mix_raw.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 30 * 2 * 2
        assert all(float(r["value"]) >= 0 for r in rows)

    def test_config_json_alternative(self, tmp_path):
        cfg = {"truth": "uniform:4", "n": 30, "reps": 10, "seed": 2,
               "estimators": ["empirical", "gren"], "metrics": ["l2"], "target": "pmf"}
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        code = main(["simulate", "--config", str(cfg_path), "--out", str(tmp_path / "c")])
        assert code == 0
        meta = json.loads((tmp_path / "c_meta.json").read_text())
        assert meta["estimators"] == ["empirical", "grenander"]

    def test_malformed_truth_exits_1(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["simulate", "--truth", "zipf:2", "--out", str(tmp_path / "x")])
        assert err.value.code == 1

    def test_missing_truth_and_config_exits_1(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["simulate", "--out", str(tmp_path / "x")])
        assert err.value.code == 1


class TestOtherCommands:
    def test_asymptotics_values(self, capsys):
        assert main(["asymptotics", "--truth", "uniform:5"]) == 0
        table = dict(
            line.split("\t", 1) for line in capsys.readouterr().out.strip().splitlines()
            if "\t" in line and not line[0].isdigit()
        )
        assert float(table["e_sq_l2_emp"]) == pytest.approx(0.833333, abs=1e-5)
        assert float(table["e_sq_l2_gren"]) == pytest.approx(0.241667, abs=1e-5)
        assert float(table["e_hell_gren"]) == pytest.approx(1.45, abs=1e-5)

    def test_asymptotics_block_gap_identity(self, capsys):
        assert main(["asymptotics", "--truth", "uniform:5"]) == 0
        out = capsys.readouterr().out
        table = dict(line.split("\t", 1) for line in out.strip().splitlines() if "\t" in line and not line[0].isdigit())
        gap = float(table["e_sq_l2_emp"]) - float(table["e_sq_l2_gren"])
        assert float(table["l2_sq_gap"]) == pytest.approx(gap, abs=1e-5)
        assert "0\t5\t" in out  # single block [0, 5]

    def test_asymptotics_strict_gap_zero(self, capsys):
        assert main(["asymptotics", "--truth", "mixture:0.5:0,0.3:1,0.2:2"]) == 0
        table = dict(
            line.split("\t", 1) for line in capsys.readouterr().out.strip().splitlines()
            if "\t" in line and not line[0].isdigit()
        )
        assert float(table["l2_sq_gap"]) == pytest.approx(0.0, abs=1e-12)

    def test_risk_output(self, capsys):
        code = main(["risk", "--truth", "uniform:2", "--n", "50", "--k", "2",
                     "--estimator", "empirical", "--reps", "2000", "--seed", "4"])
        assert code == 0
        table = dict(line.split("\t") for line in capsys.readouterr().out.strip().splitlines())
        target = 1 - 3 * (1 / 3) ** 2
        assert float(table["scaled_risk"]) == pytest.approx(target, rel=0.05)

    def test_limits_csv(self, tmp_path):
        code = main(["limits", "--truth", "mixture:0.2:3,0.8:7", "--reps", "40",
                     "--seed", "6", "--out", str(tmp_path / "lim")])
        assert code == 0
        with open(tmp_path / "lim_draws.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 40 * 8
        assert set(rows[0]) == {"draw", "x", "y", "y_rear", "y_gren"}
        with open(tmp_path / "lim_aggregate.csv") as fh:
            agg = list(csv.DictReader(fh))
        assert len(agg) == 8

    def test_mixing_from_pmf_file(self, tmp_path, capsys):
        path = tmp_path / "p.pmf"
        path.write_text(format_pmf(uniform_pmf(5)))
        assert main(["mixing", "--pmf", str(path)]) == 0
        lines = [l for l in capsys.readouterr().out.splitlines() if not l.startswith("#")]
        weights = np.array([float(l.split("\t")[1]) for l in lines])
        assert weights == pytest.approx([0, 0, 0, 0, 0, 1], abs=1e-15)

    def test_mixing_from_counts(self, counts_file, tmp_path):
        out = tmp_path / "q.txt"
        code = main(["mixing", "--counts", str(counts_file), "--estimator", "gren", "--out", str(out)])
        assert code == 0
        weights = np.array([float(l.split("\t")[1]) for l in out.read_text().splitlines()])
        assert abs(weights.sum() - 1.0) < 1e-12
        assert np.all(weights >= -1e-15)

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["--version"])
        assert err.value.code == 0


class TestModuleEntry:
    def test_python_dash_m(self, tmp_path):
        path = tmp_path / "one.counts"
        path.write_text("0\t2\n1\t1\n")
        proc = subprocess.run(
            [sys.executable, "-m", "monopmf", "estimate", "--counts", str(path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "empirical" in proc.stdout
