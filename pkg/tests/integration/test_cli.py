"""
Integration tests for the online-mssc command line.

Every run goes through run_cli() and writes its reports under tmp_path.
"""

import csv
import json
import sys

import pytest

from online_mssc.core import Instance, dump_instance
from online_mssc.harness import run_cli
from online_mssc.harness.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK
from online_mssc.harness.output import TRACE_COLUMNS
from online_mssc.main import main

pytestmark = pytest.mark.integration


@pytest.fixture
def instance_file(tmp_path):
    instance = Instance.build(
        [0, 1, 2, 3, 4],
        [[4], [3, 4], [2, 3, 4], [4], [1, 2], [0, 4], [3], [2, 4]],
        r=3,
    )
    return dump_instance(instance, tmp_path / "inputs" / "small.json")


def _load(path):
    return json.loads(path.read_text())


class TestGen:
    def test_writes_instance(self, tmp_path):
        out = tmp_path / "gen"
        code = run_cli(["gen", "--n", "5", "--r", "2", "--m", "10", "--seed", "3", "--out", str(out)])
        assert code == EXIT_OK
        data = _load(out / "instance.json")
        assert data["n"] == 5
        assert data["schema"] == 1
        assert len(data["requests"]) == 10

    def test_same_seed_same_bytes(self, tmp_path):
        args = ["gen", "--n", "6", "--r", "3", "--m", "20", "--seed", "42", "--initial", "shuffled"]
        run_cli(args + ["--out", str(tmp_path / "a")])
        run_cli(args + ["--out", str(tmp_path / "b")])
        first = (tmp_path / "a" / "instance.json").read_bytes()
        second = (tmp_path / "b" / "instance.json").read_bytes()
        assert first == second

    def test_default_output_dir(self, tmp_path):
        assert run_cli(["gen", "--n", "3", "--r", "1", "--m", "2"]) == EXIT_OK
        assert (tmp_path / "runs" / "instance.json").exists()


class TestSimulate:
    def test_trace_and_summary(self, tmp_path, instance_file):
        out = tmp_path / "sim"
        code = run_cli(
            ["simulate", "--instance", str(instance_file), "--baseline", "opt", "--out", str(out)]
        )
        assert code == EXIT_OK
        summary = _load(out / "summary.json")
        assert summary["algorithm"] == "DLM"
        assert summary["m"] == 8
        assert summary["total"] == summary["access"] + summary["reorder"]
        assert summary["cascade_bound_ok"] is True
        assert summary["baseline"] == "opt"
        assert summary["baseline_total"] <= summary["total"]

        rows = _load(out / "trace.json")
        alg = [row for row in rows if row["side"] == "ALG"]
        off = [row for row in rows if row["side"] == "OFF"]
        assert len(alg) == 8
        assert len(off) == 8
        assert alg[-1]["cumulative"] == summary["total"]
        assert off[-1]["cumulative"] == summary["baseline_total"]

    def test_json_trace_carries_exact_budgets(self, tmp_path, instance_file):
        out = tmp_path / "sim"
        code = run_cli(
            ["simulate", "--instance", str(instance_file), "--baseline", "best_fixed", "--out", str(out)]
        )
        assert code == EXIT_OK
        rows = _load(out / "trace.json")
        alg = [row for row in rows if row["side"] == "ALG"]
        off = [row for row in rows if row["side"] == "OFF"]
        for row in alg:
            assert len(row["budgets"]) == 5
            assert all("/" in budget for budget in row["budgets"])
            assert len(row["fetched"]) == row["fetched_count"]
            assert all("/" in delta for _, delta in row["budget_increments"])
        assert all("budgets" not in row and "fetched" not in row for row in off)

    def test_csv_trace(self, tmp_path, instance_file):
        out = tmp_path / "sim"
        code = run_cli(
            ["simulate", "--instance", str(instance_file), "--format", "csv", "--out", str(out)]
        )
        assert code == EXIT_OK
        with (out / "trace.csv").open() as f:
            reader = csv.DictReader(f)
            assert reader.fieldnames == TRACE_COLUMNS
            rows = list(reader)
        assert [row["step"] for row in rows] == [str(t) for t in range(1, 9)]
        assert all(row["side"] == "ALG" for row in rows)

    def test_fixed_divisor(self, tmp_path, instance_file):
        out = tmp_path / "sim"
        code = run_cli(
            [
                "simulate", "--instance", str(instance_file),
                "--algorithm", "dlm_c", "--c", "2", "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        assert _load(out / "summary.json")["algorithm"] == "DLM_2"

    def test_choices_file(self, tmp_path, instance_file):
        choices = tmp_path / "choices.json"
        choices.write_text(json.dumps([4, 3, 2, 4, 1, 0, 3, 2]))
        out = tmp_path / "sim"
        code = run_cli(
            [
                "simulate", "--instance", str(instance_file), "--baseline", "mtfb_choices",
                "--choices", str(choices), "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        assert _load(out / "summary.json")["baseline"] == "mtfb_choices"

    def test_illegal_choice(self, tmp_path, instance_file):
        choices = tmp_path / "choices.json"
        choices.write_text(json.dumps([0] * 8))
        code = run_cli(
            [
                "simulate", "--instance", str(instance_file), "--baseline", "mtfb_choices",
                "--choices", str(choices), "--out", str(tmp_path / "sim"),
            ]
        )
        assert code == EXIT_ERROR

    def test_campaign(self, tmp_path):
        out = tmp_path / "camp"
        code = run_cli(
            ["simulate", "--n", "5", "--r", "2", "--m", "15", "--count", "3", "--out", str(out)]
        )
        assert code == EXIT_OK
        rows = _load(out / "simulate.json")
        assert [row["index"] for row in rows] == [0, 1, 2]
        assert [row["seed"] for row in rows] == [0, 1, 2]


class TestAudit:
    @pytest.mark.parametrize("baseline", ["mtfb_from_opt", "best_fixed", "mtfb_choices"])
    def test_passes(self, tmp_path, instance_file, baseline):
        out = tmp_path / "audit"
        code = run_cli(
            ["audit", "--instance", str(instance_file), "--baseline", baseline, "--out", str(out)]
        )
        assert code == EXIT_OK
        report = _load(out / "audit.json")
        assert report["summary"]["passed"] is True
        assert report["summary"]["failures"] == 0
        assert report["beta"] == "55/2"
        assert report["kappa"] == 8
        assert report["records"]

    def test_failures_only_csv(self, tmp_path, instance_file):
        out = tmp_path / "audit"
        code = run_cli(
            [
                "audit", "--instance", str(instance_file), "--baseline", "mtfb_from_opt",
                "--failures-only", "--format", "csv", "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        assert (out / "audit.csv").read_text() == "schema\n"

    @pytest.mark.parametrize("extra", [[], ["--baseline", "opt"], ["--baseline", "lb_strategy"]])
    def test_needs_mtf_based_baseline(self, tmp_path, instance_file, extra):
        code = run_cli(
            ["audit", "--instance", str(instance_file), "--out", str(tmp_path / "a")] + extra
        )
        assert code == EXIT_ERROR

    def test_campaign(self, tmp_path):
        out = tmp_path / "camp"
        code = run_cli(
            [
                "audit", "--n", "5", "--r", "3", "--m", "6", "--baseline", "mtfb_from_opt",
                "--count", "4", "--format", "csv", "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        with (out / "audit.csv").open() as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 4
        assert all(row["passed"] == "True" for row in rows)


class TestOracle:
    def test_single_instance(self, tmp_path, instance_file):
        out = tmp_path / "oracle"
        code = run_cli(["oracle", "--instance", str(instance_file), "--out", str(out)])
        assert code == EXIT_OK
        (row,) = _load(out / "oracle.json")
        assert row["opt"] <= row["dlm"]
        assert row["off_star"] <= row["opt_times_four"]
        assert row["best_fixed"] <= row["initial_fixed"]
        assert row["oracle_chain_ok"] is True
        assert "seed" not in row

    def test_campaign_is_reproducible(self, tmp_path):
        args = ["oracle", "--n", "4", "--r", "2", "--m", "8", "--count", "3", "--seed", "5"]
        assert run_cli(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
        assert run_cli(args + ["--out", str(tmp_path / "b")]) == EXIT_OK
        first = (tmp_path / "a" / "oracle.json").read_bytes()
        assert first == (tmp_path / "b" / "oracle.json").read_bytes()
        assert [row["seed"] for row in json.loads(first)] == [5, 6, 7]

    def test_opt_above_best_fixed_plus_distance(self, tmp_path):
        # OPT pays the first access on the initial list before it can move
        out = tmp_path / "oracle"
        args = ["oracle", "--n", "4", "--r", "2", "--m", "8", "--seed", "7", "--out", str(out)]
        assert run_cli(args) == EXIT_OK
        (row,) = _load(out / "oracle.json")
        assert row["oracle_chain_ok"] is True
        assert row["opt"] <= row["initial_fixed"]

    def test_too_large(self, tmp_path):
        code = run_cli(["oracle", "--n", "9", "--r", "2", "--m", "3", "--out", str(tmp_path)])
        assert code == EXIT_ERROR


class TestLowerBound:
    def test_json_report(self, tmp_path):
        out = tmp_path / "lb"
        code = run_cli(["lowerbound", "--r", "2", "--c", "1", "--phases", "4", "--out", str(out)])
        assert code == EXIT_OK
        report = _load(out / "lowerbound.json")
        assert report["n"] == 6
        assert report["target_ratio"] == "4/3"
        assert len(report["records"]) == 4
        assert report["passed"] is True

    def test_csv_reports(self, tmp_path):
        out = tmp_path / "lb"
        code = run_cli(
            ["lowerbound", "--r", "3", "--c", "1", "--phases", "3", "--format", "csv", "--out", str(out)]
        )
        assert code == EXIT_OK
        with (out / "lowerbound.csv").open() as f:
            (row,) = list(csv.DictReader(f))
        assert row["r"] == "3"
        with (out / "phases.csv").open() as f:
            assert len(list(csv.DictReader(f))) == 3

    @pytest.mark.parametrize("r,c", [(3, 2), (4, 1), (5, 2)])
    def test_blocks_not_divisible_by_r_minus_one(self, tmp_path, r, c):
        out = tmp_path / "lb"
        args = ["lowerbound", "--r", str(r), "--c", str(c), "--phases", "20", "--out", str(out)]
        assert run_cli(args) == EXIT_OK
        report = _load(out / "lowerbound.json")
        assert report["passed"] is True
        assert all(record["off_cost"] <= 3 * c + 3 * r for record in report["records"])

    def test_r_one(self, tmp_path):
        code = run_cli(["lowerbound", "--r", "1", "--c", "1", "--out", str(tmp_path)])
        assert code == EXIT_ERROR

    def test_missing_c(self, tmp_path):
        assert run_cli(["lowerbound", "--r", "2", "--out", str(tmp_path)]) == EXIT_ERROR


class TestErrors:
    def test_no_command(self):
        assert run_cli([]) == EXIT_ERROR

    def test_missing_instance(self, tmp_path):
        code = run_cli(["simulate", "--instance", str(tmp_path / "absent.json")])
        assert code == EXIT_ERROR

    def test_malformed_instance(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 2, "r": 1, "initial": [0, 1], "requests": [[0, 1]]}')
        assert run_cli(["audit", "--instance", str(path), "--baseline", "best_fixed"]) == EXIT_ERROR

    def test_config_file(self, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text(f"n: 4\nr: 2\nm: 5\nout: {tmp_path / 'cfg'}\n")
        assert run_cli(["oracle", "--config", str(config)]) == EXIT_OK
        assert (tmp_path / "cfg" / "oracle.json").exists()

    def test_bad_config_value(self, tmp_path):
        assert run_cli(["simulate", "--algorithm", "dlm_c", "--out", str(tmp_path)]) == EXIT_ERROR

    def test_failed_check_exit_code(self, tmp_path, monkeypatch):
        from online_mssc.harness import cli
        from online_mssc.models import AuditSummary

        real = cli.run_audit

        def failing(config):
            report = real(config)
            report.summary = AuditSummary(steps=report.m, checks=1, failures=1)
            return report

        monkeypatch.setattr(cli, "run_audit", failing)
        code = run_cli(["audit", "--n", "4", "--r", "2", "--m", "3", "--baseline", "best_fixed", "--out", str(tmp_path)])
        assert code == EXIT_FAILED

    def test_main_exits_with_code(self, monkeypatch):
        monkeypatch.setattr(sys, "argv", ["online-mssc"])
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == EXIT_ERROR
