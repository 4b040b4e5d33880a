import csv
import io
import json

import pytest

from conftest import SYNTH_MEANS, SYNTH_SPREADS
from tripace.cli import main
from tripace.experiment import (
    ExperimentConfig,
    ExperimentError,
    ExperimentReport,
    RunOutcome,
    emit_report,
    run_experiment,
)
from tripace.preference import ModelConfig, SplitVector
from tripace.timekit import parse_duration

HIGH_SPEC = {
    "seed": 1,
    "size": 30,
    "r_swim_bike": 0.73,
    "r_bike_run": 0.0,
    "means": list(SYNTH_MEANS),
    "spreads": list(SYNTH_SPREADS),
}

COLLINEAR_SPEC = dict(HIGH_SPEC, r_swim_bike=1.0, r_bike_run=1.0)


def high_spec_json() -> str:
    return json.dumps(HIGH_SPEC)


class TestRunExperiment:
    def make_config(self, **overrides):
        kwargs = dict(
            synth_spec=HIGH_SPEC,
            runs=2,
            base_seed=10,
            max_evaluations=2_000,
            model=ModelConfig(),
        )
        kwargs.update(overrides)
        return ExperimentConfig(**kwargs)

    def test_runs_are_seeded_from_base(self):
        report = run_experiment(self.make_config())
        assert [o.seed for o in report.per_run] == [11, 12]
        assert [o.index for o in report.per_run] == [1, 2]

    def test_mean_total_consistency(self):
        report = run_experiment(self.make_config(runs=3))
        totals = [o.total for o in report.feasible_runs]
        assert report.mean_row[5] == pytest.approx(sum(totals) / len(totals), abs=1e-9)
        assert report.mean_row[5] == pytest.approx(sum(report.mean_row[:5]), abs=1e-9)

    def test_single_run_stdev_is_zero(self):
        report = run_experiment(self.make_config(runs=1))
        assert report.stdev_row == (0.0,) * 6

    def test_all_infeasible_raises(self):
        cfg = self.make_config(synth_spec=COLLINEAR_SPEC, runs=2, max_evaluations=1_000)
        with pytest.raises(ExperimentError, match="infeasible"):
            run_experiment(cfg)

    def test_config_validation(self):
        with pytest.raises(ValueError, match="exactly one"):
            ExperimentConfig()
        with pytest.raises(ValueError, match="group"):
            ExperimentConfig(archive_path="x.csv")
        with pytest.raises(ValueError, match="runs"):
            ExperimentConfig(synth_spec=HIGH_SPEC, runs=0)


class TestEmitReport:
    def make_report(self, outcomes, mean_row=None, stdev_row=None):
        return ExperimentReport(
            archive_label="demo",
            archive_group="M25-29",
            archive_size=30,
            archive_correlation_sum=0.7010,
            per_run=tuple(outcomes),
            mean_row=mean_row,
            stdev_row=stdev_row,
        )

    def test_text_mean_row_rendering(self):
        mean_row = (33.8525, 2.8145, 167.56316666666666, 3.807, 91.96133333333333, 299.9985)
        report = self.make_report([], mean_row=mean_row, stdev_row=(0.0,) * 6)
        text = emit_report(report, "text")
        assert "33:51.15 | 2:48.87 | 2:47:33.79 | 3:48.42 | 1:31:57.68" in text
        assert "Mean | " in text and "Stdev | " in text

    def test_empty_runs_header_only(self):
        report = self.make_report([])
        text = emit_report(report, "text")
        assert "Run | Swimming | T1 | Cycling | T2 | Running | Total" in text
        assert len(text.splitlines()) == 2
        rows = list(csv.reader(io.StringIO(emit_report(report, "csv"))))
        assert len(rows) == 1
        doc = json.loads(emit_report(report, "json"))
        assert doc["runs"] == [] and doc["mean"] is None

    def test_infeasible_row_rendered(self):
        outcome = RunOutcome(
            index=1, seed=2, splits=None, total=None,
            correlation_before=0.7, correlation_after=None, error="no feasible plan",
        )
        text = emit_report(self.make_report([outcome]), "text")
        assert "1 | infeasible" in text
        assert "no feasible plan" in text

    def test_json_round_trip(self):
        splits = SplitVector(33.0, 3.0, 165.0, 3.5, 93.0)
        outcome = RunOutcome(
            index=1, seed=2, splits=splits, total=splits.total(),
            correlation_before=0.70, correlation_after=0.71,
        )
        report = self.make_report(
            [outcome],
            mean_row=(33.0, 3.0, 165.0, 3.5, 93.0, splits.total()),
            stdev_row=(0.0,) * 6,
        )
        doc = json.loads(emit_report(report, "json"))
        assert doc["runs"][0]["splits_min"]["swim"] == 33.0
        assert doc["runs"][0]["total_min"] == splits.total()
        assert doc["mean"]["total_min"] == splits.total()
        assert doc["archive"]["correlation_sum"] == 0.7010

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(self.make_report([]), "yaml")


class TestCorrelateCommand:
    def test_reference_values(self, table1_csv, capsys):
        code = main(["correlate", "--archive", table1_csv, "--group", "PRO-M", "--top-n", "5"])
        assert code == 0
        out = capsys.readouterr().out
        values = {}
        for line in out.splitlines()[1:]:
            parts = line.split()
            values[parts[0]] = float(parts[-1])
        assert values["swim-bike"] == pytest.approx(0.9938, abs=5e-4)
        assert values["bike-run"] == pytest.approx(0.1804, abs=5e-4)
        assert values["sum"] == pytest.approx(1.1742, abs=1e-3)

    def test_constant_column_names_it(self, tmp_path, capsys):
        rows = ["name,nation,category,place,swim,t1,bike,t2,run,overall"]
        for i, swim in enumerate((24.0, 25.0, 26.0), start=1):
            overall = swim + 2.0 + 100.0 + 2.0 + 80.0 + i
            rows.append(f"A{i},-,M,{i},{swim},2.0,100.0,2.0,{80.0 + i},{overall}")
        path = tmp_path / "flatbike.csv"
        path.write_text("\n".join(rows) + "\n")
        code = main(["correlate", "--archive", str(path), "--group", "M", "--top-n", "3"])
        assert code == 2
        assert "bike" in capsys.readouterr().err

    def test_synth_source_prints_values_near_targets(self, capsys):
        code = main(["correlate", "--synth-spec", high_spec_json()])
        assert code == 0
        out = capsys.readouterr().out
        values = {}
        for line in out.splitlines()[1:]:
            parts = line.split()
            values[parts[0]] = float(parts[-1])
        assert values["swim-bike"] == pytest.approx(HIGH_SPEC["r_swim_bike"], abs=0.02)
        assert values["bike-run"] == pytest.approx(HIGH_SPEC["r_bike_run"], abs=0.02)


class TestPredictCommand:
    def predict_args(self, extra=()):
        return [
            "predict", "--synth-spec", high_spec_json(),
            "--runs", "2", "--seed", "10", "--max-fes", "2000",
        ] + list(extra)

    def test_text_output(self, capsys):
        code = main(self.predict_args())
        assert code == 0
        out = capsys.readouterr().out
        assert "Run | Swimming | T1 | Cycling | T2 | Running | Total" in out
        assert "Mean | " in out

    def test_json_output_totals_under_ceiling(self, capsys):
        code = main(self.predict_args(["--output", "json"]))
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["runs"]) == 2
        for entry in doc["runs"]:
            assert entry["total_min"] <= 300.0
            assert entry["r_after"] > entry["r_before"]

    def test_csv_output_full_precision(self, capsys):
        code = main(self.predict_args(["--output", "csv"]))
        assert code == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        header = rows[0]
        assert header[0] == "row" and "swim_min" in header and "r_after" in header
        run_row = rows[1]
        total_min = float(run_row[header.index("total_min")])
        rendered = run_row[header.index("total")]
        assert parse_duration(rendered) == pytest.approx(total_min, abs=1e-4)
        assert rows[-2][0] == "mean" and rows[-1][0] == "stdev"

    def test_deterministic_bytes(self, tmp_path):
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        assert main(self.predict_args(["--output", "json", "--out", str(out_a)])) == 0
        assert main(self.predict_args(["--output", "json", "--out", str(out_b)])) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_personal_best_ceiling(self, capsys):
        code = main(self.predict_args(["--personal-best", "303", "--output", "json"]))
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        for entry in doc["runs"]:
            assert entry["total_min"] <= 0.95 * 303.0 + 1e-9

    def test_bounds_override(self, capsys):
        code = main(
            self.predict_args(["--bounds", '{"swim": [30, 36]}', "--output", "json"])
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        for entry in doc["runs"]:
            assert 30.0 <= entry["splits_min"]["swim"] <= 36.0

    def test_missing_archive_exits_2(self, capsys):
        code = main(["predict", "--archive", "/nonexistent.csv", "--group", "M"])
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_infeasible_ceiling_exits_2(self, capsys):
        code = main(self.predict_args(["--kmax", "200"]))
        assert code == 2
        assert "feasible set is empty" in capsys.readouterr().err

    def test_all_runs_infeasible_exits_3(self, capsys):
        code = main([
            "predict", "--synth-spec", json.dumps(COLLINEAR_SPEC),
            "--runs", "1", "--seed", "1", "--max-fes", "1000",
        ])
        assert code == 3
        assert "infeasible" in capsys.readouterr().err


class TestSynthCommand:
    def test_writes_loadable_archive(self, tmp_path, capsys):
        out = tmp_path / "synthetic.csv"
        code = main(["synth", "--synth-spec", high_spec_json(), "--out", str(out)])
        assert code == 0
        assert "wrote 30 records" in capsys.readouterr().out
        from tripace.archive import load_archive

        records, skipped = load_archive(out)
        assert len(records) == 30 and skipped == []

    def test_deterministic_file(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["synth", "--synth-spec", high_spec_json(), "--out", str(a)])
        main(["synth", "--synth-spec", high_spec_json(), "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_spec_from_file(self, tmp_path, capsys):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(high_spec_json())
        out = tmp_path / "from_file.csv"
        assert main(["synth", "--synth-spec", str(spec_path), "--out", str(out)]) == 0
        assert out.exists()

    def test_bad_spec_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["synth", "--synth-spec", "{not json", "--out", "x.csv"])
