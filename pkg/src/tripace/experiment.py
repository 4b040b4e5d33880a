"""Multi-run prediction experiments and report rendering.

An experiment resolves one archive (from a result file or the synthetic
generator), runs a configured number of independent predictions with
per-run seeds ``base_seed + run_index``, and aggregates the feasible runs
into mean and sample-standard-deviation rows.  Rendering is deterministic:
the same config always yields byte-identical output.
"""

from __future__ import annotations

import io
import json
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .archive import Archive, load_archive, select_group, synthesize_archive
from .preference import (
    DISCIPLINES,
    ModelConfig,
    NoFeasibleSolutionError,
    PredictionResult,
    SplitVector,
    predict,
)
from .pso import PsoConfig
from .stats import archive_correlation
from .timekit import format_split

OUTPUT_FORMATS = ("text", "csv", "json")

SPLIT_HEADERS = ("Swimming", "T1", "Cycling", "T2", "Running")

_SYNTH_REQUIRED = ("seed", "size", "r_swim_bike", "r_bike_run", "means", "spreads")
_SYNTH_OPTIONAL = ("label", "group", "tolerance", "max_tries")


class ExperimentError(RuntimeError):
    """The experiment produced no usable result (e.g. every run infeasible)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment needs; no hidden state, fully seeds itself."""

    archive_path: str | None = None
    archive_format: str = "auto"
    synth_spec: dict | None = None
    group: str | None = None
    top_n: int = 30
    runs: int = 5
    base_seed: int = 0
    swarm_size: int = 50
    max_evaluations: int = 10_000
    c1: float = 2.0
    c2: float = 2.0
    model: ModelConfig = field(default_factory=ModelConfig)
    output_format: str = "text"

    def __post_init__(self) -> None:
        if (self.archive_path is None) == (self.synth_spec is None):
            raise ValueError("exactly one of archive_path and synth_spec must be set")
        if self.archive_path is not None and self.group is None:
            raise ValueError("group is required when loading an archive file")
        if self.runs < 1:
            raise ValueError(f"runs must be at least 1, got {self.runs}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


@dataclass(frozen=True)
class RunOutcome:
    """One prediction run: either a split plan or a recorded failure."""

    index: int
    seed: int
    splits: SplitVector | None
    total: float | None
    correlation_before: float | None
    correlation_after: float | None
    error: str | None = None

    @property
    def feasible(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class ExperimentReport:
    archive_label: str
    archive_group: str
    archive_size: int
    archive_correlation_sum: float
    per_run: tuple[RunOutcome, ...]
    mean_row: tuple[float, ...] | None
    stdev_row: tuple[float, ...] | None

    @property
    def feasible_runs(self) -> tuple[RunOutcome, ...]:
        return tuple(r for r in self.per_run if r.feasible)


def synthesize_from_spec(spec: dict) -> Archive:
    """Build a synthetic archive from a plain-dict description.

    Required keys: seed, size, r_swim_bike, r_bike_run, means (5 numbers),
    spreads (5 numbers).  Optional: label, group, tolerance, max_tries.
    """
    unknown = set(spec) - set(_SYNTH_REQUIRED) - set(_SYNTH_OPTIONAL)
    if unknown:
        raise ValueError(f"unknown synthesis spec key(s): {sorted(unknown)}")
    missing = set(_SYNTH_REQUIRED) - set(spec)
    if missing:
        raise ValueError(f"synthesis spec missing key(s): {sorted(missing)}")
    extras = {k: spec[k] for k in _SYNTH_OPTIONAL if k in spec}
    return synthesize_archive(
        seed=int(spec["seed"]),
        size=int(spec["size"]),
        target_swim_bike_r=float(spec["r_swim_bike"]),
        target_bike_run_r=float(spec["r_bike_run"]),
        split_means=spec["means"],
        split_spreads=spec["spreads"],
        **extras,
    )


def resolve_archive(cfg: ExperimentConfig) -> Archive:
    """Materialize the experiment's archive from file or synthesis spec."""
    if cfg.synth_spec is not None:
        return synthesize_from_spec(cfg.synth_spec)
    records, skipped = load_archive(cfg.archive_path, cfg.archive_format)
    if skipped:
        print(f"skipped {len(skipped)} row(s) while loading:", file=sys.stderr)
        for message in skipped:
            print(f"  {message}", file=sys.stderr)
    label = Path(cfg.archive_path).stem
    return select_group(records, cfg.group, cfg.top_n, label=label)


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run the configured number of independent predictions and aggregate.

    Run ``i`` (1-based) uses seed ``base_seed + i``, so any single run can be
    reproduced in isolation.  Infeasible runs are recorded and excluded from
    the mean/stdev rows; if every run is infeasible the experiment fails
    with :class:`ExperimentError`.
    """
    archive = resolve_archive(cfg)
    base_sum = archive_correlation(archive).sum

    outcomes: list[RunOutcome] = []
    for index in range(1, cfg.runs + 1):
        seed = cfg.base_seed + index
        pso_cfg = PsoConfig(
            swarm_size=cfg.swarm_size,
            dimension=len(DISCIPLINES),
            lower=cfg.model.lower_bounds(),
            upper=cfg.model.upper_bounds(),
            c1=cfg.c1,
            c2=cfg.c2,
            max_evaluations=cfg.max_evaluations,
            rng_seed=seed,
        )
        try:
            result: PredictionResult = predict(archive, cfg.model, pso_cfg)
        except NoFeasibleSolutionError as exc:
            outcomes.append(
                RunOutcome(
                    index=index,
                    seed=seed,
                    splits=None,
                    total=None,
                    correlation_before=base_sum,
                    correlation_after=None,
                    error=str(exc),
                )
            )
            continue
        outcomes.append(
            RunOutcome(
                index=index,
                seed=seed,
                splits=result.splits,
                total=result.total,
                correlation_before=result.correlation_before,
                correlation_after=result.correlation_after,
            )
        )

    feasible = [o for o in outcomes if o.feasible]
    if not feasible:
        raise ExperimentError(f"all {cfg.runs} run(s) infeasible")
    mean_row, stdev_row = _aggregate(feasible)
    return ExperimentReport(
        archive_label=archive.label,
        archive_group=archive.group,
        archive_size=len(archive),
        archive_correlation_sum=base_sum,
        per_run=tuple(outcomes),
        mean_row=mean_row,
        stdev_row=stdev_row,
    )


def _aggregate(
    feasible: Sequence[RunOutcome],
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    columns = [
        [getattr(o.splits, name) for o in feasible] for name in DISCIPLINES
    ] + [[o.total for o in feasible]]
    means = tuple(statistics.fmean(col) for col in columns)
    if len(feasible) > 1:
        stdevs = tuple(statistics.stdev(col) for col in columns)
    else:
        stdevs = (0.0,) * 6
    return means, stdevs


def _row_cells(outcome: RunOutcome) -> list[str]:
    assert outcome.splits is not None
    values = [getattr(outcome.splits, name) for name in DISCIPLINES] + [outcome.total]
    return [format_split(v) for v in values]


def emit_report(report: ExperimentReport, output_format: str) -> str:
    """Render a report as a text table, CSV, or JSON document.

    The text table carries the familiar race-report columns plus Mean and
    Stdev rows; CSV and JSON additionally carry the full-precision minute
    values and the before/after correlation sums of each run.
    """
    if output_format == "text":
        return _emit_text(report)
    if output_format == "csv":
        return _emit_csv(report)
    if output_format == "json":
        return _emit_json(report)
    raise ValueError(f"unknown output format {output_format!r}")


def _emit_text(report: ExperimentReport) -> str:
    lines = [
        f"Archive {report.archive_label} group {report.archive_group} "
        f"(n={report.archive_size}, correlation sum {report.archive_correlation_sum:.4f})",
        " | ".join(("Run",) + SPLIT_HEADERS + ("Total",)),
    ]
    for outcome in report.per_run:
        if outcome.feasible:
            lines.append(" | ".join([str(outcome.index)] + _row_cells(outcome)))
        else:
            lines.append(f"{outcome.index} | infeasible")
    if report.mean_row is not None:
        lines.append(" | ".join(["Mean"] + [format_split(v) for v in report.mean_row]))
        lines.append(" | ".join(["Stdev"] + [format_split(v) for v in report.stdev_row]))
    for outcome in report.per_run:
        if outcome.feasible:
            lines.append(
                f"run {outcome.index}: correlation sum "
                f"{outcome.correlation_before:.6f} -> {outcome.correlation_after:.6f}"
            )
        else:
            lines.append(f"run {outcome.index}: {outcome.error}")
    return "\n".join(lines) + "\n"


def _emit_csv(report: ExperimentReport) -> str:
    import csv as _csv

    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["row"]
        + [f"{name}_min" for name in DISCIPLINES]
        + ["total_min"]
        + list(DISCIPLINES)
        + ["total", "r_before", "r_after", "status"]
    )
    for outcome in report.per_run:
        if outcome.feasible:
            minutes = [getattr(outcome.splits, n) for n in DISCIPLINES] + [outcome.total]
            writer.writerow(
                [outcome.index]
                + [repr(v) for v in minutes]
                + [format_split(v) for v in minutes]
                + [repr(outcome.correlation_before), repr(outcome.correlation_after), "ok"]
            )
        else:
            writer.writerow([outcome.index] + [""] * 12 + [repr(outcome.correlation_before), "", "infeasible"])
    for label, row in (("mean", report.mean_row), ("stdev", report.stdev_row)):
        if row is not None:
            writer.writerow(
                [label]
                + [repr(v) for v in row]
                + [format_split(v) for v in row]
                + ["", "", ""]
            )
    return buf.getvalue()


def _emit_json(report: ExperimentReport) -> str:
    def run_payload(outcome: RunOutcome) -> dict:
        payload: dict = {"run": outcome.index, "seed": outcome.seed}
        if outcome.feasible:
            payload["splits_min"] = {
                name: getattr(outcome.splits, name) for name in DISCIPLINES
            }
            payload["splits"] = {
                name: format_split(getattr(outcome.splits, name)) for name in DISCIPLINES
            }
            payload["total_min"] = outcome.total
            payload["total"] = format_split(outcome.total)
            payload["r_before"] = outcome.correlation_before
            payload["r_after"] = outcome.correlation_after
        else:
            payload["error"] = outcome.error
        return payload

    def row_payload(row: tuple[float, ...] | None) -> dict | None:
        if row is None:
            return None
        return {
            "splits_min": dict(zip(DISCIPLINES, row[:5])),
            "splits": {n: format_split(v) for n, v in zip(DISCIPLINES, row[:5])},
            "total_min": row[5],
            "total": format_split(row[5]),
        }

    document = {
        "archive": {
            "label": report.archive_label,
            "group": report.archive_group,
            "size": report.archive_size,
            "correlation_sum": report.archive_correlation_sum,
        },
        "runs": [run_payload(o) for o in report.per_run],
        "mean": row_payload(report.mean_row),
        "stdev": row_payload(report.stdev_row),
    }
    return json.dumps(document, indent=2) + "\n"
