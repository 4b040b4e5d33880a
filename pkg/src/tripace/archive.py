"""Result archives: loading, group selection, extension, and synthesis.

An archive is the ordered list of finisher rows for one race and one
category, and is the reference population against which a candidate split
assignment is judged.  Loading accepts the CSV/JSON exports described in the
README; rows that fail basic sanity checks (splits not positive, overall not
matching the split sum) are skipped and reported rather than aborting the
load, since public race exports routinely contain DNF/DSQ rows.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .stats import pearson
from .timekit import DurationParseError, parse_duration

if TYPE_CHECKING:
    from .preference import SplitVector

log = logging.getLogger(__name__)

CSV_COLUMNS = ("name", "nation", "category", "place", "swim", "t1", "bike", "t2", "run", "overall")

# Slack allowed between a row's overall time and the sum of its five splits,
# in minutes; covers per-split rounding in source data.
OVERALL_SLACK = 0.05

MIN_ARCHIVE_SIZE = 3


class ArchiveError(ValueError):
    """Malformed archive input or an operation on an unusable archive."""


class SynthesisError(RuntimeError):
    """The synthetic generator could not hit the requested correlations."""


@dataclass(frozen=True)
class ResultRecord:
    """One athlete's race row; all times in floating-point minutes."""

    athlete_name: str
    nation: str
    category: str
    finish_place: int
    swim: float
    t1: float
    bike: float
    t2: float
    run: float
    overall: float

    def __post_init__(self) -> None:
        if self.finish_place < 1:
            raise ArchiveError(f"finish place must be positive, got {self.finish_place}")
        for name in ("swim", "t1", "bike", "t2", "run"):
            if not getattr(self, name) > 0.0:
                raise ArchiveError(f"split {name!r} must be strictly positive")
        if abs(self.overall - self.split_sum()) > OVERALL_SLACK:
            raise ArchiveError(
                f"overall {self.overall:.4f} differs from split sum "
                f"{self.split_sum():.4f} by more than {OVERALL_SLACK} min"
            )

    def split_sum(self) -> float:
        return self.swim + self.t1 + self.bike + self.t2 + self.run


@dataclass(frozen=True)
class Archive:
    """Finisher rows of one race and group, ordered by finish place."""

    label: str
    group: str
    records: tuple[ResultRecord, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.records:
            raise ArchiveError("archive must contain at least one record")
        places = [r.finish_place for r in self.records]
        if any(b <= a for a, b in zip(places, places[1:])):
            raise ArchiveError("finish places must be strictly increasing")

    def __len__(self) -> int:
        return len(self.records)

    def swim_column(self) -> np.ndarray:
        return np.array([r.swim for r in self.records])

    def bike_column(self) -> np.ndarray:
        return np.array([r.bike for r in self.records])

    def run_column(self) -> np.ndarray:
        return np.array([r.run for r in self.records])


def _record_from_row(row: dict[str, str]) -> ResultRecord:
    times = {}
    for key in ("swim", "t1", "bike", "t2", "run", "overall"):
        try:
            times[key] = parse_duration(row[key])
        except DurationParseError as exc:
            raise ArchiveError(f"column {key!r}: {exc}") from exc
    try:
        place = int(row["place"])
    except ValueError as exc:
        raise ArchiveError(f"column 'place': not an integer: {row['place']!r}") from exc
    return ResultRecord(
        athlete_name=row["name"],
        nation=row["nation"],
        category=row["category"],
        finish_place=place,
        overall=times.pop("overall"),
        **times,
    )


def _rows_from_csv(path: Path) -> list[dict[str, str]]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ArchiveError(f"{path}: missing header row")
        _check_columns(reader.fieldnames, path)
        return [row for row in reader if any(v.strip() for v in row.values() if v)]


def _rows_from_json(path: Path) -> list[dict[str, str]]:
    with path.open(encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, list):
        raise ArchiveError(f"{path}: expected a JSON array of result objects")
    for entry in payload:
        _check_columns(entry.keys(), path)
    return [{k: str(v) for k, v in entry.items()} for entry in payload]


def _check_columns(names: Iterable[str], path: Path) -> None:
    got = set(names)
    expected = set(CSV_COLUMNS)
    unknown = got - expected
    missing = expected - got
    if unknown:
        raise ArchiveError(f"{path}: unknown column(s) {sorted(unknown)}")
    if missing:
        raise ArchiveError(f"{path}: missing column(s) {sorted(missing)}")


def load_archive(path: str | Path, format: str = "auto") -> tuple[list[ResultRecord], list[str]]:
    """Load result rows from a CSV or JSON export.

    Returns ``(records, skipped)`` where ``skipped`` holds one message per
    row that was dropped for violating record sanity checks.  Raises
    :class:`ArchiveError` for structural problems: unreadable file, unknown
    or missing columns, or zero parseable rows.
    """
    p = Path(path)
    if format == "auto":
        format = "json" if p.suffix.lower() == ".json" else "csv"
    if format not in ("csv", "json"):
        raise ValueError(f"unknown archive format {format!r}")
    try:
        rows = _rows_from_json(p) if format == "json" else _rows_from_csv(p)
    except OSError as exc:
        raise ArchiveError(f"cannot read {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArchiveError(f"{p}: invalid JSON: {exc}") from exc

    records: list[ResultRecord] = []
    skipped: list[str] = []
    for i, row in enumerate(rows, start=2 if format == "csv" else 1):
        try:
            records.append(_record_from_row(row))
        except ArchiveError as exc:
            message = f"{p.name} row {i}: {exc}"
            skipped.append(message)
            log.warning("skipping %s", message)
    if not records:
        raise ArchiveError(f"{p}: zero parseable rows")
    return records, skipped


def write_archive_csv(records: Sequence[ResultRecord], path: str | Path) -> None:
    """Write records back out in the CSV schema, times as decimal minutes."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow(
                [r.athlete_name, r.nation, r.category, r.finish_place]
                + [f"{v:.6f}" for v in (r.swim, r.t1, r.bike, r.t2, r.run, r.overall)]
            )


def select_group(
    records: Sequence[ResultRecord], group: str, top_n: int, label: str = ""
) -> Archive:
    """Archive of the best ``top_n`` finishers in one category.

    Filters to the category, orders by finish place, truncates.  Fewer than
    three matching rows leave correlation undefined and raise.
    """
    if top_n < MIN_ARCHIVE_SIZE:
        raise ArchiveError(f"top_n must be at least {MIN_ARCHIVE_SIZE}, got {top_n}")
    matching = sorted(
        (r for r in records if r.category == group), key=lambda r: r.finish_place
    )
    if len(matching) < MIN_ARCHIVE_SIZE:
        raise ArchiveError(
            f"only {len(matching)} record(s) in group {group!r}; "
            f"need at least {MIN_ARCHIVE_SIZE}"
        )
    return Archive(label=label, group=group, records=tuple(matching[:top_n]))


def extend_archive(base: Archive, prediction: SplitVector) -> Archive:
    """Copy of ``base`` with the predicted splits appended as one record.

    The appended row carries placeholder identity fields; only its split
    columns matter downstream.  ``base`` is never mutated.
    """
    last_place = base.records[-1].finish_place
    appended = ResultRecord(
        athlete_name="PREDICTION",
        nation="-",
        category=base.group,
        finish_place=max(len(base) + 1, last_place + 1),
        swim=prediction.swim,
        t1=prediction.t1,
        bike=prediction.bike,
        t2=prediction.t2,
        run=prediction.run,
        overall=prediction.total(),
    )
    return Archive(label=base.label, group=base.group, records=base.records + (appended,))


def synthesize_archive(
    seed: int,
    size: int,
    target_swim_bike_r: float,
    target_bike_run_r: float,
    split_means: Sequence[float],
    split_spreads: Sequence[float],
    *,
    tolerance: float = 0.02,
    max_tries: int = 500,
    label: str = "synthetic",
    group: str = "SYN",
) -> Archive:
    """Generate an archive whose column correlations hit the given targets.

    Swim and run columns share a latent component with the bike column, which
    pins their pairwise correlations; draws are retried until both measured
    correlations land within ``tolerance`` of the targets and all splits are
    positive.  Deterministic in ``seed``.
    """
    if size < 5:
        raise ArchiveError(f"synthetic archive size must be at least 5, got {size}")
    for name, target in (("swim-bike", target_swim_bike_r), ("bike-run", target_bike_run_r)):
        if not -1.0 <= target <= 1.0:
            raise ArchiveError(f"{name} correlation target {target} outside [-1, 1]")
    means = [float(v) for v in split_means]
    spreads = [float(v) for v in split_spreads]
    if len(means) != 5 or len(spreads) != 5:
        raise ArchiveError("split_means and split_spreads must each have 5 entries")
    if any(s <= 0.0 for s in spreads):
        raise ArchiveError("split spreads must be positive")

    rng = np.random.default_rng(seed)
    achieved = (float("nan"), float("nan"))
    for _ in range(max_tries):
        latent = rng.standard_normal(size)
        z_swim = target_swim_bike_r * latent + np.sqrt(
            1.0 - target_swim_bike_r**2
        ) * rng.standard_normal(size)
        z_run = target_bike_run_r * latent + np.sqrt(
            1.0 - target_bike_run_r**2
        ) * rng.standard_normal(size)
        swim = means[0] + spreads[0] * z_swim
        t1 = means[1] + spreads[1] * rng.standard_normal(size)
        bike = means[2] + spreads[2] * latent
        t2 = means[3] + spreads[3] * rng.standard_normal(size)
        run = means[4] + spreads[4] * z_run
        if min(swim.min(), t1.min(), bike.min(), t2.min(), run.min()) <= 0.0:
            continue
        achieved = (pearson(swim, bike), pearson(bike, run))
        if (
            abs(achieved[0] - target_swim_bike_r) <= tolerance
            and abs(achieved[1] - target_bike_run_r) <= tolerance
        ):
            totals = swim + t1 + bike + t2 + run
            order = np.argsort(totals, kind="stable")
            records = tuple(
                ResultRecord(
                    athlete_name=f"SYN-{place:03d}",
                    nation="SYN",
                    category=group,
                    finish_place=place,
                    swim=float(swim[j]),
                    t1=float(t1[j]),
                    bike=float(bike[j]),
                    t2=float(t2[j]),
                    run=float(run[j]),
                    overall=float(swim[j] + t1[j] + bike[j] + t2[j] + run[j]),
                )
                for place, j in enumerate(order, start=1)
            )
            return Archive(label=label, group=group, records=records)
    raise SynthesisError(
        f"could not reach correlations ({target_swim_bike_r}, {target_bike_run_r}) "
        f"within +/-{tolerance} after {max_tries} tries; "
        f"last achieved ({achieved[0]:.4f}, {achieved[1]:.4f})"
    )
