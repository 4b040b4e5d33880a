"""Pearson correlation and the per-archive correlation pair.

The fitness machinery watches two column pairs of a result archive: the
swim-bike correlation and the bike-run correlation.  Transition times never
enter these; only the three sport disciplines do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from .archive import Archive


class CorrelationUndefinedError(ValueError):
    """Correlation is undefined: too few points or a constant column."""


@dataclass(frozen=True)
class CorrelationPair:
    """Swim-bike and bike-run correlations of one archive, plus their sum."""

    r_swim_bike: float
    r_bike_run: float

    @property
    def sum(self) -> float:
        return self.r_swim_bike + self.r_bike_run


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson's correlation coefficient of two equal-length samples.

    Two-pass evaluation (means first, then centered products), clamped to
    [-1, 1] to absorb floating-point overshoot.  Requires at least 3 points
    and non-constant inputs; anything else raises
    :class:`CorrelationUndefinedError`.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise CorrelationUndefinedError(
            f"correlation undefined: length mismatch ({xs.shape} vs {ys.shape})"
        )
    if xs.size < 3:
        raise CorrelationUndefinedError(
            f"correlation undefined: need at least 3 points, got {xs.size}"
        )
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    sxx = float(np.dot(xc, xc))
    syy = float(np.dot(yc, yc))
    if sxx == 0.0 or syy == 0.0:
        which = "x" if sxx == 0.0 else "y"
        raise CorrelationUndefinedError(f"correlation undefined: zero variance in {which}")
    r = float(np.dot(xc, yc)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def archive_correlation(archive: Archive) -> CorrelationPair:
    """Correlation pair of an archive's swim-bike and bike-run columns."""
    columns = {
        "swim": archive.swim_column(),
        "bike": archive.bike_column(),
        "run": archive.run_column(),
    }
    for name, col in columns.items():
        if col.size >= 3 and col.max() == col.min():
            raise CorrelationUndefinedError(
                f"correlation undefined: column {name!r} is constant"
            )
    return CorrelationPair(
        r_swim_bike=pearson(columns["swim"], columns["bike"]),
        r_bike_run=pearson(columns["bike"], columns["run"]),
    )
