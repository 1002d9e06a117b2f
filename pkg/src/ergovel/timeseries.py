"""Dated economic series: ingestion, alignment, velocity and log-returns.

Series are uniformly spaced (period expressed in years, e.g. 0.25 for
quarterly). CSV ingestion follows the FRED export convention: a header row
followed by ``DATE,VALUE`` records with ISO-8601 dates. Missing observations
(FRED's ``.`` sentinel) are rejected rather than interpolated, since the
downstream calibration assumes uniform spacing and silent interpolation
would bias volatility estimates.
"""

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .errors import DataError

DAYS_PER_YEAR = 365.25

# Common sampling periods; inferred periods snap to these when close.
_STANDARD_PERIODS = (1.0 / 12.0, 0.25, 0.5, 1.0)

# Calendar stamps for the same period may differ across providers
# (first-of-quarter vs end-of-quarter); dates this close are treated as equal.
JOIN_WINDOW_DAYS = 15


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly spaced, dated observations of one economic quantity.

    Invariants checked at construction: dates strictly increasing with
    spacing consistent with ``period`` (within half a period of uniform,
    so a dropped observation is always caught), all values finite, and
    equal date/value lengths. Positivity is a property of level series
    and is enforced by the operations that require it, not here: a
    returns series is a valid TimeSeries with negative entries.
    """

    name: str
    dates: tuple[dt.date, ...]
    values: np.ndarray
    period: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dates", tuple(self.dates))
        if len(self.dates) != len(values):
            raise DataError(
                f"{self.name}: {len(self.dates)} dates but {len(values)} values"
            )
        if len(self.dates) == 0:
            raise DataError(f"{self.name}: empty series")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise DataError(f"{self.name}: non-finite value at {self.dates[bad]}")
        if not (math.isfinite(self.period) and self.period > 0):
            raise DataError(f"{self.name}: invalid period {self.period}")
        expected = self.period * DAYS_PER_YEAR
        for i in range(1, len(self.dates)):
            gap = (self.dates[i] - self.dates[i - 1]).days
            if gap <= 0:
                raise DataError(
                    f"{self.name}: dates not strictly increasing at {self.dates[i]}"
                )
            if abs(gap - expected) > 0.5 * expected:
                raise DataError(
                    f"{self.name}: spacing {gap} days at {self.dates[i]} is not "
                    f"consistent with period {self.period} yr (~{expected:.0f} days)"
                )

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def start(self) -> dt.date:
        return self.dates[0]

    @property
    def end(self) -> dt.date:
        return self.dates[-1]

    def require_positive(self) -> "TimeSeries":
        """Assert the level-series invariant (strictly positive values)."""
        if np.any(self.values <= 0.0):
            bad = int(np.flatnonzero(self.values <= 0.0)[0])
            raise DataError(
                f"{self.name}: non-positive value {self.values[bad]:g} "
                f"at {self.dates[bad]}"
            )
        return self


@dataclass(frozen=True)
class VelocitySeries:
    """Velocity observations (numerator/denominator ratio) plus provenance."""

    underlying: TimeSeries
    sources: tuple[str, str] = ("", "")

    def __post_init__(self):
        self.underlying.require_positive()

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return self.underlying.dates

    @property
    def values(self) -> np.ndarray:
        return self.underlying.values

    @property
    def period(self) -> float:
        return self.underlying.period


def _infer_period(dates: list[dt.date]) -> float:
    # Infer from the smallest gap: a dropped observation inflates other gaps
    # to multiples of the true period, so the minimum is the robust choice.
    gaps = [(dates[i] - dates[i - 1]).days for i in range(1, len(dates))]
    period = min(gaps) / DAYS_PER_YEAR
    for std in _STANDARD_PERIODS:
        if abs(period - std) / std < 0.10:
            return std
    return float(np.median(gaps)) / DAYS_PER_YEAR


def parse_series_csv(text: str | TextIO, name: str | None = None,
                     period: float | None = None) -> TimeSeries:
    """Parse a FRED-style CSV export (``DATE,VALUE`` header plus rows).

    The second header field is used as the series name when ``name`` is not
    given (FRED stamps it with the series id). Rows carrying the FRED
    missing-value sentinel ``.`` are rejected with an error listing the
    offending line numbers. The sampling period is inferred from the date
    gaps unless supplied.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty CSV input") from None
    if len(header) < 2:
        raise DataError(f"expected a DATE,VALUE header, got {header!r}")
    if name is None:
        name = header[1].strip() or "series"

    dates: list[dt.date] = []
    values: list[float] = []
    missing_lines: list[int] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) < 2:
            raise DataError(f"{name}: line {lineno}: expected 2 fields, got {row!r}")
        raw_date, raw_value = row[0].strip(), row[1].strip()
        try:
            date = dt.date.fromisoformat(raw_date)
        except ValueError:
            raise DataError(
                f"{name}: line {lineno}: malformed date {raw_date!r}"
            ) from None
        if raw_value == ".":
            missing_lines.append(lineno)
            continue
        try:
            value = float(raw_value)
        except ValueError:
            raise DataError(
                f"{name}: line {lineno}: non-numeric value {raw_value!r}"
            ) from None
        if not math.isfinite(value) or value <= 0.0:
            raise DataError(
                f"{name}: line {lineno}: non-positive value {raw_value}"
            )
        dates.append(date)
        values.append(value)

    if missing_lines:
        shown = ", ".join(map(str, missing_lines[:10]))
        more = "" if len(missing_lines) <= 10 else f" (+{len(missing_lines) - 10} more)"
        raise DataError(
            f"{name}: missing-value sentinel '.' on line(s) {shown}{more}; "
            "supply a gap-free export"
        )
    if not dates:
        raise DataError(f"{name}: no data rows")
    if period is None:
        period = 0.25 if len(dates) == 1 else _infer_period(dates)
    return TimeSeries(name=name, dates=tuple(dates), values=np.array(values),
                      period=period)


def write_series_csv(series: TimeSeries, path_or_stream) -> None:
    """Write ``DATE,VALUE`` CSV; values at 12 significant digits (round-trips
    bit-exactly once re-parsed and re-written)."""
    def _write(fh):
        fh.write("DATE,VALUE\n")
        for d, v in zip(series.dates, series.values):
            fh.write(f"{d.isoformat()},{v:.12g}\n")

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)


def quarter_start(date: dt.date) -> dt.date:
    return dt.date(date.year, 1 + 3 * ((date.month - 1) // 3), 1)


def downsample_to_quarterly(series: TimeSeries) -> TimeSeries:
    """Reduce a finer-than-quarterly series to quarterly frequency by taking
    the last observation in each calendar quarter, stamped at quarter start."""
    if series.period >= 0.25:
        return series
    picked: dict[dt.date, float] = {}
    for d, v in zip(series.dates, series.values):
        picked[quarter_start(d)] = v  # ordered input: last obs in quarter wins
    qdates = sorted(picked)
    return TimeSeries(name=series.name, dates=tuple(qdates),
                      values=np.array([picked[d] for d in qdates]), period=0.25)


def _align(a: TimeSeries, b: TimeSeries) -> list[tuple[int, int]]:
    """Index pairs of dates matching within the join window, result ordered."""
    pairs: list[tuple[int, int]] = []
    j = 0
    for i, da in enumerate(a.dates):
        while j < len(b.dates) and (da - b.dates[j]).days > JOIN_WINDOW_DAYS:
            j += 1
        if j < len(b.dates) and abs((da - b.dates[j]).days) <= JOIN_WINDOW_DAYS:
            pairs.append((i, j))
            j += 1
    return pairs


def align_pair(gdp: TimeSeries, money: TimeSeries) -> tuple[TimeSeries, TimeSeries]:
    """Restrict both series to their matched common dates.

    A money series sampled finer than quarterly is first downsampled to
    quarter-end observations. Dates are matched exactly up to a +/-15 day
    window; both outputs are stamped with the numerator's dates.
    """
    gdp.require_positive()
    money.require_positive()
    if money.period < gdp.period:
        money = downsample_to_quarterly(money)
    if abs(money.period - gdp.period) > 1e-9:
        raise DataError(
            f"period mismatch: {gdp.name} is {gdp.period} yr, "
            f"{money.name} is {money.period} yr"
        )
    pairs = _align(gdp, money)
    if not pairs:
        raise DataError(
            f"no overlapping dates between {gdp.name} "
            f"[{gdp.start}..{gdp.end}] and {money.name} "
            f"[{money.start}..{money.end}]"
        )
    dates = tuple(gdp.dates[i] for i, _ in pairs)
    left = TimeSeries(gdp.name, dates, gdp.values[[i for i, _ in pairs]],
                      gdp.period)
    right = TimeSeries(money.name, dates, money.values[[j for _, j in pairs]],
                       money.period)
    return left, right


def velocity_from(gdp: TimeSeries, money: TimeSeries) -> VelocitySeries:
    """Velocity as the ratio of output to money on their common date range."""
    left, right = align_pair(gdp, money)
    out = TimeSeries(
        name=f"{left.name}/{right.name}",
        dates=left.dates,
        values=left.values / right.values,
        period=left.period,
    )
    return VelocitySeries(underlying=out, sources=(left.name, right.name))


def log_returns(series: TimeSeries) -> TimeSeries:
    """Per-step log-returns ln(x_{i+1}/x_i), dated at the later endpoint."""
    series.require_positive()
    if len(series) < 2:
        raise DataError(f"{series.name}: need at least 2 observations for returns")
    returns = np.diff(np.log(series.values))
    return TimeSeries(
        name=f"{series.name} returns",
        dates=series.dates[1:],
        values=returns,
        period=series.period,
    )


def split_at(series: TimeSeries, boundary: dt.date) -> tuple[TimeSeries, TimeSeries]:
    """Split into (strictly before boundary, from boundary on).

    Both parts must be non-empty; their concatenation reproduces the input.
    """
    n_before = sum(1 for d in series.dates if d < boundary)
    if n_before == 0 or n_before == len(series):
        raise DataError(
            f"{series.name}: split boundary {boundary} outside range "
            f"({series.start}..{series.end}); both parts must be non-empty"
        )
    first = TimeSeries(series.name, series.dates[:n_before],
                       series.values[:n_before], series.period)
    second = TimeSeries(series.name, series.dates[n_before:],
                        series.values[n_before:], series.period)
    return first, second
