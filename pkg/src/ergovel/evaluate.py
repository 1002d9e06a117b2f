"""Holdout validation: constant-velocity baseline vs the calibrated model.

The quantity-theory baseline predicts the train-window mean velocity at
every date; the log-ergodic predictor follows the analytic mean path of the
ratio process anchored at the forecast origin (the last train observation).

Metrics are computed in returns space by default: error magnitudes around
0.03 are only meaningful for returns, not for velocity levels (which sit
near 1.1 to 2.2). Holdout returns are measured from the forecast origin, so a model
predicting a level away from the origin pays for the implied first-step
jump; train-window returns are taken within the window. A flag switches the
whole comparison to level space.
"""

import datetime as dt
import math
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .errors import DataError
from .forecast import analytic_mean_velocity
from .stochastic import GbmParams
from .timeseries import TimeSeries

SPACES = ("returns", "levels")


class Predictor(Protocol):
    k: int  # parameter count, for adjusted R-squared

    def predict(self, dates: Sequence[dt.date]) -> np.ndarray: ...


@dataclass(frozen=True)
class MetricsReport:
    """Standard error metrics of a prediction against actuals.

    ``r2``/``adj_r2`` are NaN with ``degenerate_actuals`` set when the
    actuals have zero variance (the ratio to total variance is undefined).
    """

    sse: float
    r2: float
    adj_r2: float
    rmse: float
    mae: float
    n: int
    k: int
    degenerate_actuals: bool = False


@dataclass(frozen=True)
class ComparisonTable:
    """Per-model metrics over the train and holdout windows."""

    rows: tuple[tuple[str, MetricsReport, MetricsReport], ...]
    space: str

    def __post_init__(self):
        if len(self.rows) < 2:
            raise ValueError("a comparison needs at least two models")
        n_train = {r[1].n for r in self.rows}
        n_hold = {r[2].n for r in self.rows}
        if len(n_train) != 1 or len(n_hold) != 1:
            raise ValueError("models were not evaluated on identical targets")


@dataclass(frozen=True)
class QtmBaseline:
    """Constant-velocity predictor: the train-window mean at every date."""

    level: float
    k: int = 1

    def predict(self, dates: Sequence[dt.date]) -> np.ndarray:
        return np.full(len(dates), self.level)


def _years_between(origin: dt.date, date: dt.date) -> float:
    # Month-resolution year fraction: exact quarters/twelfths for
    # first-of-month stamps, day remainder for anything else.
    return ((date.year - origin.year)
            + (date.month - origin.month) / 12.0
            + (date.day - origin.day) / 365.25)


@dataclass(frozen=True)
class LogErgodicPredictor:
    """Deterministic mean path of the velocity ratio process, anchored at the
    forecast origin."""

    params_X: GbmParams
    params_M: GbmParams
    v0: float
    origin: dt.date
    k: int = 4

    def predict(self, dates: Sequence[dt.date]) -> np.ndarray:
        times = np.array([_years_between(self.origin, d) for d in dates])
        return analytic_mean_velocity(self.v0, self.params_X, self.params_M, times)


def qtm_baseline(train_velocity: TimeSeries) -> QtmBaseline:
    if len(train_velocity) == 0:
        raise DataError("empty train window")
    return QtmBaseline(level=float(train_velocity.values.mean()))


def log_ergodic_predictor(params_X: GbmParams | None, params_M: GbmParams | None,
                          v0: float, origin: dt.date) -> LogErgodicPredictor:
    if params_X is None or params_M is None:
        raise ValueError("calibration incomplete: both parameter sets required")
    if not v0 > 0:
        raise ValueError(f"anchor level must be positive, got {v0}")
    return LogErgodicPredictor(params_X=params_X, params_M=params_M,
                               v0=v0, origin=origin)


def compute_metrics(predicted: Sequence[float], actual: Sequence[float],
                    k: int) -> MetricsReport:
    """SSE, R^2 (against the mean of actuals), adjusted R^2, RMSE and MAE."""
    p = np.asarray(predicted, dtype=float)
    a = np.asarray(actual, dtype=float)
    if p.shape != a.shape or p.ndim != 1:
        raise ValueError(f"prediction/actual shape mismatch: {p.shape} vs {a.shape}")
    n = len(a)
    if n <= k + 1:
        raise ValueError(
            f"need more than k+1 = {k + 1} observations for adjusted "
            f"R-squared, got {n}"
        )
    errors = p - a
    sse = float(np.sum(errors**2))
    rmse = math.sqrt(sse / n)
    mae = float(np.mean(np.abs(errors)))
    sst = float(np.sum((a - a.mean()) ** 2))
    if sst == 0.0:
        return MetricsReport(sse=sse, r2=math.nan, adj_r2=math.nan, rmse=rmse,
                             mae=mae, n=n, k=k, degenerate_actuals=True)
    r2 = 1.0 - sse / sst
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)
    return MetricsReport(sse=sse, r2=r2, adj_r2=adj_r2, rmse=rmse, mae=mae,
                         n=n, k=k)


def _anchored_returns(anchor: float, levels: np.ndarray) -> np.ndarray:
    path = np.concatenate([[anchor], levels])
    if np.any(path <= 0.0):
        raise DataError("returns-space evaluation needs positive levels")
    return np.diff(np.log(path))


def _window_returns(levels: np.ndarray) -> np.ndarray:
    if np.any(levels <= 0.0):
        raise DataError("returns-space evaluation needs positive levels")
    return np.diff(np.log(levels))


def compare_models(train: TimeSeries, holdout: TimeSeries,
                   models: Sequence[tuple[str, Predictor]],
                   space: str = "returns") -> ComparisonTable:
    """Evaluate every model on both windows over identical targets.

    Returns space: train targets are within-window log-returns of the
    actual velocity; holdout targets are log-returns of the actual path
    extended from the forecast origin (the last train observation), and
    each model's predicted levels are transformed the same way from the
    same origin. Level space compares levels directly.
    """
    if space not in SPACES:
        raise ValueError(f"unknown evaluation space {space!r}; pick from {SPACES}")
    if len(models) < 2:
        raise ValueError("a comparison needs at least two models")
    if holdout.start <= train.end:
        raise DataError("holdout window must start after the train window")

    origin_level = float(train.values[-1])
    rows = []
    if space == "returns":
        actual_train = _window_returns(train.values)
        actual_hold = _anchored_returns(origin_level, holdout.values)
        for name, model in models:
            pred_train = _window_returns(model.predict(train.dates))
            pred_hold = _anchored_returns(
                origin_level, model.predict(holdout.dates)
            )
            rows.append((
                name,
                compute_metrics(pred_train, actual_train, k=model.k),
                compute_metrics(pred_hold, actual_hold, k=model.k),
            ))
    else:
        for name, model in models:
            rows.append((
                name,
                compute_metrics(model.predict(train.dates), train.values,
                                k=model.k),
                compute_metrics(model.predict(holdout.dates), holdout.values,
                                k=model.k),
            ))
    return ComparisonTable(rows=tuple(rows), space=space)


def write_comparison_csv(path_or_stream, table: ComparisonTable) -> None:
    header = ("model,sse_train,r2_train,adj_r2_train,rmse_train,"
              "rmse_holdout,mae_train,mae_holdout\n")

    def _write(fh):
        fh.write(header)
        for name, tr, ho in table.rows:
            fh.write(
                f"{name},{tr.sse:.12g},{tr.r2:.12g},{tr.adj_r2:.12g},"
                f"{tr.rmse:.12g},{ho.rmse:.12g},{tr.mae:.12g},{ho.mae:.12g}\n"
            )

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)


def format_comparison_table(table: ComparisonTable) -> str:
    """Two aligned sub-tables: in-sample fit, then the two error columns per
    window."""
    out = [f"Evaluation space: {table.space}", ""]
    head1 = f"{'Model':<14}{'SSE':>10}{'R2':>10}{'Adj R2':>10}{'RMSE(train)':>13}"
    out += [head1, "-" * len(head1)]
    for name, tr, _ in table.rows:
        out.append(f"{name:<14}{tr.sse:>10.4f}{tr.r2:>10.4f}"
                   f"{tr.adj_r2:>10.4f}{tr.rmse:>13.4f}")
    out.append("")
    head2 = (f"{'Model':<14}{'RMSE(holdout)':>15}{'MAE(train)':>12}"
             f"{'MAE(holdout)':>14}")
    out += [head2, "-" * len(head2)]
    for name, tr, ho in table.rows:
        out.append(f"{name:<14}{ho.rmse:>15.4f}{tr.mae:>12.4f}{ho.mae:>14.4f}")
    return "\n".join(out) + "\n"
