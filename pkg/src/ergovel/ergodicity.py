"""Statistical diagnostics for mean-ergodicity and mean reversion.

The mean-ergodicity functional is the triangularly weighted, time-averaged
autocovariance

    (1/T) * integral_0^T (1 - tau/T) * Cov(tau) dtau,

which must vanish as T grows for a mean-ergodic process. ``Cov(tau)`` is
estimated from an ensemble of paths; the default estimator averages the
lag-tau covariance over base times (the stationarized reading), with the
pointwise-variance reading available for comparison. Verdicts over a ladder
of horizons operationalize the limit statement.
"""

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from statsmodels.tsa.stattools import mackinnonp

from .emo import EmoPath
from .errors import DataError


@dataclass(frozen=True)
class Ensemble:
    """Paths sharing one grid, stored as an (n_paths, n_grid) matrix."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.values.ndim != 2 or self.values.shape[1] != len(self.grid):
            raise ValueError(
                f"ensemble matrix {self.values.shape} does not match grid "
                f"of length {len(self.grid)}"
            )

    @classmethod
    def from_paths(cls, paths: Sequence[EmoPath]) -> "Ensemble":
        if not paths:
            raise ValueError("cannot build an ensemble from zero paths")
        grid = paths[0].deltas
        for p in paths[1:]:
            if not np.array_equal(p.deltas, grid):
                raise ValueError("ensemble paths must share an identical grid")
        return cls(grid=grid, values=np.vstack([p.values for p in paths]))

    @property
    def count(self) -> int:
        return int(self.values.shape[0])


class Verdict(enum.Enum):
    MEAN_ERGODIC = "MeanErgodic"
    INCONCLUSIVE = "Inconclusive"
    NOT_MEAN_ERGODIC = "NotMeanErgodic"


@dataclass(frozen=True)
class ErgodicityReport:
    """Functional values over a horizon ladder and the resulting verdict."""

    statistic_by_T: tuple[tuple[float, float], ...]
    verdict: Verdict
    tolerance: float
    note: str = ""


@dataclass(frozen=True)
class MeanReversionResult:
    slope: float
    t_stat: float
    p_value: float
    reverting: bool


@dataclass(frozen=True)
class DispersionSummary:
    """First-hitting behaviour from one value cell into another."""

    n_started: int
    n_visited: int
    fraction: float
    median_first_visit_delta: float | None
    note: str = ""


def _demeaned(ensemble: Ensemble) -> np.ndarray:
    if ensemble.count < 2:
        raise ValueError("covariance estimates need at least 2 paths")
    return ensemble.values - ensemble.values.mean(axis=0, keepdims=True)


def autocovariance(ensemble: Ensemble, tau: int,
                   estimator: str = "stationarized") -> float:
    """Ensemble autocovariance at integer grid lag ``tau``.

    The stationarized estimator averages Cov(Y_s, Y_{s+tau}) over all
    admissible base times s; the "pointwise" alternative reads the
    covariance of Y_tau as the ensemble variance at grid point tau.
    """
    g = len(ensemble.grid)
    if not 0 <= tau < g:
        raise ValueError(f"lag {tau} outside grid of length {g}")
    centered = _demeaned(ensemble)
    n = ensemble.count
    if estimator == "pointwise":
        return float(np.sum(centered[:, tau] ** 2) / (n - 1))
    if estimator != "stationarized":
        raise ValueError(f"unknown estimator {estimator!r}")
    prod = centered[:, : g - tau] * centered[:, tau:]
    return float(prod.sum() / ((n - 1) * (g - tau)))


def autocovariance_profile(ensemble: Ensemble,
                           estimator: str = "stationarized") -> np.ndarray:
    """Autocovariance at every grid lag (one BLAS pass for the default
    estimator rather than a per-lag loop)."""
    centered = _demeaned(ensemble)
    n = ensemble.count
    if estimator == "pointwise":
        return np.sum(centered**2, axis=0) / (n - 1)
    if estimator != "stationarized":
        raise ValueError(f"unknown estimator {estimator!r}")
    cov = centered.T @ centered / (n - 1)
    g = len(ensemble.grid)
    return np.array([np.mean(np.diagonal(cov, offset=k)) for k in range(g)])


def mean_ergodicity_statistic(ensemble: Ensemble, T: float,
                              estimator: str = "stationarized") -> float:
    """Trapezoidal quadrature of (1/T) * int_0^T (1 - tau/T) Cov(tau) dtau
    on the ensemble's native grid."""
    grid = ensemble.grid
    if grid[0] != 0.0 or not np.isclose(grid[-1], T, rtol=1e-9):
        raise ValueError(
            f"grid [{grid[0]}, {grid[-1]}] does not span [0, {T}]"
        )
    profile = autocovariance_profile(ensemble, estimator=estimator)
    weights = 1.0 - grid / T
    return float(np.trapezoid(weights * profile, grid) / T)


def assess_mean_ergodicity(statistics: Sequence[tuple[float, float]],
                           tolerance: float = 1e-3) -> ErgodicityReport:
    """Verdict over a ladder of horizons.

    Mean-ergodic: magnitudes strictly decrease and the final one is below
    tolerance. Not mean-ergodic: magnitudes strictly increase. Anything
    else is inconclusive. At least 3 strictly increasing horizons required.
    """
    stats = tuple((float(T), float(v)) for T, v in statistics)
    if len(stats) < 3:
        raise ValueError(f"need at least 3 horizons, got {len(stats)}")
    horizons = [T for T, _ in stats]
    if any(b <= a for a, b in zip(horizons, horizons[1:])):
        raise ValueError(f"horizons must be strictly increasing, got {horizons}")
    magnitudes = [abs(v) for _, v in stats]
    decreasing = all(b < a for a, b in zip(magnitudes, magnitudes[1:]))
    increasing = all(b > a for a, b in zip(magnitudes, magnitudes[1:]))
    if decreasing and magnitudes[-1] < tolerance:
        verdict = Verdict.MEAN_ERGODIC
        note = "statistic decreases across horizons and ends below tolerance"
    elif increasing:
        verdict = Verdict.NOT_MEAN_ERGODIC
        note = "statistic increases across horizons"
    else:
        verdict = Verdict.INCONCLUSIVE
        note = ("statistic decreases but has not reached tolerance"
                if decreasing else "statistic is not monotone across horizons")
    return ErgodicityReport(statistic_by_T=stats, verdict=verdict,
                            tolerance=tolerance, note=note)


def mean_reversion_test(path: Sequence[float],
                        alpha: float = 0.05) -> MeanReversionResult:
    """Discrete Ornstein-Uhlenbeck regression: increments on demeaned levels.

    Under the no-reversion null the levels are a random walk, so the slope's
    t-statistic follows the Dickey-Fuller distribution, not Student's t;
    the p-value therefore comes from the MacKinnon response surface
    (classical t p-values would flag a large fraction of pure random walks
    as reverting). Reverting means negative slope with p below ``alpha``.
    """
    x = np.asarray(path, dtype=float)
    if x.ndim != 1 or len(x) < 30:
        raise ValueError(f"need a 1-d path of length >= 30, got shape {x.shape}")
    levels = x[:-1]
    increments = np.diff(x)
    centered = levels - levels.mean()
    sxx = float(np.sum(centered**2))
    if sxx == 0.0:
        raise DataError("constant path: mean-reversion slope undefined")
    slope = float(np.sum(centered * increments) / sxx)
    residuals = (increments - increments.mean()) - slope * centered
    dof = len(increments) - 2  # slope plus the implicit constant
    sigma2 = float(np.sum(residuals**2) / dof)
    if sigma2 == 0.0:
        raise DataError("degenerate regression: zero residual variance")
    t_stat = slope / np.sqrt(sigma2 / sxx)
    p_value = float(mackinnonp(t_stat, regression="c", N=1))
    return MeanReversionResult(
        slope=slope,
        t_stat=float(t_stat),
        p_value=p_value,
        reverting=bool(slope < 0.0 and p_value < alpha),
    )


def dispersion_diagnostic(ensemble: Ensemble, cell_a: tuple[float, float],
                          cell_b: tuple[float, float]) -> DispersionSummary:
    """Of the paths starting inside cell_a, the fraction that later visit
    cell_b, with the median first-visit interval length.

    A qualitative stand-in for the mixing behaviour of the transformed
    process; no formal mixing property is tested.
    """
    lo_a, hi_a = cell_a
    lo_b, hi_b = cell_b
    if lo_a > hi_a or lo_b > hi_b:
        raise ValueError("cells must be (lo, hi) with lo <= hi")
    if not (hi_a < lo_b or hi_b < lo_a):
        raise ValueError(f"cells {cell_a} and {cell_b} must be disjoint")

    start = ensemble.values[:, 0]
    started = (start >= lo_a) & (start <= hi_a)
    n_started = int(started.sum())
    if n_started == 0:
        return DispersionSummary(0, 0, 0.0, None,
                                 note="no paths start inside the first cell")

    later = ensemble.values[started, 1:]
    in_b = (later >= lo_b) & (later <= hi_b)
    visited = in_b.any(axis=1)
    n_visited = int(visited.sum())
    if n_visited == 0:
        lo, hi = ensemble.values.min(), ensemble.values.max()
        note = ""
        if hi_b < lo or lo_b > hi:
            note = "target cell lies outside the observed value range"
        return DispersionSummary(n_started, 0, 0.0, None, note=note)

    first_idx = np.argmax(in_b[visited], axis=1) + 1
    first_deltas = ensemble.grid[first_idx]
    return DispersionSummary(
        n_started=n_started,
        n_visited=n_visited,
        fraction=n_visited / n_started,
        median_first_visit_delta=float(np.median(first_deltas)),
    )
