"""Monte Carlo forecasting of velocity with quantile fans.

Velocity is simulated directly as the ratio of the two closed-form GBM
solutions: on a shared driver

    V_t = V_0 * exp(((mu_X - mu_M) - (sigma_X^2 - sigma_M^2)/2) t
                    + (sigma_X - sigma_M) W_t),

with analytic mean V_0 * exp((mu_X - mu_M + sigma_M (sigma_M - sigma_X)) t).
The transformed diagnostic process is simulated separately for the
ergodicity checks; having absorbed the T**-beta damping it is not a level
forecast and is never exponentiated back into one here.
"""

import datetime as dt
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .emo import EmoConfig, z_velocity_path
from .ergodicity import Ensemble
from .stochastic import DriverMode, GbmParams, wiener_pair, wiener_path

DEFAULT_QUANTILES = (0.05, 0.25, 0.50, 0.75, 0.95)
STEPS_PER_YEAR = 4  # quarterly


@dataclass(frozen=True)
class ForecastFan:
    """Aggregated Monte Carlo forecast: mean path plus quantile curves.

    ``times`` are year offsets from the forecast origin; ``dates`` carries
    the corresponding calendar dates when an origin date is supplied.
    Quantile curves cannot cross (they are quantiles of one sample per
    date), and the mean must stay inside the outer band, which is validated.
    """

    times: np.ndarray
    mean_path: np.ndarray
    quantile_levels: tuple[float, ...]
    quantiles: np.ndarray  # (n_levels, n_times)
    n_paths: int
    seed: int
    dates: tuple[dt.date, ...] | None = None

    def __post_init__(self):
        q = np.asarray(self.quantiles, dtype=float)
        if q.shape != (len(self.quantile_levels), len(self.times)):
            raise ValueError("quantile matrix shape mismatch")
        if np.any(np.diff(q, axis=0) < 0.0):
            raise ValueError("quantile curves cross; levels must be ordered")
        if np.any(self.mean_path < q[0] - 1e-12) or np.any(
            self.mean_path > q[-1] + 1e-12
        ):
            raise ValueError("mean path escapes the outer quantile band")


def analytic_mean_velocity(v0: float, params_X: GbmParams, params_M: GbmParams,
                           times: np.ndarray) -> np.ndarray:
    """E[V_t] under the shared driver."""
    rate = (params_X.mu - params_M.mu
            + params_M.sigma * (params_M.sigma - params_X.sigma))
    return v0 * np.exp(rate * np.asarray(times, dtype=float))


def simulate_velocity_paths(v0: float, params_X: GbmParams, params_M: GbmParams,
                            horizon: float, n_steps: int, n_paths: int,
                            seed: int,
                            driver_mode: DriverMode = DriverMode.shared(),
                            first_path: int = 0,
                            ) -> tuple[np.ndarray, np.ndarray]:
    """Velocity ratio paths; returns (times, matrix of shape (n_paths, n_steps+1)).

    Path k draws from substream (seed, k), so the first n paths of a larger
    ensemble are identical to the n-path ensemble, and workers generating
    disjoint [first_path, first_path + n_paths) blocks reproduce exactly the
    rows of a single sequential run.
    """
    if not v0 > 0:
        raise ValueError(f"initial velocity must be positive, got {v0}")
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    drift = ((params_X.mu - params_M.mu)
             - 0.5 * (params_X.sigma**2 - params_M.sigma**2))
    times = np.linspace(0.0, horizon, n_steps + 1)
    paths = np.empty((n_paths, n_steps + 1))
    for k in range(n_paths):
        w_x, w_m = wiener_pair(horizon, n_steps, seed, first_path + k,
                               driver_mode)
        diffusion = params_X.sigma * w_x.values - params_M.sigma * w_m.values
        paths[k] = v0 * np.exp(drift * times + diffusion)
    return times, paths


def _quarter_steps(origin: dt.date, n_steps: int) -> tuple[dt.date, ...]:
    dates = []
    year, month = origin.year, origin.month
    for _ in range(n_steps + 1):
        dates.append(dt.date(year, month, 1))
        month += 3
        if month > 12:
            month -= 12
            year += 1
    return tuple(dates)


def forecast_velocity(v0: float, params_X: GbmParams, params_M: GbmParams,
                      horizon: float, n_paths: int, seed: int,
                      driver_mode: DriverMode = DriverMode.shared(),
                      quantile_levels: Sequence[float] = DEFAULT_QUANTILES,
                      origin_date: dt.date | None = None) -> ForecastFan:
    """Monte Carlo fan over the horizon at quarterly steps."""
    if n_paths < 100:
        raise ValueError(f"need at least 100 paths for a quantile fan, got {n_paths}")
    levels = tuple(sorted(float(p) for p in quantile_levels))
    if not levels or levels[0] <= 0.0 or levels[-1] >= 1.0:
        raise ValueError(f"quantile levels must lie strictly inside (0, 1): {levels}")
    n_steps = max(1, round(horizon * STEPS_PER_YEAR))
    times, paths = simulate_velocity_paths(
        v0, params_X, params_M, horizon, n_steps, n_paths, seed, driver_mode
    )
    quantiles = np.quantile(paths, levels, axis=0)
    dates = None if origin_date is None else _quarter_steps(origin_date, n_steps)
    return ForecastFan(
        times=times,
        mean_path=paths.mean(axis=0),
        quantile_levels=levels,
        quantiles=quantiles,
        n_paths=n_paths,
        seed=seed,
        dates=dates,
    )


def simulate_z_ensemble(params_X: GbmParams, params_M: GbmParams,
                        config: EmoConfig, n_paths: int, seed: int,
                        n_steps: int | None = None,
                        first_path: int = 0) -> Ensemble:
    """Independent drivers mapped through the closed-form transformed process,
    packed for the ergodicity diagnostics. Shared-driver mode throughout."""
    if n_paths < 1:
        raise ValueError("need at least one path")
    if n_steps is None:
        n_steps = max(1, round(config.horizon_T * STEPS_PER_YEAR))
    grid = np.linspace(0.0, config.horizon_T, n_steps + 1)
    values = np.empty((n_paths, n_steps + 1))
    for k in range(n_paths):
        driver = wiener_path(config.horizon_T, n_steps, seed, first_path + k)
        values[k] = z_velocity_path(params_X, params_M, config, driver).values
    return Ensemble(grid=grid, values=values)


def write_fan_csv(path_or_stream, fan: ForecastFan) -> None:
    """``date,mean,q05,...`` rows; the date column falls back to the year
    offset when the fan has no calendar dates."""
    headers = ["date", "mean"] + [f"q{int(round(100 * p)):02d}"
                                  for p in fan.quantile_levels]

    def _write(fh):
        fh.write(",".join(headers) + "\n")
        for j in range(len(fan.times)):
            stamp = (fan.dates[j].isoformat() if fan.dates is not None
                     else f"{fan.times[j]:.12g}")
            row = [stamp, f"{fan.mean_path[j]:.12g}"]
            row += [f"{fan.quantiles[i, j]:.12g}"
                    for i in range(len(fan.quantile_levels))]
            fh.write(",".join(row) + "\n")

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)
