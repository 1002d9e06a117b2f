"""The ergodic-maker transform and the velocity diagnostic process.

A log process over an interval of length ``delta`` splits into a
deterministic drift part ``D_delta`` and a stochastic part ``R_delta``. The
ergodic-maker transform with inhibition degree ``beta`` and horizon ``T``
maps the pair to

    (W_T / T**beta) * D_delta + (1 / T**beta) * R_delta,

annihilating the initial condition and damping both parts so strongly (beta
must exceed 3/2) that the result is mean-ergodic. Applied to the log-velocity
of money, the transform of the difference of the two GBM log processes has
the closed form

    Z(delta) = (A * delta * W_T + B * W_delta) / T**beta,
    A = (mu_X - mu_M) + (sigma_M^2 - sigma_X^2) / 2,
    B = sigma_X - sigma_M,

valid when both processes ride one shared Wiener driver. Z is a zero-mean,
mean-reverting diagnostic object, not a level forecast.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DataError
from .stochastic import GbmParams, WienerPath
from .timeseries import TimeSeries

MIN_BETA = 1.5  # inhibition degree must exceed 3/2

DriftFn = Callable[[np.ndarray], np.ndarray]
RandomFn = Callable[[np.ndarray, WienerPath], np.ndarray]


@dataclass(frozen=True)
class EmoConfig:
    """Inhibition degree and time horizon of the transform."""

    beta: float
    horizon_T: float

    def __post_init__(self):
        if not self.beta > MIN_BETA:
            raise ValueError(
                f"inhibition degree must exceed {MIN_BETA}, got {self.beta}"
            )
        if not self.horizon_T > 0:
            raise ValueError(f"horizon must be positive, got {self.horizon_T}")

    @property
    def damping(self) -> float:
        """The common scale factor T**-beta."""
        return self.horizon_T ** (-self.beta)


@dataclass(frozen=True)
class LogDecomposition:
    """Drift/random split of a log process over interval lengths.

    ``drift_part(deltas)`` evaluates D on an array of interval lengths;
    ``random_part(deltas, driver)`` evaluates R on the same grid given the
    Wiener driver. Both must vanish at delta = 0. Decompositions form a
    vector space, which is exactly the property the closed-form velocity
    process relies on: the transform is linear in (D, R).
    """

    drift_part: DriftFn
    random_part: RandomFn

    def __add__(self, other: "LogDecomposition") -> "LogDecomposition":
        return LogDecomposition(
            drift_part=lambda d: self.drift_part(d) + other.drift_part(d),
            random_part=lambda d, w: self.random_part(d, w) + other.random_part(d, w),
        )

    def __sub__(self, other: "LogDecomposition") -> "LogDecomposition":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "LogDecomposition":
        return LogDecomposition(
            drift_part=lambda d: scalar * self.drift_part(d),
            random_part=lambda d, w: scalar * self.random_part(d, w),
        )

    __rmul__ = __mul__


@dataclass(frozen=True)
class EmoPath:
    """A realization of the transformed process on a grid of interval lengths.

    The value at delta = 0 is exactly zero: both transform terms vanish there
    and the 0 * Y'_0 term drops the initial condition.
    """

    deltas: np.ndarray
    values: np.ndarray
    config: EmoConfig
    driver: WienerPath

    def __post_init__(self):
        object.__setattr__(self, "deltas", np.asarray(self.deltas, dtype=float))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.deltas.shape != self.values.shape:
            raise ValueError("deltas/values shape mismatch")
        if self.deltas[0] != 0.0 or self.values[0] != 0.0:
            raise ValueError("transformed process must vanish at delta = 0")


def _check_horizon(config: EmoConfig, driver: WienerPath) -> None:
    if not math.isclose(driver.horizon, config.horizon_T, rel_tol=1e-9):
        raise ValueError(
            f"driver horizon {driver.horizon} does not match "
            f"configured horizon {config.horizon_T}"
        )


def decompose_log_gbm(params: GbmParams) -> LogDecomposition:
    """Split of a GBM's log process: D(delta) = (mu - sigma^2/2) delta,
    R(delta) = sigma W_delta."""
    return LogDecomposition(
        drift_part=lambda deltas: params.log_drift * deltas,
        random_part=lambda deltas, w: params.sigma * w.values,
    )


def apply_emo(decomp: LogDecomposition, config: EmoConfig,
              driver: WienerPath) -> EmoPath:
    """Evaluate the transform on the driver's grid of interval lengths."""
    _check_horizon(config, driver)
    deltas = driver.grid
    drift = np.asarray(decomp.drift_part(deltas), dtype=float)
    random = np.asarray(decomp.random_part(deltas, driver), dtype=float)
    if drift[0] != 0.0 or random[0] != 0.0:
        raise ValueError("decomposition parts must vanish at delta = 0")
    scale = config.damping
    values = driver.terminal * scale * drift + scale * random
    return EmoPath(deltas=deltas, values=values, config=config, driver=driver)


def z_coefficients(params_X: GbmParams, params_M: GbmParams) -> tuple[float, float]:
    """Coefficients (A, B) of the closed-form velocity process."""
    a = (params_X.mu - params_M.mu) + 0.5 * (params_M.sigma**2 - params_X.sigma**2)
    b = params_X.sigma - params_M.sigma
    return a, b


def z_velocity_path(params_X: GbmParams, params_M: GbmParams,
                    config: EmoConfig, driver: WienerPath) -> EmoPath:
    """Closed-form transformed log-velocity on a shared driver.

    Algebraically identical to applying the transform to the difference of
    the two GBM log decompositions on the same driver.
    """
    _check_horizon(config, driver)
    a, b = z_coefficients(params_X, params_M)
    scale = config.damping
    values = (a * driver.grid * driver.terminal + b * driver.values) * scale
    return EmoPath(deltas=driver.grid, values=values, config=config, driver=driver)


def z_variance(params_X: GbmParams, params_M: GbmParams, config: EmoConfig,
               deltas: np.ndarray) -> np.ndarray:
    """Exact ensemble variance of the closed-form process at each delta <= T
    (shared driver; uses Cov(W_T, W_delta) = delta)."""
    a, b = z_coefficients(params_X, params_M)
    d = np.asarray(deltas, dtype=float)
    T, beta = config.horizon_T, config.beta
    return (a**2 * d**2 * T ** (1 - 2 * beta)
            + b**2 * d * T ** (-2 * beta)
            + 2 * a * b * d**2 * T ** (-2 * beta))


def z_from_data(log_velocity_returns: TimeSeries, config: EmoConfig,
                driver: WienerPath) -> EmoPath:
    """Empirical transform of an observed returns series.

    The drift slope is the sample mean return per year; the stochastic part
    is the cumulative demeaned returns. The driver must live on the implied
    grid: one step per observed return, horizon = n * period.
    """
    returns = np.asarray(log_velocity_returns.values, dtype=float)
    n = len(returns)
    if n == 0:
        raise DataError("empty returns series")
    period = log_velocity_returns.period
    implied_T = n * period
    if not math.isclose(implied_T, config.horizon_T, rel_tol=1e-9):
        raise ValueError(
            f"series spans {implied_T} yr but configured horizon is "
            f"{config.horizon_T} yr"
        )
    if len(driver.grid) != n + 1:
        raise ValueError(
            f"driver has {len(driver.grid) - 1} steps, series has {n} returns"
        )
    _check_horizon(config, driver)

    mean_return = returns.mean()
    slope = mean_return / period  # drift per year
    cumulative = np.empty(n + 1)
    cumulative[0] = 0.0
    np.cumsum(returns - mean_return, out=cumulative[1:])

    decomp = LogDecomposition(
        drift_part=lambda deltas: slope * deltas,
        random_part=lambda deltas, w: cumulative,
    )
    return apply_emo(decomp, config, driver)


def write_emo_csv(path_or_stream, emo_path: EmoPath) -> None:
    """Dump a transformed path as ``delta,value`` rows."""
    def _write(fh):
        fh.write("delta,value\n")
        for d, v in zip(emo_path.deltas, emo_path.values):
            fh.write(f"{d:.12g},{v:.12g}\n")

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)


def emo_sidecar(emo_path: EmoPath, driver_mode: str = "shared") -> dict[str, object]:
    """Metadata echo for a dumped path: beta, horizon, seed, driver mode."""
    return {
        "beta": emo_path.config.beta,
        "horizon_T": emo_path.config.horizon_T,
        "seed": ":".join(str(s) for s in emo_path.driver.seed),
        "driver_mode": driver_mode,
    }
