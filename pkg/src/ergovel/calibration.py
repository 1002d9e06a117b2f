"""Maximum-likelihood GBM calibration and the inhibition-degree sweep.

With log-returns r_i over uniform spacing dt, the Gaussian MLE gives

    sigma_hat^2 = var(r) / dt
    mu_hat      = mean(r) / dt + sigma_hat^2 / 2

where the second term converts the log drift back to the level drift of the
SDE. Standard errors are the asymptotic ones: se(mu) = sigma/sqrt(n dt),
se(sigma) = sigma/sqrt(2 n). The estimates do not depend on the inhibition
degree; the sweep simply pairs one beta per row with the (identical)
estimates for downstream construction of the transformed process.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .emo import MIN_BETA
from .errors import DataError
from .stochastic import GbmParams
from .timeseries import TimeSeries, log_returns


@dataclass(frozen=True)
class GbmEstimate:
    """Point estimates with asymptotic standard errors.

    ``n_obs`` is the number of returns entering the estimate; ``dt`` their
    spacing in years. ``zero_variance`` flags a deterministic input, where
    sigma_hat = 0 and the standard errors collapse to 0.
    """

    params: GbmParams
    se_mu: float
    se_sigma: float
    n_obs: int
    dt: float
    zero_variance: bool = False

    def __post_init__(self):
        if self.se_mu < 0 or self.se_sigma < 0:
            raise ValueError("standard errors must be non-negative")
        if self.n_obs < 2:
            raise ValueError(f"need at least 2 returns, got {self.n_obs}")


@dataclass(frozen=True)
class CalibrationTable:
    """One row per inhibition degree: (beta, output estimate, money estimate)."""

    rows: tuple[tuple[float, GbmEstimate, GbmEstimate], ...]

    def __post_init__(self):
        betas = [row[0] for row in self.rows]
        if any(b <= MIN_BETA for b in betas):
            raise ValueError(f"all inhibition degrees must exceed {MIN_BETA}")
        if any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
            raise ValueError(f"inhibition degrees must be strictly increasing: {betas}")

    @property
    def betas(self) -> tuple[float, ...]:
        return tuple(row[0] for row in self.rows)


def mle_gbm(series: TimeSeries) -> GbmEstimate:
    """Calibrate GBM drift and volatility from a positive level series."""
    series.require_positive()
    if len(series) < 3:
        raise DataError(
            f"{series.name}: need at least 3 observations to estimate a "
            f"variance, got {len(series)}"
        )
    returns = log_returns(series).values
    n = len(returns)
    dt = series.period
    variance = float(returns.var(ddof=1))
    sigma = float(np.sqrt(variance / dt))
    mu = float(returns.mean() / dt + 0.5 * variance / dt)
    se_mu = sigma / np.sqrt(n * dt)
    se_sigma = sigma / np.sqrt(2.0 * n)
    return GbmEstimate(
        params=GbmParams(mu=mu, sigma=sigma),
        se_mu=float(se_mu),
        se_sigma=float(se_sigma),
        n_obs=n,
        dt=dt,
        zero_variance=(variance == 0.0),
    )


def beta_sweep(gdp: TimeSeries, money: TimeSeries,
               beta_grid: Sequence[float]) -> CalibrationTable:
    """Pair the MLEs with each inhibition degree in the grid."""
    betas = [float(b) for b in beta_grid]
    if not betas:
        raise ValueError("empty inhibition-degree grid")
    for b in betas:
        if b <= MIN_BETA:
            raise ValueError(f"inhibition degree {b} must exceed {MIN_BETA}")
    est_x = mle_gbm(gdp)
    est_m = mle_gbm(money)
    return CalibrationTable(rows=tuple((b, est_x, est_m) for b in betas))


def write_calibration_csv(path_or_stream, table: CalibrationTable) -> None:
    """``beta,param,estimate,se`` rows, four parameters per beta."""
    def _write(fh):
        fh.write("beta,param,estimate,se\n")
        for beta, ex, em in table.rows:
            for label, est, se in (
                ("mu_X", ex.params.mu, ex.se_mu),
                ("sigma_X", ex.params.sigma, ex.se_sigma),
                ("mu_M", em.params.mu, em.se_mu),
                ("sigma_M", em.params.sigma, em.se_sigma),
            ):
                fh.write(f"{beta:.12g},{label},{est:.12g},{se:.12g}\n")

    if hasattr(path_or_stream, "write"):
        _write(path_or_stream)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh)


def format_calibration_table(table: CalibrationTable) -> str:
    """Aligned text table (parameter, estimate, standard error, beta)."""
    lines = [f"{'Parameter':<12}{'Estimate':>14}{'Std Error':>14}{'beta':>8}"]
    lines.append("-" * len(lines[0]))
    for beta, ex, em in table.rows:
        for label, est, se in (
            ("mu_X", ex.params.mu, ex.se_mu),
            ("sigma_X", ex.params.sigma, ex.se_sigma),
            ("mu_M", em.params.mu, em.se_mu),
            ("sigma_M", em.params.sigma, em.se_sigma),
        ):
            lines.append(f"{label:<12}{est:>14.6f}{se:>14.3e}{beta:>8.2f}")
        lines.append("-" * len(lines[0]))
    return "\n".join(lines) + "\n"
