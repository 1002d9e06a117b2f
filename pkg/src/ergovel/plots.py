"""Figure rendering for the CLI report path.

Every figure is written next to the CSV it visualizes; the CSVs remain the
canonical artifacts and the plots carry no extra information.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .ergodicity import Ensemble  # noqa: E402
from .evaluate import ComparisonTable  # noqa: E402
from .forecast import ForecastFan  # noqa: E402
from .timeseries import TimeSeries  # noqa: E402

DPI = 120


def plot_velocity(velocity: TimeSeries, returns: TimeSeries, outfile) -> None:
    fig, (ax_lvl, ax_ret) = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
    ax_lvl.plot(velocity.dates, velocity.values, lw=1.2, color="tab:blue")
    ax_lvl.set_ylabel("velocity level")
    ax_lvl.set_title("Velocity of money")
    ax_ret.plot(returns.dates, returns.values, lw=0.8, color="tab:orange")
    ax_ret.axhline(0.0, color="grey", lw=0.6)
    ax_ret.set_ylabel("log return")
    fig.tight_layout()
    fig.savefig(outfile, dpi=DPI)
    plt.close(fig)


def plot_z_paths(ensemble: Ensemble, outfile, n_show: int = 20,
                 empirical: tuple[np.ndarray, np.ndarray] | None = None) -> None:
    fig, ax = plt.subplots(figsize=(9, 5))
    n = min(n_show, ensemble.count)
    for k in range(n):
        ax.plot(ensemble.grid, ensemble.values[k], lw=0.6, alpha=0.6)
    if empirical is not None:
        deltas, values = empirical
        ax.plot(deltas, values, lw=1.6, color="black", label="from data")
        ax.legend()
    ax.axhline(0.0, color="grey", lw=0.6)
    ax.set_xlabel("interval length (years)")
    ax.set_ylabel("transformed log-velocity")
    ax.set_title(f"Transformed process, {n} sample paths")
    fig.tight_layout()
    fig.savefig(outfile, dpi=DPI)
    plt.close(fig)


def plot_convergence(statistic_by_T, tolerance: float, outfile) -> None:
    horizons = [T for T, _ in statistic_by_T]
    values = [abs(v) for _, v in statistic_by_T]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(horizons, values, "o-", color="tab:blue")
    ax.axhline(tolerance, color="tab:red", lw=0.8, ls="--",
               label=f"tolerance {tolerance:g}")
    ax.set_xlabel("horizon T (years)")
    ax.set_ylabel("|mean-ergodicity statistic|")
    ax.set_yscale("log")
    ax.set_title("Ergodicity functional vs horizon")
    ax.legend()
    fig.tight_layout()
    fig.savefig(outfile, dpi=DPI)
    plt.close(fig)


def plot_fan(fan: ForecastFan, outfile) -> None:
    x = fan.dates if fan.dates is not None else fan.times
    fig, ax = plt.subplots(figsize=(9, 5))
    q = fan.quantiles
    n_levels = len(fan.quantile_levels)
    for i in range(n_levels // 2):
        lo, hi = q[i], q[n_levels - 1 - i]
        label = (f"{100 * fan.quantile_levels[i]:.0f}-"
                 f"{100 * fan.quantile_levels[n_levels - 1 - i]:.0f}%")
        ax.fill_between(x, lo, hi, alpha=0.25, color="tab:blue", label=label)
    ax.plot(x, fan.mean_path, color="tab:blue", lw=1.5, label="mean")
    if n_levels % 2 == 1:
        ax.plot(x, q[n_levels // 2], color="tab:blue", lw=0.8, ls="--",
                label="median")
    ax.set_ylabel("velocity")
    ax.set_title(f"Velocity forecast fan ({fan.n_paths} paths)")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(outfile, dpi=DPI)
    plt.close(fig)


def plot_comparison(dates, actual: np.ndarray,
                    predictions: dict[str, np.ndarray],
                    table: ComparisonTable, outfile) -> None:
    fig, ax = plt.subplots(figsize=(9, 5))
    ax.plot(dates, actual, color="black", lw=1.4, label="actual")
    for name, values in predictions.items():
        ax.plot(dates, values, lw=1.1, ls="--", label=name)
    unit = "log return" if table.space == "returns" else "velocity level"
    ax.set_ylabel(unit)
    ax.set_title(f"Holdout predictions ({table.space} space)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(outfile, dpi=DPI)
    plt.close(fig)
