"""Command-line pipeline: ingest -> calibrate -> ergodicity -> forecast -> compare.

Every command is a pure function of the run configuration and the input
files: rerunning with the same config and seed reproduces every CSV byte for
byte. Each command writes its artifacts plus a ``<command>_meta.txt`` sidecar
echoing the full configuration, the seed and the artifact version (never a
timestamp). Figures are rendered next to the CSVs unless ``--no-plots``.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric failure.
"""

import argparse
import datetime as dt
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import calibration, emo, ergodicity, evaluate, forecast, timeseries
from .errors import ConfigError, DataError, NumericError
from .kvfile import read_kv, write_kv
from .stochastic import DriverMode, wiener_path

ARTIFACT_VERSION = 1

DEFAULT_BETA_GRID = (1.6, 1.7, 1.8, 1.9, 2.0)
DEFAULT_HORIZONS = (50.0, 100.0, 200.0)


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run depends on besides the input files."""

    gdp_csv: str = "data/GDP.csv"
    money_csv: str = "data/M2SL.csv"
    split: dt.date = dt.date(2008, 1, 1)
    beta_grid: tuple[float, ...] = DEFAULT_BETA_GRID
    horizon: float = 5.0
    n_paths: int = 2000
    seed: int = 0
    driver_mode: DriverMode = DriverMode.shared()
    outdir: str = "out"
    space: str = "returns"
    horizons: tuple[float, ...] = DEFAULT_HORIZONS
    tolerance: float = 1e-3
    plots: bool = True

    def validate(self) -> "RunConfig":
        for path in (self.gdp_csv, self.money_csv):
            if not Path(path).is_file():
                raise ConfigError(f"input file not found: {path}")
        if any(b <= emo.MIN_BETA for b in self.beta_grid):
            raise ConfigError(
                f"every inhibition degree must exceed {emo.MIN_BETA}, "
                f"got {self.beta_grid}"
            )
        if self.n_paths < 100:
            raise ConfigError(f"n_paths must be at least 100, got {self.n_paths}")
        if self.seed < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if not self.horizon > 0:
            raise ConfigError(f"horizon must be positive, got {self.horizon}")
        if self.space not in evaluate.SPACES:
            raise ConfigError(f"evaluation space must be one of {evaluate.SPACES}")
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if not self.horizons or any(t <= 0 for t in self.horizons):
            raise ConfigError(f"horizon ladder must be positive: {self.horizons}")
        return self

    @property
    def beta(self) -> float:
        """Primary inhibition degree (first grid entry) for single-beta artifacts."""
        return self.beta_grid[0]

    def to_mapping(self) -> dict[str, object]:
        return {
            "gdp_csv": self.gdp_csv,
            "money_csv": self.money_csv,
            "split": self.split.isoformat(),
            "beta_grid": ",".join(f"{b:g}" for b in self.beta_grid),
            "horizon": f"{self.horizon:g}",
            "n_paths": self.n_paths,
            "seed": self.seed,
            "driver_mode": str(self.driver_mode),
            "outdir": self.outdir,
            "space": self.space,
            "horizons": ",".join(f"{t:g}" for t in self.horizons),
            "tolerance": f"{self.tolerance:g}",
        }


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def config_from_mapping(mapping: dict[str, str],
                        base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    key = ""
    try:
        for key, value in mapping.items():
            if key == "gdp_csv":
                cfg = replace(cfg, gdp_csv=value)
            elif key == "money_csv":
                cfg = replace(cfg, money_csv=value)
            elif key == "split":
                cfg = replace(cfg, split=dt.date.fromisoformat(value))
            elif key == "beta_grid":
                cfg = replace(cfg, beta_grid=_parse_floats(value))
            elif key == "horizon":
                cfg = replace(cfg, horizon=float(value))
            elif key == "n_paths":
                cfg = replace(cfg, n_paths=int(value))
            elif key == "seed":
                cfg = replace(cfg, seed=int(value))
            elif key == "driver_mode":
                cfg = replace(cfg, driver_mode=DriverMode.parse(value))
            elif key == "outdir":
                cfg = replace(cfg, outdir=value)
            elif key == "space":
                cfg = replace(cfg, space=value)
            elif key == "horizons":
                cfg = replace(cfg, horizons=_parse_floats(value))
            elif key == "tolerance":
                cfg = replace(cfg, tolerance=float(value))
            else:
                raise ConfigError(f"unknown configuration key {key!r}")
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad value for {key!r}: {exc}") from exc
    return cfg


def _outdir(config: RunConfig) -> Path:
    out = Path(config.outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_meta(config: RunConfig, out: Path, command: str,
                extra: dict[str, object] | None = None) -> None:
    meta: dict[str, object] = {"command": command,
                               "artifact_version": ARTIFACT_VERSION}
    meta.update(config.to_mapping())
    if extra:
        meta.update(extra)
    write_kv(out / f"{command}_meta.txt", meta)


def _load_inputs(config: RunConfig):
    with open(config.gdp_csv, "r", encoding="utf-8") as fh:
        gdp = timeseries.parse_series_csv(fh, name=Path(config.gdp_csv).stem)
    with open(config.money_csv, "r", encoding="utf-8") as fh:
        money = timeseries.parse_series_csv(fh, name=Path(config.money_csv).stem)
    return timeseries.align_pair(gdp, money)


def _velocity(config: RunConfig):
    gdp, money = _load_inputs(config)
    vel = timeseries.velocity_from(gdp, money)
    return gdp, money, vel


def _train_estimates(config: RunConfig):
    """Calibrate both processes on the pre-split window of the aligned pair."""
    gdp, money, vel = _velocity(config)
    gdp_train, _ = timeseries.split_at(gdp, config.split)
    money_train, _ = timeseries.split_at(money, config.split)
    est_x = calibration.mle_gbm(gdp_train)
    est_m = calibration.mle_gbm(money_train)
    return gdp, money, vel, est_x, est_m


def cmd_ingest(config: RunConfig):
    """Build the velocity series and its log-returns; write both as CSV."""
    out = _outdir(config)
    _, _, vel = _velocity(config)
    returns = timeseries.log_returns(vel.underlying)
    timeseries.write_series_csv(vel.underlying, out / "velocity.csv")
    timeseries.write_series_csv(returns, out / "velocity_returns.csv")
    _write_meta(config, out, "ingest", {
        "velocity_source": "/".join(vel.sources),
        "velocity_n": len(vel.underlying),
        "velocity_start": vel.underlying.start.isoformat(),
        "velocity_end": vel.underlying.end.isoformat(),
    })
    if config.plots:
        from . import plots
        plots.plot_velocity(vel.underlying, returns, out / "velocity.png")
    return vel, returns


def cmd_calibrate(config: RunConfig) -> calibration.CalibrationTable:
    """Estimate GBM parameters on the train window for every inhibition degree."""
    out = _outdir(config)
    gdp, money = _load_inputs(config)
    gdp_train, _ = timeseries.split_at(gdp, config.split)
    money_train, _ = timeseries.split_at(money, config.split)
    table = calibration.beta_sweep(gdp_train, money_train, config.beta_grid)
    calibration.write_calibration_csv(out / "calibration.csv", table)
    with open(out / "calibration.txt", "w", encoding="utf-8") as fh:
        fh.write(calibration.format_calibration_table(table))
    _write_meta(config, out, "calibrate", {
        "train_start": gdp_train.start.isoformat(),
        "train_end": gdp_train.end.isoformat(),
        "train_n": len(gdp_train),
    })
    return table


def cmd_ergodicity(config: RunConfig) -> ergodicity.ErgodicityReport:
    """Evaluate the mean-ergodicity functional over the horizon ladder and
    run the mean-reversion diagnostic."""
    out = _outdir(config)
    _, _, vel, est_x, est_m = _train_estimates(config)
    params_x, params_m = est_x.params, est_m.params

    stats: list[tuple[float, float]] = []
    last_ensemble = None
    for T in config.horizons:
        cfg_t = emo.EmoConfig(beta=config.beta, horizon_T=T)
        ens = forecast.simulate_z_ensemble(
            params_x, params_m, cfg_t, config.n_paths, config.seed,
            n_steps=max(8, round(T)),
        )
        stats.append((T, ergodicity.mean_ergodicity_statistic(ens, T)))
        last_ensemble = ens

    if len(stats) >= 3:
        report = ergodicity.assess_mean_ergodicity(stats, config.tolerance)
    else:
        report = ergodicity.ErgodicityReport(
            statistic_by_T=tuple(stats),
            verdict=ergodicity.Verdict.INCONCLUSIVE,
            tolerance=config.tolerance,
            note=(f"only {len(stats)} horizon(s) configured; the decision "
                  "rule needs at least 3 to read a trend"),
        )

    # Transform of the observed train-window returns (the empirical
    # diagnostic path), also the subject of the mean-reversion test.
    vel_train, _ = timeseries.split_at(vel.underlying, config.split)
    train_returns = timeseries.log_returns(vel_train)
    n = len(train_returns)
    span = n * train_returns.period
    data_cfg = emo.EmoConfig(beta=config.beta, horizon_T=span)
    driver = wiener_path(span, n, config.seed)
    z_data = emo.z_from_data(train_returns, data_cfg, driver)
    emo.write_emo_csv(out / "z_sample.csv", z_data)
    write_kv(out / "z_sample_meta.txt",
             emo.emo_sidecar(z_data, driver_mode=str(config.driver_mode)))

    try:
        mr = ergodicity.mean_reversion_test(z_data.values)
        reversion_kv = {
            "mean_reversion_slope": f"{mr.slope:.6g}",
            "mean_reversion_p_value": f"{mr.p_value:.6g}",
            "mean_reversion_reverting": mr.reverting,
        }
    except (DataError, ValueError) as exc:  # constant/short path: flag it
        reversion_kv = {"mean_reversion_degenerate": str(exc)}

    with open(out / "ergodicity.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("T,statistic\n")
        for T, value in report.statistic_by_T:
            fh.write(f"{T:.12g},{value:.12g}\n")
    report_kv = {
        "verdict": report.verdict.value,
        "tolerance": f"{report.tolerance:g}",
        "note": report.note,
        "beta": f"{config.beta:g}",
        "ensemble_paths": config.n_paths,
        **reversion_kv,
    }
    for T, value in report.statistic_by_T:
        report_kv[f"statistic_T{T:g}"] = f"{value:.12g}"
    write_kv(out / "ergodicity_report.txt", report_kv)

    _write_meta(config, out, "ergodicity", {"verdict": report.verdict.value})
    if config.plots:
        from . import plots
        plots.plot_z_paths(last_ensemble, out / "z_paths.png",
                           empirical=(z_data.deltas, z_data.values))
        plots.plot_convergence(report.statistic_by_T, report.tolerance,
                               out / "convergence.png")
    return report


def cmd_forecast(config: RunConfig) -> forecast.ForecastFan:
    """Monte Carlo fan from the last observed velocity over the horizon."""
    out = _outdir(config)
    _, _, vel, est_x, est_m = _train_estimates(config)
    v_last = float(vel.values[-1])
    fan = forecast.forecast_velocity(
        v0=v_last,
        params_X=est_x.params,
        params_M=est_m.params,
        horizon=config.horizon,
        n_paths=config.n_paths,
        seed=config.seed,
        driver_mode=config.driver_mode,
        origin_date=vel.underlying.end,
    )
    forecast.write_fan_csv(out / "forecast.csv", fan)
    _write_meta(config, out, "forecast", {
        "origin_date": vel.underlying.end.isoformat(),
        "origin_level": f"{v_last:.12g}",
    })
    if config.plots:
        from . import plots
        plots.plot_fan(fan, out / "forecast_fan.png")
    return fan


def cmd_compare(config: RunConfig) -> evaluate.ComparisonTable:
    """Score the constant-velocity baseline against the calibrated model on
    both windows."""
    out = _outdir(config)
    _, _, vel, est_x, est_m = _train_estimates(config)
    train, holdout = timeseries.split_at(vel.underlying, config.split)
    qtm = evaluate.qtm_baseline(train)
    ergodic = evaluate.log_ergodic_predictor(
        est_x.params, est_m.params, v0=float(train.values[-1]),
        origin=train.end,
    )
    models = [("QTM", qtm), ("Log-ergodic", ergodic)]
    table = evaluate.compare_models(train, holdout, models, space=config.space)
    evaluate.write_comparison_csv(out / "comparison.csv", table)
    with open(out / "comparison.txt", "w", encoding="utf-8") as fh:
        fh.write(evaluate.format_comparison_table(table))
    _write_meta(config, out, "compare", {"models": ",".join(m for m, _ in models)})
    if config.plots:
        from . import plots
        if config.space == "returns":
            anchor = float(train.values[-1])
            actual = np.diff(np.log(np.concatenate([[anchor], holdout.values])))
            preds = {
                name: np.diff(np.log(np.concatenate(
                    [[anchor], model.predict(holdout.dates)])))
                for name, model in models
            }
        else:
            actual = holdout.values
            preds = {name: model.predict(holdout.dates) for name, model in models}
        plots.plot_comparison(holdout.dates, actual, preds, table,
                              out / "comparison.png")
    return table


def cmd_run_all(config: RunConfig) -> dict[str, object]:
    """The whole pipeline into one output directory."""
    results: dict[str, object] = {}
    results["ingest"] = cmd_ingest(config)
    results["calibrate"] = cmd_calibrate(config)
    results["ergodicity"] = cmd_ergodicity(config)
    results["forecast"] = cmd_forecast(config)
    results["compare"] = cmd_compare(config)
    return results


COMMANDS = {
    "ingest": cmd_ingest,
    "calibrate": cmd_calibrate,
    "ergodicity": cmd_ergodicity,
    "forecast": cmd_forecast,
    "compare": cmd_compare,
    "run-all": cmd_run_all,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergovel",
        description=("Model the velocity of money as a partially ergodic "
                     "stochastic process."),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=(fn.__doc__ or "").splitlines()[0])
        p.add_argument("--config", help="flat key = value configuration file")
        p.add_argument("--gdp", dest="gdp_csv", help="nominal GDP series CSV")
        p.add_argument("--money", dest="money_csv", help="money-supply series CSV")
        p.add_argument("--split", help="train/holdout boundary (ISO date)")
        p.add_argument("--beta-grid", dest="beta_grid",
                       help="comma-separated inhibition degrees, all > 1.5")
        p.add_argument("--horizon", type=float, help="forecast horizon in years")
        p.add_argument("--n-paths", dest="n_paths", type=int,
                       help="Monte Carlo ensemble size (>= 100)")
        p.add_argument("--seed", type=int, help="root RNG seed")
        p.add_argument("--driver-mode", dest="driver_mode",
                       help="shared | independent | correlated:<rho>")
        p.add_argument("--outdir", help="artifact output directory")
        p.add_argument("--space", choices=evaluate.SPACES,
                       help="evaluation space for model comparison")
        p.add_argument("--horizons",
                       help="comma-separated horizon ladder for ergodicity")
        p.add_argument("--tolerance", type=float,
                       help="mean-ergodicity verdict tolerance")
        p.add_argument("--no-plots", action="store_true",
                       help="skip figure rendering")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        if not Path(args.config).is_file():
            raise ConfigError(f"config file not found: {args.config}")
        cfg = config_from_mapping(read_kv(args.config), cfg)
    overrides = {}
    for key in ("gdp_csv", "money_csv", "split", "beta_grid", "horizon",
                "n_paths", "seed", "driver_mode", "outdir", "space",
                "horizons", "tolerance"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = str(value)
    cfg = config_from_mapping(overrides, cfg)
    if args.no_plots:
        cfg = replace(cfg, plots=False)
    return cfg.validate()


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"ergovel: configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"ergovel: data error: {exc}", file=sys.stderr)
        return 3
    except (NumericError, ArithmeticError) as exc:
        print(f"ergovel: numeric failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
