"""Velocity of money as a partially ergodic stochastic process.

The library calibrates geometric Brownian dynamics for output and money
supply from historical series, builds the ergodic-maker transform of
log-velocity, checks its mean-ergodic and mean-reverting behaviour
statistically, forecasts velocity by Monte Carlo, and benchmarks the result
against a constant-velocity baseline.
"""

from .calibration import (
    CalibrationTable,
    GbmEstimate,
    beta_sweep,
    mle_gbm,
)
from .emo import (
    EmoConfig,
    EmoPath,
    LogDecomposition,
    apply_emo,
    decompose_log_gbm,
    z_coefficients,
    z_from_data,
    z_variance,
    z_velocity_path,
)
from .ergodicity import (
    DispersionSummary,
    Ensemble,
    ErgodicityReport,
    MeanReversionResult,
    Verdict,
    assess_mean_ergodicity,
    autocovariance,
    dispersion_diagnostic,
    mean_ergodicity_statistic,
    mean_reversion_test,
)
from .errors import ConfigError, DataError, ErgovelError, NumericError
from .evaluate import (
    ComparisonTable,
    LogErgodicPredictor,
    MetricsReport,
    QtmBaseline,
    compare_models,
    compute_metrics,
    log_ergodic_predictor,
    qtm_baseline,
)
from .forecast import (
    ForecastFan,
    analytic_mean_velocity,
    forecast_velocity,
    simulate_velocity_paths,
    simulate_z_ensemble,
)
from .stochastic import (
    DriverMode,
    EulerPath,
    GbmParams,
    Path,
    WienerPath,
    gbm_euler_path,
    gbm_exact_path,
    wiener_pair,
    wiener_path,
)
from .timeseries import (
    TimeSeries,
    VelocitySeries,
    align_pair,
    log_returns,
    parse_series_csv,
    split_at,
    velocity_from,
    write_series_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationTable", "GbmEstimate", "beta_sweep", "mle_gbm",
    "EmoConfig", "EmoPath", "LogDecomposition", "apply_emo",
    "decompose_log_gbm", "z_coefficients", "z_from_data", "z_variance",
    "z_velocity_path",
    "DispersionSummary", "Ensemble", "ErgodicityReport",
    "MeanReversionResult", "Verdict", "assess_mean_ergodicity",
    "autocovariance", "dispersion_diagnostic", "mean_ergodicity_statistic",
    "mean_reversion_test",
    "ConfigError", "DataError", "ErgovelError", "NumericError",
    "ComparisonTable", "LogErgodicPredictor", "MetricsReport", "QtmBaseline",
    "compare_models", "compute_metrics", "log_ergodic_predictor",
    "qtm_baseline",
    "ForecastFan", "analytic_mean_velocity", "forecast_velocity",
    "simulate_velocity_paths", "simulate_z_ensemble",
    "DriverMode", "EulerPath", "GbmParams", "Path", "WienerPath",
    "gbm_euler_path", "gbm_exact_path", "wiener_pair", "wiener_path",
    "TimeSeries", "VelocitySeries", "align_pair", "log_returns",
    "parse_series_csv", "split_at", "velocity_from", "write_series_csv",
    "__version__",
]
