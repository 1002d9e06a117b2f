import io

import numpy as np
import pytest

from ergovel import (
    EmoConfig,
    GbmParams,
    LogDecomposition,
    TimeSeries,
    apply_emo,
    decompose_log_gbm,
    wiener_path,
    z_coefficients,
    z_from_data,
    z_variance,
    z_velocity_path,
)
from ergovel.emo import WienerPath, write_emo_csv

from test_timeseries import quarterly_series


def ramp_driver(horizon, n_steps, terminal):
    """Deterministic driver with a prescribed W_T, linear in between."""
    grid = np.linspace(0.0, horizon, n_steps + 1)
    return WienerPath(grid, grid * (terminal / horizon), seed=(0,))


# ---------------------------------------------------------------- config

def test_config_requires_beta_above_three_halves():
    with pytest.raises(ValueError):
        EmoConfig(beta=1.5, horizon_T=10.0)
    with pytest.raises(ValueError):
        EmoConfig(beta=1.2, horizon_T=10.0)
    assert EmoConfig(beta=1.6, horizon_T=10.0).damping == pytest.approx(10**-1.6)


def test_config_requires_positive_horizon():
    with pytest.raises(ValueError):
        EmoConfig(beta=1.6, horizon_T=0.0)


# ---------------------------------------------------------------- decompose

def test_decompose_zero_volatility():
    d = decompose_log_gbm(GbmParams(mu=0.05, sigma=0.0))
    deltas = np.array([0.0, 1.0, 2.0])
    assert np.allclose(d.drift_part(deltas), 0.05 * deltas)
    w = ramp_driver(2.0, 2, terminal=1.3)
    assert np.all(d.random_part(deltas, w) == 0.0)


def test_decompose_drift_cancellation():
    sigma = 0.4
    d = decompose_log_gbm(GbmParams(mu=sigma**2 / 2, sigma=sigma))
    assert np.all(d.drift_part(np.array([0.0, 5.0, 9.0])) == 0.0)


def test_decompose_hand_value():
    d = decompose_log_gbm(GbmParams(mu=0.02, sigma=0.1))
    assert d.drift_part(np.array([2.0]))[0] == pytest.approx(0.03, abs=1e-15)


# ---------------------------------------------------------------- apply

def test_apply_null_decomposition():
    null = LogDecomposition(lambda d: 0.0 * d, lambda d, w: 0.0 * d)
    config = EmoConfig(beta=1.7, horizon_T=4.0)
    out = apply_emo(null, config, wiener_path(4.0, 16, seed=2))
    assert np.all(out.values == 0.0)


def test_apply_direct_substitution():
    # D = delta, R = 0, W_T = 2, T = 10, beta = 2  ->  value = 0.02 * delta
    decomp = LogDecomposition(lambda d: d, lambda d, w: 0.0 * d)
    config = EmoConfig(beta=2.0, horizon_T=10.0)
    driver = ramp_driver(10.0, 10, terminal=2.0)
    out = apply_emo(decomp, config, driver)
    assert np.allclose(out.values, 0.02 * driver.grid, rtol=1e-14)


def test_apply_is_linear():
    d1 = decompose_log_gbm(GbmParams(0.03, 0.2))
    d2 = decompose_log_gbm(GbmParams(-0.01, 0.05))
    a, b = 2.5, -1.25
    config = EmoConfig(beta=1.8, horizon_T=5.0)
    driver = wiener_path(5.0, 40, seed=11)
    combined = apply_emo(a * d1 + b * d2, config, driver)
    separate = (a * apply_emo(d1, config, driver).values
                + b * apply_emo(d2, config, driver).values)
    assert np.allclose(combined.values, separate, atol=1e-15)


def test_apply_rejects_horizon_mismatch():
    decomp = decompose_log_gbm(GbmParams(0.0, 0.1))
    config = EmoConfig(beta=1.6, horizon_T=10.0)
    with pytest.raises(ValueError, match="horizon"):
        apply_emo(decomp, config, wiener_path(5.0, 10, seed=0))


def test_value_at_zero_is_exactly_zero():
    out = apply_emo(decompose_log_gbm(GbmParams(0.05, 0.3)),
                    EmoConfig(beta=1.9, horizon_T=3.0),
                    wiener_path(3.0, 12, seed=4))
    assert out.values[0] == 0.0


# ---------------------------------------------------------------- velocity Z

def test_z_vanishes_for_identical_params():
    params = GbmParams(0.02, 0.15)
    config = EmoConfig(beta=1.6, horizon_T=8.0)
    for seed in range(3):
        z = z_velocity_path(params, params, config, wiener_path(8.0, 32, seed))
        assert np.all(z.values == 0.0)


def test_z_worked_example():
    # mu_X=0.03, mu_M=0.01, sig_X=0.2, sig_M=0.1, W_T=1, W(1)=0.5, T=10, b=1.6
    params_x, params_m = GbmParams(0.03, 0.2), GbmParams(0.01, 0.1)
    a, b = z_coefficients(params_x, params_m)
    assert a == pytest.approx(0.005, abs=1e-15)
    assert b == pytest.approx(0.1, abs=1e-15)
    grid = np.linspace(0.0, 10.0, 11)
    values = np.zeros(11)
    values[1] = 0.5   # W at delta = 1
    values[-1] = 1.0  # W_T
    driver = WienerPath(grid, values, seed=(0,))
    z = z_velocity_path(params_x, params_m, EmoConfig(1.6, 10.0), driver)
    expected = 0.055 / 10**1.6
    assert z.values[1] == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.0013815, abs=5e-8)


def test_z_equals_difference_of_transforms():
    params_x, params_m = GbmParams(0.03, 0.2), GbmParams(0.01, 0.1)
    config = EmoConfig(beta=1.6, horizon_T=10.0)
    driver = wiener_path(10.0, 80, seed=19)
    z = z_velocity_path(params_x, params_m, config, driver)
    y_x = apply_emo(decompose_log_gbm(params_x), config, driver)
    y_m = apply_emo(decompose_log_gbm(params_m), config, driver)
    assert np.allclose(z.values, y_x.values - y_m.values, atol=1e-14)


def test_z_coefficient_scaling_with_horizon():
    # the W_T coefficient A*delta/T^beta scales exactly by c^-beta in T
    params_x, params_m = GbmParams(0.03, 0.2), GbmParams(0.01, 0.1)
    a, _ = z_coefficients(params_x, params_m)
    beta, delta, c = 1.7, 2.0, 4.0
    for T in (10.0, 25.0):
        coeff = a * delta / T**beta
        scaled = a * delta / (c * T) ** beta
        assert scaled == pytest.approx(coeff * c**-beta, rel=1e-12)


def test_z_variance_formula_spot_values():
    params_x, params_m = GbmParams(0.03, 0.2), GbmParams(0.01, 0.1)
    config = EmoConfig(beta=1.6, horizon_T=10.0)
    a, b = 0.005, 0.1
    deltas = np.array([0.0, 1.0, 10.0])
    expected = (a**2 * deltas**2 * 10 ** (1 - 3.2)
                + b**2 * deltas * 10**-3.2
                + 2 * a * b * deltas**2 * 10**-3.2)
    assert np.allclose(z_variance(params_x, params_m, config, deltas), expected,
                       rtol=1e-12)
    assert z_variance(params_x, params_m, config, deltas)[0] == 0.0


# ---------------------------------------------------------------- empirical Z

def test_z_from_data_zero_returns():
    returns = quarterly_series([0.0, 0.0, 0.0, 0.0])
    config = EmoConfig(beta=1.6, horizon_T=1.0)
    z = z_from_data(returns, config, wiener_path(1.0, 4, seed=3))
    assert np.all(z.values == 0.0)


def test_z_from_data_constant_returns_closed_form():
    r, dt_years = 0.01, 0.25
    returns = quarterly_series([r] * 8)
    horizon = 8 * dt_years
    config = EmoConfig(beta=1.8, horizon_T=horizon)
    driver = wiener_path(horizon, 8, seed=6)
    z = z_from_data(returns, config, driver)
    expected = (driver.terminal / horizon**1.8) * (r / dt_years) * driver.grid
    assert np.allclose(z.values, expected, atol=1e-15)


def test_z_from_data_magnitude_bound():
    rng = np.random.default_rng(8)
    returns = quarterly_series(rng.normal(0.002, 0.01, 196))
    horizon = 196 * 0.25
    config = EmoConfig(beta=1.6, horizon_T=horizon)
    driver = wiener_path(horizon, 196, seed=9)
    z = z_from_data(returns, config, driver)
    mean_r = returns.values.mean()
    max_drift = abs(mean_r / 0.25) * horizon
    max_random = np.max(np.abs(np.cumsum(returns.values - mean_r)))
    bound = (abs(driver.terminal) * max_drift + max_random) / horizon**1.6
    assert np.max(np.abs(z.values)) <= bound + 1e-15
    assert len(z.values) == 197


def test_z_from_data_validates_grid():
    returns = quarterly_series([0.01] * 8)
    config = EmoConfig(beta=1.6, horizon_T=2.0)
    with pytest.raises(ValueError, match="steps"):
        z_from_data(returns, config, wiener_path(2.0, 7, seed=0))
    with pytest.raises(ValueError, match="horizon"):
        z_from_data(returns, EmoConfig(beta=1.6, horizon_T=3.0),
                    wiener_path(3.0, 8, seed=0))


def test_emo_csv_dump():
    config = EmoConfig(beta=1.6, horizon_T=1.0)
    z = z_velocity_path(GbmParams(0.03, 0.2), GbmParams(0.01, 0.1), config,
                        wiener_path(1.0, 4, seed=5))
    buf = io.StringIO()
    write_emo_csv(buf, z)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "delta,value"
    assert len(lines) == 6
    assert lines[1] == "0,0"
