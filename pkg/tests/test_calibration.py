import io
import math

import numpy as np
import pytest

from ergovel import DataError, beta_sweep, mle_gbm
from ergovel.calibration import (
    CalibrationTable,
    format_calibration_table,
    write_calibration_csv,
)
from ergovel.stochastic import substream

from test_timeseries import quarterly_series


def simulated_gbm_series(mu, sigma, dt, n_obs, seed, x0=100.0):
    rng = substream(2024, seed)
    returns = rng.normal((mu - sigma**2 / 2) * dt, sigma * math.sqrt(dt),
                         n_obs - 1)
    values = x0 * np.exp(np.concatenate([[0.0], np.cumsum(returns)]))
    return quarterly_series(values)


def test_deterministic_growth_recovery():
    dt = 0.25
    values = np.exp(0.05 * dt * np.arange(40))
    est = mle_gbm(quarterly_series(values))
    assert est.params.sigma == pytest.approx(0.0, abs=1e-12)
    assert est.params.mu == pytest.approx(0.05, rel=1e-12)


def test_zero_variance_flagged():
    est = mle_gbm(quarterly_series([3.0] * 10))
    assert est.params.sigma == 0.0
    assert est.params.mu == 0.0
    assert est.zero_variance
    assert est.se_mu == 0.0 and est.se_sigma == 0.0


def test_round_trip_single_seed():
    mu, sigma = 0.02, 0.1
    est = mle_gbm(simulated_gbm_series(mu, sigma, 0.25, 200, seed=0))
    assert abs(est.params.mu - mu) <= 3 * est.se_mu
    assert abs(est.params.sigma - sigma) <= 3 * est.se_sigma
    assert est.n_obs == 199
    assert est.dt == 0.25


def test_two_point_series_rejected():
    series = quarterly_series([1.0, math.exp(0.1)])
    with pytest.raises(DataError, match="at least 3"):
        mle_gbm(series)


def test_non_positive_series_rejected():
    series = quarterly_series([1.0, 2.0, 3.0])
    bad = type(series)("x", series.dates, np.array([1.0, -1.0, 2.0]), 0.25)
    with pytest.raises(DataError, match="non-positive"):
        mle_gbm(bad)


@pytest.mark.parametrize("scale", [0.5, 3.0, 100.0])
def test_scale_invariance(scale):
    base = simulated_gbm_series(0.03, 0.2, 0.25, 120, seed=1)
    scaled = quarterly_series(scale * base.values)
    est_a, est_b = mle_gbm(base), mle_gbm(scaled)
    assert est_b.params.mu == pytest.approx(est_a.params.mu, rel=1e-10,
                                            abs=1e-12)
    assert est_b.params.sigma == pytest.approx(est_a.params.sigma, rel=1e-10)


def test_consistency_error_shrinks_like_root_n():
    mu, sigma, dt = 0.02, 0.15, 0.25
    sizes = (50, 200, 800, 3200)
    mean_abs_err = []
    for n in sizes:
        errs = [abs(mle_gbm(simulated_gbm_series(mu, sigma, dt, n, seed=s))
                    .params.sigma - sigma)
                for s in range(200)]
        mean_abs_err.append(np.mean(errs))
    slope = np.polyfit(np.log(sizes), np.log(mean_abs_err), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.1)


# ---------------------------------------------------------------- sweep

def test_sweep_full_grid_layout():
    gdp = simulated_gbm_series(0.05, 0.08, 0.25, 100, seed=2)
    money = simulated_gbm_series(0.06, 0.02, 0.25, 100, seed=3)
    table = beta_sweep(gdp, money, (1.6, 1.7, 1.8, 1.9, 2.0))
    assert len(table.rows) == 5
    assert table.betas == (1.6, 1.7, 1.8, 1.9, 2.0)
    buf = io.StringIO()
    write_calibration_csv(buf, table)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "beta,param,estimate,se"
    assert len(lines) == 1 + 5 * 4  # four parameters per inhibition degree
    assert lines[1].startswith("1.6,mu_X,")


def test_sweep_estimates_do_not_depend_on_beta():
    gdp = simulated_gbm_series(0.05, 0.08, 0.25, 80, seed=4)
    money = simulated_gbm_series(0.06, 0.02, 0.25, 80, seed=5)
    table = beta_sweep(gdp, money, (1.6, 2.0, 3.5))
    first_x, first_m = table.rows[0][1], table.rows[0][2]
    for _, est_x, est_m in table.rows[1:]:
        assert est_x == first_x
        assert est_m == first_m


def test_sweep_singleton_grid():
    gdp = simulated_gbm_series(0.05, 0.08, 0.25, 50, seed=6)
    money = simulated_gbm_series(0.06, 0.02, 0.25, 50, seed=7)
    assert len(beta_sweep(gdp, money, (1.6,)).rows) == 1


def test_sweep_rejects_low_beta():
    gdp = simulated_gbm_series(0.05, 0.08, 0.25, 50, seed=8)
    money = simulated_gbm_series(0.06, 0.02, 0.25, 50, seed=9)
    with pytest.raises(ValueError, match="exceed"):
        beta_sweep(gdp, money, (1.5,))
    with pytest.raises(ValueError, match="exceed"):
        beta_sweep(gdp, money, (1.6, 1.4, 2.0))
    with pytest.raises(ValueError, match="empty"):
        beta_sweep(gdp, money, ())


def test_table_requires_increasing_betas():
    est = mle_gbm(simulated_gbm_series(0.02, 0.1, 0.25, 50, seed=10))
    with pytest.raises(ValueError, match="increasing"):
        CalibrationTable(rows=((2.0, est, est), (1.6, est, est)))


def test_text_table_mirrors_layout():
    gdp = simulated_gbm_series(0.05, 0.08, 0.25, 50, seed=11)
    money = simulated_gbm_series(0.06, 0.02, 0.25, 50, seed=12)
    text = format_calibration_table(beta_sweep(gdp, money, (1.6, 1.7)))
    assert "Parameter" in text and "Std Error" in text
    assert text.count("mu_X") == 2
    assert text.count("sigma_M") == 2
