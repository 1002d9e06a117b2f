import datetime as dt
import io
import math

import numpy as np
import pytest

from ergovel import (
    DataError,
    GbmParams,
    compare_models,
    compute_metrics,
    log_ergodic_predictor,
    mle_gbm,
    qtm_baseline,
    split_at,
)
from ergovel.evaluate import format_comparison_table, write_comparison_csv
from ergovel.stochastic import substream

from test_timeseries import quarterly_series

PX = GbmParams(0.03, 0.2)
PM = GbmParams(0.01, 0.1)


# ---------------------------------------------------------------- baselines

def test_qtm_constant():
    assert qtm_baseline(quarterly_series([2.0, 2.0, 2.0])).level == 2.0


def test_qtm_arithmetic_mean():
    pred = qtm_baseline(quarterly_series([1.0, 3.0]))
    assert pred.level == 2.0
    dates = [dt.date(2020, 1, 1), dt.date(2030, 1, 1)]
    assert pred.predict(dates).tolist() == [2.0, 2.0]


def test_log_ergodic_identical_params_is_flat():
    pred = log_ergodic_predictor(PX, PX, v0=1.7, origin=dt.date(2008, 1, 1))
    dates = [dt.date(2008, 1, 1), dt.date(2012, 1, 1), dt.date(2030, 1, 1)]
    assert np.allclose(pred.predict(dates), 1.7, rtol=1e-14)


def test_log_ergodic_pure_drift():
    # equal volatilities: prediction is v0 * exp(g t)
    g = 0.02
    pred = log_ergodic_predictor(GbmParams(0.05, 0.1), GbmParams(0.05 - g, 0.1),
                                 v0=2.0, origin=dt.date(2000, 1, 1))
    out = pred.predict([dt.date(2001, 1, 1), dt.date(2005, 1, 1)])
    assert np.allclose(out, [2.0 * math.exp(g), 2.0 * math.exp(5 * g)],
                       rtol=1e-12)


def test_log_ergodic_requires_calibration():
    with pytest.raises(ValueError, match="calibration"):
        log_ergodic_predictor(None, PM, v0=1.0, origin=dt.date(2000, 1, 1))


def test_log_ergodic_matches_planted_mean_path():
    # calibrate on simulated data with known parameters; the predictor must
    # track the planted analytic mean within estimation error
    mu_x, sig_x, mu_m, sig_m, dtq = 0.04, 0.08, 0.02, 0.02, 0.25
    rng = substream(55)
    n = 400
    rx = rng.normal((mu_x - sig_x**2 / 2) * dtq, sig_x * math.sqrt(dtq), n)
    rm = rng.normal((mu_m - sig_m**2 / 2) * dtq, sig_m * math.sqrt(dtq), n)
    gdp = quarterly_series(100 * np.exp(np.concatenate([[0], np.cumsum(rx)])),
                           start=dt.date(1950, 1, 1))
    money = quarterly_series(50 * np.exp(np.concatenate([[0], np.cumsum(rm)])),
                             start=dt.date(1950, 1, 1))
    est_x, est_m = mle_gbm(gdp), mle_gbm(money)
    pred = log_ergodic_predictor(est_x.params, est_m.params, v0=2.0,
                                 origin=gdp.end)
    horizon_dates = [dt.date(2055, 1, 1)]  # ~4.75 years past the origin
    t = 4.75
    planted_rate = mu_x - mu_m + sig_m * (sig_m - sig_x)
    planted = 2.0 * math.exp(planted_rate * t)
    # drift estimate SE dominates; propagate 3 SE of (mu_x - mu_m) through exp
    se_rate = math.hypot(est_x.se_mu, est_m.se_mu)
    band = planted * (math.exp(3 * se_rate * t) - 1)
    assert abs(pred.predict(horizon_dates)[0] - planted) < band


# ---------------------------------------------------------------- metrics

def test_perfect_fit():
    rep = compute_metrics([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0], k=1)
    assert rep.sse == 0.0 and rep.rmse == 0.0 and rep.mae == 0.0
    assert rep.r2 == 1.0 and rep.adj_r2 == 1.0


def test_hand_computed_case():
    rep = compute_metrics([0.0, 0.0, 0.0, 0.0], [1.0, -1.0, 1.0, -1.0], k=1)
    assert rep.sse == 4.0
    assert rep.rmse == 1.0
    assert rep.mae == 1.0
    assert rep.r2 == 0.0  # actuals have mean 0 and variance SST = 4


def test_metric_identities_on_random_pairs():
    rng = substream(77)
    for _ in range(200):
        n = int(rng.integers(5, 60))
        pred = rng.normal(size=n)
        act = rng.normal(size=n)
        rep = compute_metrics(pred, act, k=1)
        assert rep.rmse**2 * rep.n == pytest.approx(rep.sse, rel=1e-12)
        assert rep.mae <= rep.rmse + 1e-15


def test_metrics_invariant_under_reordering():
    pred = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    act = np.array([1.1, 1.9, 3.2, 3.8, 5.1])
    rep = compute_metrics(pred, act, k=1)
    perm = [3, 1, 4, 0, 2]
    rep2 = compute_metrics(pred[perm], act[perm], k=1)
    assert rep2.sse == pytest.approx(rep.sse, rel=1e-14)
    assert rep2.r2 == pytest.approx(rep.r2, rel=1e-14)
    assert rep2.mae == pytest.approx(rep.mae, rel=1e-14)


def test_degenerate_actuals_flagged():
    rep = compute_metrics([1.0, 2.0, 3.0], [2.0, 2.0, 2.0], k=1)
    assert rep.degenerate_actuals
    assert math.isnan(rep.r2) and math.isnan(rep.adj_r2)
    assert rep.sse == pytest.approx(2.0)


def test_metrics_input_validation():
    with pytest.raises(ValueError, match="mismatch"):
        compute_metrics([1.0, 2.0], [1.0], k=1)
    with pytest.raises(ValueError, match="k"):
        compute_metrics([1.0, 2.0], [1.0, 2.0], k=1)


def test_adjusted_r2_formula():
    rng = substream(78)
    act = rng.normal(size=20)
    pred = act + rng.normal(0, 0.3, size=20)
    rep = compute_metrics(pred, act, k=4)
    expected = 1 - (1 - rep.r2) * (20 - 1) / (20 - 4 - 1)
    assert rep.adj_r2 == pytest.approx(expected, rel=1e-14)


# ---------------------------------------------------------------- comparison

def make_velocity(n=120, seed=91, drift=-0.03, noise=0.01,
                  start=dt.date(1980, 1, 1)):
    rng = substream(seed)
    dtq = 0.25
    returns = rng.normal(drift * dtq, noise, n - 1)
    values = 2.0 * np.exp(np.concatenate([[0.0], np.cumsum(returns)]))
    return quarterly_series(values, start=start, name="velocity")


def test_identical_models_identical_rows():
    vel = make_velocity()
    train, holdout = split_at(vel, vel.dates[90])
    qtm = qtm_baseline(train)
    table = compare_models(train, holdout, [("a", qtm), ("b", qtm)])
    _, a_train, a_hold = table.rows[0]
    _, b_train, b_hold = table.rows[1]
    assert a_train == b_train and a_hold == b_hold


def test_constructed_advantage_ordering():
    # planted drift: the calibrated predictor must beat the constant baseline
    vel = make_velocity(drift=-0.03)
    train, holdout = split_at(vel, vel.dates[90])
    # calibrate the two legs on synthetic gdp/money with the same drift gap
    rng = substream(17)
    rx = rng.normal(0.005, 0.012, len(train) - 1)
    gdp_values = 100 * np.exp(np.concatenate([[0.0], np.cumsum(rx)]))
    money_values = gdp_values / train.values * 50.0
    gdp = quarterly_series(gdp_values, start=train.start, name="g")
    money = quarterly_series(money_values, start=train.start, name="m")
    est_x, est_m = mle_gbm(gdp), mle_gbm(money)
    ergodic = log_ergodic_predictor(est_x.params, est_m.params,
                                    v0=float(train.values[-1]),
                                    origin=train.end)
    qtm = qtm_baseline(train)
    for space in ("returns", "levels"):
        table = compare_models(train, holdout,
                               [("QTM", qtm), ("Log-ergodic", ergodic)],
                               space=space)
        (_, _, qtm_hold), (_, _, ergodic_hold) = table.rows
        assert ergodic_hold.rmse < qtm_hold.rmse


def test_qtm_r2_zero_on_train_levels():
    vel = make_velocity()
    train, holdout = split_at(vel, vel.dates[90])
    table = compare_models(train, holdout,
                           [("QTM", qtm_baseline(train)),
                            ("QTM2", qtm_baseline(train))],
                           space="levels")
    assert table.rows[0][1].r2 == pytest.approx(0.0, abs=1e-12)


def test_compare_requires_two_models():
    vel = make_velocity()
    train, holdout = split_at(vel, vel.dates[90])
    with pytest.raises(ValueError, match="two models"):
        compare_models(train, holdout, [("only", qtm_baseline(train))])


def test_compare_rejects_misaligned_windows():
    vel = make_velocity()
    train, holdout = split_at(vel, vel.dates[90])
    with pytest.raises(DataError, match="after the train window"):
        compare_models(holdout, train, [("a", qtm_baseline(train)),
                                        ("b", qtm_baseline(train))])


def test_comparison_serialization():
    vel = make_velocity()
    train, holdout = split_at(vel, vel.dates[90])
    qtm = qtm_baseline(train)
    ergodic = log_ergodic_predictor(PX, PM, v0=float(train.values[-1]),
                                    origin=train.end)
    table = compare_models(train, holdout,
                           [("QTM", qtm), ("Log-ergodic", ergodic)])
    buf = io.StringIO()
    write_comparison_csv(buf, table)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("model,sse_train")
    assert len(lines) == 3
    text = format_comparison_table(table)
    assert "RMSE(holdout)" in text and "Log-ergodic" in text
