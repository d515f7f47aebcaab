import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from spiral_sim.errors import DegenerateVariance, InsufficientData
from spiral_sim.stats import (
    _F_CRIT,
    _F_DF2,
    _T_CRIT,
    _T_DF,
    StatKind,
    anova_oneway,
    f_critical_p001,
    linreg_r2,
    mean_sd,
    pearson_r,
    t_critical_p001,
    welch_t,
)


def test_mean_sd_examples():
    assert mean_sd([1, 2, 3]) == (2.0, 1.0)
    assert mean_sd([4.2] * 5)[1] == 0.0
    m, sd = mean_sd([2, 4, 4, 4, 5, 5, 7, 9])
    assert m == 5.0
    assert sd == pytest.approx(math.sqrt(32 / 7), rel=1e-12)


def test_mean_sd_needs_two():
    with pytest.raises(InsufficientData):
        mean_sd([1.0])


def test_welch_hand_example():
    res = welch_t([1, 2, 3], [4, 5, 6])
    # se = sqrt(1/3 + 1/3); t = -3 / se
    assert res.statistic == pytest.approx(-3 / math.sqrt(2 / 3), rel=1e-12)
    assert res.statistic == pytest.approx(-3.674, abs=1e-3)
    assert res.df == pytest.approx(4.0)
    assert res.kind is StatKind.WELCH_T


def test_welch_identical_and_antisymmetric():
    a = [1.0, 2.5, 3.0, 7.0]
    b = [0.5, 4.0, 2.0]
    assert welch_t(a, a).statistic == 0.0
    assert welch_t(a, b).statistic == -welch_t(b, a).statistic


def test_welch_degenerate():
    with pytest.raises(DegenerateVariance):
        welch_t([1, 1, 1], [2, 2])


def test_anova_hand_example():
    res = anova_oneway([[1, 2, 3], [2, 3, 4], [3, 4, 5]])
    assert res.statistic == pytest.approx(3.0)
    assert res.df == (2.0, 6.0)


def test_anova_identical_groups_and_degenerate():
    assert anova_oneway([[1, 2, 3]] * 3).statistic == 0.0
    with pytest.raises(DegenerateVariance):
        anova_oneway([[1, 1], [1, 1]])


def test_pearson_examples():
    x = [1.0, 2.0, 3.0, 5.0]
    assert pearson_r(x, x).statistic == pytest.approx(1.0)
    assert pearson_r(x, [-2 * v + 7 for v in x]).statistic == pytest.approx(-1.0)
    r = pearson_r([1, 2, 3], [1, 2, 4])
    assert r.statistic == pytest.approx(0.9820, abs=1e-4)
    assert r.df == 1
    with pytest.raises(DegenerateVariance):
        pearson_r([1, 2, 3], [5, 5, 5])


def test_linreg_examples():
    x = np.arange(10.0)
    fit = linreg_r2(x, 2 * x + 1)
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r2 == pytest.approx(1.0)
    flat = linreg_r2(x, np.full(10, 3.0))
    assert (flat.slope, flat.r2, flat.flat) == (0.0, 0.0, True)
    with pytest.raises(DegenerateVariance):
        linreg_r2([1, 1, 1], [1, 2, 3])


def test_critical_tables_match_scipy():
    sstats = pytest.importorskip("scipy.stats")
    for df, crit in zip(_T_DF, _T_CRIT):
        assert crit == pytest.approx(sstats.t.ppf(0.9995, df), abs=1e-4)
    for df1, row in _F_CRIT.items():
        for df2, crit in zip(_F_DF2, row):
            assert crit == pytest.approx(sstats.f.ppf(0.999, df1, df2), rel=1e-6, abs=1e-4)


def test_critical_lookup_is_conservative():
    # between rows the smaller df (larger critical value) is used
    assert t_critical_p001(37.4) == t_critical_p001(35)
    assert t_critical_p001(0.5) == math.inf
    assert f_critical_p001(2, 297) == pytest.approx(7.0709)
    assert f_critical_p001(2, 298) == f_critical_p001(2, 297)


def _datasets(seed, n_sets=100):
    rng = np.random.default_rng(seed)
    for _ in range(n_sets):
        yield rng, int(rng.integers(3, 12))


def test_welch_and_anova_match_oracle():
    for rng, n in _datasets(1):
        a = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 3), n)
        b = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 3), int(rng.integers(2, 12)))
        t, df = oracles.welch(a, b)
        res = welch_t(a, b)
        assert res.statistic == pytest.approx(t, rel=1e-6)
        assert res.df == pytest.approx(df, rel=1e-6)
        groups = [rng.normal(rng.uniform(-2, 2), 1.0, int(rng.integers(2, 8))) for _ in range(int(rng.integers(2, 5)))]
        assert anova_oneway(groups).statistic == pytest.approx(oracles.anova(groups), rel=1e-6)


def test_pearson_and_linreg_match_oracle():
    for rng, n in _datasets(2):
        x = rng.uniform(-10, 10, n)
        y = rng.uniform(-3, 3) * x + rng.normal(0, rng.uniform(0.1, 5), n)
        assert pearson_r(x, y).statistic == pytest.approx(oracles.pearson(x, y), rel=1e-6)
        slope, icpt, r2 = oracles.linreg(x, y)
        fit = linreg_r2(x, y)
        assert fit.slope == pytest.approx(slope, rel=1e-6)
        assert fit.intercept == pytest.approx(icpt, rel=1e-6, abs=1e-9)
        assert fit.r2 == pytest.approx(r2, rel=1e-6)


finite = st.floats(-1e3, 1e3, allow_nan=False)
series = st.lists(finite, min_size=3, max_size=20)


def _nonconstant(xs):
    return np.ptp(xs) > 1e-3


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_pearson_properties(data):
    n = data.draw(st.integers(3, 20))
    x = np.array(data.draw(st.lists(finite, min_size=n, max_size=n).filter(_nonconstant)))
    y = np.array(data.draw(st.lists(finite, min_size=n, max_size=n).filter(_nonconstant)))
    r = pearson_r(x, y).statistic
    assert -1 <= r <= 1
    assert pearson_r(y, x).statistic == pytest.approx(r, abs=1e-9)
    assert pearson_r(3 * x + 2, y).statistic == pytest.approx(r, abs=1e-9)
    assert pearson_r(-2 * x, y).statistic == pytest.approx(-r, abs=1e-9)
    fit = linreg_r2(x, y)
    assert 0 <= fit.r2 <= 1
    assert fit.r2 == pytest.approx(r * r, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-100, 100), min_size=2, max_size=10), min_size=2, max_size=5),
       st.integers(-1000, 1000))
def test_location_invariance(groups, shift):
    groups = [np.array(g, dtype=float) for g in groups]
    within = sum(np.ptp(g) for g in groups)
    if within == 0:
        return
    f = anova_oneway(groups).statistic
    assert f >= 0
    assert anova_oneway([g + shift for g in groups]).statistic == pytest.approx(f, rel=1e-9, abs=1e-12)
    a, b = groups[0], groups[1]
    if np.ptp(a) + np.ptp(b) > 0:
        t = welch_t(a, b).statistic
        assert welch_t(a + shift, b + shift).statistic == pytest.approx(t, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=3, max_size=30).filter(lambda xs: np.ptp(xs) > 0.1),
       st.floats(-10, 10), st.floats(-10, 10))
def test_linreg_recovers_line(x, a, b):
    x = np.array(x)
    fit = linreg_r2(x, a * x + b)
    assert fit.slope == pytest.approx(a, abs=1e-9)
    assert fit.intercept == pytest.approx(b, abs=1e-9)
