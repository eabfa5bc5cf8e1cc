import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rqamon import (
    EmbeddingConfig,
    MonitorConfig,
    SeriesTooShort,
    TimeSeries,
    build_rp,
    delay_embed,
    monitor_point,
    monitor_series,
    normalize,
    windowed_measures,
)
from rqamon.monitor import CURRENCY_LPR, STOCK_LPR
from signals import random_walk, two_regime


class TestConfig:
    def test_defaults(self):
        c = MonitorConfig()
        assert (c.lpr, c.ws, c.measures, c.normalization) == (1500, 250, ("lam",), "subseries")
        assert STOCK_LPR == 1500 and CURRENCY_LPR == 2000

    @pytest.mark.parametrize(
        "kw", [{"lpr": 100, "ws": 250}, {"measures": ("bogus",)}, {"normalization": "x"}, {"ws": 0}]
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            MonitorConfig(**kw)


class TestGeometry:
    def test_first_t(self):
        x = random_walk(1, 1100)
        cfg = MonitorConfig(lpr=1000, ws=250)
        out = monitor_series(x, cfg)["lam"]
        assert out.indices[0] == 999 and out.indices[-1] == 1099
        with pytest.raises(SeriesTooShort):
            monitor_point(x, 998, cfg)

    def test_point_count(self):
        x = random_walk(2, 3000)
        cfg = MonitorConfig(lpr=1500, ws=250, embedding=EmbeddingConfig(epsilon=0.1))
        out = monitor_series(x, cfg)
        assert len(out["lam"]) == 1501

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            monitor_series(np.arange(100.0), MonitorConfig(lpr=300, ws=50))

    def test_dates_follow(self):
        import datetime as dt

        d = tuple(dt.date(2001, 1, 1) + dt.timedelta(days=i) for i in range(120))
        ts = TimeSeries(random_walk(3, 120), d)
        out = monitor_series(ts, MonitorConfig(lpr=100, ws=40))["lam"]
        assert out.dates[0] == d[99] and out.dates[-1] == d[-1]


class TestValues:
    def test_constant_none_normalization(self):
        out = monitor_series(np.full(150, 42.0), MonitorConfig(lpr=100, ws=50, normalization="none"))
        assert set(out["lam"].values) == {1.0}

    def test_constant_subseries_emits_none(self):
        x = np.concatenate([random_walk(4, 100), np.full(120, 7.0)])
        out = monitor_series(x, MonitorConfig(lpr=100, ws=50))["lam"]
        assert out.values[0] is not None and out.values[-1] is None

    def test_whole_series_coincides_with_windowed(self):
        x = random_walk(5, 600)
        cfg = MonitorConfig(lpr=600, ws=250, measures=("lam", "rr", "tt"))
        point = monitor_point(x, 599, cfg)
        rp = build_rp(delay_embed(normalize(x), 1, 1), 0.1)
        win = windowed_measures(rp, ws=250, measures=["lam", "rr", "tt"])
        for name in ("lam", "rr", "tt"):
            assert point.get(name) == win[name].values[-1]
        assert point.window_end == 599

    def test_isolated_reproduction(self):
        x = random_walk(6, 700)
        cfg = MonitorConfig(lpr=400, ws=150)
        series = monitor_series(x, cfg)["lam"]
        t = 555
        alone = monitor_point(x[t - 399 : t + 1], 399, cfg)
        assert alone.lam == series.values[series.indices.index(t)]

    def test_global_equals_windowed(self):
        x = random_walk(7, 700)
        cfg = MonitorConfig(lpr=500, ws=200, normalization="global", measures=("lam", "det"))
        mon = monitor_series(x, cfg)
        rp = build_rp(delay_embed(normalize(x), 1, 1), 0.1)
        win = windowed_measures(rp, ws=200, measures=["lam", "det"])
        for name in ("lam", "det"):
            w = dict(zip(win[name].indices, win[name].values))
            assert all(w[i] == v for i, v in zip(mon[name].indices, mon[name].values))

    def test_embedded_monitor_matches_windowed(self):
        x = random_walk(8, 400)
        emb = EmbeddingConfig(m=3, tau=2, epsilon=0.3)
        cfg = MonitorConfig(lpr=300, ws=100, embedding=emb, normalization="global")
        mon = monitor_series(x, cfg)["lam"]
        rp = build_rp(delay_embed(normalize(x), 3, 2), 0.3)
        win = windowed_measures(rp, emb, ws=100, measures=["lam"])["lam"]
        w = dict(zip(win.indices, win.values))
        assert all(w[i] == v for i, v in zip(mon.indices, mon.values))

    @given(st.integers(0, 10_000), st.integers(150, 259))
    @settings(max_examples=20, deadline=None)
    def test_causal(self, seed, t):
        x = random_walk(seed, 260)
        cfg = MonitorConfig(lpr=150, ws=60)
        full = monitor_series(x, cfg)["lam"]
        cut = monitor_series(x[: t + 1], cfg)["lam"]
        assert cut.values == full.values[: len(cut)]

    def test_regime_direction(self):
        x = two_regime(1, n=3000)
        out = monitor_series(x, MonitorConfig(lpr=1000, ws=250))["lam"]
        idx = np.array(out.indices)
        v = out.to_array()
        # regime 1 ends at 1500; regime-2 windows start after it
        assert np.median(v[idx < 1500]) > np.median(v[idx - 249 >= 1500])
