import numpy as np
import pytest

from rqamon import (
    EmbeddingConfig,
    MEASURE_NAMES,
    MeasureSeries,
    RecurrencePlot,
    WindowTooLarge,
    build_rp,
    compute_measures,
    delay_embed,
    normalize,
    windowed_measures,
)
from signals import two_regime


def rp_of(x, start=0, eps=0.1):
    return build_rp(delay_embed(normalize(x), 1, 1, start=start), eps)


class TestGeometry:
    def test_count_and_indices(self):
        x = np.random.default_rng(0).normal(size=1000)
        out = windowed_measures(rp_of(x), ws=250, measures=["lam"])
        lam = out["lam"]
        assert len(lam) == 751
        assert lam.indices[0] == 249 and lam.indices[-1] == 999

    @pytest.mark.parametrize("n,ws,step", [(300, 50, 1), (300, 50, 7), (101, 100, 3), (64, 64, 1)])
    def test_length_formula(self, n, ws, step):
        x = np.random.default_rng(n).normal(size=n)
        out = windowed_measures(rp_of(x), ws=ws, step=step, measures=["rr"])
        assert len(out["rr"]) == (n - ws) // step + 1

    def test_too_large(self):
        with pytest.raises(WindowTooLarge):
            windowed_measures(rp_of(np.arange(10.0)), ws=11)

    def test_bad_args(self):
        rp = rp_of(np.arange(10.0))
        with pytest.raises(ValueError):
            windowed_measures(rp, ws=5, step=0)
        with pytest.raises(ValueError):
            windowed_measures(rp, ws=5, measures=["lam", "nope"])

    def test_embedded_alignment(self):
        # m=3, tau=2: state k ends at source index k + 4
        x = np.random.default_rng(5).normal(size=100)
        rp = build_rp(delay_embed(x, 3, 2), 0.5)
        out = windowed_measures(rp, ws=20, measures=["lam"])
        assert out["lam"].indices[0] == 4 + 19
        assert out["lam"].indices[-1] == 99


class TestValues:
    def test_all_ones(self):
        rp = RecurrencePlot.from_matrix(np.ones((120, 120)))
        out = windowed_measures(rp, ws=30)
        assert set(out["lam"].values) == {1.0} and set(out["rr"].values) == {1.0}

    def test_equals_standalone_submatrix(self, backend):
        x = np.random.default_rng(8).normal(size=260)
        rp = rp_of(x)
        cfg = rp.config
        out = windowed_measures(rp, ws=90, step=13)
        dense = rp.dense()
        for row, k in enumerate(range(0, rp.n - 90 + 1, 13)):
            sub = compute_measures(RecurrencePlot.from_matrix(dense[k : k + 90, k : k + 90]), cfg)
            for name in MEASURE_NAMES:
                assert out[name].values[row] == sub.get(name), (k, name)

    def test_shift_invariant(self):
        x = np.random.default_rng(2).normal(size=200)
        a = windowed_measures(rp_of(x), ws=60)
        b = windowed_measures(rp_of(x, start=1234), ws=60)
        for name in MEASURE_NAMES:
            assert b[name].values == a[name].values
            assert b[name].indices == tuple(i + 1234 for i in a[name].indices)

    def test_subset_order_and_echo(self):
        out = windowed_measures(rp_of(np.sin(np.arange(100))), ws=40, measures=["tt", "rr"])
        assert list(out) == ["rr", "tt"]
        assert out["rr"].config["ws"] == 40 and out["rr"].config["epsilon"] == 0.1

    def test_dates_attached(self):
        import datetime as dt

        dates = [dt.date(2000, 1, 1) + dt.timedelta(days=i) for i in range(80)]
        out = windowed_measures(rp_of(np.cos(np.arange(80.0))), ws=30, dates=dates)
        assert out["lam"].dates[0] == dates[29]

    def test_regime_direction(self):
        x = two_regime(0)
        out = windowed_measures(rp_of(x), EmbeddingConfig(), ws=250, measures=["lam"])
        lam = out["lam"]
        idx = np.array(lam.indices)
        vals = lam.to_array()
        r1 = vals[idx < 2500]
        r2 = vals[idx - 249 >= 2500]
        assert np.median(r1) > np.median(r2)


class TestMeasureSeries:
    def test_validation(self):
        with pytest.raises(ValueError):
            MeasureSeries("lam", (1, 2), (0.5,))
        with pytest.raises(ValueError):
            MeasureSeries("lam", (2, 1), (0.5, 0.4))

    def test_to_array_nan(self):
        s = MeasureSeries("tt", (0, 1), (None, 2.0))
        assert np.isnan(s.to_array()[0]) and s.points() == [(0, None), (1, 2.0)]
