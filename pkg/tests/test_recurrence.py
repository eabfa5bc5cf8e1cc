import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import naive_rp
from rqamon import DimensionMismatch, RecurrencePlot, build_rp, delay_embed, state_distance

EXAMPLE_ROWS = ["11011", "11011", "00100", "11011", "11011"]


def rp_of(values, eps=0.1, m=1, tau=1, norm="maximum"):
    return build_rp(delay_embed(values, m, tau), eps, norm)


class TestStateDistance:
    def test_euclidean(self):
        assert state_distance((0, 0), (3, 4), "euclidean") == 5.0

    def test_maximum(self):
        assert state_distance((0, 0), (3, 4), "maximum") == 4.0

    @pytest.mark.parametrize("norm", ["maximum", "euclidean"])
    def test_identity(self, norm):
        assert state_distance((1.5, -2.0), (1.5, -2.0), norm) == 0.0

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            state_distance((0, 0), (0, 0, 0))

    def test_unknown_norm(self):
        with pytest.raises(ValueError):
            state_distance((0,), (1,), "l1")


class TestBuild:
    def test_example_matrix(self, backend, example_rp):
        assert ["".join(map(str, r)) for r in example_rp.dense()] == EXAMPLE_ROWS
        assert example_rp.recurrence_count == 17

    def test_constant_all_ones(self, backend):
        rp = rp_of(np.full(70, 3.25), 1e-9)
        assert rp.dense().all()

    def test_identity(self, backend):
        assert np.array_equal(rp_of([0, 10, 20, 30]).dense(), np.eye(4, dtype=np.uint8))

    def test_invalid(self):
        with pytest.raises(ValueError):
            rp_of([0, 1], 0)
        with pytest.raises(ValueError):
            rp_of([0, 1], 0.1, norm="l1")

    @pytest.mark.parametrize("norm", ["maximum", "euclidean"])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_naive_oracle(self, backend, norm, m):
        rng = np.random.default_rng(100 * m + len(norm))
        for _ in range(25):
            n = int(rng.integers(m + 1, 51))
            x = rng.normal(size=n)
            eps = float(rng.uniform(0.05, 1.5))
            emb = delay_embed(x, m, 1)
            got = build_rp(emb, eps, norm).dense()
            want = naive_rp([list(p) for p in emb.points], eps, norm)
            assert got.tolist() == want

    def test_packing_across_word_boundaries(self, backend):
        x = np.random.default_rng(9).normal(size=200)
        rp = rp_of(x, 0.3)
        dense = np.abs(x[:, None] - x[None, :]) <= 0.3
        assert np.array_equal(rp.dense(), dense)
        assert rp[63, 64] == dense[63, 64] and rp[199, 130] == dense[199, 130]
        assert np.array_equal(rp.dense(60, 80), dense[60:140, 60:140])

    def test_properties(self, backend):
        x = np.random.default_rng(1).normal(size=130)
        rp = rp_of(x, 0.2)
        d = rp.dense()
        assert rp.symmetric and np.array_equal(d, d.T)
        assert np.diag(d).all()
        assert rp.n <= rp.recurrence_count <= rp.n**2

    def test_origin_and_provenance(self):
        emb = delay_embed(np.arange(20.0), 3, 2, start=10)
        rp = build_rp(emb, 0.5)
        assert rp.origin == 14
        assert rp.config.m == 3 and rp.config.tau == 2

    def test_immutable(self, example_rp):
        with pytest.raises(ValueError):
            example_rp.words[0, 0] = 0


class TestProperties:
    @given(
        st.lists(st.floats(-5, 5), min_size=2, max_size=60),
        st.floats(0.01, 1),
        st.floats(0, 1),
    )
    @settings(max_examples=60, deadline=None)
    def test_eps_monotone(self, values, e1, extra):
        a = rp_of(values, e1).dense()
        b = rp_of(values, e1 + extra).dense()
        assert not (a & ~b.astype(bool)).any()

    @given(st.lists(st.integers(-50, 50), min_size=2, max_size=60), st.integers(-1000, 1000))
    @settings(max_examples=60, deadline=None)
    def test_shift_invariant(self, values, c):
        # integer-valued states keep the differences exact after shifting
        x = np.array(values, dtype=float) / 8
        a = rp_of(x, 0.25).dense()
        b = rp_of(x + c, 0.25).dense()
        assert np.array_equal(a, b)


class TestFromMatrix:
    def test_round_trip_asymmetric(self):
        m = np.random.default_rng(4).random((70, 70)) < 0.3
        rp = RecurrencePlot.from_matrix(m)
        assert np.array_equal(rp.dense().astype(bool), m)
        assert not rp.symmetric

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            RecurrencePlot.from_matrix(np.ones((2, 3)))
