"""Normalization, delay embedding and embedding-parameter estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DegenerateSeries, SeriesTooShort

NORMS = ("maximum", "euclidean")


@dataclass(frozen=True)
class TimeSeries:
    """Dated scalar observations, e.g. daily closing prices.

    ``dates`` may be ``None`` for synthetic, index-only series.
    """

    values: np.ndarray
    dates: Optional[tuple[date, ...]] = None
    name: str = "value"

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if values.size < 2:
            raise SeriesTooShort(f"need at least 2 observations, got {values.size}")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != values.size:
                raise ValueError(f"{len(dates)} dates for {values.size} values")
            for a, b in zip(dates, dates[1:]):
                if not a < b:
                    raise ValueError(f"dates not strictly increasing at {b}")
            object.__setattr__(self, "dates", dates)

    def __len__(self):
        return self.values.size

    def date_at(self, index):
        return None if self.dates is None else self.dates[index]


@dataclass(frozen=True)
class EmbeddingConfig:
    """Embedding and line-extraction settings.

    The defaults (m=1, tau=1, epsilon=0.1, maximum norm) are the settings
    found adequate for daily market data. ``theiler`` is the number of
    central diagonals excluded from diagonal-line statistics: 0 keeps the
    line of identity, 1 drops only the line of identity.
    """

    m: int = 1
    tau: int = 1
    epsilon: float = 0.1
    norm: str = "maximum"
    l_min: int = 2
    v_min: int = 2
    theiler: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.tau < 1:
            raise ValueError(f"tau must be >= 1, got {self.tau}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.norm not in NORMS:
            raise ValueError(f"norm must be one of {NORMS}, got {self.norm!r}")
        if self.l_min < 2 or self.v_min < 2:
            raise ValueError("l_min and v_min must be >= 2")
        if self.theiler < 0:
            raise ValueError(f"theiler must be >= 0, got {self.theiler}")

    @property
    def span(self):
        """Samples consumed by one state vector beyond the first."""
        return (self.m - 1) * self.tau

    def embedded_length(self, n):
        return n - self.span


@dataclass(frozen=True)
class EmbeddedSeries:
    """State vectors ``points[i] = (s[i], s[i+tau], ..., s[i+(m-1)tau])``.

    ``source_range`` is the half-open index range of the series that was
    embedded; point ``i`` becomes known at source index ``origin + i``.
    """

    points: np.ndarray
    m: int
    tau: int
    source_range: tuple[int, int] = field(default=(0, 0))

    def __len__(self):
        return self.points.shape[0]

    @property
    def origin(self):
        return self.source_range[0] + (self.m - 1) * self.tau


def normalize(series: Sequence[float]) -> np.ndarray:
    """Z-score with the sample (N-1) standard deviation."""
    x = np.asarray(series, dtype=np.float64)
    if x.size < 2:
        raise SeriesTooShort(f"need at least 2 values to normalize, got {x.size}")
    sd = x.std(ddof=1)
    if sd == 0 or not np.isfinite(sd):
        raise DegenerateSeries("cannot normalize a constant series")
    return (x - x.mean()) / sd


def delay_embed(series, m: int, tau: int, start: int = 0) -> EmbeddedSeries:
    """Time-delay reconstruction of a scalar series.

    Parameters
    ----------
    series : array_like
        Scalar observations.
    m, tau : int
        Embedding dimension and delay in samples.
    start : int
        Source index of ``series[0]``; only used to label the result.
    """
    x = np.asarray(series, dtype=np.float64)
    if m < 1 or tau < 1:
        raise ValueError("m and tau must be >= 1")
    count = x.size - (m - 1) * tau
    if count < 2:
        raise SeriesTooShort(
            f"{x.size} samples cannot be embedded with m={m}, tau={tau}"
        )
    points = np.empty((count, m))
    for c in range(m):
        points[:, c] = x[c * tau : c * tau + count]
    return EmbeddedSeries(points, m, tau, (start, start + x.size))


def _bin_indices(x, bins):
    lo, hi = x.min(), x.max()
    if hi == lo:
        raise DegenerateSeries("cannot bin a constant series")
    idx = np.floor((x - lo) / (hi - lo) * bins).astype(np.int64)
    return np.clip(idx, 0, bins - 1)


def _histogram_mi(joint):
    n = int(joint.sum())
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    rows, cols = np.nonzero(joint)
    terms = []
    for i, j in zip(rows.tolist(), cols.tolist()):
        c = int(joint[i, j])
        # the integer product keeps the estimate exactly transpose-symmetric
        terms.append(c / n * math.log(c * n / (int(px[i]) * int(py[j]))))
    return math.fsum(terms)


def average_mutual_information(series, max_lag: int = 50, bins: int = 16) -> np.ndarray:
    """Histogram estimate of I(s_t; s_{t+L}) in nats for L = 0..max_lag.

    Both marginals use the same equal-width binning over ``[min, max]`` of
    the whole series. ``result[0]`` is the marginal entropy estimate.
    """
    x = np.asarray(series, dtype=np.float64)
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    if x.size <= max_lag + 1:
        raise SeriesTooShort(f"{x.size} samples too few for max_lag={max_lag}")
    idx = _bin_indices(x, bins)
    n = x.size
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        joint = np.bincount(
            idx[: n - lag] * bins + idx[lag:], minlength=bins * bins
        ).reshape(bins, bins)
        out[lag] = _histogram_mi(joint)
    return out


def first_minimum(curve) -> Optional[int]:
    """Index of the first local minimum; plateaus resolve to their first index."""
    c = np.asarray(curve, dtype=np.float64)
    for i in range(1, c.size - 1):
        if c[i - 1] > c[i] and c[i] <= c[i + 1]:
            return i
    return None


def false_nearest_neighbors(
    series,
    tau: int = 1,
    max_m: int = 10,
    rtol: float = 15.0,
    atol: float = 2.0,
) -> np.ndarray:
    """Fraction of false nearest neighbours for m = 1..max_m.

    A neighbour found in dimension m is false when adding coordinate m+1
    stretches the pair by more than ``rtol`` times their distance, or pushes
    their (m+1)-dimensional distance beyond ``atol`` series standard
    deviations. Distances are Euclidean. ``result[m - 1]`` belongs to m.
    """
    x = np.asarray(series, dtype=np.float64)
    if tau < 1 or max_m < 1:
        raise ValueError("tau and max_m must be >= 1")
    if not (rtol > 0 and atol > 0):
        raise ValueError("rtol and atol must be > 0")
    if x.size - max_m * tau < 2:
        raise SeriesTooShort(
            f"{x.size} samples too few for max_m={max_m}, tau={tau}"
        )
    sd = x.std(ddof=1)
    if sd == 0:
        raise DegenerateSeries("cannot compute FNN of a constant series")
    out = np.empty(max_m)
    for m in range(1, max_m + 1):
        count = x.size - m * tau
        pts = delay_embed(x[: count + (m - 1) * tau], m, tau).points
        extra = x[m * tau : m * tau + count]
        dist, idx = cKDTree(pts).query(pts, k=2)
        own = idx[:, 0] == np.arange(count)
        nb = np.where(own, idx[:, 1], idx[:, 0])
        d = np.where(own, dist[:, 1], dist[:, 0])
        jump = np.abs(extra - extra[nb])
        false = (jump > rtol * d) | (np.sqrt(d * d + jump * jump) > atol * sd)
        out[m - 1] = false.mean()
    return out


def first_below(fractions, threshold: float = 0.05) -> Optional[int]:
    """Smallest embedding dimension whose FNN fraction is <= ``threshold``."""
    for m, f in enumerate(np.asarray(fractions), start=1):
        if f <= threshold:
            return m
    return None
