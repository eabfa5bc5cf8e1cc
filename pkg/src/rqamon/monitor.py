"""Rolling real-time monitor.

For every day ``t`` the trailing ``lpr`` observations are normalized on
their own, turned into a recurrence plot, and only the final ``ws x ws``
window is measured. Each output point therefore depends on data up to
``t`` alone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .embedding import EmbeddingConfig, TimeSeries, delay_embed, normalize
from .errors import DegenerateSeries, SeriesTooShort
from .measures import MEASURE_NAMES, MeasureSet, window_measures
from .recurrence import build_rp
from .windowed import DEFAULT_WS, dates_for, series_from_sets

logger = logging.getLogger(__name__)

NORMALIZATION_SCOPES = ("subseries", "global", "none")
STOCK_LPR = 1500
CURRENCY_LPR = 2000


@dataclass(frozen=True)
class MonitorConfig:
    """Monitor settings.

    ``normalization`` is ``"subseries"`` for the causal monitor. ``"global"``
    normalizes the whole input once (it peeks at future data and exists
    to compare against the regular windowed analysis); ``"none"`` uses
    raw values.
    """

    lpr: int = STOCK_LPR
    ws: int = DEFAULT_WS
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    measures: tuple = ("lam",)
    normalization: str = "subseries"

    def __post_init__(self):
        object.__setattr__(self, "measures", tuple(self.measures))
        unknown = set(self.measures) - set(MEASURE_NAMES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        if self.normalization not in NORMALIZATION_SCOPES:
            raise ValueError(f"normalization must be one of {NORMALIZATION_SCOPES}")
        if self.ws < 1:
            raise ValueError("ws must be >= 1")
        if self.embedding.embedded_length(self.lpr) < self.ws:
            raise ValueError(
                f"lpr={self.lpr} leaves fewer than ws={self.ws} embedded states"
            )


def _values(series):
    if isinstance(series, TimeSeries):
        return series.values, series.dates
    return np.asarray(series, dtype=np.float64), None


def _point(values, t, cfg, scaled=None):
    lpr = cfg.lpr
    if t < lpr - 1:
        raise SeriesTooShort(f"t={t} precedes the first full subseries (lpr={lpr})")
    if t >= values.size:
        raise IndexError(f"t={t} beyond series of length {values.size}")
    if cfg.normalization == "subseries":
        sub = normalize(values[t - lpr + 1 : t + 1])
    elif cfg.normalization == "global":
        sub = (normalize(values) if scaled is None else scaled)[t - lpr + 1 : t + 1]
    else:
        sub = values[t - lpr + 1 : t + 1]

    emb = cfg.embedding
    # only the last ws states enter the final window
    tail = cfg.ws + emb.span
    embedded = delay_embed(sub[-tail:], emb.m, emb.tau, start=t - tail + 1)
    rp = build_rp(embedded, emb.epsilon, emb.norm, config=emb)
    return window_measures(rp, 0, cfg.ws, emb, cfg.measures)


def monitor_point(series, t: int, cfg: Optional[MonitorConfig] = None) -> MeasureSet:
    """Measures for day ``t`` from ``values[t - lpr + 1 .. t]`` only."""
    values, _ = _values(series)
    return _point(values, t, cfg or MonitorConfig())


def monitor_series(series, cfg: Optional[MonitorConfig] = None) -> dict:
    """Run :func:`monitor_point` for every ``t`` in ``[lpr - 1, N - 1]``.

    Days whose trailing subseries is constant yield ``None`` instead of
    aborting the run. Returns measure name -> MeasureSeries.
    """
    cfg = cfg or MonitorConfig()
    values, dates = _values(series)
    if values.size < cfg.lpr:
        raise SeriesTooShort(f"series of length {values.size} shorter than lpr={cfg.lpr}")
    scaled = normalize(values) if cfg.normalization == "global" else None
    ts = range(cfg.lpr - 1, values.size)
    sets = []
    for t in ts:
        try:
            sets.append(_point(values, t, cfg, scaled))
        except DegenerateSeries:
            logger.warning("constant subseries ending at t=%d; emitting none", t)
            sets.append(None)
    echo = {
        "lpr": cfg.lpr,
        "ws": cfg.ws,
        "normalization": cfg.normalization,
        **vars(cfg.embedding),
    }
    names = [n for n in MEASURE_NAMES if n in cfg.measures]
    return series_from_sets(sets, list(ts), names, dates_for(ts, dates), echo)
