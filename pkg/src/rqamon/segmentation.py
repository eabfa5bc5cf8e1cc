"""Regime periods and crisis statistics from a LAM series.

The LAM curve is smoothed with a centered moving average, a normal band
is hung from its maximum, and the first decline deep enough to count as a
crisis is located. Reported LAM levels are read from the raw series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Union

import numpy as np

from .errors import NoCrisisDetected
from .windowed import MeasureSeries

PERIOD_KINDS = ("normal", "instability", "crisis", "relaxation")


@dataclass(frozen=True)
class SegmentParams:
    width: int = 11
    band: float = 0.02
    instability_drop: float = 0.02
    crisis_drop: float = 0.05

    def __post_init__(self):
        if self.width < 1 or self.width % 2 == 0:
            raise ValueError(f"width must be a positive odd number, got {self.width}")
        if not 0 < self.instability_drop < self.crisis_drop:
            raise ValueError("need 0 < instability_drop < crisis_drop")
        if self.band < 0:
            raise ValueError("band must be >= 0")


@dataclass(frozen=True)
class Period:
    kind: str
    start: Union[date, int]
    end: Union[date, int]


@dataclass(frozen=True)
class SegmentReport:
    periods: tuple = ()
    lam_normal_band: Optional[tuple] = None
    lam_at_crisis_start: Optional[float] = None
    lam_minimum: Optional[float] = None
    lam_drop: Optional[float] = None
    lam_drop_pct: Optional[float] = None
    crisis_time_days: Optional[int] = None
    # positions in the source series, for callers without dates
    indices: dict = field(default_factory=dict, compare=False)

    def period(self, kind):
        return next((p for p in self.periods if p.kind == kind), None)

    def to_dict(self):
        def iso(v):
            return v.isoformat() if isinstance(v, date) else v

        band = self.lam_normal_band
        return {
            "periods": [
                {"kind": p.kind, "start": iso(p.start), "end": iso(p.end)} for p in self.periods
            ],
            "lam_normal_band": None if band is None else [band[0], band[1]],
            "lam_at_crisis_start": self.lam_at_crisis_start,
            "lam_minimum": self.lam_minimum,
            "lam_drop": self.lam_drop,
            "lam_drop_pct": self.lam_drop_pct,
            "crisis_time_days": self.crisis_time_days,
        }


def moving_average(x, width):
    """Centered moving average; the window shrinks at the ends."""
    x = np.asarray(x, dtype=np.float64)
    h = width // 2
    c = np.concatenate(([0.0], np.cumsum(x)))
    i = np.arange(x.size)
    lo = np.maximum(i - h, 0)
    hi = np.minimum(i + h + 1, x.size)
    return (c[hi] - c[lo]) / (hi - lo)


def _find_crisis(sm, delta, big_drop):
    """First decline episode whose smoothed drop reaches ``big_drop``.

    An episode runs from a running peak until the series rebounds more than
    ``delta`` above its lowest point. Returns ``(onset, minimum)`` positions
    or ``None``; the onset is the knee of the episode, i.e. the point lying
    furthest above the chord from the peak to the minimum.
    """
    n = sm.size
    p, i = 0, 1
    while i < n:
        if sm[i] >= sm[p]:
            p = i
            i += 1
            continue
        mn, j = i, i + 1
        while j < n and sm[j] <= sm[mn] + delta:
            if sm[j] < sm[mn]:
                mn = j
            j += 1
        if sm[p] - sm[mn] >= big_drop:
            k = np.arange(p, mn + 1)
            chord = sm[p] + (sm[mn] - sm[p]) * (k - p) / (mn - p)
            return p + int(np.argmax(sm[p : mn + 1] - chord)), mn
        p, i = mn, mn + 1
    return None


def _sustained_below(sm, level, run, stop):
    below = sm < level
    count = 0
    for i in range(min(stop, sm.size)):
        count = count + 1 if below[i] else 0
        if count >= run:
            return i - run + 1
    # a run may start before ``stop`` and finish after it
    for i in range(min(stop, sm.size), sm.size):
        if not below[i]:
            break
        count += 1
        if count >= run:
            return i - run + 1
    return None


def segment_lam(lam, params: Optional[SegmentParams] = None, dates=None, **overrides) -> SegmentReport:
    """Split a LAM series into normal / instability / crisis / relaxation.

    Parameters
    ----------
    lam : MeasureSeries or array_like
        LAM values; undefined (``None``/NaN) points are skipped.
    params : SegmentParams, optional
        Smoothing width, normal-band depth, instability and crisis drops.
        Keyword overrides (``width=...`` etc.) are applied on top.
    dates : sequence, optional
        Labels for an array input; a MeasureSeries brings its own.

    Raises
    ------
    NoCrisisDetected
        Carries the partial report (periods found, crisis fields ``None``).
    """
    if params is None:
        params = SegmentParams(**overrides)
    elif overrides:
        params = SegmentParams(**{**vars(params), **overrides})

    if isinstance(lam, MeasureSeries):
        idx = np.asarray(lam.indices, dtype=np.int64)
        raw = lam.to_array()
        labels = lam.dates
    else:
        raw = np.asarray(lam, dtype=np.float64)
        idx = np.arange(raw.size)
        labels = dates
    keep = np.isfinite(raw)
    positions = np.nonzero(keep)[0]
    raw, idx = raw[keep], idx[keep]
    if raw.size == 0:
        raise ValueError("LAM series has no defined values")

    def label(pos):
        src = positions[pos]
        return labels[src] if labels is not None else int(idx[pos])

    sm = moving_average(raw, params.width)
    top = float(sm.max())
    low = top - params.band

    crisis = _find_crisis(sm, params.instability_drop, params.crisis_drop)
    onset = crisis[0] if crisis else raw.size
    unstable = _sustained_below(sm, low - params.instability_drop, params.width, onset)
    if unstable is not None and unstable >= onset:
        unstable = None
    first_break = min(onset, raw.size if unstable is None else unstable)

    periods = []
    positions_out = {}
    normal_start = np.nonzero(sm[:first_break] >= low)[0]
    band = None
    if normal_start.size:
        a, b = int(normal_start[0]), first_break - 1
        periods.append(Period("normal", label(a), label(b)))
        band = (float(raw[a : b + 1].min()), float(raw[a : b + 1].max()))
        positions_out["normal"] = (int(idx[a]), int(idx[b]))
    if unstable is not None:
        b = onset - 1
        periods.append(Period("instability", label(unstable), label(b)))
        positions_out["instability"] = (int(idx[unstable]), int(idx[b]))

    if crisis is None:
        report = SegmentReport(tuple(periods), band, indices=positions_out)
        raise NoCrisisDetected(report)

    start, minimum = crisis
    periods.append(Period("crisis", label(start), label(minimum)))
    positions_out["crisis"] = (int(idx[start]), int(idx[minimum]))
    if minimum + 1 < raw.size:
        periods.append(Period("relaxation", label(minimum + 1), label(raw.size - 1)))
        positions_out["relaxation"] = (int(idx[minimum + 1]), int(idx[-1]))

    at_start = float(raw[start])
    lowest = float(raw[start : minimum + 1].min())
    drop = at_start - lowest
    return SegmentReport(
        tuple(periods),
        band,
        at_start,
        lowest,
        drop,
        drop / at_start if at_start else None,
        int(idx[minimum] - idx[start]),
        positions_out,
    )
