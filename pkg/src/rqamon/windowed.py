"""Sliding-window RQA along the line of identity of one recurrence plot."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .embedding import EmbeddingConfig
from .errors import WindowTooLarge
from .measures import MEASURE_NAMES, MeasureSet, window_measures
from .recurrence import RecurrencePlot

DEFAULT_WS = 250


@dataclass(frozen=True)
class MeasureSeries:
    """One measure sampled at increasing source indices.

    ``values`` holds ``None`` where the measure is undefined. ``dates`` is
    parallel to ``indices`` when the source series carried dates.
    """

    measure: str
    indices: tuple
    values: tuple
    dates: Optional[tuple] = None
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ValueError("indices and values differ in length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")
        if self.dates is not None and len(self.dates) != len(self.indices):
            raise ValueError("dates and indices differ in length")

    def __len__(self):
        return len(self.indices)

    def to_array(self):
        """Values as float64 with NaN for undefined points."""
        return np.array([np.nan if v is None else v for v in self.values], dtype=np.float64)

    def points(self):
        return list(zip(self.indices, self.values))


def series_from_sets(
    sets: Sequence[Optional[MeasureSet]],
    indices: Sequence[int],
    names: Iterable[str],
    dates=None,
    config=None,
) -> dict:
    """Transpose per-window measure sets into one MeasureSeries per measure."""
    out = {}
    idx = tuple(int(i) for i in indices)
    for name in names:
        values = tuple(None if s is None else s.get(name) for s in sets)
        out[name] = MeasureSeries(name, idx, values, dates, dict(config or {}))
    return out


def dates_for(indices, dates):
    if dates is None:
        return None
    return tuple(dates[i] for i in indices)


def windowed_measures(
    rp: RecurrencePlot,
    cfg: Optional[EmbeddingConfig] = None,
    ws: int = DEFAULT_WS,
    step: int = 1,
    measures: Optional[Iterable[str]] = None,
    dates: Optional[Sequence] = None,
) -> dict:
    """Slide a ``ws x ws`` window along the line of identity.

    Each window is measured as a standalone submatrix and its value is
    assigned to the source index of the window's last state, so no value
    depends on later data. ``dates`` (indexed by source index) are attached
    to the output when given.

    Returns
    -------
    dict
        Measure name -> :class:`MeasureSeries`, in ``MEASURE_NAMES`` order.
    """
    cfg = cfg or rp.config
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if ws < 1:
        raise ValueError(f"ws must be >= 1, got {ws}")
    if ws > rp.n:
        raise WindowTooLarge(f"window size {ws} exceeds plot size {rp.n}")
    names = [n for n in MEASURE_NAMES if measures is None or n in set(measures)]
    if measures is not None and len(names) != len(set(measures)):
        raise ValueError(f"unknown measures: {sorted(set(measures) - set(names))}")

    starts = range(0, rp.n - ws + 1, step)
    sets = [window_measures(rp, k, ws, cfg, names) for k in starts]
    indices = [s.window_end for s in sets]
    echo = {"ws": ws, "step": step, **vars(cfg)}
    return series_from_sets(sets, indices, names, dates_for(indices, dates), echo)
