"""Line extraction and the RQA measure suite."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

import numpy as np

from ._backend import kernels
from .embedding import EmbeddingConfig
from .recurrence import RecurrencePlot

MEASURE_NAMES = ("rr", "det", "l", "lmax", "div", "entr", "trend", "lam", "tt", "t1", "t2")
DIAGONAL_MEASURES = frozenset({"det", "l", "lmax", "div", "entr", "trend"})
# column name -> MeasureSet attribute
_FIELDS = {"l": "l_mean", "lmax": "l_max"}


@dataclass(frozen=True)
class LineHistogram:
    """Number of lines of each exact length.

    For diagonal histograms ``total_recurrence_points`` counts set bits
    outside the Theiler band; for vertical ones it counts every set bit.
    """

    kind: str
    counts: dict
    total_recurrence_points: int

    @classmethod
    def from_array(cls, kind, hist, total):
        counts = {int(l): int(c) for l, c in enumerate(hist) if c and l > 0}
        return cls(kind, counts, int(total))

    def points_in_lines(self, min_length=1):
        return sum(l * c for l, c in self.counts.items() if l >= min_length)

    def n_lines(self, min_length=1):
        return sum(c for l, c in self.counts.items() if l >= min_length)


@dataclass(frozen=True)
class MeasureSet:
    """RQA measures of one plot or window; undefined values are ``None``."""

    rr: Optional[float] = None
    det: Optional[float] = None
    l_mean: Optional[float] = None
    l_max: Optional[int] = None
    div: Optional[float] = None
    entr: Optional[float] = None
    trend: Optional[float] = None
    lam: Optional[float] = None
    tt: Optional[float] = None
    t1: Optional[float] = None
    t2: Optional[float] = None
    window_end: Optional[int] = None

    def get(self, name):
        """Value by output-column name (``l``, ``lmax``, ``lam``, ...)."""
        return getattr(self, _FIELDS.get(name, name))

    def as_dict(self):
        return asdict(self)


def extract_diagonals(rp: RecurrencePlot, theiler: int = 1) -> LineHistogram:
    """Diagonal lines in both triangles, skipping offsets ``|i - j| < theiler``."""
    if theiler < 0:
        raise ValueError("theiler must be >= 0")
    hist, offsets = kernels.diagonal_lines(rp.words, 0, rp.n, theiler)
    return LineHistogram.from_array("diagonal", hist, offsets[theiler:].sum())


def extract_verticals(rp: RecurrencePlot) -> LineHistogram:
    hist, total, _, _ = kernels.vertical_lines(rp.col_words, 0, rp.n)
    return LineHistogram.from_array("vertical", hist, total)


def _ratio(num, den):
    return int(num) / int(den) if den else 0.0


def _line_stats(hist, min_len):
    lengths = np.arange(hist.size)
    sel = lengths >= min_len
    points = int((lengths[sel] * hist[sel]).sum())
    lines = int(hist[sel].sum())
    return points, lines


def _entropy(hist, min_len):
    counts = [int(c) for c in hist[min_len:] if c]
    if len(counts) <= 1:
        return 0.0
    total = sum(counts)
    return -sum((c / total) * math.log(c / total) for c in counts)


def _trend(offsets, n, theiler):
    # offsets in the outer 10% (10*d >= 9*n) hold too few cells
    d = np.arange(theiler, n)
    d = d[10 * d < 9 * n]
    if d.size < 2:
        return None
    cells = np.where(d == 0, n, 2 * (n - d))
    rr_d = offsets[d] / cells
    dc = d - d.mean()
    return float((dc * (rr_d - rr_d.mean())).sum() / (dc * dc).sum())


def window_measures(
    rp: RecurrencePlot,
    start: int,
    size: int,
    cfg: EmbeddingConfig,
    names: Optional[Iterable[str]] = None,
) -> MeasureSet:
    """Measures of the ``size x size`` block of ``rp`` starting at ``start``
    on the line of identity, labelled with its source end index."""
    wanted = set(MEASURE_NAMES if names is None else names)
    unknown = wanted - set(MEASURE_NAMES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")
    n = size
    values = {"window_end": rp.origin + start + size - 1}

    vhist, total, t1, t2 = kernels.vertical_lines(rp.col_words, start, n)
    values["rr"] = _ratio(total, n * n)
    vpoints, vlines = _line_stats(vhist, cfg.v_min)
    values["lam"] = _ratio(vpoints, total)
    values["tt"] = vpoints / vlines if vlines else None
    values["t1"] = t1
    values["t2"] = t2

    if wanted & DIAGONAL_MEASURES:
        dhist, offsets = kernels.diagonal_lines(rp.words, start, n, cfg.theiler)
        dpoints, dlines = _line_stats(dhist, cfg.l_min)
        present = np.nonzero(dhist)[0]
        l_max = int(present[-1]) if present.size else 0
        values["det"] = _ratio(dpoints, offsets[cfg.theiler :].sum())
        values["l_mean"] = dpoints / dlines if dlines else None
        values["l_max"] = l_max
        values["div"] = 1.0 / l_max if l_max else None
        values["entr"] = _entropy(dhist, cfg.l_min)
        values["trend"] = _trend(offsets, n, cfg.theiler)

    keep = {_FIELDS.get(k, k) for k in wanted} | {"window_end"}
    return MeasureSet(**{k: v for k, v in values.items() if k in keep})


def compute_measures(
    rp: RecurrencePlot,
    cfg: Optional[EmbeddingConfig] = None,
    names: Optional[Iterable[str]] = None,
) -> MeasureSet:
    """All RQA measures of a whole recurrence plot.

    Parameters
    ----------
    rp : RecurrencePlot
    cfg : EmbeddingConfig, optional
        Supplies ``l_min``, ``v_min`` and ``theiler``; defaults to the plot's
        own configuration.
    names : iterable of str, optional
        Restrict the computation to these measures (others are ``None``).
        Diagonal lines are only extracted when a diagonal measure is asked for.

    Notes
    -----
    RR, LAM, TT, T1 and T2 use the full matrix including the line of
    identity. DET, L, L_max, DIV, ENTR and TREND ignore diagonals closer
    than ``theiler`` to it. Zero denominators give 0 for the fraction
    measures and ``None`` for the averages and DIV.
    """
    if rp.n == 0:
        raise ValueError("empty recurrence plot")
    return window_measures(rp, 0, rp.n, cfg or rp.config, names)
