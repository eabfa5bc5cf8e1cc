"""CSV ingestion, measure/report serialization and raster/chart export."""

from __future__ import annotations

import csv
import json
import logging
import math
import re
from datetime import date
from pathlib import Path
from typing import Iterable, Mapping, Union

import numpy as np

from .embedding import TimeSeries
from .errors import MissingColumn, ParseError
from .recurrence import RecurrencePlot
from .segmentation import SegmentReport
from .windowed import MeasureSeries

logger = logging.getLogger(__name__)

DATE_COLUMN = "date"


def load_csv(path, column: str = "close", date_column: str = DATE_COLUMN) -> TimeSeries:
    """Read one value column of a dated CSV file.

    Rows stay in file order; dates must be ISO-8601 and strictly increasing.
    Errors name the 1-based line number (the header is line 1).
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(1, "empty file, header row expected") from None
        for needed in (date_column, column):
            if needed not in header:
                raise MissingColumn(needed, header)
        di, vi = header.index(date_column), header.index(column)
        dates, values = [], []
        for cells in reader:
            line = reader.line_num
            if not any(c.strip() for c in cells):
                continue
            if len(cells) != len(header):
                raise ParseError(line, f"expected {len(header)} fields, got {len(cells)}")
            raw_date, raw_value = cells[di].strip(), cells[vi].strip()
            try:
                d = date.fromisoformat(raw_date)
            except ValueError:
                raise ParseError(line, f"bad date {raw_date!r}") from None
            if not raw_value:
                raise ParseError(line, f"missing value in column {column!r}")
            try:
                v = float(raw_value)
            except ValueError:
                raise ParseError(line, f"bad number {raw_value!r}") from None
            if not math.isfinite(v):
                raise ParseError(line, f"non-finite value {raw_value!r}")
            if dates and d <= dates[-1]:
                raise ParseError(line, f"date {d} does not follow {dates[-1]}")
            dates.append(d)
            values.append(v)
    if len(values) < 2:
        raise ParseError(reader.line_num, f"need at least 2 rows, got {len(values)}")
    logger.info("loaded %s: %d rows, %s .. %s", path, len(values), dates[0], dates[-1])
    return TimeSeries(np.array(values), tuple(dates), name=column)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _as_list(series):
    if isinstance(series, MeasureSeries):
        return [series]
    if isinstance(series, Mapping):
        return list(series.values())
    return list(series)


def write_measures_csv(series: Union[MeasureSeries, Mapping, Iterable], path) -> None:
    """Write measure series sharing one index grid as ``date,index,<measures>``.

    Undefined values become empty fields; floats are written at full
    round-trip precision.
    """
    cols = _as_list(series)
    if not cols:
        raise ValueError("no measure series to write")
    grid = cols[0].indices
    for s in cols[1:]:
        if s.indices != grid:
            raise ValueError(f"series {s.measure!r} is on a different index grid")
    dates = next((s.dates for s in cols if s.dates is not None), None)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "index"] + [s.measure for s in cols])
        for row, idx in enumerate(grid):
            d = dates[row].isoformat() if dates is not None else ""
            w.writerow([d, idx] + [_fmt(s.values[row]) for s in cols])


def read_measures_csv(path) -> dict:
    """Inverse of :func:`write_measures_csv`; returns name -> MeasureSeries."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, "empty file, header row expected") from None
        if header[:2] != ["date", "index"]:
            raise ParseError(1, "measures file must start with 'date,index'")
        names = header[2:]
        dates, indices, columns = [], [], [[] for _ in names]
        for cells in reader:
            line = reader.line_num
            if len(cells) != len(header):
                raise ParseError(line, f"expected {len(header)} fields, got {len(cells)}")
            try:
                dates.append(date.fromisoformat(cells[0]) if cells[0] else None)
                indices.append(int(cells[1]))
                for col, cell in zip(columns, cells[2:]):
                    col.append(float(cell) if cell else None)
            except ValueError as exc:
                raise ParseError(line, str(exc)) from None
    if any(d is None for d in dates):
        dates = None
    else:
        dates = tuple(dates)
    return {
        name: MeasureSeries(name, tuple(indices), tuple(col), dates)
        for name, col in zip(names, columns)
    }


def write_segment_json(report: SegmentReport, path) -> None:
    # repr-precision floats (json's default) round-trip exactly
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def export_rp_raster(rp: RecurrencePlot, path) -> None:
    """Binary PGM (P5); recurrences black, state 0 at the bottom-left corner."""
    if rp.n == 0:
        raise ValueError("empty recurrence plot")
    dense = rp.dense()
    pixels = np.where(dense[::-1], 0, 255).astype(np.uint8)
    with Path(path).open("wb") as fh:
        fh.write(f"P5\n{rp.n} {rp.n}\n255\n".encode("ascii"))
        fh.write(pixels.tobytes())


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    m = re.match(rb"P5\s+(\d+)\s+(\d+)\s+(\d+)\s", data)
    if m is None:
        raise ValueError("not a binary PGM file")
    w, h = int(m.group(1)), int(m.group(2))
    return np.frombuffer(data[m.end() : m.end() + w * h], dtype=np.uint8).reshape(h, w)


_COLORS = ("#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50")


def _polyline(xs, ys, lo, hi, top, height, color):
    span = (hi - lo) or 1.0
    pts = " ".join(
        f"{x:.2f},{top + height - (y - lo) / span * height:.2f}" for x, y in zip(xs, ys)
    )
    return f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{pts}"/>'


def export_chart(series: TimeSeries, measures, path, width: int = 960, height: int = 600) -> None:
    """Two-panel SVG: prices on top, measures below, sharing a date axis.

    One polyline per curve; undefined measure values are skipped.
    """
    cols = _as_list(measures)
    if len(series) == 0 or not cols:
        raise ValueError("chart needs a price series and at least one measure")
    margin_l, margin_r, gap = 70, 20, 40
    panel_h = (height - 3 * gap) / 2
    plot_w = width - margin_l - margin_r
    n = len(series)

    def x_of(i):
        return margin_l + (i / (n - 1) if n > 1 else 0.5) * plot_w

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    tops = (gap, 2 * gap + panel_h)
    for top in tops:
        out.append(
            f'<rect x="{margin_l}" y="{top:.2f}" width="{plot_w}" height="{panel_h:.2f}" '
            'fill="none" stroke="#999999"/>'
        )

    prices = series.values
    lo, hi = float(prices.min()), float(prices.max())
    out.append(_polyline([x_of(i) for i in range(n)], prices, lo, hi, tops[0], panel_h, "#000000"))
    out.append(f'<text x="{margin_l}" y="{gap - 8}" font-size="12">{series.name}</text>')

    defined = [v for s in cols for v in s.values if v is not None]
    mlo, mhi = (min(defined), max(defined)) if defined else (0.0, 1.0)
    for k, s in enumerate(cols):
        pts = [(x_of(i), v) for i, v in zip(s.indices, s.values) if v is not None and i < n]
        out.append(
            _polyline([p[0] for p in pts], [p[1] for p in pts], mlo, mhi, tops[1], panel_h,
                      _COLORS[k % len(_COLORS)])
        )
    labels = ", ".join(s.measure.upper() for s in cols)
    out.append(f'<text x="{margin_l}" y="{tops[1] - 8:.2f}" font-size="12">{labels}</text>')
    for top, (a, b) in zip(tops, ((lo, hi), (mlo, mhi))):
        out.append(f'<text x="4" y="{top + 12:.2f}" font-size="10">{b:.4g}</text>')
        out.append(f'<text x="4" y="{top + panel_h:.2f}" font-size="10">{a:.4g}</text>')

    ticks = sorted({round(i * (n - 1) / 4) for i in range(5)})
    for i in ticks:
        label = series.dates[i].isoformat() if series.dates is not None else str(i)
        out.append(
            f'<text x="{x_of(i):.2f}" y="{height - 12}" font-size="10" '
            f'text-anchor="middle">{label}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8", newline="\n")

