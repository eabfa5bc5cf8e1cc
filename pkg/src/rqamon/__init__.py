"""Recurrence quantification analysis and rolling laminarity monitoring."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .embedding import (
    EmbeddedSeries,
    EmbeddingConfig,
    TimeSeries,
    average_mutual_information,
    delay_embed,
    false_nearest_neighbors,
    first_below,
    first_minimum,
    normalize,
)
from .errors import (
    DegenerateSeries,
    DimensionMismatch,
    MissingColumn,
    NoCrisisDetected,
    ParseError,
    RQAError,
    SeriesTooShort,
    WindowTooLarge,
)
from .measures import (
    MEASURE_NAMES,
    LineHistogram,
    MeasureSet,
    compute_measures,
    extract_diagonals,
    extract_verticals,
)
from .monitor import MonitorConfig, monitor_point, monitor_series
from .recurrence import RecurrencePlot, build_rp, state_distance
from .segmentation import Period, SegmentParams, SegmentReport, segment_lam
from .windowed import MeasureSeries, windowed_measures

__all__ = [
    "BACKEND",
    "DegenerateSeries",
    "DimensionMismatch",
    "EmbeddedSeries",
    "EmbeddingConfig",
    "LineHistogram",
    "MEASURE_NAMES",
    "MeasureSeries",
    "MeasureSet",
    "MissingColumn",
    "MonitorConfig",
    "NoCrisisDetected",
    "ParseError",
    "Period",
    "RQAError",
    "RecurrencePlot",
    "SegmentParams",
    "SegmentReport",
    "SeriesTooShort",
    "TimeSeries",
    "WindowTooLarge",
    "average_mutual_information",
    "build_rp",
    "compute_measures",
    "delay_embed",
    "extract_diagonals",
    "extract_verticals",
    "false_nearest_neighbors",
    "first_below",
    "first_minimum",
    "monitor_point",
    "monitor_series",
    "normalize",
    "segment_lam",
    "state_distance",
    "windowed_measures",
]
