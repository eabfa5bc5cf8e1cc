"""Exception hierarchy shared by the library and the CLI."""


class RQAError(Exception):
    """Base class for all rqamon errors."""


class DegenerateSeries(RQAError, ValueError):
    """Raised when a series has zero variance."""


class SeriesTooShort(RQAError, ValueError):
    """Raised when a series cannot hold the requested embedding or window."""


class DimensionMismatch(RQAError, ValueError):
    pass


class WindowTooLarge(RQAError, ValueError):
    pass


class MissingColumn(RQAError, KeyError):
    def __init__(self, column, available=()):
        self.column = column
        self.available = tuple(available)
        super().__init__(column)

    def __str__(self):
        cols = ", ".join(self.available) or "none"
        return f"column {self.column!r} not found (available: {cols})"


class ParseError(RQAError, ValueError):
    """Malformed input row; ``row`` is the 1-based line number in the file."""

    def __init__(self, row, reason):
        self.row = row
        self.reason = reason
        super().__init__(f"row {row}: {reason}")


class NoCrisisDetected(RQAError):
    """No decline deep enough to count as a crisis.

    The partial report (periods found so far, crisis fields ``None``) is
    available as ``report``.
    """

    def __init__(self, report):
        self.report = report
        super().__init__("no crisis detected in LAM series")
