"""Binary recurrence matrices stored as bit-packed rows."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels, n_words, pack_rows, unpack_window
from .embedding import EmbeddedSeries, EmbeddingConfig
from .errors import DimensionMismatch


@dataclass(frozen=True, eq=False)
class RecurrencePlot:
    """An N x N binary recurrence matrix.

    ``words[i]`` packs row ``i`` little-endian into uint64 words (column
    ``j`` is bit ``j % 64`` of word ``j // 64``). ``col_words`` packs the
    columns the same way; for the symmetric plots produced by
    :func:`build_rp` it is the same array. ``origin`` is the source-series
    index at which state 0 becomes known.
    """

    n: int
    words: np.ndarray
    config: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    source_range: tuple[int, int] = (0, 0)
    origin: int = 0
    col_words: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.words.shape != (self.n, n_words(self.n)):
            raise ValueError(f"words shape {self.words.shape} does not fit n={self.n}")
        self.words.setflags(write=False)
        if self.col_words is None:
            dense = self.dense()
            cols = self.words if np.array_equal(dense, dense.T) else pack_rows(dense.T)
            object.__setattr__(self, "col_words", cols)

    @classmethod
    def from_matrix(cls, matrix, config=None, origin=0):
        m = np.asarray(matrix).astype(bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("recurrence matrix must be square")
        n = m.shape[0]
        return cls(
            n,
            pack_rows(m),
            config or EmbeddingConfig(),
            (origin, origin + n),
            origin,
            pack_rows(m.T),
        )

    def dense(self, start=0, size=None):
        """Unpacked uint8 copy of the square block at ``[start, start+size)``."""
        size = self.n - start if size is None else size
        return np.ascontiguousarray(unpack_window(self.words, start, size))

    @property
    def symmetric(self):
        return self.col_words is self.words or np.array_equal(self.col_words, self.words)

    @property
    def recurrence_count(self):
        return int(np.unpackbits(self.words.view(np.uint8)).sum())

    def __getitem__(self, ij):
        i, j = ij
        return bool((int(self.words[i, j // 64]) >> (j % 64)) & 1)


def state_distance(a, b, norm="maximum"):
    """Distance between two state vectors under the maximum or euclidean norm."""
    a = np.atleast_1d(np.asarray(a, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        raise DimensionMismatch(f"state shapes {a.shape} and {b.shape} differ")
    if norm == "maximum":
        return max(abs(float(x) - float(y)) for x, y in zip(a, b))
    if norm == "euclidean":
        acc = 0.0
        for x, y in zip(a, b):
            d = abs(float(x) - float(y))
            acc = acc + d * d
        return math.sqrt(acc)
    raise ValueError(f"unknown norm {norm!r}")


def build_rp(
    embedded: EmbeddedSeries,
    epsilon: float = 0.1,
    norm: str = "maximum",
    config: Optional[EmbeddingConfig] = None,
) -> RecurrencePlot:
    """Threshold all pairwise state distances: bit (i, j) is set iff the
    distance is ``<= epsilon``.

    ``config`` is recorded as provenance; when omitted one is made from
    the embedding, ``epsilon`` and ``norm``.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if norm not in ("maximum", "euclidean"):
        raise ValueError(f"unknown norm {norm!r}")
    n = len(embedded)
    if n == 0:
        raise ValueError("cannot build a recurrence plot of an empty series")
    if config is None:
        config = EmbeddingConfig(m=embedded.m, tau=embedded.tau, epsilon=epsilon, norm=norm)
    words = kernels.build_words(embedded.points, float(epsilon), norm == "euclidean")
    return RecurrencePlot(
        n,
        words,
        config,
        embedded.source_range,
        embedded.origin,
        col_words=words,
    )
