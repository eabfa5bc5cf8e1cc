"""Pure-numpy line and threshold kernels.

Fallback for the compiled ``_kernels`` extension; every function has the same
signature and return layout. Bit-packed rows are little-endian ``uint64``
words: column ``j`` of row ``i`` is bit ``j % 64`` of ``words[i, j // 64]``.
"""

import numpy as np

WORD_BITS = 64
_BLOCK_ROWS = 256


def n_words(n):
    return (n + WORD_BITS - 1) // WORD_BITS


def pack_rows(mask):
    """Pack a boolean ``(rows, n)`` matrix into little-endian uint64 words."""
    mask = np.asarray(mask, dtype=bool)
    rows, n = mask.shape
    nbytes = n_words(n) * 8
    packed = np.zeros((rows, nbytes), dtype=np.uint8)
    if n:
        b = np.packbits(mask, axis=1, bitorder="little")
        packed[:, : b.shape[1]] = b
    return packed.view("<u8")


def unpack_window(words, r0, n):
    """Dense uint8 copy of rows/columns ``[r0, r0 + n)``."""
    w0 = r0 // WORD_BITS
    w1 = n_words(r0 + n)
    chunk = np.ascontiguousarray(words[r0 : r0 + n, w0:w1])
    bits = np.unpackbits(chunk.view(np.uint8), axis=1, bitorder="little")
    off = r0 - w0 * WORD_BITS
    return bits[:, off : off + n]


def build_words(points, epsilon, euclidean):
    """Thresholded pairwise distances of ``points`` (n, m), packed by row."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    n, m = points.shape
    out = np.zeros((n, n_words(n)), dtype="<u8")
    for a in range(0, n, _BLOCK_ROWS):
        b = min(a + _BLOCK_ROWS, n)
        dist = np.zeros((b - a, n))
        for c in range(m):
            diff = np.abs(points[a:b, c, None] - points[None, :, c])
            if euclidean:
                dist += diff * diff
            else:
                np.maximum(dist, diff, out=dist)
        if euclidean:
            np.sqrt(dist, out=dist)
        out[a:b] = pack_rows(dist <= epsilon)
    return out


def _runs(rows):
    """Start and length of every run of ones along axis 1 of a 2-D array."""
    padded = np.zeros((rows.shape[0], rows.shape[1] + 2), dtype=np.int8)
    padded[:, 1:-1] = rows
    edges = np.diff(padded, axis=1)
    r_start, c_start = np.nonzero(edges == 1)
    _, c_stop = np.nonzero(edges == -1)
    return r_start, c_start, c_stop - c_start


def diagonal_lines(words, r0, n, theiler):
    """Diagonal run-length histogram of the window and per-offset bit counts.

    Only offsets ``|i - j| >= theiler`` enter the histogram. ``offsets[d]``
    counts set bits on diagonals ``+d`` and ``-d`` (the LOI once for d=0),
    regardless of the Theiler window.
    """
    hist = np.zeros(n + 1, dtype=np.int64)
    offsets = np.zeros(n, dtype=np.int64)
    if n == 0:
        return hist, offsets
    dense = unpack_window(words, r0, n)
    for d in range(n):
        upper = np.diagonal(dense, d)
        seqs = [upper] if d == 0 else [upper, np.diagonal(dense, -d)]
        offsets[d] = sum(int(s.sum()) for s in seqs)
        if d < theiler or offsets[d] == 0:
            continue
        for s in seqs:
            _, _, lengths = _runs(s[None, :])
            hist += np.bincount(lengths, minlength=n + 1)
    return hist, offsets


def vertical_lines(col_words, r0, n):
    """Vertical run-length histogram plus recurrence-time statistics.

    ``col_words`` holds columns packed as rows (identical to the row words of
    a symmetric plot). Returns ``(hist, total, t1, t2)`` where ``t1`` / ``t2``
    are per-column mean gaps between set bits / run starts, averaged over
    eligible columns, or ``None`` if no column qualifies.
    """
    hist = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        return hist, 0, None, None
    cols = unpack_window(col_words, r0, n)
    col_idx, starts, lengths = _runs(cols)
    hist += np.bincount(lengths, minlength=n + 1)
    total = int(lengths.sum())

    t1_sum, t1_cols = 0.0, 0
    t2_sum, t2_cols = 0.0, 0
    counts = cols.sum(axis=1, dtype=np.int64)
    first = np.argmax(cols, axis=1)
    last = n - 1 - np.argmax(cols[:, ::-1], axis=1)
    n_runs = np.bincount(col_idx, minlength=n)
    # run starts are sorted by column, then by row
    run_offsets = np.concatenate(([0], np.cumsum(n_runs)))
    for j in range(n):
        c = int(counts[j])
        if c >= 2:
            t1_sum += int(last[j] - first[j]) / (c - 1)
            t1_cols += 1
        k = int(n_runs[j])
        if k >= 2:
            s0 = int(starts[run_offsets[j]])
            s1 = int(starts[run_offsets[j + 1] - 1])
            t2_sum += (s1 - s0) / (k - 1)
            t2_cols += 1
    t1 = t1_sum / t1_cols if t1_cols else None
    t2 = t2_sum / t2_cols if t2_cols else None
    return hist, total, t1, t2
