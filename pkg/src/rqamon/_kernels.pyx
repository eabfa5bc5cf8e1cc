# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled line and threshold kernels.

Same surface as ``rqamon._pykernels``; see that module for the data layout.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    """
    static inline int rqa_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int rqa_ctz64(unsigned long long x) nogil

WORD_BITS = 64


def n_words(Py_ssize_t n):
    return (n + 63) // 64


def build_words(points, double epsilon, bint euclidean):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0], m = p.shape[1]
    cdef Py_ssize_t nw = (n + 63) // 64
    out = np.zeros((n, nw), dtype="<u8")
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t i, j, w, b, c
    cdef double acc, d
    cdef uint64_t word
    cdef double xi
    if m == 1 and not euclidean:
        with nogil:
            # scalar states under the maximum norm
            for i in range(n):
                xi = p[i, 0]
                for w in range(nw):
                    word = 0
                    for b in range(min(64, n - w * 64)):
                        word |= (<uint64_t>(fabs(xi - p[w * 64 + b, 0]) <= epsilon)) << b
                    o[i, w] = word
        return out
    with nogil:
        for i in range(n):
            for w in range(nw):
                word = 0
                for b in range(64):
                    j = w * 64 + b
                    if j >= n:
                        break
                    acc = 0.0
                    if euclidean:
                        for c in range(m):
                            d = fabs(p[i, c] - p[j, c])
                            acc = acc + d * d
                        acc = sqrt(acc)
                    else:
                        for c in range(m):
                            d = fabs(p[i, c] - p[j, c])
                            if d > acc:
                                acc = d
                    if acc <= epsilon:
                        word |= (<uint64_t>1) << b
                o[i, w] = word
    return out


cdef inline int _bit(const uint64_t[:, ::1] words, Py_ssize_t i, Py_ssize_t j) nogil:
    return <int>((words[i, j >> 6] >> (j & 63)) & 1)


def diagonal_lines(words, Py_ssize_t r0, Py_ssize_t n, Py_ssize_t theiler):
    cdef const uint64_t[:, ::1] wv = np.ascontiguousarray(words, dtype="<u8")
    hist_arr = np.zeros(n + 1, dtype=np.int64)
    off_arr = np.zeros(max(n, 0), dtype=np.int64)
    if n == 0:
        return hist_arr, off_arr
    cdef int64_t[::1] hist = hist_arr
    cdef int64_t[::1] offsets = off_arr
    cdef Py_ssize_t d, i, run, side
    cdef int64_t cnt
    cdef int bit
    cdef bint record
    with nogil:
        for d in range(n):
            record = d >= theiler
            cnt = 0
            for side in range(2 if d > 0 else 1):
                run = 0
                for i in range(n - d):
                    if side == 0:
                        bit = _bit(wv, r0 + i, r0 + i + d)
                    else:
                        bit = _bit(wv, r0 + i + d, r0 + i)
                    if bit:
                        run += 1
                        cnt += 1
                    elif run:
                        if record:
                            hist[run] += 1
                        run = 0
                if run and record:
                    hist[run] += 1
            offsets[d] = cnt
    return hist_arr, off_arr


def vertical_lines(col_words, Py_ssize_t r0, Py_ssize_t n):
    cdef const uint64_t[:, ::1] cw = np.ascontiguousarray(col_words, dtype="<u8")
    hist_arr = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        return hist_arr, 0, None, None
    cdef int64_t[::1] hist = hist_arr
    cdef Py_ssize_t row_words = cw.shape[1]
    cdef Py_ssize_t nw = (n + 63) // 64
    buf_arr = np.zeros(nw, dtype="<u8")
    cdef uint64_t[::1] buf = buf_arr
    cdef Py_ssize_t j, k, q, s, bitpos, base, z
    cdef Py_ssize_t run_start = 0, first_start, last_start, last_set
    cdef int64_t count, runs, total = 0
    cdef uint64_t x, y
    cdef bint in_run
    cdef double t1_sum = 0.0, t2_sum = 0.0
    cdef Py_ssize_t t1_cols = 0, t2_cols = 0
    with nogil:
        for j in range(n):
            # gather bits [r0, r0 + n) of column j into buf, aligned at bit 0
            for k in range(nw):
                q = (r0 + 64 * k) >> 6
                s = (r0 + 64 * k) & 63
                x = cw[r0 + j, q] >> s
                if s and q + 1 < row_words:
                    x |= cw[r0 + j, q + 1] << (64 - s)
                buf[k] = x
            if n & 63:
                buf[nw - 1] &= ((<uint64_t>1) << (n & 63)) - 1

            in_run = False
            count = 0
            runs = 0
            first_start = -1
            last_start = -1
            last_set = -1
            for k in range(nw):
                x = buf[k]
                base = 64 * k
                bitpos = 0
                while bitpos < 64:
                    if in_run:
                        y = (~x) >> bitpos
                        if y == 0:
                            break
                        z = rqa_ctz64(y)
                        bitpos += z
                        hist[base + bitpos - run_start] += 1
                        count += base + bitpos - run_start
                        last_set = base + bitpos - 1
                        in_run = False
                    else:
                        y = x >> bitpos
                        if y == 0:
                            break
                        z = rqa_ctz64(y)
                        bitpos += z
                        run_start = base + bitpos
                        if first_start < 0:
                            first_start = run_start
                        last_start = run_start
                        runs += 1
                        in_run = True
            if in_run:
                hist[n - run_start] += 1
                count += n - run_start
                last_set = n - 1
            total += count
            if count >= 2:
                t1_sum = t1_sum + (<double>(last_set - first_start)) / (<double>(count - 1))
                t1_cols += 1
            if runs >= 2:
                t2_sum = t2_sum + (<double>(last_start - first_start)) / (<double>(runs - 1))
                t2_cols += 1
    t1 = t1_sum / t1_cols if t1_cols else None
    t2 = t2_sum / t2_cols if t2_cols else None
    return hist_arr, int(total), t1, t2
