"""Compiled inner loops for the DP engines, the window scan, and channel sampling."""
from __future__ import annotations

import numpy as np
from numba import njit

# Sentinel for out-of-band cells. Room for +1 accumulation without overflow.
INF = np.int64(1) << np.int64(60)


@njit(cache=True, nogil=True)
def ed_cost(a, b):
    """Unit-cost edit distance, two rolling rows, no traceback."""
    n1 = a.shape[0]
    n2 = b.shape[0]
    prev = np.empty(n2 + 1, np.int64)
    curr = np.empty(n2 + 1, np.int64)
    for j in range(n2 + 1):
        prev[j] = j
    for i in range(1, n1 + 1):
        curr[0] = i
        ai = a[i - 1]
        for j in range(1, n2 + 1):
            c = prev[j - 1]
            if ai != b[j - 1]:
                c += 1
            v = prev[j] + 1
            if v < c:
                c = v
            h = curr[j - 1] + 1
            if h < c:
                c = h
            curr[j] = c
        tmp = prev
        prev = curr
        curr = tmp
    return prev[n2]


@njit(cache=True, nogil=True)
def ed_full_table(a, b):
    """Full DP table, int32. Memory is (n1+1)*(n2+1)*4 bytes."""
    n1 = a.shape[0]
    n2 = b.shape[0]
    table = np.empty((n1 + 1, n2 + 1), np.int32)
    for j in range(n2 + 1):
        table[0, j] = j
    for i in range(1, n1 + 1):
        table[i, 0] = i
        ai = a[i - 1]
        for j in range(1, n2 + 1):
            c = table[i - 1, j - 1]
            if ai != b[j - 1]:
                c += 1
            v = table[i - 1, j] + 1
            if v < c:
                c = v
            h = table[i, j - 1] + 1
            if h < c:
                c = h
            table[i, j] = c
    return table


@njit(cache=True, nogil=True)
def full_traceback(table, a, b):
    """Walk the full table back from the corner.

    Tie order: diagonal, then vertical, then horizontal. Returns (verts, start);
    the path is verts[start:].
    """
    n1 = a.shape[0]
    n2 = b.shape[0]
    verts = np.empty((n1 + n2 + 1, 2), np.int64)
    pos = n1 + n2
    verts[pos, 0] = n1
    verts[pos, 1] = n2
    i = n1
    j = n2
    while i > 0 or j > 0:
        here = table[i, j]
        if i > 0 and j > 0:
            step = 0 if a[i - 1] == b[j - 1] else 1
            if here == table[i - 1, j - 1] + step:
                i -= 1
                j -= 1
            elif here == table[i - 1, j] + 1:
                i -= 1
            else:
                j -= 1
        elif i > 0:
            i -= 1
        else:
            j -= 1
        pos -= 1
        verts[pos, 0] = i
        verts[pos, 1] = j
    return verts, pos


@njit(cache=True, nogil=True)
def banded_fill(a, b, lo, hi, offsets, tags):
    """Banded DP over per-row column intervals [lo[i], hi[i]].

    Out-of-band dependencies read as INF. Fills 2-bit-valued predecessor tags
    (0 origin/unreachable, 1 diagonal, 2 vertical, 3 horizontal) into flat band
    storage and returns the corner cost (>= INF when unreachable).
    """
    n1 = a.shape[0]
    width_max = 0
    for i in range(n1 + 1):
        w = hi[i] - lo[i] + 1
        if w > width_max:
            width_max = w
    prev = np.empty(width_max, np.int64)
    curr = np.empty(width_max, np.int64)
    # Row 0 is reachable only through horizontal edges from (0,0); lo[0] == 0.
    for j in range(lo[0], hi[0] + 1):
        prev[j - lo[0]] = j
        tags[offsets[0] + j - lo[0]] = 0 if j == 0 else 3
    for i in range(1, n1 + 1):
        ai = a[i - 1]
        base = offsets[i]
        lo_p = lo[i - 1]
        hi_p = hi[i - 1]
        lo_c = lo[i]
        for j in range(lo_c, hi[i] + 1):
            best = INF
            tag = np.uint8(0)
            jm1 = j - 1
            if lo_p <= jm1 <= hi_p:
                c = prev[jm1 - lo_p]
                if ai != b[jm1]:
                    c += 1
                if c < best:
                    best = c
                    tag = np.uint8(1)
            if lo_p <= j <= hi_p:
                v = prev[j - lo_p] + 1
                if v < best:
                    best = v
                    tag = np.uint8(2)
            if jm1 >= lo_c:
                h = curr[jm1 - lo_c] + 1
                if h < best:
                    best = h
                    tag = np.uint8(3)
            curr[j - lo_c] = best
            tags[base + j - lo_c] = tag
        tmp = prev
        prev = curr
        curr = tmp
    return prev[b.shape[0] - lo[n1]]


@njit(cache=True, nogil=True)
def banded_traceback(tags, offsets, lo, n1, n2):
    """Walk band tags back from (n1, n2). Returns (verts, start); start < 0 on a broken walk."""
    verts = np.empty((n1 + n2 + 1, 2), np.int64)
    pos = n1 + n2
    verts[pos, 0] = n1
    verts[pos, 1] = n2
    i = n1
    j = n2
    while i > 0 or j > 0:
        t = tags[offsets[i] + j - lo[i]]
        if t == 1:
            i -= 1
            j -= 1
        elif t == 2:
            i -= 1
        elif t == 3:
            j -= 1
        else:
            return verts, -1
        pos -= 1
        verts[pos, 0] = i
        verts[pos, 1] = j
    return verts, pos


@njit(cache=True, nogil=True)
def markov_deletion_flags(u, p_d, q_d):
    """Per-bit deletion flags: threshold is p_d after a kept bit, q_d after a deleted one."""
    n = u.shape[0]
    out = np.empty(n, np.bool_)
    prev = False
    for j in range(n):
        d = u[j] < (q_d if prev else p_d)
        out[j] = d
        prev = d
    return out


_warmed = False


def warm_kernels() -> None:
    """Compile (or load cached) kernels on tiny inputs so timed runs stay clean."""
    global _warmed
    if _warmed:
        return
    a = np.array([0, 1], dtype=np.uint8)
    b = np.array([1, 1], dtype=np.uint8)
    ed_cost(a, b)
    t = ed_full_table(a, b)
    full_traceback(t, a, b)
    lo = np.zeros(3, np.int64)
    hi = np.full(3, 2, np.int64)
    offsets = np.array([0, 3, 6], np.int64)
    tags = np.zeros(9, np.uint8)
    banded_fill(a, b, lo, hi, offsets, tags)
    banded_traceback(tags, offsets, lo, 2, 2)
    markov_deletion_flags(np.array([0.5, 0.5]), 0.1, 0.2)
    _warmed = True
