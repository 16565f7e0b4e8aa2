"""Exact edit-distance engines: full-table DP and the band-restricted DP."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .alignment import Alignment
from .approx import AnchorFunction
from .bitstring import as_bits


class DisconnectedBandError(RuntimeError):
    """No monotone path from (0,0) to (n1,n2) stays inside the band."""


@dataclass(frozen=True)
class Band:
    """Per-row column intervals [lo_i, hi_i] restricting the DP lattice."""

    lo: np.ndarray
    hi: np.ndarray
    n2: int

    @property
    def n1(self) -> int:
        return int(self.lo.shape[0]) - 1

    def check(self) -> None:
        lo, hi = self.lo, self.hi
        if lo.shape != hi.shape or lo.ndim != 1 or lo.shape[0] < 1:
            raise ValueError("band rows must be two equal-length vectors, one per row")
        if lo[0] != 0:
            raise ValueError("(0,0) must lie in the band")
        if hi[-1] != self.n2:
            raise ValueError("(n1,n2) must lie in the band")
        if (lo > hi).any() or (lo < 0).any() or (hi > self.n2).any():
            raise ValueError("row intervals must satisfy 0 <= lo_i <= hi_i <= n2")
        if (np.diff(lo) < 0).any() or (np.diff(hi) < 0).any():
            raise ValueError("lo and hi must be nondecreasing")
        # Reachability between consecutive row slices.
        if (lo[1:] > hi[:-1] + 1).any():
            raise ValueError("consecutive rows do not connect (lo_{i+1} > hi_i + 1)")

    def area(self) -> int:
        return int((self.hi - self.lo + 1).sum())

    def max_width(self) -> int:
        return int((self.hi - self.lo + 1).max())

    def is_subband_of(self, other: "Band") -> bool:
        return (
            self.n1 == other.n1
            and self.n2 == other.n2
            and bool((self.lo >= other.lo).all())
            and bool((self.hi <= other.hi).all())
        )


def full_rectangle_band(n1: int, n2: int) -> Band:
    """The vacuous restriction: every lattice vertex."""
    return Band(np.zeros(n1 + 1, np.int64), np.full(n1 + 1, n2, np.int64), n2)


def diagonal_band(n1: int, n2: int, radius: int) -> Band:
    """Rows [max(0, i-radius), min(n2, i+radius)]; radius must reach the corner."""
    if radius < abs(n1 - n2):
        raise ValueError(
            f"radius {radius} < |n1 - n2| = {abs(n1 - n2)}: corner unreachable"
        )
    rows = np.arange(n1 + 1, dtype=np.int64)
    lo = np.maximum(rows - radius, 0)
    hi = np.minimum(rows + radius, n2)
    band = Band(lo, hi, n2)
    band.check()
    return band


def band_from_anchor_function(
    f_prime: AnchorFunction, n1: int, n2: int, radius: int
) -> Band:
    """Band of the given radius around the interpolated anchor function.

    Centers pass through every (sample row, sampled column), continue linearly
    to (n1, n2) beyond the last sample, and are anchored at (0, 0) below the
    first. The band is then widened as needed (never narrowed) so the Band
    invariants hold: monotone envelopes of the centers, clamped endpoints, and
    a reachability repair between consecutive rows.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    rows = f_prime.rows
    cols = f_prime.cols
    if rows.size == 0:
        raise ValueError("anchor function has no samples")
    knot_r = [0]
    knot_c = [0]
    for r, c in zip(rows.tolist(), cols.tolist()):
        if r > knot_r[-1]:
            knot_r.append(int(r))
            knot_c.append(int(c))
    if knot_r[-1] < n1:
        knot_r.append(n1)
        knot_c.append(n2)
    else:
        knot_c[-1] = n2
    centers = np.interp(np.arange(n1 + 1), knot_r, knot_c)
    hi_env = np.maximum.accumulate(centers)
    lo_env = np.minimum.accumulate(centers[::-1])[::-1]
    lo = np.floor(lo_env).astype(np.int64) - radius
    hi = np.ceil(hi_env).astype(np.int64) + radius
    np.clip(lo, 0, n2, out=lo)
    np.clip(hi, 0, n2, out=hi)
    lo[0] = 0
    hi[-1] = n2
    # Monotone envelopes can still leave a gap after an anchor jump; raise hi.
    while True:
        gap = lo[1:] > hi[:-1] + 1
        if not gap.any():
            break
        hi[:-1][gap] = lo[1:][gap] - 1
        np.maximum.accumulate(hi, out=hi)
        np.clip(hi, 0, n2, out=hi)
        hi[-1] = n2
    band = Band(lo, hi, n2)
    band.check()
    return band


def edit_distance_cost(s1, s2) -> int:
    """Edit distance only, two rolling rows; the oracle-friendly entry point."""
    a = as_bits(s1)
    b = as_bits(s2)
    _kernels.warm_kernels()
    return int(_kernels.ed_cost(a, b))


def edit_distance_full(s1, s2) -> tuple[int, Alignment]:
    """Textbook full-table DP with traceback.

    Holds the whole (n1+1) x (n2+1) int32 table, so memory is quadratic; use
    edit_distance_cost when only the value is needed at large n.
    """
    a = as_bits(s1)
    b = as_bits(s2)
    _kernels.warm_kernels()
    table = _kernels.ed_full_table(a, b)
    verts, start = _kernels.full_traceback(table, a, b)
    return int(table[a.size, b.size]), Alignment(verts[start:], check=False)


def edit_distance_banded(s1, s2, band: Band) -> tuple[int, Alignment]:
    """Minimum cost over paths whose every vertex lies in the band.

    Runtime and traceback memory are proportional to band area. Ties are
    broken diagonal, then vertical, then horizontal, matching the full DP.
    """
    a = as_bits(s1)
    b = as_bits(s2)
    if band.n1 != a.size or band.n2 != b.size:
        raise ValueError(
            f"band is ({band.n1}, {band.n2}), strings are ({a.size}, {b.size})"
        )
    band.check()
    _kernels.warm_kernels()
    widths = band.hi - band.lo + 1
    offsets = np.concatenate(([0], np.cumsum(widths)))[:-1].astype(np.int64)
    tags = np.empty(int(widths.sum()), np.uint8)
    cost = _kernels.banded_fill(a, b, band.lo, band.hi, offsets, tags)
    if cost >= _kernels.INF:
        raise DisconnectedBandError("no path through the band reaches (n1, n2)")
    verts, start = _kernels.banded_traceback(tags, offsets, band.lo, a.size, b.size)
    if start < 0:
        raise DisconnectedBandError("band traceback fell off the band")
    return int(cost), Alignment(verts[start:], check=False)
