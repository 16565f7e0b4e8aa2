"""Block-anchored approximate alignment via windowed edit distances.

The source string is cut into blocks of block_len = ceil(k ln n) bits. For
each block the algorithm scans a fixed fan of candidate windows of the same
length in the target string, spaced ln n apart around the previous anchor
shifted one block forward, and anchors the block at the window with the
smallest edit distance. Each window DP costs O(ln^2 n), there are O(1)
windows per block and O(n / ln n) blocks, so the whole scan is O(n ln n).
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bitstring import as_bits
from .channel import DEFAULT_BOUNDS, ParamBounds

# Decision thresholds stop separating near from far windows when the channel
# is this noisy; the pipeline still runs, but the accuracy argument thins out.
SEPARATION_LIMIT = 0.03485


@dataclass(frozen=True)
class AnchorFunction:
    """Sampled approximate alignment function.

    rows holds the sampled source positions 1, block_len+1, 2*block_len+1, ...
    and cols the anchored 1-indexed target positions. Columns are clamped to
    the target string, so they are nonnegative and at most |s2|.
    """

    block_len: int
    rows: np.ndarray
    cols: np.ndarray

    def __post_init__(self):
        if self.block_len < 1:
            raise ValueError("block_len must be >= 1")
        rows = np.ascontiguousarray(self.rows, np.int64)
        cols = np.ascontiguousarray(self.cols, np.int64)
        if rows.ndim != 1 or rows.shape != cols.shape or rows.size == 0:
            raise ValueError("rows and cols must be equal-length nonempty vectors")
        expect = 1 + self.block_len * np.arange(rows.size, dtype=np.int64)
        if not np.array_equal(rows, expect):
            raise ValueError("sample rows must be 1, block_len+1, 2*block_len+1, ...")
        if cols.size and int(cols.min()) < 0:
            raise ValueError("anchored columns must be nonnegative")
        rows.flags.writeable = False
        cols.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def samples(self) -> int:
        return int(self.rows.size)

    def col_at(self, row: int) -> int:
        """Anchored column for a sample row; KeyError off the sample grid."""
        m, rem = divmod(int(row) - 1, self.block_len)
        if rem or not 0 <= m < self.rows.size:
            raise KeyError(f"row {row} is not a sample row")
        return int(self.cols[m])

    def __eq__(self, other) -> bool:
        if not isinstance(other, AnchorFunction):
            return NotImplemented
        return (
            self.block_len == other.block_len
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
        )

    def to_json(self) -> str:
        samples = [[int(r), int(c)] for r, c in zip(self.rows, self.cols)]
        return json.dumps({"block_len": self.block_len, "samples": samples})

    @classmethod
    def from_json(cls, text: str) -> "AnchorFunction":
        obj = json.loads(text)
        samples = np.asarray(obj["samples"], np.int64).reshape(-1, 2)
        return cls(int(obj["block_len"]), samples[:, 0], samples[:, 1])


def anchor_error_bound(bounds: ParamBounds, n: int) -> int:
    """Largest anchor error the accuracy guarantee allows: ceil((3/2 kappa + 1) k ln n)."""
    return math.ceil((1.5 * bounds.kappa(n) + 1.0) * bounds.k * math.log(n))


def offset_fan(bounds: ParamBounds, n: int) -> int:
    """Half-width J of the candidate offset range; 2J+1 windows per block."""
    return 2 * math.ceil((1.5 * bounds.kappa(n) + 1.0) * bounds.k)


def check_separation(bounds: ParamBounds, n: int) -> None:
    """Warn when (3/2) rho_s + kappa_n reaches the threshold-separation limit."""
    margin = 1.5 * bounds.rho_s + bounds.kappa(n)
    if margin >= SEPARATION_LIMIT:
        warnings.warn(
            f"(3/2) rho_s + kappa = {margin:.4f} >= {SEPARATION_LIMIT} at n={n}; "
            "window-score separation is not guaranteed at this size",
            RuntimeWarning,
            stacklevel=3,
        )


def approx_align(
    s1, s2, bounds: ParamBounds = DEFAULT_BOUNDS, stats: dict | None = None
) -> AnchorFunction:
    """Anchor every block of s1 to its best-scoring window in s2.

    The first anchor is pinned to column 1 (clamped into an empty target).
    Block i (1-indexed, bits i*block_len+1 .. (i+1)*block_len) is scored
    against windows starting at round((j + k) ln n) past the previous anchor
    for j = -J..J; the comparison is <=, so among ties the largest j wins.
    Windows are clamped to the target; a window reduced below half length is
    skipped, and if every window of a block is skipped the anchor carries
    forward one block ahead of the previous one. Deterministic in its inputs.
    """
    a = as_bits(s1)
    b = as_bits(s2)
    n = int(a.size)
    n2 = int(b.size)
    block = bounds.block_len(n)
    if n < block:
        raise ValueError(f"need at least one block: n={n} < block_len={block}")
    check_separation(bounds, n)
    _kernels.warm_kernels()
    ln_n = math.log(n)
    fan = offset_fan(bounds, n)
    count = n // block
    cols = np.empty(count, np.int64)
    cols[0] = prev = min(1, n2)
    cells = 0
    scored = 0
    for i in range(1, count):
        blk = a[i * block : (i + 1) * block]
        best = int(_kernels.INF)
        best_col = -1
        for j in range(-fan, fan + 1):
            start = prev + round((j + bounds.k) * ln_n)
            lo = max(start, 1)
            hi = min(start + block - 1, n2)
            width = hi - lo + 1
            if 2 * width < block:
                continue
            cost = int(_kernels.ed_cost(blk, b[lo - 1 : hi]))
            cells += (block + 1) * (width + 1)
            scored += 1
            if cost <= best:
                best = cost
                best_col = lo
        prev = best_col if best_col >= 0 else min(prev + block, n2)
        cols[i] = prev
    if stats is not None:
        stats.update(
            blocks=count - 1,
            windows=scored,
            window_cells=cells,
            fan=fan,
            block_len=block,
        )
    return AnchorFunction(block, 1 + block * np.arange(count, dtype=np.int64), cols)
