"""Alignment paths as first-class values.

An alignment is a monotone lattice path from (0,0) to (n1,n2) in the
dependency graph; its cost upper-bounds the edit distance. Breaks are maximal
excursions off a reference path (vertex membership, not edge membership), and
the two replacement transforms splice reference subpaths over short or long
breaks respectively.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .bitstring import as_bits

_STEPS = ((1, 1), (1, 0), (0, 1))


class Alignment:
    """Monotone path stored as an (L, 2) int64 vertex array."""

    __slots__ = ("verts",)

    def __init__(self, verts, check: bool = True):
        arr = np.ascontiguousarray(verts, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError("alignment needs an (L, 2) vertex array with L >= 1")
        if check:
            if arr[0, 0] != 0 or arr[0, 1] != 0:
                raise ValueError("alignment must start at (0, 0)")
            d = np.diff(arr, axis=0)
            if d.size and not (
                (d >= 0).all() and (d <= 1).all() and (d.sum(axis=1) >= 1).all()
            ):
                raise ValueError("steps must be (1,0), (0,1) or (1,1)")
        self.verts = arr
        self.verts.setflags(write=False)

    @property
    def n1(self) -> int:
        return int(self.verts[-1, 0])

    @property
    def n2(self) -> int:
        return int(self.verts[-1, 1])

    def __len__(self) -> int:
        return int(self.verts.shape[0])

    def __eq__(self, other) -> bool:
        if isinstance(other, Alignment):
            return np.array_equal(self.verts, other.verts)
        return NotImplemented

    def __hash__(self):
        return hash(self.verts.tobytes())

    def __repr__(self) -> str:
        return f"Alignment(({self.n1}, {self.n2}), {len(self)} vertices)"

    def to_json(self) -> str:
        return json.dumps(self.verts.tolist())

    @classmethod
    def from_json(cls, text: str) -> "Alignment":
        return cls(np.asarray(json.loads(text), dtype=np.int64).reshape(-1, 2))


@dataclass(frozen=True)
class Break:
    """Maximal subpath of an alignment that leaves the reference path.

    Endpoints lie on the reference; no interior vertex does. Length is the row
    span end_vertex.i - start_vertex.i (column span is ignored).
    """

    start_vertex: tuple[int, int]
    end_vertex: tuple[int, int]
    interior: np.ndarray
    start_index: int = field(repr=False)
    end_index: int = field(repr=False)

    @property
    def length(self) -> int:
        return self.end_vertex[0] - self.start_vertex[0]


def alignment_cost(algn: Alignment, s1, s2) -> int:
    """Sum of edge weights: diagonal edges cost 0 on a symbol match, everything else 1."""
    a = as_bits(s1)
    b = as_bits(s2)
    if algn.n1 != a.size or algn.n2 != b.size:
        raise ValueError(
            f"alignment ends at ({algn.n1}, {algn.n2}), strings are ({a.size}, {b.size})"
        )
    steps = np.diff(algn.verts, axis=0)
    diag = (steps[:, 0] == 1) & (steps[:, 1] == 1)
    cost = int(steps.shape[0] - np.count_nonzero(diag))
    ends = algn.verts[1:][diag]
    if ends.size:
        cost += int(np.count_nonzero(a[ends[:, 0] - 1] != b[ends[:, 1] - 1]))
    return cost


def alignment_function(algn: Alignment, i: int) -> int:
    """f_A(i): column of the first vertex of the path in row i."""
    if not 0 <= i <= algn.n1:
        raise ValueError(f"row {i} outside [0, {algn.n1}]")
    idx = int(np.searchsorted(algn.verts[:, 0], i, side="left"))
    return int(algn.verts[idx, 1])


def alignment_function_table(algn: Alignment) -> np.ndarray:
    """f_A over all rows 0..n1 at once."""
    idx = np.searchsorted(algn.verts[:, 0], np.arange(algn.n1 + 1), side="left")
    return algn.verts[idx, 1].copy()


def _vertex_keys(verts: np.ndarray, width: int) -> np.ndarray:
    # Strictly increasing along any monotone path, so searchsorted works.
    return verts[:, 0] * width + verts[:, 1]


def _on_reference(algn: Alignment, star: Alignment) -> np.ndarray:
    width = max(algn.n2, star.n2) + 2
    keys = _vertex_keys(algn.verts, width)
    star_keys = _vertex_keys(star.verts, width)
    pos = np.searchsorted(star_keys, keys)
    pos_c = np.minimum(pos, star_keys.size - 1)
    return star_keys[pos_c] == keys


def extract_breaks(
    algn: Alignment, star: Alignment, block_len: int
) -> list[tuple[Break, bool]]:
    """All breaks of algn against star, each tagged long iff length >= block_len.

    Membership is by vertex, matching the definition: sharing a vertex without
    sharing the edge into it still counts as returning to the reference.
    """
    if (algn.n1, algn.n2) != (star.n1, star.n2):
        raise ValueError("alignments must share endpoint dimensions")
    if block_len < 1:
        raise ValueError("block_len must be >= 1")
    off = ~_on_reference(algn, star)
    if not off.any():
        return []
    # Endpoints (0,0) and (n1,n2) are always shared, so off runs are interior.
    edges = np.diff(off.astype(np.int8))
    run_starts = np.flatnonzero(edges == 1) + 1
    run_ends = np.flatnonzero(edges == -1)
    out = []
    for s, e in zip(run_starts, run_ends):
        br = Break(
            start_vertex=(int(algn.verts[s - 1, 0]), int(algn.verts[s - 1, 1])),
            end_vertex=(int(algn.verts[e + 1, 0]), int(algn.verts[e + 1, 1])),
            interior=algn.verts[s : e + 1],
            start_index=int(s - 1),
            end_index=int(e + 1),
        )
        assert br.length >= 1
        out.append((br, br.length >= block_len))
    return out


def _star_index(star: Alignment, vertex: tuple[int, int]) -> int:
    width = star.n2 + 2
    key = vertex[0] * width + vertex[1]
    keys = _vertex_keys(star.verts, width)
    idx = int(np.searchsorted(keys, key))
    # Break endpoints lie on the reference by construction; anything else is a bug.
    assert idx < keys.size and keys[idx] == key, f"vertex {vertex} not on reference"
    return idx


def _replace_breaks(algn: Alignment, star: Alignment, breaks: list[Break]) -> Alignment:
    if not breaks:
        return algn
    segments = []
    pos = 0
    for br in breaks:
        segments.append(algn.verts[pos : br.start_index + 1])
        si = _star_index(star, br.start_vertex)
        ei = _star_index(star, br.end_vertex)
        segments.append(star.verts[si + 1 : ei])
        pos = br.end_index
    segments.append(algn.verts[pos:])
    return Alignment(np.concatenate(segments))


def sbr(algn: Alignment, star: Alignment, block_len: int) -> Alignment:
    """Short-break replacement: splice star over every break shorter than block_len."""
    short = [br for br, is_long in extract_breaks(algn, star, block_len) if not is_long]
    return _replace_breaks(algn, star, short)


def lbr(algn: Alignment, star: Alignment, block_len: int) -> Alignment:
    """Long-break replacement: splice star over every break of length >= block_len."""
    long_ = [br for br, is_long in extract_breaks(algn, star, block_len) if is_long]
    return _replace_breaks(algn, star, long_)


_ENUM_GUARD = 10


def enumerate_alignments(n1: int, n2: int) -> Iterator[Alignment]:
    """Every monotone path from (0,0) to (n1,n2), exactly once. Guarded to n1,n2 <= 10."""
    if n1 < 0 or n2 < 0:
        raise ValueError("dimensions must be nonnegative")
    if n1 > _ENUM_GUARD or n2 > _ENUM_GUARD:
        raise ValueError(f"enumeration guarded to dimensions <= {_ENUM_GUARD}")
    path = [(0, 0)]

    def walk() -> Iterator[Alignment]:
        i, j = path[-1]
        if i == n1 and j == n2:
            yield Alignment(np.asarray(path, dtype=np.int64), check=False)
            return
        for di, dj in _STEPS:
            ii, jj = i + di, j + dj
            if ii <= n1 and jj <= n2:
                path.append((ii, jj))
                yield from walk()
                path.pop()

    return walk()
