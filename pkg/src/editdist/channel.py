"""The indel mutation channel.

A source string passes the channel bit by bit. Each source bit independently
acquires a substitution flag, a deletion flag (whose probability depends on
whether the previous bit was deleted), and an optional insertion event that
splices a geometric-length payload of uniform bits immediately to the right of
the bit's image. Inserted bits are never mutated further. The realized flags
and payloads form an edit trace; replaying the trace on the source yields the
mutated string exactly, and the trace also induces the canonical alignment
between the two strings.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .alignment import Alignment
from .bitstring import BitString, as_bits


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for (seed, *key); derivation via numpy's SeedSequence hash.

    Per-trial generators come from the same master seed plus the trial index,
    so concurrent trials are reproducible independently of scheduling.
    """
    if isinstance(seed, np.random.Generator):
        if key:
            raise ValueError("cannot derive a keyed stream from a Generator")
        return seed
    seed = int(seed)
    if seed < 0 or any(int(k) < 0 for k in key):
        raise ValueError("seeds and derivation keys must be nonnegative integers")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *map(int, key)])))


@dataclass(frozen=True)
class ChannelParams:
    """Mutation probabilities: substitution, first/repeat deletion, insertion event, payload continuation."""

    p_s: float
    p_d: float
    q_d: float
    p_i: float
    q_i: float

    def __post_init__(self):
        for name in ("p_s", "p_d", "q_d", "p_i", "q_i"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0 or not math.isfinite(v):
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        if self.q_i >= 1.0:
            raise ValueError("q_i must be < 1 (payload length must have finite mean)")
        if self.q_d < self.p_d:
            raise ValueError("q_d must be >= p_d (repeat deletions are at least as likely)")

    @classmethod
    def at_bounds(cls, bounds: "ParamBounds") -> "ChannelParams":
        """The extremal in-bounds channel: every rate at its cap."""
        return cls(
            p_s=bounds.rho_s,
            p_d=bounds.rho_d,
            q_d=1.0 - (1.0 - bounds.rho_d) / bounds.rho_d_prime,
            p_i=bounds.rho_i,
            q_i=1.0 - 1.0 / bounds.rho_i_prime,
        )

    @classmethod
    def identity(cls) -> "ChannelParams":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ParamBounds:
    """Caps on the channel rates, plus the block-length constant k.

    rho_s caps p_s; rho_d caps p_d; rho_d_prime caps the deletion-run factor
    (1-rho_d)/(1-q_d); rho_i caps p_i; rho_i_prime caps the mean payload
    length 1/(1-q_i).
    """

    rho_s: float
    rho_d: float
    rho_d_prime: float
    rho_i: float
    rho_i_prime: float
    k: float = 40.0

    def __post_init__(self):
        for name in ("rho_s", "rho_d", "rho_d_prime", "rho_i", "rho_i_prime", "k"):
            v = getattr(self, name)
            if v <= 0 or not math.isfinite(v):
                raise ValueError(f"{name} must be a positive finite real, got {v!r}")

    def block_len(self, n: int) -> int:
        """Window/block length ceil(k * ln n); natural log throughout."""
        if n < 2:
            raise ValueError("block length is defined for n >= 2")
        return math.ceil(self.k * math.log(n))

    def kappa(self, n: int) -> float:
        """Aggregate indel rate controlling drift and decision thresholds."""
        if n < 2:
            raise ValueError("kappa is defined for n >= 2")
        return self.rho_i * self.rho_i_prime + (
            self.rho_d + 1.0 / (self.k * math.log(n))
        ) * (self.rho_d_prime + 1.0)

    def admits(self, params: ChannelParams) -> bool:
        """Whether the channel rates satisfy every cap."""
        if params.q_d >= 1.0:
            return False
        return (
            params.p_s <= self.rho_s
            and params.p_d <= self.rho_d
            and (1.0 - self.rho_d) / (1.0 - params.q_d) <= self.rho_d_prime
            and params.p_i <= self.rho_i
            and 1.0 / (1.0 - params.q_i) <= self.rho_i_prime
        )


DEFAULT_BOUNDS = ParamBounds(
    rho_s=0.01, rho_d=0.004, rho_d_prime=1.25, rho_i=0.004, rho_i_prime=1.25, k=40.0
)


class TraceError(ValueError):
    """Trace inconsistent with the strings it claims to relate."""


@dataclass(frozen=True)
class EditTrace:
    """Realized edits, one record per source position, stored column-wise.

    sub[j]/deleted[j] flag position j+1; ins_len[j] is the payload length
    spliced to the right of that bit's image, with the payload bits of all
    positions concatenated in source order in ins_bits.
    """

    sub: np.ndarray
    deleted: np.ndarray
    ins_len: np.ndarray
    ins_bits: np.ndarray

    def __post_init__(self):
        n = self.sub.shape[0]
        if self.deleted.shape[0] != n or self.ins_len.shape[0] != n:
            raise TraceError("trace arrays disagree on source length")
        if int(self.ins_len.sum()) != self.ins_bits.shape[0]:
            raise TraceError("payload buffer does not match ins_len totals")
        if self.ins_len.size and int(self.ins_len.min()) < 0:
            raise TraceError("payload lengths must be nonnegative")

    @property
    def n(self) -> int:
        return int(self.sub.shape[0])

    def target_len(self) -> int:
        return int(self.n - self.deleted.sum() + self.ins_len.sum())

    def payload_offsets(self) -> np.ndarray:
        """Exclusive prefix sums into ins_bits, one per source position."""
        return np.concatenate(([0], np.cumsum(self.ins_len)))

    def counts(self) -> tuple[int, int, int]:
        """(substitutions on surviving bits, deletions, inserted bits)."""
        surviving_subs = int(np.count_nonzero(self.sub & ~self.deleted))
        return surviving_subs, int(self.deleted.sum()), int(self.ins_len.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, EditTrace):
            return NotImplemented
        return (
            np.array_equal(self.sub, other.sub)
            and np.array_equal(self.deleted, other.deleted)
            and np.array_equal(self.ins_len, other.ins_len)
            and np.array_equal(self.ins_bits, other.ins_bits)
        )

    def to_records(self) -> list[dict]:
        """JSON form: one record per source position, 1-indexed."""
        offs = self.payload_offsets()
        out = []
        for j in range(self.n):
            payload = self.ins_bits[offs[j]:offs[j + 1]]
            out.append(
                {
                    "pos": j + 1,
                    "sub": bool(self.sub[j]),
                    "del": bool(self.deleted[j]),
                    "ins": BitString(payload).to_text(),
                }
            )
        return out

    @classmethod
    def from_records(cls, records: list[dict]) -> "EditTrace":
        n = len(records)
        sub = np.zeros(n, bool)
        deleted = np.zeros(n, bool)
        ins_len = np.zeros(n, np.int64)
        chunks = []
        for idx, rec in enumerate(records):
            if int(rec["pos"]) != idx + 1:
                raise TraceError("trace records must cover positions 1..n in order")
            sub[idx] = bool(rec["sub"])
            deleted[idx] = bool(rec["del"])
            payload = as_bits(rec.get("ins", ""))
            ins_len[idx] = payload.size
            if payload.size:
                chunks.append(payload)
        ins_bits = np.concatenate(chunks) if chunks else np.zeros(0, np.uint8)
        return cls(sub, deleted, ins_len, ins_bits)

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_json(cls, text: str) -> "EditTrace":
        return cls.from_records(json.loads(text))


def sample_source(n: int, seed) -> BitString:
    """Uniform random bitstring of length n; deterministic for a fixed seed."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = derive_rng(seed)
    return BitString(rng.integers(0, 2, size=n, dtype=np.uint8))


def apply_channel(s1, params: ChannelParams, seed) -> tuple[BitString, EditTrace]:
    """Run the channel over s1, returning the mutated string and its trace.

    Draw order is part of the determinism contract: (1) substitution uniforms,
    (2) deletion uniforms fed through the Markov threshold rule, (3) insertion
    event uniforms, (4) payload lengths, geometric with success 1-q_i on
    support {1,2,...}, drawn only for positions with an event, (5) payload
    bits. The first bit uses p_d (it has no predecessor); inserted bits are
    not fed back through the channel.
    """
    bits = as_bits(s1)
    n = bits.size
    rng = derive_rng(seed)
    sub = rng.random(n) < params.p_s
    deleted = _kernels.markov_deletion_flags(rng.random(n), params.p_d, params.q_d)
    events = rng.random(n) < params.p_i
    ins_len = np.zeros(n, np.int64)
    n_events = int(events.sum())
    if n_events:
        ins_len[events] = rng.geometric(1.0 - params.q_i, size=n_events)
    total_ins = int(ins_len.sum())
    ins_bits = rng.integers(0, 2, size=total_ins, dtype=np.uint8)
    trace = EditTrace(sub, deleted, ins_len, ins_bits)
    return replay_trace(bits, trace), trace


def replay_trace(s1, trace: EditTrace) -> BitString:
    """Deterministically rebuild s2 from (s1, trace)."""
    bits = as_bits(s1)
    if bits.size != trace.n:
        raise TraceError(f"trace covers {trace.n} positions, string has {bits.size}")
    keep = ~trace.deleted
    slot_sizes = keep.astype(np.int64) + trace.ins_len
    starts = np.concatenate(([0], np.cumsum(slot_sizes)))
    out = np.empty(int(starts[-1]), np.uint8)
    out[starts[:-1][keep]] = bits[keep] ^ trace.sub[keep]
    has_payload = trace.ins_len > 0
    if has_payload.any():
        lens = trace.ins_len[has_payload]
        base = starts[:-1][has_payload] + keep[has_payload]
        first = np.repeat(base, lens)
        within = np.arange(int(lens.sum())) - np.repeat(
            np.concatenate(([0], np.cumsum(lens)[:-1])), lens
        )
        out[first + within] = trace.ins_bits
    return BitString(out)


def canonical_alignment(trace: EditTrace, n1: int, n2: int) -> Alignment:
    """The alignment induced by the trace, built row by row.

    The segment from row i to row i+1 starts with one horizontal edge per
    payload bit of source bit i (payloads sit right of their bit, so they are
    consumed at the start of the next row), then closes with bit i+1's edge:
    vertical if deleted, else diagonal. Payload of the last bit trails along
    the bottom row.
    """
    if trace.n != n1:
        raise TraceError(f"trace covers {trace.n} positions, expected n1={n1}")
    if trace.target_len() != n2:
        raise TraceError(f"trace replays to length {trace.target_len()}, expected n2={n2}")
    if n1 == 0:
        steps_h = int(trace.ins_len.sum()) if trace.n else 0
        cols = np.arange(steps_h + 1, dtype=np.int64)
        return Alignment(np.stack([np.zeros_like(cols), cols], axis=1))
    seg_h = np.concatenate(([0], trace.ins_len[: n1 - 1]))
    trailing = int(trace.ins_len[n1 - 1])
    total = int(seg_h.sum()) + n1 + trailing
    drow = np.zeros(total, np.int64)
    dcol = np.ones(total, np.int64)
    edge_at = np.cumsum(seg_h + 1) - 1
    drow[edge_at] = 1
    dcol[edge_at[trace.deleted]] = 0
    verts = np.empty((total + 1, 2), np.int64)
    verts[0] = 0
    np.cumsum(drow, out=verts[1:, 0])
    np.cumsum(dcol, out=verts[1:, 1])
    return Alignment(verts)


def canonical_function(trace: EditTrace) -> np.ndarray:
    """f_{A*} for all rows 0..n: column of the canonical path's first vertex per row.

    f(i) = survivors among bits 1..i plus payload of bits 1..i-1; when bit i
    survives this is exactly its 1-indexed position in s2.
    """
    n = trace.n
    f = np.empty(n + 1, np.int64)
    f[0] = 0
    if n:
        surv = np.cumsum(~trace.deleted)
        ins = np.concatenate(([0], np.cumsum(trace.ins_len)[:-1]))
        f[1:] = surv + ins
    return f
