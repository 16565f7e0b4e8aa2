"""Monte Carlo and exhaustive verification suites.

Three suites, all reproducible from (suite, master seed):

* oracle: fast pipeline vs. full DP value on channel instances.
* tails: concentration checks. Channel edit counts against exact means and
  standard deviations, plus the tail events behind the window-scoring
  analysis, each compared to a numerically evaluated bound plus explicit
  sampling slack (or to a calibrated desk-scale ceiling where the printed
  bound is vacuous at these sizes; those records say so).
* machinery: break-replacement identities. Composing short-break then
  long-break replacement recovers the channel alignment; replacement deltas
  depend only on the long-break set; and exhaustively at tiny sizes, when
  no short-break image beats the channel alignment, the best good alignment
  is globally best.

Per-trial seeds derive from (seed, domain, n, ...) so any failing trial can
be replayed alone from its recorded key.
"""
from __future__ import annotations

import json
import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels, dp
from .alignment import Alignment, alignment_cost, enumerate_alignments, lbr, sbr
from .bitstring import as_bits
from .channel import (
    DEFAULT_BOUNDS,
    ChannelParams,
    ParamBounds,
    apply_channel,
    canonical_alignment,
    canonical_function,
    derive_rng,
)
from .pipeline import PipelineConfig, edit_distance_fast

_ORACLE, _TAILS, _MACHINERY = 1, 2, 3

# Deliberately lively rates for machinery trials: the identities under test
# hold for every realization, and busy traces exercise more geometry.
_MACHINERY_PARAMS = ChannelParams(p_s=0.1, p_d=0.1, q_d=0.3, p_i=0.1, q_i=0.3)


@dataclass
class TrialReport:
    """Outcome of one suite run; failures carry enough to replay alone."""

    suite: str
    trials: int
    failures: int
    budget: int
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_s: float = 0.0

    def __post_init__(self):
        if not 0 <= self.failures <= max(self.trials, len(self.records)):
            raise ValueError("failures must not exceed the number of trials")

    @property
    def ok(self) -> bool:
        return self.failures <= self.budget

    def failure_records(self) -> list:
        return [r for r in self.records if not r["ok"]]

    def summary(self) -> str:
        verdict = "ok" if self.ok else "FAIL"
        return (
            f"suite={self.suite} trials={self.trials} failures={self.failures} "
            f"budget={self.budget} wall={self.wall_s:.2f}s {verdict}"
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "suite": self.suite,
                "trials": self.trials,
                "failures": self.failures,
                "budget": self.budget,
                "ok": self.ok,
                "records": self.records,
                "notes": self.notes,
                "wall_s": self.wall_s,
            }
        )


def _threads() -> int:
    env = os.environ.get("EDITDIST_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return os.cpu_count() or 1


def _map_trials(fn, count: int) -> list:
    workers = min(_threads(), count) if count else 1
    if workers <= 1:
        return [fn(t) for t in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def suite_oracle(
    n: int,
    trials: int,
    params: ChannelParams | None = None,
    bounds: ParamBounds = DEFAULT_BOUNDS,
    seed: int = 0,
    mode: str = "general",
    n_oracle_max: int = 2**14,
) -> TrialReport:
    """Fast-vs-full value equality on seeded channel instances.

    The full-DP side uses the rolling-row kernel (same recurrence and value
    as the full-table engine, which unit tests pin against it) so oracle
    batches stay memory-light. Budget is 1% of trials, matching the theory's
    vanishing failure rate at desk scale.
    """
    if n > n_oracle_max:
        raise ValueError(f"n={n} exceeds n_oracle_max={n_oracle_max}")
    if params is None:
        params = ChannelParams.at_bounds(bounds)
    notes = []
    if not bounds.admits(params):
        msg = "channel params exceed the configured bounds; suite runs anyway"
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes.append(msg)
    cfg = PipelineConfig(bounds=bounds, mode=mode)
    t0 = time.perf_counter()

    def one(t: int) -> dict:
        rng = derive_rng(seed, _ORACLE, n, t)
        s1 = rng.integers(0, 2, size=n, dtype=np.uint8)
        s2, _ = apply_channel(s1, params, rng)
        full = dp.edit_distance_cost(s1, s2)
        try:
            fast = edit_distance_fast(s1, s2, cfg)[0]
            err = None
        except dp.DisconnectedBandError as exc:
            fast, err = None, str(exc)
        rec = {
            "key": [seed, _ORACLE, n, t],
            "stat": None if fast is None else fast - full,
            "threshold": 0,
            "fast": fast,
            "full": full,
            "ok": fast == full,
        }
        if err:
            rec["error"] = err
        return rec

    records = _map_trials(one, trials)
    failures = sum(not r["ok"] for r in records)
    return TrialReport(
        suite="oracle",
        trials=trials,
        failures=failures,
        budget=trials // 100,
        records=records,
        notes=notes,
        wall_s=time.perf_counter() - t0,
    )


def _delete_marginals(n: int, p_d: float, q_d: float) -> np.ndarray:
    """P[bit j deleted] for j = 1..n under the Markov deletion rule."""
    lam = q_d - p_d
    probs = np.empty(n)
    if n:
        probs[0] = p_d
        for j in range(1, n):
            probs[j] = p_d + lam * probs[j - 1]
    return probs


def channel_count_moments(n: int, params: ChannelParams) -> dict:
    """Exact means and variances of the per-trial edit counts.

    Deletion flags form a two-state Markov chain, so Cov(D_i, D_j) =
    (q_d - p_d)^(j-i) Var(D_i); surviving substitutions inherit that
    covariance scaled by p_s^2; inserted-bit totals are an independent sum
    of Bernoulli-gated geometrics.
    """
    lam = params.q_d - params.p_d
    pdel = _delete_marginals(n, params.p_d, params.q_d)
    vdel = pdel * (1.0 - pdel)
    # sum over i<j of lam^(j-i) Var(D_i), via the finite geometric series.
    if lam == 0.0 or n == 0:
        cross = 0.0
    else:
        tail = np.arange(n - 1, -1, -1, dtype=float)
        cross = float((vdel * lam * (1.0 - lam**tail) / (1.0 - lam)).sum())
    del_mean = float(pdel.sum())
    del_var = float(vdel.sum()) + 2.0 * cross
    p_s = params.p_s
    esub = p_s * (1.0 - pdel)
    sub_mean = float(esub.sum())
    sub_var = float((esub * (1.0 - esub)).sum()) + 2.0 * p_s * p_s * cross
    mu_g = 1.0 / (1.0 - params.q_i)
    var_g = params.q_i / (1.0 - params.q_i) ** 2
    p_i = params.p_i
    ins_mean = n * p_i * mu_g
    ins_var = n * (p_i * (var_g + mu_g * mu_g) - (p_i * mu_g) ** 2)
    return {
        "sub": (sub_mean, sub_var),
        "del": (del_mean, del_var),
        "ins": (ins_mean, ins_var),
    }


def nbinom_tail_bound(mu: float, factor: float) -> float:
    """Tail bound for a Bernoulli-sum of geometrics exceeding factor * mean."""
    if not 1.0 < factor <= 4.0:
        raise ValueError("the bound holds for factors in (1, 4]")
    root = math.sqrt(factor)
    return math.exp(-((root - 1.0) ** 2) * mu / 3.0) + math.exp(
        -factor * mu * (1.0 - 1.0 / root) ** 2 / 2.0
    )


def random_low_ed_bound(length: int, dist: int) -> float:
    """Bound on P[ED <= dist] for independent uniform strings of the length."""
    if dist < 1:
        raise ValueError("dist must be >= 1")
    log_b = dist * math.log(4.0 * math.e * length / dist + 5.0 * math.e + 4.0 * math.e / dist)
    return math.exp(log_b - length * math.log(2.0))


def _freq_check(name: str, events: int, trials: int, bound: float, key, note="") -> dict:
    capped = min(bound, 1.0)
    slack = 3.0 * math.sqrt(capped * (1.0 - capped) / trials) if trials else 0.0
    freq = events / trials if trials else 0.0
    rec = {
        "check": name,
        "key": list(key),
        "stat": freq,
        "events": events,
        "trials": trials,
        "bound": bound,
        "slack": slack,
        "threshold": capped + slack,
        "ok": freq <= capped + slack,
    }
    if note:
        rec["note"] = note
    return rec


# Desk-scale ceiling for events whose printed bound is vacuous at these n
# (the analysis bounds them by n^{-Omega(k)} with unoptimized constants).
CALIBRATED_CEILING = 0.05

# Window-score ratio r; below the separation crossover (approximately .1569).
SCORE_RATIO = 0.15


def suite_lemma_tails(
    n: int,
    trials: int,
    bounds: ParamBounds = DEFAULT_BOUNDS,
    seed: int = 0,
) -> TrialReport:
    """Concentration checks: channel counts, window-score tails, geometric sums.

    One record per check. trials is the per-check simulation count; failures
    count failing checks and the budget is zero.
    """
    if trials < 1:
        return TrialReport("tails", 0, 0, 0, [], [], 0.0)
    t0 = time.perf_counter()
    params = ChannelParams.at_bounds(bounds)
    block = bounds.block_len(n)
    ln_n = math.log(n)
    kappa = bounds.kappa(n)
    small_thr = 1.5 * (bounds.rho_s + kappa) * bounds.k * ln_n
    drift_thr = 1.5 * kappa * bounds.k * ln_n
    if n < block + 2:
        raise ValueError(f"n={n} too small for window checks (block={block})")
    _kernels.warm_kernels()

    def channel_trial(t: int):
        rng = derive_rng(seed, _TAILS, n, 0, t)
        s1 = rng.integers(0, 2, size=n, dtype=np.uint8)
        s2, trace = apply_channel(s1, params, rng)
        b = as_bits(s2)
        f = canonical_function(trace)
        i = int(rng.integers(1, n - block))
        win1 = s1[i - 1 : i - 1 + block]
        lo = max(int(f[i]) - 1, 0)
        hi = max(int(f[i + block]) - 1, lo)
        ed = int(_kernels.ed_cost(win1, b[lo:hi]))
        drift = abs(int(f[i + block] - f[i]) - block)
        subs, dels, ins = trace.counts()
        return subs, dels, ins, ed >= small_thr, drift > drift_thr

    rows = _map_trials(channel_trial, trials)
    subs = np.array([r[0] for r in rows], dtype=float)
    dels = np.array([r[1] for r in rows], dtype=float)
    ins = np.array([r[2] for r in rows], dtype=float)
    moments = channel_count_moments(n, params)
    records = []
    for name, samples in (("sub", subs), ("del", dels), ("ins", ins)):
        mean, var = moments[name]
        sigma = math.sqrt(max(var, 0.0) / trials)
        dev = abs(float(samples.mean()) - mean)
        records.append(
            {
                "check": f"channel-{name}-count",
                "key": [seed, _TAILS, n, 0],
                "stat": float(samples.mean()),
                "mean": mean,
                "sigma": sigma,
                "threshold": 3.0,
                "ok": dev <= 3.0 * sigma,
            }
        )
    records.append(
        _freq_check(
            "block-image-ed",
            sum(r[3] for r in rows),
            trials,
            CALIBRATED_CEILING,
            (seed, _TAILS, n, 0),
            note="calibrated ceiling; printed bound is vacuous at desk scale",
        )
    )
    records.append(
        _freq_check(
            "block-drift",
            sum(r[4] for r in rows),
            trials,
            CALIBRATED_CEILING,
            (seed, _TAILS, n, 0),
            note="calibrated ceiling; printed bound is vacuous at desk scale",
        )
    )

    # Independent uniform pairs: exact-match and low-edit-distance tails.
    dist = math.floor(bounds.k * SCORE_RATIO * ln_n)
    rng = derive_rng(seed, _TAILS, n, 1)
    exact = 0
    low = 0
    for _ in range(trials):
        x = rng.integers(0, 2, size=block, dtype=np.uint8)
        y = rng.integers(0, 2, size=block, dtype=np.uint8)
        if np.array_equal(x, y):
            exact += 1
        if int(_kernels.ed_cost(x, y)) <= dist:
            low += 1
    records.append(
        _freq_check(
            "random-exact-match",
            exact,
            trials,
            2.0**-block,
            (seed, _TAILS, n, 1),
        )
    )
    records.append(
        _freq_check(
            "random-low-ed",
            low,
            trials,
            random_low_ed_bound(block, dist),
            (seed, _TAILS, n, 1),
            note=f"dist={dist}",
        )
    )

    # Bernoulli-sum-of-geometrics tails; the small-mean point is pinned even
    # though its bound exceeds 1, the larger mean actually constrains.
    rng = derive_rng(seed, _TAILS, n, 2)
    for mu, bern_n, bern_p in ((20.0, 2000, 0.01), (100.0, 10000, 0.01)):
        q, factor = 0.5, 1.5
        m = rng.binomial(bern_n, bern_p, size=trials)
        x = np.zeros(trials, dtype=np.int64)
        pos = m > 0
        if pos.any():
            x[pos] = m[pos] + rng.negative_binomial(m[pos], q)
        events = int((x >= factor * mu / q).sum())
        records.append(
            _freq_check(
                f"geometric-sum-tail-mu{int(mu)}",
                events,
                trials,
                nbinom_tail_bound(mu, factor),
                (seed, _TAILS, n, 2),
            )
        )

    failures = sum(not r["ok"] for r in records)
    return TrialReport(
        suite="tails",
        trials=trials,
        failures=failures,
        budget=0,
        records=records,
        notes=[],
        wall_s=time.perf_counter() - t0,
    )


def _route_interior(ia: int, ja: int, ib: int, jb: int, moves: np.ndarray) -> np.ndarray:
    start = np.array([[ia, ja]], dtype=np.int64)
    steps = np.concatenate([start, moves]).cumsum(axis=0)
    assert steps[-1, 0] == ib and steps[-1, 1] == jb
    return steps[1:-1]


def _detour_routes(ia: int, ja: int, ib: int, jb: int, rng) -> list:
    di, dj = ib - ia, jb - ja
    hv = np.concatenate(
        [np.tile([0, 1], (dj, 1)), np.tile([1, 0], (di, 1))]
    ).astype(np.int64)
    routes = [hv, hv[::-1]]
    for _ in range(3):
        routes.append(rng.permutation(hv))
    return [_route_interior(ia, ja, ib, jb, m) for m in routes]


class _StarIndex:
    """Sorted-key view of a reference alignment for membership and splicing."""

    def __init__(self, star: Alignment):
        self.star = star
        self.width = star.n2 + 2
        self.keys = star.verts[:, 0] * self.width + star.verts[:, 1]
        self.rows = star.verts[:, 0]

    def contains(self, verts: np.ndarray) -> np.ndarray:
        keys = verts[:, 0] * self.width + verts[:, 1]
        pos = np.minimum(np.searchsorted(self.keys, keys), self.keys.size - 1)
        return self.keys[pos] == keys

    def vertex_range_at_row(self, row: int) -> tuple[int, int]:
        return (
            int(np.searchsorted(self.rows, row, side="left")),
            int(np.searchsorted(self.rows, row, side="right")),
        )


def _sample_detour(index: _StarIndex, rng, row_start: int, span: int):
    """One proper excursion anchored on the reference, or None.

    Interior vertices are verified to avoid the reference entirely, so the
    excursion is a break of exactly this row span, never a corner cut that
    stays on the reference's vertex set.
    """
    star = index.star
    lo_s, hi_s = index.vertex_range_at_row(row_start)
    lo_e, hi_e = index.vertex_range_at_row(row_start + span)
    for _ in range(4):
        vs = int(rng.integers(lo_s, hi_s))
        ve = int(rng.integers(lo_e, hi_e))
        ia, ja = map(int, star.verts[vs])
        ib, jb = map(int, star.verts[ve])
        if jb < ja or (ib - ia) + (jb - ja) < 2:
            continue
        for interior in _detour_routes(ia, ja, ib, jb, rng):
            if interior.shape[0] and not index.contains(interior).any():
                return vs, ve, interior
    return None


def _gen_detours(index: _StarIndex, rng, plan: list, block: int) -> list:
    """Disjoint-row detours following the long/short plan, best effort."""
    n1 = index.star.n1
    out = []
    row = 0
    for kind in rng.permutation(plan):
        if kind == "long":
            span_max = min(2 * block, n1 - row)
            if span_max < block:
                continue
            span = int(rng.integers(block, span_max + 1))
        else:
            span = int(rng.integers(1, block))
            if row + span > n1:
                continue
        slack = n1 - row - span
        start = row + int(rng.integers(0, min(slack, block) + 1)) if slack > 0 else row
        got = _sample_detour(index, rng, start, span)
        if got is not None:
            out.append(got)
            row = start + span + 1
        else:
            row = start + 1
        if row >= n1:
            break
    return sorted(out, key=lambda d: d[0])


def _splice(star: Alignment, detours: list) -> Alignment:
    segments = []
    pos = 0
    for vs, ve, interior in detours:
        segments.append(star.verts[pos : vs + 1])
        segments.append(interior)
        pos = ve
    segments.append(star.verts[pos:])
    return Alignment(np.concatenate(segments))


def perturb_alignment(star: Alignment, rng, block: int, plan=None) -> Alignment:
    """Random alignment differing from star by proper short/long excursions."""
    index = _StarIndex(star)
    if plan is None:
        plan = ["short"] * int(rng.integers(1, 4)) + ["long"] * int(rng.integers(0, 3))
    for _ in range(20):
        detours = _gen_detours(index, rng, list(plan), block)
        if detours:
            return _splice(star, detours)
    raise RuntimeError("could not place any excursion off the reference")


@lru_cache(maxsize=64)
def _paths_tensor(n1: int, n2: int):
    """All monotone paths, padded with the corner vertex to equal length."""
    paths = list(enumerate_alignments(n1, n2))
    depth = n1 + n2 + 1
    verts = np.empty((len(paths), depth, 2), np.int64)
    verts[:, :, 0] = n1
    verts[:, :, 1] = n2
    for p, algn in enumerate(paths):
        verts[p, : len(algn)] = algn.verts
    d = np.diff(verts, axis=1)
    diag = (d[:, :, 0] == 1) & (d[:, :, 1] == 1)
    nondiag = (d[:, :, 0] + d[:, :, 1]) == 1
    verts.flags.writeable = False
    diag.flags.writeable = False
    nondiag.flags.writeable = False
    return verts, diag, nondiag


def sbr_range_check(s1, s2, star: Alignment, block: int) -> dict:
    """Exhaustive premise/conclusion test of the good-alignment reduction.

    Premise: no short-break-replacement image costs less than the reference.
    Conclusion: the cheapest good (no long break) alignment is globally
    cheapest. Returns the implication verdict; vacuous cases are flagged.
    """
    a = as_bits(s1)
    b = as_bits(s2)
    n1, n2 = int(a.size), int(b.size)
    verts, diag, nondiag = _paths_tensor(n1, n2)
    head_i = verts[:, 1:, 0]
    head_j = verts[:, 1:, 1]
    mism = np.zeros_like(diag)
    if diag.any():
        mism[diag] = a[head_i[diag] - 1] != b[head_j[diag] - 1]
    edge_cost = nondiag.astype(np.int64) + mism
    costs = edge_cost.sum(axis=1)
    prefix = np.concatenate(
        [np.zeros((verts.shape[0], 1), np.int64), edge_cost.cumsum(axis=1)], axis=1
    )
    index = _StarIndex(star)
    sd = np.diff(star.verts, axis=0)
    s_cost = (sd.sum(axis=1) == 1).astype(np.int64)
    s_diag = (sd[:, 0] == 1) & (sd[:, 1] == 1)
    if s_diag.any():
        hi_d = star.verts[1:, 0][s_diag]
        hj_d = star.verts[1:, 1][s_diag]
        s_cost[s_diag] += a[hi_d - 1] != b[hj_d - 1]
    star_prefix = np.concatenate(([0], np.cumsum(s_cost)))
    star_cost = int(star_prefix[-1])
    keys = verts[:, :, 0] * index.width + verts[:, :, 1]
    pos = np.minimum(np.searchsorted(index.keys, keys), index.keys.size - 1)
    on = index.keys[pos] == keys
    off = ~on
    sbr_costs = costs.copy()
    good = np.ones(costs.shape[0], bool)
    for p in np.flatnonzero(off.any(axis=1)):
        edges = np.diff(off[p].astype(np.int8))
        starts = np.flatnonzero(edges == 1) + 1
        ends = np.flatnonzero(edges == -1)
        for s, e in zip(starts, ends):
            span = int(verts[p, e + 1, 0] - verts[p, s - 1, 0])
            if span >= block:
                good[p] = False
                continue
            own = int(prefix[p, e + 1] - prefix[p, s - 1])
            si = int(np.searchsorted(index.keys, keys[p, s - 1]))
            ei = int(np.searchsorted(index.keys, keys[p, e + 1]))
            sbr_costs[p] += int(star_prefix[ei] - star_prefix[si]) - own
    premise = bool(sbr_costs.min() >= star_cost)
    conclusion = bool(costs[good].min() == costs.min())
    return {
        "premise": premise,
        "conclusion": conclusion,
        "ok": (not premise) or conclusion,
        "alignments": int(costs.shape[0]),
        "star_cost": star_cost,
        "best": int(costs.min()),
    }


def suite_proof_machinery(n: int, trials: int, seed: int = 0) -> TrialReport:
    """Replacement identities on perturbed alignments; exhaustive at n <= 6.

    Per trial: (a) short-then-long break replacement recovers the channel
    alignment exactly; (b) the long-break replacement delta is identical for
    two alignments sharing their long breaks; (c) at n <= 6, the exhaustive
    good-alignment reduction implication. Budget is zero.
    """
    if not 2 <= n <= 64:
        raise ValueError("machinery trials cover 2 <= n <= 64")
    block = 3 if n <= 6 else 6
    exhaustive = n <= 6
    t0 = time.perf_counter()

    def one(t: int) -> dict:
        rng = derive_rng(seed, _MACHINERY, n, t)
        # Resample degenerate draws: a single-path rectangle admits no
        # excursion, and the exhaustive check keeps enumeration sizes sane.
        while True:
            s1 = rng.integers(0, 2, size=n, dtype=np.uint8)
            s2, trace = apply_channel(s1, _MACHINERY_PARAMS, rng)
            if len(s2) == 0 or (exhaustive and len(s2) > 8):
                continue
            star = canonical_alignment(trace, n, len(s2))
            try:
                perturbed = perturb_alignment(star, rng, block)
            except RuntimeError:
                continue
            break
        b = as_bits(s2)
        rec = {"key": [seed, _MACHINERY, n, t], "n2": len(s2)}

        recovered = lbr(sbr(perturbed, star, block), star, block)
        rec["compose_ok"] = recovered == star

        index = _StarIndex(star)
        longs = _gen_detours(index, rng, ["long"], block)
        rec["delta_ok"] = True
        if longs:
            lo_row = int(star.verts[longs[-1][1], 0]) + 1
            shorts_a = _short_fill(index, rng, lo_row, block)
            shorts_b = _short_fill(index, rng, lo_row, block)
            a_algn = _splice(star, longs + shorts_a)
            b_algn = _splice(star, longs + shorts_b)
            da = alignment_cost(lbr(a_algn, star, block), s1, b) - alignment_cost(
                a_algn, s1, b
            )
            db = alignment_cost(lbr(b_algn, star, block), s1, b) - alignment_cost(
                b_algn, s1, b
            )
            rec["delta_ok"] = da == db
            rec["delta"] = int(da)
        if exhaustive:
            out = sbr_range_check(s1, b, star, block)
            rec["premise"] = out["premise"]
            rec["range_ok"] = out["ok"]
        else:
            rec["range_ok"] = True
        rec["ok"] = rec["compose_ok"] and rec["delta_ok"] and rec["range_ok"]
        rec["stat"] = int(not rec["ok"])
        rec["threshold"] = 0
        return rec

    records = _map_trials(one, trials)
    failures = sum(not r["ok"] for r in records)
    notes = []
    if exhaustive:
        vacuous = sum(1 for r in records if not r.get("premise", True))
        notes.append(f"{vacuous} of {trials} exhaustive trials had a vacuous premise")
    return TrialReport(
        suite="machinery",
        trials=trials,
        failures=failures,
        budget=0,
        records=records,
        notes=notes,
        wall_s=time.perf_counter() - t0,
    )


def _short_fill(index: _StarIndex, rng, lo_row: int, block: int) -> list:
    """A few short detours placed at rows >= lo_row."""
    n1 = index.star.n1
    out = []
    row = lo_row
    for _ in range(int(rng.integers(1, 3))):
        if row >= n1:
            break
        span = int(rng.integers(1, block))
        if row + span > n1:
            break
        got = _sample_detour(index, rng, row, span)
        if got is not None:
            out.append(got)
            row = row + span + 1
        else:
            row += 1
    return out


def run_suite(name: str, n: int, trials: int, seed: int = 0, **kw) -> TrialReport:
    """Dispatch by suite name: oracle, tails, or machinery."""
    if name == "oracle":
        return suite_oracle(n, trials, seed=seed, **kw)
    if name == "tails":
        return suite_lemma_tails(n, trials, seed=seed, **kw)
    if name == "machinery":
        return suite_proof_machinery(n, trials, seed=seed, **kw)
    raise ValueError(f"unknown suite {name!r}")
