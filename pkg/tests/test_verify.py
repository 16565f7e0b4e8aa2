import itertools
import json
import math

import numpy as np
import pytest

from editdist.alignment import alignment_cost, enumerate_alignments, extract_breaks
from editdist.channel import ChannelParams, apply_channel, canonical_alignment, derive_rng
from editdist.verify import (
    TrialReport,
    channel_count_moments,
    nbinom_tail_bound,
    perturb_alignment,
    random_low_ed_bound,
    run_suite,
    sbr_range_check,
    suite_lemma_tails,
    suite_oracle,
    suite_proof_machinery,
)


def test_trial_report_budget_semantics():
    rep = TrialReport("x", 100, 1, 1, [{"ok": False}], [], 0.1)
    assert rep.ok
    rep = TrialReport("x", 100, 2, 1, [], [], 0.1)
    assert not rep.ok
    with pytest.raises(ValueError):
        TrialReport("x", 1, 5, 0, [], [], 0.0)


def test_trial_report_json_and_failures():
    recs = [{"ok": True, "stat": 0}, {"ok": False, "stat": 3}]
    rep = TrialReport("x", 2, 1, 0, recs, ["note"], 0.5)
    blob = json.loads(rep.to_json())
    assert blob["suite"] == "x" and blob["failures"] == 1 and not blob["ok"]
    assert rep.failure_records() == [recs[1]]


def test_oracle_identity_params_never_fails():
    rep = suite_oracle(512, 5, params=ChannelParams.identity(), seed=1)
    assert rep.failures == 0 and rep.ok
    assert all(r["stat"] == 0 for r in rep.records)


def test_oracle_rejects_oversized_n():
    with pytest.raises(ValueError):
        suite_oracle(2**15, 1)


def test_oracle_out_of_bounds_params_warn_but_run():
    loud = ChannelParams(0.05, 0, 0, 0, 0)
    with pytest.warns(RuntimeWarning):
        rep = suite_oracle(512, 2, params=loud, seed=0)
    assert rep.notes and rep.trials == 2


def test_oracle_records_allow_exact_replay():
    from editdist.channel import DEFAULT_BOUNDS
    from editdist.dp import edit_distance_cost

    rep = suite_oracle(512, 3, seed=123)
    rec = rep.records[1]
    rng = derive_rng(*rec["key"])
    s1 = rng.integers(0, 2, size=512, dtype=np.uint8)
    s2, _ = apply_channel(s1, ChannelParams.at_bounds(DEFAULT_BOUNDS), rng)
    assert edit_distance_cost(s1, s2) == rec["full"]


def test_suites_are_reproducible():
    a = suite_oracle(512, 4, seed=9)
    b = suite_oracle(512, 4, seed=9)
    assert a.records == b.records and a.failures == b.failures
    ta = suite_lemma_tails(512, 50, seed=9)
    tb = suite_lemma_tails(512, 50, seed=9)
    assert ta.records == tb.records
    ma = suite_proof_machinery(16, 5, seed=9)
    mb = suite_proof_machinery(16, 5, seed=9)
    assert ma.records == mb.records


def test_tails_structure_and_thresholds():
    rep = suite_lemma_tails(1024, 100, seed=2)
    names = {r["check"] for r in rep.records}
    assert {
        "channel-sub-count",
        "channel-del-count",
        "channel-ins-count",
        "block-image-ed",
        "block-drift",
        "random-exact-match",
        "random-low-ed",
        "geometric-sum-tail-mu20",
        "geometric-sum-tail-mu100",
    } <= names
    for r in rep.records:
        assert "threshold" in r and "key" in r
    assert rep.budget == 0


def test_tails_too_small_n():
    with pytest.raises(ValueError):
        suite_lemma_tails(64, 10)
    empty = suite_lemma_tails(1024, 0)
    assert empty.trials == 0 and empty.ok


def test_channel_count_moments_against_enumeration():
    # exhaustive check of the Markov-deletion moment algebra at n = 3
    params = ChannelParams(p_s=0.3, p_d=0.2, q_d=0.6, p_i=0.0, q_i=0.0)
    n = 3
    probs = {}
    for pattern in itertools.product([0, 1], repeat=n):
        p = 1.0
        prev = 0
        for j, d in enumerate(pattern):
            rate = params.q_d if (j > 0 and prev) else params.p_d
            p *= rate if d else 1.0 - rate
            prev = d
        probs[pattern] = p
    assert math.isclose(sum(probs.values()), 1.0)
    mean = sum(p * sum(pat) for pat, p in probs.items())
    second = sum(p * sum(pat) ** 2 for pat, p in probs.items())
    var = second - mean**2
    got = channel_count_moments(n, params)
    assert math.isclose(got["del"][0], mean)
    assert math.isclose(got["del"][1], var)
    # surviving substitutions: each kept bit substitutes independently
    sub_mean = sum(p * params.p_s * (n - sum(pat)) for pat, p in probs.items())
    assert math.isclose(got["sub"][0], sub_mean)


def test_channel_count_moments_insertions():
    params = ChannelParams(0, 0, 0, 0.25, 0.5)
    got = channel_count_moments(10, params)
    mu_g, var_g = 2.0, 2.0  # geometric on {1,2,...} with success 0.5
    assert math.isclose(got["ins"][0], 10 * 0.25 * mu_g)
    assert math.isclose(
        got["ins"][1], 10 * (0.25 * (var_g + mu_g**2) - (0.25 * mu_g) ** 2)
    )


def test_nbinom_tail_bound_pinned_value():
    b = nbinom_tail_bound(20.0, 1.5)
    expect = math.exp(-((math.sqrt(1.5) - 1) ** 2) * 20 / 3) + math.exp(
        -1.5 * 20 * (1 - 1 / math.sqrt(1.5)) ** 2 / 2
    )
    assert math.isclose(b, expect)
    assert b > 1  # vacuous at this mean, by design
    assert nbinom_tail_bound(100.0, 1.5) < 0.27
    with pytest.raises(ValueError):
        nbinom_tail_bound(20.0, 5.0)


def test_random_low_ed_bound_behaviour():
    assert random_low_ed_bound(333, 50) < 1e-3
    assert random_low_ed_bound(333, 30) < random_low_ed_bound(333, 50)
    with pytest.raises(ValueError):
        random_low_ed_bound(333, 0)


def test_machinery_small_run_clean():
    rep = suite_proof_machinery(32, 30, seed=5)
    assert rep.failures == 0
    assert all(r["compose_ok"] and r["delta_ok"] for r in rep.records)


def test_machinery_exhaustive_notes_vacuous_cases():
    rep = suite_proof_machinery(5, 10, seed=6)
    assert rep.failures == 0
    assert any("vacuous" in note for note in rep.notes)
    assert all("premise" in r for r in rep.records)


def test_machinery_bounds_on_n():
    with pytest.raises(ValueError):
        suite_proof_machinery(65, 1)
    with pytest.raises(ValueError):
        suite_proof_machinery(1, 1)


def test_perturb_produces_proper_excursions():
    rng = derive_rng(31)
    n = 48
    s1 = rng.integers(0, 2, size=n, dtype=np.uint8)
    s2, trace = apply_channel(s1, ChannelParams(0.1, 0.1, 0.3, 0.1, 0.3), rng)
    star = canonical_alignment(trace, n, len(s2))
    p = perturb_alignment(star, rng, block=6)
    assert p != star
    breaks = extract_breaks(p, star, 6)
    assert breaks
    for br, _ in breaks:
        assert br.length >= 1
        assert br.interior.shape[0] >= 1


def test_sbr_range_check_star_is_global_floor_when_premise_holds():
    rng = derive_rng(8)
    n = 5
    s1 = rng.integers(0, 2, size=n, dtype=np.uint8)
    s2, trace = apply_channel(s1, ChannelParams(0.1, 0.1, 0.3, 0.1, 0.3), rng)
    star = canonical_alignment(trace, n, len(s2))
    out = sbr_range_check(s1, np.asarray(s2.bits), star, block=3)
    assert out["ok"]
    assert out["alignments"] == len(list(enumerate_alignments(n, len(s2))))
    assert out["best"] <= out["star_cost"]


def test_run_suite_dispatch():
    assert run_suite("machinery", 8, 2, seed=1).suite == "machinery"
    with pytest.raises(ValueError):
        run_suite("nope", 8, 1)
