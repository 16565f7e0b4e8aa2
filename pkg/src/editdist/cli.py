"""Command-line surface: generate, mutate, replay, dist, verify, bench.

One binary with subcommands. Every file artifact gets a sibling
``<path>.manifest.json`` recording the command, flags, master seed, tool
version, and input digests, so identical manifests imply byte-identical
outputs. Exit codes: 0 success, 2 usage or parameter error, 3 disconnected
band, 4 verification failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import secrets
import sys
import time
import xml.etree.ElementTree as ET

import numpy as np

from . import __version__, dp
from .bitstring import BitString
from .channel import (
    DEFAULT_BOUNDS,
    ChannelParams,
    EditTrace,
    apply_channel,
    replay_trace,
    sample_source,
)
from .pipeline import PipelineConfig, edit_distance_fast, scaling_benchmark
from .verify import run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISCONNECTED = 3
EXIT_SUITE_FAILED = 4


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    seed = secrets.randbits(63)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _write_manifest(artifact: str, command: str, args, seed: int, inputs: list, t0: float):
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "seed") and not k.startswith("_")
    }
    manifest = {
        "command": command,
        "flags": flags,
        "seed": seed,
        "version": __version__,
        "inputs": {p: _digest(p) for p in inputs},
        "started": t0,
        "finished": time.time(),
    }
    with open(f"{artifact}.manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_gen(args) -> int:
    t0 = time.time()
    seed = _resolve_seed(args)
    s = sample_source(args.n, seed)
    if args.out:
        s.write(args.out)
        _write_manifest(args.out, "gen", args, seed, [], t0)
    else:
        print(s.to_text())
    return EXIT_OK


def cmd_mutate(args) -> int:
    t0 = time.time()
    seed = _resolve_seed(args)
    s1 = BitString.read(args.infile)
    # Default q_d tracks p_d upward so raising --pd alone stays valid.
    qd = max(0.2032, args.pd) if args.qd is None else args.qd
    try:
        params = ChannelParams(args.ps, args.pd, qd, args.pi, args.qi)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not DEFAULT_BOUNDS.admits(params):
        print("warning: channel rates exceed the default bounds", file=sys.stderr)
    s2, trace = apply_channel(s1, params, seed)
    if args.out:
        s2.write(args.out)
        _write_manifest(args.out, "mutate", args, seed, [args.infile], t0)
    else:
        print(s2.to_text())
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(trace.to_json())
            fh.write("\n")
        _write_manifest(args.trace, "mutate", args, seed, [args.infile], t0)
    return EXIT_OK


def cmd_replay(args) -> int:
    t0 = time.time()
    s1 = BitString.read(args.infile)
    with open(args.trace) as fh:
        trace = EditTrace.from_json(fh.read())
    s2 = replay_trace(s1, trace)
    if args.out:
        s2.write(args.out)
        _write_manifest(args.out, "replay", args, 0, [args.infile, args.trace], t0)
    else:
        print(s2.to_text())
    return EXIT_OK


def _dist_full(a, b):
    cost, algn = dp.edit_distance_full(a, b)
    cells = (len(a) + 1) * (len(b) + 1)
    return cost, algn, {"band_cells": cells, "anchor_samples": 0, "window_cells": 0}


def _dist_banded(a, b, radius: int, auto_widen: bool):
    n1, n2 = len(a), len(b)
    r = radius
    while True:
        try:
            band = dp.diagonal_band(n1, n2, r)
            cost, algn = dp.edit_distance_banded(a, b, band)
            break
        except (ValueError, dp.DisconnectedBandError):
            if not auto_widen or r >= max(n1, n2):
                raise dp.DisconnectedBandError(
                    f"band radius {r} disconnects the lattice"
                ) from None
            r *= 2
    return cost, algn, {
        "band_cells": int(band.area()),
        "anchor_samples": 0,
        "window_cells": 0,
        "radius": r,
    }


def cmd_dist(args) -> int:
    t0 = time.time()
    a = BitString.read(args.a)
    b = BitString.read(args.b)
    bounds = dataclasses.replace(DEFAULT_BOUNDS, k=args.k)
    t_start = time.perf_counter()
    try:
        if args.mode == "full":
            cost, algn, extra = _dist_full(a, b)
        elif args.mode == "banded":
            if args.radius is None or args.radius < 0:
                print("error: --mode banded requires --radius >= 0", file=sys.stderr)
                return EXIT_USAGE
            cost, algn, extra = _dist_banded(a, b, args.radius, args.auto_widen)
        else:
            mode = "general" if args.mode == "fast" else "substitution_only"
            cfg = PipelineConfig(
                bounds=bounds, k2=args.k2, mode=mode, auto_widen=args.auto_widen
            )
            cost, algn, report = edit_distance_fast(a, b, cfg)
            extra = {k: report[k] for k in ("band_cells", "anchor_samples", "window_cells")}
    except dp.DisconnectedBandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = (time.perf_counter() - t_start) * 1e3
    if args.json:
        report = {
            "cost": int(cost),
            "mode": args.mode,
            "n1": len(a),
            "n2": len(b),
            "band_cells": int(extra.get("band_cells", 0)),
            "anchor_samples": int(extra.get("anchor_samples", 0)),
            "window_cells": int(extra.get("window_cells", 0)),
            "timings_ms": {"total_ms": elapsed_ms},
        }
        print(json.dumps(report))
    else:
        print(int(cost))
    if args.emit_alignment:
        with open(args.emit_alignment, "w") as fh:
            fh.write(algn.to_json())
            fh.write("\n")
        _write_manifest(args.emit_alignment, "dist", args, 0, [args.a, args.b], t0)
    return EXIT_OK


def _junit(reports, path: str) -> None:
    suites = ET.Element("testsuites")
    for rep in reports:
        su = ET.SubElement(
            suites,
            "testsuite",
            name=rep.suite,
            tests=str(max(len(rep.records), 1)),
            failures=str(rep.failures),
            time=f"{rep.wall_s:.3f}",
        )
        for i, rec in enumerate(rep.records):
            name = rec.get("check", f"trial-{i}")
            case = ET.SubElement(su, "testcase", name=str(name))
            if not rec["ok"]:
                fail = ET.SubElement(case, "failure", message="check failed")
                fail.text = json.dumps(rec)
    tree = ET.ElementTree(suites)
    ET.indent(tree)
    tree.write(path, encoding="unicode", xml_declaration=True)


def cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    names = ["oracle", "tails", "machinery"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        n = min(args.n, 64) if name == "machinery" else args.n
        rep = run_suite(name, n, args.trials, seed=seed)
        reports.append(rep)
        print(rep.summary())
        for rec in rep.failure_records()[:10]:
            print(f"  failure: {json.dumps(rec)}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("[" + ",".join(r.to_json() for r in reports) + "]\n")
    if args.junit:
        _junit(reports, args.junit)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_SUITE_FAILED


def cmd_bench(args) -> int:
    seed = _resolve_seed(args)
    n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    cfg = PipelineConfig()
    rows = scaling_benchmark(n_list, args.trials, cfg, seed=seed)
    header = "n,trials,mean_time_ms,mean_band_cells,mean_window_cells,mismatches"
    lines = [header]
    for row in rows:
        mism = "" if row["mismatches"] is None else str(row["mismatches"])
        lines.append(
            f"{row['n']},{row['trials']},{row['mean_time_ms']:.3f},"
            f"{row['mean_band_cells']:.1f},{row['mean_window_cells']:.1f},{mism}"
        )
    text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = any((row["mismatches"] or 0) > 0 for row in rows)
    return EXIT_SUITE_FAILED if bad else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="editdist",
        description="Edit distance on indel-channel pairs: exact, banded, and near-linear.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="sample a uniform random bitstring")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("mutate", help="run a bitstring through the indel channel")
    m.add_argument("--in", dest="infile", required=True)
    m.add_argument("--ps", type=float, default=0.01)
    m.add_argument("--pd", type=float, default=0.004)
    m.add_argument("--qd", type=float, default=None)
    m.add_argument("--pi", type=float, default=0.004)
    m.add_argument("--qi", type=float, default=0.2)
    m.add_argument("--seed", type=int, default=None)
    m.add_argument("--out", default=None)
    m.add_argument("--trace", default=None)
    m.set_defaults(func=cmd_mutate)

    r = sub.add_parser("replay", help="re-apply a recorded edit trace")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--trace", required=True)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_replay)

    d = sub.add_parser("dist", help="edit distance between two bitstring files")
    d.add_argument("--a", required=True)
    d.add_argument("--b", required=True)
    d.add_argument(
        "--mode", choices=("full", "banded", "fast", "sub-only"), default="fast"
    )
    d.add_argument("--k", type=float, default=DEFAULT_BOUNDS.k)
    d.add_argument("--k2", type=float, default=None)
    d.add_argument("--radius", type=int, default=None)
    d.add_argument("--auto-widen", action="store_true")
    d.add_argument("--emit-alignment", default=None)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument(
        "--suite", choices=("oracle", "tails", "machinery", "all"), default="all"
    )
    v.add_argument("--n", type=int, default=4096)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--out", default=None)
    v.add_argument("--junit", default=None)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="scaling benchmark over a list of sizes")
    b.add_argument("--n-list", required=True)
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--csv", default=None)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
