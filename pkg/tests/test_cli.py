import json
import time
import xml.etree.ElementTree as ET

import pytest

from editdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_n_zero_prints_empty_line(capsys):
    code, out, _ = run(capsys, "gen", "--n", "0", "--seed", "1")
    assert code == 0 and out == "\n"


def test_gen_deterministic_files(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "gen", "--n", "64", "--seed", "7", "--out", str(a))
    run(capsys, "gen", "--n", "64", "--seed", "7", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_gen_megabit_under_one_second(capsys):
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "gen", "--n", "1048576", "--seed", "3")
    assert code == 0 and len(out.strip()) == 1048576
    assert time.perf_counter() - t0 < 1.0


def test_gen_seed_omitted_prints_seed(capsys):
    code, _, err = run(capsys, "gen", "--n", "4")
    assert code == 0 and err.startswith("seed: ")


def test_mutate_zero_rates_byte_equal(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "gen", "--n", "200", "--seed", "2", "--out", str(src))
    out = tmp_path / "m.txt"
    code, _, _ = run(
        capsys, "mutate", "--in", str(src), "--ps", "0", "--pd", "0",
        "--pi", "0", "--seed", "4", "--out", str(out),
    )
    assert code == 0
    assert out.read_bytes() == src.read_bytes()


def test_mutate_delete_everything(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "gen", "--n", "50", "--seed", "2", "--out", str(src))
    # insertions off: deleted bits still shed their payloads otherwise
    code, out, _ = run(
        capsys, "mutate", "--in", str(src), "--pd", "1", "--pi", "0", "--seed", "4"
    )
    assert code == 0 and out == "\n"


def test_mutate_invalid_probability_exits_2(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "gen", "--n", "10", "--seed", "2", "--out", str(src))
    code, _, err = run(capsys, "mutate", "--in", str(src), "--ps", "1.5", "--seed", "1")
    assert code == 2 and "error" in err


def test_mutate_out_of_bounds_warns(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "gen", "--n", "10", "--seed", "2", "--out", str(src))
    code, _, err = run(capsys, "mutate", "--in", str(src), "--ps", "0.5", "--seed", "1")
    assert code == 0 and "warning" in err


def test_replay_roundtrip_byte_exact(tmp_path, capsys):
    src = tmp_path / "s.txt"
    mut = tmp_path / "m.txt"
    tr = tmp_path / "t.json"
    rep = tmp_path / "r.txt"
    run(capsys, "gen", "--n", "300", "--seed", "11", "--out", str(src))
    run(capsys, "mutate", "--in", str(src), "--seed", "12", "--out", str(mut),
        "--trace", str(tr))
    code, _, _ = run(capsys, "replay", "--in", str(src), "--trace", str(tr),
                     "--out", str(rep))
    assert code == 0
    assert rep.read_bytes() == mut.read_bytes()


@pytest.fixture()
def pair(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "gen", "--n", "400", "--seed", "21", "--out", str(a))
    run(capsys, "mutate", "--in", str(a), "--seed", "22", "--out", str(b))
    return str(a), str(b)


def test_dist_identical_files_all_modes(tmp_path, capsys, pair):
    a, _ = pair
    for mode_flags in (["--mode", "full"], ["--mode", "fast"],
                       ["--mode", "sub-only"], ["--mode", "banded", "--radius", "400"]):
        code, out, _ = run(capsys, "dist", "--a", a, "--b", a, *mode_flags)
        assert code == 0 and out.strip() == "0"


def test_dist_banded_full_rectangle_matches_full(capsys, pair):
    a, b = pair
    _, full_out, _ = run(capsys, "dist", "--a", a, "--b", b, "--mode", "full")
    code, band_out, _ = run(
        capsys, "dist", "--a", a, "--b", b, "--mode", "banded", "--radius", "500"
    )
    assert code == 0 and band_out == full_out


def test_dist_banded_requires_radius(capsys, pair):
    a, b = pair
    code, _, err = run(capsys, "dist", "--a", a, "--b", b, "--mode", "banded")
    assert code == 2 and "radius" in err


def test_dist_disconnected_band_exit_3_then_auto_widen(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "gen", "--n", "120", "--seed", "5", "--out", str(a))
    run(capsys, "gen", "--n", "40", "--seed", "6", "--out", str(b))
    code, _, err = run(capsys, "dist", "--a", str(a), "--b", str(b),
                       "--mode", "banded", "--radius", "3")
    assert code == 3 and "band" in err
    code, out, _ = run(capsys, "dist", "--a", str(a), "--b", str(b),
                       "--mode", "banded", "--radius", "3", "--auto-widen")
    assert code == 0 and int(out) >= 80


def test_dist_json_report_schema(capsys, pair):
    a, b = pair
    code, out, _ = run(capsys, "dist", "--a", a, "--b", b, "--json")
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {
        "cost", "mode", "n1", "n2", "band_cells", "anchor_samples",
        "window_cells", "timings_ms",
    }
    assert rep["mode"] == "fast" and rep["n1"] == 400
    assert rep["timings_ms"]["total_ms"] > 0


def test_dist_emit_alignment_parses_and_costs_match(tmp_path, capsys, pair):
    from editdist.alignment import Alignment, alignment_cost
    from editdist.bitstring import BitString

    a, b = pair
    algn_path = tmp_path / "al.json"
    code, out, _ = run(capsys, "dist", "--a", a, "--b", b,
                       "--emit-alignment", str(algn_path))
    assert code == 0
    algn = Alignment.from_json(algn_path.read_text())
    s1, s2 = BitString.read(a), BitString.read(b)
    assert alignment_cost(algn, s1, s2) == int(out)


def test_verify_zero_trials_empty_report_exit_0(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "tails", "--n", "1024",
                       "--trials", "0", "--seed", "1")
    assert code == 0 and "tails" in out


def test_verify_machinery_writes_junit_and_json(tmp_path, capsys):
    out_json = tmp_path / "rep.json"
    out_xml = tmp_path / "rep.xml"
    code, out, _ = run(
        capsys, "verify", "--suite", "machinery", "--n", "16", "--trials", "3",
        "--seed", "9", "--out", str(out_json), "--junit", str(out_xml),
    )
    assert code == 0
    blobs = json.loads(out_json.read_text())
    assert len(blobs) == 1 and blobs[0]["suite"] == "machinery"
    tree = ET.parse(out_xml)
    suites = tree.getroot().findall("testsuite")
    assert suites and suites[0].get("name") == "machinery"
    assert suites[0].get("failures") == "0"


def test_verify_oracle_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--n", "256",
                       "--trials", "3", "--seed", "2")
    assert code == 0 and "oracle" in out


def test_bench_zero_trials_header_only(capsys):
    code, out, _ = run(capsys, "bench", "--n-list", "256,512", "--trials", "0",
                       "--seed", "1")
    assert code == 0
    assert out.splitlines() == [
        "n,trials,mean_time_ms,mean_band_cells,mean_window_cells,mismatches"
    ]


def test_bench_csv_rows(tmp_path, capsys):
    csv = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--n-list", "256,512", "--trials", "1",
                     "--seed", "1", "--csv", str(csv))
    assert code == 0
    lines = csv.read_text().splitlines()
    assert len(lines) == 3
    assert lines[1].startswith("256,1,") and lines[2].startswith("512,1,")
    # in-range trials compare against the exact oracle: zero mismatches
    assert lines[1].endswith(",0") and lines[2].endswith(",0")


def test_manifest_records_flags_and_digests(tmp_path, capsys):
    src = tmp_path / "s.txt"
    run(capsys, "gen", "--n", "32", "--seed", "2", "--out", str(src))
    gman = json.loads((tmp_path / "s.txt.manifest.json").read_text())
    assert gman["command"] == "gen" and gman["seed"] == 2
    assert gman["flags"]["n"] == 32 and gman["inputs"] == {}
    assert gman["version"]

    out = tmp_path / "m.txt"
    run(capsys, "mutate", "--in", str(src), "--seed", "3", "--out", str(out))
    mman = json.loads((tmp_path / "m.txt.manifest.json").read_text())
    assert list(mman["inputs"]) == [str(src)]
    assert len(mman["inputs"][str(src)]) == 64  # sha256 hex
    assert mman["finished"] >= mman["started"]


def test_unreadable_input_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "dist", "--a", str(tmp_path / "no.txt"),
                       "--b", str(tmp_path / "no.txt"))
    assert code == 2 and "error" in err
