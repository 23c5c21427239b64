"""CLI contract: subcommands, exit codes, deterministic output."""

from __future__ import annotations

import json
import subprocess
import sys

from storagecode.cli import main

from conftest import FIXTURE_DIR

FIG1 = str(FIXTURE_DIR / "fig1.json")
FIG3A = str(FIXTURE_DIR / "fig3a.json")
FIG5A = str(FIXTURE_DIR / "fig5a.json")
FIG6 = str(FIXTURE_DIR / "fig6.json")
FIG7 = str(FIXTURE_DIR / "fig7.json")
FIG8 = str(FIXTURE_DIR / "fig8.json")


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_fig1(capsys):
    code, out, _ = run_cli(["analyze", FIG1], capsys)
    assert code == 0
    report = json.loads(out)
    internal = {
        tuple(sorted((e["edge"]["u"], e["edge"]["v"]))) for e in report["internal_edges"]
    }
    assert ("V2", "V6") in internal


def test_analyze_fig3a_all_one_color(capsys):
    code, out, _ = run_cli(["analyze", FIG3A], capsys)
    assert code == 0
    report = json.loads(out)
    assert all(entry["colors"] == 1 for entry in report["nodes"])


def test_missing_file_exit_2(capsys):
    code, _, err = run_cli(["analyze", "no/such/file.json"], capsys)
    assert code == 2
    assert "error" in err


def test_malformed_graph_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"K": 1, "nodes": ["V1"], "edges": [{"u": "V1", "v": "V1", "w": 1}]}')
    code, _, err = run_cli(["classify", str(bad), "--seed", "1"], capsys)
    assert code == 2
    assert "self-loop" in err


def test_classify_fixtures(capsys):
    code, out, _ = run_cli(["classify", FIG1, "--seed", "1"], capsys)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["class"] == "exact" and verdict["capacity"] == "4/3"

    code, out, _ = run_cli(["classify", FIG6, "--seed", "1"], capsys)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["class"] == "bounds"
    assert verdict["upper"] == "4/3" and verdict["strict_upper"] is True
    assert verdict["rules"] == ["thm3"]

    code, out, _ = run_cli(["classify", str(FIXTURE_DIR / "fig3b.json"), "--seed", "1"], capsys)
    verdict = json.loads(out)
    assert verdict["capacity"] == "3/2"


def test_classify_default_seed_warns(capsys):
    code, out, err = run_cli(["classify", FIG3A], capsys)
    assert code == 0
    assert "seed" in err
    assert json.loads(out)["seed"] == 0


def test_classify_overflow_exit_3_still_emits_verdict(capsys):
    code, out, _ = run_cli(["classify", FIG7, "--seed", "1", "--path-limit", "2"], capsys)
    assert code == 3
    verdict = json.loads(out)
    assert verdict["class"] == "unknown"
    assert "overflow" in verdict["reason"]


def test_construct_verify_roundtrip(tmp_path, capsys):
    code_path = tmp_path / "code.json"
    code, _, err = run_cli(
        ["construct", FIG7, "--rate", "4/3", "--seed", "1", "-o", str(code_path)],
        capsys,
    )
    assert code == 0
    assert "thm4" in err
    payload = json.loads(code_path.read_text())
    assert payload["rule"] == "thm4"

    # verify must accept the emitted code (extra metadata keys are stripped).
    clean = {k: payload[k] for k in ("p", "K", "lw", "lv", "nodes")}
    clean_path = tmp_path / "clean.json"
    clean_path.write_text(json.dumps(clean))
    code, out, _ = run_cli(["verify", FIG7, str(clean_path)], capsys)
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_construct_auto_rate2(capsys):
    code, out, err = run_cli(["construct", FIG3A, "--seed", "1"], capsys)
    assert code == 0
    assert "thm1" in err
    payload = json.loads(out)
    assert payload["lw"] == 2 and payload["lv"] == 1


def test_construct_impossible_rate_exit_4(capsys):
    code, _, err = run_cli(["construct", FIG8, "--rate", "4/3", "--seed", "1"], capsys)
    assert code == 4
    assert "thm2" in err and "thm4" in err


def test_verify_failure_exit_1(tmp_path, capsys):
    g = json.loads((FIXTURE_DIR / "fig3a.json").read_text())
    zero = {
        "p": 5,
        "K": 2,
        "lw": 2,
        "lv": 1,
        "nodes": {n: [[0, 0, 0, 0]] for n in g["nodes"]},
    }
    path = tmp_path / "zero.json"
    path.write_text(json.dumps(zero))
    code, out, _ = run_cli(["verify", FIG3A, str(path)], capsys)
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_mismatch_exit_2(tmp_path, capsys):
    assert main(["construct", FIG5A, "--seed", "1", "-o", str(tmp_path / "c.json")]) == 0
    payload = json.loads((tmp_path / "c.json").read_text())
    clean = {k: payload[k] for k in ("p", "K", "lw", "lv", "nodes")}
    (tmp_path / "clean.json").write_text(json.dumps(clean))
    capsys.readouterr()
    code, _, err = run_cli(["verify", FIG7, str(tmp_path / "clean.json")], capsys)
    assert code == 2
    assert "node sets differ" in err


def test_verify_emit_decoder(tmp_path, capsys):
    assert main(["construct", FIG5A, "--seed", "1", "-o", str(tmp_path / "c.json")]) == 0
    payload = json.loads((tmp_path / "c.json").read_text())
    clean = {k: payload[k] for k in ("p", "K", "lw", "lv", "nodes")}
    (tmp_path / "clean.json").write_text(json.dumps(clean))
    capsys.readouterr()
    code, out, _ = run_cli(
        ["verify", FIG5A, str(tmp_path / "clean.json"), "--emit-decoder"], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert len(report["decoders"]) == len(report["edges"])
    assert all(d["decoder"] is not None for d in report["decoders"])


def test_verify_jobs_output_identical(tmp_path, capsys):
    assert main(["construct", FIG5A, "--seed", "1", "-o", str(tmp_path / "c.json")]) == 0
    payload = json.loads((tmp_path / "c.json").read_text())
    clean = {k: payload[k] for k in ("p", "K", "lw", "lv", "nodes")}
    (tmp_path / "clean.json").write_text(json.dumps(clean))
    capsys.readouterr()
    _, out1, _ = run_cli(["verify", FIG5A, str(tmp_path / "clean.json")], capsys)
    _, out2, _ = run_cli(
        ["verify", FIG5A, str(tmp_path / "clean.json"), "--jobs", "4"], capsys
    )
    assert out1 == out2


def test_oracle_toy_agreement(tmp_path, capsys):
    graph = {
        "K": 2,
        "nodes": ["A", "B"],
        "edges": [{"u": "A", "v": "B", "w": 1}],
    }
    code_doc = {
        "p": 2,
        "K": 2,
        "lw": 2,
        "lv": 1,
        "nodes": {"A": [[1, 0, 0, 0]], "B": [[0, 1, 0, 0]]},
    }
    (tmp_path / "g.json").write_text(json.dumps(graph))
    (tmp_path / "c.json").write_text(json.dumps(code_doc))
    code, out, _ = run_cli(
        ["oracle", str(tmp_path / "g.json"), str(tmp_path / "c.json")], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["agree"] is True
    # An edge that fails both routes still counts as agreement.
    code_doc["nodes"]["B"] = [[0, 0, 0, 1]]
    (tmp_path / "c.json").write_text(json.dumps(code_doc))
    code, out, _ = run_cli(
        ["oracle", str(tmp_path / "g.json"), str(tmp_path / "c.json")], capsys
    )
    assert code == 0
    report = json.loads(out)
    assert report["agree"] is True
    assert report["edges"][0]["rank_criterion"] is False
    assert report["edges"][0]["exhaustive"] is False


def test_oracle_cap_exit_3(tmp_path, capsys):
    assert main(["construct", FIG5A, "--seed", "1", "-o", str(tmp_path / "c.json")]) == 0
    payload = json.loads((tmp_path / "c.json").read_text())
    clean = {k: payload[k] for k in ("p", "K", "lw", "lv", "nodes")}
    (tmp_path / "clean.json").write_text(json.dumps(clean))
    capsys.readouterr()
    code, _, err = run_cli(
        ["oracle", FIG5A, str(tmp_path / "clean.json"), "--oracle-cap", "1000"], capsys
    )
    assert code == 3
    assert "enumerate" in err


def test_byte_identical_reruns(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["classify", FIG5A, "--seed", "7", "-o", str(a)]) == 0
    assert main(["classify", FIG5A, "--seed", "7", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["construct", FIG7, "--seed", "7", "-o", str(a)]) == 0
    assert main(["construct", FIG7, "--seed", "7", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "storagecode.cli", "classify", FIG3A, "--seed", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["capacity"] == "2"
