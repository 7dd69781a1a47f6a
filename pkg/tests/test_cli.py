"""End-to-end CLI runs: generate, solve, evaluate, compare, suites, exit codes."""

import json

import pytest

from robustflow import dumps, rat
from robustflow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_solve_evaluate_roundtrip(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    code, _, _ = run(capsys, "generate", "two-hop", "-o", str(inst))
    assert code == 0
    doc = json.loads(inst.read_text())
    assert doc["source"] == "s" and doc["sink"] == "t"

    result_path = tmp_path / "result.json"
    code, _, _ = run(
        capsys, "solve", str(inst), "--model", "gm", "--gamma", "1", "-o", str(result_path)
    )
    assert code == 0
    result = json.loads(result_path.read_text())
    assert result["robust_value"] == 2
    assert result["nominal_value"] == 3
    assert result["manifest"] == {
        "command": "solve",
        "instance": str(inst),
        "model": "gm",
        "gamma": 1,
        "horizon": None,
        "lex_nominal": False,
    }

    flow_path = tmp_path / "flow.json"
    flow_path.write_text(dumps(result["flow"]))
    code, out, _ = run(capsys, "evaluate", str(inst), str(flow_path), "--gamma", "1")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["feasible"] is True
    assert verdict["robust_value"] == 2


def test_solve_dynamic_roundtrip(tmp_path, capsys):
    inst = tmp_path / "ti.json"
    assert run(capsys, "generate", "ti-gap", "-o", str(inst))[0] == 0
    result_path = tmp_path / "result.json"
    code, _, _ = run(
        capsys, "solve", str(inst), "--model", "dam", "-o", str(result_path)
    )
    assert code == 0
    result = json.loads(result_path.read_text())
    assert result["robust_value"] == 2
    assert result["horizon"] == 2
    flow_path = tmp_path / "flow.json"
    flow_path.write_text(dumps(result["flow"]))
    code, out, _ = run(capsys, "evaluate", str(inst), str(flow_path))
    assert code == 0
    assert json.loads(out)["robust_value"] == 2


def test_generate_rejects_bad_alpha(tmp_path, capsys):
    code, _, err = run(
        capsys, "generate", "por-static", "--gamma", "1", "--alpha", "2",
        "-o", str(tmp_path / "x.json"),
    )
    assert code == 2
    assert "error:" in err


def test_solve_model_instance_mismatch(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    code, _, err = run(capsys, "solve", str(inst), "--model", "dpm")
    assert code == 2
    assert "dynamic instance" in err


def test_evaluate_infeasible_flow_exits_4(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    flow_path = tmp_path / "bad.json"
    flow_path.write_text(
        dumps({"kind": "arc", "timed": False, "entries": [["a1", 100]]})
    )
    code, _, err = run(capsys, "evaluate", str(inst), str(flow_path))
    assert code == 4
    assert "infeasible flow:" in err
    assert "a1" in err


def test_guard_exits_3(tmp_path, capsys, monkeypatch):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    monkeypatch.setenv("ROBUSTFLOW_GUARD_PATHS", "1")
    code, _, err = run(capsys, "solve", str(inst), "--model", "pm")
    assert code == 3
    assert "guard exceeded:" in err


def test_missing_instance_file_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.json"), "--model", "pm")
    assert code == 2
    assert "error:" in err


def test_solve_csv_no_timing_is_deterministic(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code, _, _ = run(
            capsys, "solve", str(inst), "--model", "pm", "--format", "csv",
            "--no-timing", "-o", str(path),
        )
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    lines = outputs[0].decode().strip().split("\n")
    assert lines[0] == "model,robust_value,nominal_value,worst_scenarios"
    assert lines[1] == "pm,3/2,3,{a1} {a2}"


def test_compare_covers_static_models(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    path = tmp_path / "cmp.csv"
    code, _, _ = run(capsys, "compare", str(inst), "--no-timing", "-o", str(path))
    assert code == 0
    lines = path.read_text().strip().split("\n")
    assert [line.split(",")[0] for line in lines] == ["model", "pm", "am", "gm"]
    values = {line.split(",")[0]: line.split(",")[1] for line in lines[1:]}
    assert values == {"pm": "3/2", "am": "4/3", "gm": "2"}


def test_compare_rejects_unknown_model(tmp_path, capsys):
    inst = tmp_path / "two-hop.json"
    run(capsys, "generate", "two-hop", "-o", str(inst))
    code, _, err = run(capsys, "compare", str(inst), "--models", "pm,bogus")
    assert code == 2
    assert "bogus" in err


def test_generate_partition_and_split(tmp_path, capsys):
    inst = tmp_path / "p.json"
    code, _, _ = run(capsys, "generate", "partition", "--b", "1", "1", "-o", str(inst))
    assert code == 0
    doc = json.loads(inst.read_text())
    assert doc["horizon"] == rat(doc["horizon"])  # integer horizon present
    code, _, err = run(capsys, "generate", "partition", "--b", "1", "-o", str(inst))
    assert code == 2
    assert "error:" in err

    split_path = tmp_path / "split.json"
    code, _, _ = run(capsys, "generate", "two-hop", "--split", "-o", str(split_path))
    assert code == 0
    assert len(json.loads(split_path.read_text())["arcs"]) == 12


def test_suite_static_invariants_passes(capsys):
    code, out, _ = run(capsys, "suite", "static-invariants", "--seeds", "2")
    assert code == 0
    assert "PASS" in out
    assert "FAIL" not in out


def test_suite_partition_roundtrip_reports_refutation(capsys):
    code, out, _ = run(capsys, "suite", "partition-roundtrip", "--seeds", "2")
    assert code == 4
    assert "break the subset-sum equivalence" in out
    assert "b=(2, 2, 2) (dpm=1)" in out


def test_suite_conjecture_probe(capsys):
    code, out, _ = run(capsys, "suite", "conjecture-probe", "--seeds", "1")
    assert code == 0
    assert "max observed gm/pm = 15/8 on bottleneck(1,8)" in out
    assert "consistent" in out
