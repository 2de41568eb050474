from __future__ import annotations

import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from layercoord.cli import EXIT_INPUT, EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, main
from layercoord.generators import double_shift_instance, staircase_instance
from layercoord.io import dumps_graph

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_NAMES = ("staircase", "double_shift", "symmetric", "random_normalized")
VARIANTS = {
    "balanced": [],
    "ul": ["--orientations", "ul"],
    "ul-legacy": ["--orientations", "ul", "--strategy", "legacy-buggy"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def graph_file(tmp_path):
    def write(graph, name="g.json"):
        path = tmp_path / name
        path.write_text(dumps_graph(graph))
        return str(path)

    return write


def test_minimal_graph_is_one_block(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text('{"layers": [["a"], ["c"]], "edges": [["a", "c"]]}')
    code, out, _ = run(capsys, "assign", "-i", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["coordinates"] == {"a": 0.0, "c": 0.0}


def test_legacy_output_is_flagged(graph_file, capsys):
    code, out, err = run(capsys, "assign", "-i", graph_file(staircase_instance()), "--strategy", "legacy-buggy")
    assert code == EXIT_OK
    assert json.loads(out)["metadata"]["conforming"] is False
    assert "non-conforming" in err


@pytest.mark.parametrize("name", GOLDEN_NAMES)
@pytest.mark.parametrize("variant", VARIANTS)
def test_golden_files_are_reproduced_byte_for_byte(name, variant, capsys):
    graph = str(GOLDEN / f"{name}.graph.json")
    code, out, _ = run(capsys, "assign", "-i", graph, *VARIANTS[variant])
    assert code == EXIT_OK
    assert out == (GOLDEN / f"{name}.{variant}.json").read_text()


def test_output_file_and_stdin(graph_file, tmp_path, capsys, monkeypatch):
    import io

    target = tmp_path / "out.json"
    path = graph_file(staircase_instance())
    code, out, _ = run(capsys, "assign", "-i", path, "-o", str(target))
    assert code == EXIT_OK and out == ""
    monkeypatch.setattr(sys, "stdin", io.StringIO(Path(path).read_text()))
    code, out, _ = run(capsys, "assign")
    assert out == target.read_text()


def test_delta_override(graph_file, capsys):
    code, out, _ = run(capsys, "assign", "-i", graph_file(staircase_instance()), "--delta", "2", "--orientations", "ul")
    doc = json.loads(out)
    assert doc["metadata"]["delta"] == 2.0
    assert doc["coordinates"]["c2"] == 2.0


def test_check_accepts_corrected_output(graph_file, tmp_path, capsys):
    graph = graph_file(staircase_instance())
    for extra in ([], ["--orientations", "ul"], ["--strategy", "neighborlist"]):
        coords = tmp_path / "c.json"
        run(capsys, "assign", "-i", graph, "-o", str(coords), *extra)
        code, out, _ = run(capsys, "check", str(coords), "-i", graph)
        assert code == EXIT_OK
        assert json.loads(out) == {"ok": True, "problems": []}


def test_check_rejects_legacy_staircase(graph_file, tmp_path, capsys):
    graph = graph_file(staircase_instance())
    coords = tmp_path / "c.json"
    run(capsys, "assign", "-i", graph, "-o", str(coords), "--orientations", "ul", "--strategy", "legacy-buggy")
    code, out, err = run(capsys, "check", str(coords), "-i", graph)
    assert code == EXIT_VIOLATION
    problems = json.loads(out)["problems"]
    assert {"kind": "separation", "ids": ["a2", "bx"]} == {k: problems[0][k] for k in ("kind", "ids")}
    assert "separation" in err


def test_check_reports_block_breaks(graph_file, tmp_path, capsys):
    graph = graph_file(double_shift_instance())
    coords = tmp_path / "c.json"
    run(capsys, "assign", "-i", graph, "-o", str(coords), "--orientations", "ul")
    doc = json.loads(coords.read_text())
    # still left of e by more than delta, but off its block
    doc["coordinates"]["c2"] = 0.5
    coords.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "check", str(coords), "-i", graph)
    assert code == EXIT_VIOLATION
    assert {p["kind"] for p in json.loads(out)["problems"]} == {"block"}


def test_check_with_missing_vertex_is_an_input_error(graph_file, tmp_path, capsys):
    coords = tmp_path / "c.json"
    coords.write_text('{"coordinates": {"a": 0.0}}')
    code, out, err = run(capsys, "check", str(coords), "-i", graph_file(staircase_instance()))
    assert code == EXIT_INPUT and out == ""
    assert "missing" in err


def test_exit_codes_for_bad_input(tmp_path, capsys):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{")
    invalid = tmp_path / "invalid.json"
    invalid.write_text('{"layers": [["a"], [], ["b"]], "edges": [["a", "b"]]}')
    assert run(capsys, "assign", "-i", str(bad_json))[0] == EXIT_INPUT
    assert run(capsys, "assign", "-i", str(tmp_path / "absent.json"))[0] == EXIT_INPUT
    code, out, err = run(capsys, "assign", "-i", str(invalid))
    assert code == EXIT_INVALID and out == ""
    assert "non_neighboring_edge" in err


def test_usage_errors_exit_with_input_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["assign", "--orientations", "xx"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main(["assign", "--strategy", "fast"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_INPUT


def test_validate_command(tmp_path, capsys):
    ok = tmp_path / "ok.json"
    ok.write_text('{"layers": [["a"], ["b"]], "edges": [["a", "b"]]}')
    dup = tmp_path / "dup.json"
    dup.write_text('{"layers": [["a"], ["a"]]}')
    code, out, _ = run(capsys, "validate", "-i", str(ok))
    assert code == EXIT_OK and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "validate", "-i", str(dup))
    assert code == EXIT_INVALID
    assert json.loads(out)["violations"][0]["code"] == "duplicate_vertex"


def test_diff_on_crafted_instances(graph_file, capsys):
    code, out, _ = run(capsys, "diff", "-i", graph_file(double_shift_instance()), "--orientations", "ul")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["classification"] == "double_shift"
    assert report["reports"][0]["excess"] == {"c2": 1.0}
    code, out, _ = run(capsys, "diff", "-i", graph_file(staircase_instance()))
    assert json.loads(out)["classification"] == "missing_accumulation"


def test_diff_on_a_seeded_corpus(capsys):
    code, out, _ = run(capsys, "diff", "--seed", "3", "--count", "5")
    assert code == EXIT_OK
    data = json.loads(out)
    assert sum(data["summary"].values()) == 5
    assert run(capsys, "diff", "--seed", "3", "--count", "5")[1] == out
    assert run(capsys, "diff")[0] == EXIT_INPUT


def test_svg_command(graph_file, tmp_path, capsys):
    graph = graph_file(staircase_instance())
    code, out, _ = run(capsys, "svg", "-i", graph, "--orientations", "ul", "--overlays")
    assert code == EXIT_OK
    root = ET.fromstring(out)
    hulls = [e for e in root.iter() if e.get("class") == "class-hull"]
    assert len(hulls) == 3
    coords = tmp_path / "c.json"
    run(capsys, "assign", "-i", graph, "-o", str(coords))
    code, out, _ = run(capsys, "svg", "-i", graph, "--coords", str(coords))
    assert code == EXIT_OK and ET.fromstring(out) is not None
    coords.write_text('{"coordinates": {}}')
    assert run(capsys, "svg", "-i", graph, "--coords", str(coords))[0] == EXIT_INPUT


def test_module_entry_point(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(dumps_graph(staircase_instance()))
    proc = subprocess.run(
        [sys.executable, "-m", "layercoord", "assign", "-i", str(path)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "staircase.balanced.json").read_text()
