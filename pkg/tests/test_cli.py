import json
import subprocess
import sys

import pytest

from laycon import io
from laycon.cli import main

from conftest import GOLDEN


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    for name in ("three_layer.instance.json", "example.formula.json", "example.assignment.json", "x1.formula.json"):
        tmp_path.joinpath(name).write_text(GOLDEN.joinpath(name).read_text())
    return tmp_path


def test_gen_random_is_deterministic(work):
    args = ["gen-random", "--layers", "3", "--per-layer", "2", "--max-width", "3", "--seed", "7"]
    assert main(args + ["-o", "a.json"]) == 0
    assert main(args + ["-o", "b.json"]) == 0
    assert (work / "a.json").read_bytes() == (work / "b.json").read_bytes()
    assert (work / "a.json").read_text() == GOLDEN.joinpath("seed7.instance.json").read_text()


def test_solve_writes_witness_and_report(work):
    assert main(["solve", "three_layer.instance.json"]) == 0
    rep = io.parse_report((work / "three_layer.solve.report.json").read_text())
    assert rep.contacts == 12 and rep.wall_time_s is not None and rep.states > 0
    io.parse_representation((work / "three_layer.solve.witness.json").read_text())
    assert main(["check", "three_layer.instance.json", "three_layer.solve.witness.json", "--k", "12"]) == 0
    assert main(["check", "three_layer.instance.json", "three_layer.solve.witness.json", "--k", "13"]) == 1


def test_check_reports_false_adjacency(work, capsys):
    (work / "g.json").write_text(io.serialize_instance(io.instance_from_dict(
        {"format": "laycon.instance/1", "layers": [[{"width": 1}, {"width": 1}]], "edges": []})))
    (work / "r.json").write_text(json.dumps({
        "format": "laycon.representation/1", "model": "integer",
        "positions": [{"layer": 1, "pos": 1, "x": 0}, {"layer": 1, "pos": 2, "x": 1}],
    }))
    assert main(["check", "g.json", "r.json", "--report", "c.json"]) == 1
    assert "(1,1)" in capsys.readouterr().out
    details = io.parse_report((work / "c.json").read_text()).details
    assert details["valid"] is False and len(details["false_adjacencies"]) == 1


def test_check_model_override(work):
    (work / "g.json").write_text(GOLDEN.joinpath("flip.instance.json").read_text())
    (work / "r.json").write_text(GOLDEN.joinpath("flip.witness.json").read_text())
    assert main(["check", "g.json", "r.json"]) == 0
    assert main(["check", "g.json", "r.json", "--model", "integer"]) == 1


def test_ptas_eps_records_ell(work):
    assert main(["ptas", "three_layer.instance.json", "--eps", "0.5", "--no-timing"]) == 0
    rep = io.parse_report((work / "three_layer.ptas.report.json").read_text())
    assert rep.details["ell"] == 2 and rep.wall_time_s is None
    assert main(["ptas", "three_layer.instance.json"]) == 2


def test_approx_and_oracle(work):
    assert main(["approx", "three_layer.instance.json", "--with-opt"]) == 0
    rep = io.parse_report((work / "three_layer.approx.report.json").read_text())
    assert rep.opt == 12 and rep.ratio >= 0.5
    assert main(["oracle", "three_layer.instance.json"]) == 3
    assert main(["oracle", "three_layer.instance.json", "--width-budget", "7"]) == 0


def test_reduce_witness_render(work):
    assert main(["reduce", "example.formula.json", "--variant", "planar"]) == 0
    inst = work / "example.planar.instance.json"
    assert io.parse_instance(inst.read_text()).n == 474
    assert io.parse_report((work / "example.planar.report.json").read_text()).details["k"] == 869
    assert main(["witness", "example.formula.json", "example.assignment.json", "--variant", "planar", "-o", "w.json"]) == 0
    assert main(["check", str(inst), "w.json", "--k", "869"]) == 0
    assert main(["render", str(inst), "w.json", "-o", "w.svg"]) == 0
    assert (work / "w.svg").read_text().startswith("<svg")


def test_framed_reduce_size_guard(work):
    assert main(["reduce", "example.formula.json", "--framed", "--max-vertices", "1000"]) == 3
    assert main(["reduce", "x1.formula.json", "--framed", "-o", "f.json"]) == 0


def test_budget_exit_code(work, monkeypatch):
    assert main(["solve", "three_layer.instance.json", "--budget", "3"]) == 3
    monkeypatch.setenv("LAYCON_MAX_STATES", "3")
    assert main(["solve", "three_layer.instance.json"]) == 3
    assert main(["solve", "three_layer.instance.json", "--budget", "100000"]) == 0
    monkeypatch.setenv("LAYCON_MAX_STATES", "lots")
    assert main(["solve", "three_layer.instance.json"]) == 2


def test_input_errors(work, capsys):
    assert main(["solve", "missing.json"]) == 2
    (work / "bad.json").write_text('{"format": "laycon.instance/1",\n "layers": [[{"width": "x"}]], "edges": []}')
    assert main(["solve", "bad.json"]) == 2
    assert "layers[0][0].width" in capsys.readouterr().err
    (work / "cross.json").write_text(json.dumps({
        "format": "laycon.instance/1", "layers": [[{"width": 1}, {"width": 1}], [{"width": 1}, {"width": 1}]],
        "edges": [[[1, 1], [2, 2]], [[1, 2], [2, 1]]],
    }))
    assert main(["solve", "cross.json"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["--help"]) == 0


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "laycon.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "gen-random" in out.stdout
