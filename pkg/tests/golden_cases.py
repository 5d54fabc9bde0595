"""Build every golden artifact from scratch.

Run ``python3 tests/golden_cases.py`` to (re)freeze ``tests/golden``; the
tests rebuild the same artifacts and compare bytes.
"""

import contextlib
import io as _io
import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from laycon import io  # noqa: E402
from laycon.cli import main  # noqa: E402
from laycon.dp import solve_exact  # noqa: E402
from laycon.gadgets import flip_drawing  # noqa: E402
from laycon.generate import random_instance  # noqa: E402
from laycon.oracle import brute_force  # noqa: E402
from laycon.reduction import PLANAR_PRUNED, compile_formula, witness  # noqa: E402
from laycon.svg import render_svg  # noqa: E402

from conftest import GOLDEN, three_layer, unit_triangle  # noqa: E402
from formulas import DESK, EXAMPLE, EXAMPLE_ASSIGNMENT  # noqa: E402

# file name -> parser used for the round-trip check (None for SVG)
KINDS = {
    ".instance.json": (io.parse_instance, io.serialize_instance),
    ".witness.json": (io.parse_representation, io.serialize_representation),
    ".formula.json": (io.parse_formula, io.serialize_formula),
    ".assignment.json": (io.parse_assignment, io.serialize_assignment),
    ".report.json": (io.parse_report, lambda r: io.serialize_report(r, timing=False)),
}


def kind(name):
    return next((v for k, v in KINDS.items() if name.endswith(k)), None)


def _cli(args, cwd):
    old = os.getcwd()
    os.chdir(cwd)
    try:
        with contextlib.redirect_stdout(_io.StringIO()):
            code = main(args)
    finally:
        os.chdir(old)
    if code != 0:
        raise RuntimeError(f"laycon {' '.join(args)} exited with {code}")


def build():
    out = {}
    tri = unit_triangle()
    out["unit_triangle.instance.json"] = io.serialize_instance(tri)
    opt, w = brute_force(tri)
    out["unit_triangle.oracle.witness.json"] = io.serialize_representation(w)

    g = three_layer()
    out["three_layer.instance.json"] = io.serialize_instance(g)
    res = solve_exact(g)
    out["three_layer.solve.witness.json"] = io.serialize_representation(res.witness)
    out["three_layer.svg"] = render_svg(g, res.witness)

    out["seed7.instance.json"] = io.serialize_instance(random_instance(3, 2, 3, 7))

    out["example.formula.json"] = io.serialize_formula(EXAMPLE)
    out["example.assignment.json"] = io.serialize_assignment(EXAMPLE_ASSIGNMENT)
    inst = compile_formula(EXAMPLE)
    out["example.instance.json"] = io.serialize_instance(inst.graph)
    out["example.witness.json"] = io.serialize_representation(witness(inst, EXAMPLE_ASSIGNMENT))
    out["example.planar.instance.json"] = io.serialize_instance(compile_formula(EXAMPLE, PLANAR_PRUNED).graph)

    out["x1.formula.json"] = io.serialize_formula(DESK[0])
    out["x1.framed.instance.json"] = io.serialize_instance(compile_formula(DESK[0], framed=True).graph)

    finst, _, flip = flip_drawing(1)
    out["flip.instance.json"] = io.serialize_instance(finst.graph)
    out["flip.witness.json"] = io.serialize_representation(flip)
    out["flip.svg"] = render_svg(finst.graph, flip)

    # reports come from the command line, without timing
    with tempfile.TemporaryDirectory() as d:
        for name in ("three_layer.instance.json", "unit_triangle.instance.json", "example.formula.json",
                     "example.assignment.json"):
            Path(d, name).write_text(out[name])
        _cli(["solve", "three_layer.instance.json", "--no-timing", "--witness", "s.json",
              "--report", "three_layer.solve.report.json"], d)
        _cli(["oracle", "unit_triangle.instance.json", "--no-timing", "--witness", "o.json",
              "--report", "unit_triangle.oracle.report.json"], d)
        _cli(["approx", "three_layer.instance.json", "--with-opt", "--no-timing", "--witness", "a.json",
              "--report", "three_layer.approx.report.json"], d)
        _cli(["ptas", "three_layer.instance.json", "--eps", "0.5", "--with-opt", "--no-timing",
              "--witness", "three_layer.ptas.witness.json", "--report", "three_layer.ptas.report.json"], d)
        _cli(["reduce", "example.formula.json", "-o", "r.json", "--report", "example.reduce.report.json"], d)
        for name in ("three_layer.solve.report.json", "unit_triangle.oracle.report.json",
                     "three_layer.approx.report.json", "three_layer.ptas.report.json",
                     "three_layer.ptas.witness.json", "example.reduce.report.json"):
            out[name] = Path(d, name).read_text()
    return out


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, text in build().items():
        GOLDEN.joinpath(name).write_text(text)
        print(name)
