"""Command-line front end: ``laycon <command> ...``.

Exit codes: 0 success or valid, 1 invalid representation or below the target
``k``, 2 malformed or infeasible input, 3 search budget or size limit exceeded.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .approx import ApproxReport, approx_half, approx_ptas, ell_from_eps
from .dp import BudgetExceededError, InvalidInstanceError, solve_exact
from .evaluate import MODELS, Representation, RepresentationError, evaluate
from .formula import FormulaError
from .generate import random_instance
from .model import validate_instance
from .oracle import AUTO, EnumerationCapError, WidthBudgetError, brute_force
from .reduction import VARIANTS, ReductionSizeError, compile_formula, witness
from .svg import render_svg

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "LAYCON_MAX_STATES"


class InputError(Exception):
    pass


def _budget(args) -> Optional[int]:
    if args.budget is not None:
        return args.budget
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, found {raw!r}") from None


def _read(path: str) -> str:
    try:
        return io.read_text(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load_instance(path: str):
    try:
        g = io.parse_instance(_read(path))
    except io.ParseError as e:
        raise InputError(f"{path}: {e}") from None
    problems = validate_instance(g)
    if problems:
        raise InputError(f"{path}: invalid instance: " + "; ".join(map(str, problems[:5])))
    return g


def _base(path: str) -> str:
    """``dir/name`` of ``dir/name.instance.json`` (or any other artifact suffix)."""
    for suffix in (".instance.json", ".formula.json", ".assignment.json", ".json"):
        if path.endswith(suffix):
            return path[: -len(suffix)]
    return path


def _outputs(args, stem: str) -> tuple[Path, Path]:
    base = Path(_base(args.instance)) if getattr(args, "instance", None) else Path(stem)
    w = Path(args.witness) if args.witness else Path(f"{base}.{stem}.witness.json")
    r = Path(args.report) if args.report else Path(f"{base}.{stem}.report.json")
    return w, r


def _emit(args, stem: str, rep: Representation, report: io.RunReport) -> None:
    wpath, rpath = _outputs(args, stem)
    io.write_text(str(wpath), io.serialize_representation(rep))
    io.write_text(str(rpath), io.serialize_report(report, timing=not args.no_timing))
    ratio = f" ratio={report.ratio}" if report.ratio is not None else ""
    print(f"{report.solver}: contacts={report.contacts}{ratio} witness={wpath} report={rpath}")


# -- commands ---------------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _load_instance(args.instance)
    t = time.perf_counter()
    res = solve_exact(g, max_states=_budget(args), width_budget=args.width_budget)
    report = io.RunReport(
        "solve", io.instance_digest(g), "dp", res.contacts, res.contacts, time.perf_counter() - t, res.visited_states
    )
    if args.width_budget is not None:
        report.details["width_budget"] = args.width_budget
    _emit(args, "solve", res.witness, report)
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_instance(args.instance)
    width = AUTO if args.width_budget is None else args.width_budget
    t = time.perf_counter()
    kw = {"cap": _budget(args)} if _budget(args) is not None else {}
    opt, rep = brute_force(g, width, **kw)
    report = io.RunReport("oracle", io.instance_digest(g), "brute-force", opt, opt, time.perf_counter() - t)
    report.details["width_budget"] = width
    _emit(args, "oracle", rep, report)
    return EXIT_OK


def _approx_report(args, g, cmd: str, res: ApproxReport, elapsed: float) -> io.RunReport:
    opt = None
    if args.with_opt:
        opt = solve_exact(g, max_states=_budget(args)).contacts
    report = io.RunReport(cmd, io.instance_digest(g), cmd, res.total_contacts, opt, elapsed)
    report.details.update(
        {
            "ratio_bound": io.rational_to_json(res.ratio_bound),
            "group_contacts": res.group_contacts,
            "chosen_group": res.chosen_group,
        }
    )
    if res.ell is not None:
        report.details["ell"] = res.ell
        report.details["padded_layers"] = res.padded_layers
    return report


def cmd_approx(args) -> int:
    g = _load_instance(args.instance)
    t = time.perf_counter()
    res = approx_half(g, max_states=_budget(args))
    _emit(args, "approx", res.witness, _approx_report(args, g, "approx", res, time.perf_counter() - t))
    return EXIT_OK


def cmd_ptas(args) -> int:
    g = _load_instance(args.instance)
    if (args.l is None) == (args.eps is None):
        raise InputError("give exactly one of --l and --eps")
    if args.l is not None:
        if args.l < 1:
            raise InputError("--l must be >= 1")
        ell = args.l
    else:
        if not (args.eps > 0 and math.isfinite(args.eps)):
            raise InputError("--eps must be a positive number")
        ell = ell_from_eps(args.eps)
    t = time.perf_counter()
    res = approx_ptas(g, ell, max_states=_budget(args))
    report = _approx_report(args, g, "ptas", res, time.perf_counter() - t)
    if args.eps is not None:
        report.details["eps"] = args.eps
    _emit(args, "ptas", res.witness, report)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_instance(args.instance)
    try:
        rep = io.parse_representation(_read(args.representation))
    except io.ParseError as e:
        raise InputError(f"{args.representation}: {e}") from None
    if args.model:
        try:
            rep = rep.as_model(args.model)
        except RepresentationError as e:
            print(f"INVALID: {e}")
            return EXIT_INVALID
    try:
        result = evaluate(g, rep)
    except RepresentationError as e:
        raise InputError(str(e)) from None
    for fa in result.false_adjacencies:
        print(f"INVALID: {fa}")
    for ov in result.order_violations:
        print(f"INVALID: {ov}")
    status = "valid" if result.valid else "invalid"
    below = args.k is not None and result.total_contacts < args.k
    target = f" k={args.k}" if args.k is not None else ""
    print(f"{status}: contacts={result.total_contacts}{target} model={rep.model}")
    if args.report:
        report = io.RunReport("check", io.instance_digest(g), "evaluate", result.total_contacts)
        report.details.update(
            {
                "valid": result.valid,
                "model": rep.model,
                "false_adjacencies": [str(fa) for fa in result.false_adjacencies],
                "order_violations": [str(ov) for ov in result.order_violations],
            }
        )
        if args.k is not None:
            report.details["k"] = args.k
        io.write_text(args.report, io.serialize_report(report, timing=False))
    return EXIT_OK if result.valid and not below else EXIT_INVALID


def cmd_gen_random(args) -> int:
    if args.layers < 1 or args.per_layer < 1 or args.max_width < 1:
        raise InputError("--layers, --per-layer and --max-width must be >= 1")
    g = random_instance(args.layers, args.per_layer, args.max_width, args.seed, args.edge_prob)
    text = io.serialize_instance(g)
    if args.output:
        io.write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_formula(path: str):
    try:
        f = io.parse_formula(_read(path))
        f.validate()
    except (io.ParseError, FormulaError) as e:
        raise InputError(f"{path}: {e}") from None
    return f


def cmd_reduce(args) -> int:
    f = _load_formula(args.formula)
    inst = compile_formula(f, args.variant, args.framed, args.max_vertices)
    text = io.serialize_instance(inst.graph)
    out = args.output or _base(args.formula) + f".{args.variant}.instance.json"
    io.write_text(out, text)
    report = io.RunReport("reduce", io.instance_digest(inst.graph), "reduction", None)
    report.details.update(
        {"k": inst.k, "variant": inst.variant, "framed": inst.framed, "vertices": inst.graph.n, "layers": inst.graph.num_layers}
    )
    if not inst.framed:
        report.details["width_budget"] = inst.width_budget()
    rpath = args.report or _base(out) + ".report.json"
    io.write_text(rpath, io.serialize_report(report, timing=False))
    print(f"instance={out} k={inst.k} vertices={inst.graph.n} layers={inst.graph.num_layers} report={rpath}")
    return EXIT_OK


def cmd_witness(args) -> int:
    f = _load_formula(args.formula)
    try:
        a = io.parse_assignment(_read(args.assignment))
        f.check_assignment(a)
    except (io.ParseError, FormulaError) as e:
        raise InputError(f"{args.assignment}: {e}") from None
    inst = compile_formula(f, args.variant, args.framed, args.max_vertices)
    rep = witness(inst, a)
    result = evaluate(inst.graph, rep)
    out = args.output or _base(args.assignment) + ".witness.json"
    io.write_text(out, io.serialize_representation(rep))
    print(f"witness={out} contacts={result.total_contacts} k={inst.k} unsatisfied={f.unsatisfied(a)} valid={result.valid}")
    return EXIT_OK


def cmd_render(args) -> int:
    g = _load_instance(args.instance)
    try:
        rep = io.parse_representation(_read(args.representation))
    except io.ParseError as e:
        raise InputError(f"{args.representation}: {e}") from None
    io.write_text(args.output, render_svg(g, rep, unit=args.unit))
    print(f"svg={args.output}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="laycon", description="Layered rectangle contact representations.")
    sub = p.add_subparsers(dest="command", required=True)

    def solver(name: str, help: str, fn):
        s = sub.add_parser(name, help=help)
        s.add_argument("instance")
        s.add_argument("--witness", help="witness output path")
        s.add_argument("--report", help="report output path")
        s.add_argument("--budget", type=int, help=f"state budget (default from ${BUDGET_ENV})")
        s.add_argument("--no-timing", action="store_true", help="omit wall-clock time from the report")
        s.set_defaults(fn=fn)
        return s

    s = solver("solve", "exact dynamic program", cmd_solve)
    s.add_argument("--width-budget", type=int, help="confine the drawing to [0, W]")
    s = solver("oracle", "brute-force enumeration (tiny instances)", cmd_oracle)
    s.add_argument("--width-budget", type=int, help="enumeration width (default 2*total width + 1)")
    s = solver("approx", "1/2-approximation from two-layer slices", cmd_approx)
    s.add_argument("--with-opt", action="store_true", help="also solve exactly and report the ratio")
    s = solver("ptas", "(1 - 1/l)-approximation from l-layer slices", cmd_ptas)
    s.add_argument("--l", type=int, help="slice height")
    s.add_argument("--eps", type=float, help="target error; l = ceil(1/eps)")
    s.add_argument("--with-opt", action="store_true", help="also solve exactly and report the ratio")

    s = sub.add_parser("check", help="validate a representation and count contacts")
    s.add_argument("instance")
    s.add_argument("representation")
    s.add_argument("--k", type=int, help="required number of contacts")
    s.add_argument("--model", choices=MODELS, help="coordinate model (default: the file's)")
    s.add_argument("--report", help="report output path")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("gen-random", help="seeded random instance")
    s.add_argument("--layers", type=int, required=True)
    s.add_argument("--per-layer", type=int, required=True)
    s.add_argument("--max-width", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--edge-prob", type=float, default=0.7)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_gen_random)

    for name, fn, help in (
        ("reduce", cmd_reduce, "compile a rectilinear formula into an instance"),
        ("witness", cmd_witness, "canonical drawing of a formula instance for an assignment"),
    ):
        s = sub.add_parser(name, help=help)
        s.add_argument("formula")
        if name == "witness":
            s.add_argument("assignment")
        s.add_argument("--variant", choices=VARIANTS, default=VARIANTS[0])
        s.add_argument("--framed", action="store_true")
        s.add_argument("--max-vertices", type=int, default=200_000)
        s.add_argument("-o", "--output")
        if name == "reduce":
            s.add_argument("--report")
        s.set_defaults(fn=fn)

    s = sub.add_parser("render", help="draw a representation as SVG")
    s.add_argument("instance")
    s.add_argument("representation")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--unit", type=int, default=24, help="pixels per column and layer")
    s.set_defaults(fn=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidInstanceError, WidthBudgetError, FormulaError, RepresentationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, EnumerationCapError, ReductionSizeError) as e:
        print(f"budget: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
