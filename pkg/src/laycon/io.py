"""Canonical JSON files for instances, representations, formulas, assignments and run reports.

Every file is an object with a ``format`` tag. Serialization is canonical:
fixed key order, sorted edges and positions, one list item per line for the
bulky arrays, and a trailing newline, so equal objects give equal bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

from .evaluate import INTEGER, MODELS, Representation
from .formula import POLARITIES, Clause, RectilinearFormula
from .model import LayeredGraph, VertexRef

INSTANCE_FORMAT = "laycon.instance/1"
REPRESENTATION_FORMAT = "laycon.representation/1"
FORMULA_FORMAT = "laycon.formula/1"
ASSIGNMENT_FORMAT = "laycon.assignment/1"
REPORT_FORMAT = "laycon.report/1"


class ParseError(ValueError):
    """Malformed file; ``where`` is ``line L, column C`` or a field path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# -- low-level helpers ------------------------------------------------------------------------


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}", e.msg) from None


def _dump(obj: Mapping[str, Any], spread: tuple[str, ...] = ()) -> str:
    """Top-level keys one per line; lists named in ``spread`` get one item per line."""
    lines = []
    for k, v in obj.items():
        key = json.dumps(k)
        if k in spread and isinstance(v, list) and v:
            items = ",\n".join("    " + json.dumps(x, separators=(", ", ": ")) for x in v)
            lines.append(f"  {key}: [\n{items}\n  ]")
        else:
            lines.append(f"  {key}: {json.dumps(v, separators=(', ', ': '))}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _obj(data: Any, fmt: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError("$", "expected a JSON object")
    got = data.get("format")
    if got != fmt:
        raise ParseError("format", f"expected {fmt!r}, found {got!r}")
    return data


def _field(data: dict, name: str, path: str = "") -> Any:
    if name not in data:
        raise ParseError(path + name, "missing field")
    return data[name]


def _int(x: Any, where: str, lo: Optional[int] = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(where, f"expected an integer, found {json.dumps(x)}")
    if lo is not None and x < lo:
        raise ParseError(where, f"must be >= {lo}, found {x}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise ParseError(where, f"expected a list, found {json.dumps(x)}")
    return x


def _str(x: Any, where: str) -> str:
    if not isinstance(x, str):
        raise ParseError(where, f"expected a string, found {json.dumps(x)}")
    return x


def rational_to_json(q: Union[int, Fraction]) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def rational_from_json(x: Any, where: str) -> Fraction:
    """``[num, den]`` with ``den != 0``; the result is in lowest terms with ``den > 0``."""
    if not (isinstance(x, list) and len(x) == 2):
        raise ParseError(where, f"expected a rational [num, den], found {json.dumps(x)}")
    num, den = _int(x[0], where + "[0]"), _int(x[1], where + "[1]")
    if den == 0:
        raise ParseError(where + "[1]", "zero denominator")
    return Fraction(num, den)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# -- instances --------------------------------------------------------------------------------


def instance_to_dict(g: LayeredGraph) -> dict:
    layers = []
    for i, layer in enumerate(g.widths):
        items = []
        for j, w in enumerate(layer):
            item: dict[str, Any] = {"width": w}
            if g.labels is not None:
                item["label"] = g.labels[i][j]
            items.append(item)
        layers.append(items)
    return {
        "format": INSTANCE_FORMAT,
        "layers": layers,
        "edges": [[list(u), list(v)] for u, v in sorted(g.edges)],
    }


def serialize_instance(g: LayeredGraph) -> str:
    return _dump(instance_to_dict(g), spread=("layers", "edges"))


def instance_digest(g: LayeredGraph) -> str:
    return _digest(serialize_instance(g))


def _vertex(x: Any, where: str) -> tuple[int, int]:
    if not (isinstance(x, list) and len(x) == 2):
        raise ParseError(where, f"expected a vertex [layer, pos], found {json.dumps(x)}")
    return _int(x[0], where + "[0]", 1), _int(x[1], where + "[1]", 1)


def instance_from_dict(data: Any) -> LayeredGraph:
    data = _obj(data, INSTANCE_FORMAT)
    widths: list[list[int]] = []
    labels: list[list[Optional[str]]] = []
    for i, layer in enumerate(_list(_field(data, "layers"), "layers")):
        ws, ls = [], []
        for j, item in enumerate(_list(layer, f"layers[{i}]")):
            where = f"layers[{i}][{j}]"
            if not isinstance(item, dict):
                raise ParseError(where, "expected an object {width, label}")
            ws.append(_int(_field(item, "width", where + "."), where + ".width", 1))
            ls.append(_str(item["label"], where + ".label") if "label" in item else None)
        widths.append(ws)
        labels.append(ls)
    flat = [x for layer in labels for x in layer]
    if any(x is None for x in flat) and any(x is not None for x in flat):
        raise ParseError("layers", "either every vertex has a label or none does")
    edges = []
    for n, e in enumerate(_list(_field(data, "edges"), "edges")):
        where = f"edges[{n}]"
        if not (isinstance(e, list) and len(e) == 2):
            raise ParseError(where, "expected an edge [[layer, pos], [layer, pos]]")
        u, v = _vertex(e[0], where + "[0]"), _vertex(e[1], where + "[1]")
        for k, (layer, pos) in enumerate((u, v)):
            if layer > len(widths) or pos > len(widths[layer - 1]):
                raise ParseError(f"{where}[{k}]", f"no vertex ({layer},{pos}) in the instance")
        edges.append((u, v))
    has_labels = bool(flat) and flat[0] is not None
    return LayeredGraph(widths, edges, labels if has_labels else None)


def parse_instance(text: str) -> LayeredGraph:
    return instance_from_dict(_load(text))


# -- representations --------------------------------------------------------------------------


def representation_to_dict(r: Representation) -> dict:
    enc = (lambda x: x) if r.model == INTEGER else rational_to_json
    pos = [{"layer": v.layer, "pos": v.pos, "x": enc(x)} for v, x in sorted(r.positions.items())]
    return {"format": REPRESENTATION_FORMAT, "model": r.model, "positions": pos}


def serialize_representation(r: Representation) -> str:
    return _dump(representation_to_dict(r), spread=("positions",))


def representation_from_dict(data: Any) -> Representation:
    data = _obj(data, REPRESENTATION_FORMAT)
    model = _field(data, "model")
    if model not in MODELS:
        raise ParseError("model", f"expected one of {list(MODELS)}, found {json.dumps(model)}")
    positions: dict[VertexRef, Union[int, Fraction]] = {}
    for n, item in enumerate(_list(_field(data, "positions"), "positions")):
        where = f"positions[{n}]"
        if not isinstance(item, dict):
            raise ParseError(where, "expected an object {layer, pos, x}")
        v = VertexRef(
            _int(_field(item, "layer", where + "."), where + ".layer", 1),
            _int(_field(item, "pos", where + "."), where + ".pos", 1),
        )
        if v in positions:
            raise ParseError(where, f"duplicate vertex {v}")
        x = _field(item, "x", where + ".")
        if model == INTEGER:
            positions[v] = _int(x, where + ".x")
        elif isinstance(x, list):
            positions[v] = rational_from_json(x, where + ".x")
        else:
            positions[v] = _int(x, where + ".x")
    return Representation(positions, model)


def parse_representation(text: str) -> Representation:
    return representation_from_dict(_load(text))


# -- formulas and assignments -----------------------------------------------------------------


def formula_to_dict(f: RectilinearFormula) -> dict:
    return {
        "format": FORMULA_FORMAT,
        "variables": list(f.variables),
        "clauses": [{"literals": list(c.literals), "polarity": c.polarity, "depth": c.depth} for c in f.clauses],
    }


def serialize_formula(f: RectilinearFormula) -> str:
    return _dump(formula_to_dict(f), spread=("clauses",))


def formula_from_dict(data: Any) -> RectilinearFormula:
    data = _obj(data, FORMULA_FORMAT)
    names = _list(_field(data, "variables"), "variables")
    variables = [_str(x, f"variables[{i}]") for i, x in enumerate(names)]
    clauses = []
    for n, c in enumerate(_list(_field(data, "clauses"), "clauses")):
        where = f"clauses[{n}]"
        if not isinstance(c, dict):
            raise ParseError(where, "expected an object")
        lits = _list(_field(c, "literals", where + "."), where + ".literals")
        lits = [_str(x, f"{where}.literals[{i}]") for i, x in enumerate(lits)]
        polarity = _field(c, "polarity", where + ".")
        if polarity not in POLARITIES:
            raise ParseError(where + ".polarity", f"expected one of {list(POLARITIES)}, found {json.dumps(polarity)}")
        depth = _int(_field(c, "depth", where + "."), where + ".depth", 1)
        clauses.append(Clause(lits, polarity, depth))
    return RectilinearFormula(variables, clauses)


def parse_formula(text: str) -> RectilinearFormula:
    return formula_from_dict(_load(text))


def serialize_assignment(a: Mapping[str, bool]) -> str:
    return _dump({"format": ASSIGNMENT_FORMAT, "values": dict(a)})


def parse_assignment(text: str) -> dict[str, bool]:
    data = _obj(_load(text), ASSIGNMENT_FORMAT)
    values = _field(data, "values")
    if not isinstance(values, dict):
        raise ParseError("values", "expected an object of name: true|false")
    for k, v in values.items():
        if not isinstance(v, bool):
            raise ParseError(f"values.{k}", f"expected true or false, found {json.dumps(v)}")
    return dict(values)


# -- run reports ------------------------------------------------------------------------------

TIMING_FIELDS = ("wall_time_s",)


@dataclass
class RunReport:
    command: str
    instance_digest: str
    solver: str
    contacts: Optional[int]
    opt: Optional[int] = None
    wall_time_s: Optional[float] = None
    states: Optional[int] = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.opt is None or self.contacts is None:
            return None
        return Fraction(self.contacts, self.opt) if self.opt else Fraction(1)

    def to_dict(self, timing: bool = True) -> dict:
        out: dict[str, Any] = {
            "format": REPORT_FORMAT,
            "command": self.command,
            "instance_digest": self.instance_digest,
            "solver": self.solver,
            "contacts": self.contacts,
        }
        if self.opt is not None:
            out["opt"] = self.opt
            out["ratio"] = rational_to_json(self.ratio)
        if self.states is not None:
            out["states"] = self.states
        out["details"] = {k: self.details[k] for k in sorted(self.details)}
        if timing and self.wall_time_s is not None:
            out["wall_time_s"] = round(self.wall_time_s, 6)
        return out


def serialize_report(r: RunReport, timing: bool = True) -> str:
    return _dump(r.to_dict(timing))


def parse_report(text: str) -> RunReport:
    data = _obj(_load(text), REPORT_FORMAT)
    contacts = _field(data, "contacts")
    if contacts is not None:
        contacts = _int(contacts, "contacts")
    opt = _int(data["opt"], "opt") if "opt" in data else None
    if ("ratio" in data) != (opt is not None):
        raise ParseError("ratio", "ratio must be present exactly when opt is")
    if opt is not None and contacts is not None:
        ratio = rational_from_json(data["ratio"], "ratio")
        if ratio != (Fraction(contacts, opt) if opt else 1):
            raise ParseError("ratio", "does not equal contacts / opt")
    details = _field(data, "details")
    if not isinstance(details, dict):
        raise ParseError("details", "expected an object")
    wall = data.get("wall_time_s")
    if wall is not None and not isinstance(wall, (int, float)):
        raise ParseError("wall_time_s", "expected a number")
    states = _int(data["states"], "states", 0) if "states" in data else None
    return RunReport(
        _str(_field(data, "command"), "command"),
        _str(_field(data, "instance_digest"), "instance_digest"),
        _str(_field(data, "solver"), "solver"),
        contacts,
        opt,
        wall,
        states,
        details,
    )


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
