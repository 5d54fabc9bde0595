"""Compile rectilinear monotone 3-SAT formulas into contact-maximisation instances.

Geometry (all widths in grid columns):

* every variable owns a block of *tracks*; a track is a tunnel of width 6
  between two walls of width 3 (three unit rectangles per layer), so a track
  is 12 columns wide and neighbouring tracks sit flush against each other;
* the variable gadget occupies the two central layers of its first track:
  five unit rectangles above, widths 2, 1, 2 below, with no edge between the
  two middle rectangles, so the single free column of the two rows must sit
  on opposite sides;
* above (positive side) and below (negative side) the value is carried by
  alternating rows and read by a width-3 *reader* on top of a track; on each
  side a reader flush with the left wall means "this side's literal is true";
* a split gadget copies a track into the next track to the right through a
  width-8 bar that replaces the two walls between them on one layer;
* a clause gadget puts a width-2 slider into the corridor above its literal
  readers, between two caps continuing the outer walls, under a ceiling row
  ``l1 l2 t1 b1 t2 b2 t3 b3 r1 r2``.

Heights are counted per side from the variable row outward (``h >= 1``);
the negative side is the positive construction mirrored vertically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .evaluate import Representation, evaluate
from .formula import NEGATIVE, POSITIVE, Clause, FormulaError, RectilinearFormula
from .model import Edge, LayeredGraph, VertexRef, make_edge

TRIANGULATED = "triangulated"
PLANAR_PRUNED = "planar"
VARIANTS = (TRIANGULATED, PLANAR_PRUNED)

WALL = 3
TUNNEL = 6
TRACK = 2 * WALL + TUNNEL
READER_WIDTH = 3
SLIDER_WIDTH = 2
BAR_WIDTH = 8
T_WIDTH = 2

# row shapes inside a tunnel: (names, widths, x when the side's literal is true, x when false)
V_ROW = (("v_l1", "v_l2", "v_m", "v_r2", "v_r1"), (1, 1, 1, 1, 1), (0, 1, 2, 4, 5), (0, 1, 3, 4, 5))
U_ROW = (("u_l", "u_m", "u_r"), (2, 1, 2), (0, 2, 4), (0, 3, 4))

DEFAULT_MAX_VERTICES = 200_000


class ReductionSizeError(ValueError):
    pass


Signal = tuple[str, str]  # (variable, side)


def signal_value(sig: Signal, assignment: Mapping[str, bool]) -> bool:
    var, side = sig
    return assignment[var] if side == POSITIVE else not assignment[var]


@dataclass
class _Node:
    level: int
    width: int
    x_true: int
    x_false: int
    signal: Optional[Signal]
    tag: str
    name: str
    slots: tuple[int, ...] = ()  # slider only: every position it may take

    def place(self, assignment: Mapping[str, bool]) -> int:
        if self.signal is None:
            return self.x_true
        return self.x_true if signal_value(self.signal, assignment) else self.x_false

    def candidates(self) -> list[tuple[dict[str, bool], int]]:
        """(partial assignment, x) pairs covering every canonical position."""
        if self.slots:
            return [({}, x) for x in self.slots]
        if self.signal is None:
            return [({}, self.x_true)]
        var, side = self.signal
        out = []
        for value in (True, False):
            literal = value if side == POSITIVE else not value
            out.append(({var: value}, self.x_true if literal else self.x_false))
        return out


@dataclass
class _Slider:
    node: int
    clause: int
    literal_slots: tuple[tuple[str, int], ...]  # (variable, x) in literal order
    fallback: int


@dataclass
class Fragment:
    """A built gadget or instance before it is frozen into a LayeredGraph."""

    nodes: list[_Node] = field(default_factory=list)
    extra_edges: set[tuple[int, int]] = field(default_factory=set)
    essential: set[tuple[int, int]] = field(default_factory=set)
    sliders: list[_Slider] = field(default_factory=list)

    def add(self, level, width, x, tag, name, signal=None, x_false=None) -> int:
        self.nodes.append(_Node(level, width, x, x if x_false is None else x_false, signal, tag, name))
        return len(self.nodes) - 1

    def extra(self, a: int, b: int) -> None:
        self.extra_edges.add((min(a, b), max(a, b)))


def _level(h: int, side: str) -> int:
    return h if side == POSITIVE else 1 - h


def _row_kind(h: int, side: str) -> tuple:
    odd = h % 2 == 1
    return V_ROW if odd == (side == POSITIVE) else U_ROW


class _Track:
    """Bookkeeping for one track on one side: what sits at every height."""

    def __init__(self, x: int, side: str):
        self.x = x  # left edge of the left wall
        self.side = side
        self.cells: dict[int, dict[str, int]] = {}
        self.walls: dict[tuple[int, str], tuple[int, int, int]] = {}

    @property
    def interior(self) -> int:
        return self.x + WALL


def _wall(f: Fragment, track: _Track, h: int, which: str) -> tuple[int, int, int]:
    x = track.x if which == "left" else track.x + WALL + TUNNEL
    level = _level(h, track.side)
    keys = tuple(f.add(level, 1, x + k, "Wall", f"w{k + 1}") for k in range(WALL))
    track.walls[h, which] = keys
    return keys


def _row(f: Fragment, track: _Track, h: int, shape: tuple, signal: Signal, tag: str) -> dict[str, int]:
    names, widths, xt, xf = shape
    level = _level(h, track.side)
    cell = {n: f.add(level, w, track.interior + a, tag, n, signal, track.interior + b) for n, w, a, b in zip(names, widths, xt, xf)}
    track.cells[h] = cell
    return cell


def _reader(f: Fragment, track: _Track, h: int, signal: Signal, tag: str, name: str) -> dict[str, int]:
    level = _level(h, track.side)
    key = f.add(level, READER_WIDTH, track.interior, tag, name, signal, track.interior + TUNNEL - READER_WIDTH)
    cell = {"reader": key}
    track.cells[h] = cell
    return cell


def _link_rows(f: Fragment, lower: dict[str, int], upper: dict[str, int], gadget: bool) -> None:
    """Triangulating edges between stacked rows that canonical drawings never realize."""
    if "u_l" in upper:
        u, v = upper, lower
    else:
        u, v = lower, upper
    if "u_l" not in u or "v_m" not in v:
        return
    f.extra(u["u_l"], v["v_m"])
    f.extra(u["u_m"], v["v_r2"])
    if gadget:
        f.extra(u["u_l"], v["v_r2"])


# -- stand-alone gadget builders ------------------------------------------------------------


def build_wall(x: int, levels: Iterable[int], fragment: Optional[Fragment] = None) -> Fragment:
    """Three unit rectangles per layer, stacked in aligned columns."""
    f = fragment if fragment is not None else Fragment()
    for level in levels:
        for k in range(WALL):
            f.add(level, 1, x + k, "Wall", f"w{k + 1}")
    return f


def build_variable_gadget(
    x: str, fragment: Optional[Fragment] = None, at: int = 0, readers: bool = True
) -> tuple[Fragment, _Track, _Track]:
    """Variable gadget for ``x`` with its walls and, by default, both readers (layers -1..2)."""
    f = fragment if fragment is not None else Fragment()
    tag = f"VariableGadget({x})"
    up, down = _Track(at, POSITIVE), _Track(at, NEGATIVE)
    upper = _row(f, up, 1, V_ROW, (x, POSITIVE), tag)
    lower = _row(f, down, 1, U_ROW, (x, NEGATIVE), tag)
    _link_rows(f, lower, upper, gadget=True)
    for t in (up, down):
        _wall(f, t, 1, "left")
        _wall(f, t, 1, "right")
        if readers:
            _top_reader(f, t, 2, (x, t.side), tag, "v_x" if t.side == POSITIVE else "u_x")
    return f, up, down


def _top_reader(f: Fragment, track: _Track, h: int, signal: Signal, tag: str, name: str) -> int:
    """Reader closing a track, with its walls and the diagonals to the inner wall units below."""
    _wall(f, track, h, "left")
    _wall(f, track, h, "right")
    key = _reader(f, track, h, signal, tag, name)["reader"]
    below_l, below_r = track.walls.get((h - 1, "left")), track.walls.get((h - 1, "right"))
    if below_l:
        f.extra(key, below_l[-1])
    if below_r:
        f.extra(key, below_r[0])
    return key


def build_propagation(x: str, track: _Track, heights: Sequence[int], fragment: Fragment, signal: Optional[Signal] = None) -> None:
    """Alternating five-unit and 2-1-2 rows carrying the value of ``x`` through ``heights``."""
    sig = signal or (x, track.side)
    for h in heights:
        _row(f=fragment, track=track, h=h, shape=_row_kind(h, track.side), signal=sig, tag=f"Propagation({x})")
        _wall(fragment, track, h, "left")
        _wall(fragment, track, h, "right")


def build_split_gadget(
    x: str, a: _Track, b: _Track, h: int, fragment: Fragment, b_signal: Optional[Signal] = None
) -> dict[str, int]:
    """Copy track ``a`` into track ``b`` (its right neighbour) on height ``h``.

    On that layer the two walls between the tracks are replaced by a bar of
    width 8. A true value in ``a`` leaves room for either value in ``b``; a
    false value pushes the bar into ``b`` and forces ``b`` false too.
    ``b_signal`` decouples the copy for stand-alone checks of that rule.
    """
    f = fragment
    sig = (x, a.side)
    tag = f"Propagation({x})"
    level = _level(h, a.side)
    _wall(f, a, h, "left")
    _reader(f, a, h, sig, tag, "v_a'")
    bar = f.add(level, BAR_WIDTH, a.interior + 4, f"SplitBar({x})", "v_m", sig, a.interior + TUNNEL)
    _reader(f, b, h, b_signal or sig, tag, "v_a''")
    _wall(f, b, h, "right")
    return {"bar": bar, "a": a.cells[h]["reader"], "b": b.cells[h]["reader"]}


def build_clause_gadget(
    index: int,
    clause: Clause,
    literal_tracks: Sequence[_Track],
    h: int,
    fragment: Fragment,
) -> dict[str, int]:
    """Slider, caps and ceiling above readers sitting at height ``h - 1``."""
    f = fragment
    side = literal_tracks[0].side
    cols = [t.interior for t in literal_tracks]
    if any(b <= a for a, b in zip(cols, cols[1:])):
        raise FormulaError(f"clause {index}: literal columns must be strictly increasing")
    left0 = cols[0]
    right0 = literal_tracks[-1].x + WALL + TUNNEL
    slider_level, ceiling_level = _level(h, side), _level(h + 1, side)
    floor_tag = f"ClauseFloor(C{index})"
    out = {}
    out["cap_l"] = f.add(slider_level, WALL, left0 - WALL, "Wall", "cap_l")
    slots = [left0] + [c - 1 for c in cols[1:]]
    out["v_s"] = f.add(slider_level, SLIDER_WIDTH, slots[0], f"Slider(C{index})", "v_s")
    f.nodes[out["v_s"]].slots = tuple(slots)
    out["cap_r"] = f.add(slider_level, WALL, right0, "Wall", "cap_r")
    f.sliders.append(_Slider(out["v_s"], index, tuple(zip(clause.literals, slots)), slots[0]))

    # ceiling: t_i starts where the slider's i-th four-contact slot needs a seam
    x = left0 - WALL
    pieces = [("l1", 1), ("l2", 1), ("t1", T_WIDTH)]
    x_after = left0 + 1
    for i, c in enumerate(cols[1:], 2):
        pieces.append((f"b{i - 1}", c - x_after))
        pieces.append((f"t{i}", T_WIDTH))
        x_after = c + T_WIDTH
    pieces.append((f"b{len(cols)}", right0 + 1 - x_after))
    pieces += [("r1", 1), ("r2", 1)]
    for name, w in pieces:
        out[name] = f.add(ceiling_level, w, x, floor_tag, name)
        x += w
    for name in out:
        if name[0] in "tb" and name[1:].isdigit():
            f.essential.add((min(out["v_s"], out[name]), max(out["v_s"], out[name])))
    for cap in ("cap_l", "cap_r"):
        f.essential.add((min(out["v_s"], out[cap]), max(out["v_s"], out[cap])))
    return out


# -- freezing a fragment into a graph -------------------------------------------------------


def _compatible(a: dict[str, bool], b: dict[str, bool]) -> bool:
    return all(b.get(k, v) == v for k, v in a.items())


def _touches(f: Fragment, u: int, v: int, horizontal: bool) -> bool:
    nu, nv = f.nodes[u], f.nodes[v]
    for pa, xa in nu.candidates():
        for pb, xb in nv.candidates():
            if not _compatible(pa, pb):
                continue
            if horizontal:
                if xa + nu.width == xb:
                    return True
            elif min(xa + nu.width, xb + nv.width) > max(xa, xb):
                return True
    return False


def _close_faces(f: Fragment, lower: list[int], upper: list[int], edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Diagonals splitting every face between two consecutive vertical edges into triangles."""
    lo_idx = {k: i for i, k in enumerate(lower)}
    up_idx = {k: j for j, k in enumerate(upper)}
    present = sorted(
        (lo_idx[a], up_idx[b]) if a in lo_idx else (lo_idx[b], up_idx[a])
        for a, b in edges
        if (a in lo_idx and b in up_idx) or (b in lo_idx and a in up_idx)
    )
    end = lambda k: f.nodes[k].x_true + f.nodes[k].width
    out = set()
    for (i, j), (p, q) in zip(present, present[1:]):
        while (i, j) != (p, q):
            if i == p or (j < q and end(upper[j]) < end(lower[i])):
                j += 1
            else:
                i += 1
            a, b = lower[i], upper[j]
            out.add((min(a, b), max(a, b)))
    return out


@dataclass
class FrozenFragment:
    graph: LayeredGraph
    pruned_edges: frozenset[Edge]
    refs: list[VertexRef]  # node key -> vertex
    min_level: int
    fragment: Fragment

    def positions(self, assignment: Mapping[str, bool], slider_x: Optional[Mapping[int, int]] = None) -> dict[VertexRef, int]:
        slider_x = slider_x or {}
        out = {}
        for key, node in enumerate(self.fragment.nodes):
            out[self.refs[key]] = slider_x.get(key, node.place(assignment))
        return out


def freeze(f: Fragment, labels: bool = True) -> FrozenFragment:
    """Order every level by x and derive the edge sets of both variants.

    The pruned edge set holds exactly the pairs that touch in some canonical
    drawing (plus the slider edges marked essential); the triangulated set
    adds every consecutive same-layer pair and the gadgets' diagonals.
    """
    by_level: dict[int, list[int]] = {}
    for key, node in enumerate(f.nodes):
        by_level.setdefault(node.level, []).append(key)
    lo, hi = min(by_level), max(by_level)
    order: list[list[int]] = []
    refs: list[Optional[VertexRef]] = [None] * len(f.nodes)
    for level in range(lo, hi + 1):
        keys = sorted(by_level.get(level, []), key=lambda k: (f.nodes[k].x_true, f.nodes[k].x_false))
        if sorted(keys, key=lambda k: (f.nodes[k].x_false, f.nodes[k].x_true)) != keys:
            raise AssertionError(f"level {level}: node order depends on the assignment")
        order.append(keys)
        for j, k in enumerate(keys, 1):
            refs[k] = VertexRef(level - lo + 1, j)

    auto: set[tuple[int, int]] = set()
    consecutive: set[tuple[int, int]] = set()
    for keys in order:
        for a, b in zip(keys, keys[1:]):
            pair = (min(a, b), max(a, b))
            consecutive.add(pair)
            if _touches(f, a, b, horizontal=True):
                auto.add(pair)
    for lower, upper in zip(order, order[1:]):
        spans = {}
        for k in lower + upper:
            n = f.nodes[k]
            xs = [x for _, x in n.candidates()]
            spans[k] = (min(xs), max(xs) + n.width)
        for a in lower:
            a0, a1 = spans[a]
            for b in upper:
                b0, b1 = spans[b]
                if b0 < a1 and a0 < b1 and _touches(f, a, b, horizontal=False):
                    auto.add((min(a, b), max(a, b)))
    wall_cells = {(n.level, n.x_true): (k, n.name) for k, n in enumerate(f.nodes) if n.tag == "Wall" and n.width == 1}
    extras = set(f.extra_edges)
    # diagonals lean towards the middle column, so no row of a wall can slide
    for (level, x), (k, name) in wall_cells.items():
        dx = {"w1": 1, "w3": -1}.get(name)
        above = wall_cells.get((level + 1, x + dx)) if dx else None
        if above and above[1] == "w2":
            extras.add((min(k, above[0]), max(k, above[0])))

    pruned = auto | f.essential
    full = pruned | extras | consecutive
    for lower, upper in zip(order, order[1:]):
        full |= _close_faces(f, lower, upper, full)
    to_edge = lambda p: make_edge(refs[p[0]], refs[p[1]])
    widths = [[f.nodes[k].width for k in keys] for keys in order]
    lab = [[f"{f.nodes[k].tag}:{f.nodes[k].name}" for k in keys] for keys in order] if labels else None
    g = LayeredGraph(widths, [to_edge(p) for p in full], lab)
    return FrozenFragment(g, frozenset(to_edge(p) for p in pruned), refs, lo, f)


# -- whole formulas -------------------------------------------------------------------------


FIRST_SPLIT = {POSITIVE: 3, NEGATIVE: 4}


@dataclass
class _Layout:
    fragment: Fragment
    tracks: dict[tuple[str, str, int], _Track]
    reader_height: dict[str, int]


def _layout(formula: RectilinearFormula) -> _Layout:
    formula.validate()
    f = Fragment()
    sides = (POSITIVE, NEGATIVE)
    legs = {(x, s): formula.legs(x, s) for x in formula.variables for s in sides}
    ntracks = {key: max(1, len(v)) for key, v in legs.items()}
    most = {s: max(ntracks[x, s] for x in formula.variables) for s in sides}
    base = {s: 2 if most[s] == 1 else FIRST_SPLIT[s] + 2 * most[s] - 2 for s in sides}

    def split_h(s: str, j: int) -> int:
        return FIRST_SPLIT[s] + 2 * (j - 1)

    def reader_h(s: str, depth: int) -> int:
        return base[s] + 3 * (depth - 1)

    tracks: dict[tuple[str, str, int], _Track] = {}
    x0 = 0
    for x in formula.variables:
        _, up, down = build_variable_gadget(x, f, at=x0, readers=False)
        for s, first in ((POSITIVE, up), (NEGATIVE, down)):
            n = ntracks[x, s]
            row = [first] + [_Track(x0 + TRACK * t, s) for t in range(1, n)]
            gadget_tag = f"VariableGadget({x})"
            for t, tr in enumerate(row):
                tracks[x, s, t] = tr
                top = reader_h(s, formula.clauses[legs[x, s][t]].depth) if legs[x, s] else 2
                start = 1 if t == 0 else split_h(s, t) - 1
                skip = {split_h(s, t) if t else 1, split_h(s, t + 1) if t + 1 < n else None}
                for h in range(start, top):
                    if h not in skip:
                        build_propagation(x, tr, [h], f)
                tag = gadget_tag if top == 2 and t == 0 else f"Propagation({x})"
                name = ("v_x" if s == POSITIVE else "u_x") if top == 2 and t == 0 else "reader"
                _top_reader(f, tr, top, (x, s), tag, name)
            for t in range(1, n):
                build_split_gadget(x, row[t - 1], row[t], split_h(s, t), f)
            for tr in row:
                hs = sorted(tr.cells)
                for a, b in zip(hs, hs[1:]):
                    if b == a + 1 and a >= 1:
                        _link_rows(f, tr.cells[a], tr.cells[b], gadget=False)
        x0 += TRACK * max(ntracks[x, POSITIVE], ntracks[x, NEGATIVE])

    for ci, c in enumerate(formula.clauses):
        s = c.polarity
        lits = [tracks[x, s, legs[x, s].index(ci)] for x in c.literals]
        h = reader_h(s, c.depth)
        parts = build_clause_gadget(ci, c, lits, h + 1, f)
        slider = parts["v_s"]
        lo, hi = lits[0].interior, lits[-1].x + WALL + TUNNEL
        level = _level(h, s)
        for k, node in enumerate(f.nodes):
            if node.level == level and node.x_true < hi and node.x_true + node.width > lo:
                f.extra(slider, k)
    return _Layout(f, tracks, base)


def _slider_positions(fragment: Fragment, formula: RectilinearFormula, assignment: Mapping[str, bool]) -> dict[int, int]:
    out = {}
    for sl in fragment.sliders:
        side = formula.clauses[sl.clause].polarity
        out[sl.node] = next((x for var, x in sl.literal_slots if signal_value((var, side), assignment)), sl.fallback)
    return out


@dataclass
class ReductionInstance:
    graph: LayeredGraph
    k: int
    provenance: dict[VertexRef, str]
    variant: str
    framed: bool
    formula: RectilinearFormula = field(repr=False)
    _frozen: FrozenFragment = field(repr=False)
    _frame: Optional["FrameInfo"] = field(default=None, repr=False)

    def width_budget(self) -> int:
        """Width of the canonical drawings; a natural bounding box for exact solving."""
        r = witness(self, {x: True for x in self.formula.variables})
        lo, hi = r.extent(self.graph)
        return hi - lo


def _variant_graph(frozen: FrozenFragment, variant: str) -> LayeredGraph:
    if variant == TRIANGULATED:
        return frozen.graph
    if variant == PLANAR_PRUNED:
        return LayeredGraph(frozen.graph.widths, frozen.pruned_edges, frozen.graph.labels)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def compile_formula(
    formula: RectilinearFormula,
    variant: str = TRIANGULATED,
    framed: bool = False,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> ReductionInstance:
    """Build the hardness instance of ``formula`` and its target ``k``.

    ``k`` is the number of contacts of the canonical drawing of a satisfying
    configuration: the drawing for the all-true assignment plus one contact per
    clause that assignment leaves unsatisfied.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    lay = _layout(formula)
    if len(lay.fragment.nodes) > max_vertices:
        raise ReductionSizeError(f"{len(lay.fragment.nodes)} vertices exceed the limit {max_vertices}")
    frozen = freeze(lay.fragment)
    g = _variant_graph(frozen, variant)
    provenance = {frozen.refs[k]: n.tag for k, n in enumerate(lay.fragment.nodes)}
    inst = ReductionInstance(g, 0, provenance, variant, False, formula, frozen)
    if framed:
        inst = _frame_instance(inst, max_vertices)
    ref = {x: True for x in formula.variables}
    report = evaluate(inst.graph, witness(inst, ref))
    if not report.valid:
        raise AssertionError("canonical drawing is invalid: " + "; ".join(map(str, report.false_adjacencies[:3])))
    inst.k = report.total_contacts + formula.unsatisfied(ref)
    return inst


def witness(inst: ReductionInstance, assignment: Mapping[str, bool]) -> Representation:
    """Canonical drawing of ``inst`` for ``assignment`` (always valid)."""
    inst.formula.check_assignment(assignment)
    fr = inst._frozen
    pos = fr.positions(assignment, _slider_positions(fr.fragment, inst.formula, assignment))
    lo = min(pos.values())
    pos = {v: x - lo for v, x in pos.items()}
    if inst._frame is not None:
        pos = inst._frame.wrap(pos)
    return Representation(pos)


# -- frame ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class FrameInfo:
    thickness: int  # w * h
    inner_width: int
    inner_layers: int

    def ref(self, v: VertexRef) -> VertexRef:
        return VertexRef(v.layer + self.thickness, v.pos + 1)

    def wrap(self, inner: Mapping[VertexRef, int]) -> dict[VertexRef, int]:
        m, w = self.thickness, self.inner_width
        out = {self.ref(v): x + m for v, x in inner.items()}
        sizes: dict[int, int] = {}
        for v in inner:
            sizes[v.layer] = max(sizes.get(v.layer, 0), v.pos)
        for i in range(1, self.inner_layers + 1):
            out[VertexRef(i + m, 1)] = 0
            out[VertexRef(i + m, sizes.get(i, 0) + 2)] = m + w
        for i in list(range(1, m + 1)) + list(range(m + self.inner_layers + 1, 2 * m + self.inner_layers + 1)):
            out[VertexRef(i, 1)] = 0
        return out


def frame_size(inner: LayeredGraph, width: int) -> int:
    """Vertex count of the framed graph."""
    m = width * inner.num_layers
    return inner.n + 2 * inner.num_layers + 2 * m


def build_frame(
    inner: LayeredGraph,
    width: Optional[int] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> tuple[LayeredGraph, FrameInfo]:
    """Enclose ``inner`` in side walls of width ``w*h`` and ``w*h`` full-width rows above and below.

    ``h`` is the layer count of ``inner`` and ``w`` defaults to its widest
    layer, the least width any drawing of it needs.
    """
    h = inner.num_layers
    w = width if width is not None else max((sum(layer) for layer in inner.widths), default=0)
    if frame_size(inner, w) > max_vertices:
        raise ReductionSizeError(f"framed graph would have {frame_size(inner, w)} vertices (limit {max_vertices})")
    m = w * h
    info = FrameInfo(m, w, h)
    widths: list[list[int]] = [[2 * m + w] for _ in range(m)]
    labels: list[list[str]] = [["Frame:row"] for _ in range(m)]
    inner_labels = inner.labels or tuple(tuple("" for _ in layer) for layer in inner.widths)
    for layer, lab in zip(inner.widths, inner_labels):
        widths.append([m, *layer, m])
        labels.append(["Frame:side_l", *lab, "Frame:side_r"])
    widths += [[2 * m + w] for _ in range(m)]
    labels += [["Frame:row"] for _ in range(m)]

    edges = [(info.ref(u), info.ref(v)) for u, v in inner.edges]
    total = 2 * m + h
    for i in range(1, total):
        lower, upper = len(widths[i - 1]), len(widths[i])
        if lower == 1 or upper == 1:
            # a full-width row touches everything on its neighbouring layer
            edges += [((i, a), (i + 1, b)) for a in range(1, lower + 1) for b in range(1, upper + 1)]
        else:
            edges += [((i, 1), (i + 1, 1)), ((i, lower), (i + 1, upper))]
    for i in range(m + 1, m + h + 1):
        size = len(widths[i - 1])
        edges += [((i, 1), (i, 2)), ((i, size - 1), (i, size))]
    return LayeredGraph(widths, set(map(lambda e: make_edge(*e), edges)), labels), info


def _frame_instance(inst: ReductionInstance, max_vertices: int) -> ReductionInstance:
    width = inst.width_budget()
    g, info = build_frame(inst.graph, width, max_vertices)
    provenance = {info.ref(v): tag for v, tag in inst.provenance.items()}
    for v in g.vertices():
        provenance.setdefault(v, "Frame")
    return ReductionInstance(g, 0, provenance, inst.variant, True, inst.formula, inst._frozen, info)
