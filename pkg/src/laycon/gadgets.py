"""Stand-alone gadgets and the perturbations used to probe them.

Each builder returns a small :class:`GadgetInstance` whose canonical drawings
come from the same node placement rules as full reduction instances, so a
property checked here holds for every copy of the gadget inside a formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .evaluate import RATIONAL, Coord, Representation, evaluate
from .formula import NEGATIVE, POSITIVE
from .model import LayeredGraph, VertexRef, induced_layer_slice
from .reduction import (
    FIRST_SPLIT,
    PLANAR_PRUNED,
    TRACK,
    TRIANGULATED,
    VARIANTS,
    Fragment,
    FrozenFragment,
    _link_rows,
    _top_reader,
    _Track,
    build_propagation,
    build_split_gadget,
    build_variable_gadget,
    build_wall,
    freeze,
)


@dataclass
class GadgetInstance:
    graph: LayeredGraph
    frozen: FrozenFragment
    variant: str
    variables: tuple[str, ...]

    def witness(
        self,
        assignment: Mapping[str, bool],
        layer_assignment: Optional[Callable[[int], Mapping[str, bool]]] = None,
    ) -> Representation:
        """Canonical drawing; ``layer_assignment`` overrides the assignment per layer."""
        missing = [x for x in self.variables if x not in assignment]
        if missing:
            raise ValueError(f"assignment misses {missing}")
        pos = {}
        for key, node in enumerate(self.frozen.fragment.nodes):
            v = self.frozen.refs[key]
            a = layer_assignment(v.layer) if layer_assignment else assignment
            pos[v] = node.place(a)
        lo = min(pos.values())
        return Representation({v: x - lo for v, x in pos.items()})

    def find(self, label: str, layer: Optional[int] = None) -> list[VertexRef]:
        """Vertices whose ``tag:name`` label (or bare name) equals ``label``."""
        out = []
        for i, row in enumerate(self.graph.labels, 1):
            if layer is not None and i != layer:
                continue
            for j, lab in enumerate(row, 1):
                if lab == label or lab.split(":", 1)[1] == label:
                    out.append(VertexRef(i, j))
        return out


def _instance(f: Fragment, variant: str, variables: tuple[str, ...]) -> GadgetInstance:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    fr = freeze(f)
    g = fr.graph
    if variant == PLANAR_PRUNED:
        g = LayeredGraph(g.widths, fr.pruned_edges, g.labels)
    return GadgetInstance(g, fr, variant, variables)


def _link_track(f: Fragment, track: _Track) -> None:
    hs = sorted(track.cells)
    for a, b in zip(hs, hs[1:]):
        if b == a + 1 and a >= 1:
            _link_rows(f, track.cells[a], track.cells[b], gadget=False)


def wall_instance(height: int = 3, variant: str = TRIANGULATED) -> GadgetInstance:
    return _instance(build_wall(0, range(height)), variant, ())


def variable_gadget_instance(variant: str = TRIANGULATED) -> GadgetInstance:
    """Walled variable gadget with both readers; assignment key ``x``."""
    f, _, _ = build_variable_gadget("x")
    return _instance(f, variant, ("x",))


def propagation_instance(steps: int = 2, variant: str = TRIANGULATED) -> GadgetInstance:
    """Variable gadget whose positive value climbs ``steps`` extra rows to its reader."""
    f, up, down = build_variable_gadget("x", readers=False)
    build_propagation("x", up, range(2, 2 + steps), f)
    _top_reader(f, up, 2 + steps, ("x", POSITIVE), "Propagation(x)", "v_x")
    _top_reader(f, down, 2, ("x", NEGATIVE), "VariableGadget(x)", "u_x")
    _link_track(f, up)
    return _instance(f, variant, ("x",))


def split_gadget_instance(variant: str = TRIANGULATED) -> GadgetInstance:
    """Split of ``a`` into its own track and a copy track whose value is ``b``.

    Canonical drawings exist for every pair ``(a, b)``; the gadget's rule is
    that ``a`` false with ``b`` true cannot be drawn validly.
    """
    f, up, down = build_variable_gadget("a", readers=False)
    h = FIRST_SPLIT[POSITIVE]
    copy = _Track(TRACK, POSITIVE)
    build_propagation("a", up, [h - 1, h + 1], f)
    build_propagation("a", copy, [h - 1, h + 1], f, signal=("b", POSITIVE))
    build_split_gadget("a", up, copy, h, f, b_signal=("b", POSITIVE))
    _top_reader(f, up, h + 2, ("a", POSITIVE), "Propagation(a)", "reader")
    _top_reader(f, copy, h + 2, ("b", POSITIVE), "Propagation(a)", "reader")
    _top_reader(f, down, 2, ("a", NEGATIVE), "VariableGadget(a)", "u_x")
    _link_track(f, up)
    _link_track(f, copy)
    return _instance(f, variant, ("a", "b"))


# -- perturbations ----------------------------------------------------------------------------


def push_move(g: LayeredGraph, r: Representation, v: VertexRef, x: Coord) -> Representation:
    """Move ``v`` to ``x`` and push its layer neighbours just far enough to keep the order."""
    pos = dict(r.positions)
    row = g.refs[v.layer - 1]
    pos[v] = x
    j = v.pos - 1
    for a, b in zip(row[j:], row[j + 1 :]):
        pos[b] = max(pos[b], pos[a] + g.width(a))
    for a, b in zip(reversed(row[: j + 1]), reversed(row[:j])):
        pos[b] = min(pos[b], pos[a] - g.width(b))
    return Representation(pos, r.model)


def shift_wall(g: LayeredGraph, r: Representation, v: VertexRef, dx: int = 1) -> Representation:
    return push_move(g, r, v, r[v] + dx)


def widen_row(g: LayeredGraph, r: Representation, v: VertexRef, dx: int = 1) -> Representation:
    """Open an extra column left of ``v``: ``v`` and everything right of it on its layer move."""
    pos = dict(r.positions)
    for u in g.refs[v.layer - 1][v.pos - 1 :]:
        pos[u] += dx
    return Representation(pos, r.model)


def block_tunnel(g: LayeredGraph, r: Representation, bar: VertexRef, tunnel_left: int, tunnel_width: int, side: str) -> Representation:
    """Slide the split bar until it covers the whole tunnel ``[left, left + width]``."""
    w = g.width(bar)
    x = tunnel_left if side == "left" else tunnel_left + tunnel_width - w
    return push_move(g, r, bar, x)


@dataclass(frozen=True)
class Outcome:
    valid: bool
    contacts: int
    false_adjacencies: int
    order_violations: int


def outcome(g: LayeredGraph, r: Representation) -> Outcome:
    rep = evaluate(g, r)
    return Outcome(rep.valid, rep.total_contacts, len(rep.false_adjacencies), len(rep.order_violations))


def degrades(g: LayeredGraph, base: Representation, perturbed: Representation) -> bool:
    """True when ``perturbed`` realizes fewer contacts than ``base`` or gains a false adjacency."""
    a, b = outcome(g, base), outcome(g, perturbed)
    return b.contacts < a.contacts or b.false_adjacencies > a.false_adjacencies


# -- half-integer drawings --------------------------------------------------------------------


def _layer_options(g, base, vs, lo, hi, keep):
    half = Fraction(1, 2)
    steps = [lo + half * k for k in range(int((hi - lo) * 2) + 1)]
    opts = []
    for xs in itertools.product(steps, repeat=len(vs)):
        if any(xs[n + 1] < xs[n] + g.width(vs[n]) for n in range(len(vs) - 1)) or xs[-1] + g.width(vs[-1]) > hi:
            continue
        opt = dict(zip(vs, xs))
        if keep(opt):
            opts.append(opt)
    return opts


def best_half_grid(
    g: LayeredGraph,
    base: Representation,
    free: list[VertexRef],
    lo: Coord,
    hi: Coord,
    keep: Callable[[dict[VertexRef, Fraction]], bool] = lambda opt: True,
) -> Optional[tuple[int, Representation]]:
    """Best valid drawing that moves only ``free`` to half-integer spots in ``[lo, hi]``.

    Vertices outside ``free`` stay where ``base`` puts them. ``keep`` filters
    the placements of the free vertices one layer at a time. Contacts split
    into per-layer and per-layer-pair terms, so the search is a max-plus chain
    over layers rather than a product over all of them.
    """
    base_pos = {v: Fraction(x) for v, x in base.positions.items()}
    by_layer: dict[int, list[VertexRef]] = {}
    for v in sorted(free):
        by_layer.setdefault(v.layer, []).append(v)
    options: list[list[dict[VertexRef, Fraction]]] = []
    for i in range(1, g.num_layers + 1):
        fixed = {v: base_pos[v] for v in g.refs[i - 1]}
        vs = by_layer.get(i)
        if not vs:
            options.append([fixed])
            continue
        options.append([fixed | opt for opt in _layer_options(g, base, vs, lo, hi, keep)])

    slices: dict[tuple[int, int], object] = {}

    def score(layers: list[int], pos: dict) -> Optional[int]:
        key = (layers[0], layers[-1])
        if key not in slices:
            slices[key] = induced_layer_slice(g, *key)
        sub = slices[key]
        rep = evaluate(sub.graph, Representation({sub.from_original(v): x for v, x in pos.items()}, RATIONAL))
        return rep.total_contacts if rep.valid else None

    single = [[score([i + 1], opt) for opt in options[i]] for i in range(g.num_layers)]
    # best[i][a]: best contacts of layers i+1.. given option a on layer i+1
    L = g.num_layers
    best: list[list[Optional[tuple[int, Optional[int]]]]] = [[None] * len(o) for o in options]
    for a, s in enumerate(single[L - 1]):
        if s is not None:
            best[L - 1][a] = (s, None)
    for i in range(L - 2, -1, -1):
        for a, s in enumerate(single[i]):
            if s is None:
                continue
            top = None
            for b, nb in enumerate(best[i + 1]):
                if nb is None:
                    continue
                both = score([i + 1, i + 2], options[i][a] | options[i + 1][b])
                if both is None:
                    continue
                total = both - single[i + 1][b] + nb[0]
                if top is None or total > top[0]:
                    top = (total, b)
            if top is not None:
                best[i][a] = top
    start = [(v[0], a) for a, v in enumerate(best[0]) if v is not None]
    if not start:
        return None
    value, a = max(start, key=lambda t: (t[0], -t[1]))
    pos: dict[VertexRef, Fraction] = {}
    for i in range(L):
        pos |= options[i][a]
        if i + 1 < L:
            a = best[i][a][1]
    return value, Representation(pos, RATIONAL)


def snap(r: Representation, rounding: Callable[[Fraction], int] = math.floor) -> Representation:
    """Integer drawing obtained by rounding every coordinate (floor by default)."""
    return Representation({v: int(rounding(Fraction(x))) for v, x in r.positions.items()})


def flip_drawing(steps: int = 1, variant: str = TRIANGULATED) -> tuple[GadgetInstance, Representation, Representation]:
    """Half-integer drawing of a propagation whose reader shows the opposite value.

    The gadget rows keep their ``true`` placement; the propagation rows and the
    top reader may move in half steps inside the tunnel, with the reader forced
    to the ``false`` side. Returns the instance, the ``true`` canonical drawing
    and the best such flip.
    """
    inst = propagation_instance(steps, variant)
    g = inst.graph
    base = inst.witness({"x": True})
    reader = inst.find("v_x")[0]
    left = base[reader]
    free = [
        v
        for i in range(4, g.num_layers + 1)
        for v in g.refs[i - 1]
        if not g.labels[i - 1][v.pos - 1].startswith("Wall")
    ]
    found = best_half_grid(g, base, free, left, left + 6, lambda opt: reader not in opt or opt[reader] == left + 3)
    if found is None:
        raise ValueError("no valid flipped drawing exists")
    return inst, base, found[1]


def slider_placements(inst, clause: int, assignment: Mapping[str, bool]) -> list[tuple[int, bool, int]]:
    """Every slider position of ``clause`` in the canonical drawing: ``(x, valid, slider contacts)``."""
    from .reduction import witness

    g = inst.graph
    tag = f"Slider(C{clause})"
    slider = next(v for v, t in inst.provenance.items() if t == tag)
    base = witness(inst, assignment)
    row = g.refs[slider.layer - 1]
    j = slider.pos - 1
    lo = base[row[j - 1]] + g.width(row[j - 1]) if j > 0 else min(base.positions.values())
    hi = base[row[j + 1]] - g.width(slider) if j + 1 < len(row) else max(base.positions.values())
    out = []
    for x in range(lo, hi + 1):
        pos = dict(base.positions)
        pos[slider] = x
        rep = evaluate(g, Representation(pos))
        out.append((x, rep.valid, sum(slider in e for e in rep.realized_edges)))
    return out
