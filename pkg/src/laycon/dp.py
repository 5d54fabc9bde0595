"""Exact Max-IntLC by dynamic programming over vertical grid cuts.

A cut at integer x records, per layer, which rectangle it passes through and
how many of its columns lie to the left (``(v, l)``), ``(v, 0)`` for a pending
vertex, or ``(NIL, 0)`` once the layer is exhausted. The table stores the best
number of contacts realizable strictly to the right of each cut.

Empty-column rule: if two consecutive grid columns are empty on every layer,
shifting everything right of them one unit to the left keeps every gap >= 1
(so no new flush pair appears), keeps every overlap, and keeps every contact.
Some optimum therefore never has two consecutive all-empty columns (nor a
leading one), and the search only admits an all-empty column directly after a
non-empty one. This is what bounds the number of columns explored.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from .evaluate import Representation
from .model import LayeredGraph, VertexRef, validate_instance

DEFAULT_MAX_STATES = int(os.environ.get("LAYCON_MAX_STATES", 2_000_000))


class InvalidInstanceError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    """The search would visit more states than the configured budget allows."""


@dataclass(frozen=True, order=True)
class LayerCursor:
    vertex: Optional[VertexRef]
    progress: int = 0

    @property
    def is_nil(self) -> bool:
        return self.vertex is None


@dataclass(frozen=True, order=True)
class CutState:
    cursors: tuple[LayerCursor, ...]
    stalled_last: bool = False


@dataclass
class ExactResult:
    contacts: int
    witness: Representation
    visited_states: int


def state_space_bound(g: LayeredGraph) -> int:
    """``2 * prod_i (1 + sum_{v in layer i} (w(v) + 1))``."""
    total = 2
    for layer in g.widths:
        total *= 1 + sum(w + 1 for w in layer)
    return total


class _Layers:
    """Per-layer transition tables on raw ``(j, l)`` cursors (0-based j; j == size is NIL)."""

    def __init__(self, g: LayeredGraph):
        self.g = g
        self.L = g.num_layers
        self.sizes = [len(layer) for layer in g.widths]
        self.widths = g.widths
        # horizontal edge between j and j+1 (0-based) on layer i
        self.hedge = [
            [g.has_edge(VertexRef(i + 1, j + 1), VertexRef(i + 1, j + 2)) for j in range(max(s - 1, 0))]
            for i, s in enumerate(self.sizes)
        ]
        # suffix[i][j] = total width of vertices j.. on layer i
        self.suffix = []
        for layer in g.widths:
            suf = [0] * (len(layer) + 1)
            for j in range(len(layer) - 1, -1, -1):
                suf[j] = suf[j + 1] + layer[j]
            self.suffix.append(suf)
        self._opts: dict[tuple[int, int, int], tuple] = {}

    def vedge(self, i: int, a: int, b: int) -> bool:
        """Edge between (i, a) and (i+1, b), 0-based indices."""
        return self.g.has_edge(VertexRef(i + 1, a + 1), VertexRef(i + 2, b + 1))

    def options(self, i: int, j: int, l: int) -> tuple:
        """Per-layer successors as ``(j', l', gain, feasible)`` for horizontal placement."""
        key = (i, j, l)
        cached = self._opts.get(key)
        if cached is not None:
            return cached
        s = self.sizes[i]
        if j == s:
            out = ((j, 0, 0),)
        else:
            w = self.widths[i][j]
            if 0 < l < w:
                out = ((j, l + 1, 0),)
            elif l == 0:
                out = ((j, 0, 0), (j, 1, 0))
            elif j + 1 == s:
                out = ((s, 0, 0),)
            else:
                # flush placement needs the horizontal edge; gain 1 when present
                flush = ((j + 1, 1, 1),) if self.hedge[i][j] else ()
                out = ((j + 1, 0, 0),) + flush
        self._opts[key] = out
        return out


def _successors_raw(lay: _Layers, cursors: tuple, stalled: bool) -> list[tuple[tuple, bool, int]]:
    """Feasible successors of a raw state as ``(cursors', stalled', gain)``."""
    out: list[tuple[tuple, bool, int]] = []
    per_layer = [lay.options(i, j, l) for i, (j, l) in enumerate(cursors)]
    L = lay.L
    chosen: list[tuple[int, int]] = [(0, 0)] * L

    def rec(i: int, gain: int, any_filled: bool) -> None:
        if i == L:
            if not any_filled and stalled:
                return
            out.append((tuple(chosen), not any_filled, gain))
            return
        for j2, l2, g2 in per_layer[i]:
            add = g2
            if i > 0 and l2 >= 1:
                pj, pl = chosen[i - 1]
                if pl >= 1 and (pl == 1 or l2 == 1):
                    if not lay.vedge(i - 1, pj, j2):
                        continue
                    add += 1
            chosen[i] = (j2, l2)
            rec(i + 1, gain + add, any_filled or l2 >= 1)

    rec(0, 0, False)
    return out


def _to_public(lay: _Layers, cursors: tuple, stalled: bool) -> CutState:
    cs = []
    for i, (j, l) in enumerate(cursors):
        cs.append(LayerCursor(None, 0) if j == lay.sizes[i] else LayerCursor(VertexRef(i + 1, j + 1), l))
    return CutState(tuple(cs), stalled)


def _to_raw(lay: _Layers, s: CutState) -> tuple[tuple, bool]:
    if len(s.cursors) != lay.L:
        raise ValueError(f"state has {len(s.cursors)} cursors for {lay.L} layers")
    raw = []
    for i, c in enumerate(s.cursors):
        if c.vertex is None:
            if c.progress != 0:
                raise ValueError(f"layer {i + 1}: NIL cursor must have progress 0")
            raw.append((lay.sizes[i], 0))
        else:
            v = VertexRef(*c.vertex)
            if v.layer != i + 1 or not lay.g.contains(v):
                raise ValueError(f"layer {i + 1}: cursor vertex {v} is not on this layer")
            if not 0 <= c.progress <= lay.g.width(v):
                raise ValueError(f"layer {i + 1}: progress {c.progress} outside [0, {lay.g.width(v)}]")
            raw.append((v.pos - 1, c.progress))
    return tuple(raw), s.stalled_last


def successors(g: LayeredGraph, s: CutState) -> list[tuple[CutState, int]]:
    """Feasible cuts one column to the right of ``s`` with the contacts each adds."""
    lay = _Layers(g)
    cursors, stalled = _to_raw(lay, s)
    return [(_to_public(lay, c, st), gain) for c, st, gain in _successors_raw(lay, cursors, stalled)]


def initial_state(g: LayeredGraph) -> CutState:
    lay = _Layers(g)
    return _to_public(lay, tuple((0, 0) for _ in range(g.num_layers)), True)


def solve_exact(
    g: LayeredGraph,
    max_states: Optional[int] = None,
    width_budget: Optional[int] = None,
) -> ExactResult:
    """Maximum number of contacts over all valid integer representations.

    ``width_budget`` confines every rectangle to ``[0, width_budget]``; it adds
    the column index to the state and prunes cuts whose remaining rectangles
    cannot fit. ``max_states`` caps the memo size (:class:`BudgetExceededError`).
    """
    problems = validate_instance(g)
    if problems:
        raise InvalidInstanceError("; ".join(str(p) for p in problems))
    if max_states is None:
        max_states = DEFAULT_MAX_STATES
    lay = _Layers(g)
    L = lay.L
    if width_budget is not None and any(sum(layer) > width_budget for layer in g.widths):
        raise InvalidInstanceError(f"some layer is wider than the width budget {width_budget}")

    start_cursors = tuple((0, 0) for _ in range(L))
    terminal = tuple((s, 0) for s in lay.sizes)

    def fits(cursors: tuple, x: int) -> bool:
        for i, (j, l) in enumerate(cursors):
            if x + lay.suffix[i][j] - l > width_budget:
                return False
        return True

    # key: (cursors, stalled) or (cursors, stalled, x) with a width budget
    if width_budget is None:
        start = (start_cursors, True)
    else:
        start = (start_cursors, True, 0)

    memo: dict[tuple, tuple[int, Optional[tuple], int]] = {}
    succ_cache: dict[tuple, list] = {}
    NEG = -1

    def expand(key: tuple) -> list:
        cursors, stalled = key[0], key[1]
        raw = _successors_raw(lay, cursors, stalled)
        if width_budget is None:
            return [((c, st), gain) for c, st, gain in raw]
        x = key[2] + 1
        # stepping into the terminal cut consumes no real column
        return [((c, st, x), gain) for c, st, gain in raw if c == terminal or fits(c, x)]

    stack = [start]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        if key[0] == terminal:
            memo[key] = (0, None, 0)
            stack.pop()
            continue
        succ = succ_cache.get(key)
        if succ is None:
            succ = expand(key)
            succ_cache[key] = succ
            pending = [k for k, _ in succ if k not in memo]
            if pending:
                if len(memo) + len(succ_cache) > max_states:
                    raise BudgetExceededError(f"DP exceeded the state budget of {max_states}")
                stack.extend(pending)
                continue
        best, best_key, best_gain = NEG, None, 0
        for k, gain in succ:
            val = memo[k][0]
            if val == NEG:
                continue
            total = val + gain
            if total > best or (total == best and k < best_key):
                best, best_key, best_gain = total, k, gain
        memo[key] = (best, best_key, best_gain)
        del succ_cache[key]
        stack.pop()

    value = memo[start][0]
    if value == NEG:
        raise InvalidInstanceError("no representation fits inside the width budget")
    positions: dict[VertexRef, int] = {}
    key, x = start, 0
    while key[0] != terminal:
        nxt = memo[key][1]
        for i, ((j0, l0), (j1, l1)) in enumerate(zip(key[0], nxt[0])):
            if l1 == 1:
                positions[VertexRef(i + 1, j1 + 1)] = x
        key, x = nxt, x + 1
    return ExactResult(value, Representation(positions), len(memo))


def solve_decision(g: LayeredGraph, k: int, **kwargs) -> tuple[bool, Optional[Representation]]:
    res = solve_exact(g, **kwargs)
    if res.contacts >= k:
        return True, res.witness
    return False, None
