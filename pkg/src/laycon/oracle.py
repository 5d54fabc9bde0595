"""Brute-force ground truth for tiny instances.

Every integer placement with all rectangles inside ``[0, width_budget]`` is
considered. Placements are enumerated layer by layer; because validity and the
contact count are sums of per-layer and per-adjacent-layer-pair terms, the
maximum over the full product is taken as a max-plus chain over layers. No
placement is skipped.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional, Union

from .evaluate import Representation, evaluate
from .model import LayeredGraph, VertexRef, induced_layer_slice

DEFAULT_CAP = 10**8
AUTO = "auto"


class EnumerationCapError(RuntimeError):
    pass


class WidthBudgetError(ValueError):
    """No valid representation fits inside the requested width."""


def auto_budget(g: LayeredGraph) -> int:
    # no leading and no two consecutive all-empty columns
    return 2 * g.total_width + 1


def placement_count(g: LayeredGraph, width_budget: int) -> int:
    return math.prod(max(width_budget - g.width(v) + 1, 0) for v in g.vertices())


def _layer_placements(widths: tuple[int, ...], budget: int) -> list[tuple[int, ...]]:
    ranges = [range(budget - w + 1) for w in widths]
    out = []
    for xs in itertools.product(*ranges):
        if all(xs[j] + widths[j] <= xs[j + 1] for j in range(len(xs) - 1)):
            out.append(xs)
    return out


def _layer_rep(refs: tuple[VertexRef, ...], xs: tuple[int, ...]) -> dict[VertexRef, int]:
    return dict(zip(refs, xs))


def brute_force(
    g: LayeredGraph,
    width_budget: Union[int, str] = AUTO,
    cap: int = DEFAULT_CAP,
) -> tuple[int, Representation]:
    """Maximum contacts and the lexicographically smallest optimal witness."""
    budget = auto_budget(g) if width_budget == AUTO else int(width_budget)
    count = placement_count(g, budget)
    if count > cap:
        raise EnumerationCapError(f"{count} placements exceed the enumeration cap {cap}")
    L = g.num_layers
    if L == 0:
        return 0, Representation({})
    placements = [_layer_placements(g.widths[i], budget) for i in range(L)]
    if any(not p for p in placements):
        raise WidthBudgetError(f"some layer does not fit in width {budget}")

    # single-layer and layer-pair scores; None marks an invalid combination
    singles = []
    one_layer = [induced_layer_slice(g, i, i).graph for i in range(1, L + 1)]
    for i in range(L):
        scores = []
        for xs in placements[i]:
            rep = evaluate(one_layer[i], Representation(_layer_rep(one_layer[i].refs[0], xs)))
            scores.append(rep.total_contacts if rep.valid else None)
        singles.append(scores)
    pair_scores = []
    for i in range(L - 1):
        two = induced_layer_slice(g, i + 1, i + 2).graph
        table = {}
        for a, xa in enumerate(placements[i]):
            if singles[i][a] is None:
                continue
            for b, xb in enumerate(placements[i + 1]):
                if singles[i + 1][b] is None:
                    continue
                pos = _layer_rep(two.refs[0], xa) | _layer_rep(two.refs[1], xb)
                rep = evaluate(two, Representation(pos))
                if rep.valid:
                    # vertical contacts only; horizontal ones are counted in singles
                    table[a, b] = rep.vertical_per_pair[(1, 2)]
        pair_scores.append(table)

    # best[i][a]: best score of layers i.. given placement a on layer i
    NEG = None
    best: list[list[Optional[int]]] = [[NEG] * len(p) for p in placements]
    for a, s in enumerate(singles[L - 1]):
        best[L - 1][a] = s
    for i in range(L - 2, -1, -1):
        for a, s in enumerate(singles[i]):
            if s is None:
                continue
            top = NEG
            for b in range(len(placements[i + 1])):
                nb = best[i + 1][b]
                v = pair_scores[i].get((a, b))
                if nb is None or v is None:
                    continue
                if top is None or v + nb > top:
                    top = v + nb
            if top is not None:
                best[i][a] = s + top
    opt = max((v for v in best[0] if v is not None), default=None)
    if opt is None:
        raise WidthBudgetError(f"no valid representation fits in width {budget}")

    # placements are generated in lexicographic order, so first hit is smallest
    chosen = [next(a for a, v in enumerate(best[0]) if v == opt)]
    remaining = opt - singles[0][chosen[0]]
    for i in range(1, L):
        a = chosen[-1]
        for b in range(len(placements[i])):
            nb, v = best[i][b], pair_scores[i - 1].get((a, b))
            if nb is not None and v is not None and v + nb == remaining:
                chosen.append(b)
                remaining -= v + singles[i][b]
                break
    positions: dict[VertexRef, int] = {}
    for i, a in enumerate(chosen):
        positions |= _layer_rep(g.refs[i], placements[i][a])
    return opt, Representation(positions)


def brute_force_naive(g: LayeredGraph, width_budget: int, cap: int = 10**6) -> int:
    """Plain product enumeration; only for cross-checking on micro instances."""
    verts = list(g.vertices())
    if placement_count(g, width_budget) > cap:
        raise EnumerationCapError("too many placements for naive enumeration")
    best = -1
    for xs in itertools.product(*(range(width_budget - g.width(v) + 1) for v in verts)):
        rep = evaluate(g, Representation(dict(zip(verts, xs))))
        if rep.valid:
            best = max(best, rep.total_contacts)
    return best
