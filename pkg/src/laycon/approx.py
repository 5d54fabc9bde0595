"""Layer-slicing approximations: the even/odd 1/2-approximation and the
Baker-style (1 - 1/l) scheme, both using the exact DP on every slice."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .dp import InvalidInstanceError, solve_exact
from .evaluate import Representation
from .model import LayeredGraph, VertexRef, induced_layer_slice, validate_instance


@dataclass
class SliceSolution:
    """Exact solution of the subgraph induced by one or more contiguous layer blocks.

    ``positions`` are keyed by original vertex refs. A wrapped slice has two blocks.
    """

    blocks: tuple[tuple[int, int], ...]
    contacts: int
    positions: dict[VertexRef, int] = field(repr=False)

    @property
    def layers(self) -> frozenset[int]:
        return frozenset(i for lo, hi in self.blocks for i in range(lo, hi + 1))


@dataclass
class ApproxReport:
    slices: list[SliceSolution]
    groups: list[tuple[int, ...]]
    group_contacts: list[int]
    chosen_group: int
    total_contacts: int
    witness: Representation
    ratio_bound: Fraction
    ell: Optional[int] = None
    padded_layers: int = 0


def _check(g: LayeredGraph) -> None:
    problems = validate_instance(g)
    if problems:
        raise InvalidInstanceError("; ".join(str(p) for p in problems))


def solve_block(g: LayeredGraph, lo: int, hi: int, max_states: Optional[int] = None) -> tuple[int, dict[VertexRef, int]]:
    sl = induced_layer_slice(g, lo, hi)
    res = solve_exact(sl.graph, max_states=max_states)
    return res.contacts, {sl.to_original(v): x for v, x in res.witness.positions.items()}


def _solve_slice(g: LayeredGraph, blocks: Sequence[tuple[int, int]], max_states: Optional[int]) -> SliceSolution:
    total, positions = 0, {}
    for lo, hi in blocks:
        c, pos = solve_block(g, lo, hi, max_states)
        total += c
        positions.update(pos)
    return SliceSolution(tuple(blocks), total, positions)


def assemble_group(g: LayeredGraph, slices: Sequence[SliceSolution]) -> Representation:
    """Combine layer-disjoint slice solutions into one representation of ``g``.

    Every contiguous block (and every layer no slice covers) gets its own
    x-range, one column right of the previous one, so no two blocks can touch.
    """
    seen: set[int] = set()
    blocks: list[tuple[int, int, dict[VertexRef, int]]] = []
    for s in slices:
        for lo, hi in s.blocks:
            layers = set(range(lo, hi + 1))
            if layers & seen:
                raise ValueError(f"slice block [{lo},{hi}] overlaps another slice")
            seen |= layers
            blocks.append((lo, hi, {v: x for v, x in s.positions.items() if lo <= v.layer <= hi}))
    for i in range(1, g.num_layers + 1):
        if i not in seen and g.layer_size(i):
            pos, x = {}, 0
            for v, w in zip(g.refs[i - 1], g.widths[i - 1]):
                pos[v] = x
                x += w + 1
            blocks.append((i, i, pos))
    blocks.sort(key=lambda b: b[0])

    out: dict[VertexRef, int] = {}
    cursor = 0
    for lo, hi, pos in blocks:
        if not pos:
            continue
        left = min(pos.values())
        right = max(x + g.width(v) for v, x in pos.items())
        shift = cursor - left
        for v, x in pos.items():
            out[v] = x + shift
        cursor = right + shift + 1
    return Representation(out)


def _report(g, slices, groups, bound, ell=None, padded=0) -> ApproxReport:
    sums = [sum(slices[k].contacts for k in grp) for grp in groups]
    best = max(range(len(groups)), key=lambda k: (sums[k], -k))
    witness = assemble_group(g, [slices[k] for k in groups[best]])
    return ApproxReport(slices, groups, sums, best, sums[best], witness, bound, ell, padded)


def approx_half(g: LayeredGraph, max_states: Optional[int] = None) -> ApproxReport:
    """Best of the odd and even families of two-layer slices."""
    _check(g)
    L = g.num_layers
    if L <= 1:
        slices = [_solve_slice(g, [(1, 1)], max_states)] if L == 1 else []
        return _report(g, slices, [tuple(range(len(slices)))], Fraction(1))
    slices = [_solve_slice(g, [(i, i + 1)], max_states) for i in range(1, L)]
    odd = tuple(k for k in range(L - 1) if (k + 1) % 2 == 1)
    even = tuple(k for k in range(L - 1) if (k + 1) % 2 == 0)
    return _report(g, slices, [odd, even], Fraction(1, 2))


def cyclic_blocks(start: int, ell: int, L: int) -> list[tuple[int, int]]:
    """Contiguous blocks of layers ``start .. start+ell-1`` taken cyclically in ``1..L``."""
    end = start + ell - 1
    if end <= L:
        return [(start, end)]
    return [(1, end - L), (start, L)]


def ell_from_eps(eps: float) -> int:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return math.ceil(Fraction(eps).limit_denominator(10**9) ** -1)


def approx_ptas(g: LayeredGraph, ell: int, max_states: Optional[int] = None) -> ApproxReport:
    """(1 - 1/ell)-approximation from ``ell``-layer cyclic slices grouped ``ell`` ways."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    _check(g)
    L = g.num_layers
    if ell >= L:
        s = _solve_slice(g, [(1, L)], max_states) if L else SliceSolution((), 0, {})
        return _report(g, [s], [(0,)], Fraction(1), ell)
    padded = (-L) % ell
    gp = LayeredGraph(g.widths + ((),) * padded, g.edges, g.labels + ((),) * padded if g.labels else None)
    Lp = L + padded
    slices = []
    for i in range(1, Lp + 1):
        blocks = cyclic_blocks(i, ell, Lp)
        real = [(lo, min(hi, L)) for lo, hi in blocks if lo <= L]
        sol = _solve_slice(g, real, max_states)
        slices.append(SliceSolution(tuple(blocks), sol.contacts, sol.positions))
    groups = [tuple(range(k, Lp, ell)) for k in range(ell)]
    # dummy layers are empty, so the assembled witness covers exactly g's vertices
    return _report(gp, slices, groups, Fraction(ell - 1, ell), ell, padded)
