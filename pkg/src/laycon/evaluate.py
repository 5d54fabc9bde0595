"""Validity checking and contact counting for representations.

Rectangle of vertex (i, j) occupies ``[x, x + w] x [i - 1, i]``. Two rectangles
are in contact when their boundaries share a segment of positive length.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .model import Edge, LayeredGraph, VertexRef

Coord = Union[int, Fraction]

INTEGER = "integer"
RATIONAL = "rational"
MODELS = (INTEGER, RATIONAL)


class RepresentationError(ValueError):
    """The representation does not fit the graph or its coordinate model."""


@dataclass(frozen=True)
class Representation:
    positions: Mapping[VertexRef, Coord]
    model: str = INTEGER

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise RepresentationError(f"unknown coordinate model {self.model!r}")
        pos = {}
        for v, x in self.positions.items():
            if type(v) is not VertexRef:
                v = VertexRef(*v)
            if type(x) is int:
                pos[v] = x
                continue
            if isinstance(x, bool):
                raise RepresentationError(f"coordinate of {v} is a bool")
            if isinstance(x, float):
                raise RepresentationError(f"coordinate of {v} is a float; use int or Fraction")
            x = Fraction(x)
            if self.model == INTEGER:
                if x.denominator != 1:
                    raise RepresentationError(f"non-integral coordinate {x} for {v} in the integer model")
                pos[v] = int(x)
            else:
                pos[v] = x.numerator if x.denominator == 1 else x
        object.__setattr__(self, "positions", dict(sorted(pos.items())))

    def __getitem__(self, v: VertexRef) -> Coord:
        return self.positions[v]

    def shifted(self, dx: Coord) -> "Representation":
        return Representation({v: x + dx for v, x in self.positions.items()}, self.model)

    def as_model(self, model: str) -> "Representation":
        return Representation(self.positions, model)

    def extent(self, g: LayeredGraph) -> tuple[Coord, Coord]:
        if not self.positions:
            return 0, 0
        lo = min(self.positions.values())
        hi = max(x + g.width(v) for v, x in self.positions.items())
        return lo, hi


@dataclass(frozen=True)
class FalseAdjacency:
    u: VertexRef
    v: VertexRef
    kind: str  # "horizontal" or "vertical"
    segment: tuple[Coord, Coord]

    def __str__(self) -> str:
        a, b = self.segment
        return f"{self.kind} false adjacency {self.u}-{self.v} on [{a}, {b}]"


@dataclass(frozen=True)
class OrderViolation:
    u: VertexRef
    v: VertexRef
    overlap: Coord

    def __str__(self) -> str:
        return f"order violation {self.u} / {self.v}: overlap {self.overlap}"


@dataclass(frozen=True)
class ContactReport:
    realized_edges: frozenset[Edge]
    horizontal_per_layer: dict[int, int]
    vertical_per_pair: dict[tuple[int, int], int]
    false_adjacencies: list[FalseAdjacency] = field(default_factory=list)
    order_violations: list[OrderViolation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.false_adjacencies and not self.order_violations

    @property
    def total_contacts(self) -> int:
        return len(self.realized_edges)


def _check_cover(g: LayeredGraph, r: Representation) -> None:
    have = r.positions.keys()
    want = g.vertex_set
    if have != want:
        missing = sorted(want - have)
        extra = sorted(have - want)
        raise RepresentationError(
            f"position set mismatch: missing {[str(v) for v in missing]}, extra {[str(v) for v in extra]}"
        )


def evaluate(g: LayeredGraph, r: Representation) -> ContactReport:
    """Count realized contacts and collect everything that makes ``r`` invalid."""
    _check_cover(g, r)
    realized: set[Edge] = set()
    horizontal = {i: 0 for i in range(1, g.num_layers + 1)}
    vertical = {(i, i + 1): 0 for i in range(1, g.num_layers)}
    false_adj: list[FalseAdjacency] = []
    order: list[OrderViolation] = []

    pos = r.positions
    edges = g.edges
    for i in range(1, g.num_layers + 1):
        widths = g.widths[i - 1]
        refs = g.refs[i - 1]
        for j in range(1, len(widths)):
            a, b = refs[j - 1], refs[j]
            end = pos[a] + widths[j - 1]
            if end > pos[b]:
                order.append(OrderViolation(a, b, end - pos[b]))
            elif end == pos[b]:
                if (a, b) in edges:
                    realized.add((a, b))
                    horizontal[i] += 1
                else:
                    false_adj.append(FalseAdjacency(a, b, "horizontal", (Fraction(i - 1), Fraction(i))))

    for i in range(1, g.num_layers):
        upper_w = g.widths[i]
        upper = sorted((pos[v], v) for v in g.refs[i])
        starts = [x for x, _ in upper]
        reach = max(upper_w, default=0)
        for a, w in zip(g.refs[i - 1], g.widths[i - 1]):
            a0 = pos[a]
            a1 = a0 + w
            k = bisect.bisect_left(starts, a1) - 1
            # only rectangles starting within the widest upper width of a0 can reach it
            while k >= 0 and starts[k] + reach > a0:
                b0, b = upper[k]
                lo, hi = max(a0, b0), min(a1, b0 + upper_w[b.pos - 1])
                if hi > lo:
                    if (a, b) in edges:
                        realized.add((a, b))
                        vertical[(i, i + 1)] += 1
                    else:
                        false_adj.append(FalseAdjacency(a, b, "vertical", (lo, hi)))
                k -= 1
    false_adj.sort(key=lambda f: (f.u, f.v))
    return ContactReport(frozenset(realized), horizontal, vertical, false_adj, order)


def check_target(g: LayeredGraph, r: Representation, k: int) -> bool:
    report = evaluate(g, r)
    return report.valid and report.total_contacts >= k
