"""Layered vertex-weighted graphs with positional vertex addressing."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class VertexRef(NamedTuple):
    """1-based (layer, position) address of a vertex."""

    layer: int
    pos: int

    def __str__(self) -> str:
        return f"({self.layer},{self.pos})"


Edge = tuple[VertexRef, VertexRef]


def make_edge(a: Sequence[int], b: Sequence[int]) -> Edge:
    """Return the canonical (sorted) form of an undirected edge."""
    u, v = VertexRef(*a), VertexRef(*b)
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.rule}: {self.subject}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class LayeredGraph:
    """Immutable layered graph.

    ``widths[i-1][j-1]`` is the width of vertex (i, j). Layers may be empty
    (used for padding). Edges are stored in canonical sorted form; structural
    rules on edges are checked by :func:`validate_instance`, not here.
    """

    widths: tuple[tuple[int, ...], ...]
    edges: frozenset[Edge]
    labels: Optional[tuple[tuple[str, ...], ...]] = field(default=None, compare=False)

    def __init__(
        self,
        widths: Iterable[Iterable[int]],
        edges: Iterable[tuple[Sequence[int], Sequence[int]]] = (),
        labels: Optional[Iterable[Iterable[str]]] = None,
    ) -> None:
        w = tuple(tuple(layer) for layer in widths)
        for i, layer in enumerate(w, 1):
            for j, x in enumerate(layer, 1):
                if isinstance(x, bool) or not isinstance(x, int) or x < 1:
                    raise ValueError(f"vertex ({i},{j}) has width {x!r}; widths must be integers >= 1")
        object.__setattr__(self, "widths", w)
        object.__setattr__(self, "edges", frozenset(make_edge(a, b) for a, b in edges))
        if labels is not None:
            lab = tuple(tuple(str(s) for s in layer) for layer in labels)
            if [len(x) for x in lab] != [len(x) for x in w]:
                raise ValueError("labels must have the same shape as widths")
            object.__setattr__(self, "labels", lab)
        else:
            object.__setattr__(self, "labels", None)

    @property
    def num_layers(self) -> int:
        return len(self.widths)

    @property
    def n(self) -> int:
        return sum(len(layer) for layer in self.widths)

    @property
    def max_width(self) -> int:
        return max((x for layer in self.widths for x in layer), default=0)

    @property
    def total_width(self) -> int:
        return sum(sum(layer) for layer in self.widths)

    def layer_size(self, layer: int) -> int:
        return len(self.widths[layer - 1])

    def width(self, v: VertexRef) -> int:
        return self.widths[v.layer - 1][v.pos - 1]

    def label(self, v: VertexRef) -> Optional[str]:
        if self.labels is None:
            return None
        return self.labels[v.layer - 1][v.pos - 1]

    def vertices(self) -> Iterator[VertexRef]:
        for i, layer in enumerate(self.widths, 1):
            for j in range(1, len(layer) + 1):
                yield VertexRef(i, j)

    def contains(self, v: VertexRef) -> bool:
        return 1 <= v.layer <= self.num_layers and 1 <= v.pos <= self.layer_size(v.layer)

    def has_edge(self, u: VertexRef, v: VertexRef) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.edges

    @cached_property
    def vertex_set(self) -> frozenset[VertexRef]:
        return frozenset(self.vertices())

    @cached_property
    def refs(self) -> tuple[tuple[VertexRef, ...], ...]:
        """``refs[i-1][j-1] == VertexRef(i, j)``."""
        return tuple(tuple(VertexRef(i, j) for j in range(1, len(layer) + 1)) for i, layer in enumerate(self.widths, 1))

    def horizontal_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e[0].layer == e[1].layer)

    def vertical_edges(self) -> list[Edge]:
        return sorted(e for e in self.edges if e[0].layer != e[1].layer)

    def without_edge(self, e: Edge) -> "LayeredGraph":
        e = make_edge(*e)
        return LayeredGraph(self.widths, self.edges - {e}, self.labels)


def validate_instance(g: LayeredGraph) -> list[Violation]:
    """List every structural rule the instance breaks (empty when valid)."""
    out: list[Violation] = []
    vertical_by_pair: dict[int, list[Edge]] = {}
    for u, v in sorted(g.edges):
        name = f"{u}-{v}"
        if u == v:
            out.append(Violation("self-loop", name))
            continue
        if not (g.contains(u) and g.contains(v)):
            out.append(Violation("unknown vertex", name))
            continue
        if u.layer == v.layer:
            if abs(u.pos - v.pos) != 1:
                out.append(Violation("non-consecutive same-layer edge", name))
        elif abs(u.layer - v.layer) != 1:
            out.append(Violation("non-adjacent-layer edge", name))
        else:
            vertical_by_pair.setdefault(u.layer, []).append((u, v))
    # duplicates cannot survive canonicalisation into a frozenset
    for layer, edges in sorted(vertical_by_pair.items()):
        for a in range(len(edges)):
            for b in range(a + 1, len(edges)):
                (p, q), (r, s) = edges[a], edges[b]
                if (p.pos - r.pos) * (q.pos - s.pos) < 0:
                    out.append(Violation("crossing", f"{p}-{q} x {r}-{s}", f"between layers {layer},{layer + 1}"))
    return out


@dataclass(frozen=True)
class LayerSlice:
    graph: LayeredGraph
    lo: int
    hi: int

    def to_original(self, v: VertexRef) -> VertexRef:
        return VertexRef(v.layer + self.lo - 1, v.pos)

    def from_original(self, v: VertexRef) -> VertexRef:
        return VertexRef(v.layer - self.lo + 1, v.pos)


def induced_layer_slice(g: LayeredGraph, lo: int, hi: int) -> LayerSlice:
    """Subgraph induced by layers ``lo..hi`` renumbered to ``1..hi-lo+1``."""
    if not (1 <= lo <= hi <= g.num_layers):
        raise IndexError(f"invalid layer range [{lo},{hi}] for a graph with {g.num_layers} layers")
    shift = lo - 1
    edges = [
        ((u.layer - shift, u.pos), (v.layer - shift, v.pos))
        for u, v in g.edges
        if lo <= u.layer <= hi and lo <= v.layer <= hi
    ]
    labels = g.labels[lo - 1 : hi] if g.labels is not None else None
    return LayerSlice(LayeredGraph(g.widths[lo - 1 : hi], edges, labels), lo, hi)
