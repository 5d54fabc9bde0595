"""Seeded random layered instances."""

from __future__ import annotations

import random
from typing import Union

from .model import LayeredGraph


def random_instance(
    layers: int,
    per_layer: Union[int, tuple[int, int]],
    max_width: int,
    seed: int,
    edge_prob: float = 0.7,
) -> LayeredGraph:
    """Random valid instance; ``per_layer`` is a fixed size or an inclusive range."""
    rng = random.Random(seed)
    lo, hi = (per_layer, per_layer) if isinstance(per_layer, int) else per_layer
    sizes = [rng.randint(lo, hi) for _ in range(layers)]
    widths = [[rng.randint(1, max_width) for _ in range(s)] for s in sizes]
    edges = []
    for i, s in enumerate(sizes, 1):
        for j in range(1, s):
            if rng.random() < edge_prob:
                edges.append(((i, j), (i, j + 1)))
    for i in range(1, layers):
        pairs = [(a, b) for a in range(1, sizes[i - 1] + 1) for b in range(1, sizes[i] + 1)]
        rng.shuffle(pairs)
        kept: list[tuple[int, int]] = []
        for a, b in pairs:
            if rng.random() >= edge_prob:
                continue
            if all((a - c) * (b - d) >= 0 for c, d in kept):
                kept.append((a, b))
        edges.extend(((i, a), (i + 1, b)) for a, b in sorted(kept))
    return LayeredGraph(widths, edges)
