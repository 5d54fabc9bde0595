import random
from pathlib import Path

import pytest

from laycon.generate import random_instance
from laycon.model import LayeredGraph

GOLDEN = Path(__file__).parent / "golden"


def path2() -> LayeredGraph:
    return LayeredGraph([[1, 1]], [((1, 1), (1, 2))])


def unit_triangle() -> LayeredGraph:
    # top v over bottom u, x; v-u, v-x, u-x
    return LayeredGraph([[1, 1], [1]], [((2, 1), (1, 1)), ((2, 1), (1, 2)), ((1, 1), (1, 2))])


def three_layer() -> LayeredGraph:
    """Small triangulated 3-layer graph used in several modules' examples."""
    widths = [[2, 1, 2], [3, 2], [1, 2, 1]]
    edges = [
        ((1, 1), (1, 2)), ((1, 2), (1, 3)),
        ((2, 1), (2, 2)),
        ((3, 1), (3, 2)), ((3, 2), (3, 3)),
        ((1, 1), (2, 1)), ((1, 2), (2, 1)), ((1, 2), (2, 2)), ((1, 3), (2, 2)),
        ((2, 1), (3, 1)), ((2, 1), (3, 2)), ((2, 2), (3, 2)), ((2, 2), (3, 3)),
    ]
    return LayeredGraph(widths, edges)


def corpus(n: int, layers=(1, 3), per_layer=(1, 2), max_width=(1, 3), base_seed: int = 0):
    out = []
    for seed in range(base_seed, base_seed + n):
        rng = random.Random(seed)
        out.append(random_instance(rng.randint(*layers), per_layer, rng.randint(*max_width), seed))
    return out


@pytest.fixture
def golden_dir():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
