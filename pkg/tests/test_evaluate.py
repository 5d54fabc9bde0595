from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laycon.evaluate import INTEGER, RATIONAL, Representation, RepresentationError, check_target, evaluate
from laycon.generate import random_instance
from laycon.model import LayeredGraph, VertexRef

from conftest import three_layer

V = VertexRef


def pair(edge=True):
    return LayeredGraph([[2], [2]], [((1, 1), (2, 1))] if edge else [])


def test_overlap_of_one_is_a_contact():
    rep = evaluate(pair(), Representation({V(1, 1): 0, V(2, 1): 1}))
    assert rep.valid and rep.total_contacts == 1
    assert rep.vertical_per_pair == {(1, 2): 1}


def test_corner_touch_is_nothing():
    rep = evaluate(pair(), Representation({V(1, 1): 0, V(2, 1): 2}))
    assert rep.valid and rep.total_contacts == 0
    rep = evaluate(pair(edge=False), Representation({V(1, 1): 0, V(2, 1): 2}))
    assert rep.valid


def test_flush_non_edge_is_false_adjacency():
    g = LayeredGraph([[1, 1]], [])
    rep = evaluate(g, Representation({V(1, 1): 0, V(1, 2): 1}))
    assert not rep.valid
    assert [(f.u, f.v, f.kind) for f in rep.false_adjacencies] == [(V(1, 1), V(1, 2), "horizontal")]


def test_overlap_without_edge_records_segment():
    rep = evaluate(pair(edge=False), Representation({V(1, 1): 0, V(2, 1): 1}))
    (fa,) = rep.false_adjacencies
    assert fa.kind == "vertical" and fa.segment == (1, 2)


def test_order_violation():
    g = LayeredGraph([[2, 1]], [((1, 1), (1, 2))])
    rep = evaluate(g, Representation({V(1, 1): 0, V(1, 2): 1}))
    assert not rep.valid and rep.order_violations[0].overlap == 1


def test_gaps_are_allowed():
    g = LayeredGraph([[1, 1]], [((1, 1), (1, 2))])
    rep = evaluate(g, Representation({V(1, 1): 0, V(1, 2): 5}))
    assert rep.valid and rep.total_contacts == 0


def test_three_layer_drawing():
    g = three_layer()
    r = Representation({
        V(1, 1): 0, V(1, 2): 2, V(1, 3): 3,
        V(2, 1): 0, V(2, 2): 3,
        V(3, 1): 0, V(3, 2): 1, V(3, 3): 3,
    })
    rep = evaluate(g, r)
    assert rep.valid
    assert rep.horizontal_per_layer == {1: 2, 2: 1, 3: 2}
    assert rep.vertical_per_pair == {(1, 2): 3, (2, 3): 3}
    assert rep.total_contacts == 11
    assert (V(1, 2), V(2, 2)) not in rep.realized_edges


def test_check_target():
    g = three_layer()
    r = Representation({
        V(1, 1): 0, V(1, 2): 2, V(1, 3): 3, V(2, 1): 0, V(2, 2): 3, V(3, 1): 0, V(3, 2): 1, V(3, 3): 3,
    })
    assert check_target(g, r, 11)
    assert not check_target(g, r, 12)
    bad = LayeredGraph([[1, 1]], [])
    assert not check_target(bad, Representation({V(1, 1): 0, V(1, 2): 1}), 0)


def test_position_set_must_match():
    with pytest.raises(RepresentationError):
        evaluate(pair(), Representation({V(1, 1): 0}))
    with pytest.raises(RepresentationError):
        evaluate(pair(), Representation({V(1, 1): 0, V(2, 1): 0, V(3, 1): 0}))


def test_integer_model_rejects_fractions():
    with pytest.raises(RepresentationError):
        Representation({V(1, 1): Fraction(1, 2)}, INTEGER)
    with pytest.raises(RepresentationError):
        Representation({V(1, 1): 0.5}, RATIONAL)
    assert Representation({V(1, 1): Fraction(4, 2)}, INTEGER)[V(1, 1)] == 2


def test_rational_half_overlap_counts():
    rep = evaluate(pair(), Representation({V(1, 1): 0, V(2, 1): Fraction(3, 2)}, RATIONAL))
    assert rep.valid and rep.total_contacts == 1


def layouts(draw_seed, g, spread=3):
    import random

    rng = random.Random(draw_seed)
    pos = {}
    for layer in g.refs:
        x = rng.randint(-spread, spread)
        for v in layer:
            pos[v] = x
            x += g.width(v) + rng.choice([0, 0, 1, 2])
    return pos


graphs = st.builds(random_instance, st.integers(1, 4), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6), st.integers(-20, 20))
def test_shift_invariance(g, seed, dx):
    r = Representation(layouts(seed, g))
    a, b = evaluate(g, r), evaluate(g, r.shifted(dx))
    assert a.realized_edges == b.realized_edges
    assert a.horizontal_per_layer == b.horizontal_per_layer
    assert a.vertical_per_pair == b.vertical_per_pair
    assert [(f.u, f.v, f.kind) for f in a.false_adjacencies] == [(f.u, f.v, f.kind) for f in b.false_adjacencies]
    assert a.order_violations == b.order_violations


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_rational_model_refines_integer(g, seed):
    r = Representation(layouts(seed, g))
    a, b = evaluate(g, r), evaluate(g, r.as_model(RATIONAL))
    assert a.valid == b.valid
    assert a.realized_edges == b.realized_edges


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_mirror_symmetry(g, seed):
    pos = layouts(seed, g)
    n = [len(layer) for layer in g.widths]

    def m(v):
        return VertexRef(v.layer, n[v.layer - 1] + 1 - v.pos)

    mirrored = LayeredGraph([list(reversed(layer)) for layer in g.widths], [(m(u), m(v)) for u, v in g.edges])
    mpos = {m(v): -(x + g.width(v)) for v, x in pos.items()}
    a, b = evaluate(g, Representation(pos)), evaluate(mirrored, Representation(mpos))
    assert a.total_contacts == b.total_contacts
    assert a.valid == b.valid
    assert len(a.false_adjacencies) == len(b.false_adjacencies)


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_report_totals_are_consistent(g, seed):
    rep = evaluate(g, Representation(layouts(seed, g)))
    assert rep.total_contacts == sum(rep.horizontal_per_layer.values()) + sum(rep.vertical_per_pair.values())
    assert rep.realized_edges <= g.edges
    assert rep.valid == (not rep.false_adjacencies and not rep.order_violations)


def brute_evaluate(g, pos):
    """Quadratic reference: compare every pair of rectangles."""
    contacts, false = set(), 0
    vs = list(g.vertices())
    for a in vs:
        for b in vs:
            if b <= a:
                continue
            a0, a1, b0, b1 = pos[a], pos[a] + g.width(a), pos[b], pos[b] + g.width(b)
            if a.layer == b.layer:
                touch = a1 == b0 or b1 == a0
            elif abs(a.layer - b.layer) == 1:
                touch = min(a1, b1) - max(a0, b0) > 0
            else:
                touch = False
            if touch:
                if g.has_edge(a, b):
                    contacts.add((a, b))
                else:
                    false += 1
    return len(contacts), false


@settings(max_examples=150, deadline=None)
@given(graphs, st.integers(0, 10**6))
def test_sweep_matches_pairwise_reference(g, seed):
    pos = layouts(seed, g)
    rep = evaluate(g, Representation(pos))
    if rep.order_violations:
        return
    assert (rep.total_contacts, len(rep.false_adjacencies)) == brute_evaluate(g, pos)
