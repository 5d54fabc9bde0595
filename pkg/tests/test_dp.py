import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laycon.dp import (
    BudgetExceededError,
    CutState,
    InvalidInstanceError,
    LayerCursor,
    initial_state,
    solve_decision,
    solve_exact,
    state_space_bound,
    successors,
)
from laycon.evaluate import evaluate
from laycon.generate import random_instance
from laycon.model import LayeredGraph, VertexRef
from laycon.oracle import brute_force

from conftest import path2, three_layer, unit_triangle

V = VertexRef
NIL = LayerCursor(None, 0)


def state(*cursors, stalled=False):
    return CutState(tuple(LayerCursor(V(*v), l) if v else NIL for v, l in cursors), stalled)


def test_forced_continuation():
    g = LayeredGraph([[3]], [])
    assert successors(g, state(((1, 1), 2))) == [(state(((1, 1), 3)), 0)]


def test_first_shared_column_gains_contact():
    # bottom x (layer 1), top u of width 2 (layer 2)
    g = LayeredGraph([[1], [2]], [((1, 1), (2, 1))])
    succ = dict(successors(g, state(((1, 1), 0), ((2, 1), 1))))
    assert succ[state(((1, 1), 1), ((2, 1), 2))] == 1
    assert succ[state(((1, 1), 0), ((2, 1), 2))] == 0


def cut_example(with_v2_v5=True):
    # layer 1: v1..v4, layer 2: v5 v6, layer 3: v7 v8
    edges = [
        ((1, 1), (1, 2)), ((1, 2), (1, 3)), ((1, 3), (1, 4)), ((2, 1), (2, 2)), ((3, 1), (3, 2)),
        ((1, 1), (2, 1)), ((1, 3), (2, 2)), ((1, 4), (2, 2)),
        ((2, 1), (3, 1)), ((2, 1), (3, 2)), ((2, 2), (3, 2)),
    ]
    if with_v2_v5:
        edges.append(((1, 2), (2, 1)))
    return LayeredGraph([[2, 1, 1, 1], [3, 1], [2, 2]], edges)


def test_three_layer_successor_set():
    s = state(((1, 1), 2), ((2, 1), 1), ((3, 1), 2))
    got = dict(successors(cut_example(), s))
    want = {
        state(((1, 2), 0), ((2, 1), 2), ((3, 2), 0)): 0,
        state(((1, 2), 0), ((2, 1), 2), ((3, 2), 1)): 2,
        state(((1, 2), 1), ((2, 1), 2), ((3, 2), 0)): 2,
        state(((1, 2), 1), ((2, 1), 2), ((3, 2), 1)): 4,
    }
    assert got == want


def test_missing_vertical_edge_prunes_overlap():
    s = state(((1, 1), 2), ((2, 1), 1), ((3, 1), 2))
    got = dict(successors(cut_example(with_v2_v5=False), s))
    assert all(c.cursors[0].progress == 0 for c in got)
    assert len(got) == 2


def test_stall_is_never_repeated():
    g = LayeredGraph([[1], [1]], [])
    s0 = initial_state(g)
    assert s0.stalled_last
    assert all(not t.stalled_last for t, _ in successors(g, s0))
    s1 = state(((1, 1), 0), ((2, 1), 0), stalled=False)
    stalls = [t for t, _ in successors(g, s1) if t.stalled_last]
    assert stalls == [state(((1, 1), 0), ((2, 1), 0), stalled=True)]


def test_flush_without_edge_is_not_offered():
    g = LayeredGraph([[1, 1]], [])
    succ = successors(g, state(((1, 1), 1)))
    assert succ == [(state(((1, 2), 0), stalled=True), 0)]


def test_terminal_state_is_absorbing():
    g = LayeredGraph([[1]], [])
    assert successors(g, state((None, 0))) == [(state((None, 0), stalled=True), 0)]


def test_path():
    assert solve_exact(path2()).contacts == 1
    assert solve_decision(path2(), 1)[0]
    ok, w = solve_decision(path2(), 2)
    assert not ok and w is None


def test_unit_triangle():
    res = solve_exact(unit_triangle())
    assert res.contacts == 2
    assert brute_force(unit_triangle(), 4)[0] == 2
    assert not solve_decision(unit_triangle(), 3)[0]


def test_three_layer_optimum_matches_oracle():
    g = three_layer()
    # every layer fits in 5 columns; 8 leaves room to shift
    res = solve_exact(g, width_budget=8)
    assert res.contacts == brute_force(g, 8)[0] == solve_exact(g).contacts
    rep = evaluate(g, res.witness)
    assert rep.valid and rep.total_contacts == res.contacts


def test_invalid_instance_is_refused():
    g = LayeredGraph([[1, 1], [1, 1]], [((1, 1), (2, 2)), ((1, 2), (2, 1))])
    with pytest.raises(InvalidInstanceError):
        solve_exact(g)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError):
        solve_exact(three_layer(), max_states=5)


def test_width_budget():
    g = LayeredGraph([[1, 1], [2]], [((1, 1), (1, 2)), ((1, 1), (2, 1)), ((1, 2), (2, 1))])
    assert solve_exact(g).contacts == 3
    assert solve_exact(g, width_budget=2).contacts == 3
    res = solve_exact(g, width_budget=2)
    assert max(x + g.width(v) for v, x in res.witness.positions.items()) <= 2
    with pytest.raises(InvalidInstanceError):
        solve_exact(g, width_budget=1)


def test_witness_is_deterministic():
    g = three_layer()
    assert solve_exact(g).witness == solve_exact(g).witness


small = st.builds(random_instance, st.integers(1, 3), st.integers(1, 2), st.integers(1, 3), st.integers(0, 10**6))


@settings(max_examples=60, deadline=None)
@given(small)
def test_witness_soundness_and_state_bound(g):
    res = solve_exact(g)
    rep = evaluate(g, res.witness)
    assert rep.valid and rep.total_contacts == res.contacts
    assert min(res.witness.positions.values()) >= 0
    assert res.visited_states <= state_space_bound(g)


@settings(max_examples=40, deadline=None)
@given(small, st.data())
def test_edge_deletion_never_helps(g, data):
    # a drawing of g - e is a drawing of g with the same contacts
    if not g.edges:
        return
    e = data.draw(st.sampled_from(sorted(g.edges)))
    assert solve_exact(g.without_edge(e)).contacts <= solve_exact(g).contacts


def test_edge_deletion_can_cost_more_than_one():
    # without the flush pair on layer 1 both upper rectangles lose their second contact
    g = random_instance(2, 2, 2, 1)
    assert g.widths == ((2, 1), (2, 2))
    e = (V(1, 1), V(1, 2))
    assert solve_exact(g).contacts == 4
    assert solve_exact(g.without_edge(e)).contacts == 2
    assert brute_force(g.without_edge(e))[0] == 2
