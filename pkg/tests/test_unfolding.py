from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dpl import (
    Angle,
    InfeasibleParameters,
    TransverseArc,
    build_euler_graph,
    classify_preimage,
    corner_connectivity,
    eliminate_negative_arcs,
    eulerian_resolution,
    find_balanced_path,
    make_interval_map,
    make_map,
    pair_count_check,
    random_admissible_graph,
    random_map,
    resolution_choices,
    surgery_parity,
    trace_circuits,
)
from dpl.unfolding import (
    Infeasible,
    IntervalMapPair,
    NoOppositeArc,
    PreconditionUnmet,
    UnfoldingBlocked,
)


def tent():
    return make_map([(0, 0), (F(1, 2), F(3, 4))], 0)


def deep_tent():
    # the downward lap crosses every level below 3/5 twice in a row
    return make_map([(0, 0), (F(1, 2), F(8, 5))], 0)


# ---------------------------------------------------------------- balanced paths


def test_tent_balanced_path_is_one_sided():
    f = tent()
    arc = TransverseArc(Angle(F(1, 4)), Angle(F(3, 8)))
    cls = classify_preimage(f, arc)
    neg = next(i for i, c in enumerate(cls.components) if c.kind == "negative")
    path = find_balanced_path(f, arc, neg, cls)
    assert path.one_sided
    assert path.skipped == ()
    assert path.start_component == neg
    assert cls.components[path.end_component].kind == "positive"
    assert path.direction == 1
    assert path.start_point < path.end_point
    from dpl import mod1

    assert mod1(path.level) == arc.ccw_start.value
    assert f.evaluate(mod1(path.start_point)) == f.evaluate(mod1(path.end_point))


def test_balanced_path_needs_an_arc_component():
    f = tent()
    arc = TransverseArc(Angle(F(7, 8)), Angle(F(3, 8)))  # already unfolded
    cls = classify_preimage(f, arc)
    assert cls.neutral_count == 1
    neutral = next(i for i, c in enumerate(cls.components) if c.kind == "neutral")
    with pytest.raises(PreconditionUnmet):
        find_balanced_path(f, arc, neutral, cls)


def test_balanced_path_absent_partner():
    f = make_map([(0, 0)], 2)  # no folds: positive components only
    arc = TransverseArc(Angle(F(1, 8)), Angle(F(1, 4)))
    cls = classify_preimage(f, arc)
    with pytest.raises(NoOppositeArc):
        find_balanced_path(f, arc, 0, cls)


# ---------------------------------------------------------------- unfolding


def test_tent_unfold_trace_is_the_frozen_one():
    f = tent()
    arc, trace = eliminate_negative_arcs(f, TransverseArc(Angle(F(1, 4)), Angle(F(3, 8))))
    assert arc == TransverseArc(Angle(F(7, 8)), Angle(F(3, 8)))
    assert arc.width == F(1, 2)
    assert not trace.reflected
    assert [s.negative_count for s in trace.steps] == [1, 0]
    assert trace.steps[0].extended_start == Angle(F(7, 8))
    assert trace.steps[0].path is not None


def test_unfold_default_arc_lands_in_a_quiet_gap():
    arc, trace = eliminate_negative_arcs(deep_tent())
    assert trace.steps[-1].negative_count == 0
    assert trace.steps[-1].positive_count == 0  # degree 0
    # the chosen arc must avoid the swept band below 3/5
    assert F(3, 5) <= trace.steps[0].arc.ccw_end.value < 1


def test_unfold_blocked_when_every_end_is_swept():
    f = deep_tent()
    trapped = TransverseArc(Angle(F(11, 20)), Angle(F(1, 20)))
    with pytest.raises(UnfoldingBlocked):
        eliminate_negative_arcs(f, trapped)


def test_unfold_negative_degree_goes_through_reflection():
    f = make_map([(0, 0), (F(1, 3), F(-5, 4)), (F(2, 3), F(-7, 4))], -2)
    arc, trace = eliminate_negative_arcs(f)
    assert trace.reflected
    assert trace.steps[-1].negative_count == 0
    assert trace.steps[-1].positive_count == 2


def test_unfold_modes_agree_on_plain_maps():
    f = tent()
    start = TransverseArc(Angle(F(1, 4)), Angle(F(3, 8)))
    plain_arc, _ = eliminate_negative_arcs(f, start, mode="plain")
    open_arc, _ = eliminate_negative_arcs(f, start, mode="open-subset")
    assert plain_arc == open_arc


def test_unfold_regular_value_mode_clears_the_fiber():
    f = tent()
    arc, trace = eliminate_negative_arcs(f, mode="regular-value", value=F(1, 8))
    assert trace.mode == "regular-value"
    cls = classify_preimage(f, arc)
    for x in f.fiber(F(1, 8)):
        comp = cls.component_containing(x)
        assert comp is not None and comp.kind in ("positive", "circle")


def test_unfold_rejects_unknown_mode():
    with pytest.raises(ValueError):
        eliminate_negative_arcs(tent(), mode="inside-out")


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=100_000))
def test_unfold_traces_shrink_strictly(seed):
    """Negative counts decrease strictly and arcs stay nested."""
    f = random_map(seed, 10, 3)
    base = f if f.degree >= 0 else f.reflect()
    arc, trace = eliminate_negative_arcs(f)
    ms = [s.negative_count for s in trace.steps]
    for a, b in zip(ms, ms[1:]):
        if a > 0:
            assert b < a
    assert ms[-1] == 0
    assert trace.steps[-1].positive_count == base.degree
    widths = [s.arc.width for s in trace.steps]
    assert widths == sorted(widths)


# ---------------------------------------------------------------- pair counts


def test_pair_count_rows_tent():
    f = tent()
    arc, _ = eliminate_negative_arcs(f, TransverseArc(Angle(F(1, 4)), Angle(F(3, 8))))
    report = pair_count_check(f, arc)
    assert report.ok
    assert report.fiber_points == ()
    assert [(r.expected, r.actual) for r in report.rows] == [(0, 0), (0, 0)]


def test_pair_count_rows_deg2():
    f = make_map(
        [(0, 0), (F(1, 4), F(11, 8)), (F(1, 2), F(9, 8)), (F(3, 4), F(39, 16))], 2
    )
    arc, _ = eliminate_negative_arcs(f)
    report = pair_count_check(f, arc)
    assert report.ok
    assert len(report.fiber_points) == 2
    assert sorted(r.expected for r in report.rows) == [0, 0, 0, 0, 1]


def test_pair_count_requires_unfolded_arc():
    f = tent()
    with pytest.raises(PreconditionUnmet):
        pair_count_check(f, TransverseArc(Angle(F(1, 4)), Angle(F(3, 8))))
    neg = make_map([(0, 0), (F(1, 3), F(-5, 4)), (F(2, 3), F(-7, 4))], -2)
    arc, _ = eliminate_negative_arcs(neg)
    with pytest.raises(PreconditionUnmet):
        pair_count_check(neg, arc)


# ---------------------------------------------------------------- interval pairs


def test_corner_connectivity_identity_pair():
    idn = make_interval_map([(0, 0), (1, 1)])
    zig = make_interval_map([(0, 0), (F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (1, 1)])
    report = corner_connectivity(IntervalMapPair(idn, zig))
    assert report.connected
    assert not report.collar_extended
    assert report.component_count == 1
    assert report.witness[0] == (F(0), F(0))
    assert report.witness[-1] == (F(1), F(1))


def test_corner_connectivity_two_zigzags():
    zig = make_interval_map([(0, 0), (F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (1, 1)])
    zag = make_interval_map([(0, 0), (F(1, 4), F(3, 4)), (F(1, 2), F(1, 4)), (1, 1)])
    report = corner_connectivity(IntervalMapPair(zig, zag))
    assert report.connected
    assert report.component_count == 1


def test_corner_connectivity_collar_cases():
    idn = make_interval_map([(0, 0), (1, 1)])
    zag = make_interval_map([(0, 0), (F(1, 4), F(3, 4)), (F(1, 2), F(1, 4)), (1, 1)])
    touch = make_interval_map([(0, 0), (F(1, 2), 1), (F(3, 4), F(1, 2)), (1, 1)])
    r1 = corner_connectivity(IntervalMapPair(idn, touch))
    assert r1.connected and r1.collar_extended and r1.component_count == 1
    r2 = corner_connectivity(IntervalMapPair(zag, touch))
    assert r2.connected and r2.collar_extended and r2.component_count == 2


def test_corner_connectivity_rejects_shared_fold_values():
    a = make_interval_map([(0, 0), (F(1, 3), F(1, 2)), (F(1, 2), F(1, 4)), (1, 1)])
    b = make_interval_map([(0, 0), (F(1, 4), F(1, 2)), (F(3, 4), F(1, 8)), (1, 1)])
    from dpl import DuplicateVertexValue

    with pytest.raises(DuplicateVertexValue):
        corner_connectivity(IntervalMapPair(a, b))


def test_interval_map_validation():
    from dpl import NonIncreasingDomain, ZeroSlopeSegment

    with pytest.raises(NonIncreasingDomain):
        make_interval_map([(0, 0)])
    with pytest.raises(ZeroSlopeSegment):
        make_interval_map([(0, 0), (F(1, 2), 0), (1, 1)])
    with pytest.raises(PreconditionUnmet):
        make_interval_map([(0, F(1, 8)), (1, 1)])


# ---------------------------------------------------------------- euler graphs


def test_build_euler_graph_checks_degrees():
    with pytest.raises(InfeasibleParameters):
        build_euler_graph([(0, 1), (1, 0)])
    with pytest.raises(InfeasibleParameters):
        build_euler_graph([], free_loops=-1)


def test_two_vertex_graph_resolves_to_one_circuit():
    g = build_euler_graph([(0, 1), (0, 1), (1, 0), (1, 0)])
    res = eulerian_resolution(g)
    assert sorted(res.circuit) == [0, 1, 2, 3]
    assert len(trace_circuits(g, res.pairing)) == 1


def test_resolution_choices_enumerate_all_pairings():
    g = build_euler_graph([(0, 1), (0, 1), (1, 0), (1, 0)])
    choices = list(resolution_choices(g))
    assert len(choices) == 4  # 2^2 vertices
    singles = [p for p in choices if len(trace_circuits(g, p)) == 1]
    assert eulerian_resolution(g).pairing in singles
    counts = sorted(len(trace_circuits(g, p)) for p in choices)
    assert counts[0] == 1 and counts[-1] >= 2


def test_free_loops_are_their_own_components():
    g = build_euler_graph([(0, 0), (0, 0)], free_loops=2)
    assert g.component_count == 3
    res = eulerian_resolution(g, component=2)
    assert res.pairing == () and res.circuit == ()
    assert trace_circuits(g, (), component=2) == ((),)


def test_disconnected_graph_resolves_per_component():
    g = build_euler_graph([(0, 0), (0, 0), (1, 1), (1, 1)])
    assert len(g.components) == 2
    for c in range(2):
        res = eulerian_resolution(g, c)
        assert len(trace_circuits(g, res.pairing, c)) == 1


def test_component_out_of_range():
    g = build_euler_graph([(0, 0), (0, 0)])
    with pytest.raises(InfeasibleParameters):
        eulerian_resolution(g, component=5)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=9))
def test_random_graphs_always_resolve(seed, n):
    g = random_admissible_graph(seed, n)
    for c in range(len(g.components)):
        res = eulerian_resolution(g, c)
        circuits = trace_circuits(g, res.pairing, c)
        assert len(circuits) == 1
        assert sorted(circuits[0]) == sorted(g.component_edges(c))


# ---------------------------------------------------------------- surgery parity


def test_surgery_parity_frozen_triple():
    assert surgery_parity(4, 12, 15) == (False, 1)


def test_surgery_parity_orientable_cases():
    assert surgery_parity(4, 12, 8) == (True, 0)
    assert surgery_parity(3, 3, 2) == (True, 0)
    assert surgery_parity(3, 3, 3) == (False, 1)


def test_surgery_parity_infeasible():
    with pytest.raises(Infeasible):
        surgery_parity(4, 12, 7)
    with pytest.raises(InfeasibleParameters):
        surgery_parity(0, 3, 3)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=1, max_value=30),
    st.integers(min_value=0, max_value=80),
)
def test_surgery_parity_matches_its_definition(c_in, c_out, n):
    delta = abs(c_out - c_in)
    if n < delta:
        with pytest.raises(Infeasible):
            surgery_parity(c_in, c_out, n)
        return
    feasible, minimum = surgery_parity(c_in, c_out, n)
    assert feasible == ((n - delta) % 2 == 0)
    assert minimum == (0 if feasible else 1)
