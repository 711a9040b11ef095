from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dpl import (
    Angle,
    DuplicateVertexValue,
    EndpointNotRegular,
    InfeasibleParameters,
    NonIncreasingDomain,
    TransverseArc,
    ZeroSlopeSegment,
    classify_preimage,
    crossing_word,
    downward_pair_count,
    frac,
    make_map,
    mod1,
    random_map,
    value_gaps,
)


def tent():
    return make_map([(0, 0), (F(1, 2), F(3, 4))], 0)


# ---------------------------------------------------------------- helpers


def test_frac_accepts_strings_and_ints():
    assert frac("3/4") == F(3, 4)
    assert frac(2) == F(2)
    assert frac(F(1, 3)) == F(1, 3)


def test_mod1_wraps_into_unit_interval():
    assert mod1(F(7, 4)) == F(3, 4)
    assert mod1(F(-1, 4)) == F(3, 4)
    assert mod1(F(3)) == 0


def test_angle_normalizes_and_orders():
    a = Angle(F(5, 4))
    assert a.value == F(1, 4)
    assert a == Angle("1/4")
    assert a.plus(F(7, 8)) == Angle(F(1, 8))
    assert Angle(0).ccw_to(Angle(F(3, 4))) == F(3, 4)
    assert Angle(F(3, 4)).ccw_to(Angle(0)) == F(1, 4)


def test_arc_geometry():
    arc = TransverseArc(Angle(F(7, 8)), Angle(F(1, 8)))
    assert arc.width == F(1, 4)
    assert arc.contains(0)
    assert not arc.contains(F(1, 8))  # open at the endpoints
    assert not arc.contains(F(1, 2))
    assert arc.midpoint() == Angle(0)


def test_arc_orientation_flip():
    arc = TransverseArc(Angle(F(1, 8)), Angle(F(7, 8)), orientation=-1)
    assert arc.ccw_start == Angle(F(7, 8))
    assert arc.ccw_end == Angle(F(1, 8))
    assert arc.width == F(1, 4)


def test_arc_rejects_degenerate_input():
    with pytest.raises(InfeasibleParameters):
        TransverseArc(Angle(0), Angle(1))  # 1 == 0 on the circle
    with pytest.raises(InfeasibleParameters):
        TransverseArc(Angle(0), Angle(F(1, 2)), orientation=2)


# ---------------------------------------------------------------- make_map


def test_make_map_rejects_bad_vertex_data():
    with pytest.raises(NonIncreasingDomain):
        make_map([], 1)
    with pytest.raises(NonIncreasingDomain):
        make_map([(0, 0), (0, F(1, 2))], 0)
    with pytest.raises(ZeroSlopeSegment):
        make_map([(0, 0)], 0)  # a constant map has a flat lap
    with pytest.raises(DuplicateVertexValue):
        # both folds sit at level 0 mod 1
        make_map([(0, 0), (F(1, 2), 1)], 0)


def test_tent_basic_shape():
    f = tent()
    assert f.degree == 0
    assert f.slopes == (F(3, 2), F(-3, 2))
    assert sorted(a.value for a in f.critical_values) == [0, F(3, 4)]
    assert f.evaluate(F(1, 4)) == Angle(F(3, 8))
    assert f.lift_evaluate(F(5, 4)) == F(3, 8)
    assert f.fiber(F(3, 8)) == (F(1, 4), F(3, 4))


def test_fold_free_map_is_rotation_like():
    f = make_map([(F(1, 8), F(1, 3))], 3)
    assert f.slopes == (3,)
    assert f.folds == ()
    assert len(f.fiber(F(1, 7))) == 3


def test_regular_values_exclude_critical_levels():
    f = tent()
    assert not f.is_regular_value(Angle(0))
    assert not f.is_regular_value(Angle(F(3, 4)))
    assert f.is_regular_value(Angle(F(1, 3)))


def test_fiber_is_sorted_within_one_period():
    f = tent()
    pts = f.fiber(Angle(F(1, 2)))
    assert list(pts) == sorted(pts)
    assert all(0 <= x < 1 for x in pts)


def test_signed_fiber_count_is_the_degree():
    f = make_map([(0, 0), (F(1, 4), F(11, 8)), (F(1, 2), F(9, 8)), (F(3, 4), F(39, 16))], 2)
    for y in (F(1, 16), F(1, 5), F(5, 12), F(99, 100)):
        if f.is_regular_value(Angle(y)):
            assert f.signed_fiber_count(y) == 2


# ---------------------------------------------------------------- reflect


def test_reflect_negates_degree_and_composes_with_minus():
    f = make_map([(0, 0), (F(1, 4), F(11, 8)), (F(1, 2), F(9, 8)), (F(3, 4), F(39, 16))], 2)
    g = f.reflect()
    assert g.degree == -2
    for k in range(1, 25):
        x = F(k, 25)
        assert g.evaluate(x) == f.evaluate(mod1(-x)), x


def test_reflect_is_an_involution():
    f = tent()
    assert f.reflect().reflect() == f


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_reflect_pointwise_on_random_maps(seed):
    f = random_map(seed, 8, 3)
    g = f.reflect()
    assert g.degree == -f.degree
    for k in range(1, 12):
        x = F(k, 13)
        assert g.evaluate(x) == f.evaluate(mod1(-x))


# ---------------------------------------------------------------- classification


def test_tent_arc_classification():
    f = tent()
    cls = classify_preimage(f, TransverseArc(Angle(F(1, 4)), Angle(F(3, 8))))
    kinds = sorted(c.kind for c in cls.components)
    assert kinds == ["negative", "positive"]
    assert cls.positive_count - cls.negative_count == f.degree
    for c in cls.components:
        assert c.start < c.end <= c.start + 1


def test_classification_rejects_critical_endpoint():
    with pytest.raises(EndpointNotRegular):
        classify_preimage(tent(), TransverseArc(Angle(0), Angle(F(1, 4))))


def test_component_membership_lookup():
    f = tent()
    cls = classify_preimage(f, TransverseArc(Angle(F(1, 4)), Angle(F(3, 8))))
    c = cls.component_containing(F(1, 5))
    assert c is not None and c.contains(F(1, 5))
    assert cls.component_containing(F(1, 2)) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_signed_component_count_matches_degree(seed):
    """positive minus negative components is the mapping degree."""
    f = random_map(seed, 8, 3)
    probe = f if f.degree >= 0 else f.reflect()
    for lo, width in value_gaps(probe):
        a = Angle(lo + width / 3)
        b = Angle(lo + width * 2 / 3)
        cls = classify_preimage(probe, TransverseArc(a, b))
        assert cls.positive_count - cls.negative_count == probe.degree
        break


# ---------------------------------------------------------------- level diagnostics


def test_crossing_word_orders_by_domain():
    f = tent()
    assert crossing_word(f, F(3, 8)) == (1, -1)
    assert downward_pair_count(f, F(3, 8)) == 0


def test_deep_tent_levels_are_swept():
    f = make_map([(0, 0), (F(1, 2), F(8, 5))], 0)
    assert value_gaps(f) == ((F(0), F(3, 5)), (F(3, 5), F(2, 5)))
    assert crossing_word(f, F(1, 4)) == (1, 1, -1, -1)
    assert downward_pair_count(f, F(1, 4)) == 1
    assert downward_pair_count(f, F(4, 5)) == 0


def test_crossing_word_needs_regular_value():
    with pytest.raises(EndpointNotRegular):
        crossing_word(tent(), F(3, 4))


def test_value_gaps_cover_the_circle():
    f = make_map([(0, 0), (F(1, 4), F(11, 8)), (F(1, 2), F(9, 8)), (F(3, 4), F(39, 16))], 2)
    gaps = value_gaps(f)
    assert sum(w for _, w in gaps) == 1
    starts = [lo for lo, _ in gaps]
    assert starts == sorted(starts)


def test_value_gaps_of_fold_free_map():
    f = make_map([(0, 0)], 2)
    assert value_gaps(f) == ((F(0), F(1)),)


# ---------------------------------------------------------------- random maps


def test_random_map_is_deterministic():
    assert random_map(123, 10, 3) == random_map(123, 10, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_map_respects_bounds(seed):
    f = random_map(seed, 10, 3)
    assert abs(f.degree) <= 3
    assert len(f.folds) <= 10
    assert len(f.folds) % 2 == 0


def test_random_map_validates_bounds():
    with pytest.raises(InfeasibleParameters):
        random_map(0, -1, 2)
    with pytest.raises(InfeasibleParameters):
        random_map(0, 0, 0)  # no folds and degree 0 is impossible


def test_random_map_output_is_generic():
    seen_folds = set()
    for seed in range(30):
        f = random_map(seed, 8, 2)
        seen_folds.add(len(f.folds))
        levels = [v for _, v in f.folds]
        assert len(set(levels)) == len(levels)
    assert len(seen_folds) > 1  # the generator actually varies
