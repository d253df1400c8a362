import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fpindex.errors import PointOnLoop
from fpindex.exact_geom import (
    MeetKind,
    PLLoop,
    PointLocation,
    RatPoint,
    Segment,
    cmp_directions_ccw,
    interior_point,
    orient2d,
    point_in_polygon,
    point_on_segment,
    pt,
    rat,
    segment_intersection,
    signed_area,
    winding_number,
    winding_of_cycle,
)
from geomgen import parity_ray_oracle, star_polygon, turning_winding_oracle

UNIT_SQUARE = PLLoop((pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)))

coords = st.integers(min_value=-50, max_value=50)
points = st.builds(lambda a, b, c, d: RatPoint(Fraction(a, c), Fraction(b, d)),
                   coords, coords,
                   st.integers(min_value=1, max_value=8),
                   st.integers(min_value=1, max_value=8))


def test_rat_coercions():
    assert rat(3) == Fraction(3)
    assert rat("2/7") == Fraction(2, 7)
    assert rat(Fraction(1, 2)) == Fraction(1, 2)


def test_orient2d_basic():
    assert orient2d(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orient2d(pt(0, 0), pt(0, 1), pt(1, 0)) == -1
    assert orient2d(pt(0, 0), pt(1, 1), pt(2, 2)) == 0


@given(points, points, points)
def test_orient2d_antisymmetric(a, b, c):
    assert orient2d(a, b, c) == -orient2d(b, a, c)
    assert orient2d(a, b, c) == orient2d(b, c, a)


def test_segment_requires_distinct_endpoints():
    with pytest.raises(ValueError):
        Segment(pt(1, 1), pt(1, 1))


def test_segment_intersection_proper():
    s = Segment(pt(0, 0), pt(2, 2))
    t = Segment(pt(0, 2), pt(2, 0))
    m = segment_intersection(s, t)
    assert m.kind == MeetKind.PROPER
    assert m.point == pt(1, 1)


def test_segment_intersection_t_contact_is_degenerate():
    # Endpoint of one segment in the interior of the other.
    s = Segment(pt(0, 0), pt(2, 0))
    t = Segment(pt(1, 0), pt(1, 1))
    assert segment_intersection(s, t).kind == MeetKind.DEGENERATE


def test_segment_intersection_shared_endpoint_is_degenerate():
    s = Segment(pt(0, 0), pt(1, 0))
    t = Segment(pt(1, 0), pt(1, 1))
    assert segment_intersection(s, t).kind == MeetKind.DEGENERATE


def test_segment_intersection_collinear_overlap_is_degenerate():
    s = Segment(pt(0, 0), pt(2, 0))
    t = Segment(pt(1, 0), pt(3, 0))
    assert segment_intersection(s, t).kind == MeetKind.DEGENERATE


def test_segment_intersection_collinear_disjoint_is_empty():
    s = Segment(pt(0, 0), pt(1, 0))
    t = Segment(pt(2, 0), pt(3, 0))
    assert segment_intersection(s, t).kind == MeetKind.EMPTY


def test_segment_intersection_disjoint():
    s = Segment(pt(0, 0), pt(1, 0))
    t = Segment(pt(0, 1), pt(1, 1))
    assert segment_intersection(s, t).kind == MeetKind.EMPTY


@given(points, points, points, points)
def test_segment_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    s, t = Segment(a, b), Segment(c, d)
    m1, m2 = segment_intersection(s, t), segment_intersection(t, s)
    assert m1.kind == m2.kind
    if m1.kind == MeetKind.PROPER:
        assert m1.point == m2.point


def test_point_on_segment():
    seg = Segment(pt(0, 0), pt(4, 2))
    assert point_on_segment(seg, pt(2, 1))
    assert point_on_segment(seg, pt(0, 0))
    assert not point_on_segment(seg, pt(2, 2))
    assert not point_on_segment(seg, pt(6, 3))


def test_loop_validation():
    with pytest.raises(ValueError):
        PLLoop((pt(0, 0), pt(1, 0)))
    with pytest.raises(ValueError):
        PLLoop((pt(0, 0), pt(0, 0), pt(1, 1)))


def test_signed_area_unit_square():
    assert signed_area(UNIT_SQUARE) == 1
    assert signed_area(UNIT_SQUARE.reversed_loop()) == -1


def test_winding_unit_square():
    center = pt("1/2", "1/2")
    assert winding_number(UNIT_SQUARE, center) == 1
    assert winding_number(UNIT_SQUARE.reversed_loop(), center) == -1
    assert winding_number(UNIT_SQUARE, pt(2, 2)) == 0


def test_winding_point_on_loop_rejected():
    with pytest.raises(PointOnLoop):
        winding_number(UNIT_SQUARE, pt(0, 0))
    with pytest.raises(PointOnLoop):
        winding_number(UNIT_SQUARE, pt("1/2", 0))


def test_winding_doubled_square_is_two():
    # Traversing the square twice. Expected value 2 frozen from the
    # turning-angle oracle below.
    doubled = list(UNIT_SQUARE.vertices) * 2
    center = pt("1/2", "1/2")
    assert turning_winding_oracle(doubled, center) == 2
    loop = PLLoop(tuple(doubled))
    assert winding_number(loop, center) == 2


def test_winding_matches_turning_oracle_random():
    rng = random.Random(7)
    for _ in range(50):
        loop = star_polygon(rng, rng.randrange(4, 10), pt(0, 0),
                            Fraction(1), Fraction(5))
        p = pt(Fraction(rng.randrange(-6, 7), 7), Fraction(rng.randrange(-6, 7), 7))
        try:
            w = winding_number(loop, p)
        except PointOnLoop:
            continue
        assert w == turning_winding_oracle(list(loop.vertices), p)


@given(points)
def test_winding_translation_invariant(v):
    center = pt("1/2", "1/2")
    assert winding_number(UNIT_SQUARE.translated(v), center + v) == \
        winding_number(UNIT_SQUARE, center)


def test_point_in_polygon_basic():
    assert point_in_polygon(UNIT_SQUARE, pt("1/2", "1/2")) == PointLocation.INSIDE
    assert point_in_polygon(UNIT_SQUARE, pt(2, 0)) == PointLocation.OUTSIDE
    assert point_in_polygon(UNIT_SQUARE, pt(1, "1/2")) == PointLocation.ON_BOUNDARY


def test_point_in_polygon_matches_parity_oracle():
    rng = random.Random(11)
    for _ in range(100):
        loop = star_polygon(rng, rng.randrange(4, 12), pt(0, 0),
                            Fraction(1), Fraction(5))
        p = pt(Fraction(rng.randrange(-50, 50), 9),
               Fraction(rng.randrange(-50, 50), 9))
        loc = point_in_polygon(loop, p)
        if loc == PointLocation.ON_BOUNDARY:
            continue
        assert (loc == PointLocation.INSIDE) == parity_ray_oracle(loop, p)


def test_winding_of_cycle_tolerates_duplicates():
    pts = [pt(0, 0), pt(0, 0), pt(1, 0), pt(1, 1), pt(1, 1), pt(0, 1)]
    assert winding_of_cycle(pts, pt("1/2", "1/2")) == 1


def test_cmp_directions_ccw():
    e, n, w, s = pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)
    order = [e, n, w, s]
    for i in range(4):
        for j in range(4):
            assert cmp_directions_ccw(order[i], order[j]) == (i > j) - (i < j)
    assert cmp_directions_ccw(e, n) == -1
    assert cmp_directions_ccw(n, w) == -1
    assert cmp_directions_ccw(w, s) == -1
    assert cmp_directions_ccw(s, e) == 1
    assert cmp_directions_ccw(e, pt(3, 0)) == 0


def test_interior_point_star_polygons():
    rng = random.Random(3)
    for _ in range(50):
        loop = star_polygon(rng, rng.randrange(4, 12), pt(0, 0),
                            Fraction(1), Fraction(5))
        p = interior_point(loop)
        assert point_in_polygon(loop, p) == PointLocation.INSIDE
