"""Curve validation, crossings, and arrangement faces."""
import random
from fractions import Fraction

import pytest

from fpindex.errors import (
    InvariantFailure,
    NotPositivelyOriented,
    NotSimple,
    NotTransverse,
)
from fpindex.exact_geom import PLLoop, pt, signed_area
from fpindex.jordan import (
    CrossKind,
    build_arrangement,
    canonical_noncut_pair,
    check_transverse,
    crossing_word,
    cuts_each_other,
    validate_curve,
)

from geomgen import star_polygon
from meander_oracle import enumerate_noncut_words


def square(x0, y0, x1, y1):
    return validate_curve([pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)])


def label_census(faces):
    census = {}
    for f in faces:
        census[(f.in_K, f.in_Kt)] = census.get((f.in_K, f.in_Kt), 0) + 1
    return census


class TestValidateCurve:
    def test_accepts_ccw_square(self):
        c = square(0, 0, 1, 1)
        assert len(c) == 4

    def test_rejects_cw_square(self):
        with pytest.raises(NotPositivelyOriented):
            validate_curve([pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)])

    def test_reverses_cw_square_when_allowed(self):
        c = validate_curve([pt(0, 0), pt(0, 1), pt(1, 1), pt(1, 0)],
                           allow_reversal=True)
        assert signed_area(c.loop) > 0

    def test_rejects_bowtie(self):
        with pytest.raises(NotSimple):
            validate_curve([pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)])

    def test_rejects_spike(self):
        with pytest.raises(NotSimple):
            validate_curve([pt(0, 0), pt(4, 0), pt(2, 0), pt(2, 2)])

    def test_accepts_collinear_chain(self):
        c = validate_curve([pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 2), pt(0, 2)])
        assert len(c) == 5

    def test_param_round_trip(self):
        c = square(0, 0, 4, 4)
        for num in range(16):
            t = Fraction(num, 16)
            assert c.locate_param(c.point_at(t)) == t


class TestCheckTransverse:
    def test_lens_kinds_and_params(self):
        # Overlap rectangle is [2,4]x[1,3]; the first curve's right side is
        # crossed going up: in at y=1, out at y=3.
        first = square(0, 0, 4, 4)
        second = square(2, 1, 6, 3)
        cs = check_transverse(first, second)
        assert len(cs) == 2
        a, b = cs.crossings
        assert (a.point, a.kind) == (pt(4, 1), CrossKind.P)
        assert (b.point, b.kind) == (pt(4, 3), CrossKind.PTILDE)
        assert a.param_k == Fraction(1, 4) + Fraction(1, 16)
        assert first.point_at(a.param_k) == pt(4, 1)
        assert second.point_at(a.param_kt) == pt(4, 1)

    def test_rejects_shared_vertex(self):
        with pytest.raises(NotTransverse):
            check_transverse(square(0, 0, 2, 2), square(2, 2, 4, 4))

    def test_rejects_touching_edge(self):
        with pytest.raises(NotTransverse):
            check_transverse(square(0, 0, 2, 2), square(1, 2, 3, 4))

    def test_rejects_vertex_on_edge(self):
        first = square(0, 0, 4, 4)
        second = validate_curve([pt(4, 2), pt(6, 1), pt(6, 3)])
        with pytest.raises(NotTransverse):
            check_transverse(first, second)

    def test_disjoint_is_empty(self):
        cs = check_transverse(square(0, 0, 1, 1), square(5, 5, 6, 6))
        assert len(cs) == 0


class TestArrangement:
    def test_lens_faces(self):
        first = square(0, 0, 4, 4)
        second = square(2, 1, 6, 3)
        faces = build_arrangement(first, second, check_transverse(first, second))
        assert len(faces) == 4
        assert label_census(faces) == {(True, True): 1, (True, False): 1,
                                       (False, True): 1, (False, False): 1}
        overlap = [f for f in faces if f.in_K and f.in_Kt]
        assert signed_area(overlap[0].polygon) == 4  # [2,4]x[1,3]

    def test_plus_sign_faces(self):
        horiz = square(0, 1, 3, 2)
        vert = square(1, 0, 2, 3)
        faces = build_arrangement(horiz, vert, check_transverse(horiz, vert))
        assert len(faces) == 6
        assert label_census(faces) == {(True, True): 1, (True, False): 2,
                                       (False, True): 2, (False, False): 1}

    def test_disjoint_faces(self):
        faces = build_arrangement(square(0, 0, 1, 1), square(5, 5, 6, 6),
                                  check_transverse(square(0, 0, 1, 1),
                                                   square(5, 5, 6, 6)))
        assert label_census(faces) == {(True, False): 1, (False, True): 1,
                                       (False, False): 1}

    def test_nested_faces(self):
        outer = square(0, 0, 10, 10)
        inner = square(4, 4, 6, 6)
        faces = build_arrangement(inner, outer, check_transverse(inner, outer))
        assert label_census(faces) == {(True, True): 1, (False, True): 1,
                                       (False, False): 1}
        annulus = [f for f in faces if f.in_Kt and not f.in_K][0]
        assert outer.contains(annulus.sample_point).name == "INSIDE"
        assert inner.contains(annulus.sample_point).name == "OUTSIDE"

    def test_area_identity_random_pairs(self):
        rng = random.Random(7021)
        done = 0
        while done < 25:
            a = star_polygon(rng, rng.randrange(6, 12), pt(0, 0), 2, 5)
            b = star_polygon(rng, rng.randrange(6, 12),
                             pt(Fraction(rng.randrange(-3, 4)),
                                Fraction(rng.randrange(-3, 4))), 2, 5)
            first = validate_curve(a)
            second = validate_curve(b)
            try:
                cs = check_transverse(first, second)
            except NotTransverse:
                continue
            if len(cs) == 0:
                continue
            faces = build_arrangement(first, second, cs)
            bounded = [f for f in faces if f.polygon is not None
                       and signed_area(f.polygon) > 0]
            assert len(bounded) == len(faces) - 1
            total = sum(signed_area(f.polygon) for f in bounded)
            both = sum(signed_area(f.polygon) for f in bounded
                       if f.in_K and f.in_Kt)
            expected = signed_area(first.loop) + signed_area(second.loop) - both
            assert total == expected
            census = label_census(faces)
            assert census.get((True, True), 0) >= 1
            assert census.get((True, False), 0) >= 1
            assert census.get((False, True), 0) >= 1
            done += 1


class TestCuts:
    def test_lens_does_not_cut(self):
        assert not cuts_each_other(square(0, 0, 4, 4), square(2, 1, 6, 3))

    def test_plus_sign_cuts(self):
        assert cuts_each_other(square(0, 1, 3, 2), square(1, 0, 2, 3))

    def test_disjoint_does_not_cut(self):
        assert not cuts_each_other(square(0, 0, 1, 1), square(5, 5, 6, 6))

    def test_nested_does_not_cut(self):
        assert not cuts_each_other(square(4, 4, 6, 6), square(0, 0, 10, 10))


class TestCanonicalPair:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_shape(self, m):
        first, second = canonical_noncut_pair(m)
        cs = check_transverse(first, second)
        assert len(cs) == 2 * m
        faces = build_arrangement(first, second, cs)
        assert len(faces) == 2 * m + 2
        census = label_census(faces)
        assert census[(True, False)] == 1
        assert census[(False, True)] == 1
        assert not cuts_each_other(first, second)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_word_matches_unique_combinatorial_class(self, m):
        words = enumerate_noncut_words(m)
        assert len(words) == 1
        first, second = canonical_noncut_pair(m)
        assert crossing_word(check_transverse(first, second)) == words.pop()

    def test_cutting_pair_word_not_in_catalog(self):
        words = enumerate_noncut_words(2)
        horiz = square(0, 1, 3, 2)
        vert = square(1, 0, 2, 3)
        assert crossing_word(check_transverse(horiz, vert)) not in words
