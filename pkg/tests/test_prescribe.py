"""Three-point prescription: pair selection, box dispatch, solver, oracle."""
import random
from fractions import Fraction

import pytest

from fpindex.errors import (
    ConstraintOnCurve,
    TooFewCrossings,
    TooLarge,
)
from fpindex.jordan import CrossKind, canonical_noncut_pair, check_transverse
from fpindex.plmap import PLCorrespondence, fixed_point_index, random_correspondence
from fpindex.prescribe import (
    ABOVE,
    BELOW,
    AdjacencyBox,
    BoxCategory,
    _is_realizable,
    _thread_path,
    classify_box,
    find_doubly_adjacent,
    oracle_enumerate,
    prescribe,
)
from fpindex.torus import (
    Containment,
    abstract_diagram,
    build_diagram,
    delta_split,
    index_from_torus,
    realize_path,
)

from geomgen import random_transverse_pair, square_curve, synthesize_constraints

F = Fraction


def identity_params(n: int) -> PLCorrespondence:
    return PLCorrespondence(tuple((F(i, n), F(i, n)) for i in range(n)))


def lens_fixture():
    first = square_curve(0, 0, 4, 4)
    second = square_curve(2, 1, 6, 3)
    crossings = check_transverse(first, second)
    constraints = [(F(0), F(0)), (F(1, 4), F(1, 4)), (F(3, 4), F(3, 4))]
    diagram = build_diagram(first, second, crossings, constraints)
    return first, second, crossings, diagram


def canonical_diagram(m: int, seed: int):
    first, second = canonical_noncut_pair(m)
    crossings = check_transverse(first, second)
    rng = random.Random(seed)
    phi = random_correspondence(rng, 6)
    pairs = synthesize_constraints(crossings, phi, rng)
    return first, second, crossings, build_diagram(first, second, crossings, pairs)


# -- box dispatch ---------------------------------------------------------------

# The full dispatch outcome per cell pattern: keys are (bottom row cell of the
# lower-left corner, column cell and row cell of the upper-right corner), with
# wrap implied by a top edge folding under the bottom one. Frozen by hand from
# sketches of each pattern against the three diagonal cells.
DISPATCH = {
    (0, 1, 2): "lattice", (0, 2, 2): "lattice", (0, 2, 1): "lattice",
    (0, 2, 0): "corner", (0, 1, 0): "corner", (0, 0, 0): "corner",
    (0, 0, 1): "corner", (0, 0, 2): "corner", (0, 1, 1): "lattice",
    (1, 1, 2): "corner", (1, 2, 2): "lattice", (1, 2, 1): "span",
    (1, 2, 0): "lattice", (1, 1, 0): "wrap-split", (1, 0, 0): "corner",
    (1, 0, 1): "empty", (1, 0, 2): "empty", (1, 1, 1): "corner",
    (2, 1, 2): "empty", (2, 2, 2): "corner", (2, 2, 1): "lattice",
    (2, 2, 0): "corner", (2, 1, 0): "corner", (2, 0, 0): "corner",
    (2, 0, 1): "forbidden", (2, 0, 2): "empty", (2, 1, 1): "lattice",
}

GRID = (F(1, 3), F(2, 3))
MIDS = (F(1, 6), F(1, 2), F(5, 6))


def synthetic_box(rho, sigma, tau, wrap=None):
    if wrap is None:
        wrap = rho > tau
    if wrap:
        rows = (MIDS[rho], 1 + MIDS[tau])
    elif rho == tau:
        rows = (MIDS[rho] - F(1, 24), MIDS[rho] + F(1, 24))
    else:
        rows = (MIDS[rho], MIDS[tau])
    return AdjacencyBox(entry_id=0, exit_id=1, base_constraint=1, descends=True,
                        col_lo=F(1, 12), col_hi=MIDS[sigma],
                        row_lo=rows[0], row_hi=rows[1],
                        grid_cols=GRID, grid_rows=GRID)


class TestDispatchTable:
    def test_every_cell_pattern(self):
        for (rho, sigma, tau), label in DISPATCH.items():
            box = synthetic_box(rho, sigma, tau)
            assert (box.lower_left_cell, box.upper_right_cell) == \
                ((0, rho), (sigma, tau))
            assert classify_box(box).value == label, (rho, sigma, tau)

    def test_wrap_split_of_lattice_patterns(self):
        wrapping = {k for k, v in DISPATCH.items() if v == "lattice" and k[0] > k[2]}
        flat = {k for k, v in DISPATCH.items() if v == "lattice" and k[0] <= k[2]}
        assert wrapping == {(2, 1, 1), (2, 2, 1), (1, 2, 0)}
        assert flat == {(1, 2, 2), (0, 1, 2), (0, 2, 2), (0, 2, 1), (0, 1, 1)}

    def test_wrapped_span_pattern_holds_a_lattice_point(self):
        box = synthetic_box(1, 2, 1, wrap=True)
        assert box.wrap
        assert classify_box(box) is BoxCategory.LATTICE

    def test_wrapped_empty_pattern_reroutes_as_corner(self):
        box = synthetic_box(1, 0, 1, wrap=True)
        assert box.wrap
        assert classify_box(box) is BoxCategory.CORNER


# -- pair selection -------------------------------------------------------------

class TestFindDoublyAdjacent:
    def test_canonical_two_wave_pair_has_two_boxes(self):
        _, _, crossings, diagram = canonical_diagram(2, seed=11)
        kinds = dict(diagram.kinds)
        boxes = find_doubly_adjacent(diagram)
        assert {(b.entry_id, b.exit_id) for b in boxes} == {(0, 1), (2, 3)}
        assert all(b.descends for b in boxes)
        for b in boxes:
            assert kinds[b.entry_id] is CrossKind.P
            assert kinds[b.exit_id] is CrossKind.PTILDE
            assert b.col_lo < b.col_hi
            assert b.lower_left_cell[0] == 0

    def test_two_crossings_rejected(self):
        _, _, _, diagram = lens_fixture()
        with pytest.raises(TooFewCrossings):
            find_doubly_adjacent(diagram)


# -- solver: direct rules -------------------------------------------------------

def three_point_orders():
    return (("c", 1), ("c", 2), ("c", 3))


class TestPrescribeDirect:
    def test_disjoint_curves_value_zero(self):
        d = abstract_diagram(three_point_orders(), three_point_orders(), {},
                             Containment.DISJOINT)
        path, trace = prescribe(d)
        assert trace.index == 0
        assert [lv.rule for lv in trace.levels] == ["no-crossings"]
        assert path.passes_through(F(1, 3), F(1, 3))
        assert path.passes_through(F(2, 3), F(2, 3))

    def test_nested_curves_value_one(self):
        d = abstract_diagram(three_point_orders(), three_point_orders(), {},
                             Containment.FIRST_INSIDE_SECOND)
        _, trace = prescribe(d)
        assert trace.index == 1
        assert [lv.rule for lv in trace.levels] == ["no-crossings"]

    def test_lens_two_crossing_rule(self):
        first, second, _, diagram = lens_fixture()
        path, trace = prescribe(diagram)
        assert [lv.rule for lv in trace.levels] == ["two-crossings"]
        assert trace.index >= 0
        assert fixed_point_index(first, second, realize_path(diagram, path)) \
            == trace.index

    def test_single_cell_shortcut(self):
        # all four marks share a column cell and no bit is forced, so the
        # uniform choices decide the level in one step
        cols = [("c", 1), ("c", 2), ("c", 3),
                ("m", 0), ("m", 1), ("m", 2), ("m", 3)]
        rows = [("c", 1), ("c", 2), ("c", 3),
                ("m", 3), ("m", 2), ("m", 1), ("m", 0)]
        kinds = {0: CrossKind.P, 1: CrossKind.PTILDE,
                 2: CrossKind.P, 3: CrossKind.PTILDE}
        d = abstract_diagram(cols, rows, kinds)
        path, trace = prescribe(d)
        assert [lv.rule for lv in trace.levels] == ["single-cell"]
        assert trace.index == 0
        assert trace.below == frozenset({0, 1, 2, 3})
        assert delta_split(d, path)[0] == trace.below


# -- solver: recursion on geometric instances ------------------------------------

class TestPrescribeCanonical:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_noncutting_waves(self, m):
        first, second, crossings, diagram = canonical_diagram(m, seed=20 + m)
        path, trace = prescribe(diagram)
        assert 0 <= trace.index <= 2
        realized = realize_path(diagram, path)
        assert fixed_point_index(first, second, realized) == trace.index
        if 2 * m <= 8:
            assert trace.index in oracle_enumerate(diagram)

    def test_recursion_reaches_pair_rule(self):
        _, _, _, diagram = canonical_diagram(3, seed=23)
        _, trace = prescribe(diagram)
        rules = {lv.rule for lv in trace.levels}
        assert "pair" in rules


class TestPrescribeRandom:
    def test_random_transverse_instances(self):
        rng = random.Random(20260815)
        pair_rule_seen = 0
        for _ in range(40):
            first, second, crossings = random_transverse_pair(
                rng, min_crossings=4, max_crossings=12)
            phi = random_correspondence(rng, rng.randrange(4, 9))
            pairs = synthesize_constraints(crossings, phi, rng)
            diagram = build_diagram(first, second, crossings, pairs)
            path, trace = prescribe(diagram)
            assert trace.index >= 0
            realized = realize_path(diagram, path)
            assert fixed_point_index(first, second, realized) == trace.index
            assert delta_split(diagram, path)[0] == trace.below
            for level in trace.levels:
                if level.child_index is not None:
                    assert level.index >= level.child_index
            if any(lv.rule == "pair" for lv in trace.levels):
                pair_rule_seen += 1
            if len(crossings) <= 8:
                achievable = oracle_enumerate(diagram)
                assert trace.index in achievable
                assert max(achievable) >= 0
        assert pair_rule_seen > 0


# -- realizability and threading -------------------------------------------------

class TestThreading:
    def test_lens_bipartitions(self):
        # the second constraint point sits up-and-left of the first mark, so
        # that mark can never rise above a faithful path
        _, _, _, diagram = lens_fixture()
        assert not _is_realizable(diagram, frozenset())
        assert _is_realizable(diagram, frozenset({0}))
        assert not _is_realizable(diagram, frozenset({1}))
        assert _is_realizable(diagram, frozenset({0, 1}))

    def test_threaded_path_matches_requested_split(self):
        _, _, _, diagram = lens_fixture()
        for below in (frozenset({0}), frozenset({0, 1})):
            path = _thread_path(diagram, below)
            assert delta_split(diagram, path)[0] == below
            xs = [x for x, _ in path.points]
            ys = [y for _, y in path.points]
            assert all(a < b for a, b in zip(xs, xs[1:]))
            assert all(a < b for a, b in zip(ys, ys[1:]))


# -- oracle ----------------------------------------------------------------------

class TestOracle:
    def test_no_crossings_single_value(self):
        base = three_point_orders()
        disjoint = abstract_diagram(base, base, {}, Containment.DISJOINT)
        nested = abstract_diagram(base, base, {}, Containment.SECOND_INSIDE_FIRST)
        assert oracle_enumerate(disjoint) == frozenset({0})
        assert oracle_enumerate(nested) == frozenset({1})

    def test_lens_achievable_values(self):
        first, second, _, diagram = lens_fixture()
        values = oracle_enumerate(diagram)
        assert values == frozenset({0, 1})
        # the identity-parameter map on this fixture has value 0
        assert fixed_point_index(first, second, identity_params(4)) == 0

    def test_size_bound(self):
        cols = [("c", 1), ("c", 2), ("c", 3)]
        rows = [("c", 1), ("c", 2), ("c", 3)]
        kinds = {}
        for i in range(14):
            cols.append(("m", i))
            rows.append(("m", i))
            kinds[i] = CrossKind.P if i % 2 == 0 else CrossKind.PTILDE
        d = abstract_diagram(cols, rows, kinds)
        with pytest.raises(TooLarge):
            oracle_enumerate(d)

    def test_extra_pair_collision_rejected(self):
        _, _, crossings, diagram = lens_fixture()
        first_crossing = next(iter(crossings))
        with pytest.raises(ConstraintOnCurve):
            oracle_enumerate(diagram,
                             extra_pairs=[(first_crossing.param_k, F(1, 97))])

    def test_four_point_rectangles_diagnostic(self):
        # interleaved rectangles whose corner map has index -1: with three
        # prescribed corners some nonnegative value survives, with all four
        # none does
        first = square_curve(0, -1, 3, 4)
        second = square_curve(-1, 0, 4, 3)
        crossings = check_transverse(first, second)
        assert len(crossings) == 4
        constraints = [(F(0), F(0)), (F(1, 4), F(1, 4)), (F(1, 2), F(1, 2))]
        diagram = build_diagram(first, second, crossings, constraints)

        three = oracle_enumerate(diagram)
        _, trace = prescribe(diagram)
        assert trace.index >= 0
        assert trace.index in three

        four = oracle_enumerate(diagram, extra_pairs=[(F(3, 4), F(3, 4))])
        assert four <= three
        assert -1 in four
        assert max(four) < 0
