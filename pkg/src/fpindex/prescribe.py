"""Constructive three-point prescription on torus diagrams.

Given a diagram with three prescribed pairs, `prescribe` builds a staircase
path through the three constraint lattice points that avoids every crossing
mark and carries a nonnegative index. It works by induction on the crossing
count: pick a crossing pair adjacent along both curves, delete it, solve the
smaller diagram, then thread the path past the reinserted pair without
letting the index drop. `oracle_enumerate` brute-forces every achievable
index value as an independent cross-check.

A staircase path's homotopy class rel marks is determined by which marks lie
below it, so the solver manipulates below-sets and materializes a path only
for verification and output. A below-set is realizable exactly when no
below point sits strictly up-and-left of an above point, where the two
interior constraint lattice points count on both sides; the realization
threads the midline of the corridor those points leave open.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    AssumptionViolated,
    ConstraintOnCurve,
    InternalCaseGap,
    InvariantFailure,
    TooFewCrossings,
    TooLarge,
)
from .jordan import CrossKind
from .torus import StaircasePath, TorusDiagram, index_from_torus

BELOW = "below"
ABOVE = "above"

_FALLBACK_BITS = ((ABOVE, BELOW), (BELOW, ABOVE), (BELOW, BELOW), (ABOVE, ABOVE))


def _cell(value: Fraction, bounds: tuple[Fraction, Fraction]) -> int:
    """0, 1, or 2 depending on which side of the two grid lines value falls."""
    if value in bounds:
        raise InvariantFailure("cell query landed on a grid line")
    return sum(1 for b in bounds if value > b)


@dataclass(frozen=True)
class AdjacencyBox:
    """Axis-aligned neighborhood of a doubly adjacent crossing pair.

    Coordinates live in the unit square cut at `base_constraint`, chosen as
    the first constraint behind the entry mark so that the box's left edge
    falls in the leftmost column cell. The row interval is lifted: `row_hi`
    greater than 1 means the box wraps through the cut row. `descends`
    records that the entry mark sits above the exit mark, so the pair falls
    left to right. `grid_cols`/`grid_rows` hold the other two constraints'
    coordinates, which split the square into nine cells.
    """

    entry_id: int
    exit_id: int
    base_constraint: int
    descends: bool
    col_lo: Fraction
    col_hi: Fraction
    row_lo: Fraction
    row_hi: Fraction
    grid_cols: tuple[Fraction, Fraction]
    grid_rows: tuple[Fraction, Fraction]

    @property
    def wrap(self) -> bool:
        return self.row_hi > 1

    @property
    def row_top(self) -> Fraction:
        """Top edge folded back into the unit square."""
        return self.row_hi - 1 if self.wrap else self.row_hi

    @property
    def lower_left_cell(self) -> tuple[int, int]:
        return (_cell(self.col_lo, self.grid_cols),
                _cell(self.row_lo, self.grid_rows))

    @property
    def upper_right_cell(self) -> tuple[int, int]:
        return (_cell(self.col_hi, self.grid_cols),
                _cell(self.row_top, self.grid_rows))


class BoxCategory(Enum):
    """How a pair's box sits relative to the cells a faithful path can use."""

    EMPTY = "empty"            # box misses every diagonal cell
    CORNER = "corner"          # a box corner pokes into a diagonal cell
    LATTICE = "lattice"        # a constraint lattice point lies inside
    SPAN = "span"              # crosses the middle row cell at full width
    WRAP_SPLIT = "wrap-split"  # wraps through the cut row past column one
    FORBIDDEN = "forbidden"    # cannot occur for both qualifying pairs


def find_doubly_adjacent(diagram: TorusDiagram) -> list[AdjacencyBox]:
    """All crossing pairs adjacent along both curves, entry mark first.

    Adjacent means consecutive among the marks, so only constraint tokens
    may separate the two. Along the columns the entry mark (where the first
    curve enters the second region) must come directly before its partner.
    """
    marks = diagram.marks
    if len(marks) < 4:
        raise TooFewCrossings("pair selection needs at least four crossings")
    by_col = sorted(marks, key=lambda m: m.col)
    by_row = sorted(marks, key=lambda m: m.row)
    row_rank = {m.crossing_id: i for i, m in enumerate(by_row)}
    count = len(marks)
    boxes = []
    for i, entry in enumerate(by_col):
        if entry.kind is not CrossKind.P:
            continue
        partner = by_col[(i + 1) % count]
        if partner.kind is not CrossKind.PTILDE:
            raise InvariantFailure("mark kinds stopped alternating")
        gap = (row_rank[entry.crossing_id] - row_rank[partner.crossing_id]) % count
        if gap == 1:
            descends = True
        elif gap == count - 1:
            descends = False
        else:
            continue
        boxes.append(_build_box(diagram, entry, partner, descends))
    if len(boxes) < 2:
        raise AssumptionViolated(
            f"only {len(boxes)} doubly adjacent pairs found", diagram.dump())
    return boxes


def _build_box(diagram, entry, partner, descends: bool) -> AdjacencyBox:
    order = diagram.col_order
    n = diagram.size
    base = next(order[(entry.col - k) % n][1] for k in range(1, n + 1)
                if order[(entry.col - k) % n][0] == "c")
    frame = diagram.rebased(base)
    placed = {m.crossing_id: m for m in frame.marks}
    e, x = placed[entry.crossing_id], placed[partner.crossing_id]
    if not e.col < x.col:
        raise InvariantFailure("pair order broke under rebasing")
    col_lo = Fraction(2 * e.col - 1, 2 * n)
    col_hi = Fraction(2 * x.col + 1, 2 * n)
    bottom, top = (x, e) if descends else (e, x)
    lifted = top.row if top.row > bottom.row else top.row + n
    x2, y2 = frame.constraint_point(2)
    x3, y3 = frame.constraint_point(3)
    box = AdjacencyBox(entry_id=entry.crossing_id, exit_id=partner.crossing_id,
                       base_constraint=base, descends=descends,
                       col_lo=col_lo, col_hi=col_hi,
                       row_lo=Fraction(2 * bottom.row - 1, 2 * n),
                       row_hi=Fraction(2 * lifted + 1, 2 * n),
                       grid_cols=(x2, x3), grid_rows=(y2, y3))
    if not 0 < box.col_lo < box.col_hi < 1:
        raise InvariantFailure("box meets the left or right grid line")
    if box.lower_left_cell[0] != 0:
        raise InvariantFailure("box left edge escaped the first column cell")
    for m in frame.marks:
        if m.crossing_id in (box.entry_id, box.exit_id):
            continue
        in_rows = (box.row_lo < m.y < min(box.row_hi, Fraction(1))
                   or (box.wrap and m.y < box.row_top))
        if box.col_lo < m.x < box.col_hi and in_rows:
            raise InvariantFailure("box swallowed a third crossing mark")
    return box


def classify_box(box: AdjacencyBox) -> BoxCategory:
    """Dispatch label computed from the box's cell pattern and contents."""
    rho = box.lower_left_cell[1]
    sigma, tau = box.upper_right_cell
    if (rho, sigma, tau) == (2, 0, 1):
        return BoxCategory.FORBIDDEN
    if (rho, sigma, tau) == (1, 1, 0):
        return BoxCategory.WRAP_SPLIT
    if (rho, sigma, tau) == (1, 2, 1) and not box.wrap:
        return BoxCategory.SPAN
    if _holds_lattice_point(box):
        return BoxCategory.LATTICE
    if not _meets_diagonal_cells(box):
        return BoxCategory.EMPTY
    # Boxes whose corner pokes into a diagonal cell, plus the rare wrapped
    # lookalikes that cross a cell side to side; both reroute the same way.
    return BoxCategory.CORNER


def _holds_lattice_point(box: AdjacencyBox) -> bool:
    for x, y in zip(box.grid_cols, box.grid_rows):
        if not box.col_lo < x < box.col_hi:
            continue
        if box.row_lo < y < box.row_hi or box.row_lo < y + 1 < box.row_hi:
            return True
    return False


def _meets_diagonal_cells(box: AdjacencyBox) -> bool:
    xs = (Fraction(0), *box.grid_cols, Fraction(1))
    ys = (Fraction(0), *box.grid_rows, Fraction(1))
    if box.wrap:
        parts = ((box.row_lo, Fraction(1)), (Fraction(0), box.row_top))
    else:
        parts = ((box.row_lo, box.row_hi),)
    for i in range(3):
        if not (box.col_lo < xs[i + 1] and xs[i] < box.col_hi):
            continue
        if any(lo < ys[i + 1] and ys[i] < hi for lo, hi in parts):
            return True
    return False


# -- bipartitions: realizability, threading, value ----------------------------

def _mark_points(diagram: TorusDiagram, below_ids) -> tuple[list, list]:
    below, above = [], []
    for m in diagram.marks:
        (below if m.crossing_id in below_ids else above).append((m.x, m.y))
    return below, above


def _is_realizable(diagram: TorusDiagram, below_ids, extra=()) -> bool:
    anchors = [diagram.constraint_point(2), diagram.constraint_point(3), *extra]
    below, above = _mark_points(diagram, below_ids)
    down = below + anchors
    up = above + anchors
    return not any(px < qx and py > qy for px, py in down for qx, qy in up)


def _thread_path(diagram: TorusDiagram, below_ids, extra=()) -> StaircasePath:
    """Monotone faithful path with exactly the given marks below it."""
    anchors = [diagram.constraint_point(2), diagram.constraint_point(3), *extra]
    below, above = _mark_points(diagram, below_ids)
    events = sorted([(x, y, "anchor") for x, y in anchors] +
                    [(x, y, BELOW) for x, y in below] +
                    [(x, y, ABOVE) for x, y in above])
    # ceiling[i]: lowest anchor or above-mark row at or after event i
    ceiling = [Fraction(1)] * (len(events) + 1)
    for i in range(len(events) - 1, -1, -1):
        _, y, tag = events[i]
        ceiling[i] = ceiling[i + 1] if tag == BELOW else min(ceiling[i + 1], y)
    points = [(Fraction(0), Fraction(0))]
    level = floor = Fraction(0)
    for i, (x, y, tag) in enumerate(events):
        if tag == "anchor":
            if level >= y:
                raise InvariantFailure("bipartition is not realizable")
            points.append((x, y))
            level = floor = y
            continue
        if tag == BELOW:
            floor = max(floor, y)
        lo = max(level, floor)
        hi = ceiling[i]
        if lo >= hi:
            raise InvariantFailure("bipartition is not realizable")
        level = (lo + hi) / 2
        points.append((x, level))
    points.append((Fraction(1), Fraction(1)))
    return StaircasePath(tuple(points))


def _split_value(diagram: TorusDiagram, below_ids,
                 extra=()) -> tuple[StaircasePath, int]:
    path = _thread_path(diagram, below_ids, extra)
    return path, index_from_torus(diagram, path)


def _convert_path(child: TorusDiagram, parent: TorusDiagram,
                  path: StaircasePath) -> StaircasePath:
    """Rewrite a child-diagram path in the parent's token coordinates."""
    parent_col = {tok: i for i, tok in enumerate(parent.col_order)}
    parent_row = {tok: i for i, tok in enumerate(parent.row_order)}
    nc, np_ = child.size, parent.size
    one = Fraction(1)
    src = [Fraction(i, nc) for i in range(nc)] + [one]
    col_dst = [Fraction(parent_col[t], np_) for t in child.col_order] + [one]
    row_dst = [Fraction(parent_row[t], np_) for t in child.row_order] + [one]

    def lift(v: Fraction, dst: list[Fraction]) -> Fraction:
        i = bisect_right(src, v) - 1
        if src[i] == v:
            return dst[i]
        return dst[i] + (dst[i + 1] - dst[i]) * (v - src[i]) / (src[i + 1] - src[i])

    return StaircasePath(tuple((lift(x, col_dst), lift(y, row_dst))
                               for x, y in path.points))


# -- reinsertion ---------------------------------------------------------------

_LATTICE_PLAYBOOK = {
    # (descends, wrap) -> frame-local (entry, exit) requirements; the falling
    # arrangements raise the index by one, the rising ones keep it
    (True, False): ((ABOVE, BELOW),),
    (True, True): ((BELOW, ABOVE),),
    (False, False): ((BELOW, BELOW), (ABOVE, ABOVE)),
    (False, True): ((ABOVE, BELOW),),
}


def _candidate_plans(box: AdjacencyBox, category: BoxCategory, path_bits):
    plans = []
    if category is BoxCategory.LATTICE:
        plans += [("case", True, bits)
                  for bits in _LATTICE_PLAYBOOK[(box.descends, box.wrap)]]
    elif category is BoxCategory.SPAN:
        plans.append(("case", True, (ABOVE, BELOW)))
    elif category is BoxCategory.CORNER:
        plans += [("case", True, (BELOW, BELOW)), ("case", True, (ABOVE, ABOVE))]
    if path_bits is not None:
        # EMPTY and WRAP_SPLIT lead with the child path's own verdict
        plans.append(("path", False, path_bits))
    plans += [("fallback", False, bits) for bits in _FALLBACK_BITS]
    return plans


def _frame_assignment(diagram: TorusDiagram, box: AdjacencyBox, bits):
    """Turn a requirement stated in the box's frame into bits at the main
    cut, or None when the frame geometry makes it unsatisfiable."""
    if box.base_constraint == 1:
        return {box.entry_id: bits[0], box.exit_id: bits[1]}
    cx, cy = diagram.constraint_point(box.base_constraint)
    marks = {m.crossing_id: m for m in diagram.marks}
    out = {}
    for cid, bit in zip((box.entry_id, box.exit_id), bits):
        m = marks[cid]
        if m.x < cx and m.y > cy:
            # the box frame sees this mark below any faithful path, while
            # the main cut forces it above
            if bit == ABOVE:
                return None
            out[cid] = ABOVE
        elif m.x > cx and m.y < cy:
            if bit == BELOW:
                return None
            out[cid] = BELOW
        else:
            out[cid] = bit
    return out


def _path_induced_bits(parent: TorusDiagram, child: TorusDiagram,
                       child_path: StaircasePath, box: AdjacencyBox):
    path = _convert_path(child, parent, child_path)
    marks = {m.crossing_id: m for m in parent.marks}
    bits = []
    for cid in (box.entry_id, box.exit_id):
        m = marks[cid]
        level = path.y_at(m.x)
        if level == m.y:
            return None
        bits.append(BELOW if m.y < level else ABOVE)
    return tuple(bits)


# -- the solver ----------------------------------------------------------------

@dataclass(frozen=True)
class TraceLevel:
    """One solver step; pair fields stay None for the direct rules."""

    depth: int
    rule: str
    index: int
    pair: tuple[int, int] | None = None
    base_constraint: int | None = None
    cells: tuple[tuple[int, int], tuple[int, int]] | None = None
    wrap: bool | None = None
    descends: bool | None = None
    category: str | None = None
    candidate: tuple[str, tuple[tuple[int, str], ...]] | None = None
    child_index: int | None = None


@dataclass(frozen=True)
class PrescriptionTrace:
    """Audit trail of the induction, deepest level first."""

    levels: tuple[TraceLevel, ...]
    below: frozenset[int]
    path: StaircasePath
    index: int


def prescribe(diagram: TorusDiagram) -> tuple[StaircasePath, PrescriptionTrace]:
    """Faithful mark-avoiding staircase path with nonnegative index."""
    levels: list[TraceLevel] = []
    below = _solve(diagram, 0, levels)
    path = _thread_path(diagram, below)
    index = index_from_torus(diagram, path, check_all_bases=True)
    if index < 0:
        raise InternalCaseGap("solver returned a negative index:\n"
                              + diagram.dump(path))
    trace = PrescriptionTrace(levels=tuple(levels), below=below,
                              path=path, index=index)
    return path, trace


def _solve(diagram: TorusDiagram, depth: int,
           levels: list[TraceLevel]) -> frozenset[int]:
    marks = diagram.marks
    if not marks:
        _, w = _split_value(diagram, frozenset())
        if w < 0:
            raise InternalCaseGap("crossing-free diagram with negative index")
        levels.append(TraceLevel(depth=depth, rule="no-crossings", index=w))
        return frozenset()
    if len(marks) == 2:
        return _solve_two_marks(diagram, depth, levels)
    shortcut = _solve_single_cell(diagram, depth, levels)
    if shortcut is not None:
        return shortcut
    return _solve_by_pairs(diagram, depth, levels)


def _solve_two_marks(diagram, depth, levels) -> frozenset[int]:
    ids = [m.crossing_id for m in diagram.marks]
    best = None
    for picks in ((), (ids[0],), (ids[1],), tuple(ids)):
        below = frozenset(picks)
        if not _is_realizable(diagram, below):
            continue
        _, w = _split_value(diagram, below)
        if w >= 0 and (best is None or w > best[1]):
            best = (below, w)
    if best is None:
        raise InternalCaseGap(
            "no nonnegative choice for a single crossing pair:\n" + diagram.dump())
    levels.append(TraceLevel(depth=depth, rule="two-crossings", index=best[1]))
    return best[0]


def _solve_single_cell(diagram, depth, levels) -> frozenset[int] | None:
    marks = diagram.marks
    c2 = diagram.constraint_point(2)
    c3 = diagram.constraint_point(3)
    grid_cols = (c2[0], c3[0])
    grid_rows = (c2[1], c3[1])
    if len({_cell(m.x, grid_cols) for m in marks}) > 1 and \
            len({_cell(m.y, grid_rows) for m in marks}) > 1:
        return None
    forced = {}
    for m in marks:
        for cx, cy in (c2, c3):
            if m.x < cx and m.y > cy:
                forced[m.crossing_id] = ABOVE
            elif m.x > cx and m.y < cy:
                forced[m.crossing_id] = BELOW
    best = None
    for free_bit in (BELOW, ABOVE):
        below = frozenset(m.crossing_id for m in marks
                          if forced.get(m.crossing_id, free_bit) == BELOW)
        if not _is_realizable(diagram, below):
            continue
        _, w = _split_value(diagram, below)
        if w >= 0 and (best is None or w > best[1]):
            best = (below, w)
    if best is None:
        return None
    levels.append(TraceLevel(depth=depth, rule="single-cell", index=best[1]))
    return best[0]


def _solve_by_pairs(diagram, depth, levels) -> frozenset[int]:
    col_of = {m.crossing_id: m.col for m in diagram.marks}
    ranked = sorted(((box, classify_box(box)) for box in find_doubly_adjacent(diagram)),
                    key=lambda bc: (bc[1] is BoxCategory.FORBIDDEN,
                                    col_of[bc[0].entry_id]))
    failures = []
    for box, category in ranked:
        pair = (box.entry_id, box.exit_id)
        if category is BoxCategory.FORBIDDEN:
            failures.append((pair, "forbidden"))
            continue
        sub: list[TraceLevel] = []
        child = diagram.without_marks(pair)
        try:
            child_below = _solve(child, depth + 1, sub)
        except (AssumptionViolated, InternalCaseGap) as err:
            failures.append((pair, err.reason))
            continue
        child_path, child_w = _split_value(child, child_below)
        path_bits = _path_induced_bits(diagram, child, child_path, box)
        tried = set()
        for label, in_frame, bits in _candidate_plans(box, category, path_bits):
            assignment = (_frame_assignment(diagram, box, bits) if in_frame
                          else {box.entry_id: bits[0], box.exit_id: bits[1]})
            if assignment is None:
                continue
            key = tuple(sorted(assignment.items()))
            if key in tried:
                continue
            tried.add(key)
            below = child_below | {cid for cid, bit in assignment.items()
                                   if bit == BELOW}
            if not _is_realizable(diagram, below):
                continue
            _, w = _split_value(diagram, below)
            if w < child_w:
                continue
            levels.extend(sub)
            levels.append(TraceLevel(
                depth=depth, rule="pair", index=w, pair=pair,
                base_constraint=box.base_constraint,
                cells=(box.lower_left_cell, box.upper_right_cell),
                wrap=box.wrap, descends=box.descends,
                category=category.value, candidate=(label, key),
                child_index=child_w))
            return below
        failures.append((pair, "no candidate verified"))
    raise InternalCaseGap(
        f"reinsertion failed for every adjacent pair {failures}:\n"
        + diagram.dump())


# -- exhaustive oracle -----------------------------------------------------------

def oracle_enumerate(diagram: TorusDiagram,
                     extra_pairs: Sequence[tuple[Fraction, Fraction]] = (),
                     ) -> frozenset[int]:
    """Every index achievable by a faithful mark-avoiding staircase path.

    Exhausts all mark bipartitions and keeps the realizable ones. Extra
    prescribed pairs (source, target parameters) shrink the feasible set
    without changing any value, turning the three-point problem into a
    diagnostic four-or-more-point one.
    """
    marks = diagram.marks
    if len(marks) > 12:
        raise TooLarge(f"{len(marks)} crossings exceed the enumeration bound of 12")
    extra = _extra_anchor_points(diagram, extra_pairs)
    ids = [m.crossing_id for m in marks]
    achievable = set()
    for mask in range(1 << len(ids)):
        below = frozenset(cid for i, cid in enumerate(ids) if mask >> i & 1)
        if not _is_realizable(diagram, below, extra):
            continue
        _, w = _split_value(diagram, below, extra)
        achievable.add(w)
    return frozenset(achievable)


def _extra_anchor_points(diagram, extra_pairs) -> list[tuple[Fraction, Fraction]]:
    points = []
    n = diagram.size
    for s, t in extra_pairs:
        x, y = diagram.x_of_param(s), diagram.y_of_param(t)
        if (x * n).denominator == 1 or (y * n).denominator == 1:
            raise ConstraintOnCurve("extra prescribed pair collides with a token")
        points.append((x, y))
    if len({x for x, _ in points}) < len(points) or \
            len({y for _, y in points}) < len(points):
        raise ConstraintOnCurve("extra prescribed pairs collide with each other")
    return points
