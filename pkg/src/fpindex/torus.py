"""Torus picture of a boundary correspondence.

The product of the two boundary parameter circles is a torus. A transverse
crossing of the curves appears there as a marked point (its two parameters),
carrying the crossing's kind; an orientation-preserving correspondence appears
as a monotone degree-(1,1) loop; and three prescribed point pairs appear as
three lattice points the loop must visit.

Cutting the torus at the first prescribed pair turns the loop into a strictly
increasing path from (0,0) to (1,1) in the unit square. Token coordinates make
the picture combinatorial: the crossing and constraint parameters are re-spaced
evenly along each axis, which moves nothing across anything else.

The fixed-point index of the correspondence is then read off the diagram in
two ways, which must agree:

    index = inside1 + inside2 - (entering marks below the path)
                              + (exiting marks below the path)
    index = inside1 + inside2 + (entering marks above the path)
                              - (exiting marks above the path)

where inside1 says whether the first prescribed source point lies inside the
second region and inside2 whether its partner lies inside the first. Both
memberships are decided combinatorially: walking forward from the point, the
next crossing tells you which side you are on.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AlternationViolation,
    BasePointOnGrid,
    ConstraintOnCurve,
    FormulaMismatch,
    InputRejection,
    InvariantFailure,
    OrderViolation,
    PathHitsMark,
    SquareTooLarge,
)
from .exact_geom import PointLocation, RatPoint, point_in_polygon, winding_of_cycle
from .jordan import CrossKind, CrossingSet, PolyJordanCurve
from .plmap import PLCorrespondence

TokenId = tuple[str, int]  # ("c", 1..3) for constraints, ("m", id) for marks


class Containment(Enum):
    """Mutual position of a crossing-free pair."""

    DISJOINT = "disjoint"
    FIRST_INSIDE_SECOND = "first_inside_second"
    SECOND_INSIDE_FIRST = "second_inside_first"


@dataclass(frozen=True)
class TorusMark:
    crossing_id: int
    kind: CrossKind
    col: int
    row: int
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class TorusDiagram:
    """Combinatorial torus data: cyclic token orders plus crossing kinds.

    `col_order` lists tokens by first-curve parameter starting at the first
    constraint; `row_order` likewise by second-curve parameter. Token k of a
    size-n order sits at normalized coordinate k/n. `col_params`/`row_params`
    retain the true parameters when the diagram came from geometry; purely
    combinatorial diagrams leave them None. A diagram without marks cannot
    know the mutual position of the curves, so it carries `containment`.
    """

    col_order: tuple[TokenId, ...]
    row_order: tuple[TokenId, ...]
    kinds: tuple[tuple[int, CrossKind], ...]
    containment: Containment | None = None
    col_params: tuple[Fraction, ...] | None = None
    row_params: tuple[Fraction, ...] | None = None
    first: PolyJordanCurve | None = None
    second: PolyJordanCurve | None = None
    crossings: CrossingSet | None = None

    def __post_init__(self) -> None:
        cols, rows = self.col_order, self.row_order
        if sorted(cols) != sorted(rows):
            raise InputRejection("column and row token sets differ")
        if len(set(cols)) != len(cols):
            raise InputRejection("duplicate tokens")
        for order in (cols, rows):
            if order[0] != ("c", 1):
                raise OrderViolation("orders must start at the first constraint")
            c_pos = {i: order.index(("c", i)) for i in (1, 2, 3)
                     if ("c", i) in order}
            if set(c_pos) != {1, 2, 3}:
                raise InputRejection("need exactly three constraints")
            if not c_pos[1] < c_pos[2] < c_pos[3]:
                raise OrderViolation(
                    "constraints must appear in the same cyclic order on both curves")
        kind_map = dict(self.kinds)
        mark_ids = [t[1] for t in cols if t[0] == "m"]
        if sorted(kind_map) != sorted(mark_ids):
            raise InputRejection("kinds must cover exactly the marks")
        if len(mark_ids) % 2 != 0:
            raise AlternationViolation("odd number of marks")
        for order in (cols, rows):
            seq = [kind_map[t[1]] for t in order if t[0] == "m"]
            for a, b in zip(seq, seq[1:] + seq[:1]):
                if len(seq) >= 2 and a == b:
                    raise AlternationViolation(
                        "mark kinds fail to alternate along a circle")
        if not mark_ids and self.containment is None:
            raise InputRejection("a diagram without marks needs a containment tag")
        for params, order in ((self.col_params, cols), (self.row_params, rows)):
            if params is None:
                continue
            if len(params) != len(order):
                raise InputRejection("parameter list does not match token count")
            offsets = [(p - params[0]) % 1 for p in params]
            if any(a >= b for a, b in zip(offsets, offsets[1:])):
                raise OrderViolation("true parameters out of cyclic order")

    @property
    def size(self) -> int:
        return len(self.col_order)

    @property
    def marks(self) -> tuple[TorusMark, ...]:
        kind_map = dict(self.kinds)
        row_pos = {t: i for i, t in enumerate(self.row_order)}
        out = []
        for col, tok in enumerate(self.col_order):
            if tok[0] != "m":
                continue
            row = row_pos[tok]
            out.append(TorusMark(crossing_id=tok[1], kind=kind_map[tok[1]],
                                 col=col, row=row,
                                 x=Fraction(col, self.size),
                                 y=Fraction(row, self.size)))
        return tuple(out)

    def constraint_point(self, i: int) -> tuple[Fraction, Fraction]:
        col = self.col_order.index(("c", i))
        row = self.row_order.index(("c", i))
        return Fraction(col, self.size), Fraction(row, self.size)

    def membership(self, i: int = 1) -> tuple[bool, bool]:
        """Is constraint i's source point inside the second region, and its
        target point inside the first? Decided by the next crossing ahead."""
        if not any(t[0] == "m" for t in self.col_order):
            return (self.containment is Containment.FIRST_INSIDE_SECOND,
                    self.containment is Containment.SECOND_INSIDE_FIRST)
        kind_map = dict(self.kinds)

        def next_kind(order: Sequence[TokenId], start: int) -> CrossKind:
            n = len(order)
            for step in range(1, n + 1):
                tok = order[(start + step) % n]
                if tok[0] == "m":
                    return kind_map[tok[1]]
            raise InvariantFailure("unreachable: diagram has marks")

        in_second = next_kind(self.col_order,
                              self.col_order.index(("c", i))) is CrossKind.PTILDE
        in_first = next_kind(self.row_order,
                             self.row_order.index(("c", i))) is CrossKind.P
        return in_second, in_first

    def x_of_param(self, s: Fraction) -> Fraction:
        return _position_of_param(self.col_params, s, self.size)

    def y_of_param(self, t: Fraction) -> Fraction:
        return _position_of_param(self.row_params, t, self.size)

    def param_of_x(self, x: Fraction) -> Fraction:
        return _param_of_position(self.col_params, x, self.size)

    def param_of_y(self, y: Fraction) -> Fraction:
        return _param_of_position(self.row_params, y, self.size)

    def without_marks(self, ids: Iterable[int]) -> "TorusDiagram":
        """Drop the given marks, keeping every other token's cyclic position.

        Dropping the last marks freezes the current membership answer into a
        containment tag: removing a doubly adjacent pair never sweeps across
        a constraint point, so its membership is unchanged.
        """
        gone = set(ids)
        keep = lambda t: t[0] != "m" or t[1] not in gone
        new_cols = tuple(t for t in self.col_order if keep(t))
        new_rows = tuple(t for t in self.row_order if keep(t))
        new_kinds = tuple((k, v) for k, v in self.kinds if k not in gone)
        containment = self.containment
        if not any(t[0] == "m" for t in new_cols) and containment is None:
            in_second, in_first = self.membership(1)
            if in_second and in_first:
                raise InvariantFailure("contradictory memberships at deletion")
            containment = (Containment.FIRST_INSIDE_SECOND if in_second
                           else Containment.SECOND_INSIDE_FIRST if in_first
                           else Containment.DISJOINT)
        col_params = _filter_params(self.col_params, self.col_order, keep)
        row_params = _filter_params(self.row_params, self.row_order, keep)
        return TorusDiagram(col_order=new_cols, row_order=new_rows,
                            kinds=new_kinds, containment=containment,
                            col_params=col_params, row_params=row_params)

    def rebased(self, i: int) -> "TorusDiagram":
        """The same torus cut at constraint i, which becomes constraint 1."""
        if i == 1:
            return self
        relabel = {("c", j): ("c", (j - i) % 3 + 1) for j in (1, 2, 3)}
        rename = lambda t: relabel.get(t, t)
        col_start = self.col_order.index(("c", i))
        row_start = self.row_order.index(("c", i))
        new_cols = tuple(rename(t) for t in
                         self.col_order[col_start:] + self.col_order[:col_start])
        new_rows = tuple(rename(t) for t in
                         self.row_order[row_start:] + self.row_order[:row_start])
        col_params = None if self.col_params is None else \
            self.col_params[col_start:] + self.col_params[:col_start]
        row_params = None if self.row_params is None else \
            self.row_params[row_start:] + self.row_params[:row_start]
        return replace(self, col_order=new_cols, row_order=new_rows,
                       col_params=col_params, row_params=row_params)

    def dump(self, path: "StaircasePath | None" = None) -> str:
        """ASCII rendering, one character cell per token pair, top row first."""
        n = self.size
        grid = [["." for _ in range(n)] for _ in range(n)]
        for m in self.marks:
            grid[m.row][m.col] = "P" if m.kind is CrossKind.P else "~"
        for i in (1, 2, 3):
            x, y = self.constraint_point(i)
            grid[int(y * n)][int(x * n)] = str(i)
        if path is not None:
            for col in range(n):
                x = Fraction(2 * col + 1, 2 * n)
                y = path.y_at(x)
                row = min(int(y * n), n - 1)
                if grid[row][col] == ".":
                    grid[row][col] = "*"
        lines = ["".join(row) for row in reversed(grid)]
        return "\n".join(lines)


def _position_of_param(params: tuple[Fraction, ...] | None, value: Fraction,
                       size: int) -> Fraction:
    value = value % 1
    if params is None:
        return value
    base = params[0]
    off = (value - base) % 1
    offsets = [(p - base) % 1 for p in params] + [Fraction(1)]
    for k in range(size):
        if offsets[k] <= off < offsets[k + 1]:
            frac = (off - offsets[k]) / (offsets[k + 1] - offsets[k])
            return (k + frac) / size
    raise InvariantFailure("parameter fell outside the token cover")


def _param_of_position(params: tuple[Fraction, ...] | None, pos: Fraction,
                       size: int) -> Fraction:
    pos = pos % 1
    if params is None:
        return pos
    scaled = pos * size
    k = int(scaled)
    frac = scaled - k
    base = params[0]
    offsets = [(p - base) % 1 for p in params] + [Fraction(1)]
    off = offsets[k] + frac * (offsets[k + 1] - offsets[k])
    return (base + off) % 1


def _filter_params(params, order, keep):
    if params is None:
        return None
    return tuple(p for p, t in zip(params, order) if keep(t))


def build_diagram(first: PolyJordanCurve, second: PolyJordanCurve,
                  crossings: CrossingSet,
                  constraint_pairs: Sequence[tuple[Fraction, Fraction]],
                  ) -> TorusDiagram:
    """Torus diagram of a transverse pair with three prescribed point pairs.

    Each pair is (source parameter, target parameter). Constraint parameters
    must be distinct from each other and from every crossing parameter, and
    the three target parameters must follow the same cyclic order as the
    sources, or no orientation-preserving map through them exists.
    """
    if len(constraint_pairs) != 3:
        raise InputRejection("exactly three prescribed pairs are required")
    pairs = [(s % 1, t % 1) for s, t in constraint_pairs]
    cross_s = {c.param_k for c in crossings}
    cross_t = {c.param_kt for c in crossings}
    for s, t in pairs:
        if s in cross_s or t in cross_t:
            raise ConstraintOnCurve(
                "prescribed parameter coincides with a crossing")
    if len({s for s, _ in pairs}) != 3 or len({t for _, t in pairs}) != 3:
        raise InputRejection("prescribed parameters must be distinct")

    s1, t1 = pairs[0]
    s_off = [(pairs[1][0] - s1) % 1, (pairs[2][0] - s1) % 1]
    t_off = [(pairs[1][1] - t1) % 1, (pairs[2][1] - t1) % 1]
    if (s_off[0] < s_off[1]) != (t_off[0] < t_off[1]):
        raise OrderViolation(
            "prescribed pairs are cyclically incompatible with orientation")

    col_items = [(Fraction(0), ("c", 1)), (s_off[0], ("c", 2)),
                 (s_off[1], ("c", 3))]
    row_items = [(Fraction(0), ("c", 1)), (t_off[0], ("c", 2)),
                 (t_off[1], ("c", 3))]
    for c in crossings:
        col_items.append(((c.param_k - s1) % 1, ("m", c.index)))
        row_items.append(((c.param_kt - t1) % 1, ("m", c.index)))
    col_items.sort()
    row_items.sort()

    containment = None
    if len(crossings) == 0:
        u = first.point_at(s1)
        v = second.point_at(t1)
        u_in = point_in_polygon(second.loop, u) == PointLocation.INSIDE
        v_in = point_in_polygon(first.loop, v) == PointLocation.INSIDE
        containment = (Containment.FIRST_INSIDE_SECOND if u_in
                       else Containment.SECOND_INSIDE_FIRST if v_in
                       else Containment.DISJOINT)

    return TorusDiagram(
        col_order=tuple(t for _, t in col_items),
        row_order=tuple(t for _, t in row_items),
        kinds=tuple((c.index, c.kind) for c in crossings),
        containment=containment,
        col_params=tuple((off + s1) % 1 for off, _ in col_items),
        row_params=tuple((off + t1) % 1 for off, _ in row_items),
        first=first, second=second, crossings=crossings)


def abstract_diagram(col_order: Sequence[TokenId], row_order: Sequence[TokenId],
                     kinds: dict[int, CrossKind],
                     containment: Containment | None = None) -> TorusDiagram:
    """Purely combinatorial diagram, for synthesis and enumeration."""
    return TorusDiagram(col_order=tuple(col_order), row_order=tuple(row_order),
                        kinds=tuple(sorted(kinds.items())),
                        containment=containment)


# -- paths -------------------------------------------------------------------

@dataclass(frozen=True)
class StaircasePath:
    """Strictly increasing path from (0,0) to (1,1) in the cut unit square."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = self.points
        if len(pts) < 2 or pts[0] != (0, 0) or pts[-1] != (1, 1):
            raise InputRejection("path must run from (0,0) to (1,1)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x0 < x1 and y0 < y1):
                raise InputRejection("path must be strictly increasing")

    def y_at(self, x: Fraction) -> Fraction:
        if not 0 <= x <= 1:
            raise InputRejection("query outside the unit square")
        pts = self.points
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise InvariantFailure("unreachable: path covers [0,1]")

    def passes_through(self, x: Fraction, y: Fraction) -> bool:
        return self.y_at(x) == y

    def with_vertex(self, x: Fraction, y: Fraction) -> "StaircasePath":
        if not self.passes_through(x, y):
            raise InputRejection("point is not on the path")
        if (x, y) in self.points:
            return self
        pts = list(self.points)
        i = next(i for i, (px, _) in enumerate(pts) if px > x)
        pts.insert(i, (x, y))
        return StaircasePath(tuple(pts))


def straight_path(diagram: TorusDiagram) -> StaircasePath:
    """The polyline through the three constraint lattice points."""
    x2, y2 = diagram.constraint_point(2)
    x3, y3 = diagram.constraint_point(3)
    return StaircasePath(((Fraction(0), Fraction(0)), (x2, y2), (x3, y3),
                          (Fraction(1), Fraction(1))))


def path_of_correspondence(diagram: TorusDiagram,
                           phi: PLCorrespondence) -> StaircasePath:
    """Graph of a correspondence in the cut square.

    The correspondence must send the first constraint's source parameter to
    its target parameter; otherwise the cut disconnects the graph.
    """
    if diagram.col_params is None:
        raise InputRejection("diagram carries no true parameters")
    s1 = diagram.col_params[0]
    t1 = diagram.row_params[0]
    if phi.evaluate(s1) != t1:
        raise InputRejection("correspondence misses the first prescribed pair")
    params = set(_refined_breaks(phi))
    params.update(diagram.col_params)
    inv = phi.invert()
    params.update(inv.evaluate(t) for t in diagram.row_params)
    ordered = sorted(params, key=lambda s: (s - s1) % 1)
    pts = [(diagram.x_of_param(s), diagram.y_of_param(phi.evaluate(s)))
           for s in ordered]
    pts.append((Fraction(1), Fraction(1)))
    return StaircasePath(tuple(pts))


def _refined_breaks(phi: PLCorrespondence) -> list[Fraction]:
    return [s for s, _ in phi.breakpoints]


def realize_path(diagram: TorusDiagram, path: StaircasePath) -> PLCorrespondence:
    """Correspondence whose graph is the given path.

    With true parameters attached this reverses `path_of_correspondence`; on
    an abstract diagram it returns the correspondence in token coordinates.
    """
    pairs = []
    for x, y in path.points[:-1]:
        pairs.append((diagram.param_of_x(x), diagram.param_of_y(y)))
    seen = sorted(pairs)
    if any(a[0] == b[0] for a, b in zip(seen, seen[1:])):
        raise InvariantFailure("path vertices collapsed in parameter space")
    return PLCorrespondence(tuple(seen))


def delta_split(diagram: TorusDiagram, path: StaircasePath,
                ) -> tuple[frozenset[int], frozenset[int]]:
    """Mark ids strictly below and strictly above the path."""
    below, above = set(), set()
    for m in diagram.marks:
        level = path.y_at(m.x)
        if level == m.y:
            raise PathHitsMark(f"path passes through mark {m.crossing_id}")
        (below if m.y < level else above).add(m.crossing_id)
    return frozenset(below), frozenset(above)


def index_from_torus(diagram: TorusDiagram, path: StaircasePath,
                     check_all_bases: bool = False,
                     validate_geometry: bool = False) -> int:
    """Fixed-point index read off the diagram, checked two ways.

    The below-count and above-count formulas are evaluated independently and
    must agree. With `check_all_bases` the computation is repeated with the
    cut moved to each constraint the path visits, and with
    `validate_geometry` the combinatorial memberships are compared against
    exact point-in-polygon queries on the linked curves.
    """
    below, above = delta_split(diagram, path)
    kind_map = dict(diagram.kinds)
    p_below = sum(1 for i in below if kind_map[i] is CrossKind.P)
    pt_below = len(below) - p_below
    p_above = sum(1 for i in above if kind_map[i] is CrossKind.P)
    pt_above = len(above) - p_above
    in_second, in_first = diagram.membership(1)

    if validate_geometry and diagram.first is not None:
        s1 = diagram.col_params[0]
        t1 = diagram.row_params[0]
        u_in = point_in_polygon(diagram.second.loop,
                                diagram.first.point_at(s1))
        v_in = point_in_polygon(diagram.first.loop,
                                diagram.second.point_at(t1))
        if (u_in == PointLocation.INSIDE) != in_second or \
                (v_in == PointLocation.INSIDE) != in_first:
            raise FormulaMismatch(
                "combinatorial membership disagrees with geometry")

    base = int(in_second) + int(in_first)
    eta_below = base - p_below + pt_below
    eta_above = base + p_above - pt_above
    if eta_below != eta_above:
        raise FormulaMismatch(
            f"below-form gives {eta_below}, above-form gives {eta_above}")

    if check_all_bases:
        for i in (2, 3):
            x, y = diagram.constraint_point(i)
            if not path.passes_through(x, y):
                raise BasePointOnGrid(
                    f"cannot move the cut to constraint {i}: path misses it")
            d2, p2 = rebase(diagram, path, i)
            again = index_from_torus(d2, p2)
            if again != eta_below:
                raise FormulaMismatch(
                    f"cut at constraint {i} gives {again}, not {eta_below}")
    return eta_below


def rebase(diagram: TorusDiagram, path: StaircasePath,
           i: int) -> tuple[TorusDiagram, StaircasePath]:
    """Move the cut to constraint i; the path must pass through it."""
    if i == 1:
        return diagram, path
    x0, y0 = diagram.constraint_point(i)
    path = path.with_vertex(x0, y0)
    split = path.points.index((x0, y0))
    tail = [(x - x0, y - y0) for x, y in path.points[split:]]
    head = [(x + 1 - x0, y + 1 - y0) for x, y in path.points[1:split + 1]]
    return diagram.rebased(i), StaircasePath(tuple(tail + head))


def local_winding(diagram: TorusDiagram, crossing_id: int,
                  eps: Fraction | None = None) -> int:
    """Winding of the displacement image of a small parameter square around
    a crossing: +1 at entering crossings, -1 at exiting ones."""
    if diagram.first is None or diagram.crossings is None:
        raise InputRejection("local winding needs the linked curves")
    crossing = next(c for c in diagram.crossings if c.index == crossing_id)

    def bound(value: Fraction, others: list[Fraction], n: int) -> Fraction:
        gaps = [(o - value) % 1 for o in others if o != value]
        gaps += [(value - o) % 1 for o in others if o != value]
        seg = Fraction(1, n)
        in_seg = min((value % seg), seg - (value % seg)) or seg
        return min(gaps + [in_seg])

    s, t = crossing.param_k, crossing.param_kt
    s_max = bound(s, list(diagram.col_params), len(diagram.first))
    t_max = bound(t, list(diagram.row_params), len(diagram.second))
    if eps is None:
        eps = min(s_max, t_max) / 2
    elif eps >= min(s_max, t_max):
        raise SquareTooLarge("square would cross another token or a vertex")
    corners = [(s - eps, t - eps), (s + eps, t - eps),
               (s + eps, t + eps), (s - eps, t + eps)]
    cycle = [diagram.second.point_at(tc) - diagram.first.point_at(sc)
             for sc, tc in corners]
    return winding_of_cycle(cycle, RatPoint(Fraction(0), Fraction(0)))
