"""Piecewise-linear circle correspondences and their fixed-point index.

A correspondence is an orientation-preserving degree-one circle map between
the normalized parameter spaces of two curves, stored as finitely many
breakpoint pairs and interpolated affinely between them. Geometry enters only
through the curves' parametrizations, so evaluation, inversion, and the
difference loop are all exact.

The index of a correspondence phi between boundaries is the winding number of
the loop s -> target(phi(s)) - source(s) around the origin. A zero of that
loop is a boundary fixed point and leaves the index undefined; callers get
HasFixedPoint instead of a number.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ArcsDisagree,
    BadGluingGeometry,
    HasFixedPoint,
    DegenerateLoop,
    InputRejection,
    NotOrientationPreserving,
    PointOnLoop,
)
from .exact_geom import (
    AffineMap,
    MeetKind,
    PLLoop,
    PointLocation,
    RatPoint,
    Segment,
    point_in_polygon,
    point_on_segment,
    segment_intersection,
    winding_of_cycle,
)
from .jordan import PolyJordanCurve, validate_curve


@dataclass(frozen=True)
class CurveParam:
    """Constant-speed-per-edge parametrization of a curve on [0, 1)."""

    curve: PolyJordanCurve

    def __call__(self, t: Fraction) -> RatPoint:
        return self.curve.point_at(t)

    def vertex_params(self) -> tuple[Fraction, ...]:
        n = len(self.curve)
        return tuple(Fraction(i, n) for i in range(n))


@dataclass(frozen=True)
class PLCorrespondence:
    """Orientation-preserving piecewise-affine degree-one circle map.

    Breakpoints are (s, t) pairs with all s in [0, 1) strictly increasing and
    the t sequence strictly increasing cyclically with exactly one wrap, which
    is what degree one plus injectivity means for a monotone map.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        bps = self.breakpoints
        if len(bps) < 2:
            raise InputRejection("need at least two breakpoints")
        s_vals = [s for s, _ in bps]
        t_vals = [t for _, t in bps]
        if any(not (0 <= s < 1) for s in s_vals):
            raise InputRejection("source parameters must lie in [0, 1)")
        if any(not (0 <= t < 1) for t in t_vals):
            raise InputRejection("target parameters must lie in [0, 1)")
        if any(a >= b for a, b in zip(s_vals, s_vals[1:])):
            raise NotOrientationPreserving("source parameters not increasing")
        descents = sum(1 for i in range(len(t_vals))
                       if t_vals[(i + 1) % len(t_vals)] <= t_vals[i])
        if descents != 1:
            raise NotOrientationPreserving(
                "target parameters must increase cyclically with one wrap")

    def evaluate(self, s: Fraction) -> Fraction:
        s = s % 1
        bps = self.breakpoints
        n = len(bps)
        s_vals = [b[0] for b in bps]
        i = bisect.bisect_right(s_vals, s) - 1
        if i < 0:
            i = n - 1
            s = s + 1
        s_i, t_i = bps[i]
        s_next = bps[(i + 1) % n][0] + (1 if i == n - 1 else 0)
        t_step = (bps[(i + 1) % n][1] - t_i) % 1
        return (t_i + t_step * (s - s_i) / (s_next - s_i)) % 1

    def invert(self) -> "PLCorrespondence":
        flipped = sorted((t, s) for s, t in self.breakpoints)
        return PLCorrespondence(tuple(flipped))


def random_correspondence(rng, breakpoints: int,
                          denominator: int = 1024) -> PLCorrespondence:
    """Random correspondence with the given number of breakpoints."""
    if breakpoints < 2:
        raise InputRejection("need at least two breakpoints")

    def draw() -> list[Fraction]:
        vals: set[Fraction] = set()
        while len(vals) < breakpoints:
            vals.add(Fraction(rng.randrange(denominator), denominator))
        return sorted(vals)

    s_vals = draw()
    t_vals = draw()
    shift = rng.randrange(breakpoints)
    t_cyc = t_vals[shift:] + t_vals[:shift]
    return PLCorrespondence(tuple(zip(s_vals, t_cyc)))


def _refined_params(source: PolyJordanCurve, target: PolyJordanCurve,
                    phi: PLCorrespondence) -> list[Fraction]:
    """Parameters where the difference loop can bend: breakpoints, source
    vertices, and preimages of target vertices."""
    params = {s for s, _ in phi.breakpoints}
    params.update(Fraction(i, len(source)) for i in range(len(source)))
    inv = phi.invert()
    params.update(inv.evaluate(Fraction(j, len(target)))
                  for j in range(len(target)))
    return sorted(params)


def _difference_cycle(source: PolyJordanCurve, target: PolyJordanCurve,
                      phi: PLCorrespondence) -> list[RatPoint]:
    return [target.point_at(phi.evaluate(s)) - source.point_at(s)
            for s in _refined_params(source, target, phi)]


def difference_loop(source: PolyJordanCurve, target: PolyJordanCurve,
                    phi: PLCorrespondence) -> PLLoop:
    """The loop of displacement vectors target(phi(s)) - source(s)."""
    cycle = _difference_cycle(source, target, phi)
    points: list[RatPoint] = []
    for q in cycle:
        if not points or points[-1] != q:
            points.append(q)
    if len(points) >= 2 and points[0] == points[-1]:
        points.pop()
    if len(points) < 3:
        raise DegenerateLoop("difference collapses to fewer than three points")
    return PLLoop(tuple(points))


def fixed_point_index(source: PolyJordanCurve, target: PolyJordanCurve,
                      phi: PLCorrespondence) -> int:
    """Winding number of the difference loop around the origin.

    Raises HasFixedPoint when some boundary point maps to itself, where no
    index is defined.
    """
    cycle = _difference_cycle(source, target, phi)
    zero = RatPoint(Fraction(0), Fraction(0))
    if all(q == cycle[0] for q in cycle):
        if cycle[0] == zero:
            raise HasFixedPoint("correspondence is the identity on the boundary")
        return 0
    try:
        return winding_of_cycle(cycle, zero)
    except PointOnLoop as exc:
        raise HasFixedPoint("difference loop passes through the origin") from exc


def transform_pair(source: PolyJordanCurve, target: PolyJordanCurve,
                   phi: PLCorrespondence, mapping: AffineMap,
                   ) -> tuple[PolyJordanCurve, PolyJordanCurve, PLCorrespondence]:
    """Transport a correspondence along an orientation-preserving affine map.

    Parameters are per-edge fractions, which affine maps preserve, so the same
    breakpoint table works for the transformed curves.
    """
    if mapping.determinant() <= 0:
        raise NotOrientationPreserving("affine map must have positive determinant")
    new_source = validate_curve([mapping.apply(p) for p in source.vertices])
    new_target = validate_curve([mapping.apply(p) for p in target.vertices])
    return new_source, new_target, phi


# -- gluing ------------------------------------------------------------------

@dataclass(frozen=True)
class GluedMap:
    """Result of joining two correspondences along a shared boundary arc."""

    source: PolyJordanCurve
    target: PolyJordanCurve
    phi: PLCorrespondence


def _insert_on_edges(loop: PLLoop, extra: Iterable[RatPoint]) -> PLLoop:
    """Subdivide edges at any of the given points lying strictly inside them."""
    out: list[RatPoint] = []
    candidates = list(extra)
    for a, b in loop.edges():
        out.append(a)
        d = b - a
        hits = []
        for p in candidates:
            if p != a and p != b and point_on_segment(Segment(a, b), p):
                frac = (p.x - a.x) / d.x if d.x != 0 else (p.y - a.y) / d.y
                hits.append((frac, p))
        out.extend(p for _, p in sorted(hits))
    return PLLoop(tuple(out))


def _shared_block(loop: PLLoop, other_edges: set[tuple[RatPoint, RatPoint]],
                  ) -> tuple[int, int]:
    """Start index and length of the single cyclic run of shared edges."""
    n = len(loop)
    edges = list(loop.edges())
    shared = []
    for i, (a, b) in enumerate(edges):
        if (b, a) in other_edges:
            shared.append(i)
        elif (a, b) in other_edges:
            raise BadGluingGeometry("shared edge traversed in the same direction")
    if not shared:
        raise BadGluingGeometry("no shared boundary arc")
    if len(shared) == n:
        raise BadGluingGeometry("curves coincide")
    flags = [i in set(shared) for i in range(n)]
    runs = sum(1 for i in range(n) if flags[i] and not flags[i - 1])
    if runs != 1:
        raise BadGluingGeometry("shared set is not a single arc")
    start = next(i for i in range(n) if flags[i] and not flags[i - 1])
    return start, len(shared)


def _split_at_arc(curve: PolyJordanCurve, other: PolyJordanCurve,
                  ) -> tuple[PLLoop, list[RatPoint], list[RatPoint]]:
    """Refine `curve` against `other`; return (refined loop, shared path
    from junction u to junction v, outer path from v back to u)."""
    refined = _insert_on_edges(curve.loop, other.vertices)
    refined_other = _insert_on_edges(other.loop, curve.vertices)
    other_edges = set(refined_other.edges())
    start, length = _shared_block(refined, other_edges)
    verts = refined.vertices
    n = len(verts)
    shared_path = [verts[(start + k) % n] for k in range(length + 1)]
    outer_path = [verts[(start + length + k) % n] for k in range(n - length + 1)]
    return refined, shared_path, outer_path


def _overlaps_in_segment(s1: Segment, s2: Segment) -> bool:
    """True when two collinear segments share more than a single point."""
    d = s1.direction()
    if d.cross(s2.direction()) != 0 or d.cross(s2.a - s1.a) != 0:
        return False
    axis = (lambda p: p.x) if d.x != 0 else (lambda p: p.y)
    lo1, hi1 = sorted((axis(s1.a), axis(s1.b)))
    lo2, hi2 = sorted((axis(s2.a), axis(s2.b)))
    return max(lo1, lo2) < min(hi1, hi2)


def _check_outside(path: Sequence[RatPoint], region: PolyJordanCurve,
                   junctions: set[RatPoint]) -> None:
    for a, b in zip(path, path[1:]):
        mid = a + (b - a).scale(Fraction(1, 2))
        if point_in_polygon(region.loop, mid) != PointLocation.OUTSIDE:
            raise BadGluingGeometry("curve interiors are not disjoint")
        edge = Segment(a, b)
        for c, d in region.loop.edges():
            other = Segment(c, d)
            meet = segment_intersection(edge, other)
            if meet.kind == MeetKind.EMPTY:
                continue
            if meet.kind == MeetKind.PROPER or _overlaps_in_segment(edge, other):
                raise BadGluingGeometry(
                    "outer boundaries touch away from the junctions")
            contacts = {p for p in (a, b) if point_on_segment(other, p)}
            contacts |= {p for p in (c, d) if point_on_segment(edge, p)}
            if not contacts <= junctions:
                raise BadGluingGeometry(
                    "outer boundaries touch away from the junctions")


def glue(source_a: PolyJordanCurve, target_a: PolyJordanCurve,
         phi_a: PLCorrespondence,
         source_b: PolyJordanCurve, target_b: PolyJordanCurve,
         phi_b: PLCorrespondence) -> GluedMap:
    """Join two correspondences that agree along one shared boundary arc.

    The two source curves must meet in exactly one arc with disjoint
    interiors, and likewise the targets; both correspondences must send the
    shared source arc onto the shared target arc identically. The result maps
    the union boundary by whichever original map covers each side.
    """
    _, shared_src, outer_src_a = _split_at_arc(source_a, source_b)
    _, shared_src_b, outer_src_b = _split_at_arc(source_b, source_a)
    _, shared_tgt, outer_tgt_a = _split_at_arc(target_a, target_b)
    _, shared_tgt_b, outer_tgt_b = _split_at_arc(target_b, target_a)

    if shared_src_b != list(reversed(shared_src)):
        raise BadGluingGeometry("source arcs disagree between the two curves")
    if shared_tgt_b != list(reversed(shared_tgt)):
        raise BadGluingGeometry("target arcs disagree between the two curves")

    junc_src = {shared_src[0], shared_src[-1]}
    junc_tgt = {shared_tgt[0], shared_tgt[-1]}
    _check_outside(outer_src_a, source_b, junc_src)
    _check_outside(outer_src_b, source_a, junc_src)
    _check_outside(outer_tgt_a, target_b, junc_tgt)
    _check_outside(outer_tgt_b, target_a, junc_tgt)

    # The maps must agree on the shared arc: compare at every point where
    # either restriction can bend, which pins the whole piecewise map.
    arc_segs = [Segment(a, b) for a, b in zip(shared_src, shared_src[1:])]
    tgt_arc_segs = [Segment(a, b) for a, b in zip(shared_tgt, shared_tgt[1:])]

    def on_path(p: RatPoint, segs: list[Segment]) -> bool:
        return any(point_on_segment(s, p) for s in segs)

    probe_points: list[RatPoint] = list(shared_src)
    for curve, phi in ((source_a, phi_a), (source_b, phi_b)):
        for s in _refined_params(curve, target_a if phi is phi_a else target_b,
                                 phi):
            p = curve.point_at(s)
            if on_path(p, arc_segs) and p not in probe_points:
                probe_points.append(p)

    for p in probe_points:
        s_a = source_a.locate_param(p)
        s_b = source_b.locate_param(p)
        if s_a is None or s_b is None:
            raise BadGluingGeometry("shared arc point missing from a source")
        q_a = target_a.point_at(phi_a.evaluate(s_a))
        q_b = target_b.point_at(phi_b.evaluate(s_b))
        if q_a != q_b:
            raise ArcsDisagree(f"maps differ at shared point {p}")
        if not on_path(q_a, tgt_arc_segs):
            raise ArcsDisagree("shared arc does not map onto the shared target arc")

    glued_source = validate_curve(outer_src_a[:-1] + outer_src_b[:-1])
    glued_target_loop = outer_tgt_a[:-1] + outer_tgt_b[:-1]
    glued_target = validate_curve(glued_target_loop)

    pairs: dict[Fraction, Fraction] = {}
    for curve, target, phi in ((source_a, target_a, phi_a),
                               (source_b, target_b, phi_b)):
        for s in _refined_params(curve, target, phi):
            p = curve.point_at(s)
            s_new = glued_source.locate_param(p)
            if s_new is None:
                continue  # interior of the shared arc
            q = target.point_at(phi.evaluate(s))
            t_new = glued_target.locate_param(q)
            if t_new is None:
                raise ArcsDisagree("image point missing from the glued target")
            if s_new in pairs and pairs[s_new] != t_new:
                raise ArcsDisagree("maps differ at a junction")
            pairs[s_new] = t_new
    theta = PLCorrespondence(tuple(sorted(pairs.items())))
    return GluedMap(source=glued_source, target=glued_target, phi=theta)
