"""Polygonal Jordan curves, transverse crossings, and their arrangement.

A curve pair (first, second) is *transverse* when the boundaries meet only at
proper interior crossings of segments. Crossings carry a kind:

* kind P: the first boundary crosses into the second region there (which is
  the same event as the second boundary crossing out of the first region);
* kind Ptilde: the first boundary crosses out (the second crosses in).

Kinds alternate along both boundaries. Parameters normalize each curve to
[0, 1) with vertex i of an n-gon at parameter i/n.

The arrangement of a transverse pair with 2M >= 2 crossings has the crossings
as vertices, the 4M boundary arcs as edges, and 2M + 2 faces; each face is
labeled by membership in the two closed regions, decided exactly at a sample
point in its interior. A pair *cuts* when either difference region splits into
more than one face.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    AlternationViolation,
    InvariantFailure,
    NotPositivelyOriented,
    NotSimple,
    NotTransverse,
)
from .exact_geom import (
    MeetKind,
    PLLoop,
    PointLocation,
    RatPoint,
    Segment,
    cmp_directions_ccw,
    interior_point,
    point_between_boundaries,
    point_in_polygon,
    point_on_segment,
    pt,
    segment_intersection,
    signed_area,
)


def _check_simple(loop: PLLoop) -> None:
    segs = loop.segments()
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            meet = segment_intersection(segs[i], segs[j])
            if adjacent:
                # Consecutive segments share exactly one endpoint; any
                # doubling back puts a far endpoint on the other segment.
                first, second = (segs[i], segs[j]) if j == i + 1 else (segs[j], segs[i])
                if point_on_segment(second, first.a) or point_on_segment(first, second.b):
                    raise NotSimple("consecutive segments overlap")
            elif meet.kind != MeetKind.EMPTY:
                raise NotSimple(f"segments {i} and {j} intersect")


@dataclass(frozen=True)
class PolyJordanCurve:
    """A simple, positively oriented closed polygonal curve."""

    loop: PLLoop

    def __post_init__(self) -> None:
        _check_simple(self.loop)
        if signed_area(self.loop) <= 0:
            raise NotPositivelyOriented("loop has non-positive signed area")

    @property
    def vertices(self) -> tuple[RatPoint, ...]:
        return self.loop.vertices

    def __len__(self) -> int:
        return len(self.loop)

    def point_at(self, param: Fraction) -> RatPoint:
        """Point at a normalized parameter (vertex i of an n-gon at i/n)."""
        n = len(self.loop)
        scaled = (param % 1) * n
        i = int(scaled)
        frac = scaled - i
        a = self.loop.vertices[i]
        b = self.loop.vertices[(i + 1) % n]
        return a + (b - a).scale(frac)

    def locate_param(self, p: RatPoint) -> Fraction | None:
        """Normalized parameter of a boundary point, or None if off-curve."""
        n = len(self.loop)
        for i, (a, b) in enumerate(self.loop.edges()):
            if not point_on_segment(Segment(a, b), p):
                continue
            d = b - a
            frac = (p.x - a.x) / d.x if d.x != 0 else (p.y - a.y) / d.y
            if frac == 1:
                continue  # belongs to the next segment's start
            return (i + frac) / n
        return None

    def contains(self, p: RatPoint) -> PointLocation:
        return point_in_polygon(self.loop, p)


def validate_curve(vertices: Sequence[RatPoint] | PLLoop,
                   allow_reversal: bool = False) -> PolyJordanCurve:
    """Checked constructor: simple and positively oriented.

    With allow_reversal, a clockwise simple loop is reversed instead of
    rejected; reversal never happens silently otherwise.
    """
    loop = vertices if isinstance(vertices, PLLoop) else PLLoop(tuple(vertices))
    _check_simple(loop)
    if signed_area(loop) <= 0:
        if not allow_reversal:
            raise NotPositivelyOriented("loop has non-positive signed area")
        loop = loop.reversed_loop()
    return PolyJordanCurve(loop)


class CrossKind(Enum):
    P = "P"           # first curve enters the second region
    PTILDE = "Pt"     # first curve exits the second region

    def other(self) -> "CrossKind":
        return CrossKind.PTILDE if self is CrossKind.P else CrossKind.P


@dataclass(frozen=True)
class Crossing:
    """One transverse boundary crossing.

    `index` is the position in the first curve's cyclic parameter order and
    serves as the crossing's stable id everywhere downstream.
    """

    index: int
    point: RatPoint
    param_k: Fraction
    param_kt: Fraction
    kind: CrossKind


@dataclass(frozen=True)
class CrossingSet:
    """All crossings of a transverse pair, sorted by first-curve parameter."""

    crossings: tuple[Crossing, ...]

    def __post_init__(self) -> None:
        params = [c.param_k for c in self.crossings]
        if params != sorted(params):
            raise InvariantFailure("crossings not sorted by first-curve parameter")
        if len(self.crossings) % 2 != 0:
            raise AlternationViolation("odd crossing count")
        for order in (self.crossings, self.by_param_kt()):
            for a, b in zip(order, order[1:] + order[:1]):
                if len(order) >= 2 and a.kind == b.kind:
                    raise AlternationViolation("crossing kinds fail to alternate")

    def __len__(self) -> int:
        return len(self.crossings)

    def __iter__(self) -> Iterator[Crossing]:
        return iter(self.crossings)

    def by_param_kt(self) -> tuple[Crossing, ...]:
        return tuple(sorted(self.crossings, key=lambda c: c.param_kt))


def _param_of(curve: PolyJordanCurve, seg_index: int, p: RatPoint) -> Fraction:
    a = curve.loop.vertices[seg_index]
    b = curve.loop.vertices[(seg_index + 1) % len(curve.loop)]
    d = b - a
    frac = (p.x - a.x) / d.x if d.x != 0 else (p.y - a.y) / d.y
    return (seg_index + frac) / len(curve.loop)


def check_transverse(first: PolyJordanCurve, second: PolyJordanCurve) -> CrossingSet:
    """Crossing set of a transverse pair; NotTransverse on any bad contact."""
    found: list[tuple[Fraction, Fraction, RatPoint, CrossKind]] = []
    segs1 = first.loop.segments()
    segs2 = second.loop.segments()
    for i, s in enumerate(segs1):
        for j, t in enumerate(segs2):
            meet = segment_intersection(s, t)
            if meet.kind == MeetKind.EMPTY:
                continue
            if meet.kind == MeetKind.DEGENERATE:
                raise NotTransverse(
                    f"non-crossing contact between segment {i} and segment {j}")
            assert meet.point is not None
            u_dir = s.direction()
            v_dir = t.direction()
            kind = CrossKind.P if v_dir.cross(u_dir) > 0 else CrossKind.PTILDE
            found.append((_param_of(first, i, meet.point),
                          _param_of(second, j, meet.point), meet.point, kind))
    found.sort(key=lambda item: item[0])
    crossings = tuple(
        Crossing(index=n, point=p, param_k=pk, param_kt=pkt, kind=kind)
        for n, (pk, pkt, p, kind) in enumerate(found))
    return CrossingSet(crossings)


# -- arrangement -------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryArc:
    """Maximal crossing-free boundary arc of one curve, directed positively."""

    curve: str                 # "first" or "second"
    start: int                 # crossing index at the tail
    end: int                   # crossing index at the head
    polyline: tuple[RatPoint, ...]


@dataclass(frozen=True)
class ArrangementFace:
    """One face of the overlay, labeled by region membership."""

    id: int
    boundary: tuple[tuple[str, int, int, bool], ...]  # (curve, start, end, forward)
    in_K: bool
    in_Kt: bool
    sample_point: RatPoint
    polygon: PLLoop | None = None


def _arcs_of(curve: PolyJordanCurve, tag: str,
             ordered: Sequence[Crossing], param_attr: str) -> list[BoundaryArc]:
    n = len(curve.loop)
    vertex_params = [Fraction(i, n) for i in range(n)]
    arcs = []
    k = len(ordered)
    for a_i in range(k):
        c_from = ordered[a_i]
        c_to = ordered[(a_i + 1) % k]
        p_from = getattr(c_from, param_attr)
        p_to = getattr(c_to, param_attr)
        span = (p_to - p_from) % 1
        if span == 0:
            span = Fraction(1)
        inner = sorted(
            ((vp - p_from) % 1, curve.loop.vertices[i])
            for i, vp in enumerate(vertex_params)
            if 0 < (vp - p_from) % 1 < span)
        polyline = [c_from.point] + [v for _, v in inner] + [c_to.point]
        arcs.append(BoundaryArc(curve=tag, start=c_from.index, end=c_to.index,
                                polyline=tuple(polyline)))
    return arcs


@dataclass
class _HalfEdge:
    hid: int
    arc: BoundaryArc
    forward: bool
    tail: int
    head: int
    polyline: tuple[RatPoint, ...]
    twin: int = -1
    nxt: int = -1

    @property
    def out_dir(self) -> RatPoint:
        return self.polyline[1] - self.polyline[0]


def build_arrangement(first: PolyJordanCurve, second: PolyJordanCurve,
                      crossings: CrossingSet) -> list[ArrangementFace]:
    """Faces of the overlay of a transverse pair, exactly labeled."""
    if len(crossings) == 0:
        return _trivial_arrangement(first, second)

    by_k = list(crossings)
    by_kt = list(crossings.by_param_kt())
    arcs = _arcs_of(first, "first", by_k, "param_k") + \
        _arcs_of(second, "second", by_kt, "param_kt")

    halves: list[_HalfEdge] = []
    for arc in arcs:
        f = _HalfEdge(hid=len(halves), arc=arc, forward=True,
                      tail=arc.start, head=arc.end, polyline=arc.polyline)
        halves.append(f)
        b = _HalfEdge(hid=len(halves), arc=arc, forward=False,
                      tail=arc.end, head=arc.start,
                      polyline=tuple(reversed(arc.polyline)))
        halves.append(b)
        f.twin, b.twin = b.hid, f.hid

    outgoing: dict[int, list[_HalfEdge]] = {}
    for h in halves:
        outgoing.setdefault(h.tail, []).append(h)
    key = functools.cmp_to_key(
        lambda a, b: cmp_directions_ccw(a.out_dir, b.out_dir))
    rotation_pos: dict[int, int] = {}
    for node, outs in outgoing.items():
        if len(outs) != 4:
            raise InvariantFailure("crossing degree is not four")
        outs.sort(key=key)
        for pos, h in enumerate(outs):
            rotation_pos[h.hid] = pos

    # Left-face tracing: continue with the clockwise successor of the twin.
    def next_of(h: _HalfEdge) -> _HalfEdge:
        outs = outgoing[h.head]
        pos = rotation_pos[halves[h.twin].hid]
        return outs[(pos - 1) % len(outs)]

    faces: list[ArrangementFace] = []
    seen: set[int] = set()
    negative_faces = 0
    for h0 in halves:
        if h0.hid in seen:
            continue
        cycle = []
        h = h0
        while True:
            cycle.append(h)
            seen.add(h.hid)
            h = next_of(h)
            if h.hid == h0.hid:
                break
        points: list[RatPoint] = []
        for he in cycle:
            for q in he.polyline[:-1]:
                if not points or points[-1] != q:
                    points.append(q)
        if points[0] == points[-1]:
            points.pop()
        polygon = PLLoop(tuple(points))
        area = signed_area(polygon)
        if area == 0:
            raise InvariantFailure("degenerate arrangement face")
        if area > 0:
            sample = interior_point(polygon)
        else:
            negative_faces += 1
            xs = [p.x for c in (first, second) for p in c.vertices]
            ys = [p.y for c in (first, second) for p in c.vertices]
            sample = RatPoint(max(xs) + 1, max(ys) + 1)
        boundary = tuple((he.arc.curve, he.arc.start, he.arc.end, he.forward)
                         for he in cycle)
        faces.append(ArrangementFace(
            id=len(faces), boundary=boundary,
            in_K=first.contains(sample) == PointLocation.INSIDE,
            in_Kt=second.contains(sample) == PointLocation.INSIDE,
            sample_point=sample, polygon=polygon))

    if negative_faces != 1:
        raise InvariantFailure("expected exactly one unbounded face")
    if len(faces) != len(crossings) + 2:
        raise InvariantFailure(
            f"Euler check failed: {len(faces)} faces for {len(crossings)} crossings")
    return faces


def _trivial_arrangement(first: PolyJordanCurve,
                         second: PolyJordanCurve) -> list[ArrangementFace]:
    """Faces for a crossing-free pair: disjoint or nested."""
    v1_in_2 = second.contains(first.vertices[0]) == PointLocation.INSIDE
    v2_in_1 = first.contains(second.vertices[0]) == PointLocation.INSIDE
    xs = [p.x for c in (first, second) for p in c.vertices]
    ys = [p.y for c in (first, second) for p in c.vertices]
    far = RatPoint(max(xs) + 1, max(ys) + 1)
    full1 = tuple((("first", -1, -1, True),))
    full2 = tuple((("second", -1, -1, True),))
    faces = []
    if not v1_in_2 and not v2_in_1:  # disjoint
        faces.append(ArrangementFace(0, full1, True, False,
                                     interior_point(first.loop), first.loop))
        faces.append(ArrangementFace(1, full2, False, True,
                                     interior_point(second.loop), second.loop))
    elif v1_in_2:  # first nested in second
        faces.append(ArrangementFace(0, full1, True, True,
                                     interior_point(first.loop), first.loop))
        faces.append(ArrangementFace(1, full1 + full2, False, True,
                                     point_between_boundaries(second.loop,
                                                              [first.loop]),
                                     None))
    else:  # second nested in first
        faces.append(ArrangementFace(0, full2, True, True,
                                     interior_point(second.loop), second.loop))
        faces.append(ArrangementFace(1, full1 + full2, True, False,
                                     point_between_boundaries(first.loop,
                                                              [second.loop]),
                                     None))
    faces.append(ArrangementFace(2, full1 + full2, False, False, far, None))
    return faces


def cuts_each_other(first: PolyJordanCurve, second: PolyJordanCurve) -> bool:
    """True when either closed difference region is disconnected.

    Components of first-minus-second are exactly the (in, out) faces of the
    arrangement, and symmetrically, so the test counts labeled faces.
    """
    crossings = check_transverse(first, second)
    if len(crossings) == 0:
        return False
    faces = build_arrangement(first, second, crossings)
    only_first = sum(1 for f in faces if f.in_K and not f.in_Kt)
    only_second = sum(1 for f in faces if f.in_Kt and not f.in_K)
    return only_first > 1 or only_second > 1


def crossing_word(crossings: CrossingSet) -> tuple[int, ...]:
    """Canonical combinatorial class word of a crossing set.

    Crossings are numbered along the first curve; the word records the
    sequence of those numbers along the second curve, started at an entering
    crossing and shifted so it opens with 0, minimized over all entering
    starts. Two transverse pairs get equal words exactly when their crossing
    patterns match combinatorially.
    """
    n = len(crossings)
    if n == 0:
        raise InvariantFailure("word undefined without crossings")
    kt_seq = [c.index for c in crossings.by_param_kt()]
    best: tuple[int, ...] | None = None
    for c in crossings:
        if c.kind != CrossKind.P:
            continue
        start = kt_seq.index(c.index)
        tau = tuple((kt_seq[(start + t) % n] - c.index) % n for t in range(n))
        if best is None or tau < best:
            best = tau
    assert best is not None
    return best


def canonical_noncut_pair(m: int) -> tuple[PolyJordanCurve, PolyJordanCurve]:
    """The reference non-cutting transverse pair with 2m crossings.

    First curve: an 8 x 6m rectangle. Second curve: a slab to its left whose
    right wall carries m half-octagon bumps poking through the rectangle's
    left side, two crossings per bump. Both difference regions stay connected.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    height = 6 * m
    rect = validate_curve([pt(0, 0), pt(8, 0), pt(8, height), pt(0, height)])
    wall = Fraction(-1)
    verts: list[RatPoint] = [pt(-10, -2), pt(wall, -2)]
    for i in range(1, m + 1):
        c = Fraction(6 * i - 3)
        verts.extend([
            RatPoint(wall, c - 2),
            RatPoint(Fraction(2, 5), c - Fraction(7, 5)),
            RatPoint(Fraction(1), c),
            RatPoint(Fraction(2, 5), c + Fraction(7, 5)),
            RatPoint(wall, c + 2),
        ])
    verts.extend([pt(wall, height + 2), pt(-10, height + 2)])
    bumpy = validate_curve(verts)
    return rect, bumpy
