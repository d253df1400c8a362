"""Exact rational plane geometry.

Every coordinate is a `fractions.Fraction` and every predicate is decided
exactly; nothing in here touches floats, rounds, or perturbs. Degenerate
configurations are reported, never repaired.

Sign conventions, used consistently by the whole package:

* orient2d(a, b, c) is +1 when the triangle a, b, c winds counterclockwise,
  so "c is to the left of the directed line a->b" is orient2d(a, b, c) > 0.
* Positive (counterclockwise) loops have positive signed area and keep their
  interior on the left of each directed edge.
* winding_number counts signed crossings of a rightward horizontal ray, with
  half-open vertex handling so that vertices on the ray are never counted
  twice: an edge contributes +1 when it crosses the ray upward strictly left
  of the query point, -1 when it crosses downward.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import InvariantFailure, PointOnLoop

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, "p/q" string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class RatPoint:
    """A point (or vector; the algebra is the same) with rational coordinates."""

    x: Fraction
    y: Fraction

    def __add__(self, other: "RatPoint") -> "RatPoint":
        return RatPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "RatPoint") -> "RatPoint":
        return RatPoint(self.x - other.x, self.y - other.y)

    def scale(self, factor: RatLike) -> "RatPoint":
        f = rat(factor)
        return RatPoint(self.x * f, self.y * f)

    def cross(self, other: "RatPoint") -> Fraction:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "RatPoint") -> Fraction:
        return self.x * other.x + self.y * other.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0


def pt(x: RatLike, y: RatLike) -> RatPoint:
    return RatPoint(rat(x), rat(y))


ORIGIN = pt(0, 0)


def cross3(a: RatPoint, b: RatPoint, c: RatPoint) -> Fraction:
    """Twice the signed area of triangle a, b, c (full value, not just sign)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient2d(a: RatPoint, b: RatPoint, c: RatPoint) -> int:
    """+1 if a,b,c counterclockwise, -1 if clockwise, 0 if collinear."""
    v = cross3(a, b, c)
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


@dataclass(frozen=True)
class Segment:
    """A closed straight segment with distinct endpoints."""

    a: RatPoint
    b: RatPoint

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("degenerate segment: endpoints coincide")

    def direction(self) -> RatPoint:
        return self.b - self.a

    def point_at(self, t: RatLike) -> RatPoint:
        return self.a + (self.b - self.a).scale(t)


def point_on_segment(seg: Segment, p: RatPoint) -> bool:
    """Exact membership of p in the closed segment."""
    if orient2d(seg.a, seg.b, p) != 0:
        return False
    lo_x, hi_x = sorted((seg.a.x, seg.b.x))
    lo_y, hi_y = sorted((seg.a.y, seg.b.y))
    return lo_x <= p.x <= hi_x and lo_y <= p.y <= hi_y


class MeetKind(Enum):
    EMPTY = "empty"
    PROPER = "proper"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class SegmentMeeting:
    """Outcome of intersecting two segments.

    PROPER means the open segments cross at a single point interior to both;
    DEGENERATE covers every other kind of contact (endpoint touching, a vertex
    lying on the other segment, collinear overlap).
    """

    kind: MeetKind
    point: RatPoint | None = None

    @staticmethod
    def empty() -> "SegmentMeeting":
        return SegmentMeeting(MeetKind.EMPTY)

    @staticmethod
    def proper(point: RatPoint) -> "SegmentMeeting":
        return SegmentMeeting(MeetKind.PROPER, point)

    @staticmethod
    def degenerate() -> "SegmentMeeting":
        return SegmentMeeting(MeetKind.DEGENERATE)


def segment_intersection(s: Segment, t: Segment) -> SegmentMeeting:
    """Exact segment intersection, symmetric in its arguments."""
    d1 = cross3(t.a, t.b, s.a)
    d2 = cross3(t.a, t.b, s.b)
    d3 = cross3(s.a, s.b, t.a)
    d4 = cross3(s.a, s.b, t.b)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return SegmentMeeting.empty()
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return SegmentMeeting.empty()
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 \
            and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        # Interior crossing; d1/(d1-d2) is the affine parameter along s.
        u = d1 / (d1 - d2)
        return SegmentMeeting.proper(s.point_at(u))
    for seg, p in ((t, s.a), (t, s.b), (s, t.a), (s, t.b)):
        if point_on_segment(seg, p):
            return SegmentMeeting.degenerate()
    return SegmentMeeting.empty()


@dataclass(frozen=True)
class PLLoop:
    """A closed polygonal loop: >= 3 vertices, cyclically consecutive distinct.

    Loops are not required to be simple; self-intersecting difference loops
    are the main customers of winding_number.
    """

    vertices: tuple[RatPoint, ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise ValueError("a loop needs at least 3 vertices")
        for i in range(n):
            if self.vertices[i] == self.vertices[(i + 1) % n]:
                raise ValueError("consecutive loop vertices must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> Iterator[tuple[RatPoint, RatPoint]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def segments(self) -> list[Segment]:
        return [Segment(a, b) for a, b in self.edges()]

    def reversed_loop(self) -> "PLLoop":
        return PLLoop(tuple(reversed(self.vertices)))

    def translated(self, v: RatPoint) -> "PLLoop":
        return PLLoop(tuple(p + v for p in self.vertices))


def signed_area(loop: PLLoop) -> Fraction:
    """Shoelace area: positive for counterclockwise loops."""
    total = Fraction(0)
    for a, b in loop.edges():
        total += a.x * b.y - b.x * a.y
    return total / 2


def winding_of_cycle(points: Sequence[RatPoint], p: RatPoint) -> int:
    """Winding number of a cyclic point sequence around p.

    Tolerates consecutive duplicate points (zero-length steps are skipped).
    Raises PointOnLoop when p lies on the traced path.
    """
    cleaned: list[RatPoint] = []
    for q in points:
        if not cleaned or cleaned[-1] != q:
            cleaned.append(q)
    if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
        cleaned.pop()
    if not cleaned:
        raise ValueError("empty cycle")
    if len(cleaned) == 1:
        if cleaned[0] == p:
            raise PointOnLoop("query point equals the constant cycle")
        return 0
    n = len(cleaned)
    for i in range(n):
        a, b = cleaned[i], cleaned[(i + 1) % n]
        if point_on_segment(Segment(a, b), p):
            raise PointOnLoop("query point lies on the cycle")
    w = 0
    for i in range(n):
        a, b = cleaned[i], cleaned[(i + 1) % n]
        if a.y <= p.y < b.y and cross3(a, b, p) > 0:
            w += 1
        elif b.y <= p.y < a.y and cross3(a, b, p) < 0:
            w -= 1
    return w


def winding_number(loop: PLLoop, p: RatPoint) -> int:
    """Winding number of the loop around p; PointOnLoop if p is on the loop."""
    return winding_of_cycle(loop.vertices, p)


class PointLocation(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_BOUNDARY = "on_boundary"


def point_in_polygon(loop: PLLoop, p: RatPoint) -> PointLocation:
    """Location of p relative to a simple loop (inside iff winding is +-1)."""
    for a, b in loop.edges():
        if point_on_segment(Segment(a, b), p):
            return PointLocation.ON_BOUNDARY
    return PointLocation.INSIDE if winding_of_cycle(loop.vertices, p) != 0 \
        else PointLocation.OUTSIDE


def cmp_directions_ccw(u: RatPoint, v: RatPoint) -> int:
    """Compare two nonzero direction vectors by counterclockwise angle.

    Angles start at the positive x-axis. Returns -1/0/+1. Vectors that are
    positive multiples of each other compare equal.
    """
    if u.is_zero() or v.is_zero():
        raise ValueError("zero direction")

    def half(d: RatPoint) -> int:
        # 0 for angles in [0, pi), 1 for [pi, 2*pi).
        if d.y > 0 or (d.y == 0 and d.x > 0):
            return 0
        return 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u.cross(v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def ray_first_hit(origin: RatPoint, direction: RatPoint,
                  segments: Iterable[Segment]) -> Fraction | None:
    """Smallest t > 0 with origin + t*direction on one of the segments."""
    if direction.is_zero():
        raise ValueError("zero ray direction")
    best: Fraction | None = None
    for seg in segments:
        e = seg.b - seg.a
        denom = direction.cross(e)
        w = seg.a - origin
        if denom != 0:
            t = w.cross(e) / denom
            u = w.cross(direction) / denom
            if t > 0 and 0 <= u <= 1 and (best is None or t < best):
                best = t
        else:
            # Parallel; collinear only if the offset is parallel too.
            if direction.cross(w) == 0:
                d2 = direction.dot(direction)
                for endpoint in (seg.a, seg.b):
                    t = direction.dot(endpoint - origin) / d2
                    if t > 0 and (best is None or t < best):
                        best = t
    return best


def interior_point(loop: PLLoop) -> RatPoint:
    """An exact interior point of a positively oriented simple loop.

    Shoots a ray from an edge midpoint along the inward (left) normal and
    returns the midpoint of the ray's first boundary-free stretch.
    """
    a, b = next(loop.edges())
    m = a + (b - a).scale(Fraction(1, 2))
    d = b - a
    normal = RatPoint(-d.y, d.x)  # left of the edge = interior side
    others = [Segment(p, q) for p, q in loop.edges() if (p, q) != (a, b)]
    t = ray_first_hit(m, normal, others)
    if t is None:
        raise InvariantFailure("inward ray escaped a closed loop")
    return m + normal.scale(t / 2)


def point_between_boundaries(outer: PLLoop, obstacles: Iterable[PLLoop]) -> RatPoint:
    """A point inside `outer` but outside every obstacle loop.

    Shoots inward from an edge midpoint of `outer`; the first stretch before
    any boundary (outer's own or an obstacle's) is inside outer and outside
    all obstacles, because no obstacle boundary has been crossed yet. Only
    valid when no obstacle boundary passes through the chosen midpoint; the
    caller guarantees obstacles are disjoint from outer's boundary.
    """
    a, b = next(outer.edges())
    m = a + (b - a).scale(Fraction(1, 2))
    d = b - a
    normal = RatPoint(-d.y, d.x)
    segs = [Segment(p, q) for p, q in outer.edges() if (p, q) != (a, b)]
    for ob in obstacles:
        segs.extend(ob.segments())
    t = ray_first_hit(m, normal, segs)
    if t is None:
        raise InvariantFailure("inward ray escaped a closed loop")
    return m + normal.scale(t / 2)


@dataclass(frozen=True)
class AffineMap:
    """Exact affine plane map x' = a x + b y + e, y' = c x + d y + f."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def apply(self, p: RatPoint) -> RatPoint:
        return RatPoint(self.a * p.x + self.b * p.y + self.e,
                        self.c * p.x + self.d * p.y + self.f)

    def apply_vector(self, v: RatPoint) -> RatPoint:
        """Linear part only; differences of points transform this way."""
        return RatPoint(self.a * v.x + self.b * v.y,
                        self.c * v.x + self.d * v.y)
