"""Shared seeded generators for geometry tests.

Everything here produces exact rational data from a `random.Random` instance,
so any failure reproduces from the seed alone.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from fpindex.errors import NotTransverse
from fpindex.exact_geom import PLLoop, RatPoint, pt
from fpindex.jordan import (
    CrossingSet,
    PolyJordanCurve,
    check_transverse,
    validate_curve,
)


def rational_direction(t: Fraction) -> RatPoint:
    """Unit-circle point via the tangent half-angle parametrization.

    As t runs over the rationals the angle runs monotonically over
    (-pi, pi), so sorted t values give counterclockwise-sorted directions.
    """
    den = 1 + t * t
    return RatPoint((1 - t * t) / den, 2 * t / den)


def random_fraction(rng: random.Random, lo: Fraction, hi: Fraction,
                    den: int = 64) -> Fraction:
    num = rng.randrange(int(lo * den), int(hi * den) + 1)
    return Fraction(num, den)


def star_polygon(rng: random.Random, n: int, center: RatPoint,
                 rmin: Fraction, rmax: Fraction) -> PLLoop:
    """A simple, positively oriented star-shaped polygon around `center`.

    One vertex per angular sector (stratified), so every angular gap stays
    below pi; that makes the radial polygon simple and keeps the center
    strictly inside regardless of the radii.
    """
    us = [(i + Fraction(rng.randrange(5, 96), 100)) / n for i in range(n)]
    ts = [Fraction(math.tan(math.pi * (float(u) - 0.5))).limit_denominator(10**6)
          for u in us]
    assert all(a < b for a, b in zip(ts, ts[1:]))
    vertices = []
    for t in ts:
        r = random_fraction(rng, rmin, rmax)
        d = rational_direction(t)
        vertices.append(center + d.scale(r))
    return PLLoop(tuple(vertices))


def square_curve(x0, y0, x1, y1) -> PolyJordanCurve:
    return validate_curve([pt(x0, y0), pt(x1, y0), pt(x1, y1), pt(x0, y1)])


def random_transverse_pair(
        rng: random.Random, nmin: int = 6, nmax: int = 12,
        min_crossings: int = 2, max_crossings: int | None = None,
        offset_range: int = 3,
) -> tuple[PolyJordanCurve, PolyJordanCurve, CrossingSet]:
    """Rejection-sample a transverse star-polygon pair with crossings.

    Tangent or overlapping draws are discarded, not nudged, so the returned
    pair is exactly transverse.
    """
    while True:
        a = star_polygon(rng, rng.randrange(nmin, nmax + 1), pt(0, 0), 2, 5)
        off = pt(Fraction(rng.randrange(-offset_range, offset_range + 1)),
                 Fraction(rng.randrange(-offset_range, offset_range + 1)))
        b = star_polygon(rng, rng.randrange(nmin, nmax + 1), off, 2, 5)
        try:
            first = validate_curve(a)
            second = validate_curve(b)
            crossings = check_transverse(first, second)
        except NotTransverse:
            continue
        if len(crossings) < min_crossings:
            continue
        if max_crossings is not None and len(crossings) > max_crossings:
            continue
        return first, second, crossings


def synthesize_constraints(crossings, phi, rng: random.Random, count: int = 3):
    """Distinct source parameters off the crossing grid, paired through phi."""
    banned_s = {c.param_k for c in crossings}
    banned_t = {c.param_kt for c in crossings}
    pairs = {}
    while len(pairs) < count:
        s = Fraction(rng.randrange(997), 997)
        t = phi.evaluate(s)
        if s in banned_s or t in banned_t or s in pairs:
            continue
        pairs[s] = t
    return sorted(pairs.items())


def turning_winding_oracle(points: list[RatPoint], p: RatPoint) -> int:
    """Independent winding oracle: accumulate exact-ish turning angles.

    Uses floats, which is fine for an oracle: the total is an integer
    multiple of 2*pi and the accumulated error stays far below pi.
    """
    total = 0.0
    n = len(points)
    prev = None
    for i in range(n + 1):
        q = points[i % n]
        ang = math.atan2(float(q.y - p.y), float(q.x - p.x))
        if prev is not None:
            d = ang - prev
            while d > math.pi:
                d -= 2 * math.pi
            while d < -math.pi:
                d += 2 * math.pi
            total += d
        prev = ang
    return round(total / (2 * math.pi))


def parity_ray_oracle(loop: PLLoop, p: RatPoint) -> bool:
    """Independent even-odd inclusion oracle (classic crossing parity)."""
    inside = False
    verts = loop.vertices
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y)
            if p.x < x_cross:
                inside = not inside
    return inside
