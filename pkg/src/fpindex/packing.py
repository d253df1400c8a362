"""Packings of a marked rectangle by tangent Jordan domains.

A packing is a frame (a simple closed polygon with four marked corner
vertices) holding finitely many interiorwise disjoint polygonal Jordan
domains.  Pieces touch each other at single mutual vertices, touch each frame
side at most once and never at a marked corner, and every complementary face
of the arrangement must be a topological triangle, which makes the contact
structure a triangulation of a square.

Two packings with the same contact structure whose frames overlay in the
interleaved position cannot be matched piece by piece without a cut.  The
index of a boundary map assembled over the whole frame telescopes into piece
terms plus interstice terms, the interstice maps can always be prescribed
with non-negative index, and the interleaved frames force a total of -1, so
some piece pair carries a negative index and therefore cuts.
`assemble_theorem_certificate` builds one such map family and checks the
telescoping identity exactly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadInterstice,
    CornerContact,
    DegenerateLoop,
    HasFixedPoint,
    HypothesesNotMet,
    InputRejection,
    InvariantFailure,
    NotOrientationPreserving,
    NotTransverse,
    NotTransverseOverlay,
    OrderViolation,
    PieceOutsideRect,
    PiecesOverlap,
    TheoremViolationSuspected,
)
from .exact_geom import (
    MeetKind,
    PLLoop,
    PointLocation,
    RatPoint,
    cmp_directions_ccw,
    interior_point,
    point_in_polygon,
    point_on_segment,
    segment_intersection,
    signed_area,
)
from .jordan import PolyJordanCurve, check_transverse, cuts_each_other
from .plmap import PLCorrespondence, fixed_point_index
from .prescribe import prescribe
from .torus import build_diagram, realize_path

SIDES = ("a", "b", "c", "d")

# a label is a piece index or a frame side name
Label = "int | str"


def _label_key(label) -> tuple[int, object]:
    return (0, label) if isinstance(label, str) else (1, label)


# -- domain types ---------------------------------------------------------------


@dataclass(frozen=True)
class TopoRectangle:
    """Frame curve with four marked corner vertices in counterclockwise order.

    Side k runs from corner k to corner k+1; sides are named a, b, c, d.
    """

    curve: PolyJordanCurve
    corners: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        n = len(self.curve)
        if len(self.corners) != 4 or len(set(self.corners)) != 4:
            raise InputRejection("exactly four distinct corner indices required")
        if any(not isinstance(c, int) or not 0 <= c < n for c in self.corners):
            raise InputRejection("corner index out of range")
        wraps = sum(1 for k in range(4)
                    if self.corners[(k + 1) % 4] <= self.corners[k])
        if wraps != 1:
            raise InputRejection("corner indices must be listed in cyclic order")

    @property
    def corner_points(self) -> tuple[RatPoint, ...]:
        return tuple(self.curve.vertices[c] for c in self.corners)

    @property
    def corner_params(self) -> tuple[Fraction, ...]:
        n = len(self.curve)
        return tuple(Fraction(c, n) for c in self.corners)

    def side_of_vertex(self, index: int) -> int:
        """Side whose half-open vertex range [corner k, corner k+1) holds the
        given frame vertex index."""
        n = len(self.curve)
        for k in range(4):
            span = (self.corners[(k + 1) % 4] - self.corners[k]) % n
            if (index - self.corners[k]) % n < span:
                return k
        raise InvariantFailure("frame vertex escaped every side range")


@dataclass(frozen=True)
class PackingSpec:
    """A frame and the pieces packed inside it."""

    rect: TopoRectangle
    pieces: tuple[PolyJordanCurve, ...]


@dataclass(frozen=True)
class ContactGraph:
    """Tangency structure: frame sides a-d plus one vertex per piece."""

    piece_count: int
    edges: frozenset
    triangles: frozenset

    def sorted_edges(self) -> tuple[tuple, ...]:
        pairs = [tuple(sorted(e, key=_label_key)) for e in self.edges]
        return tuple(sorted(pairs, key=lambda p: tuple(map(_label_key, p))))

    def sorted_triangles(self) -> tuple[tuple, ...]:
        trips = [tuple(sorted(t, key=_label_key)) for t in self.triangles]
        return tuple(sorted(trips, key=lambda p: tuple(map(_label_key, p))))


@dataclass(frozen=True)
class OverlayReport:
    """Per-pair transverse crossing counts for two overlaid packings."""

    entries: tuple[tuple[str, str, int], ...]

    @property
    def total_crossings(self) -> int:
        return sum(count for _, _, count in self.entries)


@dataclass(frozen=True)
class TheoremCertificate:
    """Verified index bookkeeping for a matched pair of packings.

    The identity rect_index == sum(piece_indices) + sum(interstice_indices)
    is asserted exactly during assembly, every interstice index is
    non-negative by construction, and a negative piece index certifies the
    cutting pair.
    """

    rect_index: int
    piece_indices: tuple[int, ...]
    interstice_indices: tuple[int, ...]
    interstice_triples: tuple[tuple, ...]
    cutting_index: "int | None"
    degenerate: bool = False

    @property
    def piece_sum(self) -> int:
        return sum(self.piece_indices)

    @property
    def interstice_sum(self) -> int:
        return sum(self.interstice_indices)


# -- contact extraction ---------------------------------------------------------


def _pair_meeting(first: PolyJordanCurve, second: PolyJordanCurve,
                  ) -> tuple[list[RatPoint], set[RatPoint], bool]:
    """How two boundaries meet: proper crossings, isolated touch points, and
    whether they share a positive-length stretch."""
    proper: list[RatPoint] = []
    touches: set[RatPoint] = set()
    overlap = False
    for s in first.loop.segments():
        for t in second.loop.segments():
            meet = segment_intersection(s, t)
            if meet.kind is MeetKind.EMPTY:
                continue
            if meet.kind is MeetKind.PROPER:
                proper.append(meet.point)
                continue
            shared = {p for p in (s.a, s.b) if point_on_segment(t, p)}
            shared.update(q for q in (t.a, t.b) if point_on_segment(s, q))
            if not shared:
                raise InvariantFailure("degenerate meeting with no endpoint")
            if len(shared) > 1:
                overlap = True  # two shared points on one segment pair
            else:
                touches.update(shared)
    return proper, touches, overlap


def _scan_contacts(spec: PackingSpec) -> dict[RatPoint, set]:
    """All tangency points with the labels meeting there, after checking the
    packing contact rules pair by pair."""
    rect = spec.rect
    rect_vertex = {p: i for i, p in enumerate(rect.curve.vertices)}
    corner_points = set(rect.corner_points)
    piece_vertices = [set(piece.vertices) for piece in spec.pieces]

    by_point: dict[RatPoint, set] = {}
    used_sides: set[tuple[int, int]] = set()
    for i, piece in enumerate(spec.pieces):
        proper, touches, overlap = _pair_meeting(rect.curve, piece)
        if proper:
            raise PieceOutsideRect(f"piece {i} crosses the frame boundary")
        if overlap:
            raise PieceOutsideRect(f"piece {i} runs along the frame boundary")
        for p in touches:
            if p not in rect_vertex or p not in piece_vertices[i]:
                raise PieceOutsideRect(
                    f"piece {i} touches the frame off a mutual vertex")
            if p in corner_points:
                raise CornerContact(
                    f"piece {i} touches the frame at a marked corner")
            side = rect.side_of_vertex(rect_vertex[p])
            if (i, side) in used_sides:
                raise PieceOutsideRect(
                    f"piece {i} touches side {SIDES[side]} more than once")
            used_sides.add((i, side))
            by_point.setdefault(p, set()).update({i, SIDES[side]})

    for i in range(len(spec.pieces)):
        for j in range(i + 1, len(spec.pieces)):
            proper, touches, overlap = _pair_meeting(
                spec.pieces[i], spec.pieces[j])
            if proper or overlap:
                raise PiecesOverlap(f"pieces {i} and {j} have boundaries that "
                                    "cross or run together")
            if len(touches) > 1:
                raise PiecesOverlap(
                    f"pieces {i} and {j} meet at more than one point")
            for p in touches:
                if p not in piece_vertices[i] or p not in piece_vertices[j]:
                    raise PiecesOverlap(
                        f"pieces {i} and {j} touch off a mutual vertex")
                by_point.setdefault(p, set()).update({i, j})

    # boundary relations being settled, containment reduces to point tests
    for i, piece in enumerate(spec.pieces):
        if any(point_in_polygon(rect.curve.loop, v) is PointLocation.OUTSIDE
               for v in piece.vertices):
            raise PieceOutsideRect(f"piece {i} leaves the frame")
    for i in range(len(spec.pieces)):
        sample = interior_point(spec.pieces[i].loop)
        for j in range(len(spec.pieces)):
            if i != j and point_in_polygon(
                    spec.pieces[j].loop, sample) is PointLocation.INSIDE:
                raise PiecesOverlap(f"piece {i} reaches inside piece {j}")
    return by_point


# -- arrangement of the packed boundaries ----------------------------------------


@dataclass(frozen=True)
class _Node:
    nid: int
    point: RatPoint
    objects: frozenset
    is_corner: bool


@dataclass(frozen=True)
class _Arc:
    aid: int
    host: object  # piece index, or a side name for frame arcs
    tail: int
    head: int
    polyline: tuple[RatPoint, ...]


@dataclass(frozen=True)
class _Face:
    fid: int
    cycle: tuple[tuple[int, bool], ...]  # (arc id, traversed forward)
    node_ids: tuple[int, ...]
    polygon: PLLoop
    area: Fraction
    kind: str  # "interior", "outer", or "interstice"
    piece: "int | None"
    objects: "frozenset | None"


@dataclass
class _Half:
    hid: int
    aid: int
    forward: bool
    tail: int
    head: int
    polyline: tuple[RatPoint, ...]
    twin: int = -1

    @property
    def out_dir(self) -> RatPoint:
        return self.polyline[1] - self.polyline[0]


def _ray_refinement(polyline: Sequence[RatPoint], d: RatPoint) -> Fraction:
    """Angular tie-break for arcs leaving a node along the same ray: positive
    for a left bend, negative for a right bend, larger magnitude the earlier
    the bend comes."""
    base = polyline[0]
    for k in range(len(polyline) - 1):
        step = polyline[k + 1] - polyline[k]
        turn = d.cross(step)
        if turn != 0:
            along = (polyline[k] - base).dot(d)
            if along <= 0:
                raise InvariantFailure("arc bends before leaving its node")
            return Fraction(1 if turn > 0 else -1) / along
        if step.dot(d) <= 0:
            raise InvariantFailure("arc doubles back through a contact point")
    return Fraction(0)


def _half_cmp(h1: _Half, h2: _Half) -> int:
    order = cmp_directions_ccw(h1.out_dir, h2.out_dir)
    if order != 0:
        return order
    d = h1.out_dir
    k1 = _ray_refinement(h1.polyline, d)
    k2 = _ray_refinement(h2.polyline, d)
    if k1 == k2:
        raise InvariantFailure("indistinguishable arcs at a contact point")
    return -1 if k1 < k2 else 1


def _split_curve(curve: PolyJordanCurve, stops: list[tuple[int, int]],
                 ) -> list[tuple[int, int, tuple[RatPoint, ...]]]:
    """(tail node, head node, polyline) runs of a curve split at the given
    (vertex index, node id) stops, in positive cyclic order."""
    n = len(curve)
    stops = sorted(stops)
    runs = []
    for k, (vi, tail) in enumerate(stops):
        vj, head = stops[(k + 1) % len(stops)]
        count = (vj - vi) % n
        if count == 0:
            count = n  # a single stop keeps the whole loop
        pts = tuple(curve.vertices[(vi + t) % n] for t in range(count + 1))
        runs.append((tail, head, pts))
    return runs


@dataclass
class _Analysis:
    spec: PackingSpec
    nodes: tuple[_Node, ...]
    arcs: tuple[_Arc, ...]
    faces: tuple[_Face, ...]
    face_of: dict
    node_by_objects: dict
    interstices: tuple[int, ...]
    graph: ContactGraph


def _analyze(spec: PackingSpec) -> _Analysis:
    contacts = _scan_contacts(spec)
    rect = spec.rect

    for i in range(len(spec.pieces)):
        if not any(i in objs for objs in contacts.values()):
            raise BadInterstice(f"piece {i} touches nothing")

    node_specs = [(p, frozenset(objs), False) for p, objs in contacts.items()]
    for k in range(4):
        node_specs.append((rect.corner_points[k],
                           frozenset({SIDES[k - 1], SIDES[k]}), True))
    node_specs.sort(key=lambda s: (s[0].x, s[0].y))
    nodes = tuple(_Node(nid, p, objs, corner)
                  for nid, (p, objs, corner) in enumerate(node_specs))
    node_by_objects = {nd.objects: nd.nid for nd in nodes}
    if len(node_by_objects) != len(nodes):
        raise InvariantFailure("two contact points share an object set")

    rect_vertex = {p: i for i, p in enumerate(rect.curve.vertices)}
    arcs: list[_Arc] = []
    rect_stops = [(rect_vertex[nd.point], nd.nid) for nd in nodes
                  if nd.is_corner or any(isinstance(o, str) for o in nd.objects)]
    for tail, head, pts in _split_curve(rect.curve, rect_stops):
        side = rect.side_of_vertex(rect_vertex[pts[0]])
        arcs.append(_Arc(len(arcs), SIDES[side], tail, head, pts))
    for i, piece in enumerate(spec.pieces):
        piece_vertex = {p: t for t, p in enumerate(piece.vertices)}
        stops = [(piece_vertex[nd.point], nd.nid) for nd in nodes
                 if i in nd.objects]
        for tail, head, pts in _split_curve(piece, stops):
            arcs.append(_Arc(len(arcs), i, tail, head, pts))

    halves: list[_Half] = []
    for arc in arcs:
        fwd = _Half(len(halves), arc.aid, True, arc.tail, arc.head,
                    arc.polyline)
        halves.append(fwd)
        bwd = _Half(len(halves), arc.aid, False, arc.head, arc.tail,
                    tuple(reversed(arc.polyline)))
        halves.append(bwd)
        fwd.twin, bwd.twin = bwd.hid, fwd.hid

    outgoing: dict[int, list[_Half]] = {}
    for h in halves:
        outgoing.setdefault(h.tail, []).append(h)
    position: dict[int, int] = {}
    order = functools.cmp_to_key(_half_cmp)
    for outs in outgoing.values():
        outs.sort(key=order)
        for pos, h in enumerate(outs):
            position[h.hid] = pos

    # Left-face tracing: continue with the clockwise successor of the twin.
    def next_half(h: _Half) -> _Half:
        outs = outgoing[h.head]
        return outs[(position[h.twin] - 1) % len(outs)]

    seen: set[int] = set()
    faces: list[_Face] = []
    face_of: dict = {}
    interstices: list[int] = []
    piece_face: dict[int, int] = {}
    outer_count = 0
    for h0 in halves:
        if h0.hid in seen:
            continue
        cycle, h = [], h0
        while True:
            cycle.append(h)
            seen.add(h.hid)
            h = next_half(h)
            if h.hid == h0.hid:
                break
        pts: list[RatPoint] = []
        for he in cycle:
            for q in he.polyline[:-1]:
                if not pts or pts[-1] != q:
                    pts.append(q)
        if pts and pts[0] == pts[-1]:
            pts.pop()
        polygon = PLLoop(tuple(pts))
        area = signed_area(polygon)
        if area == 0:
            raise InvariantFailure("flat arrangement face")
        fid = len(faces)
        hosts = {arcs[he.aid].host for he in cycle}
        if area < 0:
            kind, piece, objects = "outer", None, None
            outer_count += 1
        elif (all(he.forward for he in cycle) and len(hosts) == 1
              and isinstance(next(iter(hosts)), int)):
            piece = next(iter(hosts))
            kind, objects = "interior", None
            piece_face[piece] = fid
        else:
            kind, piece, objects = "interstice", None, frozenset(hosts)
            interstices.append(fid)
        for he in cycle:
            face_of[(he.aid, he.forward)] = fid
        faces.append(_Face(fid, tuple((he.aid, he.forward) for he in cycle),
                           tuple(he.tail for he in cycle), polygon, area,
                           kind, piece, objects))

    if outer_count != 1 or len(nodes) - len(arcs) + len(faces) != 2:
        raise BadInterstice("tangency structure is disconnected or has holes")
    for i in range(len(spec.pieces)):
        if i not in piece_face:
            raise InvariantFailure(f"piece {i} lost its interior face")
    for fid in interstices:
        face = faces[fid]
        if len(face.node_ids) != 3 or len(set(face.node_ids)) != 3:
            raise BadInterstice(
                f"complementary face with {len(face.node_ids)} corners, "
                "want a triangle")
        if len(face.objects) != 3:
            raise InvariantFailure("interstice repeats a boundary object")
        for aid, forward in face.cycle:
            if isinstance(arcs[aid].host, int) and forward:
                raise InvariantFailure("interstice walk entered a piece")
            if isinstance(arcs[aid].host, str) and not forward:
                raise InvariantFailure("interstice walk left the frame")

    edges = {frozenset({SIDES[k], SIDES[(k + 1) % 4]}) for k in range(4)}
    for nd in nodes:
        if not nd.is_corner:
            labels = sorted(nd.objects, key=_label_key)
            edges.update(frozenset({u, v}) for x, u in enumerate(labels)
                         for v in labels[x + 1:])
    triples = [faces[fid].objects for fid in interstices]
    triangles = frozenset(triples)
    if len(triangles) != len(triples):
        raise InvariantFailure("two complementary faces share a side triple")
    for tri in triangles:
        labels = sorted(tri, key=_label_key)
        for x, u in enumerate(labels):
            for v in labels[x + 1:]:
                if frozenset({u, v}) not in edges:
                    raise InvariantFailure("triangle side without a contact")
    vertex_count = len(spec.pieces) + 4
    if (vertex_count - len(edges) + len(triangles) + 1 != 2
            or 3 * len(triangles) != 2 * len(edges) - 4):
        raise BadInterstice(
            "contact structure is not a triangulation of a square")

    return _Analysis(spec=spec, nodes=nodes, arcs=tuple(arcs),
                     faces=tuple(faces), face_of=face_of,
                     node_by_objects=node_by_objects,
                     interstices=tuple(interstices),
                     graph=ContactGraph(len(spec.pieces), frozenset(edges),
                                        triangles))


def validate_packing(spec: PackingSpec) -> tuple[PackingSpec, ContactGraph]:
    """Check every packing rule and return the input with its contact graph."""
    return spec, _analyze(spec).graph


# -- overlays of two packings ----------------------------------------------------


def _curve_table(spec: PackingSpec) -> tuple[tuple[str, PolyJordanCurve], ...]:
    return (("rect", spec.rect.curve),
            *((f"piece{i}", piece) for i, piece in enumerate(spec.pieces)))


def _overlay_report(first: _Analysis, second: _Analysis) -> OverlayReport:
    table_a = _curve_table(first.spec)
    table_b = _curve_table(second.spec)
    entries = []
    crossing_points: list[tuple[int, int, RatPoint]] = []
    for ia, (label_a, curve_a) in enumerate(table_a):
        for ib, (label_b, curve_b) in enumerate(table_b):
            try:
                crossings = check_transverse(curve_a, curve_b)
            except NotTransverse as exc:
                raise NotTransverseOverlay(
                    f"{label_a} against {label_b}: {exc}") from exc
            entries.append((label_a, label_b, len(crossings)))
            crossing_points.extend((ia, ib, c.point) for c in crossings)
    for ia, ib, p in crossing_points:
        for x, (label, curve) in enumerate(table_a):
            if x != ia and point_in_polygon(
                    curve.loop, p) is PointLocation.ON_BOUNDARY:
                raise NotTransverseOverlay(
                    f"a crossing point lies on {label} as well")
        for x, (label, curve) in enumerate(table_b):
            if x != ib and point_in_polygon(
                    curve.loop, p) is PointLocation.ON_BOUNDARY:
                raise NotTransverseOverlay(
                    f"a crossing point lies on {label} as well")
    for analysis, table in ((first, table_b), (second, table_a)):
        for nd in analysis.nodes:
            for label, curve in table:
                if point_in_polygon(
                        curve.loop, nd.point) is PointLocation.ON_BOUNDARY:
                    raise NotTransverseOverlay(
                        f"a contact point of one packing lies on {label} "
                        "of the other")
    return OverlayReport(tuple(entries))


def check_overlay_transverse(first: PackingSpec, second: PackingSpec,
                             ) -> OverlayReport:
    """Require every boundary of one packing to meet every boundary of the
    other transversally, with no coincidences at contact points."""
    return _overlay_report(_analyze(first), _analyze(second))


def isomorphic_contact(first: ContactGraph, second: ContactGraph,
                       correspondence: Sequence[int]) -> bool:
    """Do the graphs match vertex for vertex under the piece correspondence,
    with the frame sides held fixed?"""
    n = first.piece_count
    if sorted(correspondence) != list(range(n)):
        raise InputRejection("correspondence must be a bijection on pieces")
    if second.piece_count != n:
        return False

    def relabel(group: frozenset) -> frozenset:
        return frozenset(correspondence[lab] if isinstance(lab, int) else lab
                         for lab in group)

    return (frozenset(map(relabel, first.edges)) == second.edges
            and frozenset(map(relabel, first.triangles)) == second.triangles)


# -- theorem kernel ---------------------------------------------------------------


def _frame_corner_index(first: PackingSpec, second: PackingSpec) -> int:
    """Index of the straight four-breakpoint map taking marked corners of one
    frame to the marked corners of the other."""
    pairs = sorted(zip(first.rect.corner_params, second.rect.corner_params))
    try:
        corner_map = PLCorrespondence(tuple(pairs))
        return fixed_point_index(first.rect.curve, second.rect.curve,
                                 corner_map)
    except (NotOrientationPreserving, HasFixedPoint, DegenerateLoop) as exc:
        raise HypothesesNotMet(f"frame corner map rejected: {exc}") from exc


def _checked_analyses(first: PackingSpec, second: PackingSpec,
                      correspondence: Sequence[int],
                      ) -> tuple[_Analysis, _Analysis]:
    try:
        first_a, second_a = _analyze(first), _analyze(second)
        _overlay_report(first_a, second_a)
    except HypothesesNotMet:
        raise
    except InputRejection as exc:
        raise HypothesesNotMet(f"{type(exc).__name__}: {exc}") from exc
    if not isomorphic_contact(first_a.graph, second_a.graph, correspondence):
        raise HypothesesNotMet(
            "contact structures do not match under the correspondence")
    frame_index = _frame_corner_index(first, second)
    if frame_index != -1:
        raise HypothesesNotMet(
            f"frames are not interleaved: corner map index {frame_index}")
    return first_a, second_a


def find_cutting_pair(first: PackingSpec, second: PackingSpec,
                      correspondence: Sequence[int]) -> int:
    """Index i of a pair (piece i, matched piece) that cut each other.

    Hypotheses are enforced first: both packings valid, the overlay
    transverse, contact structures matching, frames interleaved.
    """
    _checked_analyses(first, second, correspondence)
    for i, piece in enumerate(first.pieces):
        if cuts_each_other(piece, second.pieces[correspondence[i]]):
            return i
    raise TheoremViolationSuspected(
        "hypotheses hold yet no corresponding pair cuts")


@dataclass(frozen=True)
class _InterMap:
    source: PolyJordanCurve
    target: PolyJordanCurve
    phi: PLCorrespondence
    index: int
    refined: tuple[Fraction, ...]


def _refined_sources(phi: PLCorrespondence, source: PolyJordanCurve,
                     target: PolyJordanCurve) -> tuple[Fraction, ...]:
    """Source parameters where the point map can bend: breakpoints, source
    vertices, preimages of target vertices.  Restricting through this set
    reproduces the map exactly."""
    params = {s for s, _ in phi.breakpoints}
    params.update(Fraction(i, len(source)) for i in range(len(source)))
    inverse = phi.invert()
    params.update(inverse.evaluate(Fraction(j, len(target)))
                  for j in range(len(target)))
    return tuple(sorted(params))


def _arc_pairs(inter: _InterMap, host: PolyJordanCurve,
               mate: PolyJordanCurve, tail_pt: RatPoint, head_pt: RatPoint,
               piece_side: bool) -> list[tuple[Fraction, Fraction]]:
    """The interstice map restricted to one host arc, rewritten in host and
    mate parameters and ordered along the host's positive direction.

    Interstice boundaries traverse piece arcs backward, so those restrictions
    come out reversed and are flipped at the end.
    """
    start_pt, end_pt = (head_pt, tail_pt) if piece_side else (tail_pt, head_pt)
    s_start = inter.source.locate_param(start_pt)
    s_end = inter.source.locate_param(end_pt)
    if s_start is None or s_end is None:
        raise InvariantFailure("arc endpoint missing from an interstice")
    span = (s_end - s_start) % 1
    inside = [q for q in inter.refined if 0 < (q - s_start) % 1 < span]
    inside.sort(key=lambda q: (q - s_start) % 1)
    pairs = []
    for q in (s_start, *inside, s_end):
        sigma = host.locate_param(inter.source.point_at(q))
        tau = mate.locate_param(inter.target.point_at(inter.phi.evaluate(q)))
        if sigma is None or tau is None:
            raise InvariantFailure("restricted map leaves the mated boundaries")
        pairs.append((sigma, tau))
    if piece_side:
        pairs.reverse()
    return pairs


def _host_map(arc_runs: list[list[tuple[Fraction, Fraction]]],
              ) -> PLCorrespondence:
    """Concatenate per-arc restrictions into one boundary correspondence."""
    chain: list[tuple[Fraction, Fraction]] = []
    for run in sorted(arc_runs, key=lambda r: r[0][0]):
        if not chain:
            chain.extend(run)
            continue
        if chain[-1] != run[0]:
            raise InvariantFailure(
                "interstice maps disagree at a contact point")
        chain.extend(run[1:])
    if chain[0] != chain[-1]:
        raise InvariantFailure("assembled boundary map does not close up")
    chain.pop()
    base = min(range(len(chain)), key=lambda k: chain[k][0])
    return PLCorrespondence(tuple(chain[base:] + chain[:base]))


def assemble_theorem_certificate(first: PackingSpec, second: PackingSpec,
                                 correspondence: Sequence[int],
                                 ) -> TheoremCertificate:
    """Build a compatible family of boundary maps and check the bookkeeping.

    One map per interstice pair is prescribed through its three corners; the
    piece and frame maps are restrictions of those, so the identity
    frame index == piece indices + interstice indices holds exactly and is
    asserted.  With no pieces at all there is nothing to assemble and the
    certificate reports the bare frame corner-map index as a diagnostic.
    """
    if not first.pieces and not second.pieces:
        return TheoremCertificate(
            rect_index=_frame_corner_index(first, second),
            piece_indices=(), interstice_indices=(), interstice_triples=(),
            cutting_index=None, degenerate=True)
    first_a, second_a = _checked_analyses(first, second, correspondence)

    def relabel(group: frozenset) -> frozenset:
        return frozenset(correspondence[lab] if isinstance(lab, int) else lab
                         for lab in group)

    mate_face = {second_a.faces[fid].objects: fid
                 for fid in second_a.interstices}
    inter_maps: dict[int, _InterMap] = {}
    inter_indices: list[int] = []
    triples: list[tuple] = []
    for fid in first_a.interstices:
        face = first_a.faces[fid]
        mate = second_a.faces[mate_face[relabel(face.objects)]]
        source = PolyJordanCurve(face.polygon)
        target = PolyJordanCurve(mate.polygon)
        corner_pairs = []
        for nid in face.node_ids:
            node = first_a.nodes[nid]
            mate_nid = second_a.node_by_objects.get(relabel(node.objects))
            if mate_nid is None:
                raise HypothesesNotMet("contact points do not correspond")
            corner_pairs.append(
                (source.locate_param(node.point),
                 target.locate_param(second_a.nodes[mate_nid].point)))
        try:
            crossings = check_transverse(source, target)
        except NotTransverse as exc:
            raise InvariantFailure(
                "interstice boundaries failed transversality after the "
                f"overlay checks: {exc}") from exc
        try:
            diagram = build_diagram(source, target, crossings, corner_pairs)
        except OrderViolation as exc:
            raise HypothesesNotMet(
                f"corner correspondence reverses orientation: {exc}") from exc
        path, trace = prescribe(diagram)
        phi = realize_path(diagram, path)
        eta = fixed_point_index(source, target, phi)
        if eta != trace.index:
            raise InvariantFailure("prescribed and realized indices disagree")
        if eta < 0:
            raise InvariantFailure("prescription returned a negative index")
        inter_maps[fid] = _InterMap(source, target, phi, eta,
                                    _refined_sources(phi, source, target))
        inter_indices.append(eta)
        triples.append(tuple(sorted(face.objects, key=_label_key)))

    def restriction(arc: _Arc, host: PolyJordanCurve, mate: PolyJordanCurve,
                    piece_side: bool) -> list[tuple[Fraction, Fraction]]:
        inter = inter_maps[first_a.face_of[(arc.aid, not piece_side)]]
        return _arc_pairs(inter, host, mate,
                          first_a.nodes[arc.tail].point,
                          first_a.nodes[arc.head].point, piece_side)

    piece_indices: list[int] = []
    for i, piece in enumerate(first.pieces):
        mate = second.pieces[correspondence[i]]
        runs = [restriction(arc, piece, mate, True)
                for arc in first_a.arcs if arc.host == i]
        piece_indices.append(
            fixed_point_index(piece, mate, _host_map(runs)))
    runs = [restriction(arc, first.rect.curve, second.rect.curve, False)
            for arc in first_a.arcs if isinstance(arc.host, str)]
    rect_index = fixed_point_index(first.rect.curve, second.rect.curve,
                                   _host_map(runs))

    if rect_index != sum(piece_indices) + sum(inter_indices):
        raise InvariantFailure("index additivity failed on the assembled maps")
    cutting = next((i for i, eta in enumerate(piece_indices) if eta < 0), None)
    if cutting is None:
        raise TheoremViolationSuspected(
            f"no piece map carries a negative index (frame {rect_index})")
    if not cuts_each_other(first.pieces[cutting],
                           second.pieces[correspondence[cutting]]):
        raise InvariantFailure("negative-index pair fails the cut test")
    return TheoremCertificate(
        rect_index=rect_index,
        piece_indices=tuple(piece_indices),
        interstice_indices=tuple(inter_indices),
        interstice_triples=tuple(triples),
        cutting_index=cutting)


def translate_packing(spec: PackingSpec, shift: RatPoint) -> PackingSpec:
    """The same packing moved rigidly by a vector."""
    return PackingSpec(
        rect=TopoRectangle(
            PolyJordanCurve(spec.rect.curve.loop.translated(shift)),
            spec.rect.corners),
        pieces=tuple(PolyJordanCurve(piece.loop.translated(shift))
                     for piece in spec.pieces))
