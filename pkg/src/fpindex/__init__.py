"""fpindex: exact fixed-point indices of boundary correspondences.

The package computes the winding-number index of orientation-preserving,
fixed-point-free correspondences between polygonal Jordan curve boundaries,
represents transverse curve pairs as combinatorial torus diagrams, constructs
boundary maps realizing three prescribed point pairs with nonnegative index,
and checks the resulting incompatibility statement on finite packings of
topological rectangles.
"""
from .exact_geom import (
    Fraction,
    MeetKind,
    PLLoop,
    PointLocation,
    RatPoint,
    Segment,
    SegmentMeeting,
    orient2d,
    point_in_polygon,
    pt,
    rat,
    segment_intersection,
    signed_area,
    winding_number,
)
from .jordan import (
    PolyJordanCurve,
    canonical_noncut_pair,
    check_transverse,
    cuts_each_other,
    validate_curve,
)
from .packing import (
    ContactGraph,
    PackingSpec,
    TheoremCertificate,
    TopoRectangle,
    assemble_theorem_certificate,
    check_overlay_transverse,
    find_cutting_pair,
    isomorphic_contact,
    translate_packing,
    validate_packing,
)
from .plmap import PLCorrespondence, fixed_point_index, glue
from .prescribe import oracle_enumerate, prescribe
from .torus import build_diagram, index_from_torus, realize_path

__all__ = [
    "ContactGraph",
    "Fraction",
    "MeetKind",
    "PLCorrespondence",
    "PLLoop",
    "PackingSpec",
    "PointLocation",
    "PolyJordanCurve",
    "RatPoint",
    "Segment",
    "SegmentMeeting",
    "TheoremCertificate",
    "TopoRectangle",
    "assemble_theorem_certificate",
    "build_diagram",
    "canonical_noncut_pair",
    "check_overlay_transverse",
    "check_transverse",
    "cuts_each_other",
    "find_cutting_pair",
    "fixed_point_index",
    "glue",
    "index_from_torus",
    "isomorphic_contact",
    "oracle_enumerate",
    "orient2d",
    "point_in_polygon",
    "prescribe",
    "pt",
    "rat",
    "realize_path",
    "segment_intersection",
    "signed_area",
    "translate_packing",
    "validate_curve",
    "validate_packing",
    "winding_number",
]

__version__ = "0.1.0"
