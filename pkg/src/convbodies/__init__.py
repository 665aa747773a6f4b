"""Exact predicates for convex position and order types of planar convex bodies."""
from .geom import (
    ALL,
    ConvexBody,
    Direction,
    GeometryError,
    LabeledHull,
    Line,
    Point,
    SharedBoundaryError,
    boundary_arc_components,
    common_tangent_directions,
    convex_hull,
    direction,
    hull_of_bodies,
    orient3,
    projection_interval,
    pt,
)
from .predicates import (
    OrientationSet,
    TangencyError,
    TransversalCertificate,
    check_assumptions,
    disconnects,
    has_transversal,
    is_disconnectable,
    is_disjoint,
    is_general_position,
    is_noncrossing,
    orientations,
)
from .position import (
    ConvexPositionCertificate,
    DichotomyOutcome,
    NoOutcome,
    SizeLimitError,
    bound_lemma1,
    bound_M,
    bound_pach_toth,
    canonical_order,
    dichotomy,
    exists_consistent_order,
    in_convex_position_direct,
    largest_convex_subfamily,
    orientation_transitivity_check,
    tangent_rotation_order,
)
from .ordertype import (
    Chirotope,
    RepresentationCertificate,
    chirotope,
    gp3_check,
    is_3_nondisconnectable,
    search_representation,
    verify_representation,
)
from .famgen import GenSpec, fixture, generate

__version__ = "0.1.0"
