//! Exact scalars, geometric predicates and constructions.

pub mod algebraic;
pub mod convex;
pub mod geom;
pub mod scalar;

pub use algebraic::{AlgebraicScalar, QuadExt};
pub use convex::{clip_halfline_to_convex, convex_intersection, CellLocation, ConvexCell, EdgeTag, HalfLineClip};
pub use geom::{
    cross3, intersect_lines, orient_sign, orientation, reflect_point, segment_contact, signed_area, HalfLine, Line,
    LineIntersection, Orientation, Point, Segment, SegmentContact, Vector,
};
pub use scalar::Scalar;
