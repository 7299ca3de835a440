//! Planar primitives: points, angles, half-planes, convex polygons, hulls,
//! clipping and membership.

pub mod angle;
mod point;
mod polygon;

pub use angle::Angle;
pub use point::{direction_cmp, orient, Point};
pub use polygon::{clip, convex_hull, point_in_polygon, ConvexPolygon, HalfPlane};
