//! Geometry of common supporting lines between two planar convex bodies and
//! the weak carousel rule: given bodies `A0, A1` inside a convex polygon `G`,
//! decide whether some body and some vertex of `G` together reach the hull of
//! `A0 ∪ A1`.

pub mod error;
pub mod kernel;
pub mod scalar;
pub mod bodies;
pub mod numeric;
pub mod tangency;
pub mod sectors;
pub mod carousel;
pub mod constructions;
