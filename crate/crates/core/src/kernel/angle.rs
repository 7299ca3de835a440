use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Point;

/// Reduces an angle into `[0, 2π)`.
pub fn reduce(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A direction on the unit circle, stored in radians in `[0, 2π)` using the
/// standard counterclockwise convention.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Self {
        Self(reduce(theta))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn unit(self) -> Point<f64> {
        Point::unit(self.0)
    }

    /// Counterclockwise rotation by `delta` radians.
    pub fn rotated(self, delta: f64) -> Self {
        Self::new(self.0 + delta)
    }

    /// Length of the counterclockwise arc from `self` to `to`, in `[0, 2π)`.
    pub fn ccw_gap(self, to: Angle) -> f64 {
        reduce(to.0 - self.0)
    }

    /// Length of the clockwise arc from `self` to `to`, in `[0, 2π)`.
    pub fn cw_gap(self, to: Angle) -> f64 {
        reduce(self.0 - to.0)
    }

    /// Shortest circular distance, in `[0, π]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = self.ccw_gap(other);
        d.min(TAU - d)
    }

    pub fn approx_eq(self, other: Angle, eps_angle: f64) -> bool {
        self.distance(other) <= eps_angle
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
