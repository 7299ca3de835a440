use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{Scalar, Tolerance};

/// A point (or free vector) of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(S::zero(), S::zero())
    }

    pub fn from_f64(p: &Point<f64>) -> Self {
        Self::new(S::from_f64(p.x), S::from_f64(p.y))
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// Rotation by +90° (counterclockwise).
    pub fn perp(&self) -> Self {
        Self::new(-self.y.clone(), self.x.clone())
    }

    pub fn norm_f64(&self) -> f64 {
        let p = self.to_f64();
        p.x.hypot(p.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x == S::zero() && self.y == S::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Equality up to `tol.eps` in float mode, exact otherwise.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        if S::is_exact() {
            self == other
        } else {
            (self - other).norm_f64() <= tol.eps
        }
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.x
            .partial_cmp(&other.x)
            .unwrap_or(Ordering::Equal)
            .then_with(|| self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal))
    }
}

impl Point<f64> {
    pub fn unit(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(&self, other: &Self, t: f64) -> Self {
        Self::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    /// Angle of the vector in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        super::angle::reduce(self.y.atan2(self.x))
    }
}

impl<S: Scalar> Sub for &Point<S> {
    type Output = Point<S>;
    fn sub(self, rhs: Self) -> Point<S> {
        Point::new(self.x.clone() - rhs.x.clone(), self.y.clone() - rhs.y.clone())
    }
}

impl<S: Scalar> Add for &Point<S> {
    type Output = Point<S>;
    fn add(self, rhs: Self) -> Point<S> {
        Point::new(self.x.clone() + rhs.x.clone(), self.y.clone() + rhs.y.clone())
    }
}

impl<S: Scalar> Sub for Point<S> {
    type Output = Point<S>;
    fn sub(self, rhs: Self) -> Point<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Add for Point<S> {
    type Output = Point<S>;
    fn add(self, rhs: Self) -> Point<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Neg for Point<S> {
    type Output = Point<S>;
    fn neg(self) -> Point<S> {
        Point::new(-self.x, -self.y)
    }
}

/// Orientation of the triple `(a, b, c)`: `Greater` for a left (counterclockwise)
/// turn, `Less` for a right turn, `Equal` when `c` lies within `tol.eps` of the
/// line through `a` and `b` (exactly on it in exact mode).
pub fn orient<S: Scalar>(a: &Point<S>, b: &Point<S>, c: &Point<S>, tol: &Tolerance) -> Ordering {
    let ab = b - a;
    let ac = c - a;
    let cross = ab.cross(&ac);
    if S::is_exact() {
        return cross.sign_within(0.0);
    }
    let scale = ab.norm_f64().max(ac.norm_f64());
    cross.sign_within(tol.eps * scale)
}

/// Compares directions by polar angle in `[0, 2π)`, exactly.
pub fn direction_cmp<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Ordering {
    fn upper<S: Scalar>(d: &Point<S>) -> bool {
        d.y > S::zero() || (d.y == S::zero() && d.x > S::zero())
    }
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = a.cross(b);
            if c > S::zero() {
                Ordering::Less
            } else if c < S::zero() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    #[test]
    fn orientation_signs() {
        let t = Tolerance::default();
        assert_eq!(orient(&p(0., 0.), &p(1., 0.), &p(0., 1.), &t), Ordering::Greater);
        assert_eq!(orient(&p(0., 0.), &p(1., 0.), &p(0., -1.), &t), Ordering::Less);
        assert_eq!(orient(&p(0., 0.), &p(1., 0.), &p(5., 1e-12), &t), Ordering::Equal);
    }

    #[test]
    fn exact_orientation_sees_tiny_offsets() {
        let t = Tolerance::default();
        let q = |x: i64, y: i64| Point::new(Rational::from_i64(x), Rational::from_i64(y));
        let tiny = Point::new(Rational::from_i64(5), Rational::from_f64(1e-12));
        assert_eq!(orient(&q(0, 0), &q(1, 0), &tiny, &t), Ordering::Greater);
    }

    #[test]
    fn direction_order_is_polar() {
        let dirs = [p(1., 0.), p(1., 1.), p(-1., 1.), p(-1., 0.), p(-1., -1.), p(0., -1.)];
        for w in dirs.windows(2) {
            assert_eq!(direction_cmp(&w[0], &w[1]), Ordering::Less);
        }
        assert_eq!(direction_cmp(&p(2., 0.), &p(1., 0.)), Ordering::Equal);
    }
}
