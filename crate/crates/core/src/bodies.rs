//! Compact convex bodies queried through their support function.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::kernel::{convex_hull, point_in_polygon, Angle, ConvexPolygon, HalfPlane, Point};
use crate::numeric::golden_min;
use crate::scalar::{Scalar, Tolerance};

/// Samples per full turn when containment involves a smooth outer body.
pub const CONTAINMENT_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactKind {
    Vertex,
    EdgeInterior,
    Smooth,
}

/// `value = max over the body of x · d` and a point attaining it.
///
/// For a non-unit `d` the value scales with `|d|`; angle-based entry points
/// always pass unit vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportEvaluation<S> {
    pub value: S,
    pub contact: Point<S>,
    pub kind: ContactKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody<S> {
    Polygon(ConvexPolygon<S>),
    Disk {
        center: Point<S>,
        radius: S,
    },
    Ellipse {
        center: Point<S>,
        semi_major: S,
        semi_minor: S,
        rotation: Angle,
    },
    Point(Point<S>),
}

impl<S: Scalar> ConvexBody<S> {
    pub fn polygon(vertices: Vec<Point<S>>, tol: &Tolerance) -> Result<Self, KernelError> {
        Ok(Self::Polygon(ConvexPolygon::new(vertices, tol)?))
    }

    pub fn disk(center: Point<S>, radius: S) -> Result<Self, KernelError> {
        let body = Self::Disk { center, radius };
        body.validate()?;
        Ok(body)
    }

    pub fn ellipse(center: Point<S>, semi_major: S, semi_minor: S, rotation: Angle) -> Result<Self, KernelError> {
        let body = Self::Ellipse {
            center,
            semi_major,
            semi_minor,
            rotation,
        };
        body.validate()?;
        Ok(body)
    }

    pub fn point(p: Point<S>) -> Self {
        Self::Point(p)
    }

    /// Checks the variant invariants (positive radii, `a >= b`, finiteness)
    /// and that smooth variants are not used with exact arithmetic.
    pub fn validate(&self) -> Result<(), KernelError> {
        match self {
            Self::Polygon(p) => {
                if p.vertices().iter().any(|v| !v.is_finite()) {
                    return Err(KernelError::NonFinite);
                }
            }
            Self::Point(p) => {
                if !p.is_finite() {
                    return Err(KernelError::NonFinite);
                }
            }
            Self::Disk { center, radius } => {
                if S::is_exact() {
                    return Err(KernelError::SmoothBodyInExactMode);
                }
                if !center.is_finite() || !radius.is_finite() {
                    return Err(KernelError::NonFinite);
                }
                if *radius <= S::zero() {
                    return Err(KernelError::InvalidBody("disk radius must be positive".into()));
                }
            }
            Self::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => {
                if S::is_exact() {
                    return Err(KernelError::SmoothBodyInExactMode);
                }
                if !center.is_finite() || !semi_major.is_finite() || !semi_minor.is_finite() || !rotation.radians().is_finite()
                {
                    return Err(KernelError::NonFinite);
                }
                if *semi_minor <= S::zero() {
                    return Err(KernelError::InvalidBody("ellipse semi-axes must be positive".into()));
                }
                if semi_major < semi_minor {
                    return Err(KernelError::InvalidBody("ellipse semi-major axis is shorter than semi-minor".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, Self::Disk { .. } | Self::Ellipse { .. })
    }

    /// Polygon vertices, or the single point of a point body.
    pub fn vertices(&self) -> Option<Vec<Point<S>>> {
        match self {
            Self::Polygon(p) => Some(p.vertices().to_vec()),
            Self::Point(p) => Some(vec![p.clone()]),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Polygon(_) => "polygon",
            Self::Disk { .. } => "disk",
            Self::Ellipse { .. } => "ellipse",
            Self::Point(_) => "point",
        }
    }

    /// `h(d) = max x · d` without locating the contact.
    pub fn value_dir(&self, d: &Point<S>) -> S {
        match self {
            Self::Polygon(p) => p
                .vertices()
                .iter()
                .map(|v| v.dot(d))
                .reduce(S::max_of)
                .expect("polygon has at least one vertex"),
            Self::Point(p) => p.dot(d),
            _ => S::from_f64(smooth_value(&self.to_f64(), &d.to_f64())),
        }
    }

    pub fn support_dir(&self, d: &Point<S>, tol: &Tolerance) -> SupportEvaluation<S> {
        match self {
            Self::Point(p) => SupportEvaluation {
                value: p.dot(d),
                contact: p.clone(),
                kind: ContactKind::Vertex,
            },
            Self::Polygon(poly) => polygon_support(poly, d, tol),
            _ => {
                let f = smooth_support(&self.to_f64(), &d.to_f64());
                SupportEvaluation {
                    value: S::from_f64(f.value),
                    contact: Point::from_f64(&f.contact),
                    kind: ContactKind::Smooth,
                }
            }
        }
    }

    pub fn contains_point(&self, p: &Point<S>, tol: &Tolerance) -> bool {
        match self {
            Self::Polygon(poly) => point_in_polygon(p, poly, tol),
            Self::Point(q) => q.approx_eq(p, tol),
            Self::Disk { center, radius } => {
                let r = radius.to_f64();
                let q = (p - center).to_f64();
                (q.x / r).powi(2) + (q.y / r).powi(2) <= 1.0 + tol.eps
            }
            Self::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => {
                let q = (p - center).to_f64();
                let u = rotation.unit();
                let v = u.perp();
                (q.dot(&u) / semi_major.to_f64()).powi(2) + (q.dot(&v) / semi_minor.to_f64()).powi(2) <= 1.0 + tol.eps
            }
        }
    }

    /// Largest distance from the origin to a point of the body.
    pub fn reach(&self) -> f64 {
        match self {
            Self::Polygon(p) => p.vertices().iter().map(|v| v.norm_f64()).fold(0.0, f64::max),
            Self::Point(p) => p.norm_f64(),
            Self::Disk { center, radius } => center.norm_f64() + radius.to_f64(),
            Self::Ellipse { center, semi_major, .. } => center.norm_f64() + semi_major.to_f64(),
        }
    }

    pub fn to_f64(&self) -> ConvexBody<f64> {
        match self {
            Self::Polygon(p) => ConvexBody::Polygon(p.to_f64()),
            Self::Point(p) => ConvexBody::Point(p.to_f64()),
            Self::Disk { center, radius } => ConvexBody::Disk {
                center: center.to_f64(),
                radius: radius.to_f64(),
            },
            Self::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => ConvexBody::Ellipse {
                center: center.to_f64(),
                semi_major: semi_major.to_f64(),
                semi_minor: semi_minor.to_f64(),
                rotation: *rotation,
            },
        }
    }

    pub fn from_f64(body: &ConvexBody<f64>) -> Self {
        match body {
            ConvexBody::Polygon(p) => Self::Polygon(ConvexPolygon::from_f64(p)),
            ConvexBody::Point(p) => Self::Point(Point::from_f64(p)),
            ConvexBody::Disk { center, radius } => Self::Disk {
                center: Point::from_f64(center),
                radius: S::from_f64(*radius),
            },
            ConvexBody::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => Self::Ellipse {
                center: Point::from_f64(center),
                semi_major: S::from_f64(*semi_major),
                semi_minor: S::from_f64(*semi_minor),
                rotation: *rotation,
            },
        }
    }
}

impl ConvexBody<f64> {
    pub fn support(&self, theta: Angle, tol: &Tolerance) -> SupportEvaluation<f64> {
        self.support_dir(&theta.unit(), tol)
    }

    /// `h(θ)`.
    pub fn h(&self, theta: f64) -> f64 {
        self.value_dir(&Point::unit(theta))
    }

    /// The half-plane `{x · η(θ) <= h(θ)}`; its boundary supports the body.
    pub fn supporting_line(&self, theta: Angle) -> HalfPlane<f64> {
        HalfPlane::from_angle(theta, self.h(theta.radians()))
    }

    /// Boundary points: polygon vertices as stored, or `k` points spaced
    /// uniformly in the smooth parameter.
    pub fn boundary_samples(&self, k: usize) -> Vec<Point<f64>> {
        match self {
            Self::Polygon(p) => p.vertices().to_vec(),
            Self::Point(p) => vec![*p],
            Self::Disk { center, radius } => (0..k)
                .map(|i| {
                    let t = std::f64::consts::TAU * i as f64 / k as f64;
                    center + &Point::unit(t).scale(radius)
                })
                .collect(),
            Self::Ellipse {
                center,
                semi_major,
                semi_minor,
                rotation,
            } => {
                let u = rotation.unit();
                let v = u.perp();
                (0..k)
                    .map(|i| {
                        let t = std::f64::consts::TAU * i as f64 / k as f64;
                        let (s, c) = t.sin_cos();
                        center + &(u.scale(&(semi_major * c)) + v.scale(&(semi_minor * s)))
                    })
                    .collect()
            }
        }
    }

    pub fn centroid(&self) -> Point<f64> {
        match self {
            Self::Polygon(p) => p.centroid(),
            Self::Point(p) => *p,
            Self::Disk { center, .. } | Self::Ellipse { center, .. } => *center,
        }
    }

    /// Image under `x ↦ center + scale (x − center) + shift`.
    pub fn transformed(&self, center: &Point<f64>, scale: f64, shift: &Point<f64>) -> Self {
        let map = |p: &Point<f64>| &(center + &(p - center).scale(&scale)) + shift;
        match self {
            Self::Polygon(p) => Self::Polygon(ConvexPolygon::from_raw(p.vertices().iter().map(map).collect())),
            Self::Point(p) => Self::Point(map(p)),
            Self::Disk { center: c, radius } => Self::Disk {
                center: map(c),
                radius: radius * scale,
            },
            Self::Ellipse {
                center: c,
                semi_major,
                semi_minor,
                rotation,
            } => Self::Ellipse {
                center: map(c),
                semi_major: semi_major * scale,
                semi_minor: semi_minor * scale,
                rotation: *rotation,
            },
        }
    }
}

fn polygon_support<S: Scalar>(poly: &ConvexPolygon<S>, d: &Point<S>, tol: &Tolerance) -> SupportEvaluation<S> {
    let vs = poly.vertices();
    let n = vs.len();
    let values: Vec<S> = vs.iter().map(|v| v.dot(d)).collect();
    let mut best = 0;
    for k in 1..n {
        if values[k] > values[best] {
            best = k;
        }
    }
    if n == 1 {
        return SupportEvaluation {
            value: values[0].clone(),
            contact: vs[0].clone(),
            kind: ContactKind::Vertex,
        };
    }
    let slack = if S::is_exact() { 0.0 } else { tol.eps * d.norm_f64() };
    let next = (best + 1) % n;
    let prev = (best + n - 1) % n;
    let gap = |k: usize| (values[best].clone() - values[k].clone()).sign_within(slack) == Ordering::Equal;
    let half = S::one() / S::from_i64(2);
    let tie = if gap(next) {
        Some(next)
    } else if gap(prev) {
        Some(prev)
    } else {
        None
    };
    match tie {
        Some(k) => SupportEvaluation {
            value: values[best].clone(),
            contact: (&vs[best] + &vs[k]).scale(&half),
            kind: ContactKind::EdgeInterior,
        },
        None => SupportEvaluation {
            value: values[best].clone(),
            contact: vs[best].clone(),
            kind: ContactKind::Vertex,
        },
    }
}

fn smooth_value(body: &ConvexBody<f64>, d: &Point<f64>) -> f64 {
    match body {
        ConvexBody::Disk { center, radius } => center.dot(d) + radius * d.norm(),
        ConvexBody::Ellipse {
            center,
            semi_major,
            semi_minor,
            rotation,
        } => {
            let u = rotation.unit();
            let du = d.dot(&u);
            let dv = d.dot(&u.perp());
            center.dot(d) + (semi_major * semi_major * du * du + semi_minor * semi_minor * dv * dv).sqrt()
        }
        _ => body.value_dir(d),
    }
}

fn smooth_support(body: &ConvexBody<f64>, d: &Point<f64>) -> SupportEvaluation<f64> {
    match body {
        ConvexBody::Disk { center, radius } => {
            let n = d.norm();
            SupportEvaluation {
                value: center.dot(d) + radius * n,
                contact: center + &d.scale(&(radius / n)),
                kind: ContactKind::Smooth,
            }
        }
        ConvexBody::Ellipse {
            center,
            semi_major,
            semi_minor,
            rotation,
        } => {
            let u = rotation.unit();
            let v = u.perp();
            let (a2, b2) = (semi_major * semi_major, semi_minor * semi_minor);
            let du = d.dot(&u);
            let dv = d.dot(&v);
            let root = (a2 * du * du + b2 * dv * dv).sqrt();
            let offset = u.scale(&(a2 * du / root)) + v.scale(&(b2 * dv / root));
            SupportEvaluation {
                value: center.dot(d) + root,
                contact: center + &offset,
                kind: ContactKind::Smooth,
            }
        }
        _ => unreachable!("smooth_support called on a non-smooth body"),
    }
}

/// Outcome of `inner ⊆ ch(outer ∪ extra)`.
///
/// Margins are `h_C(η) − h_inner(η)` for unit `η`, in coordinate units.
#[derive(Clone, Debug, PartialEq)]
pub enum ContainmentResult<S> {
    Contained {
        min_margin: f64,
    },
    NotContained {
        witness_angle: Angle,
        witness_direction: Point<S>,
        escaping_point: Point<S>,
        margin: f64,
    },
}

impl<S> ContainmentResult<S> {
    pub fn is_contained(&self) -> bool {
        matches!(self, Self::Contained { .. })
    }

    pub fn margin(&self) -> f64 {
        match self {
            Self::Contained { min_margin } => *min_margin,
            Self::NotContained { margin, .. } => *margin,
        }
    }
}

/// Decides whether `inner` lies in the convex hull of `outer` and `extra`.
///
/// With a polygonal (or point) outer body the hull is a polygon and the test
/// compares support values along its edge normals, which is exact in rational
/// mode. A smooth outer body is handled on a grid of angles with each
/// promising local minimum refined by golden-section search.
pub fn contained_in_hull<S: Scalar>(
    inner: &ConvexBody<S>,
    outer: &ConvexBody<S>,
    extra: &[Point<S>],
    tol: &Tolerance,
) -> ContainmentResult<S> {
    match outer.vertices() {
        Some(mut pts) => {
            pts.extend_from_slice(extra);
            polygon_hull_check(inner, &pts, tol)
        }
        None => {
            let extra64: Vec<Point<f64>> = extra.iter().map(Point::to_f64).collect();
            match smooth_hull_check(&inner.to_f64(), &outer.to_f64(), &extra64, tol) {
                ContainmentResult::Contained { min_margin } => ContainmentResult::Contained { min_margin },
                ContainmentResult::NotContained {
                    witness_angle,
                    witness_direction,
                    escaping_point,
                    margin,
                } => ContainmentResult::NotContained {
                    witness_angle,
                    witness_direction: Point::from_f64(&witness_direction),
                    escaping_point: Point::from_f64(&escaping_point),
                    margin,
                },
            }
        }
    }
}

/// Directions whose support values decide membership in the hull of `pts`.
pub(crate) fn facet_directions<S: Scalar>(hull: &ConvexPolygon<S>) -> Vec<Point<S>> {
    let vs = hull.vertices();
    match vs.len() {
        1 => {
            let (o, z) = (S::one(), S::zero());
            vec![
                Point::new(o.clone(), z.clone()),
                Point::new(z.clone(), o.clone()),
                Point::new(-o.clone(), z.clone()),
                Point::new(z, -o),
            ]
        }
        2 => {
            let e = &vs[1] - &vs[0];
            let p = e.perp();
            vec![p.clone(), -p, e.clone(), -e]
        }
        n => (0..n).map(|k| hull.edge_normal(k)).collect(),
    }
}

fn polygon_hull_check<S: Scalar>(inner: &ConvexBody<S>, pts: &[Point<S>], tol: &Tolerance) -> ContainmentResult<S> {
    let hull = convex_hull(pts, tol).expect("hull input is nonempty and finite");
    let mut worst: Option<(f64, Point<S>, bool)> = None;
    for d in facet_directions(&hull) {
        let h_c = hull.vertices().iter().map(|v| v.dot(&d)).reduce(S::max_of).unwrap();
        let h_in = inner.value_dir(&d);
        let diff = h_c - h_in;
        let norm = d.norm_f64();
        let violated = if S::is_exact() {
            diff < S::zero()
        } else {
            diff.to_f64() < -tol.eps * norm
        };
        let margin = diff.to_f64() / norm;
        let replace = match &worst {
            None => true,
            Some((m, _, v)) => (violated && !v) || (violated == *v && margin < *m),
        };
        if replace {
            worst = Some((margin, d, violated));
        }
    }
    let (margin, d, violated) = worst.expect("at least one facet direction");
    if !violated {
        return ContainmentResult::Contained { min_margin: margin };
    }
    let escaping_point = inner.support_dir(&d, tol).contact;
    ContainmentResult::NotContained {
        witness_angle: Angle::new(d.to_f64().angle()),
        witness_direction: d,
        escaping_point,
        margin,
    }
}

fn smooth_hull_check(
    inner: &ConvexBody<f64>,
    outer: &ConvexBody<f64>,
    extra: &[Point<f64>],
    tol: &Tolerance,
) -> ContainmentResult<f64> {
    let f = |theta: f64| {
        let eta = Point::unit(theta);
        let h_c = extra.iter().map(|p| p.dot(&eta)).fold(outer.value_dir(&eta), f64::max);
        h_c - inner.value_dir(&eta)
    };
    let n = CONTAINMENT_GRID;
    let step = std::f64::consts::TAU / n as f64;
    let samples: Vec<f64> = (0..n).map(|i| f(i as f64 * step)).collect();
    let reach = extra.iter().map(|p| p.norm()).fold(outer.reach(), f64::max) + inner.reach();
    let threshold = 2.0 * reach * step + tol.eps;

    let mut best = (0.0, f64::INFINITY);
    for i in 0..n {
        if samples[i] < best.1 {
            best = (i as f64 * step, samples[i]);
        }
    }
    for i in 0..n {
        let prev = samples[(i + n - 1) % n];
        let next = samples[(i + 1) % n];
        if samples[i] <= prev && samples[i] <= next && samples[i] < threshold {
            let centre = i as f64 * step;
            let (x, fx) = golden_min(f, centre - step, centre + step, 1e-12);
            if fx < best.1 {
                best = (x, fx);
            }
        }
    }
    let (theta, margin) = best;
    if margin >= -tol.eps {
        return ContainmentResult::Contained { min_margin: margin };
    }
    let angle = Angle::new(theta);
    let dir = angle.unit();
    ContainmentResult::NotContained {
        witness_angle: angle,
        witness_direction: dir,
        escaping_point: inner.support_dir(&dir, tol).contact,
        margin,
    }
}
