use std::cmp::Ordering;

use super::{orient, Angle, Point};
use crate::error::KernelError;
use crate::scalar::{Scalar, Tolerance};

/// Closed half-plane `{x : normal · x <= offset}`. The normal need not be a
/// unit vector (exact mode keeps rational directions).
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPlane<S> {
    pub normal: Point<S>,
    pub offset: S,
}

impl<S: Scalar> HalfPlane<S> {
    pub fn new(normal: Point<S>, offset: S) -> Self {
        Self { normal, offset }
    }

    /// `normal · p - offset`; non-positive inside.
    pub fn excess(&self, p: &Point<S>) -> S {
        self.normal.dot(p) - self.offset.clone()
    }

    pub fn contains(&self, p: &Point<S>, tol: &Tolerance) -> bool {
        self.excess(p).sign_within(tol.eps * self.normal.norm_f64()) != Ordering::Greater
    }

    /// Signed distance of `p` from the boundary line (positive outside).
    pub fn signed_distance(&self, p: &Point<S>) -> f64 {
        self.excess(p).to_f64() / self.normal.norm_f64()
    }

    pub fn to_f64(&self) -> HalfPlane<f64> {
        HalfPlane::new(self.normal.to_f64(), self.offset.to_f64())
    }
}

impl HalfPlane<f64> {
    /// `{x : x · (cos θ, sin θ) <= offset}`.
    pub fn from_angle(theta: Angle, offset: f64) -> Self {
        Self::new(theta.unit(), offset)
    }

    pub fn normal_angle(&self) -> Angle {
        Angle::new(self.normal.angle())
    }
}

/// Convex polygon with strictly convex vertices stored counterclockwise.
/// One- and two-vertex polygons (a point and a segment) are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<S> {
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> ConvexPolygon<S> {
    /// Validates a vertex cycle: finite, no duplicates, and (for three or more
    /// vertices) strictly convex in counterclockwise order.
    pub fn new(vertices: Vec<Point<S>>, tol: &Tolerance) -> Result<Self, KernelError> {
        if vertices.is_empty() {
            return Err(KernelError::EmptyInput);
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(KernelError::NonFinite);
        }
        let n = vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if vertices[i].approx_eq(&vertices[j], tol) {
                    return Err(KernelError::DuplicateVertex(j));
                }
            }
        }
        if n >= 3 {
            for i in 0..n {
                let a = &vertices[i];
                let b = &vertices[(i + 1) % n];
                let c = &vertices[(i + 2) % n];
                if orient(a, b, c, tol) != Ordering::Greater {
                    return Err(KernelError::NotStrictlyConvex((i + 1) % n));
                }
            }
            // a locally convex cycle can still wind more than once
            let mut turning = 0.0;
            let vf: Vec<Point<f64>> = vertices.iter().map(Point::to_f64).collect();
            for i in 0..n {
                let e0 = vf[(i + 1) % n] - vf[i];
                let e1 = vf[(i + 2) % n] - vf[(i + 1) % n];
                turning += e0.cross(&e1).atan2(e0.dot(&e1));
            }
            if turning > 1.5 * std::f64::consts::TAU {
                return Err(KernelError::NotStrictlyConvex(0));
            }
        }
        Ok(Self { vertices })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_raw(vertices: Vec<Point<S>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point<S>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, k: usize) -> &Point<S> {
        &self.vertices[k % self.vertices.len()]
    }

    /// Edge `k` runs from vertex `k` to vertex `k + 1` (counterclockwise).
    pub fn edge(&self, k: usize) -> (&Point<S>, &Point<S>) {
        (self.vertex(k), self.vertex(k + 1))
    }

    /// Outward (non-normalised) normal of edge `k`: the edge vector turned
    /// clockwise by 90°.
    pub fn edge_normal(&self, k: usize) -> Point<S> {
        let (a, b) = self.edge(k);
        let e = b - a;
        Point::new(e.y, -e.x)
    }

    /// Supporting half-plane of edge `k`.
    pub fn edge_half_plane(&self, k: usize) -> HalfPlane<S> {
        let normal = self.edge_normal(k);
        let offset = normal.dot(self.vertex(k));
        HalfPlane::new(normal, offset)
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> S {
        let n = self.vertices.len();
        let mut acc = S::zero();
        for i in 0..n {
            acc = acc + self.vertices[i].cross(&self.vertices[(i + 1) % n]);
        }
        acc
    }

    pub fn contains(&self, p: &Point<S>, tol: &Tolerance) -> bool {
        point_in_polygon(p, self, tol)
    }

    pub fn to_f64(&self) -> ConvexPolygon<f64> {
        ConvexPolygon::from_raw(self.vertices.iter().map(Point::to_f64).collect())
    }

    pub fn from_f64(poly: &ConvexPolygon<f64>) -> Self {
        Self::from_raw(poly.vertices.iter().map(Point::from_f64).collect())
    }

    /// Largest absolute coordinate, `|G|_∞`.
    pub fn max_abs_coordinate(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.x.to_f64().abs().max(v.y.to_f64().abs()))
            .fold(0.0, f64::max)
    }
}

impl ConvexPolygon<f64> {
    pub fn area(&self) -> f64 {
        0.5 * self.double_area()
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        (0..n)
            .map(|k| {
                let (a, b) = self.edge(k);
                a.distance(b)
            })
            .sum()
    }

    pub fn centroid(&self) -> Point<f64> {
        let n = self.len() as f64;
        let sx: f64 = self.vertices.iter().map(|v| v.x).sum();
        let sy: f64 = self.vertices.iter().map(|v| v.y).sum();
        Point::new(sx / n, sy / n)
    }
}

/// Convex hull by Andrew's monotone chain. Collinear and duplicate points are
/// dropped; the result starts at the lexicographically smallest vertex.
pub fn convex_hull<S: Scalar>(
    points: &[Point<S>],
    tol: &Tolerance,
) -> Result<ConvexPolygon<S>, KernelError> {
    if points.is_empty() {
        return Err(KernelError::EmptyInput);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    let mut pts: Vec<Point<S>> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup_by(|a, b| a.approx_eq(b, tol));
    if pts.len() == 1 {
        return Ok(ConvexPolygon::from_raw(pts));
    }

    let mut hull: Vec<Point<S>> = Vec::with_capacity(2 * pts.len());
    for p in pts.iter() {
        while hull.len() >= 2 && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p, tol) != Ordering::Greater {
            hull.pop();
        }
        hull.push(p.clone());
    }
    let lower_len = hull.len() + 1;
    for p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orient(&hull[hull.len() - 2], &hull[hull.len() - 1], p, tol) != Ordering::Greater
        {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull.pop();

    // float mode: merge near-coincident neighbours the chain let through
    if !S::is_exact() {
        let mut k = 0;
        while hull.len() > 1 && k < hull.len() {
            let next = (k + 1) % hull.len();
            if hull[k].approx_eq(&hull[next], tol) {
                hull.remove(next);
            } else {
                k += 1;
            }
        }
    }
    Ok(ConvexPolygon::from_raw(hull))
}

/// Intersection of a convex polygon with a half-plane. Returns `None` when the
/// intersection is empty; lower-dimensional results come back as one- or
/// two-vertex polygons.
pub fn clip<S: Scalar>(
    poly: &ConvexPolygon<S>,
    hp: &HalfPlane<S>,
    tol: &Tolerance,
) -> Option<ConvexPolygon<S>> {
    let n = poly.len();
    let slack = tol.eps * hp.normal.norm_f64();
    let excess: Vec<S> = poly.vertices().iter().map(|v| hp.excess(v)).collect();
    let side: Vec<Ordering> = excess.iter().map(|e| e.sign_within(slack)).collect();

    if side.iter().all(|s| *s != Ordering::Greater) {
        return Some(poly.clone());
    }

    let mut out: Vec<Point<S>> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        if side[i] != Ordering::Greater {
            out.push(poly.vertex(i).clone());
        }
        if n > 1 {
            let crosses = matches!(
                (side[i], side[j]),
                (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
            );
            if crosses {
                let t = excess[i].clone() / (excess[i].clone() - excess[j].clone());
                let d = poly.vertex(j) - poly.vertex(i);
                out.push(poly.vertex(i) + &d.scale(&t));
            }
        }
    }
    if out.is_empty() {
        return None;
    }
    // the clipped ring is already in order; only fall back to a full hull
    // when snapping produced duplicates or collinear runs
    if strictly_convex_ring(&out, tol) {
        return Some(ConvexPolygon::from_raw(out));
    }
    convex_hull(&out, tol).ok()
}

fn strictly_convex_ring<S: Scalar>(ring: &[Point<S>], tol: &Tolerance) -> bool {
    let n = ring.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b, c) = (&ring[i], &ring[(i + 1) % n], &ring[(i + 2) % n]);
            !a.approx_eq(b, tol) && orient(a, b, c, tol) == Ordering::Greater
        })
}

/// Closed membership test (boundary counts as inside).
pub fn point_in_polygon<S: Scalar>(p: &Point<S>, poly: &ConvexPolygon<S>, tol: &Tolerance) -> bool {
    let vs = poly.vertices();
    match vs.len() {
        0 => false,
        1 => vs[0].approx_eq(p, tol),
        2 => on_segment(p, &vs[0], &vs[1], tol),
        n => (0..n).all(|i| orient(&vs[i], &vs[(i + 1) % n], p, tol) != Ordering::Less),
    }
}

fn on_segment<S: Scalar>(p: &Point<S>, a: &Point<S>, b: &Point<S>, tol: &Tolerance) -> bool {
    if orient(a, b, p, tol) != Ordering::Equal {
        return false;
    }
    let ab = b - a;
    let slack = tol.eps * ab.norm_f64();
    let from_a = (p - a).dot(&ab);
    let from_b = (p - b).dot(&(a - b));
    from_a.sign_within(slack) != Ordering::Less && from_b.sign_within(slack) != Ordering::Less
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use std::f64::consts::FRAC_PI_4;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn unit_square() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)], &Tolerance::default()).unwrap()
    }

    fn is_convex_combination(q: &Point<f64>, hull: &[Point<f64>]) -> bool {
        // brute force: q lies in some triangle fanned from hull[0], or on a segment
        let t = Tolerance::default();
        if hull.len() == 1 {
            return hull[0].approx_eq(q, &t);
        }
        if hull.len() == 2 {
            return on_segment(q, &hull[0], &hull[1], &t);
        }
        (1..hull.len() - 1).any(|k| {
            let tri = ConvexPolygon::from_raw(vec![hull[0], hull[k], hull[k + 1]]);
            point_in_polygon(q, &tri, &t)
        })
    }

    #[test]
    fn hull_of_singleton() {
        let h = convex_hull(&[p(0., 0.)], &Tolerance::default()).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.)]);
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(0., 1.), p(0.25, 0.25)], &Tolerance::default()).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(1., 0.), p(0., 1.)]);
    }

    #[test]
    fn hull_drops_collinear_point() {
        let input = [p(0., 0.), p(2., 0.), p(1., 0.), p(2., 2.), p(0., 2.)];
        let h = convex_hull(&input, &Tolerance::default()).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]);
        for q in &input {
            assert!(is_convex_combination(q, h.vertices()));
        }
    }

    #[test]
    fn hull_of_empty_input_errors() {
        assert_eq!(convex_hull::<f64>(&[], &Tolerance::default()), Err(KernelError::EmptyInput));
    }

    #[test]
    fn collinear_points_hull_to_segment() {
        let h = convex_hull(&[p(0., 0.), p(3., 3.), p(1., 1.)], &Tolerance::default()).unwrap();
        assert_eq!(h.vertices(), &[p(0., 0.), p(3., 3.)]);
    }

    #[test]
    fn validation_rejects_clockwise_and_duplicates() {
        let t = Tolerance::default();
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(0., 1.), p(1., 0.)], &t),
            Err(KernelError::NotStrictlyConvex(_))
        ));
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 0.)], &t),
            Err(KernelError::DuplicateVertex(_))
        ));
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(2., 0.), p(0., 1.)], &t),
            Err(KernelError::NotStrictlyConvex(_))
        ));
    }

    #[test]
    fn clip_square_in_half() {
        let t = Tolerance::default();
        let r = clip(&unit_square(), &HalfPlane::from_angle(Angle::new(0.0), 0.5), &t).unwrap();
        let expected = convex_hull(&[p(0., 0.), p(0.5, 0.), p(0.5, 1.), p(0., 1.)], &t).unwrap();
        assert_eq!(r.len(), 4);
        for (a, b) in r.vertices().iter().zip(expected.vertices()) {
            assert!(a.approx_eq(b, &t));
        }
    }

    #[test]
    fn clip_redundant_constraint_is_identity() {
        let r = clip(&unit_square(), &HalfPlane::from_angle(Angle::new(0.0), 2.0), &Tolerance::default());
        assert_eq!(r, Some(unit_square()));
    }

    #[test]
    fn clip_triangle_corner() {
        let t = Tolerance::default();
        let tri = ConvexPolygon::new(vec![p(0., 0.), p(2., 0.), p(0., 2.)], &t).unwrap();
        let hp = HalfPlane::from_angle(Angle::new(FRAC_PI_4), std::f64::consts::SQRT_2 / 2.0);
        let r = clip(&tri, &hp, &t).unwrap();
        assert_eq!(r.len(), 3);
        for v in r.vertices() {
            assert!(hp.contains(v, &t));
        }
        // similarity ratio 1/2 gives a quarter of the area
        assert!((r.area() - tri.area() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn clip_to_empty_and_to_vertex() {
        let t = Tolerance::default();
        let sq = unit_square();
        assert!(clip(&sq, &HalfPlane::from_angle(Angle::new(0.0), -1.0), &t).is_none());
        let touch = clip(&sq, &HalfPlane::new(p(1., 1.), 0.0), &t).unwrap();
        assert_eq!(touch.vertices(), &[p(0., 0.)]);
    }

    #[test]
    fn point_membership() {
        let t = Tolerance::default();
        let sq = unit_square();
        assert!(point_in_polygon(&p(0.5, 0.5), &sq, &t));
        assert!(point_in_polygon(&p(1.0, 0.5), &sq, &t));
        assert!(!point_in_polygon(&p(1.1, 0.5), &sq, &t));
    }

    #[test]
    fn exact_membership_is_strict() {
        let t = Tolerance::default();
        let q = |x: i64, y: i64| Point::new(Rational::from_i64(x), Rational::from_i64(y));
        let sq = ConvexPolygon::new(vec![q(0, 0), q(1, 0), q(1, 1), q(0, 1)], &t).unwrap();
        let outside = Point::new(
            Rational::one() + crate::scalar::parse_rational("1/1000000").unwrap(),
            crate::scalar::parse_rational("1/2").unwrap(),
        );
        assert!(!point_in_polygon(&outside, &sq, &t));
        let boundary = Point::new(Rational::one(), crate::scalar::parse_rational("1/2").unwrap());
        assert!(point_in_polygon(&boundary, &sq, &t));
    }

    #[test]
    fn segment_membership() {
        let t = Tolerance::default();
        let seg = ConvexPolygon::new(vec![p(0., 0.), p(2., 0.)], &t).unwrap();
        assert!(point_in_polygon(&p(1., 0.), &seg, &t));
        assert!(!point_in_polygon(&p(3., 0.), &seg, &t));
        assert!(!point_in_polygon(&p(1., 0.1), &seg, &t));
    }
}
