//! Sectors of supporting half-planes over arcs of normals, their expansion
//! by slide-turning, the exit points `Ω^L`, `Ω^R` of supporting lines through
//! the container, and the boundary sweeps between adjacent common lines.
//!
//! Arcs run clockwise from their start, matching the order in which
//! slide-turning visits normals.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::bodies::{ConvexBody, SupportEvaluation};
use crate::error::SectorError;
use crate::kernel::{clip, convex_hull, point_in_polygon, Angle, ConvexPolygon, HalfPlane, Point};
use crate::scalar::Tolerance;
use crate::tangency::OrientedSupportLine;

/// Default number of sampled normals for sectors of smooth bodies.
pub const SMOOTH_SECTOR_SAMPLES: usize = 512;

/// Anything with a support function usable for slide-turning.
pub trait SupportBody: Sync {
    fn support_at(&self, theta: Angle, tol: &Tolerance) -> SupportEvaluation<f64>;
    fn h_at(&self, theta: f64) -> f64;
    /// Outward edge normals when the support function is piecewise linear.
    fn edge_normal_angles(&self) -> Option<Vec<Angle>>;
}

impl SupportBody for ConvexBody<f64> {
    fn support_at(&self, theta: Angle, tol: &Tolerance) -> SupportEvaluation<f64> {
        self.support(theta, tol)
    }

    fn h_at(&self, theta: f64) -> f64 {
        self.h(theta)
    }

    fn edge_normal_angles(&self) -> Option<Vec<Angle>> {
        match self {
            ConvexBody::Polygon(p) if p.len() >= 2 => {
                Some((0..p.len()).map(|k| Angle::new(p.edge_normal(k).angle())).collect())
            }
            ConvexBody::Polygon(_) | ConvexBody::Point(_) => Some(Vec::new()),
            _ => None,
        }
    }
}

/// The convex hull of two bodies: materialised when both are polygonal,
/// otherwise represented by the pointwise maximum of the support functions.
#[derive(Clone, Debug)]
pub enum HullBody {
    Polygon(ConvexBody<f64>),
    Max(ConvexBody<f64>, ConvexBody<f64>),
}

impl HullBody {
    pub fn of(a0: &ConvexBody<f64>, a1: &ConvexBody<f64>, tol: &Tolerance) -> Self {
        match (a0.vertices(), a1.vertices()) {
            (Some(mut v0), Some(v1)) => {
                v0.extend(v1);
                let hull = convex_hull(&v0, tol).expect("bodies have vertices");
                if hull.len() == 1 {
                    Self::Polygon(ConvexBody::Point(hull.vertices()[0]))
                } else {
                    Self::Polygon(ConvexBody::Polygon(hull))
                }
            }
            _ => Self::Max(a0.clone(), a1.clone()),
        }
    }
}

impl SupportBody for HullBody {
    fn support_at(&self, theta: Angle, tol: &Tolerance) -> SupportEvaluation<f64> {
        match self {
            Self::Polygon(b) => b.support(theta, tol),
            Self::Max(a, b) => {
                let sa = a.support(theta, tol);
                let sb = b.support(theta, tol);
                if sb.value > sa.value {
                    sb
                } else {
                    sa
                }
            }
        }
    }

    fn h_at(&self, theta: f64) -> f64 {
        match self {
            Self::Polygon(b) => b.h(theta),
            Self::Max(a, b) => a.h(theta).max(b.h(theta)),
        }
    }

    fn edge_normal_angles(&self) -> Option<Vec<Angle>> {
        match self {
            Self::Polygon(b) => b.edge_normal_angles(),
            Self::Max(..) => None,
        }
    }
}

/// Arc of normals running clockwise from `start` through `width` radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalArc {
    pub start: Angle,
    pub width: f64,
}

impl NormalArc {
    /// The clockwise arc from `nor(l1)` to `nor(l2)`; equal normals give the
    /// full circle.
    pub fn between(from: Angle, to: Angle) -> Self {
        let w = from.cw_gap(to);
        Self {
            start: from,
            width: if w == 0.0 { TAU } else { w },
        }
    }

    pub fn end(&self) -> Angle {
        self.start.rotated(-self.width)
    }

    /// The complementary arc, clockwise from `end` back to `start`.
    pub fn complement(&self) -> Self {
        Self {
            start: self.end(),
            width: TAU - self.width,
        }
    }

    pub fn contains(&self, theta: Angle, eps_angle: f64) -> bool {
        let off = self.start.cw_gap(theta);
        off <= self.width + eps_angle || off >= TAU - eps_angle
    }

    /// Strictly inside, away from both endpoints by more than `eps_angle`.
    pub fn contains_strictly(&self, theta: Angle, eps_angle: f64) -> bool {
        let off = self.start.cw_gap(theta);
        off > eps_angle && off < self.width - eps_angle
    }

    /// `k + 1` evenly spaced normals from `start` to `end`, inclusive.
    pub fn samples(&self, k: usize) -> Vec<Angle> {
        (0..=k).map(|i| self.start.rotated(-self.width * i as f64 / k as f64)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// `⋂ H_A(η)` over the normals of an arc, as a half-plane family, optionally
/// materialised inside a container.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorRegion {
    pub arc: NormalArc,
    pub half_planes: Vec<HalfPlane<f64>>,
    /// The sector clipped to the container; `None` if no container was given
    /// or the intersection is empty.
    pub clipped: Option<ConvexPolygon<f64>>,
}

impl SectorRegion {
    pub fn contains(&self, p: &Point<f64>, tol: &Tolerance) -> bool {
        self.half_planes.iter().all(|h| h.contains(p, tol))
    }
}

/// Half-planes generating the sector of `body` over `arc`. Polygonal bodies
/// need only the two endpoint normals and the edge normals strictly inside
/// the arc; smooth bodies are sampled.
pub fn arc_half_planes(body: &dyn SupportBody, arc: &NormalArc, samples: usize, tol: &Tolerance) -> Vec<HalfPlane<f64>> {
    let hp = |th: Angle| HalfPlane::from_angle(th, body.h_at(th.radians()));
    if arc.width <= 0.0 {
        return vec![hp(arc.start)];
    }
    let full = arc.width >= TAU - tol.eps_angle;
    match body.edge_normal_angles() {
        Some(normals) => {
            let mut out = vec![hp(arc.start)];
            if !full {
                out.push(hp(arc.end()));
            }
            let mut inner: Vec<(f64, Angle)> = normals
                .into_iter()
                .filter(|n| arc.contains_strictly(*n, tol.eps_angle) || (full && !n.approx_eq(arc.start, tol.eps_angle)))
                .map(|n| (arc.start.cw_gap(n), n))
                .collect();
            inner.sort_by(|a, b| a.0.total_cmp(&b.0));
            out.extend(inner.into_iter().map(|(_, n)| hp(n)));
            out
        }
        None => {
            let mut out: Vec<HalfPlane<f64>> = arc.samples(samples).into_iter().map(hp).collect();
            if full {
                out.pop();
            }
            out
        }
    }
}

/// The sector over an explicit arc, clipped to `g` when given.
pub fn sector_on_arc(
    body: &dyn SupportBody,
    arc: NormalArc,
    g: Option<&ConvexPolygon<f64>>,
    tol: &Tolerance,
) -> SectorRegion {
    let half_planes = arc_half_planes(body, &arc, SMOOTH_SECTOR_SAMPLES, tol);
    let clipped = g.and_then(|g| {
        let mut poly = g.clone();
        for h in &half_planes {
            poly = clip(&poly, h, tol)?;
        }
        Some(poly)
    });
    SectorRegion {
        arc,
        half_planes,
        clipped,
    }
}

/// `sect^±(l1, l2; body)`: `Plus` uses the clockwise arc from `nor(l1)` to
/// `nor(l2)`, `Minus` its complement.
pub fn sector(
    l1: &OrientedSupportLine<f64>,
    l2: &OrientedSupportLine<f64>,
    body: &dyn SupportBody,
    sign: ArcSign,
    g: Option<&ConvexPolygon<f64>>,
    tol: &Tolerance,
) -> Result<SectorRegion, SectorError> {
    let width = l1.nor.cw_gap(l2.nor);
    if width < tol.eps_angle || width > TAU - tol.eps_angle {
        return Err(SectorError::DegenerateArc);
    }
    let plus = NormalArc { start: l1.nor, width };
    let arc = match sign {
        ArcSign::Plus => plus,
        ArcSign::Minus => plus.complement(),
    };
    Ok(sector_on_arc(body, arc, g, tol))
}

/// The arc of `sect⁺(l_{1,α}, l_{2,−β})` for a pair whose clockwise gap is
/// `gap`.
pub fn expanded_arc(nor1: Angle, gap: f64, alpha: f64, beta: f64, tol: &Tolerance) -> Result<NormalArc, SectorError> {
    if alpha < 0.0 || beta < 0.0 || alpha + beta > gap + tol.eps_angle {
        return Err(SectorError::ExpansionTooWide { alpha, beta, gap });
    }
    Ok(NormalArc {
        start: nor1.rotated(-alpha),
        width: (gap - alpha - beta).max(0.0),
    })
}

/// `sect⁺(l_{1,α;A}, l_{2,−β;A}; A)`. The gap is the clockwise angle from
/// `nor(l1)` to `nor(l2)`, taken as `2π` when the normals coincide.
pub fn expand_sector(
    l1: &OrientedSupportLine<f64>,
    l2: &OrientedSupportLine<f64>,
    body: &dyn SupportBody,
    alpha: f64,
    beta: f64,
    g: Option<&ConvexPolygon<f64>>,
    tol: &Tolerance,
) -> Result<SectorRegion, SectorError> {
    let gap = NormalArc::between(l1.nor, l2.nor).width;
    let arc = expanded_arc(l1.nor, gap, alpha, beta, tol)?;
    Ok(sector_on_arc(body, arc, g, tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Carrier {
    Vertex(usize),
    Edge(usize),
}

/// A point of `∂G`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub location: Point<f64>,
    pub carrier: Carrier,
    /// The edge `ω` the point is assigned to (tie rule applied at vertices).
    pub edge: usize,
    /// Counterclockwise arc length from vertex 0.
    pub param: f64,
}

/// Precomputed container data for boundary queries.
#[derive(Clone, Debug)]
pub struct Container {
    pub polygon: ConvexPolygon<f64>,
    unit_normals: Vec<Point<f64>>,
    offsets: Vec<f64>,
    cumulative: Vec<f64>,
    pub perimeter: f64,
    pub snap: f64,
}

impl Container {
    pub fn new(g: &ConvexPolygon<f64>, tol: &Tolerance) -> Self {
        let n = g.len();
        let mut unit_normals = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        for k in 0..n {
            let nrm = g.edge_normal(k).normalized();
            offsets.push(nrm.dot(g.vertex(k)));
            unit_normals.push(nrm);
            cumulative.push(acc);
            let (a, b) = g.edge(k);
            acc += a.distance(b);
        }
        cumulative.push(acc);
        Self {
            polygon: g.clone(),
            unit_normals,
            offsets,
            cumulative,
            perimeter: acc,
            snap: tol.eps * (1.0 + g.max_abs_coordinate()),
        }
    }

    pub fn len(&self) -> usize {
        self.polygon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygon.is_empty()
    }

    /// Arc-length parameter of vertex `k`.
    pub fn vertex_param(&self, k: usize) -> f64 {
        self.cumulative[k % self.len()]
    }

    /// Clockwise boundary distance from parameter `from` to parameter `to`.
    pub fn cw_distance(&self, from: f64, to: f64) -> f64 {
        (from - to).rem_euclid(self.perimeter)
    }

    /// Exit point of the ray `a + t·d`, `t >= 0`, with the vertex tie rule of
    /// `side`.
    pub fn exit(&self, a: &Point<f64>, d: &Point<f64>, side: Side) -> BoundaryPoint {
        let mut best_t = f64::INFINITY;
        let mut best_k = 0;
        for k in 0..self.len() {
            let nd = self.unit_normals[k].dot(d);
            if nd > 1e-12 {
                let t = (self.offsets[k] - self.unit_normals[k].dot(a)) / nd;
                if t < best_t {
                    best_t = t;
                    best_k = k;
                }
            }
        }
        let location = a + &d.scale(&best_t);
        self.locate(location, best_k, side)
    }

    fn locate(&self, location: Point<f64>, edge_hint: usize, side: Side) -> BoundaryPoint {
        let n = self.len();
        let vs = self.polygon.vertices();
        let near = (0..n)
            .map(|k| (k, vs[k].distance(&location)))
            .filter(|(_, d)| *d <= self.snap)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match near {
            Some((k, _)) => BoundaryPoint {
                location: vs[k],
                carrier: Carrier::Vertex(k),
                // clockwise of v[k] is edge k−1 (v[k−1]→v[k]); counterclockwise is edge k
                edge: match side {
                    Side::L => (k + n - 1) % n,
                    Side::R => k,
                },
                param: self.cumulative[k],
            },
            None => {
                let k = edge_hint;
                BoundaryPoint {
                    location,
                    carrier: Carrier::Edge(k),
                    edge: k,
                    param: self.cumulative[k] + vs[k].distance(&location),
                }
            }
        }
    }
}

/// `Ω^L(l)` or `Ω^R(l)`: the farthest point of `G` along the line from its
/// contact, in direction `dir^L` or `dir^R`.
pub fn omega(l: &OrientedSupportLine<f64>, g: &Container, side: Side, tol: &Tolerance) -> Result<BoundaryPoint, SectorError> {
    let a = &l.contact0;
    if !point_in_polygon(a, &g.polygon, tol) {
        return Err(SectorError::ContactOutsideG { x: a.x, y: a.y });
    }
    let dir = match side {
        Side::L => l.dir_l(),
        Side::R => l.dir_r(),
    };
    Ok(g.exit(a, &dir.unit(), side))
}

/// `Ω` of the supporting line of `body` with normal `theta`.
pub fn omega_at(body: &dyn SupportBody, theta: Angle, g: &Container, side: Side, tol: &Tolerance) -> BoundaryPoint {
    let contact = body.support_at(theta, tol).contact;
    let dir = match side {
        Side::L => theta.rotated(std::f64::consts::FRAC_PI_2),
        Side::R => theta.rotated(-std::f64::consts::FRAC_PI_2),
    };
    g.exit(&contact, &dir.unit(), side)
}

/// A contiguous piece of `∂G` traced by `Ω` during a slide-turn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySweep {
    pub side: Side,
    /// Value of `Ω` at the start of the slide-turn.
    pub from: BoundaryPoint,
    /// Value of `Ω` at the end of the slide-turn.
    pub to: BoundaryPoint,
    /// Boundary length traced.
    pub length: f64,
    /// Covered vertices of `G`, in clockwise order.
    pub covered_vertices: Vec<usize>,
}

/// Left sweep of `l_i` (side `L`) or right sweep of `l_next` (side `R`) for the
/// pair `(l_i, l_next)`, where `l_next` follows `l_i` clockwise.
///
/// The left sweep runs clockwise from `Ω^L(l_i)` to `Ω^L(l_next)`; the right
/// sweep runs counterclockwise from `Ω^R(l_next)` to `Ω^R(l_i)`.
pub fn sweep(
    l_i: &OrientedSupportLine<f64>,
    l_next: &OrientedSupportLine<f64>,
    g: &Container,
    side: Side,
    tol: &Tolerance,
) -> Result<BoundarySweep, SectorError> {
    let full = l_i.nor.approx_eq(l_next.nor, tol.eps_angle);
    let (from, to) = match side {
        Side::L => (omega(l_i, g, Side::L, tol)?, omega(l_next, g, Side::L, tol)?),
        Side::R => (omega(l_next, g, Side::R, tol)?, omega(l_i, g, Side::R, tol)?),
    };
    // clockwise start and end of the traced segment
    let (cw_start, cw_end) = match side {
        Side::L => (from, to),
        Side::R => (to, from),
    };
    let p = g.perimeter;
    let mut length = g.cw_distance(cw_start.param, cw_end.param);
    if full {
        length = p;
    } else if length > p - g.snap {
        length = 0.0;
    }
    let covered_vertices = covered(g, cw_start.param, length);
    Ok(BoundarySweep {
        side,
        from,
        to,
        length,
        covered_vertices,
    })
}

/// Vertices within clockwise distance `length` of `start`, in clockwise order.
fn covered(g: &Container, start: f64, length: f64) -> Vec<usize> {
    let n = g.len();
    let p = g.perimeter;
    let mut found: Vec<(f64, usize)> = (0..n)
        .filter_map(|k| {
            let mut d = g.cw_distance(start, g.vertex_param(k));
            if d > p - g.snap {
                d = 0.0;
            }
            (d <= length + g.snap).then_some((d, k))
        })
        .collect();
    found.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    found.dedup_by_key(|x| x.1);
    found.into_iter().map(|(_, k)| k).collect()
}

/// Vertices of the clockwise boundary path from `from` to `to` inclusive.
pub fn clockwise_path(n: usize, from: usize, to: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut k = from;
    while k != to {
        k = (k + n - 1) % n;
        out.push(k);
    }
    out
}

/// The vertices between two slide-turned lines: with `Ω^L(l1') = g_a` and
/// `Ω^R(l2') = g_b`, the clockwise run `g_b … g_a` if it lies in `sector`,
/// otherwise the clockwise run `g_a … g_b`.
pub fn vertices_between_in(
    sector: &SectorRegion,
    l1_turned: &OrientedSupportLine<f64>,
    l2_turned: &OrientedSupportLine<f64>,
    g: &Container,
    tol: &Tolerance,
) -> Result<Vec<usize>, SectorError> {
    let a = vertex_of(omega(l1_turned, g, Side::L, tol)?)?;
    let b = vertex_of(omega(l2_turned, g, Side::R, tol)?)?;
    Ok(vertices_between_indices(sector, a, b, g, tol))
}

pub(crate) fn vertices_between_indices(sector: &SectorRegion, a: usize, b: usize, g: &Container, tol: &Tolerance) -> Vec<usize> {
    let n = g.len();
    let loose = Tolerance {
        eps: g.snap.max(tol.eps) * 10.0,
        ..*tol
    };
    let b_to_a = if a == b {
        // both lines leave through one vertex: the clockwise run is either
        // that vertex alone or the whole boundary
        clockwise_path(n, a, (a + 1) % n)
    } else {
        clockwise_path(n, b, a)
    };
    if b_to_a.iter().all(|&k| sector.contains(g.polygon.vertex(k), &loose)) {
        b_to_a
    } else if a == b {
        vec![a]
    } else {
        clockwise_path(n, a, b)
    }
}

fn vertex_of(p: BoundaryPoint) -> Result<usize, SectorError> {
    match p.carrier {
        Carrier::Vertex(k) => Ok(k),
        Carrier::Edge(_) => Err(SectorError::EndpointNotVertex {
            x: p.location.x,
            y: p.location.y,
        }),
    }
}

/// Vertices between `l1_turned` and `l2_turned` with the sector taken over
/// the clockwise arc between their normals (a single half-plane when the
/// normals coincide).
pub fn vertices_between(
    l1_turned: &OrientedSupportLine<f64>,
    l2_turned: &OrientedSupportLine<f64>,
    body: &dyn SupportBody,
    g: &Container,
    tol: &Tolerance,
) -> Result<Vec<usize>, SectorError> {
    let mut width = l1_turned.nor.cw_gap(l2_turned.nor);
    if width > TAU - tol.eps_angle {
        width = 0.0;
    }
    let arc = NormalArc {
        start: l1_turned.nor,
        width,
    };
    let region = sector_on_arc(body, arc, Some(&g.polygon), tol);
    vertices_between_in(&region, l1_turned, l2_turned, g, tol)
}

/// Whether `inner ⊆ sect(arc; outer)`, by comparing support values on the
/// arc (dense samples plus the endpoints and any polygon breakpoints).
pub fn body_in_sector(inner: &ConvexBody<f64>, outer: &dyn SupportBody, arc: &NormalArc, tol: &Tolerance) -> bool {
    let mut normals = arc.samples(SMOOTH_SECTOR_SAMPLES);
    for src in [outer.edge_normal_angles(), SupportBody::edge_normal_angles(inner)].into_iter().flatten() {
        normals.extend(src.into_iter().filter(|n| arc.contains(*n, 0.0)));
    }
    normals
        .into_iter()
        .all(|th| inner.h(th.radians()) <= outer.h_at(th.radians()) + tol.eps)
}
