//! Scene generators: the even-`n` sharpness family, corollary scenes (disks in
//! triangles, ellipses in pentagons, homothets), the Plücker bound and the
//! seeded fuzz generator.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{contained_in_hull, ConvexBody};
use crate::carousel::{check_carousel_bruteforce, Scene, Verdict};
use crate::error::ConstructionError;
use crate::kernel::{convex_hull, point_in_polygon, Angle, ConvexPolygon, Point};
use crate::scalar::{Rational, Tolerance};
use crate::tangency::{common_supporting_lines, CslResult, OrientedSupportLine};

/// Upper bound on common supporting lines of two bodies bounded by smooth
/// plane curves of degrees `d1` and `d2`.
pub fn plucker_bound(d1: u64, d2: u64) -> u64 {
    d1 * (d1 - 1) * d2 * (d2 - 1)
}

/// The sharpness pair for even `n`: `G` is the regular `n`-gon on the roots
/// of unity, and the bodies alternate trisection points of the midpoint lines.
#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessInstance {
    pub n: usize,
    pub g: ConvexPolygon<f64>,
    pub a0: ConvexPolygon<f64>,
    pub a1: ConvexPolygon<f64>,
    /// `l_1, …, l_n` in clockwise order, `l_1` the vertical line near vertex 1.
    pub lines: Vec<OrientedSupportLine<f64>>,
    /// `(p_k^a, p_k^b)` for `k = 1, …, n`.
    pub trisection: Vec<(Point<f64>, Point<f64>)>,
}

impl SharpnessInstance {
    pub fn scene(&self) -> Result<Scene<f64>, ConstructionError> {
        Ok(Scene::new(
            ConvexBody::Polygon(self.a0.clone()),
            ConvexBody::Polygon(self.a1.clone()),
            self.g.clone(),
            Tolerance::default(),
        )?)
    }
}

pub fn sharpness_construct(n: usize) -> Result<SharpnessInstance, ConstructionError> {
    if n < 4 || n % 2 == 1 {
        return Err(ConstructionError::OddN(n));
    }
    let tol = Tolerance::default();
    let step = TAU / n as f64;
    let root = |t: f64| Point::new(t.cos(), t.sin());
    let g = ConvexPolygon::new((0..n).map(|k| root(step * k as f64)).collect(), &tol)?;
    let mut lines = Vec::with_capacity(n);
    let mut trisection = Vec::with_capacity(n);
    let (mut v0, mut v1) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for k in 0..n {
        // l_{k+1} cuts off the vertex at angle −k·step; clockwise along it runs
        // from the edge towards the counterclockwise neighbour to the other
        let t = -step * k as f64;
        let c = root(t);
        let m_plus = (c + root(t + step)).scale(&0.5);
        let m_minus = (c + root(t - step)).scale(&0.5);
        let pa = m_plus.lerp(&m_minus, 1.0 / 3.0);
        let pb = m_plus.lerp(&m_minus, 2.0 / 3.0);
        let (own, other) = if k % 2 == 0 { (pa, pb) } else { (pb, pa) };
        v0.push(own);
        v1.push(other);
        let nor = Angle::new(t);
        lines.push(OrientedSupportLine {
            normal: nor.unit(),
            nor,
            offset: nor.unit().dot(&pa),
            contact0: own,
            contact1: Some(other),
            tangential: false,
        });
        trisection.push((pa, pb));
    }
    let a0 = convex_hull(&v0, &tol)?;
    let a1 = convex_hull(&v1, &tol)?;
    Ok(SharpnessInstance {
        n,
        g,
        a0,
        a1,
        lines,
        trisection,
    })
}

/// Outcome of checking a sharpness instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub n: usize,
    pub s: Option<usize>,
    /// Largest angular distance between a computed common supporting line and
    /// the nearest midpoint line.
    pub max_normal_error: f64,
    pub verdict_fails: bool,
    pub refutations: usize,
    /// Slope of the edge of `ch(A_0, vertices(G) ∖ {1})` from `p_1^a` to
    /// `exp(−2πi/n)`, and its closed form `(7/3)·cot(π/n)`.
    pub slope: f64,
    pub slope_expected: f64,
    /// The edge inequality evaluated at `p_1^b`.
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_expected: f64,
    pub mismatches: Vec<String>,
}

impl SharpnessReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub const SHARPNESS_NORMAL_TOL: f64 = 1e-9;
pub const SHARPNESS_INEQUALITY_TOL: f64 = 1e-12;

pub fn sharpness_validate(inst: &SharpnessInstance) -> Result<SharpnessReport, ConstructionError> {
    let n = inst.n;
    let scene = inst.scene()?;
    let mut mismatches = Vec::new();

    let csl = common_supporting_lines(&scene.a0, &scene.a1, &scene.tol);
    let s = csl.count();
    let mut max_normal_error = f64::INFINITY;
    match &csl {
        CslResult::Finite(found) => {
            if found.len() != n {
                mismatches.push(format!("expected {n} common supporting lines, found {}", found.len()));
            }
            max_normal_error = inst
                .lines
                .iter()
                .map(|l| found.iter().map(|f| f.nor.distance(l.nor)).fold(f64::INFINITY, f64::min))
                .fold(0.0, f64::max);
            if max_normal_error > SHARPNESS_NORMAL_TOL {
                mismatches.push(format!("normal error {max_normal_error:e} exceeds {SHARPNESS_NORMAL_TOL:e}"));
            }
        }
        other => mismatches.push(format!("common supporting lines are {}", other.kind_name())),
    }

    let cert = check_carousel_bruteforce(&scene);
    let refutations = match &cert.verdict {
        Verdict::Fails { refutations } => refutations.len(),
        Verdict::Holds { i, j, .. } => {
            mismatches.push(format!("carousel holds with i = {i}, j = {j}"));
            0
        }
    };
    let verdict_fails = !cert.holds();
    if verdict_fails && refutations != 2 * n {
        mismatches.push(format!("expected {} refutations, found {refutations}", 2 * n));
    }

    let theta = TAU / n as f64;
    let (pa, _) = inst.trisection[0];
    let (_, pb) = inst.trisection[0];
    let w = Point::new(theta.cos(), -theta.sin());
    let slope = (pa.y - w.y) / (pa.x - w.x);
    let slope_expected = 7.0 / 3.0 / (PI / n as f64).tan();
    if (slope - slope_expected).abs() > SHARPNESS_INEQUALITY_TOL * slope_expected.max(1.0) {
        mismatches.push(format!("edge slope {slope} differs from {slope_expected}"));
    }
    let lhs = pb.y - pa.y;
    let rhs = slope * (pb.x - pa.x);
    let lhs_expected = -theta.sin() / 3.0;
    if (lhs - lhs_expected).abs() > SHARPNESS_INEQUALITY_TOL {
        mismatches.push(format!("LHS {lhs} differs from {lhs_expected}"));
    }
    if rhs.abs() > SHARPNESS_INEQUALITY_TOL {
        mismatches.push(format!("RHS {rhs} is not 0"));
    }
    if lhs >= rhs {
        mismatches.push("p_1^b satisfies the edge inequality".into());
    }
    Ok(SharpnessReport {
        n,
        s,
        max_normal_error,
        verdict_fails,
        refutations,
        slope,
        slope_expected,
        lhs,
        rhs,
        lhs_expected,
        mismatches,
    })
}

/// Support samples per shape when a hull of shapes is replaced by a polygon.
pub const SHAPE_SAMPLES: usize = 256;

/// Two bodies inside the convex hull of several shapes rather than a polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapesInstance {
    pub a0: ConvexBody<f64>,
    pub a1: ConvexBody<f64>,
    pub shapes: Vec<ConvexBody<f64>>,
}

/// Two translated ellipses (so `s = 2`) inside the hull of three thin
/// ellipses crossing at the origin. Each thin ellipse supplies two opposite
/// corners of the roughly hexagonal hull; `A_0` reaches the upper three and
/// `A_1` the lower three, so dropping any shape uncovers a piece of both.
pub fn ellipse_counterexample() -> ShapesInstance {
    let body = |y: f64| ConvexBody::ellipse(Point::new(0.0, y), 0.69, 0.62, Angle::new(0.0)).expect("valid ellipse");
    let needle = |deg: f64| {
        ConvexBody::ellipse(Point::new(0.0, 0.0), 1.0, 0.03, Angle::new(deg.to_radians())).expect("valid ellipse")
    };
    ShapesInstance {
        a0: body(0.2),
        a1: body(-0.2),
        shapes: vec![needle(30.0), needle(90.0), needle(150.0)],
    }
}

/// A pair `(i, j)` (`j` 1-based) for which `A_i ⊆ ch(A_{1−i} ∪ X_k, k ≠ j)`,
/// or the escaping margin when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapesPair {
    pub i: usize,
    pub j: usize,
    pub contained: bool,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapesReport {
    pub s: Option<usize>,
    /// Both bodies lie in the polygonal approximation of the hull of shapes.
    pub bodies_inside: bool,
    pub pairs: Vec<ShapesPair>,
}

impl ShapesReport {
    /// The carousel rule with whole shapes in place of vertices.
    pub fn holds(&self) -> bool {
        self.pairs.iter().any(|p| p.contained)
    }
}

/// Checks the carousel rule for a hull of shapes, each shape replaced by
/// `samples` boundary points.
pub fn shapes_carousel_check(inst: &ShapesInstance, samples: usize) -> Result<ShapesReport, ConstructionError> {
    let tol = Tolerance::default();
    let pts: Vec<Vec<Point<f64>>> = inst.shapes.iter().map(|x| x.boundary_samples(samples)).collect();
    let all: Vec<Point<f64>> = pts.iter().flatten().copied().collect();
    let g = ConvexBody::Polygon(convex_hull(&all, &tol)?);
    let bodies_inside = [&inst.a0, &inst.a1]
        .iter()
        .all(|a| contained_in_hull(a, &g, &[], &tol).is_contained());
    let mut pairs = Vec::new();
    for (i, (inner, outer)) in [(&inst.a0, &inst.a1), (&inst.a1, &inst.a0)].into_iter().enumerate() {
        for j in 0..pts.len() {
            let extra: Vec<Point<f64>> = pts
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .flat_map(|(_, p)| p.iter().copied())
                .collect();
            let r = contained_in_hull(inner, outer, &extra, &tol);
            pairs.push(ShapesPair {
                i,
                j: j + 1,
                contained: r.is_contained(),
                margin: r.margin(),
            });
        }
    }
    Ok(ShapesReport {
        s: common_supporting_lines(&inst.a0, &inst.a1, &tol).count(),
        bodies_inside,
        pairs,
    })
}

/// Body kinds drawn by the fuzz generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BodyKind {
    Polygon,
    Disk,
    Ellipse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FuzzConfig {
    /// Inclusive range of container sizes.
    pub n_range: (usize, usize),
    /// Relative weights of polygon, disk and ellipse bodies.
    pub body_mix: (f64, f64, f64),
    /// Inclusive range of the number of points hulled into a polygon body.
    pub vertex_range: (usize, usize),
    /// Factor by which polygon bodies are shrunk toward their centroid.
    pub shrink: f64,
    /// Smallest allowed angular gap between container vertices, as a fraction
    /// of `2π/n`.
    pub min_gap_fraction: f64,
    pub seed: u64,
    /// Number of scenes in a campaign.
    pub samples: usize,
    /// Draws allowed per random object before giving up.
    pub rejection_limit: usize,
    /// Redraws allowed per campaign scene when a draw is degenerate or has
    /// `s >= n`.
    pub redraw_limit: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            n_range: (3, 10),
            body_mix: (1.0, 1.0, 1.0),
            vertex_range: (3, 8),
            shrink: 0.9,
            min_gap_fraction: 0.2,
            seed: 1,
            samples: 100,
            rejection_limit: 1000,
            redraw_limit: 100,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |m: &str| Err(ConstructionError::InvalidConfig(m.into()));
        if self.n_range.0 < 3 || self.n_range.0 > self.n_range.1 {
            return bad("n_range must satisfy 3 <= min <= max");
        }
        let (p, d, e) = self.body_mix;
        if p < 0.0 || d < 0.0 || e < 0.0 || p + d + e <= 0.0 || !(p + d + e).is_finite() {
            return bad("body_mix weights must be non-negative with a positive sum");
        }
        if self.vertex_range.0 < 3 || self.vertex_range.0 > self.vertex_range.1 {
            return bad("vertex_range must satisfy 3 <= min <= max");
        }
        if !(self.shrink > 0.0 && self.shrink <= 1.0) {
            return bad("shrink must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.min_gap_fraction) {
            return bad("min_gap_fraction must lie in [0, 1)");
        }
        if self.rejection_limit == 0 {
            return bad("rejection_limit must be positive");
        }
        Ok(())
    }
}

/// Seed of the `index`-th draw derived from `base` (SplitMix64 finaliser).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A convex `n`-gon with vertices at sorted random angles on a random ellipse.
fn random_container(rng: &mut ChaCha8Rng, n: usize, min_gap_fraction: f64, limit: usize) -> Result<ConvexPolygon<f64>, ConstructionError> {
    let tol = Tolerance::default();
    let scale = rng.gen_range(1.0..4.0);
    let a = scale;
    let b = scale * rng.gen_range(0.4..1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    let center = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let min_gap = min_gap_fraction * TAU / n as f64;
    for _ in 0..limit {
        let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        t.sort_by(f64::total_cmp);
        let gaps_ok = (0..n).all(|k| {
            let next = if k + 1 == n { t[0] + TAU } else { t[k + 1] };
            next - t[k] >= min_gap
        });
        if !gaps_ok {
            continue;
        }
        let pts: Vec<Point<f64>> = t
            .iter()
            .map(|&s| {
                let (x, y) = (a * s.cos(), b * s.sin());
                Point::new(
                    center.x + x * phi.cos() - y * phi.sin(),
                    center.y + x * phi.sin() + y * phi.cos(),
                )
            })
            .collect();
        if let Ok(hull) = convex_hull(&pts, &tol) {
            if hull.len() == n {
                return Ok(hull);
            }
        }
    }
    Err(ConstructionError::RejectionLimitExceeded(limit))
}

fn random_point_in(rng: &mut ChaCha8Rng, g: &ConvexPolygon<f64>, limit: usize) -> Result<Point<f64>, ConstructionError> {
    let tol = Tolerance::default();
    let xs = g.vertices().iter().map(|v| v.x);
    let ys = g.vertices().iter().map(|v| v.y);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)));
    for _ in 0..limit {
        let p = Point::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1));
        if point_in_polygon(&p, g, &tol) {
            return Ok(p);
        }
    }
    Err(ConstructionError::RejectionLimitExceeded(limit))
}

/// Largest `t` with `center + t·(direction support)` inside `g`, per edge.
fn edge_clearances(g: &ConvexPolygon<f64>, center: &Point<f64>) -> Vec<(Point<f64>, f64)> {
    (0..g.len())
        .map(|k| {
            let nrm = g.edge_normal(k).normalized();
            (nrm, nrm.dot(g.vertex(k)) - nrm.dot(center))
        })
        .collect()
}

fn random_polygon_body(
    rng: &mut ChaCha8Rng,
    g: &ConvexPolygon<f64>,
    cfg: &FuzzConfig,
) -> Result<ConvexBody<f64>, ConstructionError> {
    let tol = Tolerance::default();
    for _ in 0..cfg.rejection_limit {
        let k = rng.gen_range(cfg.vertex_range.0..=cfg.vertex_range.1);
        let pts = (0..k)
            .map(|_| random_point_in(rng, g, cfg.rejection_limit))
            .collect::<Result<Vec<_>, _>>()?;
        let Ok(hull) = convex_hull(&pts, &tol) else { continue };
        if hull.len() < 3 {
            continue;
        }
        let c = hull.centroid();
        let shrunk: Vec<Point<f64>> = hull.vertices().iter().map(|v| c.lerp(v, cfg.shrink)).collect();
        if let Ok(body) = ConvexBody::polygon(shrunk, &tol) {
            return Ok(body);
        }
    }
    Err(ConstructionError::RejectionLimitExceeded(cfg.rejection_limit))
}

fn random_disk(rng: &mut ChaCha8Rng, g: &ConvexPolygon<f64>, limit: usize) -> Result<ConvexBody<f64>, ConstructionError> {
    let center = random_point_in(rng, g, limit)?;
    let room = edge_clearances(g, &center).into_iter().map(|(_, c)| c).fold(f64::INFINITY, f64::min);
    if room <= 1e-6 {
        return Err(ConstructionError::RejectionLimitExceeded(limit));
    }
    Ok(ConvexBody::disk(center, room * rng.gen_range(0.2..0.9))?)
}

fn random_ellipse(rng: &mut ChaCha8Rng, g: &ConvexPolygon<f64>, limit: usize) -> Result<ConvexBody<f64>, ConstructionError> {
    let center = random_point_in(rng, g, limit)?;
    let phi: f64 = rng.gen_range(0.0..PI);
    let ratio: f64 = rng.gen_range(0.2..1.0);
    let (u, v) = (Point::new(phi.cos(), phi.sin()), Point::new(-phi.sin(), phi.cos()));
    let a_max = edge_clearances(g, &center)
        .into_iter()
        .map(|(nrm, c)| c / (nrm.dot(&u).powi(2) + ratio * ratio * nrm.dot(&v).powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min);
    if a_max <= 1e-6 {
        return Err(ConstructionError::RejectionLimitExceeded(limit));
    }
    let a = a_max * rng.gen_range(0.2..0.9);
    Ok(ConvexBody::ellipse(center, a, a * ratio, Angle::new(phi))?)
}

fn random_body(rng: &mut ChaCha8Rng, g: &ConvexPolygon<f64>, cfg: &FuzzConfig) -> Result<ConvexBody<f64>, ConstructionError> {
    let (p, d, e) = cfg.body_mix;
    let r = rng.gen_range(0.0..p + d + e);
    let kind = if r < p {
        BodyKind::Polygon
    } else if r < p + d {
        BodyKind::Disk
    } else {
        BodyKind::Ellipse
    };
    for _ in 0..cfg.rejection_limit {
        let body = match kind {
            BodyKind::Polygon => random_polygon_body(rng, g, cfg),
            BodyKind::Disk => random_disk(rng, g, cfg.rejection_limit),
            BodyKind::Ellipse => random_ellipse(rng, g, cfg.rejection_limit),
        };
        match body {
            Ok(b) => return Ok(b),
            Err(ConstructionError::RejectionLimitExceeded(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ConstructionError::RejectionLimitExceeded(cfg.rejection_limit))
}

/// A random scene, deterministic in `(cfg, seed)`.
pub fn generate_fuzz_scene(cfg: &FuzzConfig, seed: u64) -> Result<Scene<f64>, ConstructionError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(cfg.n_range.0..=cfg.n_range.1);
    let g = random_container(&mut rng, n, cfg.min_gap_fraction, cfg.rejection_limit)?;
    let a0 = random_body(&mut rng, &g, cfg)?;
    let a1 = random_body(&mut rng, &g, cfg)?;
    Ok(Scene::new(a0, a1, g, Tolerance::default())?)
}

/// Coordinate bound of lattice scenes.
pub const LATTICE_RADIUS: i64 = 1000;

fn lattice_polygon(pts: &[(i64, i64)]) -> Option<ConvexPolygon<Rational>> {
    let exact: Vec<Point<Rational>> = pts
        .iter()
        .map(|&(x, y)| Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into())))
        .collect();
    convex_hull(&exact, &Tolerance::default()).ok()
}

/// A random polygon-only scene with integer coordinates of magnitude at most
/// [`LATTICE_RADIUS`], in exact arithmetic. Deterministic in `seed`.
pub fn generate_lattice_scene(seed: u64) -> Result<Scene<Rational>, ConstructionError> {
    const LIMIT: usize = 1000;
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=10);
    let r = LATTICE_RADIUS as f64;
    let g = (0..LIMIT)
        .find_map(|_| {
            let mut t: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
            t.sort_by(f64::total_cmp);
            let min_gap = FuzzConfig::default().min_gap_fraction * TAU / n as f64;
            if (0..n).any(|k| (if k + 1 == n { t[0] + TAU } else { t[k + 1] }) - t[k] < min_gap) {
                return None;
            }
            let pts: Vec<(i64, i64)> = t.iter().map(|s| ((r * s.cos()) as i64, (r * s.sin()) as i64)).collect();
            lattice_polygon(&pts).filter(|h| h.len() == n)
        })
        .ok_or(ConstructionError::RejectionLimitExceeded(LIMIT))?;
    let corners: Vec<Point<f64>> = g.to_f64().vertices().to_vec();
    let mut body = || {
        (0..LIMIT)
            .find_map(|_| {
                // a random convex combination of the corners lies inside G
                let w: Vec<f64> = corners.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
                let total: f64 = w.iter().sum();
                let cx = corners.iter().zip(&w).map(|(c, wi)| c.x * wi).sum::<f64>() / total;
                let cy = corners.iter().zip(&w).map(|(c, wi)| c.y * wi).sum::<f64>() / total;
                let (cx, cy) = (cx.round() as i64, cy.round() as i64);
                let spread = rng.gen_range(10..=300);
                let k = rng.gen_range(3..=6);
                let pts: Vec<(i64, i64)> = (0..k)
                    .map(|_| (cx + rng.gen_range(-spread..=spread), cy + rng.gen_range(-spread..=spread)))
                    .collect();
                let hull = lattice_polygon(&pts)?;
                let inside = hull.vertices().iter().all(|v| point_in_polygon(v, &g, &tol));
                (inside && hull.len() >= 3).then_some(ConvexBody::Polygon(hull))
            })
            .ok_or(ConstructionError::RejectionLimitExceeded(LIMIT))
    };
    let a0 = body()?;
    let a1 = body()?;
    Ok(Scene::new(a0, a1, g, tol)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorollaryKind {
    DisksInTriangle,
    EllipsesInPentagon,
    HomothetsInTriangle,
}

impl CorollaryKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::DisksInTriangle => "disks-in-triangle",
            Self::EllipsesInPentagon => "ellipses-in-pentagon",
            Self::HomothetsInTriangle => "homothets-in-triangle",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [Self::DisksInTriangle, Self::EllipsesInPentagon, Self::HomothetsInTriangle]
            .into_iter()
            .find(|k| k.name() == name)
    }
}

const COROLLARY_LIMIT: usize = 1000;

fn homothet_pair(rng: &mut ChaCha8Rng, g: &ConvexPolygon<f64>) -> Result<(ConvexBody<f64>, ConvexBody<f64>), ConstructionError> {
    let tol = Tolerance::default();
    let outer = ConvexBody::Polygon(g.clone());
    let cfg = FuzzConfig {
        shrink: 0.5,
        ..FuzzConfig::default()
    };
    for _ in 0..COROLLARY_LIMIT {
        let k = random_polygon_body(rng, g, &cfg)?;
        let lambda = rng.gen_range(0.3..1.5);
        let target = random_point_in(rng, g, COROLLARY_LIMIT)?;
        let c = k.centroid();
        let other = k.transformed(&c, lambda, &(target - c));
        if contained_in_hull(&other, &outer, &[], &tol).is_contained() {
            return Ok((k, other));
        }
    }
    Err(ConstructionError::RejectionLimitExceeded(COROLLARY_LIMIT))
}

/// A random scene of the given corollary family, deterministic in `seed`.
pub fn generate_corollary_scene(kind: CorollaryKind, seed: u64) -> Result<Scene<f64>, ConstructionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = match kind {
        CorollaryKind::EllipsesInPentagon => 5,
        _ => 3,
    };
    let g = random_container(&mut rng, n, 0.2, COROLLARY_LIMIT)?;
    let (a0, a1) = match kind {
        CorollaryKind::DisksInTriangle => (
            random_disk(&mut rng, &g, COROLLARY_LIMIT)?,
            random_disk(&mut rng, &g, COROLLARY_LIMIT)?,
        ),
        CorollaryKind::EllipsesInPentagon => (
            random_ellipse(&mut rng, &g, COROLLARY_LIMIT)?,
            random_ellipse(&mut rng, &g, COROLLARY_LIMIT)?,
        ),
        CorollaryKind::HomothetsInTriangle => homothet_pair(&mut rng, &g)?,
    };
    Ok(Scene::new(a0, a1, g, Tolerance::default())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plucker_values() {
        assert_eq!(plucker_bound(2, 2), 4);
        assert_eq!(plucker_bound(2, 3), 12);
        assert_eq!(plucker_bound(3, 3), 36);
        assert_eq!(plucker_bound(3, 5), plucker_bound(5, 3));
    }

    #[test]
    fn sharpness_n4_points() {
        let inst = sharpness_construct(4).unwrap();
        let (pa, pb) = inst.trisection[0];
        assert!(pa.approx_eq(&Point::new(0.5, 1.0 / 6.0), &Tolerance { eps: 1e-15, eps_angle: 0.0 }));
        assert!(pb.approx_eq(&Point::new(0.5, -1.0 / 6.0), &Tolerance { eps: 1e-15, eps_angle: 0.0 }));
    }

    #[test]
    fn sharpness_general_first_point() {
        for n in [4, 6, 8, 10, 12] {
            let inst = sharpness_construct(n).unwrap();
            let t = TAU / n as f64;
            let (pa, _) = inst.trisection[0];
            assert!((pa.x - (1.0 + t.cos()) / 2.0).abs() < 1e-15);
            assert!((pa.y - t.sin() / 6.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sharpness_rejects_odd() {
        assert_eq!(sharpness_construct(5).unwrap_err(), ConstructionError::OddN(5));
        assert_eq!(sharpness_construct(3).unwrap_err(), ConstructionError::OddN(3));
    }

    #[test]
    fn sharpness_validates() {
        for n in [4, 6] {
            let report = sharpness_validate(&sharpness_construct(n).unwrap()).unwrap();
            assert!(report.passed(), "{:?}", report.mismatches);
            assert_eq!(report.s, Some(n));
            assert_eq!(report.refutations, 2 * n);
        }
        let r4 = sharpness_validate(&sharpness_construct(4).unwrap()).unwrap();
        assert!((r4.lhs + 1.0 / 3.0).abs() < 1e-12);
        let r6 = sharpness_validate(&sharpness_construct(6).unwrap()).unwrap();
        assert!((r6.lhs + 0.288_675_134_594_812_9).abs() < 1e-12);
    }

    #[test]
    fn fuzz_is_deterministic_and_valid() {
        let cfg = FuzzConfig::default();
        for seed in 0..50 {
            let a = generate_fuzz_scene(&cfg, seed).unwrap();
            let b = generate_fuzz_scene(&cfg, seed).unwrap();
            assert_eq!(a, b);
            assert!((3..=10).contains(&a.n()));
        }
    }

    #[test]
    fn corollary_scenes() {
        for seed in 0..20 {
            let d = generate_corollary_scene(CorollaryKind::DisksInTriangle, seed).unwrap();
            assert!(d.csl().count().unwrap() <= 2);
            let e = generate_corollary_scene(CorollaryKind::EllipsesInPentagon, seed).unwrap();
            assert_eq!(e.n(), 5);
            let h = generate_corollary_scene(CorollaryKind::HomothetsInTriangle, seed).unwrap();
            assert_eq!(h.n(), 3);
        }
    }

    #[test]
    fn config_validation() {
        let bad = FuzzConfig {
            n_range: (2, 5),
            ..FuzzConfig::default()
        };
        assert!(bad.validate().is_err());
        assert!(FuzzConfig::default().validate().is_ok());
    }

    #[test]
    fn ellipse_counterexample_fails_for_every_pair() {
        let inst = ellipse_counterexample();
        let r = shapes_carousel_check(&inst, SHAPE_SAMPLES).unwrap();
        assert_eq!(r.s, Some(2));
        assert!(r.bodies_inside);
        assert_eq!(r.pairs.len(), 6);
        assert!(!r.holds());
        assert!(r.pairs.iter().all(|p| p.margin < -0.1), "{:?}", r.pairs);
    }

    // support-function oracle: A ⊆ ch(B ∪ X_k) iff h_A ≤ max(h_B, h_X) on the circle
    #[test]
    fn ellipse_counterexample_matches_support_oracle() {
        let inst = ellipse_counterexample();
        let grid: Vec<f64> = (0..20_000).map(|k| TAU * k as f64 / 20_000.0).collect();
        let excess = |a: &ConvexBody<f64>, others: &[&ConvexBody<f64>]| {
            grid.iter()
                .map(|&t| a.h(t) - others.iter().map(|o| o.h(t)).fold(f64::NEG_INFINITY, f64::max))
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let x: Vec<&ConvexBody<f64>> = inst.shapes.iter().collect();
        assert!(excess(&inst.a0, &x) < -0.01);
        assert!(excess(&inst.a1, &x) < -0.01);
        for (a, b) in [(&inst.a0, &inst.a1), (&inst.a1, &inst.a0)] {
            for j in 0..3 {
                let mut others: Vec<&ConvexBody<f64>> = vec![b];
                others.extend(x.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, s)| *s));
                assert!(excess(a, &others) > 0.1);
            }
        }
    }

    #[test]
    fn ellipse_pair_holds_in_the_hexagon_of_tips() {
        let inst = ellipse_counterexample();
        let tol = Tolerance::default();
        let tips: Vec<Point<f64>> = (0..6).map(|k| Point::unit((30.0 + 60.0 * k as f64).to_radians())).collect();
        let g = ConvexPolygon::new(tips, &tol).unwrap();
        let scene = Scene::new(inst.a0, inst.a1, g, tol).unwrap();
        assert!(check_carousel_bruteforce(&scene).holds());
    }
}
