//! The witness construction from the sweep argument.
//!
//! Lines are relabelled into the clockwise order `l_1, …, l_s` used by the
//! argument (`l_1` is the line with the smallest normal angle). For the first
//! adjacent pair whose left sweep covers two or more vertices, the sector
//! inclusion picks the body `A_i` that is swallowed by the other's sector;
//! the sector is then slide-turned out to vertices of `G` and any vertex
//! outside the vertices between the turned lines can be dropped.

use std::f64::consts::TAU;

use serde::Serialize;

use super::bruteforce::{check_carousel_bruteforce, revalidates, CarouselCertificate, Verdict, FRAGILE_FACTOR};
use super::{degeneracy, Scene};
use crate::bodies::ConvexBody;
use crate::error::CarouselError;
use crate::kernel::{clip, convex_hull, point_in_polygon, Angle, HalfPlane, Point};
use crate::numeric::bisect_predicate;
use crate::scalar::{Scalar, Tolerance};
use crate::sectors::{
    body_in_sector, expanded_arc, omega_at, sector_on_arc, sweep, vertices_between_indices, BoundaryPoint, Carrier,
    Container, HullBody, NormalArc, Side, SupportBody,
};
use crate::tangency::{delta, CslResult, OrientedSupportLine};

/// Bisection width for the slide-turn angle at which `Ω` reaches a vertex.
const TURN_RESOLUTION: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// No common supporting line: one body lies inside the other.
    EmptyCsl,
    /// Expansion of a sector out to vertices of `G`.
    SweepExpansion,
    /// Both bodies lie in `G ∩ H_1`, which misses a vertex of `G`.
    HalfPlaneCut,
    /// Both sweeps reach vertices but every right-sweep vertex is reached
    /// before the first left-sweep vertex, so no expansion has `α + β ≤ Δ`.
    /// The hull's supporting line at the last right-sweep vertex passes
    /// through that vertex and has at least two left-sweep vertices strictly
    /// beyond it; dropping the second keeps `G ∩ H` in the hull of the rest.
    RotatedHalfPlane,
}

/// Which of the two sector inclusions held for the chosen pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Inclusion {
    A0InSectorOfA1,
    A1InSectorOfA0,
}

impl Inclusion {
    /// Index of the included body, which is the witness `i`.
    pub fn included(self) -> usize {
        match self {
            Self::A0InSectorOfA1 => 0,
            Self::A1InSectorOfA0 => 1,
        }
    }

    pub fn outer(self) -> usize {
        1 - self.included()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairChoice {
    /// Position of `l_k` in the clockwise order; the pair is `(l_k, l_{k+1})`.
    pub k: usize,
    pub normals: (f64, f64),
    /// Clockwise angle from `nor(l_k)` to `nor(l_{k+1})`.
    pub gap: f64,
    /// Vertices of the left sweep of `l_k`, clockwise.
    pub left_sweep: Vec<usize>,
    /// Vertices of the right sweep of `l_{k+1}`, clockwise.
    pub right_sweep: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedPair {
    pub k: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructiveTrace {
    pub s: usize,
    pub n: usize,
    pub route: Route,
    pub chosen_pair: Option<PairChoice>,
    pub inclusion_side: Option<Inclusion>,
    /// Case of the argument when the right sweep is empty.
    pub case: Option<u8>,
    pub expansion: Option<(f64, f64)>,
    /// Clockwise turn from `nor(l_k)` of the cutting line on the rotated
    /// half-plane route.
    pub cut_turn: Option<f64>,
    /// Vertices `(g_a, g_b)` reached by the turned lines.
    pub expansion_vertices: Option<(usize, usize)>,
    pub vertices_between: Vec<usize>,
    /// `(i, j)` with `j` 1-based.
    pub witness: (usize, usize),
    /// Eligible pairs that were passed over, with the reason.
    pub skipped: Vec<SkippedPair>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossValidation {
    pub brute: CarouselCertificate,
    pub constructive: CarouselCertificate,
    pub trace: ConstructiveTrace,
    /// Whether both procedures picked the same `(i, j)`; not required.
    pub same_witness: bool,
}

/// The common supporting lines in the clockwise order of the argument.
fn clockwise_lines(lines: &[OrientedSupportLine<f64>]) -> Vec<OrientedSupportLine<f64>> {
    let s = lines.len();
    (0..s).map(|m| lines[(s - m) % s].clone()).collect()
}

fn pair_gap(l1: &OrientedSupportLine<f64>, l2: &OrientedSupportLine<f64>, s: usize) -> f64 {
    if s == 1 {
        TAU
    } else {
        NormalArc::between(l1.nor, l2.nor).width
    }
}

fn finite_lines<S: Scalar>(csl: &CslResult<S>, n: usize) -> Result<Vec<OrientedSupportLine<f64>>, CarouselError> {
    match csl {
        CslResult::Finite(lines) => {
            if lines.len() >= n {
                return Err(CarouselError::PreconditionSNotLessThanN { s: lines.len(), n });
            }
            Ok(lines.iter().map(OrientedSupportLine::to_f64).collect())
        }
        other => Err(CarouselError::DegenerateScene(
            degeneracy(other).unwrap_or_else(|| other.kind_name().to_string()),
        )),
    }
}

/// Inclusion of one body in the other's sector over the clockwise arc of the
/// pair, trying `A0 ⊆ sect⁺(A1)` first.
fn inclusion_for(scene: &Scene<f64>, arc: &NormalArc) -> Option<Inclusion> {
    if body_in_sector(&scene.a0, &scene.a1, arc, &scene.tol) {
        Some(Inclusion::A0InSectorOfA1)
    } else if body_in_sector(&scene.a1, &scene.a0, arc, &scene.tol) {
        Some(Inclusion::A1InSectorOfA0)
    } else {
        None
    }
}

/// Sign of `δ` for a scene without common supporting lines: the body with the
/// smaller support function is inside the other.
fn dominated_body(scene: &Scene<f64>) -> usize {
    let total: f64 = (0..16).map(|k| delta(&scene.a0, &scene.a1, TAU * k as f64 / 16.0)).sum();
    if total < 0.0 {
        0
    } else {
        1
    }
}

/// Turn angles at which `Ω` first reaches each vertex of a sweep.
///
/// For the left side, `base` is `nor(l_1)` and the lines turn clockwise; for
/// the right side, `base` is `nor(l_2)` and they turn counterclockwise.
fn turn_angles(
    hull: &HullBody,
    g: &Container,
    base: &BoundaryPoint,
    base_normal: f64,
    gap: f64,
    side: Side,
    vertices: &[usize],
    tol: &Tolerance,
) -> Vec<(usize, f64)> {
    let p = g.perimeter;
    let dist = |from: f64, to: f64| match side {
        Side::L => g.cw_distance(from, to),
        Side::R => g.cw_distance(to, from),
    };
    let pos = |t: f64| {
        let theta = match side {
            Side::L => base_normal - t,
            Side::R => base_normal + t,
        };
        let q = omega_at(hull, Angle::new(theta), g, side, tol);
        let d = dist(base.param, q.param);
        if d > p - g.snap {
            if t < 0.5 * gap {
                0.0
            } else {
                p
            }
        } else {
            d
        }
    };
    let mut out: Vec<(usize, f64)> = vertices
        .iter()
        .map(|&v| {
            let mut d = dist(base.param, g.vertex_param(v));
            if d > p - g.snap {
                d = 0.0;
            }
            let t = if d <= g.snap {
                0.0
            } else {
                bisect_predicate(|t| pos(t) >= d - g.snap, 0.0, gap, TURN_RESOLUTION * gap.max(1.0))
            };
            (v, t)
        })
        .collect();
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    out
}

struct Expansion {
    alpha: f64,
    beta: f64,
    a: usize,
    b: usize,
    vertices_between: Vec<usize>,
    dropped: usize,
}

fn lowest_missing(n: usize, vb: &[usize]) -> Option<usize> {
    (0..n).find(|k| !vb.contains(k))
}

/// Tries `(α, β)` in increasing order and returns the first expansion with
/// `α + β ≤ Δ` whose vertices between miss a vertex of `G`.
fn expand(
    outer: &ConvexBody<f64>,
    g: &Container,
    nor1: Angle,
    gap: f64,
    left: &[(usize, f64)],
    right: &[(usize, f64)],
    tol: &Tolerance,
) -> Result<Expansion, String> {
    let n = g.len();
    let mut too_wide = 0;
    let mut full = 0;
    for &(a, alpha) in left {
        for &(b, beta) in right {
            if alpha + beta > gap + tol.eps_angle {
                too_wide += 1;
                continue;
            }
            let arc = expanded_arc(nor1, gap, alpha, beta.min(gap - alpha).max(0.0), tol).map_err(|e| e.to_string())?;
            let sector = sector_on_arc(outer, arc, Some(&g.polygon), tol);
            let vb = vertices_between_indices(&sector, a, b, g, tol);
            match lowest_missing(n, &vb) {
                Some(dropped) => {
                    return Ok(Expansion {
                        alpha,
                        beta,
                        a,
                        b,
                        vertices_between: vb,
                        dropped,
                    })
                }
                None => full += 1,
            }
        }
    }
    Err(format!(
        "no expansion: {too_wide} vertex pair(s) need α + β > Δ, {full} cover every vertex"
    ))
}

/// Position of `q` in the argument's edge labelling, where `e_1 = q1` and
/// labels increase clockwise.
fn edge_label(q1: usize, q: usize, n: usize) -> usize {
    (q1 + n - q) % n + 1
}

/// `a < b < c` cyclically modulo `n` (labels 1-based).
fn cyclically_between(a: usize, b: usize, c: usize, n: usize) -> bool {
    let d1 = (b + n - a) % n;
    let mut d2 = (c + n - a) % n;
    if d2 == 0 {
        d2 = n;
    }
    d1 > 0 && d1 < d2
}

/// The first vertex strictly beyond the boundary of `h`, scanning clockwise
/// from the edge `start_edge` that the line leaves through on the left, whose
/// removal keeps `G ∩ h` inside the hull of the rest.
fn half_plane_cut(g: &Container, h: &HalfPlane<f64>, start_edge: usize, tol: &Tolerance) -> Option<usize> {
    let n = g.len();
    let cut = clip(&g.polygon, h, tol)?;
    let loose = Tolerance {
        eps: 10.0 * g.snap.max(tol.eps),
        ..*tol
    };
    (0..n)
        .map(|m| (start_edge + n - m) % n)
        .filter(|&v| h.excess(g.polygon.vertex(v)) > g.snap)
        .find(|&v| {
            let rest: Vec<Point<f64>> = (0..n).filter(|&k| k != v).map(|k| *g.polygon.vertex(k)).collect();
            match convex_hull(&rest, tol) {
                Ok(hull) if hull.len() >= 3 => cut.vertices().iter().all(|p| point_in_polygon(p, &hull, &loose)),
                _ => false,
            }
        })
}

/// Half-plane cut along the hull's supporting line turned clockwise by `turn`
/// from `nor1`.
fn rotated_cut(hull: &HullBody, g: &Container, nor1: Angle, turn: f64, tol: &Tolerance) -> Option<usize> {
    let theta = nor1.rotated(-turn);
    let h = HalfPlane::from_angle(theta, hull.h_at(theta.radians()));
    let start = omega_at(hull, theta, g, Side::L, tol);
    half_plane_cut(g, &h, start.edge, tol)
}

/// Endpoint of edge `q` nearest to `p`.
fn nearest_endpoint(g: &Container, q: usize, p: &Point<f64>) -> usize {
    let n = g.len();
    let (u, w) = (q, (q + 1) % n);
    if g.polygon.vertex(u).distance(p) <= g.polygon.vertex(w).distance(p) {
        u
    } else {
        w
    }
}

fn construct(scene: &Scene<f64>, lines: &[OrientedSupportLine<f64>]) -> Result<ConstructiveTrace, CarouselError> {
    let n = scene.n();
    let s = lines.len();
    let tol = scene.tol;
    let mut trace = ConstructiveTrace {
        s,
        n,
        route: Route::EmptyCsl,
        chosen_pair: None,
        inclusion_side: None,
        case: None,
        expansion: None,
        cut_turn: None,
        expansion_vertices: None,
        vertices_between: Vec::new(),
        witness: (0, 1),
        skipped: Vec::new(),
    };
    if s == 0 {
        trace.witness = (dominated_body(scene), 1);
        return Ok(trace);
    }
    let order = clockwise_lines(lines);
    let g = Container::new(&scene.g, &tol);
    let hull = HullBody::of(&scene.a0, &scene.a1, &tol);
    for m in 0..s {
        let l1 = &order[m];
        let l2 = &order[(m + 1) % s];
        let gap = pair_gap(l1, l2, s);
        let left = sweep(l1, l2, &g, Side::L, &tol)?;
        if left.covered_vertices.len() < 2 {
            continue;
        }
        let right = sweep(l1, l2, &g, Side::R, &tol)?;
        let choice = PairChoice {
            k: m + 1,
            normals: (l1.nor.radians(), l2.nor.radians()),
            gap,
            left_sweep: left.covered_vertices.clone(),
            right_sweep: right.covered_vertices.clone(),
        };
        let arc = NormalArc { start: l1.nor, width: gap };
        let Some(inclusion) = inclusion_for(scene, &arc) else {
            trace.skipped.push(SkippedPair {
                k: m + 1,
                reason: "neither body lies in the other's sector".into(),
            });
            continue;
        };
        let outer = scene.body(inclusion.outer());
        let left_turns = turn_angles(&hull, &g, &left.from, l1.nor.radians(), gap, Side::L, &left.covered_vertices, &tol);
        let (right_turns, case) = if !right.covered_vertices.is_empty() {
            let turns = turn_angles(&hull, &g, &right.from, l2.nor.radians(), gap, Side::R, &right.covered_vertices, &tol);
            (turns, None)
        } else {
            let q1 = left.from.edge;
            let j = edge_label(q1, left.to.edge, n);
            let k = edge_label(q1, right.from.edge, n);
            if k == j || k == 1 {
                // the exit edge lies along a common line; its endpoint is reached without turning
                let b = nearest_endpoint(&g, right.from.edge, &right.from.location);
                (vec![(b, 0.0)], Some(if k == j { 3 } else { 4 }))
            } else if cyclically_between(j, k, 1, n) {
                match half_plane_cut(&g, &l1.half_plane(), q1, &tol) {
                    Some(v) => {
                        trace.route = Route::HalfPlaneCut;
                        trace.chosen_pair = Some(choice);
                        trace.inclusion_side = Some(inclusion);
                        trace.case = Some(1);
                        trace.witness = (0, v + 1);
                        return Ok(trace);
                    }
                    None => {
                        trace.skipped.push(SkippedPair {
                            k: m + 1,
                            reason: "case 1: no vertex beyond l_1 can be dropped".into(),
                        });
                        continue;
                    }
                }
            } else {
                return Err(CarouselError::CaseTwoReached);
            }
        };
        match expand(outer, &g, l1.nor, gap, &left_turns, &right_turns, &tol) {
            Ok(e) => {
                trace.route = Route::SweepExpansion;
                trace.chosen_pair = Some(choice);
                trace.inclusion_side = Some(inclusion);
                trace.case = case;
                trace.expansion = Some((e.alpha, e.beta));
                trace.expansion_vertices = Some((e.a, e.b));
                trace.vertices_between = e.vertices_between;
                trace.witness = (inclusion.included(), e.dropped + 1);
                return Ok(trace);
            }
            Err(reason) => {
                let too_wide = match (left_turns.first(), right_turns.first()) {
                    (Some(&(_, alpha)), Some(&(_, beta))) => alpha + beta > gap + tol.eps_angle,
                    _ => false,
                };
                if too_wide && case.is_none() {
                    let turn = gap - right_turns[0].1;
                    if let Some(v) = rotated_cut(&hull, &g, l1.nor, turn, &tol) {
                        trace.route = Route::RotatedHalfPlane;
                        trace.chosen_pair = Some(choice);
                        trace.inclusion_side = Some(inclusion);
                        trace.cut_turn = Some(turn);
                        trace.witness = (0, v + 1);
                        return Ok(trace);
                    }
                }
                trace.skipped.push(SkippedPair { k: m + 1, reason });
            }
        }
    }
    let reasons: Vec<String> = trace.skipped.iter().map(|p| format!("pair {}: {}", p.k, p.reason)).collect();
    Err(CarouselError::ConstructionExhausted(reasons.join("; ")))
}

/// Runs the construction. Geometry is evaluated in floating point; the
/// witness is then re-validated in the scene's own arithmetic.
pub fn check_carousel_constructive<S: Scalar>(
    scene: &Scene<S>,
) -> Result<(CarouselCertificate, ConstructiveTrace), CarouselError> {
    let csl = scene.csl();
    let lines = finite_lines(&csl, scene.n())?;
    let trace = construct(&scene.to_f64(), &lines)?;
    let (i, j) = trace.witness;
    let (ok, min_margin) = revalidates(scene, i, j);
    if !ok {
        return Err(CarouselError::Disagreement { i, j });
    }
    let cert = CarouselCertificate {
        mode: S::MODE,
        verdict: Verdict::Holds { i, j, min_margin },
        csl_kind: csl.kind_name(),
        s: csl.count(),
        degeneracy: degeneracy(&csl),
        fragile: !S::is_exact() && min_margin.abs() <= FRAGILE_FACTOR * scene.tol.eps,
    };
    Ok((cert, trace))
}

/// Recomputes the witness recorded in `trace` from the scene, following the
/// recorded route, pair and expansion.
pub fn replay_trace<S: Scalar>(scene: &Scene<S>, trace: &ConstructiveTrace) -> Result<(usize, usize), CarouselError> {
    let fs = scene.to_f64();
    let tol = fs.tol;
    let lines = finite_lines(&scene.csl(), fs.n())?;
    let mismatch = || CarouselError::DegenerateScene("trace does not match the scene".into());
    if lines.len() != trace.s || fs.n() != trace.n {
        return Err(mismatch());
    }
    if trace.route == Route::EmptyCsl {
        return Ok((dominated_body(&fs), 1));
    }
    let choice = trace.chosen_pair.as_ref().ok_or_else(mismatch)?;
    let order = clockwise_lines(&lines);
    let s = order.len();
    let l1 = &order[choice.k - 1];
    let l2 = &order[choice.k % s];
    let gap = pair_gap(l1, l2, s);
    let g = Container::new(&fs.g, &tol);
    match trace.route {
        Route::RotatedHalfPlane => {
            let turn = trace.cut_turn.ok_or_else(mismatch)?;
            let hull = HullBody::of(&fs.a0, &fs.a1, &tol);
            let v = rotated_cut(&hull, &g, l1.nor, turn, &tol).ok_or_else(mismatch)?;
            Ok((0, v + 1))
        }
        Route::HalfPlaneCut => {
            let left = sweep(l1, l2, &g, Side::L, &tol)?;
            let v = half_plane_cut(&g, &l1.half_plane(), left.from.edge, &tol).ok_or_else(mismatch)?;
            Ok((0, v + 1))
        }
        _ => {
            let inclusion = trace.inclusion_side.ok_or_else(mismatch)?;
            let arc = NormalArc { start: l1.nor, width: gap };
            let outer = fs.body(inclusion.outer());
            if !body_in_sector(fs.body(inclusion.included()), outer, &arc, &tol) {
                return Err(mismatch());
            }
            let (alpha, beta) = trace.expansion.ok_or_else(mismatch)?;
            let (a, b) = trace.expansion_vertices.ok_or_else(mismatch)?;
            // the turned lines of the outer body must leave G at the recorded vertices
            let reach = 1e-6 * (1.0 + fs.g.max_abs_coordinate());
            let at_vertex = |q: BoundaryPoint, v: usize| match q.carrier {
                Carrier::Vertex(k) => k == v,
                Carrier::Edge(_) => q.location.distance(fs.g.vertex(v)) <= reach,
            };
            let qa = omega_at(outer, l1.nor.rotated(-alpha), &g, Side::L, &tol);
            let qb = omega_at(outer, l2.nor.rotated(beta), &g, Side::R, &tol);
            if trace.case.is_none() && !(at_vertex(qa, a) && at_vertex(qb, b)) {
                return Err(mismatch());
            }
            let arc = expanded_arc(l1.nor, gap, alpha, beta.min(gap - alpha).max(0.0), &tol)?;
            let sector = sector_on_arc(outer, arc, Some(&g.polygon), &tol);
            let vb = vertices_between_indices(&sector, a, b, &g, &tol);
            let dropped = lowest_missing(g.len(), &vb).ok_or_else(mismatch)?;
            Ok((inclusion.included(), dropped + 1))
        }
    }
}

/// Runs both procedures and checks that the constructive witness passes
/// brute-force containment.
pub fn cross_validate<S: Scalar>(scene: &Scene<S>) -> Result<CrossValidation, CarouselError> {
    let brute = check_carousel_bruteforce(scene);
    let (constructive, trace) = check_carousel_constructive(scene)?;
    let same_witness = brute.witness() == constructive.witness();
    Ok(CrossValidation {
        brute,
        constructive,
        trace,
        same_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carousel::revalidate;
    use crate::kernel::ConvexPolygon;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn triangle() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![p(-2.0, -1.0), p(2.0, -1.0), p(0.0, 2.0)], &Tolerance::default()).unwrap()
    }

    fn scene(a0: ConvexBody<f64>, a1: ConvexBody<f64>, g: ConvexPolygon<f64>) -> Scene<f64> {
        Scene::new(a0, a1, g, Tolerance::default()).unwrap()
    }

    #[test]
    fn two_disks_in_triangle() {
        let sc = scene(
            ConvexBody::disk(p(-0.3, 0.0), 0.1).unwrap(),
            ConvexBody::disk(p(0.3, 0.0), 0.1).unwrap(),
            triangle(),
        );
        let (cert, trace) = check_carousel_constructive(&sc).unwrap();
        let (i, j) = cert.witness().unwrap();
        assert!(revalidate(&sc, i, j).is_contained());
        assert_eq!(trace.s, 2);
        assert_eq!(replay_trace(&sc, &trace).unwrap(), trace.witness);
    }

    #[test]
    fn concentric_disks_take_the_empty_shortcut() {
        let sc = scene(
            ConvexBody::disk(p(0.0, 0.0), 1.0).unwrap(),
            ConvexBody::disk(p(0.0, 0.0), 0.3).unwrap(),
            ConvexPolygon::new(vec![p(-2.0, -2.0), p(2.0, -2.0), p(2.0, 2.0), p(-2.0, 2.0)], &Tolerance::default())
                .unwrap(),
        );
        let (cert, trace) = check_carousel_constructive(&sc).unwrap();
        assert_eq!(trace.route, Route::EmptyCsl);
        assert_eq!(cert.witness(), Some((1, 1)));
    }

    #[test]
    fn s_at_least_n_is_a_precondition_violation() {
        // two crossing thin rectangles have four common supporting lines
        let tol = Tolerance::default();
        let rect = |x0: f64, y0: f64, x1: f64, y1: f64| {
            ConvexBody::polygon(vec![p(x0, y0), p(x1, y0), p(x1, y1), p(x0, y1)], &tol).unwrap()
        };
        let sc = scene(rect(-1.0, -0.1, 1.0, 0.1), rect(-0.1, -1.0, 0.1, 1.0), triangle_big());
        assert_eq!(
            check_carousel_constructive(&sc).unwrap_err(),
            CarouselError::PreconditionSNotLessThanN { s: 4, n: 3 }
        );
    }

    fn triangle_big() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![p(-4.0, -2.0), p(4.0, -2.0), p(0.0, 5.0)], &Tolerance::default()).unwrap()
    }

    #[test]
    fn identical_bodies_are_degenerate() {
        let d = ConvexBody::disk(p(0.0, 0.0), 0.4).unwrap();
        let sc = scene(d.clone(), d, triangle());
        assert!(matches!(
            check_carousel_constructive(&sc),
            Err(CarouselError::DegenerateScene(_))
        ));
    }

    #[test]
    fn labels_and_cyclic_order() {
        assert_eq!(edge_label(2, 2, 5), 1);
        assert_eq!(edge_label(2, 1, 5), 2);
        assert_eq!(edge_label(2, 3, 5), 5);
        assert!(cyclically_between(3, 4, 1, 5));
        assert!(cyclically_between(3, 5, 1, 5));
        assert!(!cyclically_between(3, 2, 1, 5));
        assert!(cyclically_between(1, 2, 3, 5));
    }

    #[test]
    fn cross_validation_on_polygons() {
        let tol = Tolerance::default();
        let g = ConvexPolygon::new(
            vec![p(0.0, 0.0), p(6.0, 0.0), p(8.0, 4.0), p(4.0, 7.0), p(-1.0, 4.0)],
            &tol,
        )
        .unwrap();
        let a0 = ConvexBody::polygon(vec![p(1.0, 1.0), p(3.0, 1.5), p(2.0, 3.0)], &tol).unwrap();
        let a1 = ConvexBody::polygon(vec![p(4.0, 2.0), p(6.0, 3.0), p(4.5, 5.0), p(3.5, 4.0)], &tol).unwrap();
        let sc = scene(a0, a1, g);
        let cv = cross_validate(&sc).unwrap();
        assert!(cv.brute.holds());
        assert_eq!(replay_trace(&sc, &cv.trace).unwrap(), cv.trace.witness);
    }
}
