//! Common supporting lines of two bodies via the support difference
//! `δ(θ) = h_{A0}(θ) − h_{A1}(θ)`, their cyclic order, and slide-turning.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::bodies::ConvexBody;
use crate::kernel::{direction_cmp, Angle, HalfPlane, Point};
use crate::numeric::{bisect_predicate, bisect_root, golden_min};
use crate::scalar::{Scalar, Tolerance};

/// Samples per full turn for smooth or mixed body pairs.
pub const CSL_GRID: usize = 4096;

/// Float-mode zero arcs narrower than this are treated as a single
/// (degenerate) line rather than a continuum.
const MIN_ARC_WIDTH: f64 = 1e-6;

/// A supporting line oriented by its outward normal.
///
/// `normal` is the direction vector used for exact evaluation (unit length in
/// float mode); `offset = normal · contact`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedSupportLine<S> {
    pub normal: Point<S>,
    pub nor: Angle,
    pub offset: S,
    pub contact0: Point<S>,
    pub contact1: Option<Point<S>>,
    /// Set when `δ` touches zero here without changing sign.
    pub tangential: bool,
}

impl<S: Scalar> OrientedSupportLine<S> {
    /// Direction along which the supported bodies lie on the left.
    pub fn dir_l(&self) -> Angle {
        self.nor.rotated(FRAC_PI_2)
    }

    pub fn dir_r(&self) -> Angle {
        self.nor.rotated(-FRAC_PI_2)
    }

    pub fn half_plane(&self) -> HalfPlane<S> {
        HalfPlane::new(self.normal.clone(), self.offset.clone())
    }

    pub fn to_f64(&self) -> OrientedSupportLine<f64> {
        let scale = self.normal.norm_f64();
        OrientedSupportLine {
            normal: self.nor.unit(),
            nor: self.nor,
            offset: self.offset.to_f64() / scale,
            contact0: self.contact0.to_f64(),
            contact1: self.contact1.as_ref().map(Point::to_f64),
            tangential: self.tangential,
        }
    }
}

impl OrientedSupportLine<f64> {
    /// The supporting line of `body` with outward normal `theta`.
    pub fn of_body(body: &ConvexBody<f64>, theta: Angle, tol: &Tolerance) -> Self {
        let s = body.support(theta, tol);
        Self {
            normal: theta.unit(),
            nor: theta,
            offset: s.value,
            contact0: s.contact,
            contact1: None,
            tangential: false,
        }
    }
}

/// Counterclockwise arc of normals `[start, start + width]` on which `δ ≡ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroArc {
    pub start: Angle,
    pub end: Angle,
}

impl ZeroArc {
    pub fn width(&self) -> f64 {
        let w = self.start.ccw_gap(self.end);
        if w == 0.0 {
            TAU
        } else {
            w
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CslResult<S> {
    /// Lines sorted by `nor` ascending (counterclockwise).
    Finite(Vec<OrientedSupportLine<S>>),
    /// `δ` vanishes on whole arcs; `lines` holds any isolated zeros besides.
    InfiniteArcs {
        arcs: Vec<ZeroArc>,
        lines: Vec<OrientedSupportLine<S>>,
    },
    IdenticalBodies,
}

impl<S: Scalar> CslResult<S> {
    pub fn lines(&self) -> Option<&[OrientedSupportLine<S>]> {
        match self {
            Self::Finite(lines) => Some(lines),
            _ => None,
        }
    }

    pub fn count(&self) -> Option<usize> {
        self.lines().map(<[_]>::len)
    }

    /// Finite with every zero of `δ` a sign change.
    pub fn is_simple(&self) -> bool {
        matches!(self, Self::Finite(lines) if lines.iter().all(|l| !l.tangential))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Finite(_) => "Finite",
            Self::InfiniteArcs { .. } => "InfiniteArcs",
            Self::IdenticalBodies => "IdenticalBodies",
        }
    }

    pub fn to_f64(&self) -> CslResult<f64> {
        match self {
            Self::Finite(lines) => CslResult::Finite(lines.iter().map(OrientedSupportLine::to_f64).collect()),
            Self::InfiniteArcs { arcs, lines } => CslResult::InfiniteArcs {
                arcs: arcs.clone(),
                lines: lines.iter().map(OrientedSupportLine::to_f64).collect(),
            },
            Self::IdenticalBodies => CslResult::IdenticalBodies,
        }
    }
}

/// `δ(θ) = h_{A0}(θ) − h_{A1}(θ)`.
pub fn delta(a0: &ConvexBody<f64>, a1: &ConvexBody<f64>, theta: f64) -> f64 {
    a0.h(theta) - a1.h(theta)
}

/// `δ` along an arbitrary (possibly non-unit) direction.
pub fn delta_dir<S: Scalar>(a0: &ConvexBody<S>, a1: &ConvexBody<S>, d: &Point<S>) -> S {
    a0.value_dir(d) - a1.value_dir(d)
}

/// All common supporting lines of `a0` and `a1`.
///
/// Polygon and point pairs are solved combinatorially: between consecutive
/// edge normals both support functions are attained at fixed vertices `v`,
/// `w`, so `δ(η) = (v − w) · η` there and its zeros are among the normals
/// perpendicular to some `v − w` or the edge normals themselves. Smooth or
/// mixed pairs are sampled and refined numerically.
pub fn common_supporting_lines<S: Scalar>(a0: &ConvexBody<S>, a1: &ConvexBody<S>, tol: &Tolerance) -> CslResult<S> {
    match (a0.vertices(), a1.vertices()) {
        (Some(v0), Some(v1)) => polygonal_csl(a0, a1, &v0, &v1, tol),
        _ => match smooth_csl(&a0.to_f64(), &a1.to_f64(), tol) {
            CslResult::Finite(lines) => CslResult::Finite(lines.iter().map(line_from_f64).collect()),
            CslResult::InfiniteArcs { arcs, lines } => CslResult::InfiniteArcs {
                arcs,
                lines: lines.iter().map(line_from_f64).collect(),
            },
            CslResult::IdenticalBodies => CslResult::IdenticalBodies,
        },
    }
}

fn line_from_f64<S: Scalar>(l: &OrientedSupportLine<f64>) -> OrientedSupportLine<S> {
    OrientedSupportLine {
        normal: Point::from_f64(&l.normal),
        nor: l.nor,
        offset: S::from_f64(l.offset),
        contact0: Point::from_f64(&l.contact0),
        contact1: l.contact1.as_ref().map(Point::from_f64),
        tangential: l.tangential,
    }
}

fn edge_normals<S: Scalar>(vs: &[Point<S>]) -> Vec<Point<S>> {
    let n = vs.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n)
        .map(|k| {
            let e = &vs[(k + 1) % n] - &vs[k];
            Point::new(e.y.clone(), -e.x.clone())
        })
        .collect()
}

/// A direction strictly inside the counterclockwise arc from `d1` to `d2`
/// (the whole circle minus `d1` when they coincide).
fn arc_midpoint<S: Scalar>(d1: &Point<S>, d2: &Point<S>) -> Point<S> {
    let c = d1.cross(d2);
    if c > S::zero() {
        d1 + d2
    } else if c < S::zero() {
        -(d1 + d2)
    } else if d1.dot(d2) < S::zero() {
        d1.perp()
    } else {
        -d1.clone()
    }
}

fn sign_of<S: Scalar>(v: &S, slack: f64) -> Ordering {
    if S::is_exact() {
        v.sign_within(0.0)
    } else {
        v.sign_within(slack)
    }
}

fn polygonal_csl<S: Scalar>(
    a0: &ConvexBody<S>,
    a1: &ConvexBody<S>,
    v0: &[Point<S>],
    v1: &[Point<S>],
    tol: &Tolerance,
) -> CslResult<S> {
    let mut cands: Vec<Point<S>> = Vec::new();
    for v in v0 {
        for w in v1 {
            let e = w - v;
            if e.is_zero() {
                continue;
            }
            let p = e.perp();
            cands.push(-p.clone());
            cands.push(p);
        }
    }
    cands.extend(edge_normals(v0));
    cands.extend(edge_normals(v1));
    if !S::is_exact() {
        cands = cands
            .into_iter()
            .filter(|d| d.norm_f64() > 0.0)
            .map(|d| Point::from_f64(&d.to_f64().normalized()))
            .collect();
    }
    cands.sort_by(direction_cmp);
    cands.dedup_by(|a, b| direction_cmp(a, b) == Ordering::Equal);
    if !S::is_exact() && cands.len() > 1 {
        let mut kept: Vec<Point<S>> = Vec::with_capacity(cands.len());
        for d in cands {
            let close = kept
                .last()
                .map(|k| Angle::new(k.to_f64().angle()).approx_eq(Angle::new(d.to_f64().angle()), tol.eps_angle))
                .unwrap_or(false);
            if !close {
                kept.push(d);
            }
        }
        if kept.len() > 1 {
            let (first, last) = (&kept[0], &kept[kept.len() - 1]);
            if Angle::new(first.to_f64().angle()).approx_eq(Angle::new(last.to_f64().angle()), tol.eps_angle) {
                kept.pop();
            }
        }
        cands = kept;
    }

    if cands.is_empty() {
        let probe = Point::new(S::one(), S::zero());
        if sign_of(&delta_dir(a0, a1, &probe), tol.eps) == Ordering::Equal {
            return CslResult::IdenticalBodies;
        }
        return CslResult::Finite(Vec::new());
    }

    let k = cands.len();
    let at_zero: Vec<bool> = cands
        .iter()
        .map(|d| sign_of(&delta_dir(a0, a1, d), tol.eps * d.norm_f64()) == Ordering::Equal)
        .collect();
    // mid_sign[i]: sign of δ strictly between cands[i] and cands[i + 1]
    let mid_sign: Vec<Ordering> = (0..k)
        .map(|i| {
            let m = arc_midpoint(&cands[i], &cands[(i + 1) % k]);
            sign_of(&delta_dir(a0, a1, &m), tol.eps * m.norm_f64())
        })
        .collect();

    if at_zero.iter().all(|z| *z) && mid_sign.iter().all(|s| *s == Ordering::Equal) {
        return CslResult::IdenticalBodies;
    }

    let angle_of = |d: &Point<S>| Angle::new(d.to_f64().angle());
    let mut arcs: Vec<ZeroArc> = Vec::new();
    let mut in_arc = vec![false; k];
    // collect maximal runs of zero gaps, starting after a nonzero gap
    if let Some(start) = (0..k).find(|&i| mid_sign[i] != Ordering::Equal) {
        let mut i = (start + 1) % k;
        let mut visited = 0;
        while visited < k {
            if mid_sign[i] == Ordering::Equal {
                let first = i;
                let mut last = i;
                while mid_sign[(last + 1) % k] == Ordering::Equal && visited < k {
                    last = (last + 1) % k;
                    visited += 1;
                }
                let mut j = first;
                loop {
                    in_arc[j] = true;
                    if j == (last + 1) % k {
                        break;
                    }
                    j = (j + 1) % k;
                }
                arcs.push(ZeroArc {
                    start: angle_of(&cands[first]),
                    end: angle_of(&cands[(last + 1) % k]),
                });
                i = (last + 1) % k;
            } else {
                i = (i + 1) % k;
            }
            visited += 1;
        }
    }

    let mut lines = Vec::new();
    let mut narrow_arcs = Vec::new();
    if !S::is_exact() {
        arcs.retain(|a| {
            if a.width() < MIN_ARC_WIDTH {
                narrow_arcs.push(*a);
                false
            } else {
                true
            }
        });
    }
    for i in 0..k {
        if !at_zero[i] {
            continue;
        }
        let before = mid_sign[(i + k - 1) % k];
        let after = mid_sign[i];
        if in_arc[i] {
            let inside_kept_arc = arcs.iter().any(|a| {
                let th = angle_of(&cands[i]);
                a.start.ccw_gap(th) <= a.width() + tol.eps_angle
            });
            if inside_kept_arc {
                continue;
            }
        }
        let d = &cands[i];
        let tangential = before == after && before != Ordering::Equal || in_arc[i];
        lines.push(make_line(a0, a1, d.clone(), tangential, tol));
    }
    if !S::is_exact() && !narrow_arcs.is_empty() {
        // keep one representative per collapsed arc
        lines = collapse_near_duplicates(lines, MIN_ARC_WIDTH);
    }

    if arcs.is_empty() {
        lines.sort_by(|a, b| a.nor.radians().total_cmp(&b.nor.radians()));
        CslResult::Finite(lines)
    } else {
        CslResult::InfiniteArcs { arcs, lines }
    }
}

fn collapse_near_duplicates<S: Scalar>(mut lines: Vec<OrientedSupportLine<S>>, width: f64) -> Vec<OrientedSupportLine<S>> {
    lines.sort_by(|a, b| a.nor.radians().total_cmp(&b.nor.radians()));
    let mut out: Vec<OrientedSupportLine<S>> = Vec::with_capacity(lines.len());
    for l in lines {
        match out.last_mut() {
            Some(prev) if prev.nor.approx_eq(l.nor, width) => prev.tangential = true,
            _ => out.push(l),
        }
    }
    if out.len() > 1 && out[0].nor.approx_eq(out[out.len() - 1].nor, width) {
        out.pop();
        out[0].tangential = true;
    }
    out
}

fn make_line<S: Scalar>(
    a0: &ConvexBody<S>,
    a1: &ConvexBody<S>,
    d: Point<S>,
    tangential: bool,
    tol: &Tolerance,
) -> OrientedSupportLine<S> {
    let s0 = a0.support_dir(&d, tol);
    let s1 = a1.support_dir(&d, tol);
    OrientedSupportLine {
        nor: Angle::new(d.to_f64().angle()),
        normal: d,
        offset: s0.value,
        contact0: s0.contact,
        contact1: Some(s1.contact),
        tangential,
    }
}

fn smooth_csl(a0: &ConvexBody<f64>, a1: &ConvexBody<f64>, tol: &Tolerance) -> CslResult<f64> {
    let n = CSL_GRID;
    let step = TAU / n as f64;
    let f = |th: f64| delta(a0, a1, th);
    let theta = |i: usize| i as f64 * step;
    let vals: Vec<f64> = (0..n).map(|i| f(theta(i))).collect();
    let sign = |v: f64| v.sign_within(tol.eps);
    let signs: Vec<Ordering> = vals.iter().map(|v| sign(*v)).collect();

    if signs.iter().all(|s| *s == Ordering::Equal) {
        return CslResult::IdenticalBodies;
    }

    let mut roots: Vec<(f64, bool)> = Vec::new();
    let mut arcs: Vec<ZeroArc> = Vec::new();
    let start = (0..n).find(|&i| signs[i] != Ordering::Equal).unwrap();
    let mut i = start;
    let mut visited = 0;
    while visited < n {
        let next = (i + 1) % n;
        if signs[next] != Ordering::Equal {
            if signs[next] != signs[i] {
                // simple crossing inside (θ_i, θ_{i+1})
                let lo = theta(i);
                let r = bisect_root(f, lo, lo + step, 1e-12);
                roots.push((r, false));
            }
            i = next;
            visited += 1;
            continue;
        }
        // run of zero samples starting at `next`
        let mut last = next;
        let mut run = 1;
        while signs[(last + 1) % n] == Ordering::Equal {
            last = (last + 1) % n;
            run += 1;
        }
        let after = (last + 1) % n;
        let lo = theta(i);
        let hi_steps = ((after + n - i) % n) as f64;
        let hi = lo + hi_steps * step;
        let is_zero = |t: f64| f(t).abs() <= tol.eps;
        if run >= 2 {
            let a_start = bisect_predicate(is_zero, lo, lo + step, 1e-10);
            let a_end = bisect_predicate(|t| !is_zero(t), hi - step, hi, 1e-10);
            let width = a_end - a_start;
            if width >= MIN_ARC_WIDTH {
                arcs.push(ZeroArc {
                    start: Angle::new(a_start),
                    end: Angle::new(a_end),
                });
            } else {
                roots.push((0.5 * (a_start + a_end), true));
            }
        } else if signs[after] != signs[i] {
            roots.push((bisect_root(f, lo, hi, 1e-12), false));
        } else {
            let (t, _) = golden_min(|t| f(t).abs(), lo, hi, 1e-12);
            roots.push((t, true));
        }
        visited += (after + n - i) % n;
        i = after;
    }

    // touching zeros that fall between samples
    let reach = a0.reach() + a1.reach();
    let threshold = 2.0 * reach * step * step + tol.eps;
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        if signs[i] == Ordering::Equal || signs[prev] != signs[i] || signs[next] != signs[i] {
            continue;
        }
        let (a, b, c) = (vals[prev].abs(), vals[i].abs(), vals[next].abs());
        if b <= a && b <= c && b < threshold {
            let lo = theta(i) - step;
            let (t, v) = golden_min(|t| f(t).abs(), lo, lo + 2.0 * step, 1e-12);
            if v <= tol.eps {
                roots.push((t, true));
            }
        }
    }

    let mut lines: Vec<OrientedSupportLine<f64>> = roots
        .into_iter()
        .map(|(t, tangential)| make_line(a0, a1, Angle::new(t).unit(), tangential, tol))
        .collect();
    lines.sort_by(|a, b| a.nor.radians().total_cmp(&b.nor.radians()));
    lines = dedupe_by_angle(lines, tol.eps_angle.max(1e-11));
    if !arcs.is_empty() {
        lines.retain(|l| {
            !arcs
                .iter()
                .any(|a| a.start.ccw_gap(l.nor) <= a.width() + tol.eps_angle)
        });
        return CslResult::InfiniteArcs { arcs, lines };
    }
    CslResult::Finite(lines)
}

fn dedupe_by_angle(lines: Vec<OrientedSupportLine<f64>>, width: f64) -> Vec<OrientedSupportLine<f64>> {
    let mut out: Vec<OrientedSupportLine<f64>> = Vec::with_capacity(lines.len());
    for l in lines {
        match out.last() {
            Some(prev) if prev.nor.approx_eq(l.nor, width) => {}
            _ => out.push(l),
        }
    }
    if out.len() > 1 && out[0].nor.approx_eq(out[out.len() - 1].nor, width) {
        out.pop();
    }
    out
}

/// Angular gaps between cyclically consecutive lines: gap `k` is the
/// counterclockwise angle from `lines[k]` to `lines[k + 1]`, which is the
/// clockwise angle from `lines[k + 1]` to `lines[k]`. A single line wraps
/// to `2π`.
pub fn adjacency_gaps<S: Scalar>(lines: &[OrientedSupportLine<S>]) -> Vec<f64> {
    let s = lines.len();
    if s == 1 {
        return vec![TAU];
    }
    (0..s)
        .map(|k| {
            let g = lines[k].nor.ccw_gap(lines[(k + 1) % s].nor);
            if g == 0.0 {
                TAU
            } else {
                g
            }
        })
        .collect()
}

/// Slide-turns `base` along `body` clockwise by `alpha` (negative values turn
/// counterclockwise): the supporting line of `body` with normal
/// `nor(base) − alpha`.
pub fn slide_turn(
    body: &ConvexBody<f64>,
    base: &OrientedSupportLine<f64>,
    alpha: f64,
    tol: &Tolerance,
) -> OrientedSupportLine<f64> {
    if alpha == 0.0 {
        return base.clone();
    }
    OrientedSupportLine::of_body(body, base.nor.rotated(-alpha), tol)
}

/// Sign of `δ` on 64 probes strictly inside the counterclockwise arc from
/// `from` to `from + width`: `Some(sign)` if constant, `None` if mixed or zero.
pub fn probe_gap_sign(a0: &ConvexBody<f64>, a1: &ConvexBody<f64>, from: Angle, width: f64, tol: &Tolerance) -> Option<Ordering> {
    let mut seen: Option<Ordering> = None;
    for k in 1..=64 {
        let t = from.radians() + width * k as f64 / 65.0;
        let s = delta(a0, a1, t).sign_within(tol.eps);
        if s == Ordering::Equal {
            return None;
        }
        match seen {
            None => seen = Some(s),
            Some(p) if p != s => return None,
            _ => {}
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn t() -> Tolerance {
        Tolerance::default()
    }

    fn disk(x: f64, y: f64, r: f64) -> ConvexBody<f64> {
        ConvexBody::disk(p(x, y), r).unwrap()
    }

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexBody<f64> {
        ConvexBody::polygon(vec![p(x0, y0), p(x1, y0), p(x1, y1), p(x0, y1)], &t()).unwrap()
    }

    fn normals<S: Scalar>(r: &CslResult<S>) -> Vec<f64> {
        r.lines().unwrap().iter().map(|l| l.nor.radians()).collect()
    }

    #[test]
    fn delta_examples() {
        let (a, b) = (disk(0., 0., 1.), disk(4., 0., 1.));
        assert!(delta(&a, &b, FRAC_PI_2).abs() < 1e-15);
        assert!((delta(&a, &b, 0.0) + 4.0).abs() < 1e-15);
        let (s0, s1) = (rect(0., 0., 1., 1.), rect(2., 0., 3., 1.));
        assert!(delta(&s0, &s1, FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn equal_disks_have_two_horizontal_lines() {
        let r = common_supporting_lines(&disk(0., 0., 1.), &disk(4., 0., 1.), &t());
        let ns = normals(&r);
        assert_eq!(ns.len(), 2);
        assert!((ns[0] - FRAC_PI_2).abs() < 1e-9);
        assert!((ns[1] - 3.0 * FRAC_PI_2).abs() < 1e-9);
        let lines = r.lines().unwrap();
        assert!((lines[0].offset - 1.0).abs() < 1e-9);
        assert!(lines.iter().all(|l| !l.tangential));
    }

    #[test]
    fn unequal_disks_match_closed_form() {
        let r = common_supporting_lines(&disk(0., 0., 1.), &disk(6., 0., 2.), &t());
        let ns = normals(&r);
        let theta = (-1.0f64 / 6.0).acos();
        assert_eq!(ns.len(), 2);
        assert!((ns[0] - theta).abs() < 1e-9, "{ns:?}");
        assert!((ns[1] - (TAU - theta)).abs() < 1e-9);
        for l in r.lines().unwrap() {
            assert!(delta(&disk(0., 0., 1.), &disk(6., 0., 2.), l.nor.radians()).abs() <= 1e-9);
        }
    }

    #[test]
    fn identical_bodies() {
        let sq = rect(0., 0., 1., 1.);
        assert_eq!(common_supporting_lines(&sq, &sq, &t()), CslResult::IdenticalBodies);
        let d = disk(1., 1., 0.5);
        assert_eq!(common_supporting_lines(&d, &d, &t()), CslResult::IdenticalBodies);
    }

    #[test]
    fn side_by_side_squares() {
        let r = common_supporting_lines(&rect(0., 0., 1., 1.), &rect(2., 0., 3., 1.), &t());
        let ns = normals(&r);
        assert_eq!(ns.len(), 2);
        assert!((ns[0] - FRAC_PI_2).abs() < 1e-12);
        assert!((ns[1] - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn exact_squares_agree() {
        let q = |x: i64, y: i64| Point::new(Rational::from_i64(x), Rational::from_i64(y));
        let a = ConvexBody::polygon(vec![q(0, 0), q(1, 0), q(1, 1), q(0, 1)], &t()).unwrap();
        let b = ConvexBody::polygon(vec![q(2, 0), q(3, 0), q(3, 1), q(2, 1)], &t()).unwrap();
        let r = common_supporting_lines(&a, &b, &t());
        let ns = normals(&r);
        assert_eq!(ns.len(), 2);
        assert!((ns[0] - FRAC_PI_2).abs() < 1e-12);
        let l = &r.lines().unwrap()[0];
        // exact offset along the (non-unit) normal
        assert_eq!(l.half_plane().excess(&q(5, 1)), Rational::zero());
    }

    #[test]
    fn two_points_give_one_line_twice() {
        let r = common_supporting_lines(&ConvexBody::point(p(0., 0.)), &ConvexBody::point(p(1., 0.)), &t());
        let ns = normals(&r);
        assert_eq!(ns.len(), 2);
        assert!((ns[0] - FRAC_PI_2).abs() < 1e-12);
        assert!((ns[1] - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn shared_vertex_gives_zero_arc() {
        let a = ConvexBody::polygon(vec![p(0., 0.), p(2., 0.), p(2., 2.)], &t()).unwrap();
        let b = ConvexBody::polygon(vec![p(0., 0.), p(2., 2.), p(-1., 2.)], &t()).unwrap();
        match common_supporting_lines(&a, &b, &t()) {
            CslResult::InfiniteArcs { arcs, .. } => {
                assert!(!arcs.is_empty());
                assert!(arcs.iter().all(|a| a.width() > 0.0));
            }
            other => panic!("expected arcs, got {other:?}"),
        }
    }

    #[test]
    fn nested_disks_have_no_lines() {
        let r = common_supporting_lines(&disk(0., 0., 1.), &disk(0., 0., 0.3), &t());
        assert_eq!(r, CslResult::Finite(vec![]));
    }

    #[test]
    fn internally_tangent_disks_are_tangential() {
        let r = common_supporting_lines(&disk(0., 0., 1.), &disk(0.5, 0., 0.5), &t());
        let lines = r.lines().unwrap();
        assert_eq!(lines.len(), 1);
        assert!(lines[0].tangential);
        assert!(lines[0].nor.approx_eq(Angle::new(0.0), 1e-6));
    }

    #[test]
    fn gaps() {
        let r = common_supporting_lines(&disk(0., 0., 1.), &disk(4., 0., 1.), &t());
        let g = adjacency_gaps(r.lines().unwrap());
        assert!((g[0] - PI).abs() < 1e-9 && (g[1] - PI).abs() < 1e-9);
        let one = OrientedSupportLine::of_body(&disk(0., 0., 1.), Angle::new(0.3), &t());
        assert_eq!(adjacency_gaps(&[one]), vec![TAU]);
    }

    #[test]
    fn slide_turning() {
        let d = disk(0., 0., 1.);
        let base = OrientedSupportLine::of_body(&d, Angle::new(0.0), &t());
        let turned = slide_turn(&d, &base, FRAC_PI_2, &t());
        assert!(turned.nor.approx_eq(Angle::new(3.0 * FRAC_PI_2), 1e-15));
        assert!(turned.contact0.approx_eq(&p(0., -1.), &t()));
        assert_eq!(slide_turn(&d, &base, 0.0, &t()), base);

        let sq = rect(0., 0., 1., 1.);
        let top = OrientedSupportLine::of_body(&sq, Angle::new(FRAC_PI_2), &t());
        let turned = slide_turn(&sq, &top, std::f64::consts::FRAC_PI_4, &t());
        assert!(turned.nor.approx_eq(Angle::new(std::f64::consts::FRAC_PI_4), 1e-15));
        assert!((turned.offset - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert_eq!(turned.contact0, p(1., 1.));
    }
}
