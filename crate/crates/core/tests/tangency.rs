use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

use carousel_core::bodies::ConvexBody;
use carousel_core::constructions::sharpness_construct;
use carousel_core::kernel::{convex_hull, Angle, Point};
use carousel_core::numeric::bisect_root;
use carousel_core::scalar::{Rational, Tolerance};
use carousel_core::tangency::{
    adjacency_gaps, common_supporting_lines, delta, probe_gap_sign, slide_turn, CslResult, OrientedSupportLine,
};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexBody<f64> {
    ConvexBody::polygon(vec![p(x0, y0), p(x1, y0), p(x1, y1), p(x0, y1)], &Tolerance::default()).unwrap()
}

fn exact_polygon(raw: &[(i64, i64)]) -> Option<ConvexBody<Rational>> {
    let pts: Vec<Point<Rational>> = raw
        .iter()
        .map(|&(x, y)| Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into())))
        .collect();
    let hull = convex_hull(&pts, &Tolerance::default()).ok()?;
    (hull.len() >= 3).then_some(ConvexBody::Polygon(hull))
}

fn float_body() -> impl Strategy<Value = ConvexBody<f64>> {
    let c = || -4.0..4.0f64;
    prop_oneof![
        prop::collection::vec((c(), c()), 3..10).prop_filter_map("degenerate hull", |v| {
            let pts: Vec<_> = v.into_iter().map(|(x, y)| p(x, y)).collect();
            let hull = convex_hull(&pts, &Tolerance::default()).ok()?;
            (hull.len() >= 3).then_some(ConvexBody::Polygon(hull))
        }),
        (c(), c(), 0.2..2.0f64).prop_map(|(x, y, r)| ConvexBody::disk(p(x, y), r).unwrap()),
        (c(), c(), 0.2..2.0f64, 0.1..1.0f64, 0.0..PI)
            .prop_map(|(x, y, a, f, t)| ConvexBody::ellipse(p(x, y), a, a * f, Angle::new(t)).unwrap()),
        (c(), c()).prop_map(|(x, y)| ConvexBody::point(p(x, y))),
    ]
}

/// Zeros of `δ` from sign changes on a uniform grid, refined by bisection.
fn sampled_zeros(a0: &ConvexBody<f64>, a1: &ConvexBody<f64>, grid: usize) -> Vec<f64> {
    let f = |t: f64| delta(a0, a1, t);
    let step = TAU / grid as f64;
    let mut out = Vec::new();
    let mut prev = f(0.0);
    let mut prev_t = 0.0;
    // a zero landing on a grid point is recorded once, not again as the
    // sign change across it
    let mut on_zero = prev == 0.0;
    if on_zero {
        out.push(0.0);
    }
    for k in 1..=grid {
        // the last step closes the circle against the value at 0
        let t = step * k as f64;
        let cur = if k == grid { f(0.0) } else { f(t) };
        if cur == 0.0 {
            if !on_zero && k < grid {
                out.push(Angle::new(t).radians());
            }
            on_zero = true;
            continue;
        }
        if !on_zero && (prev < 0.0) != (cur < 0.0) {
            out.push(Angle::new(bisect_root(f, prev_t, t, 1e-14)).radians());
        }
        on_zero = false;
        prev = cur;
        prev_t = t;
    }
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn delta_examples() {
    let d0 = ConvexBody::disk(p(0.0, 0.0), 1.0).unwrap();
    let d1 = ConvexBody::disk(p(4.0, 0.0), 1.0).unwrap();
    assert!(delta(&d0, &d1, FRAC_PI_2).abs() < 1e-12);
    assert!((delta(&d0, &d1, 0.0) + 4.0).abs() < 1e-12);
    assert!(delta(&rect(0.0, 0.0, 1.0, 1.0), &rect(2.0, 0.0, 3.0, 1.0), FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn csl_examples() {
    let tol = Tolerance::default();
    let sq = rect(0.0, 0.0, 1.0, 1.0);
    assert_eq!(common_supporting_lines(&sq, &sq, &tol), CslResult::IdenticalBodies);

    let other = rect(2.0, 0.0, 3.0, 1.0);
    let csl = common_supporting_lines(&sq, &other, &tol);
    let lines = csl.lines().unwrap();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].nor.distance(Angle::new(FRAC_PI_2)) < 1e-12);
    assert!(lines[1].nor.distance(Angle::new(3.0 * FRAC_PI_2)) < 1e-12);
    // a fine grid sees exactly these two isolated zeros
    let zeros = sampled_zeros(&sq, &other, 1_000_000);
    assert_eq!(zeros.len(), 2);
    let gaps = adjacency_gaps(lines);
    assert!(gaps.iter().all(|g| (g - PI).abs() < 1e-12));
}

#[test]
fn gap_examples() {
    let tol = Tolerance::default();
    let line = OrientedSupportLine::of_body(&ConvexBody::disk(p(0.0, 0.0), 1.0).unwrap(), Angle::new(0.3), &tol);
    assert_eq!(adjacency_gaps(&[line]), vec![TAU]);

    let inst = sharpness_construct(4).unwrap();
    let scene = inst.scene().unwrap();
    let csl = common_supporting_lines(&scene.a0, &scene.a1, &tol);
    let gaps = adjacency_gaps(csl.lines().unwrap());
    assert_eq!(gaps.len(), 4);
    assert!(gaps.iter().all(|g| (g - FRAC_PI_2).abs() < 1e-9), "{gaps:?}");
}

#[test]
fn slide_turn_examples() {
    let tol = Tolerance::default();
    let disk = ConvexBody::disk(p(0.0, 0.0), 1.0).unwrap();
    let base = OrientedSupportLine::of_body(&disk, Angle::new(0.0), &tol);
    let turned = slide_turn(&disk, &base, FRAC_PI_2, &tol);
    assert!(turned.nor.distance(Angle::new(3.0 * FRAC_PI_2)) < 1e-12);
    assert!((turned.offset - 1.0).abs() < 1e-12);
    assert_eq!(slide_turn(&disk, &base, 0.0, &tol), base);

    let sq = rect(0.0, 0.0, 1.0, 1.0);
    let top = OrientedSupportLine::of_body(&sq, Angle::new(FRAC_PI_2), &tol);
    let turned = slide_turn(&sq, &top, FRAC_PI_4, &tol);
    assert!(turned.nor.distance(Angle::new(FRAC_PI_4)) < 1e-12);
    assert!((turned.offset - SQRT_2).abs() < 1e-12);
    assert!(turned.contact0.distance(&p(1.0, 1.0)) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn nor_is_a_bijection(body in float_body(), t1 in 0.0..TAU, t2 in 0.0..TAU) {
        let tol = Tolerance::default();
        let l1 = OrientedSupportLine::of_body(&body, Angle::new(t1), &tol);
        let l2 = OrientedSupportLine::of_body(&body, Angle::new(t2), &tol);
        prop_assert!(l1.nor.distance(Angle::new(t1)) < 1e-12);
        if Angle::new(t1).distance(Angle::new(t2)) > 1e-9 {
            let same = l1.normal.distance(&l2.normal) < 1e-12 && (l1.offset - l2.offset).abs() < 1e-12;
            prop_assert!(!same);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn delta_vanishes_on_reported_lines(a0 in float_body(), a1 in float_body()) {
        let tol = Tolerance::default();
        let csl = common_supporting_lines(&a0, &a1, &tol);
        if let Some(lines) = csl.lines() {
            let scale = 1.0 + a0.reach().max(a1.reach());
            for l in lines {
                prop_assert!(delta(&a0, &a1, l.nor.radians()).abs() <= tol.eps * scale);
            }
            if !lines.is_empty() {
                let gaps = adjacency_gaps(lines);
                prop_assert!((gaps.iter().sum::<f64>() - TAU).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn delta_keeps_its_sign_between_simple_lines(a0 in float_body(), a1 in float_body()) {
        let tol = Tolerance::default();
        let csl = common_supporting_lines(&a0, &a1, &tol);
        if !csl.is_simple() {
            return Ok(());
        }
        let lines = csl.lines().unwrap();
        if lines.len() < 2 {
            return Ok(());
        }
        let gaps = adjacency_gaps(lines);
        let mut signs = Vec::new();
        for (l, g) in lines.iter().zip(&gaps) {
            let s = probe_gap_sign(&a0, &a1, l.nor, *g, &tol);
            prop_assert!(s.is_some());
            signs.push(s.unwrap());
        }
        for k in 0..signs.len() {
            prop_assert_ne!(signs[k], signs[(k + 1) % signs.len()]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_roots_match_a_dense_sampling_oracle(
        r0 in prop::collection::vec((-50i64..=50, -50i64..=50), 3..8),
        r1 in prop::collection::vec((-50i64..=50, -50i64..=50), 3..8),
    ) {
        let tol = Tolerance::default();
        let (Some(a0), Some(a1)) = (exact_polygon(&r0), exact_polygon(&r1)) else { return Ok(()) };
        let csl = common_supporting_lines(&a0, &a1, &tol);
        if !csl.is_simple() {
            return Ok(());
        }
        let found: Vec<f64> = csl.lines().unwrap().iter().map(|l| l.nor.radians()).collect();
        let zeros = sampled_zeros(&a0.to_f64(), &a1.to_f64(), 1_000_000);
        prop_assert_eq!(found.len(), zeros.len(), "{:?} vs {:?}", found, zeros);
        for z in &zeros {
            let nearest = found.iter().map(|f| Angle::new(*f).distance(Angle::new(*z))).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-8, "{:?} vs {:?}", found, zeros);
        }
    }
}
