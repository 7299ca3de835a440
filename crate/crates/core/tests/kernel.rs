use carousel_core::kernel::{clip, convex_hull, point_in_polygon, Angle, ConvexPolygon, HalfPlane, Point};
use carousel_core::scalar::{Rational, Scalar, Tolerance};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point<f64> {
    Point::new(x, y)
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn unit_square() -> ConvexPolygon<f64> {
    ConvexPolygon::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)], &Tolerance::default()).unwrap()
}

fn point_cloud() -> impl Strategy<Value = Vec<Point<f64>>> {
    prop::collection::vec((-100.0..100.0f64, -100.0..100.0f64), 1..40)
        .prop_map(|v| v.into_iter().map(|(x, y)| p(x, y)).collect())
}

fn integer_cloud() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-1000i64..=1000, -1000i64..=1000), 1..30)
}

/// A point is a convex combination of `hull` when it lies in the hull polygon.
fn inside_hull(q: &Point<f64>, hull: &ConvexPolygon<f64>) -> bool {
    let loose = Tolerance { eps: 1e-7, ..Tolerance::default() };
    point_in_polygon(q, hull, &loose)
}

#[test]
fn hull_examples() {
    let tol = Tolerance::default();
    assert_eq!(convex_hull(&[p(0.0, 0.0)], &tol).unwrap().vertices(), &[p(0.0, 0.0)]);
    let h = convex_hull(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(0.25, 0.25)], &tol).unwrap();
    assert_eq!(h.vertices(), &[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)]);
    let input = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)];
    let h = convex_hull(&input, &tol).unwrap();
    assert_eq!(h.vertices(), &[p(0.0, 0.0), p(2.0, 0.0), p(2.0, 2.0), p(0.0, 2.0)]);
    // every omitted point is a convex combination of the kept ones
    assert!(input.iter().all(|q| inside_hull(q, &h)));
    assert!(convex_hull::<f64>(&[], &tol).is_err());
}

#[test]
fn clip_examples() {
    let tol = Tolerance::default();
    let sq = unit_square();
    let half = clip(&sq, &HalfPlane::new(p(1.0, 0.0), 0.5), &tol).unwrap();
    assert!((half.area() - 0.5).abs() < 1e-12);
    assert!(half.vertices().iter().all(|v| v.x <= 0.5 + 1e-12));
    assert_eq!(clip(&sq, &HalfPlane::new(p(1.0, 0.0), 2.0), &tol).unwrap(), sq);

    let tri = ConvexPolygon::new(vec![p(0.0, 0.0), p(2.0, 0.0), p(0.0, 2.0)], &tol).unwrap();
    let h = HalfPlane::from_angle(Angle::new(std::f64::consts::FRAC_PI_4), std::f64::consts::SQRT_2 / 2.0);
    let cut = clip(&tri, &h, &tol).unwrap();
    assert!(cut.vertices().iter().all(|v| h.contains(v, &tol)));
    assert!((cut.area() / tri.area() - 0.25).abs() < 1e-12);
}

#[test]
fn membership_examples() {
    let tol = Tolerance::default();
    let sq = unit_square();
    assert!(point_in_polygon(&p(0.5, 0.5), &sq, &tol));
    assert!(point_in_polygon(&p(1.0, 0.5), &sq, &tol));

    let exact = ConvexPolygon::new(
        vec![Point::new(r(0), r(0)), Point::new(r(1), r(0)), Point::new(r(1), r(1)), Point::new(r(0), r(1))],
        &tol,
    )
    .unwrap();
    let outside = Point::new(r(1) + Rational::new(1.into(), 1_000_000.into()), Rational::new(1.into(), 2.into()));
    assert!(!point_in_polygon(&outside, &exact, &tol));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn hull_is_idempotent(pts in point_cloud()) {
        let tol = Tolerance::default();
        let h = convex_hull(&pts, &tol).unwrap();
        let again = convex_hull(h.vertices(), &tol).unwrap();
        prop_assert_eq!(&again, &h);
        prop_assert!(pts.iter().all(|q| inside_hull(q, &h)));
    }

    #[test]
    fn hull_orientation_is_counterclockwise(pts in point_cloud()) {
        let h = convex_hull(&pts, &Tolerance::default()).unwrap();
        if h.len() >= 3 {
            prop_assert!(h.double_area() > 0.0);
        }
    }

    #[test]
    fn clip_is_monotone(pts in point_cloud(), theta in 0.0..std::f64::consts::TAU, offset in -150.0..150.0f64) {
        let tol = Tolerance::default();
        let poly = convex_hull(&pts, &tol).unwrap();
        let h = HalfPlane::from_angle(Angle::new(theta), offset);
        if let Some(cut) = clip(&poly, &h, &tol) {
            let loose = Tolerance { eps: 1e-7, ..tol };
            for v in cut.vertices() {
                prop_assert!(point_in_polygon(v, &poly, &loose));
                prop_assert!(h.signed_distance(v) <= 1e-7);
            }
            if cut.len() >= 3 {
                prop_assert!(cut.double_area() > 0.0);
                prop_assert!(cut.area() <= poly.area() + 1e-9);
            }
        }
    }

    #[test]
    fn exact_and_float_hulls_agree(raw in integer_cloud()) {
        let tol = Tolerance::default();
        let exact: Vec<Point<Rational>> = raw.iter().map(|&(x, y)| Point::new(r(x), r(y))).collect();
        let float: Vec<Point<f64>> = raw.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
        let he = convex_hull(&exact, &tol).unwrap();
        let hf = convex_hull(&float, &tol).unwrap();
        prop_assert_eq!(he.len(), hf.len());
        for (a, b) in he.vertices().iter().zip(hf.vertices()) {
            prop_assert!(a.to_f64().distance(b) <= 1e-9);
        }
        if he.len() >= 3 {
            prop_assert!(he.double_area() > Rational::zero());
        }
    }

    #[test]
    fn exact_and_float_clips_agree(raw in integer_cloud(), nx in -20i64..=20, ny in -20i64..=20, c in -2000i64..=2000) {
        prop_assume!(nx != 0 || ny != 0);
        let tol = Tolerance::default();
        let exact: Vec<Point<Rational>> = raw.iter().map(|&(x, y)| Point::new(r(x), r(y))).collect();
        let float: Vec<Point<f64>> = raw.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
        let he = convex_hull(&exact, &tol).unwrap();
        let hf = convex_hull(&float, &tol).unwrap();
        let ce = clip(&he, &HalfPlane::new(Point::new(r(nx), r(ny)), r(c)), &tol);
        let cf = clip(&hf, &HalfPlane::new(p(nx as f64, ny as f64), c as f64), &tol);
        match (ce, cf) {
            (None, None) => {}
            (Some(ce), Some(cf)) => {
                // float clipping may merge a vertex that exact arithmetic keeps
                // a hair away; compare the point sets both ways
                let loose = Tolerance { eps: 1e-6, ..tol };
                let ce64 = ce.to_f64();
                for v in ce64.vertices() {
                    prop_assert!(cf.vertices().iter().any(|w| w.distance(v) <= 1e-9) || point_in_polygon(v, &cf, &loose));
                }
                for v in cf.vertices() {
                    prop_assert!(ce64.vertices().iter().any(|w| w.distance(v) <= 1e-9) || point_in_polygon(v, &ce64, &loose));
                }
            }
            (a, b) => prop_assert!(false, "exact {:?} vs float {:?}", a.map(|x| x.len()), b.map(|x| x.len())),
        }
    }
}
