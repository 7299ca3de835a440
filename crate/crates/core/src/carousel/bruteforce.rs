use serde::Serialize;

use super::{degeneracy, Scene};
use crate::bodies::{contained_in_hull, ContainmentResult};
use crate::kernel::Point;
use crate::scalar::{Mode, Scalar};

/// Verdicts with `|margin| <= FRAGILE_FACTOR · eps` are flagged fragile.
pub const FRAGILE_FACTOR: f64 = 1e3;

/// Re-validation slack, in multiples of `eps`.
const REVALIDATION_SLACK: f64 = 10.0;

/// A pair `(i, j)` for which `A_i` escapes `ch(A_{1−i} ∪ vertices(G) ∖ {g_j})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refutation {
    pub i: usize,
    /// 1-based vertex index into `G`.
    pub j: usize,
    pub witness_angle: f64,
    pub escaping_point: Point<f64>,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// `A_i ⊆ ch(A_{1−i} ∪ vertices(G) ∖ {g_j})` with `j` 1-based.
    Holds { i: usize, j: usize, min_margin: f64 },
    Fails { refutations: Vec<Refutation> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CarouselCertificate {
    pub mode: Mode,
    pub verdict: Verdict,
    pub csl_kind: &'static str,
    pub s: Option<usize>,
    /// Set when the common supporting lines are degenerate; the verdict is
    /// still computed.
    pub degeneracy: Option<String>,
    pub fragile: bool,
}

impl CarouselCertificate {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds { .. })
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy.is_some()
    }

    /// `(i, j)` of a Holds verdict, `j` 1-based.
    pub fn witness(&self) -> Option<(usize, usize)> {
        match self.verdict {
            Verdict::Holds { i, j, .. } => Some((i, j)),
            Verdict::Fails { .. } => None,
        }
    }
}

/// `A_i ⊆ ch(A_{1−i} ∪ vertices(G) ∖ {g_j})` with `j` 1-based.
pub fn revalidate<S: Scalar>(scene: &Scene<S>, i: usize, j: usize) -> ContainmentResult<S> {
    contained_in_hull(scene.body(i), scene.body(1 - i), &scene.vertices_without(j - 1), &scene.tol)
}

/// Re-validation with the slack allowed for composing two pipelines: exact
/// scenes must be contained outright, float scenes up to `−10·eps`.
pub(crate) fn revalidates<S: Scalar>(scene: &Scene<S>, i: usize, j: usize) -> (bool, f64) {
    let r = revalidate(scene, i, j);
    let margin = r.margin();
    let ok = if S::is_exact() {
        r.is_contained()
    } else {
        margin >= -REVALIDATION_SLACK * scene.tol.eps
    };
    (ok, margin)
}

/// Tries every pair, `i` ascending then `j` ascending, and reports the first
/// that holds, or every refutation.
pub fn check_carousel_bruteforce<S: Scalar>(scene: &Scene<S>) -> CarouselCertificate {
    let csl = scene.csl();
    let n = scene.n();
    let fragile_band = FRAGILE_FACTOR * scene.tol.eps;
    let mut refutations = Vec::with_capacity(2 * n);
    for i in 0..2 {
        for j in 1..=n {
            match revalidate(scene, i, j) {
                ContainmentResult::Contained { min_margin } => {
                    return CarouselCertificate {
                        mode: S::MODE,
                        verdict: Verdict::Holds { i, j, min_margin },
                        csl_kind: csl.kind_name(),
                        s: csl.count(),
                        degeneracy: degeneracy(&csl),
                        fragile: !S::is_exact() && min_margin.abs() <= fragile_band,
                    };
                }
                ContainmentResult::NotContained {
                    witness_angle,
                    escaping_point,
                    margin,
                    ..
                } => refutations.push(Refutation {
                    i,
                    j,
                    witness_angle: witness_angle.radians(),
                    escaping_point: escaping_point.to_f64(),
                    margin,
                }),
            }
        }
    }
    let fragile = !S::is_exact() && refutations.iter().any(|r| r.margin.abs() <= fragile_band);
    CarouselCertificate {
        mode: S::MODE,
        verdict: Verdict::Fails { refutations },
        csl_kind: csl.kind_name(),
        s: csl.count(),
        degeneracy: degeneracy(&csl),
        fragile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ConvexBody;
    use crate::kernel::ConvexPolygon;
    use crate::scalar::{Rational, Tolerance};

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn triangle() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![p(-2.0, -1.0), p(2.0, -1.0), p(0.0, 2.0)], &Tolerance::default()).unwrap()
    }

    #[test]
    fn nested_disks_hold_at_first_pair() {
        let tol = Tolerance::default();
        let scene = Scene::new(
            ConvexBody::disk(p(0.1, 0.0), 0.2).unwrap(),
            ConvexBody::disk(p(0.0, 0.0), 0.5).unwrap(),
            triangle(),
            tol,
        )
        .unwrap();
        let cert = check_carousel_bruteforce(&scene);
        assert_eq!(cert.witness(), Some((0, 1)));
        assert_eq!(cert.s, Some(0));
        assert!(!cert.is_degenerate());
    }

    #[test]
    fn two_disks_in_triangle_hold() {
        let tol = Tolerance::default();
        let scene = Scene::new(
            ConvexBody::disk(p(-0.3, 0.0), 0.1).unwrap(),
            ConvexBody::disk(p(0.3, 0.0), 0.1).unwrap(),
            triangle(),
            tol,
        )
        .unwrap();
        let cert = check_carousel_bruteforce(&scene);
        let (i, j) = cert.witness().expect("holds");
        assert!(revalidate(&scene, i, j).is_contained());
        assert_eq!(cert.s, Some(2));
    }

    #[test]
    fn concentric_equal_disks_are_degenerate_but_checked() {
        let tol = Tolerance::default();
        let d = ConvexBody::disk(p(0.0, 0.0), 0.4).unwrap();
        let scene = Scene::new(d.clone(), d, triangle(), tol).unwrap();
        let cert = check_carousel_bruteforce(&scene);
        assert!(cert.is_degenerate());
        assert_eq!(cert.csl_kind, "IdenticalBodies");
        assert!(cert.holds());
    }

    #[test]
    fn exact_scene_refutations_revalidate() {
        // two long thin triangles crossing a square so that each pokes out of
        // the other's hull with any three corners
        let tol = Tolerance::default();
        let r = |v: i64| Rational::from_integer(v.into());
        let pt = |x: i64, y: i64| Point::new(r(x), r(y));
        let g = ConvexPolygon::new(vec![pt(0, 0), pt(12, 0), pt(12, 12), pt(0, 12)], &tol).unwrap();
        let a0 = ConvexBody::polygon(vec![pt(1, 6), pt(11, 5), pt(11, 7)], &tol).unwrap();
        let a1 = ConvexBody::polygon(vec![pt(6, 1), pt(7, 11), pt(5, 11)], &tol).unwrap();
        let scene = Scene::new(a0, a1, g, tol).unwrap();
        let cert = check_carousel_bruteforce(&scene);
        match &cert.verdict {
            Verdict::Holds { i, j, .. } => assert!(revalidate(&scene, *i, *j).is_contained()),
            Verdict::Fails { refutations } => {
                assert_eq!(refutations.len(), 8);
                for r in refutations {
                    assert!(!revalidate(&scene, r.i, r.j).is_contained());
                }
            }
        }
        assert!(!cert.fragile);
    }
}
