//! The weak carousel rule: brute-force certificates, the constructive witness
//! that follows the sweep argument, their cross-validation, and the parallel
//! fuzz campaign.

mod bruteforce;
mod campaign;
mod constructive;

pub use bruteforce::{check_carousel_bruteforce, revalidate, CarouselCertificate, Refutation, Verdict, FRAGILE_FACTOR};
pub use campaign::{run_campaign, sweep_partition_error, CampaignConfig, CampaignReport, FailingScene, PARTITION_TOL};
pub use constructive::{
    check_carousel_constructive, cross_validate, replay_trace, ConstructiveTrace, CrossValidation, Inclusion, PairChoice,
    Route, SkippedPair,
};

use crate::bodies::{contained_in_hull, ConvexBody};
use crate::error::{CarouselError, KernelError};
use crate::kernel::{ConvexPolygon, Point};
use crate::scalar::{Mode, Scalar, Tolerance};
use crate::tangency::{common_supporting_lines, CslResult};

/// Two bodies inside a convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene<S> {
    pub a0: ConvexBody<S>,
    pub a1: ConvexBody<S>,
    pub g: ConvexPolygon<S>,
    pub tol: Tolerance,
}

impl<S: Scalar> Scene<S> {
    /// Validates the bodies and checks `A0, A1 ⊆ G`.
    pub fn new(a0: ConvexBody<S>, a1: ConvexBody<S>, g: ConvexPolygon<S>, tol: Tolerance) -> Result<Self, CarouselError> {
        if g.len() < 3 {
            return Err(KernelError::ContainerTooSmall(g.len()).into());
        }
        a0.validate()?;
        a1.validate()?;
        let outer = ConvexBody::Polygon(g.clone());
        for (i, body) in [&a0, &a1].into_iter().enumerate() {
            if !contained_in_hull(body, &outer, &[], &tol).is_contained() {
                return Err(CarouselError::BodyOutsideContainer(i));
            }
        }
        Ok(Self { a0, a1, g, tol })
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn body(&self, i: usize) -> &ConvexBody<S> {
        if i == 0 {
            &self.a0
        } else {
            &self.a1
        }
    }

    /// Vertices of `G` other than `g_vertex` (0-based).
    pub fn vertices_without(&self, vertex: usize) -> Vec<Point<S>> {
        self.g
            .vertices()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != vertex)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn csl(&self) -> CslResult<S> {
        common_supporting_lines(&self.a0, &self.a1, &self.tol)
    }

    pub fn to_f64(&self) -> Scene<f64> {
        Scene {
            a0: self.a0.to_f64(),
            a1: self.a1.to_f64(),
            g: self.g.to_f64(),
            tol: self.tol,
        }
    }
}

/// Reason string for scenes whose common supporting lines are not a finite
/// set of transversal crossings, or `None`.
pub fn degeneracy<S: Scalar>(csl: &CslResult<S>) -> Option<String> {
    match csl {
        CslResult::Finite(lines) if lines.iter().any(|l| l.tangential) => {
            Some("a common supporting line is tangential (δ touches zero without a sign change)".into())
        }
        CslResult::Finite(_) => None,
        CslResult::InfiniteArcs { arcs, .. } => Some(format!("δ vanishes on {} arc(s) of normals", arcs.len())),
        CslResult::IdenticalBodies => Some("the two bodies are identical".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn square(r: f64) -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![p(-r, -r), p(r, -r), p(r, r), p(-r, r)], &Tolerance::default()).unwrap()
    }

    #[test]
    fn scene_rejects_body_outside() {
        let tol = Tolerance::default();
        let a0 = ConvexBody::disk(p(0.0, 0.0), 0.5).unwrap();
        let a1 = ConvexBody::disk(p(1.8, 0.0), 0.5).unwrap();
        assert_eq!(Scene::new(a0, a1, square(2.0), tol), Err(CarouselError::BodyOutsideContainer(1)));
    }

    #[test]
    fn scene_rejects_smooth_exact_bodies() {
        let tol = Tolerance::default();
        let r = |v: i64| Rational::from_integer(v.into());
        let g = ConvexPolygon::new(
            vec![Point::new(r(0), r(0)), Point::new(r(4), r(0)), Point::new(r(0), r(4))],
            &tol,
        )
        .unwrap();
        let disk = ConvexBody::Disk {
            center: Point::new(r(1), r(1)),
            radius: r(1) / r(4),
        };
        let pt = ConvexBody::point(Point::new(r(1), r(1)));
        assert_eq!(
            Scene::new(disk, pt, g, tol),
            Err(CarouselError::Kernel(KernelError::SmoothBodyInExactMode))
        );
    }
}
