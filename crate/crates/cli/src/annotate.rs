//! Computes the annotation layers of a scene.

use std::f64::consts::TAU;

use carousel_core::carousel::{check_carousel_bruteforce, check_carousel_constructive, degeneracy, Scene};
use carousel_core::scalar::Scalar;
use carousel_core::sectors::{body_in_sector, expanded_arc, sweep, BoundarySweep, Container, NormalArc, Side};
use carousel_core::tangency::OrientedSupportLine;

use crate::document::{Annotations, CslAnnotation, SceneData, SectorAnnotation, Tone};

/// Every annotation layer, computed with the scene's own tolerances.
///
/// When the constructive procedure succeeds on a pair of adjacent lines, the
/// sectors are the sector of that pair containing the other body and its
/// expansion, and the sweeps are the pair's left and right sweeps. Otherwise
/// every adjacent pair contributes its containing sector and the sweeps of
/// the first pair are shown.
pub fn annotate(scene: &SceneData) -> Annotations {
    match scene {
        SceneData::Exact(s) => annotate_scene(s),
        SceneData::Float(s) => annotate_scene(s),
    }
}

fn annotate_scene<S: Scalar>(scene: &Scene<S>) -> Annotations {
    let fs = scene.to_f64();
    let csl_exact = scene.csl();
    let csl = CslAnnotation::from_result(&csl_exact.to_f64());
    let cert = check_carousel_bruteforce(scene);
    let constructive = check_carousel_constructive(scene).ok();
    let mut out = Annotations {
        certificate: Some(serde_json::to_value(&cert).expect("certificate serializes")),
        trace: constructive
            .as_ref()
            .map(|(_, t)| serde_json::to_value(t).expect("trace serializes")),
        sectors: Some(Vec::new()),
        sweeps: Some(Vec::new()),
        ..Annotations::default()
    };
    let lines = csl.lines_cw();
    let s = lines.len();
    if degeneracy(&csl_exact).is_some() || s == 0 {
        out.csl = Some(csl);
        return out;
    }
    let tol = fs.tol;
    let g = Container::new(&fs.g, &tol);
    let gap = |k: usize| {
        if s == 1 {
            TAU
        } else {
            NormalArc::between(lines[k].nor, lines[(k + 1) % s].nor).width
        }
    };
    let mut sectors = Vec::new();
    let mut pair = 0;
    let chosen = constructive.as_ref().and_then(|(_, t)| {
        let choice = t.chosen_pair.as_ref()?;
        Some((choice.k - 1, t.inclusion_side?, t.expansion))
    });
    match chosen {
        Some((k, inclusion, expansion)) => {
            pair = k;
            let arc = NormalArc {
                start: lines[k].nor,
                width: gap(k),
            };
            let body = inclusion.outer();
            if let Some(Ok(wide)) = expansion.map(|(a, b)| expanded_arc(lines[k].nor, arc.width, a, b.min(arc.width - a).max(0.0), &tol)) {
                sectors.push(SectorAnnotation {
                    body,
                    arc: wide,
                    tone: Tone::Expanded,
                });
            }
            sectors.push(SectorAnnotation {
                body,
                arc,
                tone: Tone::Base,
            });
        }
        None => {
            for k in 0..s {
                let arc = NormalArc {
                    start: lines[k].nor,
                    width: gap(k),
                };
                let body = if body_in_sector(&fs.a0, &fs.a1, &arc, &tol) {
                    1
                } else if body_in_sector(&fs.a1, &fs.a0, &arc, &tol) {
                    0
                } else {
                    continue;
                };
                sectors.push(SectorAnnotation {
                    body,
                    arc,
                    tone: Tone::Base,
                });
            }
        }
    }
    out.sectors = Some(sectors);
    out.sweeps = Some(pair_sweeps(&lines, pair, &g, &tol));
    out.csl = Some(csl);
    out
}

fn pair_sweeps(
    lines: &[OrientedSupportLine<f64>],
    k: usize,
    g: &Container,
    tol: &carousel_core::scalar::Tolerance,
) -> Vec<BoundarySweep> {
    let (l1, l2) = (&lines[k], &lines[(k + 1) % lines.len()]);
    [Side::L, Side::R]
        .into_iter()
        .filter_map(|side| sweep(l1, l2, g, side, tol).ok())
        .collect()
}
