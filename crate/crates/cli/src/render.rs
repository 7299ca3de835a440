//! Deterministic SVG 1.1 drawings of scenes.
//!
//! Geometry is drawn in scene coordinates inside one group carrying the
//! y-up flip; text labels sit outside it at mapped positions so they read
//! upright.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::str::FromStr;

use carousel_core::bodies::ConvexBody;
use carousel_core::carousel::Scene;
use carousel_core::kernel::Point;
use carousel_core::sectors::{omega, sector_on_arc, BoundarySweep, Container, Side};
use thiserror::Error;

use crate::annotate::annotate;
use crate::document::{Annotations, SceneDocument, Tone};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Bodies,
    G,
    Csl,
    Sectors,
    Sweeps,
    Markers,
}

impl Layer {
    pub const ALL: [Layer; 6] = [
        Layer::Bodies,
        Layer::G,
        Layer::Csl,
        Layer::Sectors,
        Layer::Sweeps,
        Layer::Markers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bodies => "bodies",
            Self::G => "g",
            Self::Csl => "csl",
            Self::Sectors => "sectors",
            Self::Sweeps => "sweeps",
            Self::Markers => "markers",
        }
    }

    /// Layers drawn when none are requested.
    pub fn defaults() -> BTreeSet<Layer> {
        [Layer::Bodies, Layer::G, Layer::Csl, Layer::Sectors, Layer::Sweeps].into()
    }

    /// Parses a comma-separated list; `all` selects every layer.
    pub fn parse_list(text: &str) -> Result<BTreeSet<Layer>, String> {
        let mut out = BTreeSet::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Self::ALL);
            } else {
                out.insert(item.parse()?);
            }
        }
        Ok(out)
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown layer `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    pub container: &'static str,
    pub body: [&'static str; 2],
    pub body_fill_opacity: f64,
    pub csl: &'static str,
    pub sector_base: &'static str,
    pub sector_expanded: &'static str,
    pub sweep_left: &'static str,
    pub sweep_right: &'static str,
    pub marker: &'static str,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            container: "#000000",
            body: ["#d62728", "#1f4fd8"],
            body_fill_opacity: 0.2,
            csl: "#404040",
            sector_base: "#6e6e6e",
            sector_expanded: "#cfcfcf",
            sweep_left: "#1f4fd8",
            sweep_right: "#d62728",
            marker: "#000000",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub layers: BTreeSet<Layer>,
    pub palette: Palette,
    /// Stroke width in pixels.
    pub stroke: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 800,
            height: 800,
            layers: Layer::defaults(),
            palette: Palette::default(),
            stroke: 1.5,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("annotation layer `{0}` is missing and computing it was disabled")]
    MissingLayer(&'static str),
}

/// Annotation field each layer reads, if any.
fn needed(layer: Layer, ann: &Annotations) -> bool {
    match layer {
        Layer::Bodies | Layer::G => true,
        Layer::Csl | Layer::Markers => ann.csl.is_some(),
        Layer::Sectors => ann.sectors.is_some() && ann.csl.is_some(),
        Layer::Sweeps => ann.sweeps.is_some(),
    }
}

/// Annotations completed for the requested layers, computing missing ones
/// unless `compute` is false.
pub fn resolve_annotations(doc: &SceneDocument, layers: &BTreeSet<Layer>, compute: bool) -> Result<Annotations, RenderError> {
    let missing: Vec<Layer> = layers.iter().copied().filter(|l| !needed(*l, &doc.annotations)).collect();
    if missing.is_empty() {
        return Ok(doc.annotations.clone());
    }
    if !compute {
        return Err(RenderError::MissingLayer(missing[0].name()));
    }
    let fresh = annotate(&doc.scene);
    let a = &doc.annotations;
    Ok(Annotations {
        csl: a.csl.clone().or(fresh.csl),
        sectors: a.sectors.clone().or(fresh.sectors),
        sweeps: a.sweeps.clone().or(fresh.sweeps),
        certificate: a.certificate.clone().or(fresh.certificate),
        trace: a.trace.clone().or(fresh.trace),
    })
}

/// Fixed-point number with trailing zeros removed.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}

fn points_attr(pts: &[Point<f64>]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

struct Frame {
    scale: f64,
    tx: f64,
    ty: f64,
}

impl Frame {
    fn fit(scene: &Scene<f64>, width: f64, height: f64) -> Self {
        let vs = scene.g.vertices();
        let (mut lo, mut hi) = (vs[0], vs[0]);
        for v in vs {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let margin = 0.08;
        let span_x = (hi.x - lo.x).max(1e-12);
        let span_y = (hi.y - lo.y).max(1e-12);
        let scale = (width * (1.0 - 2.0 * margin) / span_x).min(height * (1.0 - 2.0 * margin) / span_y);
        let c = lo.lerp(&hi, 0.5);
        Self {
            scale,
            tx: width / 2.0 - scale * c.x,
            ty: height / 2.0 + scale * c.y,
        }
    }

    fn to_screen(&self, p: &Point<f64>) -> (f64, f64) {
        (self.scale * p.x + self.tx, -self.scale * p.y + self.ty)
    }

    /// A length of `px` screen pixels in scene units.
    fn px(&self, px: f64) -> f64 {
        px / self.scale
    }
}

fn body_element(body: &ConvexBody<f64>, frame: &Frame, color: &str, opacity: f64, stroke: f64) -> String {
    let style = format!(
        "fill=\"{color}\" fill-opacity=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"",
        num(opacity),
        num(frame.px(stroke))
    );
    match body {
        ConvexBody::Polygon(p) => format!("<polygon points=\"{}\" {style}/>", points_attr(p.vertices())),
        ConvexBody::Disk { center, radius } => format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>",
            num(center.x),
            num(center.y),
            num(*radius)
        ),
        ConvexBody::Ellipse {
            center,
            semi_major,
            semi_minor,
            rotation,
        } => format!(
            "<ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" transform=\"rotate({} {} {})\" {style}/>",
            num(center.x),
            num(center.y),
            num(*semi_major),
            num(*semi_minor),
            num(rotation.radians().to_degrees()),
            num(center.x),
            num(center.y)
        ),
        ConvexBody::Point(p) => format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>",
            num(p.x),
            num(p.y),
            num(frame.px(3.0))
        ),
    }
}

/// Boundary polyline of a sweep, clockwise from its start.
fn sweep_path(sw: &BoundarySweep, g: &Container) -> Vec<Point<f64>> {
    let (start, end) = match sw.side {
        Side::L => (sw.from, sw.to),
        Side::R => (sw.to, sw.from),
    };
    let mut pts = vec![start.location];
    pts.extend(sw.covered_vertices.iter().map(|&k| *g.polygon.vertex(k)));
    pts.push(end.location);
    pts
}

/// Renders `doc` as an SVG string.
pub fn render_svg(doc: &SceneDocument, spec: &RenderSpec, compute: bool) -> Result<String, RenderError> {
    let ann = resolve_annotations(doc, &spec.layers, compute)?;
    let scene = doc.scene.to_f64();
    let (w, h) = (f64::from(spec.width), f64::from(spec.height));
    let frame = Frame::fit(&scene, w, h);
    let pal = &spec.palette;
    let on = |l: Layer| spec.layers.contains(&l);
    let sw = frame.px(spec.stroke);
    let lines = ann.csl.as_ref().map(|c| c.lines_cw()).unwrap_or_default();
    let g = Container::new(&scene.g, &scene.tol);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(out, "<rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", spec.width, spec.height);
    let _ = writeln!(
        out,
        "<g transform=\"matrix({} 0 0 {} {} {})\">",
        num(frame.scale),
        num(-frame.scale),
        num(frame.tx),
        num(frame.ty)
    );

    if on(Layer::Sectors) && !lines.is_empty() {
        let mut sectors: Vec<_> = ann.sectors.iter().flatten().collect();
        // expanded sectors are larger, so they go underneath
        sectors.sort_by_key(|s| s.tone != Tone::Expanded);
        out.push_str("<g id=\"sectors\" stroke=\"none\">\n");
        for sec in sectors {
            let region = sector_on_arc(scene.body(sec.body), sec.arc, Some(&scene.g), &scene.tol);
            if let Some(poly) = region.clipped {
                let fill = match sec.tone {
                    Tone::Base => pal.sector_base,
                    Tone::Expanded => pal.sector_expanded,
                };
                let _ = writeln!(out, "<polygon points=\"{}\" fill=\"{fill}\"/>", points_attr(poly.vertices()));
            }
        }
        out.push_str("</g>\n");
    }
    if on(Layer::G) {
        let _ = writeln!(
            out,
            "<g id=\"container\"><polygon points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\"/></g>",
            points_attr(scene.g.vertices()),
            pal.container,
            num(sw)
        );
    }
    if on(Layer::Sweeps) {
        let sweeps: Vec<&BoundarySweep> = ann.sweeps.iter().flatten().collect();
        if !sweeps.is_empty() {
            out.push_str("<g id=\"sweeps\" fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n");
            for sweep in sweeps {
                let (color, width) = match sweep.side {
                    Side::L => (pal.sweep_left, 6.0 * spec.stroke),
                    Side::R => (pal.sweep_right, 3.0 * spec.stroke),
                };
                if sweep.length <= 0.0 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"/>",
                    points_attr(&sweep_path(sweep, &g)),
                    num(frame.px(width))
                );
            }
            out.push_str("</g>\n");
        }
    }
    if on(Layer::Bodies) {
        out.push_str("<g id=\"bodies\">\n");
        for (i, body) in [&scene.a0, &scene.a1].into_iter().enumerate() {
            let _ = writeln!(
                out,
                "{}",
                body_element(body, &frame, pal.body[i], pal.body_fill_opacity, spec.stroke)
            );
        }
        out.push_str("</g>\n");
    }
    if on(Layer::Csl) && !lines.is_empty() {
        let reach = (w.hypot(h) / frame.scale) * 2.0;
        let dash = format!("{} {}", num(frame.px(2.0)), num(frame.px(4.0)));
        let _ = writeln!(
            out,
            "<g id=\"csl\" stroke=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"{dash}\" stroke-linecap=\"round\">",
            pal.csl,
            num(sw)
        );
        for l in &lines {
            let foot = l.nor.unit().scale(&l.offset);
            let along = l.dir_l().unit().scale(&reach);
            let (a, b) = (foot - along, foot + along);
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(a.x),
                num(a.y),
                num(b.x),
                num(b.y)
            );
        }
        out.push_str("</g>\n");
    }
    if on(Layer::Markers) {
        out.push_str("<g id=\"markers\">\n");
        let r = frame.px(3.5);
        for l in &lines {
            for side in [Side::L, Side::R] {
                if let Ok(q) = omega(l, &g, side, &scene.tol) {
                    let fill = match side {
                        Side::L => pal.marker,
                        Side::R => "#ffffff",
                    };
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"{}\" stroke-width=\"{}\"/>",
                        num(q.location.x),
                        num(q.location.y),
                        num(r),
                        pal.marker,
                        num(frame.px(1.0))
                    );
                }
            }
        }
        for v in scene.g.vertices() {
            let _ = writeln!(
                out,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                num(v.x - r),
                num(v.y - r),
                num(2.0 * r),
                num(2.0 * r),
                pal.marker
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
    if on(Layer::Markers) {
        let c = scene.g.centroid();
        out.push_str("<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">\n");
        for (k, v) in scene.g.vertices().iter().enumerate() {
            let out_dir = (v - &c).normalized();
            let (x, y) = frame.to_screen(&(v + &out_dir.scale(&frame.px(16.0))));
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" dominant-baseline=\"middle\">g{}</text>",
                num(x),
                num(y),
                k + 1
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::SceneData;
    use carousel_core::constructions::sharpness_construct;

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(-0.0000001), "0");
        assert_eq!(num(2.0), "2");
        assert_eq!(num(-3.25), "-3.25");
    }

    #[test]
    fn layer_lists_parse() {
        assert_eq!(Layer::parse_list("g,bodies").unwrap(), [Layer::G, Layer::Bodies].into());
        assert_eq!(Layer::parse_list("all").unwrap().len(), 6);
        assert!(Layer::parse_list("g,nope").is_err());
    }

    #[test]
    fn missing_layers_respect_no_compute() {
        let scene = sharpness_construct(4).unwrap().scene().unwrap();
        let doc = SceneDocument::new(SceneData::Float(scene));
        let spec = RenderSpec::default();
        assert_eq!(render_svg(&doc, &spec, false), Err(RenderError::MissingLayer("csl")));
        let bare = RenderSpec {
            layers: [Layer::Bodies, Layer::G].into(),
            ..RenderSpec::default()
        };
        let svg = render_svg(&doc, &bare, false).unwrap();
        assert!(!svg.contains("id=\"csl\""));
        let full = render_svg(&doc, &spec, true).unwrap();
        assert_eq!(full.matches("<line ").count(), 4);
        assert_eq!(full, render_svg(&doc, &spec, true).unwrap());
    }
}
