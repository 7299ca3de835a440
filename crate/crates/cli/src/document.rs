//! Versioned JSON scene documents.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "mode": "float",
//!   "tolerances": {"eps": 1e-9, "eps_angle": 1e-10},
//!   "G": {"vertices": [[x, y], ...]},
//!   "A0": {"kind": "disk", "params": {"center": [x, y], "radius": r}},
//!   "A1": {"kind": "polygon", "params": {"vertices": [[x, y], ...]}},
//!   "annotations": {"csl": ..., "sectors": ..., "sweeps": ..., "certificate": ..., "trace": ...}
//! }
//! ```
//!
//! Polygon vertices are listed counterclockwise. Exact-mode coordinates are
//! `"num/den"` strings (plain integers are accepted on input); float-mode
//! coordinates are numbers written with 17 significant digits, which makes
//! the canonical form lossless and idempotent.

use std::io;

use carousel_core::bodies::ConvexBody;
use carousel_core::carousel::Scene;
use carousel_core::error::CarouselError;
use carousel_core::kernel::{Angle, ConvexPolygon, Point};
use carousel_core::scalar::{format_rational, parse_rational, Mode, Rational, Scalar, Tolerance};
use carousel_core::sectors::{BoundarySweep, NormalArc};
use carousel_core::tangency::{CslResult, OrientedSupportLine};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Not JSON, or JSON that does not follow the schema.
    #[error("malformed scene document: {0}")]
    Malformed(String),
    /// Well-formed, but the geometry violates a scene invariant.
    #[error("invalid scene: {0}")]
    Invalid(#[from] CarouselError),
}

fn malformed(msg: impl Into<String>) -> DocumentError {
    DocumentError::Malformed(msg.into())
}

/// A scene in either arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum SceneData {
    Exact(Scene<Rational>),
    Float(Scene<f64>),
}

impl SceneData {
    pub fn mode(&self) -> Mode {
        match self {
            Self::Exact(_) => Mode::Exact,
            Self::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> Scene<f64> {
        match self {
            Self::Exact(s) => s.to_f64(),
            Self::Float(s) => s.clone(),
        }
    }
}

/// One common supporting line, as stored in annotations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineAnnotation {
    pub nor: f64,
    pub offset: f64,
    pub contacts: Vec<[f64; 2]>,
    pub tangential: bool,
}

impl LineAnnotation {
    pub fn to_line(&self) -> OrientedSupportLine<f64> {
        let nor = Angle::new(self.nor);
        let pt = |c: &[f64; 2]| Point::new(c[0], c[1]);
        OrientedSupportLine {
            normal: nor.unit(),
            nor,
            offset: self.offset,
            contact0: self.contacts.first().map(pt).unwrap_or_else(|| nor.unit().scale(&self.offset)),
            contact1: self.contacts.get(1).map(pt),
            tangential: self.tangential,
        }
    }
}

/// Common supporting lines in clockwise order of their normals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CslAnnotation {
    pub kind: String,
    pub lines: Vec<LineAnnotation>,
    /// Counterclockwise arcs `[start, end]` of normals on which the support
    /// functions agree.
    #[serde(default)]
    pub zero_arcs: Vec<[f64; 2]>,
}

impl CslAnnotation {
    pub fn from_result(csl: &CslResult<f64>) -> Self {
        let (lines, arcs) = match csl {
            CslResult::Finite(lines) => (lines.as_slice(), Vec::new()),
            CslResult::InfiniteArcs { arcs, lines } => (lines.as_slice(), arcs.clone()),
            CslResult::IdenticalBodies => (&[][..], Vec::new()),
        };
        let s = lines.len();
        let cw = (0..s).map(|m| &lines[(s - m) % s]);
        Self {
            kind: csl.kind_name().to_string(),
            lines: cw
                .map(|l| LineAnnotation {
                    nor: l.nor.radians(),
                    offset: l.offset,
                    contacts: std::iter::once(&l.contact0)
                        .chain(l.contact1.as_ref())
                        .map(|p| [p.x, p.y])
                        .collect(),
                    tangential: l.tangential,
                })
                .collect(),
            zero_arcs: arcs.iter().map(|a| [a.start.radians(), a.end.radians()]).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.kind == "Finite"
    }

    pub fn lines_cw(&self) -> Vec<OrientedSupportLine<f64>> {
        self.lines.iter().map(LineAnnotation::to_line).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tone {
    /// A sector between two adjacent common supporting lines.
    Base,
    /// The same sector after slide-turning its lines out to vertices of `G`.
    Expanded,
}

/// The sector of body `body` over `arc`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorAnnotation {
    pub body: usize,
    pub arc: NormalArc,
    pub tone: Tone,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Annotations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csl: Option<CslAnnotation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sectors: Option<Vec<SectorAnnotation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweeps: Option<Vec<BoundarySweep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
}

impl Annotations {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneDocument {
    pub scene: SceneData,
    pub annotations: Annotations,
}

impl SceneDocument {
    pub fn new(scene: SceneData) -> Self {
        Self {
            scene,
            annotations: Annotations::default(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let root: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let obj = root.as_object().ok_or_else(|| malformed("top level must be an object"))?;
        for key in obj.keys() {
            if !["schema_version", "mode", "tolerances", "G", "A0", "A1", "annotations"].contains(&key.as_str()) {
                return Err(malformed(format!("unknown field `{key}`")));
            }
        }
        match obj.get("schema_version").and_then(Value::as_str) {
            Some(SCHEMA_VERSION) => {}
            Some(v) => return Err(malformed(format!("unsupported schema_version `{v}`"))),
            None => return Err(malformed("missing string field `schema_version`")),
        }
        let tol = match obj.get("tolerances") {
            None => Tolerance::default(),
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| malformed(format!("tolerances: {e}")))?,
        };
        let scene = match obj.get("mode").and_then(Value::as_str) {
            Some("exact") => SceneData::Exact(parse_scene(obj, tol)?),
            Some("float") => SceneData::Float(parse_scene(obj, tol)?),
            _ => return Err(malformed("`mode` must be \"exact\" or \"float\"")),
        };
        let annotations = match obj.get("annotations") {
            None => Annotations::default(),
            Some(v) => serde_json::from_value(v.clone()).map_err(|e| malformed(format!("annotations: {e}")))?,
        };
        Ok(Self { scene, annotations })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = match &self.scene {
            SceneData::Exact(s) => scene_value(s),
            SceneData::Float(s) => scene_value(s),
        };
        if !self.annotations.is_empty() {
            obj.insert("annotations".into(), serde_json::to_value(&self.annotations).expect("annotations serialize"));
        }
        Value::Object(obj)
    }

    /// Canonical serialized form.
    pub fn to_json(&self) -> String {
        to_canonical_json(&self.to_value())
    }
}

/// Scalars as they appear in documents.
pub trait DocScalar: Scalar {
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self, String>;
}

impl DocScalar for f64 {
    fn encode(&self) -> Value {
        Value::from(*self)
    }

    fn decode(v: &Value) -> Result<Self, String> {
        v.as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("expected a finite number, got {v}"))
    }
}

impl DocScalar for Rational {
    fn encode(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn decode(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational \"num/den\"")),
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                parse_rational(&n.to_string()).ok_or_else(|| format!("bad integer {n}"))
            }
            _ => Err(format!("expected a \"num/den\" string, got {v}")),
        }
    }
}

fn encode_point<S: DocScalar>(p: &Point<S>) -> Value {
    Value::Array(vec![p.x.encode(), p.y.encode()])
}

fn encode_points<S: DocScalar>(pts: &[Point<S>]) -> Value {
    Value::Array(pts.iter().map(encode_point).collect())
}

fn encode_body<S: DocScalar>(body: &ConvexBody<S>) -> Value {
    match body {
        ConvexBody::Polygon(p) => json!({"kind": "polygon", "params": {"vertices": encode_points(p.vertices())}}),
        ConvexBody::Disk { center, radius } => {
            json!({"kind": "disk", "params": {"center": encode_point(center), "radius": radius.encode()}})
        }
        ConvexBody::Ellipse {
            center,
            semi_major,
            semi_minor,
            rotation,
        } => json!({"kind": "ellipse", "params": {
            "center": encode_point(center),
            "semi_major": semi_major.encode(),
            "semi_minor": semi_minor.encode(),
            "rotation": rotation.radians(),
        }}),
        ConvexBody::Point(p) => json!({"kind": "point", "params": {"at": encode_point(p)}}),
    }
}

fn scene_value<S: DocScalar>(scene: &Scene<S>) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("schema_version".into(), SCHEMA_VERSION.into());
    obj.insert("mode".into(), S::MODE.to_string().into());
    obj.insert(
        "tolerances".into(),
        serde_json::to_value(scene.tol).expect("tolerances serialize"),
    );
    obj.insert("G".into(), json!({"vertices": encode_points(scene.g.vertices())}));
    obj.insert("A0".into(), encode_body(&scene.a0));
    obj.insert("A1".into(), encode_body(&scene.a1));
    obj
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value, DocumentError> {
    obj.get(key).ok_or_else(|| malformed(format!("{ctx}: missing field `{key}`")))
}

fn decode_scalar<S: DocScalar>(v: &Value, ctx: &str) -> Result<S, DocumentError> {
    S::decode(v).map_err(|e| malformed(format!("{ctx}: {e}")))
}

fn decode_point<S: DocScalar>(v: &Value, ctx: &str) -> Result<Point<S>, DocumentError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(decode_scalar(x, ctx)?, decode_scalar(y, ctx)?)),
        _ => Err(malformed(format!("{ctx}: a point is a two-element array"))),
    }
}

fn decode_points<S: DocScalar>(v: &Value, ctx: &str) -> Result<Vec<Point<S>>, DocumentError> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{ctx}: expected an array of points")))?
        .iter()
        .map(|p| decode_point(p, ctx))
        .collect()
}

fn decode_body<S: DocScalar>(v: &Value, name: &str, tol: &Tolerance) -> Result<ConvexBody<S>, DocumentError> {
    let obj = v.as_object().ok_or_else(|| malformed(format!("{name}: expected an object")))?;
    let kind = field(obj, "kind", name)?
        .as_str()
        .ok_or_else(|| malformed(format!("{name}: `kind` must be a string")))?;
    let params = field(obj, "params", name)?
        .as_object()
        .ok_or_else(|| malformed(format!("{name}: `params` must be an object")))?;
    let ctx = format!("{name}.params");
    let body = match kind {
        "polygon" => ConvexBody::polygon(decode_points(field(params, "vertices", &ctx)?, &ctx)?, tol),
        "disk" => ConvexBody::disk(
            decode_point(field(params, "center", &ctx)?, &ctx)?,
            decode_scalar(field(params, "radius", &ctx)?, &ctx)?,
        ),
        "ellipse" => {
            let rotation: f64 = decode_scalar(field(params, "rotation", &ctx)?, &ctx)?;
            ConvexBody::ellipse(
                decode_point(field(params, "center", &ctx)?, &ctx)?,
                decode_scalar(field(params, "semi_major", &ctx)?, &ctx)?,
                decode_scalar(field(params, "semi_minor", &ctx)?, &ctx)?,
                Angle::new(rotation),
            )
        }
        "point" => Ok(ConvexBody::point(decode_point(field(params, "at", &ctx)?, &ctx)?)),
        other => return Err(malformed(format!("{name}: unknown body kind `{other}`"))),
    };
    body.map_err(|e| DocumentError::Invalid(e.into()))
}

fn parse_scene<S: DocScalar>(obj: &Map<String, Value>, tol: Tolerance) -> Result<Scene<S>, DocumentError> {
    let g_obj = field(obj, "G", "scene")?
        .as_object()
        .ok_or_else(|| malformed("G: expected an object"))?;
    let g_vertices = decode_points(field(g_obj, "vertices", "G")?, "G.vertices")?;
    let a0 = decode_body(field(obj, "A0", "scene")?, "A0", &tol)?;
    let a1 = decode_body(field(obj, "A1", "scene")?, "A1", &tol)?;
    let g = ConvexPolygon::new(g_vertices, &tol).map_err(|e| DocumentError::Invalid(e.into()))?;
    Ok(Scene::new(a0, a1, g, tol)?)
}

/// Pretty JSON with every float written to 17 significant digits.
struct Canonical<'a>(PrettyFormatter<'a>);

impl Formatter for Canonical<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format!("{value:.16e}").as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Canonical JSON for any serializable value: sorted keys, two-space
/// indentation, 17-digit floats, trailing newline.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    // going through Value sorts object keys
    let value = serde_json::to_value(value).expect("value serializes to JSON");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Canonical(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("writing to a Vec cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}
