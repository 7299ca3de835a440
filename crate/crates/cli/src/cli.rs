//! Argument parsing and subcommands of the `carousel` binary.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use carousel_core::carousel::{
    check_carousel_bruteforce, check_carousel_constructive, degeneracy, run_campaign, CampaignConfig, CampaignReport, Scene,
};
use carousel_core::constructions::{
    generate_corollary_scene, generate_fuzz_scene, generate_lattice_scene, sharpness_construct, sharpness_validate,
    CorollaryKind, FuzzConfig,
};
use carousel_core::error::{CarouselError, ConstructionError};
use carousel_core::scalar::Scalar;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::annotate::annotate;
use crate::document::{to_canonical_json, CslAnnotation, DocumentError, SceneData, SceneDocument};
use crate::render::{render_svg, Layer, RenderError, RenderSpec};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// The carousel rule fails, or a fuzz campaign found Fails verdicts.
    pub const FAILS: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    /// The constructive procedure needs `s < n`.
    pub const PRECONDITION: i32 = 4;
    /// Malformed input or command line.
    pub const USAGE: i32 = 64;
    /// Well-formed input violating a scene invariant.
    pub const DATA: i32 = 65;
    /// An annotation layer is missing and computing it was disabled.
    pub const NO_INPUT: i32 = 66;
    /// Internal inconsistency between procedures.
    pub const SOFTWARE: i32 = 70;
    pub const IO: i32 = 74;
}

/// Highest acceptable fraction of degenerate draws in a fuzz campaign.
pub const DEGENERACY_RATE_LIMIT: f64 = 0.05;

/// Environment variable setting the number of worker threads.
pub const WORKERS_ENV: &str = "CAROUSEL_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "carousel", version, about = "Common supporting lines and the weak carousel rule")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Constructive,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Fuzz,
    Lattice,
    Sharpness,
    DisksInTriangle,
    EllipsesInPentagon,
    HomothetsInTriangle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the common supporting lines of a scene.
    Csl { scene: PathBuf },
    /// Decide the weak carousel rule for a scene.
    Check {
        scene: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
    },
    /// Run a seeded fuzz campaign and print its report.
    Fuzz {
        /// Number of scenes.
        #[arg(long)]
        seeds: Option<usize>,
        /// Campaign configuration (JSON); defaults apply to missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Base seed, overriding the configuration.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving the scenes behind reported events.
        #[arg(long, default_value = "fuzz-failures")]
        dump: PathBuf,
    },
    /// Draw a scene as SVG.
    Render {
        scene: PathBuf,
        /// Comma-separated layers: bodies, g, csl, sectors, sweeps, markers, or all.
        #[arg(long)]
        layers: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Fail instead of computing annotation layers the scene lacks.
        #[arg(long)]
        no_compute: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 800)]
        height: u32,
    },
    /// Add every computed annotation layer to a scene document.
    Annotate {
        scene: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a generated scene document.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Polygon size for `sharpness` (default 4) and `fuzz`.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and validate the sharpness instance for an even n.
    Sharpness {
        #[arg(long)]
        n: usize,
        /// Also write the scene document here.
        #[arg(long)]
        scene_out: Option<PathBuf>,
    },
}

/// A failed command: exit code and diagnostic.
struct Failure(i32, String);

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Malformed(_) => Failure(exit::USAGE, e.to_string()),
            DocumentError::Invalid(_) => Failure(exit::DATA, e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::OddN(_) | ConstructionError::InvalidConfig(_) => exit::USAGE,
            _ => exit::SOFTWARE,
        };
        Failure(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure(exit::IO, format!("{}: {e}", path.display()))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| io_failure(path, e))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load(path: &Path) -> Result<SceneDocument, Failure> {
    Ok(SceneDocument::parse(&read_input(path)?)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn cmd_csl(path: &Path) -> Result<i32, Failure> {
    let doc = load(path)?;
    let (ann, degenerate) = match &doc.scene {
        SceneData::Exact(s) => {
            let csl = s.csl();
            (CslAnnotation::from_result(&csl.to_f64()), degeneracy(&csl))
        }
        SceneData::Float(s) => {
            let csl = s.csl();
            (CslAnnotation::from_result(&csl), degeneracy(&csl))
        }
    };
    emit(&to_canonical_json(&ann), None)?;
    Ok(match degenerate {
        Some(reason) => {
            eprintln!("degenerate scene: {reason}");
            exit::DEGENERATE
        }
        None => exit::OK,
    })
}

fn check_scene<S: Scalar>(scene: &Scene<S>, method: Method) -> (Value, i32) {
    let mut report = serde_json::Map::new();
    let method_name = match method {
        Method::Brute => "brute",
        Method::Constructive => "constructive",
        Method::Both => "both",
    };
    report.insert("method".into(), method_name.into());
    let brute = (method != Method::Constructive).then(|| check_carousel_bruteforce(scene));
    if let Some(cert) = &brute {
        report.insert("certificate".into(), serde_json::to_value(cert).expect("certificate serializes"));
    }
    let constructive = (method != Method::Brute).then(|| check_carousel_constructive(scene));
    match &constructive {
        Some(Ok((cert, trace))) => {
            report.insert(
                "constructive".into(),
                json!({"certificate": cert, "trace": trace}),
            );
        }
        Some(Err(e)) => {
            report.insert("constructive".into(), json!({"error": e.to_string()}));
        }
        None => {}
    }
    if let (Some(b), Some(Ok((c, _)))) = (&brute, &constructive) {
        report.insert("same_witness".into(), (b.witness() == c.witness()).into());
    }
    let code = match (&brute, &constructive) {
        (Some(b), _) if b.is_degenerate() => exit::DEGENERATE,
        (_, Some(Err(CarouselError::DegenerateScene(_)))) => exit::DEGENERATE,
        (Some(b), Some(Ok(_))) if !b.holds() => exit::SOFTWARE,
        (_, Some(Ok(_))) => exit::OK,
        (None, Some(Err(CarouselError::PreconditionSNotLessThanN { .. }))) => exit::PRECONDITION,
        (_, Some(Err(CarouselError::PreconditionSNotLessThanN { .. }))) | (_, None) => {
            if brute.as_ref().is_some_and(|b| b.holds()) {
                exit::OK
            } else {
                exit::FAILS
            }
        }
        (_, Some(Err(_))) => exit::SOFTWARE,
    };
    (Value::Object(report), code)
}

fn cmd_check(path: &Path, method: Method) -> Result<i32, Failure> {
    let doc = load(path)?;
    let (report, code) = match &doc.scene {
        SceneData::Exact(s) => check_scene(s, method),
        SceneData::Float(s) => check_scene(s, method),
    };
    emit(&to_canonical_json(&report), None)?;
    match code {
        exit::DEGENERATE => eprintln!("degenerate scene"),
        exit::PRECONDITION => eprintln!("the constructive procedure requires s < n"),
        exit::SOFTWARE => eprintln!("procedures disagree: {}", report["constructive"]),
        _ => {}
    }
    Ok(code)
}

/// Campaign report as printed by `carousel fuzz`.
pub fn fuzz_summary(report: &CampaignReport, dumped: &[String]) -> Value {
    json!({
        "counts": {
            "holds": report.holds,
            "fails": report.fails,
            "degenerate": report.degenerate_redraws,
            "fragile": report.fragile,
        },
        "degeneracy_rate": report.degeneracy_rate,
        "degeneracy_rate_limit": DEGENERACY_RATE_LIMIT,
        "degeneracy_within_limit": report.degeneracy_rate <= DEGENERACY_RATE_LIMIT,
        "clean": report.clean(),
        "dumped": dumped,
        "report": report,
    })
}

fn cmd_fuzz(seeds: Option<usize>, config: Option<&Path>, seed: Option<u64>, dump: &Path) -> Result<i32, Failure> {
    let mut cfg: CampaignConfig = match config {
        Some(path) => serde_json::from_str(&read_input(path)?)
            .map_err(|e| Failure(exit::USAGE, format!("{}: {e}", path.display())))?,
        None => CampaignConfig::default(),
    };
    if let Some(k) = seeds {
        cfg.fuzz.samples = k;
    }
    if let Some(s) = seed {
        cfg.fuzz.seed = s;
    }
    let start = Instant::now();
    let report = run_campaign(&cfg)?;
    eprintln!(
        "{} scenes on {} worker(s) in {:.1} s",
        report.scenes,
        rayon::current_num_threads(),
        start.elapsed().as_secs_f64()
    );
    let mut dumped = Vec::new();
    if !report.failing.is_empty() {
        fs::create_dir_all(dump).map_err(|e| io_failure(dump, e))?;
        for f in &report.failing {
            let path = dump.join(format!("scene-{}-{}.json", f.index, f.event));
            let doc = SceneDocument::new(SceneData::Float(f.scene.clone()));
            fs::write(&path, doc.to_json()).map_err(|e| io_failure(&path, e))?;
            dumped.push(path.display().to_string());
        }
    }
    emit(&to_canonical_json(&fuzz_summary(&report, &dumped)), None)?;
    if report.degeneracy_rate > DEGENERACY_RATE_LIMIT {
        eprintln!(
            "degeneracy rate {:.4} exceeds {DEGENERACY_RATE_LIMIT}",
            report.degeneracy_rate
        );
    }
    Ok(if report.fails > 0 {
        eprintln!("{} scene(s) with Fails verdicts, dumped to {}", report.fails, dump.display());
        exit::FAILS
    } else if !report.clean() {
        eprintln!("{} reportable event(s), dumped to {}", report.failing.len(), dump.display());
        exit::SOFTWARE
    } else {
        exit::OK
    })
}

fn cmd_render(path: &Path, layers: Option<&str>, out: Option<&Path>, no_compute: bool, width: u32, height: u32) -> Result<i32, Failure> {
    let doc = load(path)?;
    let layers = match layers {
        Some(text) => Layer::parse_list(text).map_err(|e| Failure(exit::USAGE, e))?,
        None => Layer::defaults(),
    };
    let spec = RenderSpec {
        width,
        height,
        layers,
        ..RenderSpec::default()
    };
    match render_svg(&doc, &spec, !no_compute) {
        Ok(svg) => {
            emit(&svg, out)?;
            Ok(exit::OK)
        }
        Err(e @ RenderError::MissingLayer(_)) => Err(Failure(exit::NO_INPUT, e.to_string())),
    }
}

fn cmd_annotate(path: &Path, out: Option<&Path>) -> Result<i32, Failure> {
    let mut doc = load(path)?;
    doc.annotations = annotate(&doc.scene);
    emit(&doc.to_json(), out)?;
    Ok(exit::OK)
}

/// The scene document `carousel generate` writes.
pub fn generate_document(kind: &str, seed: u64, n: Option<usize>) -> Result<SceneDocument, String> {
    let scene = match kind {
        "fuzz" => {
            let mut cfg = FuzzConfig::default();
            if let Some(n) = n {
                cfg.n_range = (n, n);
            }
            cfg.validate().map_err(|e| e.to_string())?;
            SceneData::Float(generate_fuzz_scene(&cfg, seed).map_err(|e| e.to_string())?)
        }
        "lattice" => SceneData::Exact(generate_lattice_scene(seed).map_err(|e| e.to_string())?),
        "sharpness" => SceneData::Float(
            sharpness_construct(n.unwrap_or(4))
                .and_then(|inst| inst.scene())
                .map_err(|e| e.to_string())?,
        ),
        other => {
            let kind = CorollaryKind::parse(other).ok_or_else(|| format!("unknown scene kind `{other}`"))?;
            SceneData::Float(generate_corollary_scene(kind, seed).map_err(|e| e.to_string())?)
        }
    };
    Ok(SceneDocument::new(scene))
}

fn cmd_generate(kind: GenKind, seed: u64, n: Option<usize>, out: Option<&Path>) -> Result<i32, Failure> {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let doc = generate_document(&name, seed, n).map_err(|e| Failure(exit::USAGE, e))?;
    emit(&doc.to_json(), out)?;
    Ok(exit::OK)
}

fn cmd_sharpness(n: usize, scene_out: Option<&Path>) -> Result<i32, Failure> {
    let inst = sharpness_construct(n)?;
    let report = sharpness_validate(&inst)?;
    if let Some(path) = scene_out {
        let doc = SceneDocument::new(SceneData::Float(inst.scene()?));
        fs::write(path, doc.to_json()).map_err(|e| io_failure(path, e))?;
    }
    emit(&to_canonical_json(&report), None)?;
    if report.passed() {
        Ok(exit::OK)
    } else {
        for m in &report.mismatches {
            eprintln!("mismatch: {m}");
        }
        Ok(exit::SOFTWARE)
    }
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(value) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| Failure(exit::USAGE, format!("{WORKERS_ENV} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure(exit::SOFTWARE, e.to_string()))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    let result = configure_workers().and_then(|()| match &cli.command {
        Command::Csl { scene } => cmd_csl(scene),
        Command::Check { scene, method } => cmd_check(scene, *method),
        Command::Fuzz {
            seeds,
            config,
            seed,
            dump,
        } => cmd_fuzz(*seeds, config.as_deref(), *seed, dump),
        Command::Render {
            scene,
            layers,
            out,
            no_compute,
            width,
            height,
        } => cmd_render(scene, layers.as_deref(), out.as_deref(), *no_compute, *width, *height),
        Command::Annotate { scene, out } => cmd_annotate(scene, out.as_deref()),
        Command::Generate { kind, seed, n, out } => cmd_generate(*kind, *seed, *n, out.as_deref()),
        Command::Sharpness { n, scene_out } => cmd_sharpness(*n, scene_out.as_deref()),
    });
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("carousel: {msg}");
            code
        }
    }
}
