//! `auxetic`: validate, analyze, generate, design, trace and export periodic
//! frameworks.
//!
//! Exit status: 0 on success, 1 when an input is rejected (parse or
//! validation failure, design rejection, exhausted generation), 2 on usage
//! errors. Results go to standard output or the named files; diagnostics go
//! to standard error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use auxetic::analysis::{
    analyze, deformation_from_json, deformation_value, diagram_to_json, ellipsoid_diagram, deformation_to_json,
    InfDeformation, NotFoundReason, SearchConfig, SearchOutcome,
};
use auxetic::designer::{
    design_planar_n2, design_spatial_n2, search_octuple, search_quadruple, ApexChoice, Design, OctupleSearch,
    PencilInterval,
};
use auxetic::export::{export_patch, ExportFormat, SvgOptions};
use auxetic::generator::{builtin_kagome, builtin_pseudotriangulation, builtin_tetrahedral, generate, GeneratorConfig};
use auxetic::model::{
    framework_from_json, framework_to_json, matrix_value, patch_expand, rational_value, rows_value, to_pretty_json,
    vector_value, PeriodicFramework, QuotientMultigraph, ValidationReport,
};
use auxetic::pathfollow::{scalar_gram_pins, trace_auxetic_path, trace_to_json_lines, TraceConfig};
use auxetic::ratmath::{parse_rational, RatVec, Rational};
use auxetic::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "auxetic", version, about = "Strictly auxetic periodic frameworks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a framework file.
    Validate {
        framework: PathBuf,
    },
    /// Deformation space, screen and strict-auxetic verdict as JSON.
    Analyze(AnalyzeArgs),
    /// Build an auxetic framework from a quotient multigraph.
    Generate(GenerateArgs),
    /// Two-orbit planar design from four integer points.
    Design2d(DesignArgs),
    /// Two-orbit spatial design from eight integer points.
    Design3d(DesignArgs),
    /// Follow the auxetic path through a framework, as JSON lines.
    Trace(TraceArgs),
    /// Render a finite patch as SVG (d = 2) or OBJ.
    Export(ExportArgs),
    /// Write a built-in fixture.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Random starts of the multi-start search.
    #[arg(long, default_value_t = 64)]
    starts: usize,
    /// Seed of the multi-start search.
    #[arg(long = "search-seed", default_value_t = 0)]
    search_seed: u64,
    /// Ascent iterations per start.
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    /// Skip the search for an infeasibility witness.
    #[arg(long)]
    no_dual: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            starts: self.starts,
            seed: self.search_seed,
            iterations: self.iterations,
            dual: !self.no_dual,
            ..Default::default()
        }
    }

    fn echo(&self) -> Value {
        json!({
            "starts": self.starts,
            "search_seed": self.search_seed,
            "iterations": self.iterations,
            "dual": !self.no_dual,
        })
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    framework: PathBuf,
    /// Write the certificate here when one is found.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Write the ellipsoid diagram of the certificate here.
    #[arg(long)]
    diagram: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct GenerateArgs {
    /// JSON `{"n": .., "edges": [{"from", "to", "multiplicity"}]}`.
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "dim", default_value_t = 2)]
    dim: usize,
    /// Largest denominator of placement coordinates.
    #[arg(long, default_value_t = 1)]
    max_denominator: i64,
    /// Placement coordinates lie in [-bound, bound].
    #[arg(long, default_value_t = 4)]
    bound: i64,
    /// Largest denominator of sphere parameters.
    #[arg(long, default_value_t = 1)]
    sphere_denominator: i64,
    /// Sphere parameters lie in [-sphere-bound, sphere-bound].
    #[arg(long, default_value_t = 2)]
    sphere_bound: i64,
    /// Attempts before giving up on degenerate choices.
    #[arg(long, default_value_t = 100)]
    retries: usize,
    /// Framework output (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Run metadata: seed, grid, attempts.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// Integer points `x,y;x,y;...`.
    #[arg(long, conflicts_with = "search", required_unless_present = "search", allow_hyphen_values = true)]
    points: Option<String>,
    /// Draw random integer bases until one is admissible.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    /// Random coordinates lie in [-bound, bound].
    #[arg(long = "bound", default_value_t = 5)]
    bound: i64,
    /// Pencil parameter `p/q` of the ellipse or ellipsoid (default: a sample
    /// of the first admissible interval).
    #[arg(long, allow_hyphen_values = true)]
    parameter: Option<String>,
    /// Sphere parameter of the apex direction, `d-1` rationals (default 1/3 each).
    #[arg(long, conflicts_with = "apex_point", allow_hyphen_values = true)]
    apex_direction: Option<String>,
    /// Explicit apex on the selected member.
    #[arg(long, allow_hyphen_values = true)]
    apex_point: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Pencil, intervals, apex and search metadata.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    analysis: SearchArgs,
}

#[derive(Args)]
struct TraceArgs {
    framework: PathBuf,
    certificate: PathBuf,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Arc-length step.
    #[arg(long, default_value_t = 1e-2)]
    h: f64,
    /// Keep ω̇ a multiple of the identity along the path.
    #[arg(long)]
    scalar_gram: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Obj,
}

#[derive(Args)]
struct ExportArgs {
    framework: PathBuf,
    /// One entry per dimension: `lo:hi` (inclusive) or `k` for `0:k-1`.
    #[arg(long = "box", value_name = "RANGES", allow_hyphen_values = true)]
    patch_box: String,
    #[arg(long, value_enum)]
    format: Format,
    /// Pixels per length unit.
    #[arg(long, default_value_t = 100.0)]
    scale: f64,
    #[arg(long, default_value_t = 0.03)]
    stroke_width: f64,
    #[arg(long, default_value_t = 0.06)]
    vertex_radius: f64,
    #[arg(long, default_value_t = 0.5)]
    margin: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Kagome,
    Tetrahedral,
    Pseudotriangulation,
}

#[derive(Args)]
struct ExamplesArgs {
    #[arg(value_enum)]
    fixture: Fixture,
    /// Tetrahedral family parameter; (α−1)² + (β−1)² = 2.
    #[arg(long, default_value = "12/5", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "6/5", allow_hyphen_values = true)]
    beta: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
}

/// A command failure and its exit status.
enum Failure {
    Rejected(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match cli.command {
        Command::Validate { framework } => validate(&framework),
        Command::Analyze(a) => run_analyze(&a),
        Command::Generate(a) => run_generate(&a),
        Command::Design2d(a) => run_design(&a, 2),
        Command::Design3d(a) => run_design(&a, 3),
        Command::Trace(a) => run_trace(&a),
        Command::Export(a) => run_export(&a),
        Command::Examples(a) => run_examples(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            eprintln!("auxetic: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("auxetic: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = to_pretty_json(v);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn path_value(p: Option<&PathBuf>) -> Value {
    p.map_or(Value::Null, |p| Value::String(p.display().to_string()))
}

/// Non-finite floats have no JSON form.
fn float_value(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn report_value(report: &ValidationReport) -> Value {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({"code": f.code, "detail": f.detail}))
        .collect();
    json!({"valid": report.is_ok(), "failures": failures})
}

/// Parses and validates; an invalid framework prints its report and fails.
fn load_framework(path: &Path) -> Result<PeriodicFramework, Failure> {
    let fw = framework_from_json(&read(path)?)?;
    let report = fw.validate();
    if !report.is_ok() {
        emit(None, &pretty(&report_value(&report)))?;
        return Err(Failure::Rejected(format!("invalid framework: {report}")));
    }
    Ok(fw)
}

fn validate(path: &Path) -> Outcome {
    let fw = load_framework(path)?;
    emit(None, &pretty(&report_value(&fw.validate())))
}

fn write_certificate(path: Option<&PathBuf>, def: &InfDeformation) -> Outcome {
    match path {
        Some(p) => emit(Some(p), &ensure_newline(deformation_to_json(def))),
        None => Ok(()),
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn run_analyze(a: &AnalyzeArgs) -> Outcome {
    let fw = load_framework(&a.framework)?;
    let result = analyze(&fw, &a.search.config());
    let mut out = Map::new();
    out.insert("dimension".into(), json!(fw.dim()));
    out.insert("vertex_orbits".into(), json!(fw.n()));
    out.insert("edge_orbits".into(), json!(fw.m()));
    out.insert("rank".into(), json!(result.rank));
    out.insert("unknowns".into(), json!(result.columns));
    out.insert("dof".into(), json!(result.dof));
    out.insert("dof_formula".into(), json!(result.dof_formula));
    out.insert(
        "lattice_determinant".into(),
        fw.lattice().map_or(Value::Null, |l| rational_value(&num_abs(&l.det()))),
    );
    out.insert("gram_determinant".into(), rational_value(&fw.gram_determinant()));
    out.insert(
        "screen".into(),
        match &result.screen {
            Ok(()) => json!({"passed": true}),
            Err(f) => json!({"passed": false, "failure": f.code(), "detail": f.to_string()}),
        },
    );
    let (mut certificate, mut diagram) = (Value::Null, Value::Null);
    match &result.outcome {
        SearchOutcome::Strict(def) => {
            out.insert("verdict".into(), json!("strictly auxetic"));
            out.insert("reason".into(), Value::Null);
            write_certificate(a.certificate.as_ref(), def)?;
            certificate = path_value(a.certificate.as_ref());
            if let Some(p) = &a.diagram {
                let diag = ellipsoid_diagram(&fw, def)?;
                emit(Some(p), &ensure_newline(diagram_to_json(&diag)))?;
                diagram = path_value(Some(p));
            }
            out.insert("omegadot".into(), deformation_value(def)["omegadot"].clone());
        }
        SearchOutcome::NotFound(nf) => {
            let verdict = if nf.is_proof() { "not strictly auxetic" } else { "inconclusive" };
            out.insert("verdict".into(), json!(verdict));
            let reason = match &nf.reason {
                NotFoundReason::Rigid => json!("rigid"),
                NotFoundReason::Screened => json!("screened"),
                NotFoundReason::Inconclusive => json!("inconclusive"),
                NotFoundReason::Obstructed { witness } => json!({"obstructed": matrix_value(witness)}),
            };
            out.insert("reason".into(), reason);
            out.insert("best_lambda_min".into(), float_value(nf.best_lambda_min));
        }
    }
    out.insert("certificate".into(), certificate);
    out.insert("diagram".into(), diagram);
    out.insert("settings".into(), a.search.echo());
    emit(None, &pretty(&Value::Object(out)))
}

fn num_abs(r: &Rational) -> Rational {
    if r < &Rational::from_integer(0.into()) {
        -r
    } else {
        r.clone()
    }
}

fn run_generate(a: &GenerateArgs) -> Outcome {
    let graph = QuotientMultigraph::parse(&read(&a.graph)?)?;
    let config = GeneratorConfig {
        seed: a.seed,
        max_denominator: a.max_denominator,
        bound: a.bound,
        sphere_denominator: a.sphere_denominator,
        sphere_bound: a.sphere_bound,
        retries: a.retries,
    };
    if config.max_denominator < 1 || config.sphere_denominator < 1 || config.bound < 1 || config.sphere_bound < 1 {
        return Err(Failure::Usage("denominators and bounds must be positive".into()));
    }
    let out = generate(&graph, a.dim, &config)?;
    emit(a.output.as_deref(), &ensure_newline(framework_to_json(&out.framework)))?;
    write_certificate(a.certificate.as_ref(), &out.certificate.deformation)?;
    if let Some(p) = &a.report {
        let report = json!({
            "seed": a.seed,
            "dimension": a.dim,
            "attempts": out.attempts,
            "grid": {
                "max_denominator": a.max_denominator,
                "bound": a.bound,
                "sphere_denominator": a.sphere_denominator,
                "sphere_bound": a.sphere_bound,
                "retries": a.retries,
            },
            "placement": rows_value(&out.diagram.placement),
            "certificate_note": out.certificate.note,
            "self_intersection": "unchecked",
        });
        emit(Some(p), &pretty(&report))?;
    }
    Ok(())
}

fn parse_vector(text: &str) -> Result<RatVec, Failure> {
    text.split(',')
        .map(|x| parse_rational(x).map_err(|e| Failure::Usage(e.to_string())))
        .collect()
}

fn parse_points(text: &str) -> Result<Vec<RatVec>, Failure> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_vector).collect()
}

fn interval_value(iv: &PencilInterval) -> Value {
    let end = |x: &Option<Rational>| x.as_ref().map_or(Value::Null, rational_value);
    json!({"lo": end(&iv.lo), "hi": end(&iv.hi), "sample": rational_value(&iv.sample)})
}

fn run_design(a: &DesignArgs, dim: usize) -> Outcome {
    let (points, trial) = match &a.points {
        Some(text) => (parse_points(text)?, None),
        None => {
            let search = OctupleSearch {
                seed: a.seed,
                trials: a.trials,
                bound: a.bound,
                ..Default::default()
            };
            let hit = if dim == 2 { search_quadruple(&search) } else { search_octuple(&search) };
            let hit = hit.ok_or_else(|| {
                Failure::Rejected(format!("no admissible base in {} trials at seed {}", a.trials, a.seed))
            })?;
            (hit.points, Some(hit.trial))
        }
    };
    let parameter = a
        .parameter
        .as_deref()
        .map(|p| parse_rational(p).map_err(|e| Failure::Usage(e.to_string())))
        .transpose()?;
    let apex = match (&a.apex_point, &a.apex_direction) {
        (Some(p), _) => ApexChoice::Point(parse_vector(p)?),
        (None, Some(d)) => ApexChoice::Direction(parse_vector(d)?),
        (None, None) => ApexChoice::default_for(dim),
    };
    let config = a.analysis.config();
    let design: Design = if dim == 2 {
        design_planar_n2(&points, parameter, &apex, &config)?
    } else {
        design_spatial_n2(&points, parameter, &apex, &config)?
    };
    emit(a.output.as_deref(), &ensure_newline(framework_to_json(&design.framework)))?;
    write_certificate(a.certificate.as_ref(), &design.certificate)?;
    if let Some(p) = &a.report {
        let report = json!({
            "points": rows_value(&design.points),
            "search": trial.map_or(Value::Null, |t| json!({"seed": a.seed, "trial": t, "trials": a.trials, "bound": a.bound})),
            "pencil": design.pencil.iter().map(|q| vector_value(&q.coefficients())).collect::<Vec<_>>(),
            "parameter": rational_value(&design.parameter),
            "member": vector_value(&design.member.coefficients()),
            "ellipse_intervals": design.ellipse_intervals.iter().map(interval_value).collect::<Vec<_>>(),
            "apex": vector_value(&design.apex),
            "deformation_dimension": design.deformation_dimension,
            "settings": a.analysis.echo(),
        });
        emit(Some(p), &pretty(&report))?;
    }
    Ok(())
}

fn run_trace(a: &TraceArgs) -> Outcome {
    let fw = load_framework(&a.framework)?;
    let cert = deformation_from_json(&read(&a.certificate)?)?;
    if cert.qdot.len() != fw.n() || cert.dim() != fw.dim() {
        return Err(Failure::Usage("certificate does not match the framework's size".into()));
    }
    let config = TraceConfig {
        h: a.h,
        max_steps: a.steps,
        pins: a.scalar_gram.then(|| scalar_gram_pins(fw.dim(), fw.n())),
    };
    let trace = trace_auxetic_path(&fw, &cert, &config)?;
    emit(a.output.as_deref(), &trace_to_json_lines(&trace))
}

fn parse_box(text: &str) -> Result<Vec<(i64, i64)>, Failure> {
    let bad = || Failure::Usage(format!("bad box {text:?}; expected entries lo:hi or k"));
    text.split(',')
        .map(|entry| match entry.split_once(':') {
            Some((lo, hi)) => Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)),
            None => {
                let k: i64 = entry.trim().parse().map_err(|_| bad())?;
                Ok((0, k - 1))
            }
        })
        .collect()
}

fn run_export(a: &ExportArgs) -> Outcome {
    let fw = load_framework(&a.framework)?;
    let patch = patch_expand(&fw, &parse_box(&a.patch_box)?)?;
    let format = match a.format {
        Format::Svg => ExportFormat::Svg,
        Format::Obj => ExportFormat::Obj,
    };
    let options = SvgOptions {
        scale: a.scale,
        stroke_width: a.stroke_width,
        vertex_radius: a.vertex_radius,
        margin: a.margin,
    };
    emit(a.output.as_deref(), &export_patch(&patch, format, &options)?)
}

fn run_examples(a: &ExamplesArgs) -> Outcome {
    let (fw, cert) = match a.fixture {
        Fixture::Kagome => builtin_kagome(),
        Fixture::Pseudotriangulation => {
            let (fw, c) = builtin_pseudotriangulation();
            (fw, c.deformation)
        }
        Fixture::Tetrahedral => {
            let parse = |s: &str| parse_rational(s).map_err(|e| Failure::Usage(e.to_string()));
            let (fw, c) = builtin_tetrahedral(&parse(&a.alpha)?, &parse(&a.beta)?)?;
            (fw, c.deformation)
        }
    };
    emit(a.output.as_deref(), &ensure_newline(framework_to_json(&fw)))?;
    write_certificate(a.certificate.as_ref(), &cert)
}
