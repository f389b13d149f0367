//! Command-line front end. Every subcommand resolves its configuration
//! (flags over config-file entries over built-in defaults), runs one
//! measurement, and emits a deterministic report: identical invocations
//! produce byte-identical output. Wall-clock timing goes to the diagnostic
//! stream only. Exit codes: 0 success / all checks pass, 1 a verification
//! reported a violation (a finding, not a crash), 2 usage error, 3
//! numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::charts;
use crate::conformance;
use crate::embeddings::{self, Branch, EmbeddingMap};
use crate::geodesics::{self, IntegrationConfig, Termination};
use crate::geometry::{self, ChartSpec};
use crate::report::{num9, render_csv, sig9, Report, TOOL_NAME};
use crate::topology::{self, Connectivity, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    fn numerical(msg: impl std::fmt::Display) -> CliError {
        CliError::Numerical(msg.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "droste",
    version,
    about = "Numerical toolkit for the Schwarzschild gravitational field: \
             chart verification, geodesic tracing, coordinate transitions, \
             flat-space embeddings, curvature maps, and topology queries."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure vacuum (or flatness) residuals of a chart over a grid.
    Verify(VerifyArgs),
    /// Integrate a geodesic and report samples, drifts, and events.
    Trace(TraceArgs),
    /// Map a point through a registered chart transition.
    Transform(TransformArgs),
    /// Emit a point cloud of a flat-space embedding map.
    Embed(EmbedArgs),
    /// Map the sectional curvature of the extended plane chart.
    Curvature(CurvatureArgs),
    /// Connectivity, Hausdorff-witness, and bridge queries.
    Topology(TopologyArgs),
    /// Run the printed-formula conformance dossier.
    Conformance(ConformanceArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Mass parameter (default 1).
    #[arg(long)]
    mu: Option<f64>,
    /// Config file of key=value lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed recorded in the report (reserved for sampling commands).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for grid sweeps (default: machine parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Report file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format: json or csv.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Chart identifier.
    #[arg(long)]
    chart: Option<String>,
    /// Grid spec, e.g. r=1.5:10:50,t=0:1:3 (axis=min:max:count or axis=value).
    #[arg(long)]
    grid: Option<String>,
    /// Residual threshold separating pass from violation.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    common: Common,
    /// Chart identifier (default ks).
    #[arg(long)]
    chart: Option<String>,
    /// Initial data, e.g. u=1,v=1,du=0,dv=-1 (d<coord> are velocities).
    #[arg(long)]
    init: Option<String>,
    /// Require the initial tangent to be null.
    #[arg(long)]
    null: bool,
    /// Require the initial tangent to be timelike.
    #[arg(long)]
    timelike: bool,
    /// Affine-parameter budget.
    #[arg(long)]
    affine_max: Option<f64>,
    /// Include boundary-crossing events in the report.
    #[arg(long)]
    events: bool,
    /// Number of samples to report (evenly thinned).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    common: Common,
    /// Source chart identifier.
    #[arg(long)]
    from: String,
    /// Target chart identifier.
    #[arg(long)]
    to: String,
    /// Transition branch (for example R_II_plus; default exterior).
    #[arg(long)]
    region: Option<String>,
    /// Point in source coordinates, e.g. t=0,r=2.
    #[arg(long)]
    point: Option<String>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[command(flatten)]
    common: Common,
    /// Embedding map: kasner or fronsdal.
    #[arg(long)]
    map: Option<String>,
    /// Branch for fronsdal: exterior, interior, mirror, printed_u3.
    #[arg(long)]
    branch: Option<String>,
    /// Grid spec over the chart coordinates.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args, Debug)]
struct CurvatureArgs {
    #[command(flatten)]
    common: Common,
    /// Grid spec over (u, v).
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Args, Debug)]
struct TopologyArgs {
    #[command(flatten)]
    common: Common,
    /// Space: schwarzschild, hd, ks, er (hausdorff also: doubled_line).
    #[arg(long)]
    space: Option<String>,
    /// Query: connectivity, hausdorff, or bridge.
    #[arg(long)]
    query: Option<String>,
    /// Start point for connectivity, e.g. t=0,r=0.5.
    #[arg(long)]
    from: Option<String>,
    /// End point for connectivity.
    #[arg(long)]
    to: Option<String>,
    /// Search budget (breadth-first expansions).
    #[arg(long)]
    budget: Option<usize>,
    /// Witness search: number of boundary-approach sequences.
    #[arg(long)]
    sequences: Option<usize>,
    /// Witness search: certification resolution.
    #[arg(long)]
    resolution: Option<f64>,
}

#[derive(Args, Debug)]
struct ConformanceArgs {
    #[command(flatten)]
    common: Common,
}

/// Parse and run; returns the process exit code. Timing is printed to the
/// diagnostic stream so reports stay byte-identical across runs.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let started = Instant::now();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Trace(a) => run_trace(a),
        Command::Transform(a) => run_transform(a),
        Command::Embed(a) => run_embed(a),
        Command::Curvature(a) => run_curvature(a),
        Command::Topology(a) => run_topology(a),
        Command::Conformance(a) => run_conformance(a),
    };
    eprintln!("wall_clock_ms={}", started.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            EXIT_NUMERICAL
        }
    }
}

// ---------------------------------------------------------------------------
// configuration resolution

#[derive(Debug, Default)]
struct FileConfig(BTreeMap<String, String>);

impl FileConfig {
    fn load(path: Option<&PathBuf>) -> Result<FileConfig, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!(
                    "config {} line {}: expected key=value",
                    path.display(),
                    lineno + 1
                )));
            };
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig(map))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.as_str())
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| CliError::usage(format!("config key '{key}': cannot parse '{raw}'"))),
        }
    }
}

fn resolve_mu(flag: Option<f64>, file: &FileConfig) -> Result<f64, CliError> {
    let mu = match flag {
        Some(x) => x,
        None => file.parse::<f64>("mu")?.unwrap_or(1.0),
    };
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(CliError::usage(format!("mu must be positive, got {mu}")));
    }
    Ok(mu)
}

fn resolve_str(flag: Option<String>, file: &FileConfig, key: &str, default: &str) -> String {
    flag.unwrap_or_else(|| file.get(key).unwrap_or(default).to_string())
}

fn resolve_opt_str(flag: Option<String>, file: &FileConfig, key: &str) -> Option<String> {
    flag.or_else(|| file.get(key).map(|s| s.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

fn resolve_format(common: &Common, file: &FileConfig) -> Result<Format, CliError> {
    let raw = resolve_str(common.format.clone(), file, "format", "json");
    match raw.as_str() {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(CliError::usage(format!(
            "format must be json or csv, got '{other}'"
        ))),
    }
}

/// Run `f` on a worker pool of the requested size; `None` uses the global
/// default pool (machine parallelism). Output assembly is ordered, so the
/// thread count never changes report bytes.
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::usage("jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::numerical(format!("worker pool: {e}"))),
    }
}

fn emit(
    report: &Report,
    format: Format,
    csv: Option<String>,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let text = match format {
        Format::Json => report.render_json(),
        Format::Csv => {
            csv.ok_or_else(|| CliError::usage("csv output is not available for this subcommand"))?
        }
    };
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::numerical(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// CSV prologue embedding the same identity + config as the JSON shape.
fn csv_prologue(report: &Report) -> String {
    let mut head = format!(
        "# tool={} version={} command={}\n",
        TOOL_NAME,
        crate::report::tool_version(),
        report.command
    );
    for (k, v) in &report.config {
        let rendered = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        head.push_str(&format!("# config {k}={rendered}\n"));
    }
    head
}

// ---------------------------------------------------------------------------
// coordinate grammar

fn coord_names(id: &str) -> Result<Vec<&'static str>, CliError> {
    Ok(match id {
        "hd" | "painleve_gullstrand" | "eddington_paper" | "eddington_derived" => {
            vec!["t", "r", "theta", "phi"]
        }
        "uniquely2" | "schwarzschild_unimodular" => vec!["t", "h", "theta", "phi"],
        "lemaitre_paper" | "lemaitre_alt" => vec!["tau", "rho", "theta", "phi"],
        "ks" => vec!["u", "v", "theta", "phi"],
        "kruskal_xy" => vec!["x", "y", "theta", "phi"],
        "er_bridge" | "er_bridge_paper" => vec!["t", "u", "theta", "phi"],
        "euclid_shifted" => vec!["R", "theta", "phi"],
        "hd_plane" => vec!["t", "r"],
        "ks_plane" => vec!["u", "v"],
        other => {
            return Err(CliError::usage(format!(
                "unknown chart '{other}' (known: {})",
                charts::CHART_IDS.join(", ")
            )))
        }
    })
}

fn default_coord(name: &str, mass: f64) -> f64 {
    match name {
        "theta" => 1.1,
        "phi" => 0.3,
        "t" | "tau" => 0.0,
        "r" | "h" | "rho" | "R" | "H" => 2.0 * mass,
        "u" | "v" => mass.sqrt(),
        "x" => 1.0,
        "y" => 0.0,
        _ => 0.0,
    }
}

fn parse_assignments(spec: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((k, v)) = part.split_once('=') else {
            return Err(CliError::usage(format!("expected key=value, got '{part}'")));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_f64(raw: &str, what: &str) -> Result<f64, CliError> {
    raw.parse::<f64>()
        .map_err(|_| CliError::usage(format!("{what}: cannot parse '{raw}' as a number")))
}

/// Point in chart coordinates: listed names set values, the rest take
/// defaults. Velocity components use the `d<name>` spelling.
fn parse_point(
    spec: Option<&str>,
    names: &[&str],
    mass: f64,
) -> Result<(Vec<f64>, Vec<f64>, bool), CliError> {
    let mut position: Vec<f64> = names.iter().map(|n| default_coord(n, mass)).collect();
    let mut velocity = vec![0.0; names.len()];
    let mut any_velocity = false;
    if let Some(spec) = spec {
        for (key, raw) in parse_assignments(spec)? {
            let value = parse_f64(&raw, &key)?;
            if let Some(idx) = names.iter().position(|n| *n == key) {
                position[idx] = value;
            } else if let Some(stripped) = key.strip_prefix('d') {
                let idx = names.iter().position(|n| *n == stripped).ok_or_else(|| {
                    CliError::usage(format!(
                        "unknown coordinate '{key}' (coordinates: {})",
                        names.join(", ")
                    ))
                })?;
                velocity[idx] = value;
                any_velocity = true;
            } else {
                return Err(CliError::usage(format!(
                    "unknown coordinate '{key}' (coordinates: {})",
                    names.join(", ")
                )));
            }
        }
    }
    Ok((position, velocity, any_velocity))
}

#[derive(Debug, Clone)]
struct Axis {
    name: String,
    min: f64,
    max: f64,
    count: usize,
}

impl Axis {
    fn scalar(name: &str, value: f64) -> Axis {
        Axis {
            name: name.into(),
            min: value,
            max: value,
            count: 1,
        }
    }

    fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| self.min + step * k as f64)
            .collect()
    }

    fn spec_string(&self) -> String {
        if self.count == 1 {
            format!("{}={}", self.name, sig9(self.min))
        } else {
            format!(
                "{}={}:{}:{}",
                self.name,
                sig9(self.min),
                sig9(self.max),
                self.count
            )
        }
    }
}

fn parse_grid(spec: &str, names: &[&str]) -> Result<Vec<Axis>, CliError> {
    let mut axes: Vec<Axis> = Vec::new();
    for (key, raw) in parse_assignments(spec)? {
        if !names.contains(&key.as_str()) {
            return Err(CliError::usage(format!(
                "unknown grid axis '{key}' (coordinates: {})",
                names.join(", ")
            )));
        }
        if axes.iter().any(|a| a.name == key) {
            return Err(CliError::usage(format!("duplicate grid axis '{key}'")));
        }
        let parts: Vec<&str> = raw.split(':').collect();
        let axis = match parts.as_slice() {
            [value] => Axis::scalar(&key, parse_f64(value, &key)?),
            [min, max, count] => {
                let min = parse_f64(min, &key)?;
                let max = parse_f64(max, &key)?;
                let count: usize = count
                    .parse()
                    .map_err(|_| CliError::usage(format!("{key}: bad count '{count}'")))?;
                if count < 1 {
                    return Err(CliError::usage(format!("{key}: count must be >= 1")));
                }
                if count > 1 && !(min < max) {
                    return Err(CliError::usage(format!(
                        "{key}: need min < max for a ranged axis"
                    )));
                }
                Axis {
                    name: key.clone(),
                    min,
                    max,
                    count,
                }
            }
            _ => {
                return Err(CliError::usage(format!(
                    "{key}: expected value or min:max:count"
                )))
            }
        };
        axes.push(axis);
    }
    if axes.is_empty() {
        return Err(CliError::usage("grid spec is empty"));
    }
    Ok(axes)
}

/// Cartesian product in axis order (last axis fastest); coordinates not
/// named by any axis take their defaults.
fn grid_points(axes: &[Axis], names: &[&str], mass: f64) -> Result<Vec<Vec<f64>>, CliError> {
    let total: usize = axes.iter().map(|a| a.count).product();
    if total == 0 || total > 2_000_000 {
        return Err(CliError::usage(format!(
            "grid has {total} points; the supported range is 1..=2000000"
        )));
    }
    let base: Vec<f64> = names.iter().map(|n| default_coord(n, mass)).collect();
    let slots: Vec<usize> = axes
        .iter()
        .map(|a| names.iter().position(|n| *n == a.name).expect("validated"))
        .collect();
    let axis_values: Vec<Vec<f64>> = axes.iter().map(|a| a.values()).collect();
    let mut points = Vec::with_capacity(total);
    let mut index = vec![0usize; axes.len()];
    loop {
        let mut p = base.clone();
        for (k, &slot) in slots.iter().enumerate() {
            p[slot] = axis_values[k][index[k]];
        }
        points.push(p);
        // odometer increment, last axis fastest
        let mut k = axes.len();
        loop {
            if k == 0 {
                return Ok(points);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < axis_values[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

fn point_object(names: &[&str], p: &[f64]) -> Value {
    let mut obj = Map::new();
    for (n, x) in names.iter().zip(p) {
        obj.insert((*n).to_string(), num9(*x));
    }
    Value::Object(obj)
}

// ---------------------------------------------------------------------------
// verify

fn default_grid(id: &str, mass: f64) -> Vec<Axis> {
    let m = mass;
    let s = mass.sqrt();
    let axis = |name: &str, min: f64, max: f64, count: usize| Axis {
        name: name.into(),
        min,
        max,
        count,
    };
    match id {
        "hd" | "eddington_paper" | "eddington_derived" | "painleve_gullstrand" => {
            vec![axis("r", 1.5 * m, 10.0 * m, 50), axis("t", 0.0, 1.0, 3)]
        }
        "schwarzschild_unimodular" => {
            vec![axis("h", 0.5 * m, 10.0 * m, 50), axis("t", 0.0, 1.0, 3)]
        }
        "uniquely2" => vec![axis("h", 1.5 * m, 10.0 * m, 50), axis("t", 0.0, 1.0, 3)],
        "lemaitre_paper" | "lemaitre_alt" => vec![
            axis("rho", 1.0 * m, 8.0 * m, 50),
            axis("tau", 0.0, 0.5 * m, 3),
        ],
        "ks" | "ks_plane" => vec![
            axis("u", -0.8 * s, 0.8 * s, 12),
            axis("v", -0.8 * s, 0.8 * s, 12),
        ],
        "kruskal_xy" => vec![axis("x", 0.3, 1.2, 12), axis("y", -0.25, 0.25, 12)],
        "er_bridge" | "er_bridge_paper" => {
            vec![axis("u", 0.25 * s, 2.0 * s, 50), axis("t", 0.0, 1.0, 3)]
        }
        "euclid_shifted" => vec![axis("R", 0.21 * m, 3.0 * m, 47), axis("theta", 0.6, 2.4, 3)],
        "hd_plane" => vec![axis("r", 1.5 * m, 10.0 * m, 50), axis("t", 0.0, 1.0, 3)],
        _ => vec![axis("r", 1.5 * m, 10.0 * m, 50), axis("t", 0.0, 1.0, 3)],
    }
}

/// Residual instrument per chart: full curvature flatness for the flat
/// chart, vacuum (Ricci) residual otherwise.
fn chart_residual(chart: &ChartSpec, p: &[f64]) -> Result<f64, geometry::GeometryError> {
    if chart.id == "euclid_shifted" {
        Ok(geometry::riemann(chart, p)?.max_abs())
    } else {
        geometry::ricci_and_residual(chart, p).map(|(_, r)| r)
    }
}

fn run_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let chart_id = resolve_str(args.chart, &file, "chart", "hd");
    let names = coord_names(&chart_id)?;
    let chart = charts::build_chart(&chart_id, mass).map_err(|e| CliError::usage(e.to_string()))?;
    let tol = match args.tol {
        Some(t) => t,
        None => file.parse::<f64>("tol")?.unwrap_or(1e-5),
    };
    let grid_spec = resolve_opt_str(args.grid, &file, "grid");
    let axes = match &grid_spec {
        Some(s) => parse_grid(s, &names)?,
        None => default_grid(&chart_id, mass),
    };
    let format = resolve_format(&args.common, &file)?;
    let points = grid_points(&axes, &names, mass)?;

    let results: Result<Vec<Option<f64>>, String> = with_jobs(args.common.jobs, || {
        points
            .par_iter()
            .map(|p| {
                if !chart.contains(p) {
                    return Ok(None);
                }
                chart_residual(&chart, p)
                    .map(Some)
                    .map_err(|e| e.to_string())
            })
            .collect()
    })?;
    let results = results.map_err(CliError::Numerical)?;

    let mut max_residual = 0.0f64;
    let mut worst: Option<&Vec<f64>> = None;
    let mut evaluated = 0usize;
    for (p, res) in points.iter().zip(&results) {
        if let Some(r) = res {
            evaluated += 1;
            if *r >= max_residual {
                max_residual = *r;
                worst = Some(p);
            }
        }
    }
    if evaluated == 0 {
        return Err(CliError::usage(
            "grid lies entirely outside the chart domain",
        ));
    }
    let pass = max_residual < tol;

    let mut report = Report::new("verify");
    report
        .config_str("chart", &chart_id)
        .config_num("mu", mass)
        .config_num("tol", tol)
        .config_str(
            "grid",
            &axes
                .iter()
                .map(Axis::spec_string)
                .collect::<Vec<_>>()
                .join(","),
        )
        .config_value("seed", Value::from(args.common.seed.unwrap_or(0)))
        .config_str(
            "jobs",
            &args
                .common
                .jobs
                .map(|j| j.to_string())
                .unwrap_or_else(|| "auto".into()),
        );
    report.body = json!({
        "instrument": if chart.id == "euclid_shifted" { "flatness (max |Riemann|)" } else { "vacuum (max |Ricci|)" },
        "points_total": points.len(),
        "points_evaluated": evaluated,
        "points_skipped": points.len() - evaluated,
        "max_residual": num9(max_residual),
        "worst_point": worst.map(|p| point_object(&names, p)),
        "verdict": if pass { "pass" } else { "violation" },
    });

    let csv = if format == Format::Csv {
        let mut rows = Vec::new();
        for (p, res) in points.iter().zip(&results) {
            if let Some(r) = res {
                let mut row: Vec<Value> = p.iter().map(|x| json!(x)).collect();
                row.push(json!(r));
                rows.push(row);
            }
        }
        let mut headers: Vec<&str> = names.clone();
        headers.push("residual");
        Some(format!(
            "{}{}",
            csv_prologue(&report),
            render_csv(&headers, &rows)
        ))
    } else {
        None
    };
    emit(&report, format, csv, args.common.out.as_ref())?;
    Ok(if pass { EXIT_OK } else { EXIT_FINDING })
}

// ---------------------------------------------------------------------------
// trace

fn run_trace(args: TraceArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let chart_id = resolve_str(args.chart, &file, "chart", "ks");
    let names = coord_names(&chart_id)?;
    let chart = charts::build_chart(&chart_id, mass).map_err(|e| CliError::usage(e.to_string()))?;
    let init_spec = resolve_opt_str(args.init, &file, "init").ok_or_else(|| {
        CliError::usage("trace requires --init (coordinates and d<coord> velocities)")
    })?;
    let (position, velocity, any_velocity) = parse_point(Some(&init_spec), &names, mass)?;
    if !any_velocity || velocity.iter().all(|v| *v == 0.0) {
        return Err(CliError::usage(
            "initial velocity is zero; set at least one d<coord> component",
        ));
    }
    if !chart.contains(&position) {
        return Err(CliError::usage(format!(
            "initial position {position:?} is outside chart '{chart_id}'"
        )));
    }
    if args.null && args.timelike {
        return Err(CliError::usage("--null and --timelike are exclusive"));
    }
    let affine_max = match args.affine_max {
        Some(x) => x,
        None => file.parse::<f64>("affine_max")?.unwrap_or(10.0),
    };
    if !(affine_max > 0.0) {
        return Err(CliError::usage("affine-max must be positive"));
    }
    let sample_budget = args.samples.unwrap_or(17).max(2);
    let format = resolve_format(&args.common, &file)?;

    // Declared causal type must match the measured one.
    let g = geometry::metric_eval(&chart, &position).map_err(CliError::numerical)?;
    let mut q = 0.0;
    let mut scale = 0.0;
    for i in 0..chart.dim {
        for j in 0..chart.dim {
            let term = g[(i, j)] * velocity[i] * velocity[j];
            q += term;
            scale += term.abs();
        }
    }
    let declared = if args.null {
        if q.abs() > 1e-6 * scale.max(1e-12) {
            return Err(CliError::usage(format!(
                "--null given but g(x,x) = {} is not within tolerance of zero",
                sig9(q)
            )));
        }
        "null"
    } else if args.timelike {
        if !(q < 0.0) {
            return Err(CliError::usage(format!(
                "--timelike given but g(x,x) = {} is not negative",
                sig9(q)
            )));
        }
        "timelike"
    } else {
        "unchecked"
    };

    let cfg = IntegrationConfig::new(affine_max);
    let trajectory = geodesics::integrate(&chart, &position, &velocity, &cfg)
        .map_err(|e| CliError::numerical(e.to_string()))?;

    let n = trajectory.samples.len();
    let picks: Vec<usize> = if n <= sample_budget {
        (0..n).collect()
    } else {
        (0..sample_budget)
            .map(|k| k * (n - 1) / (sample_budget - 1))
            .collect()
    };
    let samples_json: Vec<Value> = picks
        .iter()
        .map(|&i| {
            let s = &trajectory.samples[i];
            json!({
                "lambda": num9(s.lambda),
                "position": s.position.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                "velocity": s.velocity.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                "energy": s.energy.map(num9),
                "norm": num9(s.norm),
            })
        })
        .collect();

    let mut report = Report::new("trace");
    report
        .config_str("chart", &chart_id)
        .config_num("mu", mass)
        .config_str("init", &init_spec)
        .config_str("causal", declared)
        .config_num("affine_max", affine_max)
        .config_value("samples", Value::from(sample_budget))
        .config_value("seed", Value::from(args.common.seed.unwrap_or(0)));
    let mut body = Map::new();
    body.insert(
        "termination".into(),
        Value::from(trajectory.termination.tag()),
    );
    body.insert("steps".into(), Value::from(trajectory.steps));
    body.insert("lambda_end".into(), num9(trajectory.last().lambda));
    body.insert("norm_drift".into(), num9(trajectory.norm_drift()));
    body.insert(
        "energy_drift".into(),
        trajectory.energy_drift().map(num9).unwrap_or(Value::Null),
    );
    body.insert("samples".into(), Value::from(samples_json));
    if args.events {
        let events: Vec<Value> = trajectory
            .events
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "lambda": num9(e.lambda),
                    "position": e.position.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                })
            })
            .collect();
        body.insert("events".into(), Value::from(events));
    }
    report.body = Value::Object(body);

    let csv = if format == Format::Csv {
        let mut headers: Vec<&str> = vec!["lambda"];
        headers.extend(names.iter());
        let dnames: Vec<String> = names.iter().map(|n| format!("d{n}")).collect();
        headers.extend(dnames.iter().map(|s| s.as_str()));
        headers.push("energy");
        headers.push("norm");
        let rows: Vec<Vec<Value>> = picks
            .iter()
            .map(|&i| {
                let s = &trajectory.samples[i];
                let mut row = vec![json!(s.lambda)];
                row.extend(s.position.iter().map(|x| json!(x)));
                row.extend(s.velocity.iter().map(|x| json!(x)));
                row.push(s.energy.map(|e| json!(e)).unwrap_or(Value::Null));
                row.push(json!(s.norm));
                row
            })
            .collect();
        Some(format!(
            "{}{}",
            csv_prologue(&report),
            render_csv(&headers, &rows)
        ))
    } else {
        None
    };
    emit(&report, format, csv, args.common.out.as_ref())?;
    Ok(match trajectory.termination {
        Termination::StepUnderflow => EXIT_NUMERICAL,
        _ => EXIT_OK,
    })
}

// ---------------------------------------------------------------------------
// transform

fn run_transform(args: TransformArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let branch = resolve_str(args.region, &file, "region", "exterior");
    let format = resolve_format(&args.common, &file)?;

    // Look up the transition in either direction.
    let (map, forward) = match charts::transition(&args.from, &args.to, &branch, mass) {
        Ok(map) => (map, true),
        Err(_) => match charts::transition(&args.to, &args.from, &branch, mass) {
            Ok(map) => (map, false),
            Err(_) => {
                let catalog: Vec<String> = charts::transition_catalog()
                    .iter()
                    .map(|(s, t, b)| format!("{s}->{t} [{b}]"))
                    .collect();
                return Err(CliError::usage(format!(
                    "no transition {} -> {} on branch '{}'; available: {}",
                    args.from,
                    args.to,
                    branch,
                    catalog.join(", ")
                )));
            }
        },
    };
    let source_names = coord_names(&args.from)?;
    let target_names = coord_names(&args.to)?;
    let point_spec = resolve_opt_str(args.point, &file, "point");
    let (point, _, _) = parse_point(point_spec.as_deref(), &source_names, mass)?;
    let apply = if forward { &map.forward } else { &map.inverse };
    let image = apply(&point).map_err(|e| CliError::usage(e.to_string()))?;

    // Human-readable line: the coordinates the map actually changed.
    let mut shown = Vec::new();
    for (i, name) in target_names.iter().enumerate() {
        let renamed = source_names.get(i) != Some(name);
        let moved = (image[i] - point[i]).abs() > 1e-12 * (1.0 + point[i].abs());
        if renamed || moved {
            shown.push(format!("{name}={:.6}", image[i]));
        }
    }
    if shown.is_empty() {
        shown.push(format!("{}={:.6}", target_names[0], image[0]));
    }
    println!("{}", shown.join(", "));

    let mut report = Report::new("transform");
    report
        .config_str("from", &args.from)
        .config_str("to", &args.to)
        .config_str("region", &branch)
        .config_num("mu", mass)
        .config_str("point", point_spec.as_deref().unwrap_or("(defaults)"));
    report.body = json!({
        "input": point_object(&source_names, &point),
        "output": point_object(&target_names, &image),
        "direction": if forward { "forward" } else { "inverse" },
    });
    if args.common.out.is_some() {
        emit(&report, format, None, args.common.out.as_ref())?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// embed

fn run_embed(args: EmbedArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let map_name = resolve_str(args.map, &file, "map", "fronsdal");
    let branch_name = resolve_opt_str(args.branch, &file, "branch");
    let branch = match (map_name.as_str(), branch_name.as_deref()) {
        ("kasner", None | Some("exterior")) => Branch::KasnerExterior,
        ("kasner", Some(other)) => {
            return Err(CliError::usage(format!(
                "kasner embeds the exterior only, got branch '{other}'"
            )))
        }
        ("fronsdal", None | Some("exterior")) => Branch::FronsdalExterior,
        ("fronsdal", Some("interior")) => Branch::FronsdalInterior,
        ("fronsdal", Some("mirror")) => Branch::FronsdalMirror,
        ("fronsdal", Some("printed_u3")) => Branch::FronsdalExteriorPrintedU3,
        ("fronsdal", Some(other)) => {
            return Err(CliError::usage(format!(
                "unknown fronsdal branch '{other}' (exterior, interior, mirror, printed_u3)"
            )))
        }
        (other, _) => {
            return Err(CliError::usage(format!(
                "unknown map '{other}' (kasner, fronsdal)"
            )))
        }
    };
    let format = resolve_format(&args.common, &file)?;
    let emap = EmbeddingMap::new(branch, mass).map_err(|e| CliError::usage(e.to_string()))?;

    let radial = if map_name == "kasner" { "H" } else { "r" };
    let names: Vec<&str> = vec!["t", radial, "theta", "phi"];
    let axis = |name: &str, min: f64, max: f64, count: usize| Axis {
        name: name.into(),
        min,
        max,
        count,
    };
    let default_axes = match branch {
        Branch::KasnerExterior => vec![
            axis("t", 0.0, std::f64::consts::TAU, 13),
            axis("H", 0.5 * mass, 4.0 * mass, 7),
        ],
        Branch::FronsdalInterior => vec![
            axis("t", -2.0 * mass, 2.0 * mass, 5),
            axis("r", 0.2 * mass, 0.9 * mass, 9),
        ],
        _ => vec![
            axis("t", -2.0 * mass, 2.0 * mass, 5),
            axis("r", 1.2 * mass, 5.0 * mass, 9),
        ],
    };
    let grid_spec = resolve_opt_str(args.grid, &file, "grid");
    let axes = match &grid_spec {
        Some(s) => parse_grid(s, &names)?,
        None => default_axes,
    };
    let points = grid_points(&axes, &names, mass)?;

    let cloud: Result<Vec<(Vec<f64>, [f64; 6])>, CliError> = with_jobs(args.common.jobs, || {
        points
            .par_iter()
            .map(|p| {
                let x: [f64; 4] = [p[0], p[1], p[2], p[3]];
                emap.map_point(&x)
                    .map(|u| (p.clone(), u))
                    .map_err(|e| match e {
                        embeddings::EmbeddingError::Quadrature(q) => {
                            CliError::Numerical(q.to_string())
                        }
                        other => CliError::Usage(other.to_string()),
                    })
            })
            .collect()
    })?;
    let cloud = cloud?;

    let mut report = Report::new("embed");
    report
        .config_str("map", &map_name)
        .config_str("branch", branch.tag())
        .config_num("mu", mass)
        .config_str(
            "grid",
            &axes
                .iter()
                .map(Axis::spec_string)
                .collect::<Vec<_>>()
                .join(","),
        );
    let points_json: Vec<Value> = cloud
        .iter()
        .map(|(x, u)| {
            json!({
                "x": x.iter().map(|c| num9(*c)).collect::<Vec<_>>(),
                "u": u.iter().map(|c| num9(*c)).collect::<Vec<_>>(),
            })
        })
        .collect();
    report.body = json!({
        "signature": emap.signature().iter().map(|s| json!(s)).collect::<Vec<_>>(),
        "count": cloud.len(),
        "points": points_json,
    });

    let csv = if format == Format::Csv {
        let mut headers: Vec<&str> = names.clone();
        headers.extend(["u1", "u2", "u3", "u4", "u5", "u6"]);
        let rows: Vec<Vec<Value>> = cloud
            .iter()
            .map(|(x, u)| {
                let mut row: Vec<Value> = x.iter().map(|c| json!(c)).collect();
                row.extend(u.iter().map(|c| json!(c)));
                row
            })
            .collect();
        Some(format!(
            "{}{}",
            csv_prologue(&report),
            render_csv(&headers, &rows)
        ))
    } else {
        None
    };
    emit(&report, format, csv, args.common.out.as_ref())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// curvature

fn run_curvature(args: CurvatureArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let format = resolve_format(&args.common, &file)?;
    let chart =
        charts::build_chart("ks_plane", mass).map_err(|e| CliError::usage(e.to_string()))?;
    let names = vec!["u", "v"];
    let s = mass.sqrt();
    let axis = |name: &str, min: f64, max: f64, count: usize| Axis {
        name: name.into(),
        min,
        max,
        count,
    };
    let grid_spec = resolve_opt_str(args.grid, &file, "grid");
    let axes = match &grid_spec {
        Some(spec) => parse_grid(spec, &names)?,
        None => vec![
            axis("u", -1.2 * s, 1.2 * s, 41),
            axis("v", -1.2 * s, 1.2 * s, 41),
        ],
    };
    let points = grid_points(&axes, &names, mass)?;

    let rows: Result<Vec<Option<(f64, f64)>>, String> = with_jobs(args.common.jobs, || {
        points
            .par_iter()
            .map(|p| {
                // Stay clear of the singular locus uv = -mu.
                if !chart.contains(p) || p[0] * p[1] <= -0.995 * mass {
                    return Ok(None);
                }
                let r = charts::ks_f_inv(mass, p[0] * p[1]).map_err(|e| e.to_string())?;
                let k =
                    geometry::sectional_curvature_plane(&chart, p).map_err(|e| e.to_string())?;
                Ok(Some((r, k)))
            })
            .collect()
    })?;
    let rows = rows.map_err(CliError::Numerical)?;

    let mut max_abs = 0.0f64;
    let mut min_radius = f64::INFINITY;
    let mut evaluated = 0usize;
    for value in rows.iter().flatten() {
        evaluated += 1;
        max_abs = max_abs.max(value.1.abs());
        min_radius = min_radius.min(value.0);
    }
    if evaluated == 0 {
        return Err(CliError::usage(
            "grid lies entirely outside the plane chart domain",
        ));
    }

    let mut report = Report::new("curvature");
    report
        .config_str("chart", "ks_plane")
        .config_num("mu", mass)
        .config_str(
            "grid",
            &axes
                .iter()
                .map(Axis::spec_string)
                .collect::<Vec<_>>()
                .join(","),
        );
    let cells: Vec<Value> = points
        .iter()
        .zip(&rows)
        .filter_map(|(p, row)| {
            row.map(|(r, k)| {
                json!({
                    "u": num9(p[0]),
                    "v": num9(p[1]),
                    "r": num9(r),
                    "sectional": num9(k),
                })
            })
        })
        .collect();
    report.body = json!({
        "points_total": points.len(),
        "points_evaluated": evaluated,
        "max_abs_sectional": num9(max_abs),
        "min_radius": num9(min_radius),
        "cells": cells,
    });

    let csv = if format == Format::Csv {
        let csv_rows: Vec<Vec<Value>> = points
            .iter()
            .zip(&rows)
            .filter_map(|(p, row)| {
                row.map(|(r, k)| vec![json!(p[0]), json!(p[1]), json!(r), json!(k)])
            })
            .collect();
        Some(format!(
            "{}{}",
            csv_prologue(&report),
            render_csv(&["u", "v", "r", "sectional"], &csv_rows)
        ))
    } else {
        None
    };
    emit(&report, format, csv, args.common.out.as_ref())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// topology

fn space_chart(space: &str) -> Result<&'static str, CliError> {
    Ok(match space {
        "schwarzschild" => "schwarzschild_unimodular",
        "hd" => "hd",
        "ks" => "ks",
        "er" => "er_bridge",
        other => {
            return Err(CliError::usage(format!(
                "unknown space '{other}' (schwarzschild, hd, ks, er)"
            )))
        }
    })
}

fn run_topology(args: TopologyArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let format = resolve_format(&args.common, &file)?;
    let query = resolve_str(args.query, &file, "query", "connectivity");

    let mut report = Report::new("topology");
    report.config_num("mu", mass).config_str("query", &query);

    match query.as_str() {
        "connectivity" => {
            let space = resolve_str(args.space, &file, "space", "hd");
            let chart_id = space_chart(&space)?;
            let names = coord_names(chart_id)?;
            let from_spec = resolve_opt_str(args.from, &file, "from")
                .ok_or_else(|| CliError::usage("connectivity requires --from"))?;
            let to_spec = resolve_opt_str(args.to, &file, "to")
                .ok_or_else(|| CliError::usage("connectivity requires --to"))?;
            let (p, _, _) = parse_point(Some(&from_spec), &names, mass)?;
            let (q, _, _) = parse_point(Some(&to_spec), &names, mass)?;
            let budget = match args.budget {
                Some(b) => b,
                None => file.parse::<usize>("budget")?.unwrap_or(4000),
            };
            report
                .config_str("space", &space)
                .config_str("from", &from_spec)
                .config_str("to", &to_spec)
                .config_value("budget", Value::from(budget));
            let result = topology::connectivity(&space, mass, &p, &q, budget)
                .map_err(|e| CliError::usage(e.to_string()))?;
            report.body = match &result {
                Connectivity::Path { hops } => json!({
                    "space": space,
                    "query": "connectivity",
                    "result": "path",
                    "hops": hops.len(),
                    "path": hops.iter().map(|h| json!({
                        "chart": h.chart,
                        "from": h.from.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                        "tangent": h.tangent.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                        "to": h.to.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                }),
                Connectivity::NotFound {
                    budget_exhausted,
                    certificate,
                } => json!({
                    "space": space,
                    "query": "connectivity",
                    "result": "not_found",
                    "budget_exhausted": budget_exhausted,
                    "certificate": certificate,
                }),
            };
        }
        "hausdorff" => {
            let space = resolve_str(args.space, &file, "space", "doubled_line");
            let mut cfg = SearchConfig::default();
            if let Some(n) = args.sequences {
                cfg.sequences = n;
            } else if let Some(n) = file.parse::<usize>("sequences")? {
                cfg.sequences = n;
            }
            if let Some(r) = args.resolution {
                cfg.resolution = r;
            } else if let Some(r) = file.parse::<f64>("resolution")? {
                cfg.resolution = r;
            }
            let structure = match space.as_str() {
                "doubled_line" => topology::doubled_line(),
                "er" => {
                    topology::er_bridge(mass)
                        .map_err(|e| CliError::usage(e.to_string()))?
                        .structure
                }
                other => {
                    return Err(CliError::usage(format!(
                        "hausdorff search knows spaces doubled_line and er, got '{other}'"
                    )))
                }
            };
            report
                .config_str("space", &space)
                .config_value("sequences", Value::from(cfg.sequences))
                .config_num("resolution", cfg.resolution);
            let witness = topology::hausdorff_witness(&structure, &cfg);
            report.body = match &witness {
                Some(w) => json!({
                    "space": space,
                    "query": "hausdorff",
                    "result": "witness",
                    "witness": {
                        "p": w.p.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                        "q": w.q.iter().map(|x| num9(*x)).collect::<Vec<_>>(),
                        "sequence_index": w.sequence_index,
                        "pairs": w.pairs.len(),
                    },
                    "resolution": num9(cfg.resolution),
                }),
                None => json!({
                    "space": space,
                    "query": "hausdorff",
                    "result": "none_found",
                    "resolution": num9(cfg.resolution),
                }),
            };
        }
        "bridge" => {
            let space = resolve_str(args.space, &file, "space", "er");
            if space != "er" {
                return Err(CliError::usage(format!(
                    "bridge query applies to space er, got '{space}'"
                )));
            }
            report.config_str("space", &space);
            let derived = topology::bridge_homothety(mass, charts::ErVariant::Derived)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let printed = topology::bridge_homothety(mass, charts::ErVariant::Paper)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let jump_derived = topology::bridge_metric_jump(mass, charts::ErVariant::Derived)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let jump_printed = topology::bridge_metric_jump(mass, charts::ErVariant::Paper)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            report.body = json!({
                "space": "er",
                "query": "bridge",
                "result": "measured",
                "homothety": {
                    "derived": num9(derived),
                    "printed": num9(printed),
                    "expected": num9(mass),
                },
                "metric_jump": {
                    "derived": num9(jump_derived),
                    "printed": num9(jump_printed),
                },
            });
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown query '{other}' (connectivity, hausdorff, bridge)"
            )))
        }
    }

    emit(&report, format, None, args.common.out.as_ref())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// conformance

fn run_conformance(args: ConformanceArgs) -> Result<i32, CliError> {
    let file = FileConfig::load(args.common.config.as_ref())?;
    let mass = resolve_mu(args.common.mu, &file)?;
    let format = resolve_format(&args.common, &file)?;
    let entries = conformance::dossier(mass).map_err(|e| CliError::numerical(e.to_string()))?;

    let mut report = Report::new("conformance");
    report.config_num("mu", mass);
    let entries_json: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "printed_form": e.printed_form,
                "instrument": e.instrument,
                "printed_residual": num9(e.printed_residual),
                "derived_residual": num9(e.derived_residual),
                "printed_deviates": e.printed_deviates(),
                "note": e.note,
            })
        })
        .collect();
    report.body = json!({
        "entries": entries_json,
        "count": entries.len(),
    });

    let csv = if format == Format::Csv {
        let rows: Vec<Vec<Value>> = entries
            .iter()
            .map(|e| {
                vec![
                    json!(e.id),
                    json!(e.printed_residual),
                    json!(e.derived_residual),
                    json!(e.printed_deviates()),
                ]
            })
            .collect();
        Some(format!(
            "{}{}",
            csv_prologue(&report),
            render_csv(
                &[
                    "id",
                    "printed_residual",
                    "derived_residual",
                    "printed_deviates"
                ],
                &rows
            )
        ))
    } else {
        None
    };
    emit(&report, format, csv, args.common.out.as_ref())?;
    Ok(EXIT_OK)
}
