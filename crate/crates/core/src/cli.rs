//! Command-line front end: sweeps and solvers emitted as CSV or JSON tables.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{rotating_energy, CircleGeometry, RotationState};
use crate::device::{optimal_frequency, DeviceGeometry, DeviceSpec};
use crate::rectangle::{rect_energy, RectangleGeometry};
use crate::tube::{self, TubeGeometry};
use crate::Error;

pub const THREADS_ENV: &str = "ROTOVAC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CircleEnergy,
    RectEnergy,
    TubeSweep,
    OmegaMinCurve,
    CriticalLength,
    DeviceOptimize,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::CircleEnergy => "circle-energy",
            Self::RectEnergy => "rect-energy",
            Self::TubeSweep => "tube-sweep",
            Self::OmegaMinCurve => "omega-min-curve",
            Self::CriticalLength => "critical-length",
            Self::DeviceOptimize => "device-optimize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Inclusive uniform grid for the swept variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i == self.steps - 1 { self.max } else { self.min + span * i as f64 / last })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub command: Command,
    pub parameters: BTreeMap<String, f64>,
    pub grid: Option<Grid>,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl SweepRequest {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            parameters: BTreeMap::new(),
            grid: None,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn sweep(mut self, min: f64, max: f64, steps: usize) -> Self {
        self.grid = Some(Grid { min, max, steps });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub parameters: BTreeMap<String, f64>,
    pub grid: Option<Grid>,
    pub version: String,
    pub diagnostics: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub metadata: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numerics(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for invalid invocations, 3 for numerical or output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Numerics(_) | Self::Io(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Params<'a>(&'a BTreeMap<String, f64>);

impl Params<'_> {
    fn length(&self, name: &str, default: Option<f64>) -> CliResult<f64> {
        let v = self.0.get(name).copied().or(default).ok_or_else(|| usage(format!("missing --{name}")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(usage(format!("--{name} must be a positive length, got {v}")));
        }
        Ok(v)
    }

    fn value(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }
}

fn validate_grid(grid: &Grid) -> CliResult<()> {
    if grid.steps < 2 {
        return Err(usage(format!("sweeps need at least 2 steps, got {}", grid.steps)));
    }
    if !(grid.min.is_finite() && grid.max.is_finite()) || grid.min >= grid.max {
        return Err(usage(format!("sweep range requires min < max, got [{}, {}]", grid.min, grid.max)));
    }
    Ok(())
}

fn sweep_rows<F>(grid: &Grid, row: F) -> CliResult<Vec<Vec<f64>>>
where
    F: Fn(f64) -> CliResult<Vec<f64>> + Sync + Send,
{
    validate_grid(grid)?;
    grid.points().into_par_iter().map(row).collect()
}

fn rotation(omega: f64, radius: f64) -> CliResult<RotationState> {
    RotationState::from_angular_frequency(omega, radius).map_err(|e| usage(e.to_string()))
}

/// Evaluates a request. Parallel sweeps keep grid order.
pub fn run(request: &SweepRequest) -> CliResult<SweepResult> {
    let p = Params(&request.parameters);
    let mut diagnostics = BTreeMap::new();
    let (columns, rows): (Vec<&str>, Vec<Vec<f64>>) = match request.command {
        Command::CircleEnergy => {
            let radius = p.length("radius", Some(1.0))?;
            let geom = CircleGeometry::new(radius)?;
            let row = |omega: f64| -> CliResult<Vec<f64>> {
                Ok(vec![omega, rotating_energy(&geom, &rotation(omega, radius)?)])
            };
            let rows = match (&request.grid, p.value("omega")) {
                (Some(grid), _) => sweep_rows(grid, row)?,
                (None, Some(omega)) => vec![row(omega)?],
                (None, None) => return Err(usage("circle-energy needs --omega or a sweep range")),
            };
            (vec!["omega", "E_vac"], rows)
        }
        Command::RectEnergy => {
            let height = p.length("height", None)?;
            let row = |width: f64| -> CliResult<Vec<f64>> {
                let geom = RectangleGeometry::new(height, width).map_err(|e| usage(e.to_string()))?;
                Ok(vec![height, width, rect_energy(&geom)?])
            };
            let rows = match &request.grid {
                Some(grid) => {
                    if grid.min <= 0.0 {
                        return Err(usage("width range must be positive"));
                    }
                    sweep_rows(grid, row)?
                }
                None => vec![row(p.length("width", None)?)?],
            };
            diagnostics.insert("series_tolerance".into(), "1e-13".into());
            (vec!["height", "width", "E_rect"], rows)
        }
        Command::TubeSweep => {
            let radius = p.length("radius", Some(1.0))?;
            let height = p.length("height", None)?;
            let geom = TubeGeometry::new(radius, height)?;
            let e0 = tube::tube_energy(&geom, &RotationState::STATIC)?;
            let grid = request.grid.as_ref().ok_or_else(|| usage("tube-sweep needs --omega-min, --omega-max and --steps"))?;
            let rows = sweep_rows(grid, |omega| {
                let rot = rotation(omega, radius)?;
                let e = tube::tube_energy(&geom, &rot)?;
                Ok(vec![rot.x(), e * radius, (e - e0) * radius])
            })?;
            diagnostics.insert("E0_R".into(), format_number(e0 * radius));
            (vec!["omega_R", "E_vac_R", "E_rot_R"], rows)
        }
        Command::OmegaMinCurve => {
            let radius = p.length("radius", Some(1.0))?;
            let grid = request.grid.as_ref().ok_or_else(|| usage("omega-min-curve needs --height-min, --height-max and --steps"))?;
            if grid.min <= 0.0 {
                return Err(usage("height range must be positive"));
            }
            let rows = sweep_rows(grid, |height| {
                let geom = TubeGeometry::new(radius, height)?;
                let report = tube::omega_min(&geom)?;
                Ok(vec![height / radius, report.omega_x])
            })?;
            (vec!["L_over_R", "omega_min_R"], rows)
        }
        Command::CriticalLength => {
            let radius = p.length("radius", Some(1.0))?;
            let tol = p.value("tol").unwrap_or(1e-6);
            if !(tol > 0.0) {
                return Err(usage(format!("--tol must be positive, got {tol}")));
            }
            let lc = tube::critical_length(radius, tol)?;
            diagnostics.insert("bisection_tolerance".into(), format_number(tol));
            (vec!["radius", "L_c", "L_c_over_R"], vec![vec![radius, lc, lc / radius]])
        }
        Command::DeviceOptimize => {
            let radius = p.length("radius", Some(1.0))?;
            let inertia = p.value("inertia").unwrap_or(0.0);
            let geometry = match p.value("height") {
                Some(_) => DeviceGeometry::Tube(TubeGeometry::new(radius, p.length("height", None)?)?),
                None => DeviceGeometry::Circle(CircleGeometry::new(radius)?),
            };
            let spec = DeviceSpec::new(geometry, inertia).map_err(|e| usage(e.to_string()))?;
            let report = optimal_frequency(&spec)?;
            let flag = |b: bool| if b { 1.0 } else { 0.0 };
            (
                vec!["omega_R", "omega", "energy_at_min", "is_nontrivial", "barrier_height", "no_interior_minimum"],
                vec![vec![
                    report.omega_x,
                    report.omega_x / radius,
                    report.energy_at_min,
                    flag(report.is_nontrivial),
                    report.barrier_height,
                    flag(report.no_interior_minimum),
                ]],
            )
        }
    };

    if let Some(bad) = rows.iter().flatten().find(|v| !v.is_finite()) {
        return Err(CliError::Numerics(Error::Solver(format!("non-finite result {bad}"))));
    }
    Ok(SweepResult {
        metadata: Metadata {
            command: request.command.name().into(),
            parameters: request.parameters.clone(),
            grid: request.grid,
            version: env!("CARGO_PKG_VERSION").into(),
            diagnostics,
        },
        columns: columns.into_iter().map(String::from).collect(),
        rows,
    })
}

/// Twelve significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn to_csv(result: &SweepResult) -> String {
    let mut out = result.columns.join(",");
    out.push('\n');
    for row in &result.rows {
        let cells: Vec<String> = row.iter().map(|v| format_number(*v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn to_json(result: &SweepResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("sweep results always serialize");
    s.push('\n');
    s
}

pub fn render(result: &SweepResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => to_csv(result),
        OutputFormat::Json => to_json(result),
    }
}

/// Writes through a temporary file in the destination directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_ENV) {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| usage(e.to_string()))
}

/// Runs a request and writes the rendered table to its output path, or
/// returns it for standard output when no path is set.
pub fn execute(request: &SweepRequest) -> CliResult<Option<String>> {
    let pool = thread_pool()?;
    let result = pool.install(|| run(request))?;
    let text = render(&result, request.output_format);
    match &request.output_path {
        Some(path) => {
            write_atomic(path, &text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[derive(Debug, Parser)]
#[command(name = "rotovac", version, about = "Vacuum energy of rotating Dirichlet-cut devices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv, global = true)]
    pub format: OutputFormat,

    /// Write to this file (atomically) instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OmegaRange {
    /// Lower end of the angular-frequency sweep (1/length).
    #[arg(long)]
    pub omega_min: Option<f64>,
    #[arg(long)]
    pub omega_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Rotating cut circle: single point with --omega or a sweep.
    CircleEnergy {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
        #[command(flatten)]
        range: OmegaRange,
    },
    /// Dirichlet rectangle energy: single --width or a width sweep.
    RectEnergy {
        #[arg(long)]
        height: f64,
        #[arg(long)]
        width: Option<f64>,
        #[arg(long)]
        width_min: Option<f64>,
        #[arg(long)]
        width_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Tube vacuum energy against ΩR.
    TubeSweep {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        height: f64,
        #[command(flatten)]
        range: OmegaRange,
    },
    /// Optimal ΩR against tube height.
    OmegaMinCurve {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        height_min: f64,
        #[arg(long)]
        height_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Height above which the tube prefers to rotate.
    CriticalLength {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Preferred frequency of a device with classical inertia (a tube when
    /// --height is given, otherwise a circle).
    DeviceOptimize {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        height: Option<f64>,
        /// Classical moment of inertia in natural units (ħ/c; multiply SI
        /// kg·m² by c/ħ ≈ 2.84e42 m⁻¹·(kg·m²)⁻¹ to convert).
        #[arg(long, default_value_t = 0.0)]
        inertia: f64,
    },
}

fn range_grid(
    name: &str,
    min: Option<f64>,
    max: Option<f64>,
    steps: Option<usize>,
) -> CliResult<Option<Grid>> {
    match (min, max, steps) {
        (None, None, None) => Ok(None),
        (Some(min), Some(max), Some(steps)) => Ok(Some(Grid { min, max, steps })),
        _ => Err(usage(format!("--{name}-min, --{name}-max and --steps must be given together"))),
    }
}

impl Cli {
    pub fn into_request(self) -> CliResult<SweepRequest> {
        let (command, mut request) = match self.command {
            CliCommand::CircleEnergy { radius, omega, range } => {
                let mut r = SweepRequest::new(Command::CircleEnergy).param("radius", radius);
                r.grid = range_grid("omega", range.omega_min, range.omega_max, range.steps)?;
                if let Some(o) = omega {
                    if r.grid.is_some() {
                        return Err(usage("give either --omega or a sweep range, not both"));
                    }
                    r = r.param("omega", o);
                }
                (Command::CircleEnergy, r)
            }
            CliCommand::RectEnergy { height, width, width_min, width_max, steps } => {
                let mut r = SweepRequest::new(Command::RectEnergy).param("height", height);
                r.grid = range_grid("width", width_min, width_max, steps)?;
                match (width, r.grid.is_some()) {
                    (Some(w), false) => r = r.param("width", w),
                    (None, true) => {}
                    _ => return Err(usage("give exactly one of --width or a width sweep")),
                }
                (Command::RectEnergy, r)
            }
            CliCommand::TubeSweep { radius, height, range } => {
                let mut r = SweepRequest::new(Command::TubeSweep).param("radius", radius).param("height", height);
                r.grid = range_grid("omega", range.omega_min, range.omega_max, range.steps)?;
                (Command::TubeSweep, r)
            }
            CliCommand::OmegaMinCurve { radius, height_min, height_max, steps } => (
                Command::OmegaMinCurve,
                SweepRequest::new(Command::OmegaMinCurve).param("radius", radius).sweep(height_min, height_max, steps),
            ),
            CliCommand::CriticalLength { radius, tol } => (
                Command::CriticalLength,
                SweepRequest::new(Command::CriticalLength).param("radius", radius).param("tol", tol),
            ),
            CliCommand::DeviceOptimize { radius, height, inertia } => {
                let mut r = SweepRequest::new(Command::DeviceOptimize).param("radius", radius).param("inertia", inertia);
                if let Some(h) = height {
                    r = r.param("height", h);
                }
                (Command::DeviceOptimize, r)
            }
        };
        debug_assert_eq!(command, request.command);
        request.output_format = self.format;
        request.output_path = self.output;
        Ok(request)
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match cli.into_request().and_then(|r| execute(&r)) {
        Ok(Some(text)) => {
            print!("{text}");
            0
        }
        Ok(None) => 0,
        Err(e) => {
            eprintln!("rotovac: {e}");
            e.exit_code()
        }
    }
}
