//! Command-line front end: configuration, sweeps and CSV output.
//!
//! Parameters are resolved in three layers: built-in defaults, the optional
//! `--config` file, then `--set key=value` overrides (and `--grid-q`, which
//! sets `zone_points`). All computation happens first; the CSV and its
//! manifest are written at the end.

pub mod output;

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use polariton_core::spectrum::uniform_grid;
use polariton_core::{band_structure, pair_density, DampingSolver, Error, ModelParams, PairKind};

use output::{band_table, pair_table, point_table, sweep_table, RunManifest, Table};

#[derive(Debug, Parser)]
#[command(name = "polariton", version, about = "Soft-mode damping in a driven cavity condensate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Parameter file with one `key=value` per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Override a parameter; wins over the config file. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = ".", value_name = "DIR")]
    pub out: PathBuf,

    /// Number of drive points on [0, eta-max].
    #[arg(long = "grid-eta", global = true, default_value_t = 200, value_name = "N")]
    pub grid_eta: usize,

    /// Quasi-momentum points on the half zone (sets `zone_points`).
    #[arg(long = "grid-q", global = true, value_name = "N")]
    pub grid_q: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Soft-mode frequency and both damping rates across the drive.
    SweepEta {
        /// Upper end of the drive grid in units of eta_c.
        #[arg(long, default_value_t = 0.99)]
        eta_max: f64,
    },
    /// Three phonon bands on the half zone.
    Bands,
    /// Broadened Beliaev and Landau two-phonon densities.
    PairDensity {
        #[arg(long, default_value_t = 0.0)]
        omega_min: f64,
        #[arg(long, default_value_t = 1.6)]
        omega_max: f64,
        #[arg(long, default_value_t = 1601)]
        grid_omega: usize,
    },
    /// Rates at the drive given by the `eta` parameter.
    Point,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SweepEta { .. } => "sweep-eta",
            Command::Bands => "bands",
            Command::PairDensity { .. } => "pair-density",
            Command::Point => "point",
        }
    }

    /// File stem of the CSV and manifest.
    pub fn stem(&self) -> &'static str {
        match self {
            Command::SweepEta { .. } => "sweep_eta",
            Command::Bands => "bands",
            Command::PairDensity { .. } => "pair_density",
            Command::Point => "point",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Instability(String),
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Instability(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Instability(m) => write!(f, "numerical failure: {m}"),
            CliError::Io { path, source } => write!(f, "cannot write {}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::ParamFile { .. } | Error::EtaGrid(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Instability(other.to_string()),
        }
    }
}

/// Defaults, then the config file, then command-line overrides.
pub fn resolve_params(cli: &Cli) -> Result<ModelParams, CliError> {
    let mut p = ModelParams::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        p = ModelParams::parse_overrides(p, &text)?;
    }
    for kv in &cli.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set expects key=value, got `{kv}`")))?;
        p.set(k, v).map_err(CliError::Config)?;
    }
    if let Some(n) = cli.grid_q {
        p.zone_points = n;
    }
    Ok(p.validate()?)
}

/// Paths written by a successful run.
#[derive(Debug, Clone)]
pub struct Written {
    pub csv: PathBuf,
    pub manifest: PathBuf,
    /// Grid points that could not be evaluated (NaN rows).
    pub failed_points: usize,
}

pub fn run(cli: &Cli) -> Result<Written, CliError> {
    let start = Instant::now();
    let p = resolve_params(cli)?;
    let mut grids = Vec::new();
    let mut failed_points = 0;

    let table: Table = match &cli.command {
        Command::SweepEta { eta_max } => {
            if cli.grid_eta < 2 {
                return Err(CliError::Config("--grid-eta must be at least 2".into()));
            }
            if !(*eta_max > 0.0 && *eta_max < 1.0) {
                return Err(CliError::Config(format!("--eta-max {eta_max} outside (0, 1)")));
            }
            grids.push(("grid_eta", cli.grid_eta.to_string()));
            grids.push(("eta_min", format!("{:?}", 0.0)));
            grids.push(("eta_max", format!("{eta_max:?}")));
            let points = DampingSolver::new(&p)?.sweep(&uniform_grid(0.0, *eta_max, cli.grid_eta))?;
            failed_points = points.iter().filter(|pt| !pt.stable).count();
            sweep_table(&points)
        }
        Command::Bands => band_table(&band_structure(&p)?),
        Command::PairDensity {
            omega_min,
            omega_max,
            grid_omega,
        } => {
            if *grid_omega < 2 || !(omega_max > omega_min) {
                return Err(CliError::Config(
                    "frequency grid needs at least 2 points and omega-max > omega-min".into(),
                ));
            }
            grids.push(("grid_omega", grid_omega.to_string()));
            grids.push(("omega_min", format!("{omega_min:?}")));
            grids.push(("omega_max", format!("{omega_max:?}")));
            let omega = uniform_grid(*omega_min, *omega_max, *grid_omega);
            let b = pair_density(&p, PairKind::Beliaev, &omega)?;
            let l = pair_density(&p, PairKind::Landau, &omega)?;
            pair_table(&b, &l)
        }
        Command::Point => {
            let ratio = p.drive_ratio();
            grids.push(("eta_over_etac", format!("{ratio:?}")));
            point_table(&DampingSolver::new(&p)?.point(ratio)?)
        }
    };

    let stem = cli.command.stem();
    let csv_name = format!("{stem}.csv");
    let manifest = RunManifest {
        command: cli.command.name(),
        params: p,
        grids,
        csv: csv_name.clone(),
        duration_seconds: start.elapsed().as_secs_f64(),
    };

    fs::create_dir_all(&cli.out).map_err(|e| CliError::io(&cli.out, e))?;
    let csv = cli.out.join(csv_name);
    fs::write(&csv, table.to_csv()).map_err(|e| CliError::io(&csv, e))?;
    let manifest_path = cli.out.join(format!("{stem}.manifest"));
    fs::write(&manifest_path, manifest.render()).map_err(|e| CliError::io(&manifest_path, e))?;
    Ok(Written {
        csv,
        manifest: manifest_path,
        failed_points,
    })
}
