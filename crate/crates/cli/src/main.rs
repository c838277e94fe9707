//! `mirrorwave`: figure data for matter waves released by a receding mirror.
//!
//! Inputs are in lab units (cm/s, ms, µm); every output file starts with a
//! `#`-prefixed manifest followed by comma-separated columns.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical or validation failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use mirrorwave_core::Error;

#[derive(Parser, Debug)]
#[command(name = "mirrorwave", version, about = "Transient matter-wave dynamics behind a moving mirror")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Density profile |ψ(x,t)|² on a uniform grid.
    Profile(ProfileArgs),
    /// Densities of the four Moshinsky terms of the moving-mirror solution.
    Components(ComponentsArgs),
    /// Fresnel integrals and both universal beam profiles versus θ.
    Cornu(CornuArgs),
    /// Main-fringe visibility and peak versus v/v_k.
    Visibility(VisibilityArgs),
    /// Compares the closed-form density with a numerical oracle.
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Left end of the grid in µm [default: −1.5·v_k·t].
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<f64>,
    /// Right end of the grid in µm [default: 1.1·max(v, v_k)·t].
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<f64>,
    /// Number of grid points [default: 2000, oracle quadrature 200].
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Beam velocity v_k in cm/s.
    #[arg(long)]
    vk: f64,
    /// Evaluation time in ms.
    #[arg(long)]
    t: f64,
    /// Atomic species.
    #[arg(long, default_value = "rb87")]
    species: String,
    /// Output file [default: standard output].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("mirror").required(true).args(["v", "sudden", "static_wall"])))]
struct MirrorArgs {
    /// Mirror velocity in cm/s.
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    /// Mirror removed at t = 0.
    #[arg(long)]
    sudden: bool,
    /// Mirror kept at rest.
    #[arg(long = "static")]
    static_wall: bool,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    mirror: MirrorArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Add |M_I|²..|M_IV|² columns (moving mirror only).
    #[arg(long, conflicts_with = "sudden")]
    components: bool,
}

#[derive(Args, Debug)]
struct ComponentsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Mirror velocity in cm/s.
    #[arg(long, allow_negative_numbers = true)]
    v: f64,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args, Debug)]
struct CornuArgs {
    /// Smallest θ.
    #[arg(long, default_value_t = -3.0, allow_negative_numbers = true)]
    theta_min: f64,
    /// Largest θ.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    theta_max: f64,
    /// Number of θ samples.
    #[arg(long, default_value_t = 601)]
    points: usize,
    /// Output file [default: standard output].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VisibilityArgs {
    /// Beam velocities in cm/s, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    vk: Vec<f64>,
    /// Evaluation time in ms.
    #[arg(long, default_value_t = 100.0)]
    t: f64,
    /// Smallest v/v_k.
    #[arg(long, default_value_t = 1.1)]
    ratio_min: f64,
    /// Largest v/v_k.
    #[arg(long, default_value_t = 10.0)]
    ratio_max: f64,
    /// Number of evenly spaced ratios.
    #[arg(long, default_value_t = 20)]
    ratio_points: usize,
    /// Atomic species.
    #[arg(long, default_value = "rb87")]
    species: String,
    /// Output file [default: standard output].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OracleKind {
    Grid,
    Quadrature,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SchemeArg {
    Spectral,
    FiniteDifference,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SteppingArg {
    Diagonal,
    Tridiagonal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TailArg {
    Truncate,
    ContourClosure,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    mirror: MirrorArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Grid propagation or direct propagator quadrature.
    #[arg(long, value_enum)]
    oracle: OracleKind,
    /// Largest accepted absolute density error.
    #[arg(long, default_value_t = 1e-3)]
    tolerance: f64,
    /// Box length L in µm.
    #[arg(long)]
    domain_length: Option<f64>,
    /// Interior grid points N.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Time step in ms.
    #[arg(long)]
    time_step: Option<f64>,
    /// Spatial discretisation of the grid oracle [default: spectral].
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Time stepping of the grid oracle [default: diagonal].
    #[arg(long, value_enum)]
    stepping: Option<SteppingArg>,
    /// Quadrature cut-off distance behind the origin in µm.
    #[arg(long)]
    truncation_window: Option<f64>,
    /// Treatment of the quadrature tail [default: contour-closure].
    #[arg(long, value_enum)]
    tail: Option<TailArg>,
}

/// Failure of a command, mapped onto the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownUnit(_) | Error::InvalidParameter(_) | Error::OracleConfig { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Profile(a) => commands::profile(&a),
        Command::Components(a) => commands::components(&a),
        Command::Cornu(a) => commands::cornu(&a),
        Command::Visibility(a) => commands::visibility(&a),
        Command::Oracle(a) => commands::oracle(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
