//! Command-line front end: `measure`, `verify`, `open-question`, `custom`.
//!
//! Exit codes: 0 success, 1 verification or convergence failure, 2 invalid
//! parameter or input value, 3 unreadable or malformed file.

pub mod report;
pub mod solids;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::numerics::mc::{McConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use report::{Method, Report};
pub use solids::{SolidKind, SolidSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerifyFailed = 1,
    Domain = 2,
    Io = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Io(_) => ExitStatus::Io,
            CliError::Core(Error::NoConvergence(_)) => ExitStatus::VerifyFailed,
            CliError::Core(_) => ExitStatus::Domain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ballm",
    version,
    about = "Volume, surface area and mean width of ball intersections and related solids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct McArgs {
    /// Monte Carlo sample budget.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    /// RNG seed; the flag wins over BALLM_SEED.
    #[arg(long, env = "BALLM_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measures of one solid by the best available method.
    Measure {
        /// dihedron, lens, trihedron, tetrahedron, meissner, capped-cylinder,
        /// segment, cap-body, hexahedron, dodecahedron or custom.
        #[arg(long)]
        solid: String,
        /// Cap angular radius (lens, segment, cap-body).
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        /// Center distance (lens).
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
        /// Cylinder length (capped-cylinder).
        #[arg(long, allow_negative_numbers = true)]
        ell: Option<f64>,
        /// Sphere file (custom).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Cross-check every closed form against independent methods.
    Verify {
        /// Absolute tolerance for comparisons between exact methods.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Restrict to one group of checks.
        #[arg(long)]
        solid: Option<String>,
        /// Scale a closed-form value by 1.01 before checking, e.g.
        /// `dihedron.volume`. Used to confirm the suite detects faults.
        #[arg(long, hide = true)]
        perturb: Vec<String>,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Numerical measures of the hexahedron or dodecahedron with
    /// cross-method differences.
    OpenQuestion {
        #[arg(long, default_value = "hexahedron")]
        solid: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Measures of the intersection of the balls in a JSON file
    /// `[{"center": [x, y, z], "radius": r}, ...]`.
    Custom {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        mc: McArgs,
    },
}

fn mc_config(args: &McArgs) -> Result<McConfig, CliError> {
    if args.samples == 0 {
        return Err(Error::Invalid("--samples must be positive".into()).into());
    }
    Ok(McConfig::with_samples(args.samples, args.seed)?)
}

fn emit(out: &mut dyn Write, report: &Report, format: Format) -> std::io::Result<()> {
    match format {
        Format::Table => write!(out, "{}", report.to_table()),
        Format::Json => writeln!(out, "{}", report.to_json()),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cli.command {
        Command::Measure {
            solid,
            phi,
            delta,
            ell,
            input,
            format,
            mc,
        } => {
            let spec = SolidSpec::from_flags(&solid, phi, delta, ell, input)?;
            let report = solids::measure(&spec, &mc_config(&mc)?)?;
            emit(out, &report, format).map_err(io)?;
            Ok(ExitStatus::Success)
        }
        Command::Verify {
            tolerance,
            solid,
            perturb,
            mc,
        } => {
            let opts = verify::VerifyOptions {
                tolerance,
                samples: mc.samples,
                seed: mc.seed,
                solid,
                perturb,
            };
            let checks = verify::run_checks(&opts)?;
            write!(out, "{}", verify::render(&checks, &opts)).map_err(io)?;
            Ok(if verify::all_gating_passed(&checks) {
                ExitStatus::Success
            } else {
                ExitStatus::VerifyFailed
            })
        }
        Command::OpenQuestion { solid, format, mc } => {
            let report = solids::open_question(&solid, &mc_config(&mc)?)?;
            emit(out, &report, format).map_err(io)?;
            Ok(ExitStatus::Success)
        }
        Command::Custom { input, format, mc } => {
            let report = solids::custom(&input, &mc_config(&mc)?)?;
            emit(out, &report, format).map_err(io)?;
            Ok(ExitStatus::Success)
        }
    }
}

/// Parses `args`, runs the command and writes its output to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitStatus::Domain as i32 } else { 0 };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(status) => status as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status() as i32
        }
    }
}
