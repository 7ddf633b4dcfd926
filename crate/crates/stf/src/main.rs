use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stf::commands::{self, Target};
use stf::verify::{self, Suite};
use stf::{CliError, Config, OutputFormat};
use stf_core::{Basis, UnitVec};

#[derive(Parser)]
#[command(
    name = "stf",
    version,
    about = "Maxwell multipoles and symmetric trace-free tensors"
)]
struct Cli {
    /// Tolerance for float comparisons and verification residuals.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Format of the printed report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Polynomial degree used to size sphere quadrature.
    #[arg(long, global = true)]
    quadrature_degree: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Complex,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Stf,
    Sph,
}

#[derive(Args)]
struct Direction {
    /// Unit vector as "x,y,z".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["theta", "phi"])]
    n: Option<String>,
    /// Polar angle in radians.
    #[arg(long, requires = "phi", allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Azimuth in radians.
    #[arg(long, requires = "theta", allow_hyphen_values = true)]
    phi: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric trace-free part of a tensor file.
    Detrace {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Multipole expansion of an angular polynomial file.
    Expand {
        input: PathBuf,
        /// Highest degree kept.
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Convert between expansion and spherical-harmonic coefficient files.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: TargetArg,
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a file, or a multipole, at a direction.
    Eval {
        input: Option<PathBuf>,
        #[command(flatten)]
        direction: Direction,
        /// Print P^(l)(n) instead of evaluating a file.
        #[arg(long)]
        multipole: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integrate a polynomial, or a product of two, over the unit sphere.
    Integrate {
        input: PathBuf,
        #[arg(long)]
        with: Option<PathBuf>,
    },
    /// Fourier transform of a quadrupole potential against its closed form.
    DemoQuadrupole {
        /// Traceless symmetric 3x3 matrix as nested arrays or a rank-2 tensor.
        #[arg(long = "Q", alias = "q")]
        q: PathBuf,
        /// Wave vector as "x,y,z".
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value_t = 1e-4)]
        rmin: f64,
        #[arg(long, default_value_t = 1e4)]
        rmax: f64,
    },
    /// Run an invariant suite and report per-degree residuals.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        lmax: usize,
    },
}

fn direction(d: &Direction) -> Result<[f64; 3], CliError> {
    match (&d.n, d.theta, d.phi) {
        (Some(s), _, _) => commands::parse_vector(s),
        (None, Some(t), Some(p)) => Ok(UnitVec::from_angles(t, p).as_array()),
        _ => Err(CliError::Argument(
            "give a direction with --n or --theta/--phi".into(),
        )),
    }
}

fn basis(b: BasisArg) -> Basis {
    match b {
        BasisArg::Complex => Basis::Complex,
        BasisArg::Real => Basis::Real,
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    let cfg = Config::new(cli.tolerance, format, cli.quadrature_degree)?;
    let (outcome, output) = match cli.command {
        Command::Detrace { input, output } => (commands::detrace(&input)?, output),
        Command::Expand {
            input,
            lmax,
            output,
        } => (commands::expand_file(&input, lmax, &cfg)?, output),
        Command::Convert {
            input,
            to,
            basis: b,
            output,
        } => {
            let to = match to {
                TargetArg::Stf => Target::Stf,
                TargetArg::Sph => Target::Sph,
            };
            (commands::convert(&input, to, b.map(basis), &cfg)?, output)
        }
        Command::Eval {
            input,
            direction: d,
            multipole,
            output,
        } => (
            commands::eval(input.as_deref(), direction(&d)?, multipole, &cfg)?,
            output,
        ),
        Command::Integrate { input, with } => {
            (commands::integrate(&input, with.as_deref(), &cfg)?, None)
        }
        Command::DemoQuadrupole { q, k, rmin, rmax } => {
            let k = commands::parse_vector(&k)?;
            (commands::demo_quadrupole(&q, k, rmin, rmax)?, None)
        }
        Command::Verify { suite, lmax } => {
            let v = verify::run(suite, lmax, &cfg)?;
            v.report().write(cfg.format, out)?;
            if !v.passed() {
                return Err(CliError::Failed(format!(
                    "{} suite exceeded tolerance (worst residual {:e})",
                    suite.name(),
                    v.worst_residual()
                )));
            }
            return Ok(());
        }
    };
    outcome.emit(output.as_deref(), &cfg, out, err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    match run(cli, &mut out, &mut err) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
