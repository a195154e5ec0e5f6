//! `conormal`: batch front end for the configuration, fan, class and
//! certificate computations of `conormal-core`.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conormal_core::arith::ArithError;
use conormal_core::{CharpError, ClassesError, ConfigError, FanError, MatroidError};

use input::InputFormat;

#[derive(Parser, Debug)]
#[command(name = "conormal", version, about = "Matroid, conormal fan and incidence-variety computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Seed for every sampled witness point; always echoed in the output.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Overrides the input format inferred from the file extension.
    #[arg(long, value_enum, global = true)]
    input_format: Option<InputFormat>,

    /// Base field: `Q` or a prime `p`. Overrides the field of a matrix file.
    #[arg(long, global = true)]
    field: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichFan {
    Bergman,
    SquareConormal,
    Delta,
    DeltaTilde,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, bases, flats, connectivity, roundness and characteristic polynomials.
    MatroidInfo { input: PathBuf },
    /// The configuration polynomial from the basis expansion.
    Psi {
        input: PathBuf,
        /// Also expand the symbolic determinant and compare.
        #[arg(long)]
        check_det: bool,
    },
    /// Builds one of the fans attached to the matroid.
    Fan {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: WhichFan,
        /// Checks that every cone is unimodular.
        #[arg(long)]
        verify_unimodular: bool,
        /// Checks that the projections map cones into cones of the coordinate fans.
        #[arg(long)]
        verify_maps: bool,
        /// Checks that the resolution fan refines the product fan on the same support.
        #[arg(long)]
        verify_refines: bool,
        /// Writes the fan as JSON to this file.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// The fibre fan over the cone of a flat `F` and subset `S`, with divisor incidences.
    ResolveReport {
        input: PathBuf,
        /// A flat, written like `124`, `E` or `∅`.
        #[arg(long)]
        flat: String,
        /// A subset of the ground set.
        #[arg(long)]
        subset: String,
        /// Square biflats `F⊆G` whose divisors should be intersected (comma separated).
        #[arg(long)]
        incidence: Vec<String>,
    },
    /// Motivic class, Chow class, cohomology and Betti table.
    Classes { input: PathBuf },
    /// Initial-ideal, F-purity and linkage certificates in characteristic `p`.
    Charp {
        input: PathBuf,
        #[arg(long)]
        p: u64,
        /// Also reduce every S-pair of the bilinear forms.
        #[arg(long)]
        strict: bool,
    },
}

/// How a run ended, with the exit code each outcome maps to.
#[derive(Debug)]
pub enum Failure {
    Compute(String),
    Parse(String),
    Verify(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Verify(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Compute(m) | Failure::Parse(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<MatroidError> for Failure {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::Parse(_) | MatroidError::InvalidBases(_) => Failure::Parse(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<ArithError> for Failure {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::Parse(_) | ArithError::Ragged | ArithError::NotPrime(_) => {
                Failure::Parse(e.to_string())
            }
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Parse(_) => Failure::Parse(e.to_string()),
            ConfigError::Matroid(m) => m.into(),
            ConfigError::Arith(a) => a.into(),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        match e {
            FanError::Parse(_) => Failure::Parse(e.to_string()),
            FanError::Arith(a) => a.into(),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<ClassesError> for Failure {
    fn from(e: ClassesError) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<CharpError> for Failure {
    fn from(e: CharpError) -> Self {
        match e {
            CharpError::Config(c) => c.into(),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<commands::Output, Failure> {
    let field = cli.field.as_deref().map(input::parse_field).transpose()?;
    let load = |path: &PathBuf| input::load(path, cli.input_format, field);
    let seed = cli.seed;
    match &cli.command {
        Command::MatroidInfo { input } => commands::matroid_info(&load(input)?, seed),
        Command::Psi { input, check_det } => commands::psi(&load(input)?, seed, *check_det),
        Command::Fan { input, which, verify_unimodular, verify_maps, verify_refines, write } => {
            let checks = commands::FanChecks {
                unimodular: *verify_unimodular,
                maps: *verify_maps,
                refines: *verify_refines,
            };
            commands::fan(&load(input)?, seed, *which, checks, write.as_deref())
        }
        Command::ResolveReport { input, flat, subset, incidence } => {
            commands::resolve_report(&load(input)?, seed, flat, subset, incidence)
        }
        Command::Classes { input } => commands::classes(&load(input)?, seed),
        Command::Charp { input, p, strict } => commands::charp(&load(input)?, seed, *p, *strict),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let outcome = run(cli).and_then(|out| {
        out.print(format);
        out.verification_failure.map_or(Ok(()), |msg| Err(Failure::Verify(msg)))
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let kind = match failure {
                Failure::Compute(_) => "error",
                Failure::Parse(_) => "parse error",
                Failure::Verify(_) => "verification failed",
            };
            eprintln!("{kind}: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
