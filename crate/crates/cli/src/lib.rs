//! Command-line driver for the equivariant Riemann–Roch engine, the ψ-part
//! computations, the BSD assembler and the P¹ oracle.
//!
//! Exit codes: 0 success, 1 input or schema error, 2 hypothesis violation,
//! 3 mismatch between independent computations.

pub mod case;
pub mod commands;
pub mod error;
pub mod report;
pub mod suite;

use std::path::{Path, PathBuf};

use bsd_assembler::{AssumptionSheet, GlobalArithmeticInput};
use clap::{Parser, Subcommand};
use p1_oracle::CorpusManifest;

pub use error::{CliError, Result, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
pub use report::{Format, Outcome, Status};

use commands::{BundleSource, Mode, RaInput, WithResolved};

#[derive(Debug, Parser)]
#[command(
    name = "eqrr",
    version,
    about = "Equivariant Euler characteristics, ψ-parts and BSD predictions"
)]
pub struct Cli {
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// χ_{kG}(E) with its breakdown, checked against the P¹ oracle for p1 sources.
    EulerChar { case: PathBuf },
    /// ra_E(ψ) and its closed forms.
    Ra { case: PathBuf },
    /// The exponent of p_λ in the ψ-isotypic L-value.
    Predict {
        case: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Main)]
        mode: Mode,
        /// Predict for every irreducible ψ of the cover carried by the lo source.
        #[arg(long)]
        all_psi: bool,
    },
    /// Compare explicit cohomology on P¹ with the engine over a corpus manifest.
    VerifyCover { manifest: PathBuf },
    /// The corpus with seeded extra divisors and the ra checks.
    Suite {
        /// Defaults to the built-in corpus.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sufficient conditions for the no-ℓ-torsion assumptions.
    CheckAssumptions { case: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::EulerChar { .. } => "euler-char",
            Command::Ra { .. } => "ra",
            Command::Predict { .. } => "predict",
            Command::VerifyCover { .. } => "verify-cover",
            Command::Suite { .. } => "suite",
            Command::CheckAssumptions { .. } => "check-assumptions",
        }
    }
}

fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    case::parse(&path.display().to_string(), &case::read(path)?)
}

/// Run one command and render its report.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let (seed, format) = (cli.seed, cli.format);
    let name = cli.command.name();
    match &cli.command {
        Command::EulerChar { case } => {
            let c = case::load::<BundleSource>(case, name)?;
            let r = commands::resolve(&c.input)?;
            let input = WithResolved {
                case: &c,
                resolved: Some(r.spec()),
            };
            report::finish(
                name,
                seed,
                format,
                commands::EULER_FORMULAS,
                &input,
                commands::euler_char(&r),
            )
        }
        Command::Ra { case } => {
            let c = case::load::<RaInput>(case, name)?;
            let r = commands::resolve(&c.input.source)?;
            let input = WithResolved {
                case: &c,
                resolved: Some(r.spec()),
            };
            report::finish(
                name,
                seed,
                format,
                commands::RA_FORMULAS,
                &input,
                commands::ra_command(&r, &c.input),
            )
        }
        Command::Predict {
            case,
            mode,
            all_psi,
        } => {
            let c = case::load::<GlobalArithmeticInput>(case, name)?;
            let input = WithResolved {
                case: &c,
                resolved: None,
            };
            let result = commands::predict(&c.input, *mode, *all_psi);
            report::finish(
                name,
                seed,
                format,
                commands::PREDICT_FORMULAS,
                &input,
                result,
            )
        }
        Command::CheckAssumptions { case } => {
            let c = case::load::<AssumptionSheet>(case, name)?;
            let result = commands::check_assumptions(&c.input);
            report::finish(
                name,
                seed,
                format,
                commands::ASSUMPTION_FORMULAS,
                &c,
                result,
            )
        }
        Command::VerifyCover { manifest } => {
            let m = load_manifest(manifest)?;
            report::finish(
                name,
                seed,
                format,
                suite::VERIFY_FORMULAS,
                &m,
                suite::verify(&m),
            )
        }
        Command::Suite { manifest } => {
            let m = match manifest {
                Some(p) => load_manifest(p)?,
                None => suite::builtin_manifest()?,
            };
            report::finish(
                name,
                seed,
                format,
                suite::SUITE_FORMULAS,
                &m,
                suite::suite(&m, seed),
            )
        }
    }
}

/// Run with the requested thread count and write the report. Errors that
/// produce no report are returned for the caller to print.
pub fn run(cli: &Cli) -> Result<u8> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let outcome = pool.install(|| execute(cli))?;
    match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome.code)
}
