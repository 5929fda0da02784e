//! Command-line front end: argument definitions, JSON file formats, and the
//! verification suites.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand};

pub mod commands;
pub mod error;
pub mod files;
pub mod suites;

use commands::{Source, VerifyMode};
pub use error::{CliError, CliResult};
use suites::Suite;

pub const DEFAULT_SEED: u64 = 0x5d15c;

#[derive(Debug, Parser)]
#[command(name = "subdisc", version, about = "Exact subdiscriminants, SOS certificates and orthogonal-group bounds")]
pub struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print sDisc_k of a root list or of a matrix file.
    #[command(group(ArgGroup::new("source").required(true).args(["roots", "matrix"])))]
    Compute {
        /// Comma-separated rationals, e.g. `1,-2,3/4`.
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Number of distinct eigenvalues and the full subdiscriminant sequence.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Emit the weighted sum-of-squares certificate for sDisc_k.
    Sos {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a certificate file; symbolic when within budget (all pairs with n ≤ 5 except (5,0)), otherwise random points mod 2^61 − 1, unless a mode is given.
    SosVerify {
        /// Certificate JSON written by `sos`.
        #[arg(long)]
        cert: PathBuf,
        /// Full polynomial expansion; exits 3 when over budget.
        #[arg(long, conflicts_with_all = ["samples", "modular"])]
        symbolic: bool,
        /// Exact evaluation at this many random integer matrices.
        #[arg(long, conflicts_with = "modular")]
        samples: Option<usize>,
        /// Evaluation at this many random points modulo 2^61 − 1.
        #[arg(long)]
        modular: Option<usize>,
    },
    /// Table of square-count bounds for k = 0..n−2.
    Bounds {
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite, one PASS/FAIL line per check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

/// Executes one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> CliResult<()> {
    if let Some(jobs) = cli.jobs {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let text = match &cli.command {
        Command::Compute { roots, matrix, k } => {
            let source = match (roots, matrix) {
                (Some(r), None) => Source::Roots(r),
                (None, Some(m)) => Source::Matrix(m),
                _ => return Err(CliError::Parse("give exactly one of --roots and --matrix".into())),
            };
            commands::compute(source, *k)?
        }
        Command::Classify { matrix } => commands::classify_matrix(matrix)?,
        Command::Sos { n, k, out: path } => commands::sos(*n, *k, path)?,
        Command::SosVerify { cert, symbolic, samples, modular } => {
            let mode = match (symbolic, samples, modular) {
                (true, _, _) => VerifyMode::Symbolic,
                (_, Some(s), _) => VerifyMode::Samples(*s),
                (_, _, Some(p)) => VerifyMode::Modular(*p),
                _ => VerifyMode::Auto,
            };
            commands::sos_verify(cert, mode, cli.seed)?
        }
        Command::Bounds { n } => commands::bounds(*n)?,
        Command::Verify { suite, max_n } => {
            let lines = suites::run_suite(*suite, *max_n, cli.seed);
            for l in &lines {
                writeln!(out, "{l}")?;
            }
            let failed = lines.iter().filter(|l| !l.pass).count();
            writeln!(out, "{} checks, {failed} failed", lines.len())?;
            if failed > 0 {
                return Err(CliError::Identity(format!("{failed} of {} checks failed", lines.len())));
            }
            return Ok(());
        }
    };
    writeln!(out, "{text}")?;
    Ok(())
}
