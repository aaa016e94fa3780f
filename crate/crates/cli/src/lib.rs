//! Command-line front end for the flag-variety cohomology library.

mod commands;
mod output;
mod report;

use std::io::Write;

use bott_null_core::{build_root_system, Error, Family, RootSystem};
use clap::{Parser, Subcommand, ValueEnum};

pub use output::OUTPUT_FORMAT;

#[derive(Debug, Parser)]
#[command(name = "bott-null", version, about = "Borel-Weil-Bott computations, cohomology ledger and null-cone verdicts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true)]
    pub family: Option<Family>,

    #[arg(long, global = true)]
    pub rank: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for internal parallelism; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartan data and positive roots.
    Roots,
    /// Weyl group order and length profile, or the action of one word.
    Weyl {
        /// Letters as `1,2,1` or `s1s2s1`.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Cohomology of a line bundle.
    Bwb {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Weight multiset of a bundle expression.
    Weights {
        #[arg(long)]
        expr: String,
    },
    /// Potential support of the cohomology of a bundle expression.
    Psupp {
        #[arg(long)]
        expr: String,
    },
    /// Multiplicity of an irreducible in a G-module expression.
    Mult {
        #[arg(long)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Dimension of a bundle expression.
    Dim {
        #[arg(long)]
        expr: String,
    },
    /// Decomposition of a G-module expression into irreducibles.
    Decompose {
        #[arg(long)]
        expr: String,
    },
    /// Null-cone membership of a matrix tuple, or a sampled equivalence check.
    Nullcone {
        /// JSON list of matrices (rows of "p/q" strings), or `@path`.
        #[arg(long)]
        matrices: Option<String>,
        /// Number of random tuples to test instead.
        #[arg(long)]
        samples: Option<usize>,
        /// Matrix size for sampling.
        #[arg(long)]
        size: Option<usize>,
        /// Tuple length for sampling.
        #[arg(short = 'r', long = "count")]
        count: Option<usize>,
    },
    /// Normality and rational-singularity verdict for the r-fold null-cone.
    Verdict {
        #[arg(short = 'r', long = "copies")]
        r: usize,
        /// Ledger JSON file to use instead of the built-in tables.
        #[arg(long)]
        ledger: Option<String>,
    },
    /// Reproduce every known table for one root system, with pass/fail per check.
    Report,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::UnknownAtom { .. }
            | Error::RankMismatch { .. }
            | Error::NonIntegralWeight
            | Error::UnsupportedFamilyRank { .. }
            | Error::BadRational(_)
            | Error::Shape(_)
            | Error::NotTraceFree(_)
            | Error::MalformedLedger(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

pub(crate) fn root_system(cli: &Cli) -> Result<RootSystem, Failure> {
    let family = cli.family.ok_or_else(|| Failure::usage("--family is required"))?;
    let rank = cli.rank.ok_or_else(|| Failure::usage("--rank is required"))?;
    Ok(build_root_system(family, rank)?)
}

/// The command line without `--threads`, echoed in JSON output.
fn echo(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--threads" {
            skip = true;
            continue;
        }
        if a.starts_with("--threads=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

/// Runs the tool on `argv` (including the program name); returns the exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let result = pool.install(|| commands::dispatch(&cli));
    match result {
        Ok((label, out)) => {
            let text = match cli.format {
                Format::Json => output::render_json(&echo(argv), label, &out),
                Format::Tsv => output::render_tsv(&out),
            };
            if stdout.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            if out.ok {
                0
            } else {
                let _ = writeln!(stderr, "error: some report checks failed");
                3
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
