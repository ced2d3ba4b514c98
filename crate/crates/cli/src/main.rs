mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use catlab_core::poly::GRAMMAR;

pub const DEFAULT_SEED: u64 = 24301;

#[derive(Parser, Debug)]
#[command(name = "catlab", version, about = "Catalecticants, apolar ideals and cactus certificates over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit a plain-text rendering of the report instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Always compute ranks by exact elimination.
    #[arg(long, global = true)]
    pub no_modular_fastpath: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PolyInput {
    /// Polynomial in the text grammar, e.g. "x0^2*x1^2".
    #[arg(long, conflicts_with = "poly_file", required_unless_present = "poly_file")]
    pub poly: Option<String>,

    #[arg(long)]
    pub poly_file: Option<PathBuf>,

    /// Number of variables, if larger than the highest index used.
    #[arg(long)]
    pub num_vars: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank of the degree-i catalecticant.
    Rank {
        #[command(flatten)]
        input: PolyInput,
        #[arg(short = 'i')]
        i: usize,
        /// Also print the matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Hilbert function of the apolar algebra.
    Hilbert {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Bases of the annihilator in each degree.
    Ann {
        #[command(flatten)]
        input: PolyInput,
        /// Highest degree listed; defaults to deg p + 1.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Build and check the cactus certificate at rank r.
    Certify {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        knobs: CertifyKnobs,
    },
    /// Waring decomposition read off the certificate.
    Decompose {
        #[command(flatten)]
        input: PolyInput,
        #[command(flatten)]
        knobs: CertifyKnobs,
        /// Fail unless the decomposition is exact over Q.
        #[arg(long)]
        exact: bool,
        /// Significant digits printed for approximate values.
        #[arg(long, default_value_t = 12)]
        precision: usize,
    },
    /// Dimension counts for a compressed case n,j.
    Compressed {
        #[arg(long, value_parser = parse_case)]
        case: (usize, usize),
    },
    /// A sample polynomial f·x_n^(d-j) for a compressed case, with its ranks.
    Counterexample {
        #[arg(long, value_parser = parse_case)]
        case: (usize, usize),
        #[arg(short = 'd')]
        d: usize,
        /// Resampling attempts allowed before giving up.
        #[arg(long, default_value_t = 20)]
        max_retries: usize,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Args, Debug, Clone)]
pub struct CertifyKnobs {
    #[arg(short = 'r')]
    pub r: usize,
    #[arg(short = 'i')]
    pub i: Option<usize>,
    #[arg(short = 'k')]
    pub k: Option<usize>,
    #[arg(long)]
    pub horizon: Option<usize>,
}

fn parse_case(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected n,j but got {s:?}"))?;
    let n = a.trim().parse().map_err(|e| format!("bad n: {e}"))?;
    let j = b.trim().parse().map_err(|e| format!("bad j: {e}"))?;
    Ok((n, j))
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("{msg}");
    eprintln!("\npolynomial grammar:\n{GRAMMAR}");
    ExitCode::from(1)
}

/// Print to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return usage_error(e.render());
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            emit(&out.render(cli.text));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(commands::Failure::Usage(msg)) => usage_error(msg),
        Err(commands::Failure::Domain(rep)) => {
            emit(&rep.render(cli.text));
            ExitCode::from(2)
        }
    }
}
