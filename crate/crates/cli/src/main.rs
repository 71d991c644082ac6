mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use approxmu_core::numerics::DEFAULT_PRECISION;

/// Exit status for usage, parse and evaluation errors.
pub const EXIT_ERROR: u8 = 3;
/// Exit status when a self-audit finds a failed postcondition.
pub const EXIT_AUDIT: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "approxmu", version, about = "Measure how intelligently numbers are approximated")]
struct Cli {
    /// Render aligned tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Measure one approximation `target ≃ model(params)`.
    Measure(MeasureArgs),
    /// Continued-fraction utilities.
    Cf {
        #[command(subcommand)]
        op: CfOp,
    },
    /// Search a parameter box for intelligent approximations.
    Search(SearchArgs),
    /// Lucas/Fibonacci quotients for √5 and the [1; 2, …, 2, 1] family for √2.
    Families {
        family: FamilyArg,
        #[arg(long, default_value_t = 20)]
        max_n: u32,
    },
    /// Measures of the truncations of Liouville's constant.
    Liouville {
        #[arg(long, default_value_t = 9)]
        k_max: u32,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Non-convergent intelligent approximations read off the expansion,
    /// each checked against its guarantees.
    Theorems {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Model expression, e.g. "a1/a2*sqrt(a3)".
    #[arg(long)]
    model: String,
    /// Comma-separated nonzero integers.
    #[arg(long, allow_hyphen_values = true)]
    params: String,
    /// Constant id (pi, e, sqrt2, …) or a decimal literal.
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    /// Working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    /// Report the variant measure that divides the error by the model value.
    #[arg(long)]
    mu_prime: bool,
}

#[derive(Debug, Subcommand)]
enum CfOp {
    /// Certain partial quotients of a target.
    Expand {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Convergents of a target or of explicit terms.
    Convergents {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cf", required_unless_present = "cf")]
        target: Option<String>,
        /// Number of terms to expand the target to.
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// A finite continued fraction such as "[3; 7, 15, 1]".
        #[arg(long)]
        cf: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Value of a finite continued fraction.
    Eval {
        /// Comma-separated terms, e.g. 2,1,1.
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
    },
    /// Quadratic surd of an eventually periodic continued fraction.
    ClosedForm {
        /// Comma-separated preperiod terms.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        pre: String,
        /// Comma-separated period terms.
        #[arg(long, allow_hyphen_values = true)]
        period: String,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    model: String,
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    /// One inclusive range per parameter, e.g. 1..40,1..20.
    #[arg(long, allow_hyphen_values = true)]
    bounds: String,
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    #[arg(long, default_value_t = 1.0)]
    min_mu: f64,
    /// Also try the negated range of every parameter (default for all
    /// models except a1/a2).
    #[arg(long, conflicts_with = "positive_only")]
    allow_negative: bool,
    /// Enumerate only the given ranges.
    #[arg(long)]
    positive_only: bool,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sqrt5,
    Sqrt2,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };
    match commands::run(&cli.command) {
        Ok((report, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(report.render(cli.pretty).as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_ERROR);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
