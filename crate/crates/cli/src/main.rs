//! `basel-accel`: certified digits of pi^2/6 and pi, exact checks of the
//! arcsin^2 coefficient identities, and convergence tables for both series.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 term budget refused, 4 output could not be written.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use basel_accel::{
    convergence_report, eval_pi, eval_series, f_series, ode_residual, report::DEFAULT_SAMPLES,
    v_closed_form, v_via_cauchy, verify_identity, Error, EvalResult, FixedPointDecimal, SeriesId,
    VRecurrence, DEFAULT_TERM_BUDGET,
};
use clap::error::ErrorKind;
use clap::{ArgGroup, CommandFactory, Parser, Subcommand, ValueEnum};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_IO: u8 = 4;

const TRUNCATION_NOTE: &str = "\
Digits are truncated, not rounded. D digits are certified when the enclosing \
interval of the limit is narrower than 10^-D, so the last digit shown can \
differ by one from the correctly rounded value printed by other tools.";

#[derive(Debug, Parser)]
#[command(name = "basel-accel", version, about, after_help = TRUNCATION_NOTE)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesArg {
    /// sum 1/n^2
    Basel,
    /// sum 3/(n^2 C(2n,n))
    Stirling,
}

impl From<SeriesArg> for SeriesId {
    fn from(s: SeriesArg) -> Self {
        match s {
            SeriesArg::Basel => SeriesId::Basel,
            SeriesArg::Stirling => SeriesId::Stirling,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print certified digits of pi^2/6.
    Digits {
        #[arg(long, value_enum, default_value = "stirling")]
        series: SeriesArg,
        /// Fractional digits to certify.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        /// Most terms a single evaluation may sum.
        #[arg(long, env = "BASEL_ACCEL_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
        budget: u64,
    },
    /// Print certified digits of pi, recovered as sqrt(6 * pi^2/6).
    Pi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
    },
    /// Run an exact check over a whole index range.
    #[command(group(ArgGroup::new("target").required(true).args(["coeffs", "identity", "ode"])))]
    Verify {
        /// v_n by Cauchy product, recurrence and closed form agree for n = 1..max-n.
        #[arg(long)]
        coeffs: bool,
        /// The binomial identity holds for n = 0..max-n.
        #[arg(long)]
        identity: bool,
        /// arcsin^2 satisfies (1-x^2)f'' = 2 + x f' at every series order 2..order.
        #[arg(long)]
        ode: bool,
        /// Upper index for --coeffs and --identity.
        #[arg(long)]
        max_n: Option<u64>,
        /// Largest series order for --ode.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Terms each series needs per digit target.
    Compare {
        /// Largest digit target.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = 6)]
        digits: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "BASEL_ACCEL_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
        budget: u64,
    },
    /// Partial sums, tail bounds and certified digits of both series, plus the summary.
    Report {
        /// Largest digit target; also sets the working precision of the rows.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = 6)]
        digits: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Comma-separated partial-sum sizes.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
        samples: Vec<u64>,
        #[arg(long, env = "BASEL_ACCEL_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
        budget: u64,
    },
}

/// A command's failure, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Uncertified { .. } => EXIT_VERIFY_FAILED,
            Error::Domain { .. } | Error::ExactCapExceeded { .. } => EXIT_USAGE,
        };
        Self::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Verify {
        ode, max_n, order, ..
    } = &cli.command
    {
        // bool flags always count as present to clap, so these pairings are checked here
        if *ode && max_n.is_some() {
            Cli::command()
                .error(
                    ErrorKind::ArgumentConflict,
                    "--max-n does not apply to --ode; use --order",
                )
                .exit();
        }
        if !*ode && order.is_some() {
            Cli::command()
                .error(
                    ErrorKind::ArgumentConflict,
                    "--order only applies to --ode; use --max-n",
                )
                .exit();
        }
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("basel-accel: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Digits {
            series,
            digits,
            budget,
        } => {
            let result = eval_series(series.into(), digits, budget)?;
            Ok(describe(&result, true))
        }
        Command::Pi { digits } => Ok(describe(&eval_pi(digits)?, false)),
        Command::Verify {
            coeffs,
            identity,
            ode,
            max_n,
            order,
        } => {
            if coeffs {
                verify_coeffs(max_n.unwrap_or(200))
            } else if identity {
                verify_identities(max_n.unwrap_or(200))
            } else {
                debug_assert!(ode);
                verify_ode(order.unwrap_or(64))
            }
        }
        Command::Compare {
            digits,
            format,
            output,
            budget,
        } => {
            let report = convergence_report(digits, &[], budget)?;
            let text = match format {
                Format::Csv => report.summary_csv(),
                Format::Json => report.summary_json(),
            };
            emit(text, output)
        }
        Command::Report {
            digits,
            format,
            output,
            samples,
            budget,
        } => {
            let samples = if samples.is_empty() {
                DEFAULT_SAMPLES.to_vec()
            } else {
                samples
            };
            let report = convergence_report(digits, &samples, budget)?;
            let text = match format {
                Format::Csv => report.rows_csv(),
                Format::Json => report.to_json(),
            };
            emit(text, output)
        }
    }
}

fn describe(result: &EvalResult, with_tail: bool) -> String {
    let mut out = format!("{}\n", result.text());
    out += &format!("series={} terms={}", result.series, result.terms_used);
    if with_tail {
        let tail = FixedPointDecimal::from_rational_ceil(&result.tail_bound, result.digits + 3);
        out += &format!(" tail_bound={tail}");
    }
    out += &format!(" certified_digits={}\n", result.certified_digits);
    out
}

fn emit(text: String, output: Option<PathBuf>) -> Result<String, Failure> {
    match output {
        None => Ok(text),
        Some(path) => {
            fs::write(&path, text).map_err(|e| {
                Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(format!("wrote {}\n", path.display()))
        }
    }
}

fn verify_coeffs(max_n: u64) -> Result<String, Failure> {
    if max_n < 1 {
        return Err(Failure::new(
            EXIT_USAGE,
            "--max-n must be at least 1 for --coeffs",
        ));
    }
    let mut rec = VRecurrence::new();
    for n in 1..=max_n {
        let cauchy = v_via_cauchy(n)?;
        let recurrence = rec.get(n)?.clone();
        let closed = v_closed_form(n)?;
        if cauchy != recurrence || cauchy != closed {
            return Err(Failure::new(
                EXIT_VERIFY_FAILED,
                format!("three-way agreement fails at n={n}: cauchy {cauchy}, recurrence {recurrence}, closed form {closed}"),
            ));
        }
    }
    Ok(format!("three-way agreement holds for n=1..{max_n}\n"))
}

fn verify_identities(max_n: u64) -> Result<String, Failure> {
    for n in 0..=max_n {
        let check = verify_identity(n);
        if !check.holds {
            return Err(Failure::new(
                EXIT_VERIFY_FAILED,
                format!(
                    "identity fails at n={n}: left {}, right {}",
                    check.lhs, check.rhs
                ),
            ));
        }
    }
    Ok(format!("identity holds for n=0..{max_n}\n"))
}

fn verify_ode(order: usize) -> Result<String, Failure> {
    if order < 2 {
        return Err(Failure::new(EXIT_USAGE, "--order must be at least 2"));
    }
    for k in 2..=order {
        let residual = ode_residual(&f_series(k)?)?;
        if !residual.is_zero() {
            return Err(Failure::new(
                EXIT_VERIFY_FAILED,
                format!("residual nonzero at series order {k}: {residual}"),
            ));
        }
    }
    Ok(format!("residual zero through degree {}\n", order - 2))
}
