use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use kronecker_core::io::Document;
use kronecker_core::padic::{solve_modular, solve_over_rationals, Mode, SolveConfig, SolverError};
use kronecker_core::slp::parse_system;

#[derive(Parser)]
#[command(name = "kronecker", version, about = "Solve polynomial systems via Kronecker representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the system in INPUT and print or write its representation.
    Solve(SolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Heuristic,
    Provable,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// System file: `vars x, y;` followed by one `expr;` per equation.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "heuristic")]
    mode: ModeArg,
    #[arg(long, env = "KRONECKER_SEED", default_value_t = 0)]
    seed: u64,
    /// Use this prime instead of a random one.
    #[arg(long)]
    prime: Option<BigUint>,
    /// Restarts after the first attempt.
    #[arg(long, default_value_t = 5)]
    retries: usize,
    /// Fresh primes used to verify a rational result.
    #[arg(long, default_value_t = 1)]
    verify_primes: usize,
    /// Stop after the modular solve and emit the representation over F_p.
    #[arg(long)]
    mod_p_only: bool,
    /// Also verify a rational result exactly.
    #[arg(long)]
    exact: bool,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also include the univariate parametrizations.
    #[arg(long)]
    emit_univariate: bool,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_UNSOLVED: u8 = 2;
const EXIT_PARSE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => solve(&args),
    }
}

fn solve(args: &SolveArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(EXIT_FAILURE);
        }
    };
    let program = match parse_system(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", args.input.display());
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let config = SolveConfig {
        mode: match args.mode {
            ModeArg::Heuristic => Mode::Heuristic,
            ModeArg::Provable => Mode::Provable,
        },
        seed: args.seed,
        retries: args.retries,
        verify_primes: args.verify_primes,
        prime: args.prime.clone(),
        exact_check: args.exact,
        ..SolveConfig::default()
    };
    let document = if args.mod_p_only {
        solve_modular(&program, &config).map(|s| Document::from_modular(&program, &s, args.seed, args.emit_univariate))
    } else {
        solve_over_rationals(&program, &config).map(|s| Document::from_rational(&program, &s, args.emit_univariate))
    };
    let document = match document {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                SolverError::RetryExhausted { .. } | SolverError::InputNotRegular { .. } => EXIT_UNSOLVED,
                _ => EXIT_FAILURE,
            };
            return ExitCode::from(code);
        }
    };
    let json = document.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE);
            }
        }
        None => print!("{json}"),
    }
    if document.verification.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: exact verification failed");
        ExitCode::from(EXIT_UNSOLVED)
    }
}
