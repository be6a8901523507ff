use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ordclosure::BigInt;
use ordclosure_cli::render::render_text;
use ordclosure_cli::{exit, run, AnalyzeError, AnalyzeOptions, InputSpec};

#[derive(Parser)]
#[command(name = "ordclosure", version, about = "Integral closures of orders over Z with certification reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an order and compute its integral closure.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["poly", "coeffs", "table"])))]
struct AnalyzeArgs {
    /// Monic polynomial in x, e.g. "x^4-20x^3-20x^2+17x+2".
    #[arg(long)]
    poly: Option<String>,
    /// Comma-separated coefficients, constant term first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_int)]
    coeffs: Option<Vec<BigInt>>,
    /// JSON multiplication table {"n", "unit", "table"}.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Analyze only this prime.
    #[arg(long, value_parser = parse_int)]
    prime: Option<BigInt>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for polynomial splitting and Pollard rho.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trust certified methods without the oracle cross-check.
    #[arg(long)]
    fast: bool,
    /// Largest |B_p| for which submodules are enumerated.
    #[arg(long, default_value_t = 15_625)]
    max_enum: u64,
    /// Pollard rho iterations before a cofactor is reported unresolved.
    #[arg(long, default_value_t = 2_000_000)]
    rho_budget: u64,
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))
}

fn main() -> ExitCode {
    let Command::Analyze(args) = Cli::parse().command;
    let input = match (args.poly, args.coeffs, args.table) {
        (Some(p), _, _) => InputSpec::Poly(p),
        (_, Some(c), _) => InputSpec::Coeffs(c),
        (_, _, Some(t)) => InputSpec::Table(t),
        _ => unreachable!("clap enforces exactly one input"),
    };
    let opts = AnalyzeOptions {
        prime: args.prime,
        seed: args.seed,
        fast: args.fast,
        max_enum: args.max_enum,
        rho_budget: args.rho_budget,
    };
    match run(&input, &opts) {
        Ok(report) => {
            let out = match args.format {
                Format::Text => render_text(&report),
                Format::Json => report.to_json() + "\n",
            };
            // a closed pipe is not an error for the analysis
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            if report.is_factorization_complete() {
                ExitCode::from(exit::OK as u8)
            } else {
                eprintln!("error: discriminant has an unfactored cofactor {}", report.disc.unresolved);
                ExitCode::from(exit::UNRESOLVED as u8)
            }
        }
        Err(AnalyzeError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::VALIDATION as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::INTERNAL as u8)
        }
    }
}
