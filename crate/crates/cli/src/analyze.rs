//! The full pipeline behind `ordclosure analyze`.

use std::path::PathBuf;

use ordclosure::closure::{certify_closure_at_p, glue_closure, CertifyOptions, PrimeReport};
use ordclosure::factor::{factor_with, is_prime, FactorOptions, Factorization};
use ordclosure::linalg::Lattice;
use ordclosure::order::TableOrder;
use ordclosure::BigInt;
use thiserror::Error;

use crate::poly::{format_poly, parse_poly};
use crate::report::{AnalysisReport, DiscReport, InputEcho, LatticeJson, PrimeEntry, PrimePower, SCHEMA_VERSION};
use crate::table::parse_table;

#[derive(Debug, Clone)]
pub enum InputSpec {
    Poly(String),
    Coeffs(Vec<BigInt>),
    Table(PathBuf),
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub prime: Option<BigInt>,
    pub seed: u64,
    pub fast: bool,
    pub max_enum: u64,
    pub rho_budget: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        let c = CertifyOptions::default();
        AnalyzeOptions {
            prime: None,
            seed: c.seed,
            fast: c.fast,
            max_enum: c.max_enum,
            rho_budget: FactorOptions::default().rho_budget,
        }
    }
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    /// Bad user input; the message names the offending flag.
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Internal(#[from] ordclosure::Error),
}

fn invalid(flag: &str, msg: impl std::fmt::Display) -> AnalyzeError {
    AnalyzeError::Validation(format!("{flag}: {msg}"))
}

/// Builds the order and the input echo for the report.
pub fn build_order(input: &InputSpec) -> Result<(TableOrder, InputEcho), AnalyzeError> {
    let from_coeffs = |flag: &str, coeffs: Vec<BigInt>, kind: &str| {
        let order = TableOrder::from_poly(&coeffs).map_err(|e| invalid(flag, e))?;
        let echo = InputEcho {
            kind: kind.into(),
            rank: order.rank(),
            poly: Some(format_poly(&coeffs, "x")),
            coeffs: Some(coeffs.iter().map(BigInt::to_string).collect()),
            table: None,
            prime: None,
        };
        Ok((order, echo))
    };
    match input {
        InputSpec::Poly(s) => {
            let coeffs = parse_poly(s).map_err(|e| invalid("--poly", e))?;
            from_coeffs("--poly", coeffs, "poly")
        }
        InputSpec::Coeffs(c) => from_coeffs("--coeffs", c.clone(), "coeffs"),
        InputSpec::Table(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| invalid("--table", format!("{}: {e}", path.display())))?;
            let t = parse_table(&src).map_err(|e| invalid("--table", e))?;
            let order = TableOrder::from_table(t.n, t.unit, &t.table).map_err(|e| invalid("--table", e))?;
            let echo = InputEcho {
                kind: "table".into(),
                rank: order.rank(),
                poly: None,
                coeffs: None,
                table: Some(path.display().to_string()),
                prime: None,
            };
            Ok((order, echo))
        }
    }
}

fn prime_entry(r: &PrimeReport) -> PrimeEntry {
    PrimeEntry {
        p: r.p.to_string(),
        tame: format!("{:?}", r.tame),
        exps_per_ideal: r.exps_per_ideal.clone(),
        anisotropy: format!("{:?}", r.anisotropy),
        method: format!("{:?}", r.method),
        certified: r.certified,
        index: r.index.to_string(),
        closure_basis: LatticeJson::from(&r.closure),
    }
}

/// Primes whose square divides the discriminant, ascending.
fn square_primes(disc: &Factorization) -> Vec<BigInt> {
    disc.factors.iter().filter(|(_, e)| *e >= 2).map(|(p, _)| p.clone()).collect()
}

/// Per-prime analyses run concurrently; results come back in the order of `primes`.
fn certify_all(order: &TableOrder, primes: &[BigInt], opts: &CertifyOptions) -> Result<Vec<PrimeReport>, ordclosure::Error> {
    std::thread::scope(|s| {
        let handles: Vec<_> = primes
            .iter()
            .map(|p| s.spawn(move || certify_closure_at_p(order, p, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("per-prime analysis panicked"))
            .collect()
    })
}

pub fn analyze(order: &TableOrder, mut echo: InputEcho, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let certify = CertifyOptions {
        fast: opts.fast,
        max_enum: opts.max_enum,
        seed: opts.seed,
    };
    let disc = factor_with(
        order.discriminant(),
        &FactorOptions {
            seed: opts.seed,
            rho_budget: opts.rho_budget,
        },
    );
    let primes = match &opts.prime {
        Some(p) => {
            if !is_prime(p) {
                return Err(invalid("--prime", format!("{p} is not prime")));
            }
            echo.prime = Some(p.to_string());
            vec![p.clone()]
        }
        None => square_primes(&disc),
    };
    let divisors = order
        .quotient_presentation(&order.unit_lattice(), &order.trace_dual())?
        .nontrivial_divisors();
    let reports = certify_all(order, &primes, &certify)?;

    let closure: Option<Lattice> = if opts.prime.is_some() {
        Some(reports.iter().fold(order.unit_lattice(), |acc, r| acc.sum(&r.closure)))
    } else if disc.is_complete() {
        Some(glue_closure(order, &reports, &disc)?)
    } else {
        None
    };
    let certified = disc.is_complete() && reports.iter().all(|r| r.certified);

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        input: echo,
        disc: DiscReport {
            value: order.discriminant().to_string(),
            factors: disc
                .factors
                .iter()
                .map(|(p, e)| PrimePower { p: p.to_string(), e: *e })
                .collect(),
            unresolved: disc.unresolved.to_string(),
        },
        dual_quotient_divisors: divisors.iter().map(BigInt::to_string).collect(),
        primes: reports.iter().map(prime_entry).collect(),
        closure: closure.as_ref().map(LatticeJson::from),
        certified,
    })
}

/// Convenience wrapper: build the order and analyze it.
pub fn run(input: &InputSpec, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let (order, echo) = build_order(input)?;
    analyze(&order, echo, opts)
}
