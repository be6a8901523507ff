//! Human-readable rendering of an [`AnalysisReport`].

use std::fmt::Write;

use num_integer::Integer;
use num_traits::{One, Zero};
use ordclosure::BigInt;

use crate::poly::format_poly;
use crate::report::{AnalysisReport, LatticeJson};

fn big(s: &str) -> BigInt {
    s.parse().expect("report holds decimal integers")
}

/// `row / den` as a polynomial in `a`, reduced.
fn element(row: &[String], den: &str) -> String {
    let row: Vec<BigInt> = row.iter().map(|s| big(s)).collect();
    let den = big(den);
    let g = row.iter().fold(den.clone(), |g, x| g.gcd(x));
    let row: Vec<BigInt> = row.iter().map(|x| x / &g).collect();
    let den = den / g;
    let num = format_poly(&row, "a");
    if den.is_one() {
        num
    } else if row.iter().filter(|x| !x.is_zero()).count() == 1 {
        format!("{num}/{den}")
    } else {
        format!("({num})/{den}")
    }
}

fn lattice(out: &mut String, indent: &str, l: &LatticeJson, as_poly: bool) {
    let width = l.rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &l.rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = write!(out, "{indent}[{}]", cells.join(" "));
        if as_poly {
            let _ = write!(out, "  {}", element(row, &l.den));
        }
        out.push('\n');
    }
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let as_poly = r.input.poly.is_some();
    match (&r.input.poly, &r.input.table) {
        (Some(p), _) => {
            let _ = writeln!(out, "order: Z[a], a a root of {p} (rank {})", r.input.rank);
        }
        (None, Some(t)) => {
            let _ = writeln!(out, "order: multiplication table {t} (rank {})", r.input.rank);
        }
        _ => {}
    }
    let _ = writeln!(out, "discriminant: {}", r.disc.value);
    let factors: Vec<String> = r
        .disc
        .factors
        .iter()
        .map(|f| if f.e == 1 { f.p.clone() } else { format!("{}^{}", f.p, f.e) })
        .collect();
    let mut fact = factors.join(" * ");
    if r.disc.unresolved != "1" {
        fact.push_str(&format!(" * [{} unfactored]", r.disc.unresolved));
    }
    let _ = writeln!(out, "  factored: {fact}");
    let divisors: Vec<String> = r.dual_quotient_divisors.iter().map(|d| format!("Z/{d}")).collect();
    let _ = writeln!(
        out,
        "trace dual quotient: {}",
        if divisors.is_empty() { "0".to_string() } else { divisors.join(" x ") }
    );
    for p in &r.primes {
        let _ = writeln!(out, "\nprime {}", p.p);
        let _ = writeln!(out, "  tame: {}", p.tame);
        let ideals: Vec<String> = p
            .exps_per_ideal
            .iter()
            .map(|e| format!("({})", e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(out, "  exponents per ideal: {}", ideals.join(" "));
        let _ = writeln!(out, "  anisotropy: {}", p.anisotropy);
        let _ = writeln!(out, "  method: {}", p.method);
        let _ = writeln!(out, "  certified: {}", p.certified);
        let _ = writeln!(out, "  index: {}", p.index);
        let _ = writeln!(out, "  closure basis (den {}):", p.closure_basis.den);
        lattice(&mut out, "    ", &p.closure_basis, as_poly);
    }
    match &r.closure {
        Some(c) => {
            let _ = writeln!(out, "\nclosure (den {}):", c.den);
            lattice(&mut out, "  ", c, as_poly);
        }
        None => {
            let _ = writeln!(out, "\nclosure: not determined (discriminant not fully factored)");
        }
    }
    let _ = writeln!(out, "certified: {}", r.certified);
    out
}
