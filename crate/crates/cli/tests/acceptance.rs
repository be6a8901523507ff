//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use ordclosure::closure::{certify_closure_at_p, idealizer, p_closure_oracle, CertifyOptions};
use ordclosure::factor::factor;
use ordclosure::form::{AnisotropyStatus, FiniteFormModule, DEFAULT_MAX_ENUM};
use ordclosure::linalg::{det, hnf, snf, IntMat, Lattice};
use ordclosure::localize::{factor_mod_p, is_tame_exact, radical_mod_p};
use ordclosure::order::TableOrder;
use ordclosure::{BigInt, BigRational};
use ordclosure_cli::report::LatticeJson;
use ordclosure_cli::{run, AnalysisReport, AnalyzeOptions, InputSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyze_coeffs(c: &[i64]) -> Result<AnalysisReport, String> {
    let coeffs = c.iter().map(|&x| b(x)).collect();
    run(&InputSpec::Coeffs(coeffs), &AnalyzeOptions::default()).map_err(|e| e.to_string())
}

fn lattice_with(n: usize, extra: &[Vec<BigRational>]) -> Lattice {
    let mut rows = Lattice::standard(n).basis_vectors();
    rows.extend(extra.iter().cloned());
    Lattice::from_rat_rows(n, &rows).unwrap()
}

fn factors_of(r: &AnalysisReport) -> Vec<(String, u32)> {
    r.disc.factors.iter().map(|f| (f.p.clone(), f.e)).collect()
}

fn example_one() -> Outcome {
    let r = analyze_coeffs(&[2, 17, -20, -20, 1])?;
    ensure(
        factors_of(&r) == [("7".into(), 4), ("13".into(), 1), ("11897".into(), 1)] && r.disc.unresolved == "1",
        || format!("discriminant factors {:?}", r.disc),
    )?;
    let big: BigInt = b(7).pow(3) * 13 * 11897;
    let big = big.to_string();
    ensure(r.dual_quotient_divisors == ["7".to_string(), big], || format!("divisors {:?}", r.dual_quotient_divisors))?;
    ensure(r.primes.len() == 1 && r.primes[0].p == "7", || "only 7 has square exponent".into())?;
    let p7 = &r.primes[0];
    ensure(p7.method == "TheoremNano" && p7.certified && p7.index == "7", || format!("{p7:?}"))?;
    ensure(p7.exps_per_ideal.concat().len() == 2 && p7.anisotropy == "QuasiAnisotropic", || format!("{p7:?}"))?;
    let expected = lattice_with(4, &[vec![q(2, 7), q(0, 1), q(1, 7), q(3, 7)]]);
    ensure(r.closure == Some(LatticeJson::from(&expected)), || format!("closure {:?}", r.closure))?;
    ensure(r.certified, || "overall certification".into())?;
    Ok("disc 7^4*13*11897, divisors (7, 7^3*13*11897), TheoremNano at 7, closure A + Z(3a^3+a^2+2)/7".into())
}

fn example_two() -> Outcome {
    let r = analyze_coeffs(&[-15625, -15625, -125, -625, 1])?;
    let want: Vec<(String, u32)> = vec![("5".into(), 20), ("13".into(), 1), ("457".into(), 1), ("8111".into(), 1)];
    ensure(factors_of(&r) == want, || format!("discriminant factors {:?}", r.disc))?;
    let last: BigInt = b(5).pow(10) * 13 * 457 * 8111;
    let divs = [b(125), b(78125), last].map(|d| d.to_string());
    ensure(r.dual_quotient_divisors == divs, || format!("divisors {:?}", r.dual_quotient_divisors))?;
    let expected = Lattice::from_rat_rows(
        4,
        &[
            vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 25), q(0, 1), q(3, 3125)],
            vec![q(0, 1), q(0, 1), q(1, 125), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(0, 1), q(1, 625)],
        ],
    )
    .unwrap();
    ensure(r.closure == Some(LatticeJson::from(&expected)), || format!("closure {:?}", r.closure))?;
    let p5 = &r.primes[0];
    ensure(p5.index == b(5).pow(9).to_string(), || format!("index {}", p5.index))?;
    let honest = (p5.method == "OracleFallback" && !p5.certified && p5.anisotropy == "Undetermined")
        || (p5.method == "Theorem3" && p5.certified);
    ensure(honest, || format!("{p5:?}"))?;
    Ok(format!(
        "disc 5^20*13*457*8111, divisors (5^3, 5^7, 5^10*13*457*8111), closure index 5^9, {} / {}",
        p5.method, p5.anisotropy
    ))
}

fn counterexample_guard() -> Outcome {
    let r = analyze_coeffs(&[-5, 0, 1])?;
    let p2 = r.primes.iter().find(|p| p.p == "2").ok_or("no report at 2")?;
    ensure(!p2.certified && p2.method == "OracleFallback" && p2.index == "2", || format!("{p2:?}"))?;
    let a = TableOrder::from_poly(&[b(-5), b(0), b(1)]).unwrap();
    let (bp, _) = a.form_from_quotient(&b(2)).unwrap();
    ensure(bp.lower_root() == bp.zero_submodule(), || "lower root at 2 is not zero".into())?;
    let omega = lattice_with(2, &[vec![q(1, 2), q(1, 2)]]);
    ensure(r.closure == Some(LatticeJson::from(&omega)), || format!("closure {:?}", r.closure))?;
    Ok("lr = 0 at 2, oracle index 2, not certified, closure Z[(1+sqrt5)/2]".into())
}

/// Seeded random monic squarefree polynomials of degree 3..=5, coefficients in [-20, 20].
fn corpus() -> Vec<TableOrder> {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut out = Vec::new();
    while out.len() < 200 {
        let deg = rng.gen_range(3..=5);
        let mut c: Vec<BigInt> = (0..deg).map(|_| b(rng.gen_range(-20..=20))).collect();
        c.push(BigInt::one());
        if let Ok(a) = TableOrder::from_poly(&c) {
            out.push(a);
        }
    }
    out
}

fn square_primes(a: &TableOrder) -> Vec<BigInt> {
    let f = factor(a.discriminant());
    assert!(f.is_complete(), "corpus discriminants factor completely");
    f.factors.into_iter().filter(|(_, e)| *e >= 2).map(|(p, _)| p).collect()
}

fn theorem_one(corpus: &[TableOrder]) -> Outcome {
    let mut cases = 0;
    let mut nonmaximal = 0;
    for a in corpus {
        for p in square_primes(a) {
            if p <= b(a.rank() as i64) {
                continue;
            }
            let (bp, _) = a.form_from_quotient(&p).unwrap();
            let closure = p_closure_oracle(a, &p).map_err(|e| e.to_string())?;
            let index = a.unit_lattice().index_in(closure.closure()).unwrap();
            let divides = (&index % &p).is_zero();
            let square_exp = bp.exponent() >= 2;
            ensure(divides == square_exp, || {
                format!("poly {:?} p={p}: index {index}, exps {:?}", a.poly().unwrap(), bp.exps())
            })?;
            cases += 1;
            nonmaximal += divides as usize;
        }
    }
    Ok(format!("{cases} prime cases, {nonmaximal} non-maximal, all agree"))
}

fn oracle_equivalence(corpus: &[TableOrder], forms: &mut Vec<FiniteFormModule>) -> Outcome {
    let fast = CertifyOptions { fast: true, ..CertifyOptions::default() };
    let mut certified = 0;
    let mut total = 0;
    let mut by_method = std::collections::BTreeMap::new();
    for a in corpus {
        for p in square_primes(a) {
            let report = certify_closure_at_p(a, &p, &fast).map_err(|e| e.to_string())?;
            total += 1;
            *by_method.entry(format!("{:?}", report.method)).or_insert(0) += 1;
            if report.certified {
                certified += 1;
                let oracle = p_closure_oracle(a, &p).map_err(|e| e.to_string())?;
                ensure(&report.closure == oracle.closure(), || {
                    format!("poly {:?} p={p} method {:?}", a.poly().unwrap(), report.method)
                })?;
            }
            forms.push(a.form_from_quotient(&p).unwrap().0);
        }
    }
    Ok(format!("{certified}/{total} certified, all equal to the oracle; methods {by_method:?}"))
}

fn form_suite(forms: &[FiniteFormModule]) -> Outcome {
    let bound = BigInt::from(DEFAULT_MAX_ENUM);
    let (mut checked, mut aniso, mut skipped) = (0, 0, 0);
    for m in forms {
        if m.order() > bound {
            continue;
        }
        let status = m.anisotropy_status();
        if status == AnisotropyStatus::Undetermined {
            skipped += 1;
            continue;
        }
        let rr = m.rr_bruteforce(DEFAULT_MAX_ENUM).map_err(|e| e.to_string())?;
        ensure(rr.rr == m.lower_root(), || format!("rr != lr for {m:?}"))?;
        if status == AnisotropyStatus::Anisotropic {
            ensure(rr.qualifying == 1, || format!("{} qualifying for anisotropic {m:?}", rr.qualifying))?;
            aniso += 1;
        }
        checked += 1;
    }
    ensure(checked > 0, || "no decided forms in range".into())?;
    Ok(format!("{checked} forms with rr = lr ({aniso} anisotropic with a unique L), {skipped} undetermined skipped"))
}

/// `(A : m) ∩ (A + p Λ)`, the preimage of `(pB)[m]`, as a submodule of `B_p`.
fn corollary_case(a: &TableOrder, p: &BigInt) -> Result<bool, String> {
    let (bp, lift) = a.form_from_quotient(p).unwrap();
    let m = radical_mod_p(a, p);
    let lhs = lift.submodule(&bp, &idealizer(a, &m)).map_err(|e| e.to_string())?;
    let full = lift.lattice(&a.unit_lattice(), &bp.whole());
    let p_full = a.unit_lattice().sum(&full.scaled(&BigRational::from_integer(p.clone())));
    let torsion = a.colon(&a.unit_lattice(), &m).intersection(&p_full);
    let rhs = lift.submodule(&bp, &torsion).map_err(|e| e.to_string())?;
    Ok(lhs == rhs)
}

fn corollary_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let primes = [5i64, 7, 11, 13];
    let mut found = 0;
    let mut tries = 0;
    while found < 50 {
        tries += 1;
        ensure(tries < 20_000, || format!("only {found} local tame non-maximal quartics found"))?;
        let p = b(primes[rng.gen_range(0..primes.len())]);
        let r = b(rng.gen_range(0..5));
        let k = rng.gen_range(1..=3u32);
        // (x - r)^4 + p^k h(x) with deg h < 4
        let base = [r.pow(4), -4 * r.pow(3), 6 * r.pow(2), -4 * &r, BigInt::one()];
        let pk = p.pow(k);
        let c: Vec<BigInt> = (0..5)
            .map(|i| if i < 4 { &base[i] + &pk * b(rng.gen_range(-3..=3)) } else { base[i].clone() })
            .collect();
        let Ok(a) = TableOrder::from_poly(&c) else { continue };
        if factor_mod_p(&c, &p, 0).len() != 1 || !is_tame_exact(&a, &p) {
            continue;
        }
        let (bp, _) = a.form_from_quotient(&p).unwrap();
        if bp.exponent() < 2 {
            continue;
        }
        ensure(corollary_case(&a, &p)?, || format!("poly {c:?} at {p}"))?;
        found += 1;
    }
    Ok(format!("{found} local tame non-maximal quartics, (m:m)/A = (pB)[m] in each"))
}

fn is_hnf(h: &IntMat) -> bool {
    let mut col = 0;
    let mut zero_seen = false;
    for i in 0..h.rows() {
        let row = h.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => zero_seen = true,
            Some(j) => {
                if zero_seen || j < col || !row[j].is_positive() {
                    return false;
                }
                if (0..i).any(|k| h[(k, j)].is_negative() || h[(k, j)] >= row[j]) {
                    return false;
                }
                col = j + 1;
            }
        }
    }
    true
}

fn kernel_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut square = 0;
    for _ in 0..500 {
        let rows = rng.gen_range(1..=8);
        let cols = if rng.gen_bool(0.5) { rows } else { rng.gen_range(1..=8) };
        let sparse = rng.gen_bool(0.3);
        let m = IntMat::from_fn(rows, cols, |_, _| {
            if sparse && rng.gen_bool(0.6) {
                BigInt::zero()
            } else {
                b(rng.gen_range(-1_000_000..=1_000_000))
            }
        });
        let (h, u) = hnf(&m);
        ensure(u.mul(&m) == h, || format!("U*M != H for {m:?}"))?;
        ensure(det(&u).abs().is_one(), || "HNF transform not unimodular".into())?;
        ensure(is_hnf(&h), || format!("not in HNF: {h:?}"))?;
        let s = snf(&m);
        ensure(s.left.mul(&m).mul(&s.right) == s.diagonal(), || format!("U*M*V != D for {m:?}"))?;
        ensure(det(&s.left).abs().is_one() && det(&s.right).abs().is_one(), || "SNF transforms not unimodular".into())?;
        let d = &s.divisors;
        ensure(d.iter().all(|x| !x.is_negative()), || "negative divisor".into())?;
        ensure(
            d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() }),
            || format!("divisibility chain broken: {d:?}"),
        )?;
        if rows == cols {
            square += 1;
            let dm = det(&m).abs();
            ensure(det(&h).abs() == dm, || "det(H) != |det(M)|".into())?;
            ensure(d.iter().product::<BigInt>() == dm, || "product of divisors != |det(M)|".into())?;
        }
    }
    Ok(format!("500 matrices ({square} square), HNF/SNF invariants hold"))
}

fn report(n: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "{} criterion {n} ({name}): {:.3}s / {}s limit: {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64(),
    );
    ok
}

fn main() {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= report(1, "example 1", secs(1), example_one);
    ok &= report(2, "example 2", secs(2), example_two);
    ok &= report(3, "x^2-5 guard", Duration::from_millis(100), counterexample_guard);

    let corpus = corpus();
    ok &= report(4, "maximality criterion", secs(60), || theorem_one(&corpus));
    let mut forms: Vec<FiniteFormModule> = Vec::new();
    ok &= report(5, "oracle equivalence", secs(60), || oracle_equivalence(&corpus, &mut forms));
    for c in [&[2i64, 17, -20, -20, 1][..], &[-15625, -15625, -125, -625, 1], &[-5, 0, 1]] {
        let a = TableOrder::from_poly(&c.iter().map(|&x| b(x)).collect::<Vec<_>>()).unwrap();
        for p in square_primes(&a) {
            forms.push(a.form_from_quotient(&p).unwrap().0);
        }
    }
    ok &= report(6, "forms rr = lr", secs(120), || form_suite(&forms));
    ok &= report(7, "idealizer of m", secs(30), corollary_suite);
    ok &= report(8, "HNF/SNF kernel", secs(10), kernel_suite);

    if !ok {
        std::process::exit(1);
    }
}
