//! Local maximality, lower-root enlargement with certification, the
//! radical-idealizer oracle and gluing of local closures.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{rat, valuation};
use crate::factor::{is_prime, Factorization};
use crate::form::{AnisotropyStatus, FiniteFormModule, PrimaryLift, DEFAULT_MAX_ENUM};
use crate::linalg::Lattice;
use crate::localize::{is_tame_exact, radical_mod_p, split_maximal_ideals, tame_dim_test, SplitData};
use crate::order::TableOrder;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TameStatus {
    ProvedByDimension,
    ProvedExact,
    Wild,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    AlreadyMaximal,
    Theorem2,
    Theorem3,
    TheoremNano,
    TheoremMain5iii,
    OracleFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub p: BigInt,
    pub tame: TameStatus,
    /// Elementary divisor exponents of `B_p` at each maximal ideal above `p`.
    pub exps_per_ideal: Vec<Vec<u32>>,
    pub anisotropy: AnisotropyStatus,
    pub method: Method,
    /// `p`-maximal overorder of `A`.
    pub closure: Lattice,
    /// `[closure : A]`, a power of `p`.
    pub index: BigInt,
    pub certified: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    /// Trust certified methods without running the oracle.
    pub fast: bool,
    /// Bound on `|B_p|` for the radical-root enumeration.
    pub max_enum: u64,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            fast: false,
            max_enum: DEFAULT_MAX_ENUM,
            seed: 0,
        }
    }
}

/// Under tameness, `A` is `p`-maximal iff `p^2` does not divide `exp(B_p)`.
pub fn maximality_test_tame(bp: &FiniteFormModule) -> bool {
    bp.exponent() <= 1
}

/// `{x : x I ⊆ I}`.
pub fn idealizer(a: &TableOrder, ideal: &Lattice) -> Lattice {
    a.colon(ideal, ideal)
}

/// Orders visited by the radical-idealizer iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRun {
    /// `A = A_0 ⊊ A_1 ⊊ … ⊊ A_k`, the last being `p`-maximal.
    pub chain: Vec<Lattice>,
}

impl OracleRun {
    pub fn closure(&self) -> &Lattice {
        self.chain.last().expect("chain starts at A")
    }
}

/// Radical of the ring lattice `l` at `p`, in the coordinates of `A`.
pub fn radical_of(a: &TableOrder, l: &Lattice, p: &BigInt) -> Result<Lattice> {
    let local = a.ring_lattice_order(l)?;
    Ok(a.lattice_from_sub_coords(l, &radical_mod_p(&local, p)))
}

/// Iterates `L <- J:J` with `J` the radical of `L` at `p` until it stabilizes.
pub fn p_closure_oracle(a: &TableOrder, p: &BigInt) -> Result<OracleRun> {
    let bound = valuation(a.discriminant(), p) / 2 + 1;
    let mut chain = alloc::vec![a.unit_lattice()];
    loop {
        let l = chain.last().unwrap();
        let j = radical_of(a, l, p)?;
        let next = idealizer(a, &j);
        debug_assert!(next.contains_lattice(l));
        if &next == l {
            return Ok(OracleRun { chain });
        }
        if chain.len() as u32 > bound {
            return Err(Error::IterationBound(p.clone()));
        }
        chain.push(next);
    }
}

/// `A[D]` for `D/A = lr(B_p)`, and whether `A + D` was already a ring.
pub fn lr_enlargement(a: &TableOrder, bp: &FiniteFormModule, lift: &PrimaryLift) -> Result<(Lattice, bool)> {
    let d = lift.lattice(&a.unit_lattice(), &bp.lower_root());
    let ring = a.is_ring(&d);
    Ok((a.ring_generated(&d)?, ring))
}

/// Hypotheses of the per-ideal lower-root criterion; `n[i - 1] = n(i)`.
pub fn theorem3_condition(p: &BigInt, n: &[u32], d: usize) -> bool {
    let total: u32 = n.iter().sum();
    if BigInt::from(total) >= *p {
        return false;
    }
    let at = |i: usize| n.get(i - 1).copied().unwrap_or(0);
    let d = d as u32;
    let top = n.len() + 2;
    (1..=top).any(|i1| {
        (1..=top).any(|i2| {
            i1 % 2 != i2 % 2
                && (1..=n.len()).all(|i| i == 1 || i == i1 || i == i2 || at(i) == 0)
                && [i1, i2].iter().all(|&i| at(i) == 0 || at(i) == d)
        })
    })
}

fn index_of(a: &TableOrder, l: &Lattice) -> BigInt {
    a.unit_lattice().index_in(l).expect("closure contains A")
}

/// Whether every order of the chain is tame at `p`.
fn chain_is_tame(a: &TableOrder, chain: &[Lattice], p: &BigInt) -> Result<bool> {
    for l in chain {
        if !is_tame_exact(&a.ring_lattice_order(l)?, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A[D]` for `D/A = rr(B_p)`, when `p rr^⊥ ⊆ rr` and `A[D]` is tame.
fn main5iii_candidate(
    a: &TableOrder,
    p: &BigInt,
    bp: &FiniteFormModule,
    lift: &PrimaryLift,
    max_enum: u64,
    tame_by_dimension: bool,
) -> Result<Option<Lattice>> {
    let rr = match bp.rr_bruteforce(max_enum) {
        Ok(r) => r.rr,
        Err(Error::TooLarge(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let perp = bp.orthocomplement(&rr);
    let pq = rat(p);
    let closed = perp.generators().iter().all(|y| {
        let py: Vec<BigInt> = y.iter().map(|x| (rat(x) * &pq).to_integer()).collect();
        rr.contains(&py)
    });
    if !closed {
        return Ok(None);
    }
    let ad = a.ring_generated(&lift.lattice(&a.unit_lattice(), &rr))?;
    if !tame_by_dimension && !is_tame_exact(&a.ring_lattice_order(&ad)?, p) {
        return Ok(None);
    }
    Ok(Some(ad))
}

/// Computes the `p`-maximal overorder and certifies it by a theorem where possible.
pub fn certify_closure_at_p(a: &TableOrder, p: &BigInt, opts: &CertifyOptions) -> Result<PrimeReport> {
    if !is_prime(p) {
        return Err(Error::UnresolvedFactor(p.clone()));
    }
    let (bp, lift) = a.form_from_quotient(p)?;
    let split: Option<SplitData> = match a.poly() {
        Some(_) => Some(split_maximal_ideals(a, p, &bp, &lift, opts.seed)?),
        None => None,
    };
    let exps_per_ideal = match &split {
        Some(s) => s.component_exps.clone(),
        None => alloc::vec![bp.exps().to_vec()],
    };
    let dim_ok = match &split {
        Some(s) => tame_dim_test(s),
        None => BigInt::from(bp.rank()) < *p,
    };
    let tame = if dim_ok {
        TameStatus::ProvedByDimension
    } else if is_tame_exact(a, p) {
        TameStatus::ProvedExact
    } else {
        TameStatus::Wild
    };
    let anisotropy = bp.anisotropy_status();
    let report = |method, closure: Lattice, certified| PrimeReport {
        p: p.clone(),
        tame,
        exps_per_ideal: exps_per_ideal.clone(),
        anisotropy,
        method,
        index: index_of(a, &closure),
        closure,
        certified,
    };

    if bp.is_zero() || (tame != TameStatus::Wild && maximality_test_tame(&bp)) {
        if !opts.fast {
            let oracle = p_closure_oracle(a, p)?;
            if oracle.closure() != &a.unit_lattice() {
                return Err(Error::CertificationMismatch(p.clone()));
            }
        }
        return Ok(report(Method::AlreadyMaximal, a.unit_lattice(), true));
    }

    let oracle = if opts.fast { None } else { Some(p_closure_oracle(a, p)?) };
    let two = BigInt::from(2);
    let mut certified: Option<(Method, Lattice)> = None;
    if *p != two {
        let chain_tame = match tame {
            TameStatus::ProvedByDimension => true,
            TameStatus::ProvedExact => match &oracle {
                Some(o) => chain_is_tame(a, &o.chain, p)?,
                None => false,
            },
            TameStatus::Wild => false,
        };
        let by_form = match anisotropy {
            AnisotropyStatus::Anisotropic if chain_tame => Some(Method::Theorem2),
            AnisotropyStatus::QuasiAnisotropic if chain_tame => Some(Method::TheoremNano),
            _ => None,
        };
        let by_ideals = split.as_ref().is_some_and(|s| {
            (0..s.ideal_count()).all(|m| theorem3_condition(p, &s.multiplicities(m), s.residue_degrees[m]))
        });
        let lr_method = by_form.or(by_ideals.then_some(Method::Theorem3));
        if let Some(method) = lr_method {
            let (closure, ring) = lr_enlargement(a, &bp, &lift)?;
            if !ring {
                return Err(Error::CertificationMismatch(p.clone()));
            }
            certified = Some((method, closure));
        } else if chain_tame {
            let by_dim = tame == TameStatus::ProvedByDimension;
            if let Some(ad) = main5iii_candidate(a, p, &bp, &lift, opts.max_enum, by_dim)? {
                certified = Some((Method::TheoremMain5iii, ad));
            }
        }
    }

    match (certified, oracle) {
        (Some((method, closure)), Some(o)) => {
            if o.closure() != &closure {
                return Err(Error::CertificationMismatch(p.clone()));
            }
            Ok(report(method, closure, true))
        }
        (Some((method, closure)), None) => Ok(report(method, closure, true)),
        (None, Some(o)) => Ok(report(Method::OracleFallback, o.closure().clone(), false)),
        (None, None) => {
            let o = p_closure_oracle(a, p)?;
            Ok(report(Method::OracleFallback, o.closure().clone(), false))
        }
    }
}

/// `Ā` as the sum of the local closures, checked against the discriminant.
pub fn glue_closure(a: &TableOrder, reports: &[PrimeReport], disc: &Factorization) -> Result<Lattice> {
    if !disc.is_complete() {
        return Err(Error::UnresolvedFactor(disc.unresolved.clone()));
    }
    for (p, e) in &disc.factors {
        if *e >= 2 && !reports.iter().any(|r| &r.p == p) {
            return Err(Error::IncompleteCover(p.clone()));
        }
    }
    let mut sorted: Vec<&PrimeReport> = reports.iter().collect();
    sorted.sort_by(|x, y| x.p.cmp(&y.p));
    let glued = sorted
        .iter()
        .fold(a.unit_lattice(), |acc, r| a.lattice_sum(&acc, &r.closure));
    let maximal = a.ring_lattice_order(&glued)?;
    let index = index_of(a, &glued);
    if a.discriminant() != &(&index * &index * maximal.discriminant()) {
        return Err(Error::CertificationMismatch(BigInt::one()));
    }
    Ok(glued)
}
