//! Structure of `A/pA`: maximal ideals, lifted idempotents, the nilradical and tameness.

mod fp_poly;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub use fp_poly::FpPoly;

use crate::arith::{pow, rat};
use crate::factor::random_below;
use crate::form::{FiniteFormModule, PrimaryLift, Submodule};
use crate::linalg::{left_kernel_mod_p, IntMat, Lattice};
use crate::order::TableOrder;
use crate::{Error, Result};

/// Largest Hensel precision accepted when lifting idempotents.
pub const MAX_PRECISION: u32 = 4096;

/// Maximal ideals of `A` above `p` and the splitting of `B_p` along them.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub p: BigInt,
    /// Irreducible factors `g_m` of `f mod p` with multiplicities `e_m`.
    pub factors: Vec<(FpPoly, u32)>,
    /// `[A/m : F_p] = deg g_m`.
    pub residue_degrees: Vec<usize>,
    /// Idempotents of `A/p^N A` in order coordinates, entries in `[0, p^N)`.
    pub idempotents: Vec<Vec<BigInt>>,
    pub precision: u32,
    /// `e_m B_p` as submodules of `B_p`.
    pub components: Vec<Submodule>,
    /// Elementary divisor exponents of each component.
    pub component_exps: Vec<Vec<u32>>,
}

impl SplitData {
    pub fn ideal_count(&self) -> usize {
        self.factors.len()
    }

    /// `n(i, m)` for `i = 1..=precision`, as a vector indexed by `i - 1`.
    pub fn multiplicities(&self, m: usize) -> Vec<u32> {
        let mut n = alloc::vec![0u32; self.precision as usize];
        for &e in &self.component_exps[m] {
            n[e as usize - 1] += 1;
        }
        n
    }
}

fn seeded_sampler(seed: u64) -> impl FnMut(&BigInt) -> BigInt {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |p: &BigInt| random_below(&mut rng, p)
}

/// Monic irreducible factors of `f mod p` with multiplicities, in a canonical order.
pub fn factor_mod_p(f: &[BigInt], p: &BigInt, seed: u64) -> Vec<(FpPoly, u32)> {
    let fp = FpPoly::new(p, f);
    fp.factor(&mut seeded_sampler(seed))
}

fn reduce(v: Vec<BigInt>, q: &BigInt) -> Vec<BigInt> {
    v.into_iter().map(|x| x.mod_floor(q)).collect()
}

/// Lifts an idempotent of `A/pA` to `A/qA` with `e <- 3e^2 - 2e^3`.
fn lift_idempotent(a: &TableOrder, e: Vec<BigInt>, q: &BigInt) -> Vec<BigInt> {
    let mut e = reduce(e, q);
    loop {
        let e2 = reduce(a.mul_int(&e, &e), q);
        if e2 == e {
            return e;
        }
        let e3 = a.mul_int(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(x2, x3)| (BigInt::from(3) * x2 - BigInt::from(2) * x3).mod_floor(q))
            .collect();
    }
}

/// Splits `A` at `p` into its maximal ideals and `B_p` into the matching components.
///
/// Needs the defining polynomial, so only monogenic orders are accepted.
pub fn split_maximal_ideals(
    a: &TableOrder,
    p: &BigInt,
    bp: &FiniteFormModule,
    lift: &PrimaryLift,
    seed: u64,
) -> Result<SplitData> {
    let f = a.poly().ok_or(Error::NotMonogenic)?;
    let n = a.rank();
    let factors = factor_mod_p(f, p, seed);
    let precision = bp.exponent().max(1);
    if precision > MAX_PRECISION {
        return Err(Error::PrecisionOverflow(precision));
    }
    let q = pow(p, precision);
    let fp = FpPoly::new(p, f);

    let mut idempotents = Vec::with_capacity(factors.len());
    for (g, e) in &factors {
        let local = g.pow(*e);
        let cofactor = fp.div_exact(&local);
        let inv = cofactor.inverse_mod(&local).expect("coprime factors");
        let ep = cofactor.mul(&inv).rem(&fp);
        let mut coords = ep.coeffs().to_vec();
        coords.resize(n, BigInt::zero());
        idempotents.push(lift_idempotent(a, coords, &q));
    }
    debug_assert!({
        let mut s = alloc::vec![BigInt::zero(); n];
        for e in &idempotents {
            for (x, y) in s.iter_mut().zip(e) {
                *x += y;
            }
        }
        reduce(s, &q) == reduce(a.unit().to_vec(), &q)
    });

    let mut components = Vec::with_capacity(factors.len());
    let mut component_exps = Vec::with_capacity(factors.len());
    for e in &idempotents {
        let er: Vec<_> = e.iter().map(rat).collect();
        let gens: Vec<Vec<BigInt>> = lift
            .lifts()
            .iter()
            .map(|x| lift.coordinates(&a.mul_rat(&er, x)).expect("A† is an A-module"))
            .collect();
        let c = bp.submodule(&gens);
        component_exps.push(bp.structure(&c));
        components.push(c);
    }
    debug_assert!({
        let mut all: Vec<u32> = component_exps.iter().flatten().copied().collect();
        all.sort_unstable();
        all == bp.exps()
    });

    Ok(SplitData {
        p: p.clone(),
        residue_degrees: factors.iter().map(|(g, _)| g.degree().unwrap_or(0)).collect(),
        factors,
        idempotents,
        precision,
        components,
        component_exps,
    })
}

/// `x^e mod p` in `A`.
fn pow_mod_p(a: &TableOrder, x: &[BigInt], e: &BigInt, p: &BigInt) -> Vec<BigInt> {
    let mut result = reduce(a.unit().to_vec(), p);
    let base = reduce(x.to_vec(), p);
    for i in (0..e.bits()).rev() {
        result = reduce(a.mul_int(&result, &result), p);
        if e.bit(i) {
            result = reduce(a.mul_int(&result, &base), p);
        }
    }
    result
}

fn lattice_over_p(a: &TableOrder, p: &BigInt, kernel: Vec<Vec<BigInt>>) -> Lattice {
    let n = a.rank();
    let rows = IntMat::from_rows(n, kernel).vstack(&IntMat::identity(n).map(|x| x * p));
    Lattice::from_int_rows(&BigInt::one(), &rows).expect("contains pA")
}

/// Preimage in `A` of the nilradical of `A/pA`, via the kernel of `x -> x^{p^k}` with `p^k ≥ n`.
pub fn radical_mod_p(a: &TableOrder, p: &BigInt) -> Lattice {
    let n = a.rank();
    let mut k = 1u32;
    while pow(p, k) < BigInt::from(n) {
        k += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut x = a.basis_vector(i);
            for _ in 0..k {
                x = pow_mod_p(a, &x, p, p);
            }
            x
        })
        .collect();
    let frobenius = IntMat::from_rows(n, rows);
    lattice_over_p(a, p, left_kernel_mod_p(&frobenius, p))
}

/// Preimage in `A` of the radical of the trace form on `A/pA`.
pub fn trace_kernel_mod_p(a: &TableOrder, p: &BigInt) -> Lattice {
    lattice_over_p(a, p, left_kernel_mod_p(a.trace_matrix(), p))
}

/// Whether the trace-form radical of `A/pA` equals its nilradical.
pub fn is_tame_exact(a: &TableOrder, p: &BigInt) -> bool {
    let radical = radical_mod_p(a, p);
    let kernel = trace_kernel_mod_p(a, p);
    debug_assert!(kernel.contains_lattice(&radical), "nilpotents are trace-orthogonal");
    let tame = kernel == radical;
    if !tame {
        // a wild algebra has trace radical of dimension at least p
        let dim = left_kernel_mod_p(a.trace_matrix(), p).len();
        assert!(
            p.to_usize().is_none_or(|p| dim >= p),
            "trace radical of dimension {dim} below p = {p} at a wild prime"
        );
    }
    tame
}

/// `Σ_i n(i, m) < p` for every maximal ideal `m`.
pub fn tame_dim_test(split: &SplitData) -> bool {
    split
        .component_exps
        .iter()
        .all(|exps| BigInt::from(exps.len()) < split.p)
}
