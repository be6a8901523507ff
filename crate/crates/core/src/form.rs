//! Finite p-primary abelian groups with nondegenerate symmetric `Q/Z`-valued forms.

use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{frac, is_integral, mod_inverse, pow, rat, split_valuation};
use crate::linalg::{hnf_only, IntMat, Lattice, RatMat};
use crate::order::{QuotientPresentation, TableOrder};
use crate::{Error, Result};

/// Default bound on `|M|` for [`FiniteFormModule::rr_bruteforce`].
pub const DEFAULT_MAX_ENUM: u64 = 15_625;

const CANDIDATE_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnisotropyStatus {
    Anisotropic,
    QuasiAnisotropic,
    Undetermined,
}

/// `M = ⊕ Z/p^{e_i} g_i` with `gram[i][j] = <g_i, g_j>` reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFormModule {
    p: BigInt,
    exps: Vec<u32>,
    gram: RatMat,
}

/// A submodule `L ⊆ M`, stored as the HNF of its preimage in `Z^r`.
///
/// The preimage contains the relation lattice `⊕ p^{e_i} Z`, so the basis is
/// square and equality of submodules is equality of bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    basis: IntMat,
}

/// Result of the radical-root enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalRoot {
    pub rr: Submodule,
    pub qualifying: u64,
}

impl Submodule {
    fn from_preimage_rows(r: usize, rows: IntMat) -> Self {
        if r == 0 {
            return Submodule { basis: IntMat::zeros(0, 0) };
        }
        let h = hnf_only(&rows);
        let basis = IntMat::from_fn(r, r, |i, j| h[(i, j)].clone());
        debug_assert!((0..r).all(|i| h[(i, i)].is_positive()));
        Submodule { basis }
    }

    fn from_lattice(l: &Lattice) -> Self {
        debug_assert!(l.is_integral());
        Submodule { basis: l.basis().clone() }
    }

    fn lattice(&self) -> Lattice {
        Lattice::from_int_rows(&BigInt::one(), &self.basis).expect("preimage has full rank")
    }

    /// HNF basis of the preimage in `Z^r`; rows generate the submodule.
    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.basis.row_vecs()
    }

    /// `[M : L]`.
    pub fn index(&self) -> BigInt {
        (0..self.basis.rows()).map(|i| self.basis[(i, i)].clone()).product()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        if self.basis.rows() == 0 {
            return true;
        }
        let v: Vec<BigRational> = x.iter().map(rat).collect();
        self.lattice().contains(&v)
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other.basis.row_vecs().iter().all(|x| self.contains(x))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Self::from_preimage_rows(self.basis.rows(), self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        if self.basis.rows() == 0 {
            return self.clone();
        }
        Self::from_lattice(&self.lattice().intersection(&other.lattice()))
    }
}

impl FiniteFormModule {
    /// Validates shape, ordering, symmetry and compatibility, and reduces entries mod 1.
    pub fn new(p: BigInt, exps: Vec<u32>, gram: RatMat) -> Result<Self> {
        let r = exps.len();
        if gram.rows() != r || gram.cols() != r {
            return Err(Error::DimensionMismatch(format!("gram must be {r}x{r}")));
        }
        if exps.contains(&0) || exps.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::DimensionMismatch("exponents must be positive and nondecreasing".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if frac(&(&gram[(i, j)] - &gram[(j, i)])) != BigRational::zero() {
                    return Err(Error::DimensionMismatch("gram matrix is not symmetric".into()));
                }
                let scale = rat(&pow(&p, exps[i].min(exps[j])));
                if !is_integral(&(&gram[(i, j)] * scale)) {
                    return Err(Error::DimensionMismatch("gram entry incompatible with generator orders".into()));
                }
            }
        }
        let gram = gram.map(frac);
        Ok(FiniteFormModule { p, exps, gram })
    }

    pub fn zero(p: BigInt) -> Self {
        FiniteFormModule {
            p,
            exps: Vec::new(),
            gram: RatMat::zeros(0, 0),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn gram(&self) -> &RatMat {
        &self.gram
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    /// `|M|`.
    pub fn order(&self) -> BigInt {
        pow(&self.p, self.exps.iter().sum())
    }

    /// Largest exponent, so `exp(M) = p^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exps.last().copied().unwrap_or(0)
    }

    /// `|L|` for a submodule of `self`.
    pub fn order_of(&self, l: &Submodule) -> BigInt {
        self.order() / l.index()
    }

    /// `<x, y>` in `[0, 1)`.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let r = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..r {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if !y[j].is_zero() {
                    acc += &self.gram[(i, j)] * rat(&(&x[i] * &y[j]));
                }
            }
        }
        frac(&acc)
    }

    fn relations(&self) -> IntMat {
        let d: Vec<BigInt> = self.exps.iter().map(|&e| pow(&self.p, e)).collect();
        IntMat::diagonal(&d)
    }

    fn diagonal_submodule(&self, mut e: impl FnMut(u32) -> u32) -> Submodule {
        let d: Vec<BigInt> = self.exps.iter().map(|&x| pow(&self.p, e(x))).collect();
        Submodule { basis: IntMat::diagonal(&d) }
    }

    pub fn whole(&self) -> Submodule {
        self.diagonal_submodule(|_| 0)
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.diagonal_submodule(|e| e)
    }

    /// Submodule generated by coordinate vectors.
    pub fn submodule(&self, gens: &[Vec<BigInt>]) -> Submodule {
        let r = self.rank();
        let rows = IntMat::from_rows(r, gens.to_vec()).vstack(&self.relations());
        Submodule::from_preimage_rows(r, rows)
    }

    /// `p^k M`.
    pub fn multiple(&self, k: u32) -> Submodule {
        self.diagonal_submodule(|e| e.min(k))
    }

    /// `M[p^k]`.
    pub fn torsion(&self, k: u32) -> Submodule {
        self.diagonal_submodule(|e| e.saturating_sub(k))
    }

    /// Exponents of `L` as an abstract group, nondecreasing.
    pub fn structure(&self, l: &Submodule) -> Vec<u32> {
        if self.is_zero() {
            return Vec::new();
        }
        let qp = QuotientPresentation::new(&self.zero_submodule().lattice(), &l.lattice()).expect("K ⊆ L");
        qp.divisors()
            .iter()
            .map(|d| split_valuation(d, &self.p).0)
            .filter(|&e| e > 0)
            .collect()
    }

    /// `{x : <x, y> = 0 for all y}`.
    pub fn radical(&self) -> Submodule {
        if self.is_zero() {
            return self.zero_submodule();
        }
        Submodule::from_lattice(&Lattice::integral_preimage(&self.gram))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical() == self.zero_submodule()
    }

    /// `lr(M) = Σ_k (p^k M ∩ M[p^k])`.
    pub fn lower_root(&self) -> Submodule {
        let mut acc = self.zero_submodule();
        for k in 0..=self.exponent() {
            acc = acc.sum(&self.multiple(k).intersection(&self.torsion(k)));
        }
        acc
    }

    /// `L^⊥ = {y : <x, y> = 0 for all x ∈ L}`.
    pub fn orthocomplement(&self, l: &Submodule) -> Submodule {
        if self.is_zero() {
            return self.zero_submodule();
        }
        let lt = l.basis.to_rational().transpose();
        Submodule::from_lattice(&Lattice::integral_preimage(&self.gram.mul(&lt)))
    }

    /// `L ⊆ L^⊥`.
    pub fn is_isotropic(&self, l: &Submodule) -> bool {
        let g = l.generators();
        g.iter()
            .enumerate()
            .all(|(i, x)| g[i..].iter().all(|y| self.pair(x, y).is_zero()))
    }

    /// The form on `M/M[p]` with values in `N/N[p] ≅ Q/Z` (multiplication by `p`).
    pub fn induced_quotient_form(&self) -> FiniteFormModule {
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| self.exps[i] > 1).collect();
        let exps = keep.iter().map(|&i| self.exps[i] - 1).collect();
        let p = rat(&self.p);
        let gram = RatMat::from_fn(keep.len(), keep.len(), |a, b| frac(&(&self.gram[(keep[a], keep[b])] * &p)));
        FiniteFormModule {
            p: self.p.clone(),
            exps,
            gram,
        }
    }

    /// The induced form on `L^⊥ / L`.
    pub fn subquotient_form(&self, l: &Submodule) -> Result<FiniteFormModule> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let perp = self.orthocomplement(l);
        if !perp.contains_submodule(l) {
            return Err(Error::NotIsotropicInput);
        }
        let qp = QuotientPresentation::new(&l.lattice(), &perp.lattice())?;
        let mut exps = Vec::new();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for (d, g) in qp.divisors().iter().zip(qp.generators()) {
            let (e, rest) = split_valuation(d, &self.p);
            debug_assert!(rest.is_one());
            if e > 0 {
                exps.push(e);
                gens.push(g.iter().map(|x| x.to_integer()).collect());
            }
        }
        let gram = RatMat::from_fn(gens.len(), gens.len(), |i, j| self.pair(&gens[i], &gens[j]));
        Ok(FiniteFormModule {
            p: self.p.clone(),
            exps,
            gram,
        })
    }

    /// Sufficient criteria only; never decides anything at `p = 2`.
    pub fn anisotropy_status(&self) -> AnisotropyStatus {
        if self.p == BigInt::from(2) {
            AnisotropyStatus::Undetermined
        } else if anisotropic_shape(&self.exps) {
            AnisotropyStatus::Anisotropic
        } else if anisotropic_shape(self.induced_quotient_form().exps()) {
            AnisotropyStatus::QuasiAnisotropic
        } else {
            AnisotropyStatus::Undetermined
        }
    }

    /// Intersection of all `L` with `p L^⊥ ⊆ L ⊆ L^⊥`, by enumerating submodules.
    pub fn rr_bruteforce(&self, max_enum: u64) -> Result<RadicalRoot> {
        let order = self.order();
        if order > BigInt::from(max_enum) {
            return Err(Error::TooLarge(format!("|M| = {order} exceeds enumeration bound {max_enum}")));
        }
        if self.is_zero() {
            return Ok(RadicalRoot {
                rr: self.zero_submodule(),
                qualifying: 1,
            });
        }
        let small = SmallForm::new(self)?;
        let count = small.candidate_count();
        if count > CANDIDATE_BUDGET {
            return Err(Error::TooLarge(format!("{count} candidate submodules")));
        }
        let mut rr: Option<Submodule> = None;
        let mut qualifying = 0u64;
        small.for_each_isotropic(&mut |rows| {
            let l = self.submodule(&small.to_big(rows));
            let p = rat(&self.p);
            let perp = self.orthocomplement(&l);
            let qualifies = perp.generators().iter().all(|y| {
                let py: Vec<BigInt> = y.iter().map(|x| (rat(x) * &p).to_integer()).collect();
                l.contains(&py)
            });
            if qualifies {
                qualifying += 1;
                rr = Some(match rr.take() {
                    None => l,
                    Some(acc) => acc.intersection(&l),
                });
            }
        });
        Ok(RadicalRoot {
            rr: rr.expect("lower root always qualifies"),
            qualifying,
        })
    }
}

fn anisotropic_shape(exps: &[u32]) -> bool {
    match exps {
        [] | [_] => true,
        [a, b] => (a + b) % 2 == 1,
        _ => false,
    }
}

/// Machine-word copy of a form for the enumeration: `gram = S / p^E` with `E` the exponent.
struct SmallForm {
    p: i128,
    exps: Vec<u32>,
    modulus: i128,
    scaled: Vec<Vec<i128>>,
    window: (u32, u32),
}

impl SmallForm {
    fn new(m: &FiniteFormModule) -> Result<Self> {
        let too_large = || Error::TooLarge("form does not fit machine arithmetic".into());
        let p = m.p.to_i128().ok_or_else(too_large)?;
        let modulus_big = pow(&m.p, m.exponent());
        if modulus_big.bits() > 40 {
            return Err(too_large());
        }
        let modulus = modulus_big.to_i128().unwrap();
        let r = m.rank();
        let scaled = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (&m.gram[(i, j)] * rat(&modulus_big)).to_integer().to_i128().unwrap())
                    .collect()
            })
            .collect();
        // qualifying L satisfy |M| / p^r ≤ |L|^2 ≤ |M|
        let total: u32 = m.exps.iter().sum();
        let hi = total / 2;
        let lo = total.saturating_sub(r as u32).div_ceil(2);
        Ok(SmallForm {
            p,
            exps: m.exps.clone(),
            modulus,
            scaled,
            window: (lo, hi),
        })
    }

    fn pair_is_zero(&self, x: &[i128], y: &[i128]) -> bool {
        let r = self.exps.len();
        let mut acc = 0i128;
        for j in 0..r {
            if y[j] == 0 {
                continue;
            }
            let mut xs = 0i128;
            for i in 0..r {
                xs = (xs + x[i] * self.scaled[i][j]) % self.modulus;
            }
            acc = (acc + xs * y[j]) % self.modulus;
        }
        acc == 0
    }

    fn to_big(&self, rows: &[Vec<i128>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Upper bound on HNF candidates visited, summed over pivot profiles in the size window.
    fn candidate_count(&self) -> u128 {
        let r = self.exps.len();
        let mut total = 0u128;
        let mut a = vec![0u32; r];
        loop {
            let log_l: u32 = (0..r).map(|i| self.exps[i] - a[i]).sum();
            if log_l >= self.window.0 && log_l <= self.window.1 {
                let mut c = 1u128;
                for (j, &aj) in a.iter().enumerate() {
                    c = c.saturating_mul((self.p as u128).saturating_pow(aj * j as u32));
                }
                total = total.saturating_add(c);
            }
            let mut k = 0;
            loop {
                if k == r {
                    return total;
                }
                if a[k] < self.exps[k] {
                    a[k] += 1;
                    break;
                }
                a[k] = 0;
                k += 1;
            }
        }
    }

    /// Calls `f` on every isotropic submodule in the size window, given by HNF preimage rows.
    fn for_each_isotropic(&self, f: &mut dyn FnMut(&[Vec<i128>])) {
        let r = self.exps.len();
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(r);
        let mut pivots: Vec<i128> = Vec::with_capacity(r);
        self.extend(r, 0, &mut rows, &mut pivots, f);
    }

    // rows are built from the last coordinate upwards; `rows[k]` has pivot in column r-1-k
    fn extend(
        &self,
        r: usize,
        log_l: u32,
        rows: &mut Vec<Vec<i128>>,
        pivots: &mut Vec<i128>,
        f: &mut dyn FnMut(&[Vec<i128>]),
    ) {
        let depth = rows.len();
        if depth == r {
            if log_l >= self.window.0 {
                let ordered: Vec<Vec<i128>> = rows.iter().rev().cloned().collect();
                f(&ordered);
            }
            return;
        }
        let i = r - 1 - depth;
        let e = self.exps[i];
        for a in 0..=e {
            let log = log_l + (e - a);
            if log > self.window.1 {
                continue;
            }
            let pivot = self.p.pow(a);
            let cofactor = self.p.pow(e - a);
            // tail entries h_j in [0, pivot_j) for columns j > i
            let radices: Vec<i128> = (i + 1..r).map(|j| pivots[r - 1 - j]).collect();
            let mut tail = vec![0i128; radices.len()];
            loop {
                let mut row = vec![0i128; r];
                row[i] = pivot;
                row[i + 1..].copy_from_slice(&tail);
                if self.reduces(&row, cofactor, i, rows, pivots)
                    && self.pair_is_zero(&row, &row)
                    && rows.iter().all(|s| self.pair_is_zero(&row, s))
                {
                    rows.push(row);
                    pivots.push(pivot);
                    self.extend(r, log, rows, pivots, f);
                    rows.pop();
                    pivots.pop();
                }
                let mut k = 0;
                loop {
                    if k == tail.len() {
                        break;
                    }
                    tail[k] += 1;
                    if tail[k] < radices[k] {
                        break;
                    }
                    tail[k] = 0;
                    k += 1;
                }
                if k == tail.len() {
                    break;
                }
            }
        }
    }

    /// Whether `p^{e_i} g_i` lies in the lattice once `row` is added.
    fn reduces(&self, row: &[i128], cofactor: i128, i: usize, rows: &[Vec<i128>], pivots: &[i128]) -> bool {
        let r = row.len();
        let mut v: Vec<i128> = row.iter().map(|x| x * cofactor).collect();
        v[i] = 0;
        for j in i + 1..r {
            if v[j] == 0 {
                continue;
            }
            let k = r - 1 - j;
            let (q, rem) = v[j].div_rem(&pivots[k]);
            if rem != 0 {
                return false;
            }
            for (t, x) in rows[k].iter().enumerate() {
                v[t] -= q * x;
            }
        }
        true
    }
}

/// Identification of the `p`-primary part of `A†/A` with a [`FiniteFormModule`].
#[derive(Clone, Debug)]
pub struct PrimaryLift {
    p: BigInt,
    exps: Vec<u32>,
    presentation: QuotientPresentation,
    components: Vec<usize>,
    cofactor_inverses: Vec<BigInt>,
    lifts: Vec<Vec<BigRational>>,
}

impl PrimaryLift {
    /// Elements `x_i ∈ A†` lifting the generators of `B_p`.
    pub fn lifts(&self) -> &[Vec<BigRational>] {
        &self.lifts
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        &self.presentation
    }

    /// Coordinates in `B_p` of the image of `y ∈ A†`; `None` if `y ∉ A†`.
    pub fn coordinates(&self, y: &[BigRational]) -> Option<Vec<BigInt>> {
        let c = self.presentation.coordinates(y);
        if !c.iter().all(is_integral) {
            return None;
        }
        Some(
            self.components
                .iter()
                .zip(&self.exps)
                .zip(&self.cofactor_inverses)
                .map(|((&k, &e), inv)| (c[k].to_integer() * inv).mod_floor(&pow(&self.p, e)))
                .collect(),
        )
    }

    /// `base + Σ Z h·x` over generators `h` of `l`.
    pub fn lattice(&self, base: &Lattice, l: &Submodule) -> Lattice {
        let n = base.dim();
        let mut rows = base.basis_vectors();
        for h in l.generators() {
            let mut v = vec![BigRational::zero(); n];
            for (hi, x) in h.iter().zip(&self.lifts) {
                if hi.is_zero() {
                    continue;
                }
                let hq = rat(hi);
                for (vk, xk) in v.iter_mut().zip(x) {
                    *vk += &hq * xk;
                }
            }
            rows.push(v);
        }
        Lattice::from_rat_rows(n, &rows).expect("contains the base lattice")
    }

    /// Image in `B_p` of a lattice `A ⊆ l ⊆ A†`.
    pub fn submodule(&self, m: &FiniteFormModule, l: &Lattice) -> Result<Submodule> {
        let gens = l
            .basis_vectors()
            .iter()
            .map(|v| self.coordinates(v).ok_or(Error::NotBoundedByDual))
            .collect::<Result<Vec<_>>>()?;
        Ok(m.submodule(&gens))
    }
}

impl TableOrder {
    /// `B_p`, the `p`-primary part of `A†/A` with the trace pairing, on SNF-adapted generators.
    pub fn form_from_quotient(&self, p: &BigInt) -> Result<(FiniteFormModule, PrimaryLift)> {
        let presentation = self.quotient_presentation(&self.unit_lattice(), &self.trace_dual())?;
        let mut exps = Vec::new();
        let mut components = Vec::new();
        let mut cofactor_inverses = Vec::new();
        let mut lifts: Vec<Vec<BigRational>> = Vec::new();
        for (k, (d, g)) in presentation.divisors().iter().zip(presentation.generators()).enumerate() {
            let (e, m) = split_valuation(d, p);
            if e == 0 {
                continue;
            }
            let pe = pow(p, e);
            exps.push(e);
            components.push(k);
            cofactor_inverses.push(mod_inverse(&m, &pe).expect("cofactor is prime to p"));
            let mq = rat(&m);
            lifts.push(g.iter().map(|x| x * &mq).collect());
        }
        let r = exps.len();
        let gram = RatMat::from_fn(r, r, |i, j| frac(&self.trace_rat(&self.mul_rat(&lifts[i], &lifts[j]))));
        let module = FiniteFormModule {
            p: p.clone(),
            exps: exps.clone(),
            gram,
        };
        let lift = PrimaryLift {
            p: p.clone(),
            exps,
            presentation,
            components,
            cofactor_inverses,
            lifts,
        };
        Ok((module, lift))
    }
}
