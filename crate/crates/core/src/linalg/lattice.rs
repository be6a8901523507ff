use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::normal_form::{echelon_rank, hnf, hnf_only};
use super::{IntMat, RatMat};
use crate::arith::{is_integral, lcm_all, rat};
use crate::{Error, Result};

/// A full-rank lattice `(1/den) * rowspan(basis)` in `Q^n`.
///
/// The basis is kept in row Hermite normal form (square, upper triangular,
/// positive diagonal) and `gcd(den, entries) = 1`, so structural equality is
/// lattice equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    den: BigInt,
    basis: IntMat,
}

impl core::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(1/{}) {:?}", self.den, self.basis)
    }
}

impl Lattice {
    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Lattice {
            den: BigInt::one(),
            basis: IntMat::identity(n),
        }
    }

    /// Lattice spanned by the rows of `rows / den`; fails unless the rows have full rank.
    pub fn from_int_rows(den: &BigInt, rows: &IntMat) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DimensionMismatch("zero denominator".into()));
        }
        let n = rows.cols();
        let h = hnf_only(rows);
        if echelon_rank(&h) != n {
            return Err(Error::RankDeficient);
        }
        let basis = IntMat::from_fn(n, n, |i, j| h[(i, j)].clone());
        Ok(Self::normalized(den.abs(), basis))
    }

    /// Lattice spanned by rational row vectors of length `n`.
    pub fn from_rat_rows(n: usize, rows: &[Vec<BigRational>]) -> Result<Self> {
        let (den, ints) = common_denominator(n, rows);
        Self::from_int_rows(&den, &ints)
    }

    fn normalized(mut den: BigInt, mut basis: IntMat) -> Self {
        let g = basis.entries().iter().fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            den /= &g;
            basis = basis.map(|x| x / &g);
        }
        Lattice { den, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Integer HNF basis; the lattice is this matrix divided by [`Self::den`].
    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn basis_rat(&self) -> RatMat {
        let d = rat(&self.den);
        self.basis.map(|x| rat(x) / &d)
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigRational>> {
        self.basis_rat().row_vecs()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Solves `c * (basis / den) = v` by forward substitution.
    pub fn coordinates(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.dim();
        assert_eq!(v.len(), n);
        let d = rat(&self.den);
        let mut c: Vec<BigRational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = &v[j] * &d;
            for (i, ci) in c.iter().enumerate() {
                let hij = &self.basis[(i, j)];
                if !hij.is_zero() {
                    acc -= ci * rat(hij);
                }
            }
            c.push(acc / rat(&self.basis[(j, j)]));
        }
        c
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).iter().all(is_integral)
    }

    /// `other ⊆ self`
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let den = self.den.lcm(&other.den);
        let a = self.basis.map(|x| x * (&den / &self.den));
        let b = other.basis.map(|x| x * (&den / &other.den));
        Self::from_int_rows(&den, &a.vstack(&b)).expect("sum of full-rank lattices has full rank")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        let n = self.dim();
        let den = self.den.lcm(&other.den);
        let a = self.basis.map(|x| x * (&den / &self.den));
        let b = other.basis.map(|x| x * (&den / &other.den));
        // relations u*[A;B] = 0 give the common vectors u_A * A
        let stacked = a.vstack(&b);
        let (h, u) = hnf(&stacked);
        let rank = echelon_rank(&h);
        let mut rows = Vec::new();
        for k in rank..stacked.rows() {
            let ua: Vec<BigInt> = u.row(k)[..n].to_vec();
            rows.push(a.vec_mul(&ua));
        }
        Self::from_int_rows(&den, &IntMat::from_rows(n, rows)).expect("intersection of full-rank lattices has full rank")
    }

    /// `c * self` for nonzero rational `c`.
    pub fn scaled(&self, c: &BigRational) -> Lattice {
        assert!(!c.is_zero());
        let den = &self.den * c.denom();
        let basis = self.basis.map(|x| x * c.numer());
        Self::from_int_rows(&den, &basis).expect("scaling preserves rank")
    }

    /// `|det(basis)| / den^n`.
    pub fn covolume(&self) -> BigRational {
        let d: BigInt = (0..self.dim()).map(|i| self.basis[(i, i)].clone()).product();
        let den_n = num_traits::pow(self.den.clone(), self.dim());
        BigRational::new(d, den_n)
    }

    /// `[sup : self]`, checking `self ⊆ sup`.
    pub fn index_in(&self, sup: &Lattice) -> Result<BigInt> {
        if !sup.contains_lattice(self) {
            return Err(Error::NotContained);
        }
        let r = self.covolume() / sup.covolume();
        debug_assert!(r.is_integer());
        Ok(r.to_integer())
    }

    /// `{ x : x . v ∈ Z for every v }` for vectors spanning `Q^n`.
    pub fn dual_of_span(n: usize, vectors: &[Vec<BigRational>]) -> Result<Lattice> {
        let span = Lattice::from_rat_rows(n, vectors)?;
        Ok(span.dual())
    }

    /// Dual lattice with respect to the standard dot product.
    pub fn dual(&self) -> Lattice {
        // (basis/den)^{-T} = den * H^{-T}
        let inv = super::solve::inverse_int(&self.basis).expect("lattice basis is nonsingular");
        let d = rat(&self.den);
        let rows: Vec<Vec<BigRational>> = inv.transpose().map(|x| x * &d).row_vecs();
        Lattice::from_rat_rows(self.dim(), &rows).expect("dual has full rank")
    }

    /// Integer points `x ∈ Z^n` with `x * m` integral, for a rational `n x k` matrix `m`.
    pub fn integral_preimage(m: &RatMat) -> Lattice {
        let n = m.rows();
        // {x : x*[I | m] integral} is the dual of the span of the columns of [I | m]
        let mut cols: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        cols.extend(m.transpose().row_vecs());
        Lattice::dual_of_span(n, &cols).expect("identity block makes the span full rank")
    }
}

/// Clears denominators: returns `(d, M)` with `rows = M / d`.
pub fn common_denominator(n: usize, rows: &[Vec<BigRational>]) -> (BigInt, IntMat) {
    let den = lcm_all(rows.iter().flat_map(|r| r.iter().map(|x| x.denom())));
    let ints = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n);
            r.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    (den, IntMat::from_rows(n, ints))
}
