use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::mod_inverse;

/// Polynomial over `F_p`, coefficients low to high in `[0, p)`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FpPoly {
    pub fn new(p: &BigInt, coeffs: &[BigInt]) -> Self {
        let mut out = FpPoly {
            p: p.clone(),
            coeffs: coeffs.iter().map(|c| c.mod_floor(p)).collect(),
        };
        out.trim();
        out
    }

    fn from_raw(p: &BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut out = FpPoly { p: p.clone(), coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: &BigInt) -> Self {
        FpPoly { p: p.clone(), coeffs: Vec::new() }
    }

    pub fn one(p: &BigInt) -> Self {
        Self::new(p, &[BigInt::one()])
    }

    pub fn x(p: &BigInt) -> Self {
        Self::new(p, &[BigInt::zero(), BigInt::one()])
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        let c = (0..n)
            .map(|i| (self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).mod_floor(&self.p))
            .collect();
        Self::from_raw(&self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let c = self.coeffs.iter().map(|x| (x * k).mod_floor(&self.p)).collect();
        Self::from_raw(&self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.p);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        for x in c.iter_mut() {
            *x = x.mod_floor(&self.p);
        }
        Self::from_raw(&self.p, c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.lead(), &self.p).expect("p is prime");
        self.scale(&inv)
    }

    /// `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = mod_inverse(d.lead(), &self.p).expect("p is prime");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.p), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = (&r[k + dd] * &inv).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * dj).mod_floor(&self.p);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_raw(&self.p, q), Self::from_raw(&self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Self::zero(&self.p), Self::one(&self.p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = core::mem::replace(&mut r1, r);
            t0 = core::mem::replace(&mut t1, t);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = mod_inverse(&r0.coeffs[0], &self.p)?;
        Some(t0.scale(&inv).rem(m))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        let mut result = Self::one(&self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.p), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| (a * BigInt::from(k)).mod_floor(&self.p))
            .collect();
        Self::from_raw(&self.p, c)
    }

    /// `g` with `g^p = self`, for `self` a polynomial in `x^p`.
    fn pth_root(&self) -> Self {
        let p = usize::try_from(&self.p).expect("p-th root only arises for small p");
        let c = self.coeffs.iter().step_by(p).cloned().collect();
        Self::from_raw(&self.p, c)
    }

    /// Value at `x = a`.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * a + c).mod_floor(&self.p))
    }

    fn sort_key(&self) -> (usize, &[BigInt]) {
        (self.coeffs.len(), &self.coeffs)
    }

    /// Squarefree decomposition of a monic polynomial: `self = Π g_i^{e_i}`.
    pub fn squarefree_factors(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            let p = u32::try_from(&self.p).expect("small p");
            for (g, e) in self.pth_root().squarefree_factors() {
                out.push((g, e * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            let p = u32::try_from(&self.p).expect("small p");
            for (g, e) in c.pth_root().squarefree_factors() {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
    pub fn distinct_degree_factors(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut g = self.clone();
        let x = Self::x(&self.p);
        let mut h = x.rem(&g);
        let mut i = 1;
        while g.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(&self.p, &g);
            let d = g.gcd(&h.sub(&x));
            if !d.is_one() {
                g = g.div_exact(&d);
                h = h.rem(&g);
                out.push((d, i));
            }
            i += 1;
        }
        if let Some(k) = g.degree().filter(|&k| k > 0) {
            out.push((g, k));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
    pub fn equal_degree_factors(&self, d: usize, rng: &mut impl FnMut(&BigInt) -> BigInt) -> Vec<FpPoly> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.clone()];
        }
        let two = BigInt::from(2);
        loop {
            let a = Self::from_raw(&self.p, (0..n).map(|_| rng(&self.p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.p == two {
                // trace map F_{2^d} -> F_2
                let mut t = a.rem(self);
                let mut s = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    s = s.add(&t);
                }
                s
            } else {
                let e = (num_traits::pow(self.p.clone(), d) - 1) / 2;
                a.pow_mod(&e, self).sub(&Self::one(&self.p))
            };
            let u = self.gcd(&b);
            let du = u.degree().unwrap_or(0);
            if du > 0 && du < n {
                let mut out = u.equal_degree_factors(d, rng);
                out.extend(self.div_exact(&u).equal_degree_factors(d, rng));
                return out;
            }
        }
    }

    /// Full factorization of a monic polynomial into monic irreducibles with multiplicity.
    pub fn factor(&self, rng: &mut impl FnMut(&BigInt) -> BigInt) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        for (g, e) in self.monic().squarefree_factors() {
            for (h, d) in g.distinct_degree_factors() {
                for irr in h.equal_degree_factors(d, rng) {
                    out.push((irr, e));
                }
            }
        }
        out.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
        out
    }
}
