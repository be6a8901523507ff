//! Small integer and rational helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, s, _) = ext_gcd(&a.mod_floor(m), m);
    if g.is_one() {
        Some(s.mod_floor(m))
    } else {
        None
    }
}

/// Splits `n = p^v * rest` with `p ∤ rest`. `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    split_valuation(n, p).0
}

pub fn pow(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// Representative of `r mod 1` in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

/// Exact integer square root of a nonnegative integer, if `n` is a square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn ext_gcd_bezout() {
        for (x, y) in [(240, 46), (-12, 18), (0, 5), (7, 0), (-3, -9)] {
            let (g, s, t) = ext_gcd(&b(x), &b(y));
            assert_eq!(&s * b(x) + &t * b(y), g);
            assert_eq!(g, b(x).gcd(&b(y)));
        }
    }

    #[test]
    fn valuation_and_inverse() {
        assert_eq!(split_valuation(&b(7 * 7 * 7 * 13), &b(7)), (3, b(13)));
        assert_eq!(mod_inverse(&b(3), &b(7)), Some(b(5)));
        assert_eq!(mod_inverse(&b(7), &b(49)), None);
    }

    #[test]
    fn frac_is_in_unit_interval() {
        let r = BigRational::new(b(-7), b(3));
        assert_eq!(frac(&r), BigRational::new(b(2), b(3)));
        assert_eq!(exact_sqrt(&b(144)), Some(b(12)));
        assert_eq!(exact_sqrt(&b(145)), None);
    }
}
