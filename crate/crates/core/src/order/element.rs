use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::TableOrder;
use crate::arith::is_integral;
use crate::linalg::RatMat;

/// An element of `Q(A)` in coordinates of the order basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderElement(pub Vec<BigRational>);

impl OrderElement {
    pub fn from_ints(v: &[BigInt]) -> Self {
        OrderElement(super::to_rat(v))
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }
}

impl TableOrder {
    pub fn one(&self) -> OrderElement {
        OrderElement::from_ints(self.unit())
    }

    pub fn mul(&self, x: &OrderElement, y: &OrderElement) -> OrderElement {
        OrderElement(self.mul_rat(&x.0, &y.0))
    }

    pub fn trace(&self, x: &OrderElement) -> BigRational {
        self.trace_rat(&x.0)
    }

    /// Characteristic polynomial of multiplication by `x`, low to high, monic.
    pub fn char_poly(&self, x: &OrderElement) -> Vec<BigRational> {
        char_poly_of(&self.mult_matrix_rat(&x.0))
    }

    /// `x` is integral over `Z` iff its characteristic polynomial has integer coefficients.
    pub fn is_integral(&self, x: &OrderElement) -> bool {
        self.char_poly(x).iter().all(is_integral)
    }
}

/// Faddeev-LeVerrier: coefficients of `det(tI - M)`, low to high.
fn char_poly_of(m: &RatMat) -> Vec<BigRational> {
    let n = m.rows();
    let mut coeffs = alloc::vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = RatMat::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = m.mul(&mk);
        let tr: BigRational = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ex1() -> TableOrder {
        let f: Vec<BigInt> = [2, 17, -20, -20, 1].iter().map(|&x: &i64| x.into()).collect();
        TableOrder::from_poly(&f).unwrap()
    }

    #[test]
    fn one_has_char_poly_power_of_t_minus_one() {
        let a = ex1();
        let cp = a.char_poly(&a.one());
        // (t - 1)^4
        let expect = [1, -4, 6, -4, 1].map(|c| q(c, 1));
        assert_eq!(cp, expect.to_vec());
        assert!(a.is_integral(&a.one()));
    }

    #[test]
    fn closure_generator_is_integral() {
        let a = ex1();
        let x = OrderElement(alloc::vec![q(2, 7), q(0, 1), q(1, 7), q(3, 7)]);
        assert!(a.is_integral(&x));
        let y = OrderElement(alloc::vec![q(0, 1), q(1, 7), q(0, 1), q(0, 1)]);
        assert!(!a.is_integral(&y));
        assert_eq!(a.char_poly(&y)[0], q(2, 7i64.pow(4)));
    }

    #[test]
    fn char_poly_of_alpha_is_f() {
        let a = ex1();
        let alpha = OrderElement::from_ints(&a.basis_vector(1));
        let cp = a.char_poly(&alpha);
        let f: Vec<BigRational> = [2, 17, -20, -20, 1].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(cp, f);
    }
}
