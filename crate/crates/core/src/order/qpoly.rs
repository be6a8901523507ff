//! Dense univariate polynomials over `Q`, coefficients low to high.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[BigRational]) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    trim(&mut d);
    d
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b[db].clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = core::mem::replace(&mut y, r);
    }
    if let Some(d) = degree(&x) {
        let lead = x[d].clone();
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

pub fn is_one(p: &[BigRational]) -> bool {
    degree(p) == Some(0) && p[0].is_one()
}
