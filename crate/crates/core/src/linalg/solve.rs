//! Exact solving over `Q` and linear algebra over `F_p`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntMat, RatMat};
use crate::arith::mod_inverse;
use crate::{Error, Result};

/// Solves `M * X = target` exactly for square nonsingular integer `M`.
pub fn solve_rational(m: &IntMat, target: &RatMat) -> Result<RatMat> {
    if !m.is_square() || m.rows() != target.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "solve {}x{} against {}x{}",
            m.rows(),
            m.cols(),
            target.rows(),
            target.cols()
        )));
    }
    solve_rat(&m.to_rational(), target)
}

/// Gauss-Jordan elimination on `[M | T]` over `Q`.
pub fn solve_rat(m: &RatMat, target: &RatMat) -> Result<RatMat> {
    let n = m.rows();
    let k = target.cols();
    let mut a = m.clone();
    let mut x = target.clone();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap_rows(c, piv);
        x.swap_rows(c, piv);
        let inv = a[(c, c)].recip();
        a.scale_row(c, &inv);
        x.scale_row(c, &inv);
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let f = -a[(i, c)].clone();
            a.add_row_multiple(i, c, &f);
            x.add_row_multiple(i, c, &f);
        }
    }
    debug_assert_eq!(x.cols(), k);
    Ok(x)
}

pub fn inverse_rat(m: &RatMat) -> Result<RatMat> {
    solve_rat(m, &RatMat::identity(m.rows()))
}

pub fn inverse_int(m: &IntMat) -> Result<RatMat> {
    solve_rational(m, &RatMat::identity(m.rows()))
}

/// Basis of the left kernel `{ v : v * M = 0 }` over `F_p`, entries in `[0, p)`.
pub fn left_kernel_mod_p(m: &IntMat, p: &BigInt) -> Vec<Vec<BigInt>> {
    // left kernel of M is the right kernel of M^T
    let t = m.transpose();
    right_kernel_mod_p(&t, p)
}

/// Basis of `{ x : M x = 0 }` over `F_p`.
pub fn right_kernel_mod_p(m: &IntMat, p: &BigInt) -> Vec<Vec<BigInt>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.map(|x| x.mod_floor(p));
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = mod_inverse(&a[(r, c)], p).expect("nonzero element of a prime field");
        for x in a.row_mut(r) {
            *x = (&*x * &inv).mod_floor(p);
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = p - &a[(i, c)];
            for j in 0..cols {
                let v = (&a[(i, j)] + &f * &a[(r, j)]).mod_floor(p);
                a[(i, j)] = v;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = alloc::vec![BigInt::zero(); cols];
        v[free] = BigInt::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (-&a[(row, free)]).mod_floor(p);
        }
        basis.push(v);
    }
    basis
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &IntMat, p: &BigInt) -> usize {
    m.cols() - right_kernel_mod_p(m, p).len()
}
