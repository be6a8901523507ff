//! Hermite and Smith normal forms over `Z`, and exact determinants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMat;
use crate::arith::ext_gcd;

/// Result of [`snf`]: `left * M * right = diag(divisors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` nonnegative entries, each dividing the next; zeros last.
    pub divisors: Vec<BigInt>,
    pub left: IntMat,
    pub right: IntMat,
}

impl SnfResult {
    /// The divisors as a `rows x cols` diagonal matrix.
    pub fn diagonal(&self) -> IntMat {
        let mut d = IntMat::zeros(self.left.rows(), self.right.rows());
        for (i, x) in self.divisors.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U * M = H`, `U` unimodular.
///
/// `H` is in row echelon form, pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, and zero rows come last.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Hermite normal form without the transform.
pub fn hnf_only(m: &IntMat) -> IntMat {
    let mut h = m.clone();
    hnf_in_place(&mut h, None);
    h
}

/// Number of nonzero rows of a matrix in echelon form.
pub fn echelon_rank(h: &IntMat) -> usize {
    (0..h.rows()).take_while(|&i| !h.is_zero_row(i)).count()
}

fn hnf_in_place(h: &mut IntMat, mut u: Option<&mut IntMat>) {
    let (rows, cols) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                if let Some(u) = u.as_deref_mut() {
                    u.swap_rows(r, i);
                }
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                continue;
            }
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            combine_rows(h, r, i, &s, &t, &bg, &ag);
            if let Some(u) = u.as_deref_mut() {
                combine_rows(u, r, i, &s, &t, &bg, &ag);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(h, r);
            if let Some(u) = u.as_deref_mut() {
                negate_row(u, r);
            }
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                let q = -q;
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, r, &q);
                }
            }
        }
        r += 1;
    }
}

/// Replaces rows `(r, i)` by `(s*r + t*i, -bg*r + ag*i)`, a determinant-one change.
fn combine_rows(m: &mut IntMat, r: usize, i: usize, s: &BigInt, t: &BigInt, bg: &BigInt, ag: &BigInt) {
    for j in 0..m.cols() {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        m[(r, j)] = s * &x + t * &y;
        m[(i, j)] = ag * &y - bg * &x;
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for x in m.row_mut(r) {
        *x = -core::mem::take(x);
    }
}

/// Smith normal form with transforms.
pub fn snf(m: &IntMat) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMat::identity(rows);
    let mut right = IntMat::identity(cols);
    let k = rows.min(cols);
    let mut t = 0;
    'outer: while t < k {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    left.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
        t += 1;
    }
    let divisors = (0..k).map(|i| a[(i, i)].clone()).collect();
    SnfResult {
        divisors,
        left,
        right,
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMat) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}
