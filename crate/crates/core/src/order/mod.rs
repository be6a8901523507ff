//! Orders over `Z` given by structure constants, and lattices in their
//! rational span.

mod element;
mod lattice_ops;
mod qpoly;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use element::OrderElement;
pub use lattice_ops::QuotientPresentation;

use crate::linalg::{det, IntMat};
use crate::{Error, Result};

pub use crate::linalg::Lattice;

/// A commutative ring structure on `Z^n` with unit and nondegenerate trace form.
///
/// `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableOrder {
    n: usize,
    table: Vec<BigInt>,
    unit: Vec<BigInt>,
    poly: Option<Vec<BigInt>>,
    basis_traces: Vec<BigInt>,
    trace_matrix: IntMat,
    disc: BigInt,
}

impl TableOrder {
    /// `Z[x]/(f)` with basis `1, x, ..., x^{n-1}`; `coeffs` are low to high.
    pub fn from_poly(coeffs: &[BigInt]) -> Result<Self> {
        if coeffs.len() < 2 || !coeffs.last().is_some_and(|c| c.is_one()) {
            return Err(Error::NotMonic);
        }
        let n = coeffs.len() - 1;
        let fq: Vec<BigRational> = coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        if !qpoly::is_one(&qpoly::gcd(&fq, &qpoly::derivative(&fq))) {
            return Err(Error::NotSquarefree);
        }
        // alpha^k for k < 2n - 1, reduced modulo f
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
        let mut v = alloc::vec![BigInt::zero(); n];
        v[0] = BigInt::one();
        for _ in 0..(2 * n - 1) {
            powers.push(v.clone());
            let top = v[n - 1].clone();
            let mut next = alloc::vec![BigInt::zero(); n];
            next[1..].clone_from_slice(&v[..n - 1]);
            if !top.is_zero() {
                for (i, c) in next.iter_mut().enumerate() {
                    *c -= &top * &coeffs[i];
                }
            }
            v = next;
        }
        let mut table = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                table.extend(powers[i + j].iter().cloned());
            }
        }
        let mut unit = alloc::vec![BigInt::zero(); n];
        unit[0] = BigInt::one();
        let mut order = Self::assemble(n, table, unit)?;
        order.poly = Some(coeffs.to_vec());
        Ok(order)
    }

    /// Validates a raw multiplication table: `table[i][j]` holds the coordinates of `e_i * e_j`.
    pub fn from_table(n: usize, unit: Vec<BigInt>, table: &[Vec<Vec<BigInt>>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("rank must be positive".into()));
        }
        if unit.len() != n {
            return Err(Error::MalformedTable(alloc::format!("unit has length {}, expected {n}", unit.len())));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::MalformedTable(alloc::format!("table must be {n}x{n}x{n}")));
        }
        let flat: Vec<BigInt> = table.iter().flatten().flatten().cloned().collect();
        let c = |i: usize, j: usize| &flat[(i * n + j) * n..(i * n + j + 1) * n];
        for i in 0..n {
            for j in i + 1..n {
                if c(i, j) != c(j, i) {
                    return Err(Error::NotCommutative { i, j });
                }
            }
        }
        let order = Self::assemble_unchecked(n, flat.clone(), unit);
        for j in 0..n {
            let ej = order.basis_vector(j);
            if order.mul_int(&order.unit, &ej) != ej {
                return Err(Error::NoUnit { j });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let eij = c(i, j).to_vec();
                for k in 0..n {
                    let left = order.mul_int(&eij, &order.basis_vector(k));
                    let right = order.mul_int(&order.basis_vector(i), c(j, k));
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Self::assemble(n, flat, order.unit)
    }

    fn assemble_unchecked(n: usize, table: Vec<BigInt>, unit: Vec<BigInt>) -> Self {
        let basis_traces = (0..n)
            .map(|i| (0..n).map(|j| table[(i * n + j) * n + j].clone()).sum())
            .collect();
        TableOrder {
            n,
            table,
            unit,
            poly: None,
            basis_traces,
            trace_matrix: IntMat::zeros(0, 0),
            disc: BigInt::zero(),
        }
    }

    fn assemble(n: usize, table: Vec<BigInt>, unit: Vec<BigInt>) -> Result<Self> {
        let mut o = Self::assemble_unchecked(n, table, unit);
        let tm = IntMat::from_fn(n, n, |i, j| {
            let prod = o.c(i, j);
            prod.iter().zip(&o.basis_traces).map(|(a, t)| a * t).sum()
        });
        let d = det(&tm);
        if d.is_zero() {
            return Err(Error::DegenerateTrace);
        }
        o.trace_matrix = tm;
        o.disc = d;
        Ok(o)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Coordinates of `e_i * e_j`.
    pub fn c(&self, i: usize, j: usize) -> &[BigInt] {
        let n = self.n;
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn unit(&self) -> &[BigInt] {
        &self.unit
    }

    /// Defining polynomial (low to high) when the order was built from one.
    pub fn poly(&self) -> Option<&[BigInt]> {
        self.poly.as_deref()
    }

    pub fn table(&self) -> Vec<Vec<Vec<BigInt>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.c(i, j).to_vec()).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = alloc::vec![BigInt::zero(); self.n];
        v[i] = BigInt::one();
        v
    }

    /// Entry `(i, j)` is `Tr(e_i e_j)`.
    pub fn trace_matrix(&self) -> &IntMat {
        &self.trace_matrix
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Traces `Tr(e_i)` of the basis elements.
    pub fn basis_traces(&self) -> &[BigInt] {
        &self.basis_traces
    }

    pub fn mul_int(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut out = alloc::vec![BigInt::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (o, cijk) in out.iter_mut().zip(self.c(i, j)) {
                    if !cijk.is_zero() {
                        *o += &s * cijk;
                    }
                }
            }
        }
        out
    }

    pub fn mul_rat(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let (dx, xi) = clear(x);
        let (dy, yi) = clear(y);
        let d = dx * dy;
        self.mul_int(&xi, &yi)
            .into_iter()
            .map(|v| BigRational::new(v, d.clone()))
            .collect()
    }

    pub fn trace_int(&self, x: &[BigInt]) -> BigInt {
        x.iter().zip(&self.basis_traces).map(|(a, t)| a * t).sum()
    }

    pub fn trace_rat(&self, x: &[BigRational]) -> BigRational {
        x.iter()
            .zip(&self.basis_traces)
            .map(|(a, t)| a * BigRational::from_integer(t.clone()))
            .sum()
    }

    /// Rows are the coordinates of `e_i * x`, so `y * M = y x`.
    pub fn mult_matrix_rat(&self, x: &[BigRational]) -> crate::linalg::RatMat {
        let rows = (0..self.n)
            .map(|i| {
                let ei: Vec<BigRational> = self.basis_vector(i).into_iter().map(BigRational::from_integer).collect();
                self.mul_rat(&ei, x)
            })
            .collect();
        crate::linalg::RatMat::from_rows(self.n, rows)
    }

    /// Lattice of `A` itself, `Z^n` in the order basis.
    pub fn unit_lattice(&self) -> Lattice {
        Lattice::standard(self.n)
    }
}

/// `x = v / d` with integer `v`.
pub(crate) fn clear(x: &[BigRational]) -> (BigInt, Vec<BigInt>) {
    let d = crate::arith::lcm_all(x.iter().map(|c| c.denom()));
    let v = x.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (d, v)
}

pub(crate) fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}
