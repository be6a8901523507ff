use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{to_rat, TableOrder};
use crate::arith::{is_integral, rat};
use crate::linalg::{inverse_int, snf, IntMat, Lattice, RatMat};
use crate::{Error, Result};

/// `sup/sub` presented as `⊕ Z/d_i` on adapted generators.
///
/// `sup = ⊕ Z g_i` and `sub = ⊕ d_i Z g_i`, with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    divisors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    generator_inverse: RatMat,
}

impl QuotientPresentation {
    pub fn new(sub: &Lattice, sup: &Lattice) -> Result<Self> {
        if sub.dim() != sup.dim() {
            return Err(Error::DimensionMismatch("lattices of different rank".into()));
        }
        if !sup.contains_lattice(sub) {
            return Err(Error::NotContained);
        }
        let n = sup.dim();
        let change: Vec<Vec<BigInt>> = sub
            .basis_vectors()
            .iter()
            .map(|v| sup.coordinates(v).into_iter().map(|c| c.to_integer()).collect())
            .collect();
        let change = IntMat::from_rows(n, change);
        let s = snf(&change);
        let v_inv = inverse_int(&s.right)?;
        let gens = v_inv.mul(&sup.basis_rat());
        let generator_inverse = crate::linalg::inverse_rat(&gens)?;
        Ok(QuotientPresentation {
            divisors: s.divisors,
            generators: gens.row_vecs(),
            generator_inverse,
        })
    }

    /// All `n` elementary divisors, including the trivial ones.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Elementary divisors different from 1.
    pub fn nontrivial_divisors(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    /// Order of the quotient group.
    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    /// Coordinates of `y` on the adapted generators; integral iff `y ∈ sup`.
    pub fn coordinates(&self, y: &[BigRational]) -> Vec<BigRational> {
        self.generator_inverse.vec_mul(y)
    }
}

impl TableOrder {
    /// `A† = { x : Tr(xA) ⊆ Z }`, spanned by the rows of the inverse trace matrix.
    pub fn trace_dual(&self) -> Lattice {
        let inv = inverse_int(self.trace_matrix()).expect("trace form is nondegenerate");
        Lattice::from_rat_rows(self.rank(), &inv.row_vecs()).expect("dual basis has full rank")
    }

    pub fn lattice_sum(&self, a: &Lattice, b: &Lattice) -> Lattice {
        a.sum(b)
    }

    /// Lattice spanned by all products `x y` with `x ∈ a`, `y ∈ b`.
    pub fn lattice_product(&self, a: &Lattice, b: &Lattice) -> Lattice {
        let n = self.rank();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(self.mul_int(a.basis().row(i), b.basis().row(j)));
            }
        }
        Lattice::from_int_rows(&(a.den() * b.den()), &IntMat::from_rows(n, rows))
            .expect("product of full-rank lattices in an etale algebra has full rank")
    }

    /// `{ x : x b ⊆ a }`.
    pub fn colon(&self, a: &Lattice, b: &Lattice) -> Lattice {
        let n = self.rank();
        // coordinates in `a` of x*b_j are x * M_{b_j} * (den_a * H_a^{-1}); all must be integral
        let h_inv = inverse_int(a.basis()).expect("lattice basis is nonsingular");
        let to_a = h_inv.map(|x| x * rat(a.den()));
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n * n);
        for bj in b.basis_vectors() {
            let m = self.mult_matrix_rat(&bj).mul(&to_a);
            cols.extend(m.transpose().row_vecs());
        }
        Lattice::dual_of_span(n, &cols).expect("b contains a unit of Q(A), so the map x -> (x b_j) is injective")
    }

    pub fn contains_unit(&self, l: &Lattice) -> bool {
        l.contains(&to_rat(self.unit()))
    }

    /// `1 ∈ l` and `l l ⊆ l`.
    pub fn is_ring(&self, l: &Lattice) -> bool {
        self.contains_unit(l) && l.contains_lattice(&self.lattice_product(l, l))
    }

    /// Smallest ring containing `A` and `l`.
    ///
    /// Fails with [`Error::NotBoundedByDual`] if an intermediate lattice leaves
    /// `A†`, which happens exactly when some generator is not integral.
    pub fn ring_generated(&self, l: &Lattice) -> Result<Lattice> {
        let dual = self.trace_dual();
        let mut cur = l.sum(&self.unit_lattice());
        loop {
            if !dual.contains_lattice(&cur) {
                return Err(Error::NotBoundedByDual);
            }
            let next = cur.sum(&self.lattice_product(&cur, &cur));
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn quotient_presentation(&self, sub: &Lattice, sup: &Lattice) -> Result<QuotientPresentation> {
        QuotientPresentation::new(sub, sup)
    }

    /// The ring lattice `l ⊇ A` as an order in its own HNF basis.
    pub fn ring_lattice_order(&self, l: &Lattice) -> Result<TableOrder> {
        let n = self.rank();
        let basis = l.basis_vectors();
        let mut table = Vec::with_capacity(n * n * n);
        for bi in &basis {
            for bj in &basis {
                let c = l.coordinates(&self.mul_rat(bi, bj));
                if !c.iter().all(is_integral) {
                    return Err(Error::MalformedTable("lattice is not closed under multiplication".into()));
                }
                table.extend(c.into_iter().map(|x| x.to_integer()));
            }
        }
        let unit = l.coordinates(&to_rat(self.unit()));
        if !unit.iter().all(is_integral) {
            return Err(Error::MalformedTable("lattice does not contain 1".into()));
        }
        TableOrder::assemble(n, table, unit.into_iter().map(|x| x.to_integer()).collect())
    }

    /// Maps coordinates in the basis of the ring lattice `l` back to order coordinates.
    pub fn from_lattice_coords(&self, l: &Lattice, c: &[BigRational]) -> Vec<BigRational> {
        l.basis_rat().vec_mul(c)
    }

    /// Image of a lattice given in `l`-coordinates.
    pub fn lattice_from_sub_coords(&self, l: &Lattice, sub: &Lattice) -> Lattice {
        let rows: Vec<Vec<BigRational>> = sub
            .basis_vectors()
            .iter()
            .map(|v| self.from_lattice_coords(l, v))
            .collect();
        Lattice::from_rat_rows(self.rank(), &rows).expect("change of basis preserves rank")
    }
}
