//! Exact integer and rational linear algebra.

mod lattice;
mod matrix;
mod normal_form;
mod solve;

pub use lattice::{common_denominator, Lattice};
pub use matrix::{IntMat, Matrix, RatMat};
pub use normal_form::{det, echelon_rank, hnf, hnf_only, snf, SnfResult};
pub use solve::{inverse_int, inverse_rat, left_kernel_mod_p, rank_mod_p, right_kernel_mod_p, solve_rat, solve_rational};
