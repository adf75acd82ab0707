//! Exact scalars and dense exact linear algebra over Q or a prime field.

mod field;
mod matrix;

pub use field::{binomial, is_prime, Field, Fp, Scalar};
pub use matrix::{
    in_span, kernel_basis, rank, rank_of_rows, rref, solve, subspace_sum, ExactMatrix, RowReducer, Rref, Solution,
    Subspace,
};
