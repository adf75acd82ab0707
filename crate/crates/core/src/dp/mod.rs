//! The divided power algebra `R* = k_DP[W, X_1, .., Z]`, the polynomial
//! ring `R = k[w, x_1, .., z]` acting on it by contraction, and graded
//! monomial bases.

mod monomial;
mod poly;
mod vars;

pub use monomial::{count_monomials, index_map, monomial_basis, Exponent};
pub use poly::{contract, pairing, Dual, DualForm, Poly, Ring, RingElement};
pub use vars::VariableSet;
