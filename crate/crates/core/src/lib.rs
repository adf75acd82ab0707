//! Exact computations with Macaulay inverse systems: annihilators of forms
//! in a divided power algebra, minimal generator counts of `I = ann F` and of
//! its contraction `J = I ∩ k[x_1..x_n]`, and mechanical checks of
//! genericity criteria for forms `F = G + W Z^[j-1]`.

pub mod apolarity;
pub mod dp;
pub mod error;
pub mod ideal;
pub mod inverse;
pub mod io;
pub mod linalg;
pub mod report;
pub mod theorems;

pub use error::{Error, Result};
