//! Mechanical checks of the genericity criteria: stratify `F` by powers of
//! `X`, evaluate each statement's hypotheses, and compare its prediction
//! with the computed verdict.

mod checks;
mod decompose;
mod random;
mod search;

pub use checks::{
    check, check_hilb, check_lem0, check_lem0_binary, check_restrict, check_restrict_all, check_th0, check_thm1,
    check_tm2, check_tm2_converse, check_unimodal, restricted_form, Hypothesis, Observation, Prediction, Subject,
    TheoremId, TheoremReport,
};
pub use decompose::{decompose, Block, FormDecomposition};
pub use random::{random_form, sample, wxyz, BlockSpec, Preset, ShapeSource, ShapeSpec};
pub use search::{search, Inconsistency, SearchSummary, TheoremTally};
