#![allow(dead_code)]

pub mod bareiss;
pub mod equivalence;
pub mod gen;
pub mod oracle;
pub mod props;
