//! Natural language to formal specification toolkit: regexes, first-order
//! logic and LTL, with dataset generators and an evaluation harness.

pub mod cli;
pub mod datasets;
pub mod eval;
pub mod fol;
pub mod ltl;
pub mod nlgen;
pub mod regex;
