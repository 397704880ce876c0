//! Linear temporal logic: syntax, trace semantics and a decision procedure.
//!
//! ```
//! use nl2formal::ltl::{ltl_equivalent, parse_ltl, LtlEquivalence};
//!
//! let f = parse_ltl("F a").unwrap();
//! let g = parse_ltl("true U a").unwrap();
//! assert_eq!(ltl_equivalent(&f, &g).unwrap(), LtlEquivalence::Equivalent);
//! ```

mod ast;
mod nnf;
pub mod random;
mod tableau;
mod trace;

use thiserror::Error;

pub use ast::{is_ap_name, parse_ltl, print_ltl, LtlFormula, RESERVED};
pub use nnf::{is_nnf, to_nnf};
pub use tableau::{is_satisfiable_with, SatResult, TableauLimits};
pub use trace::{enumerate_traces, eval_trace, Evaluator, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtlError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("proposition {0:?} has no value in the trace")]
    MissingAp(String),
    #[error("trace period must be non-empty")]
    EmptyPeriod,
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("decision procedure timed out")]
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LtlEquivalence {
    Equivalent,
    /// A trace over the union of both formulas' propositions on which they
    /// disagree.
    Inequivalent(Trace),
}

pub fn is_satisfiable(f: &LtlFormula) -> Result<SatResult, LtlError> {
    is_satisfiable_with(f, &TableauLimits::default())
}

pub fn ltl_equivalent(a: &LtlFormula, b: &LtlFormula) -> Result<LtlEquivalence, LtlError> {
    ltl_equivalent_with(a, b, &TableauLimits::default())
}

/// Equivalence as unsatisfiability of `!(a <-> b)`.
pub fn ltl_equivalent_with(
    a: &LtlFormula,
    b: &LtlFormula,
    limits: &TableauLimits,
) -> Result<LtlEquivalence, LtlError> {
    if a == b {
        return Ok(LtlEquivalence::Equivalent);
    }
    let diff = LtlFormula::not(LtlFormula::equiv(a.clone(), b.clone()));
    match is_satisfiable_with(&diff, limits)? {
        SatResult::Unsat => Ok(LtlEquivalence::Equivalent),
        SatResult::Sat(t) => Ok(LtlEquivalence::Inequivalent(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> LtlFormula {
        parse_ltl(s).unwrap()
    }

    #[test]
    fn derived_operators() {
        assert_eq!(ltl_equivalent(&f("F a"), &f("true U a")).unwrap(), LtlEquivalence::Equivalent);
        assert_eq!(ltl_equivalent(&f("G a"), &f("!F !a")).unwrap(), LtlEquivalence::Equivalent);
        assert_eq!(
            ltl_equivalent(&f("a U b"), &f("b | (a & X (a U b))")).unwrap(),
            LtlEquivalence::Equivalent
        );
    }

    #[test]
    fn globally_versus_finally() {
        let (g, fa) = (f("G a"), f("F a"));
        let LtlEquivalence::Inequivalent(t) = ltl_equivalent(&g, &fa).unwrap() else {
            panic!("G a and F a differ");
        };
        assert_ne!(eval_trace(&g, &t).unwrap(), eval_trace(&fa, &t).unwrap());
    }

    #[test]
    fn disjoint_propositions_use_the_union() {
        let LtlEquivalence::Inequivalent(t) = ltl_equivalent(&f("a"), &f("b")).unwrap() else { panic!() };
        assert_eq!(t.aps, vec!["a".to_string(), "b".to_string()]);
    }
}
