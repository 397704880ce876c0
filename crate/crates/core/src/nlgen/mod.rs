//! Controlled English for LTL and the LTL dataset generators.
//!
//! Sentences follow a grammar that mirrors the formula grammar: atomic
//! propositions read `a holds` / `a does not hold`, unary operators are
//! prefixed (`Globally`, `Eventually`, `in the next step`) and binary ones are
//! infix (`and`, `or`, `until`, `if and only if`, `if ... then ...`,
//! `... holds until ... or forever`). The phrase `it is the case that` plays
//! the role of an opening parenthesis, which makes every generated sentence
//! parse back to exactly one formula.
//!
//! ```
//! use nl2formal::ltl::parse_ltl;
//! use nl2formal::nlgen::{ltl_to_nl, nl_to_ltl, GrammarVariant};
//!
//! let f = parse_ltl("G (a & b)").unwrap();
//! let s = ltl_to_nl(&f, GrammarVariant::Base, 0).unwrap();
//! assert_eq!(s, "Globally it is the case that a holds and b holds");
//! assert_eq!(nl_to_ltl(&s, GrammarVariant::Base).unwrap(), f);
//! ```

mod parse;
mod patterns;
mod random;
mod rename;
mod render;
mod synthesis;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ltl::LtlError;

pub use parse::nl_to_ltl;
pub use patterns::{
    gen_pattern_dataset, gen_pattern_record, pattern_catalog, Pattern, PatternCatalog, PatternOptions,
};
pub use random::random_admissible;
pub use rename::rename_aps;
pub use render::{check_admissible, ltl_to_nl, rephrase};
pub use synthesis::{combine_synthesis_spec, conjunction, synthesis_record, SynthesisSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlError {
    #[error("word {word}: {msg}")]
    Syntax { word: usize, msg: String },
    #[error("sentence has {parses} readings")]
    Ambiguity { parses: usize },
    #[error("formula outside the grammar: {0}")]
    UnsupportedShape(String),
    #[error("renaming collision: {0}")]
    Collision(String),
    #[error("pattern catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("only {got} distinct records after exhausting attempts, wanted {wanted}")]
    Exhausted { wanted: usize, got: usize },
    #[error(transparent)]
    Ltl(#[from] LtlError),
}

/// Which phrase tables the grammar uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrammarVariant {
    /// One phrase per operator.
    #[default]
    Base,
    /// Adds `Always`, `Finally`, `Infinitely often` and `Eventually forever`.
    Enriched,
}

impl GrammarVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            GrammarVariant::Base => "base",
            GrammarVariant::Enriched => "enriched",
        }
    }

    pub(crate) fn globally(self) -> &'static [&'static [&'static str]] {
        match self {
            GrammarVariant::Base => &[&["globally"]],
            GrammarVariant::Enriched => &[&["globally"], &["always"]],
        }
    }

    pub(crate) fn eventually(self) -> &'static [&'static [&'static str]] {
        match self {
            GrammarVariant::Base => &[&["eventually"]],
            GrammarVariant::Enriched => &[&["eventually"], &["finally"]],
        }
    }

    pub(crate) fn next(self) -> &'static [&'static [&'static str]] {
        &[&["in", "the", "next", "step"]]
    }

    pub(crate) fn infinitely_often(self) -> &'static [&'static [&'static str]] {
        match self {
            GrammarVariant::Base => &[],
            GrammarVariant::Enriched => &[&["infinitely", "often"]],
        }
    }

    pub(crate) fn has_eventually_forever(self) -> bool {
        self == GrammarVariant::Enriched
    }

    /// Every word the variant's sentences can contain besides propositions.
    pub(crate) fn vocabulary(self) -> Vec<&'static str> {
        let mut words: Vec<&'static str> = BASE_WORDS.to_vec();
        if self == GrammarVariant::Enriched {
            words.extend(["always", "finally", "infinitely", "often"]);
        }
        words
    }
}

impl fmt::Display for GrammarVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GrammarVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "base" => Ok(GrammarVariant::Base),
            "enriched" => Ok(GrammarVariant::Enriched),
            other => Err(format!("unknown grammar {other:?} (expected base or enriched)")),
        }
    }
}

pub(crate) const ITC: [&str; 5] = ["it", "is", "the", "case", "that"];

const BASE_WORDS: [&str; 21] = [
    "holds",
    "does",
    "not",
    "hold",
    "globally",
    "eventually",
    "in",
    "the",
    "next",
    "step",
    "it",
    "is",
    "case",
    "that",
    "if",
    "then",
    "and",
    "or",
    "until",
    "only",
    "forever",
];

/// Words that can never name a proposition in a sentence, whatever the
/// variant. Matching ignores case.
pub fn is_nl_reserved(word: &str) -> bool {
    let w = word.to_ascii_lowercase();
    BASE_WORDS.contains(&w.as_str()) || ["always", "finally", "infinitely", "often"].contains(&w.as_str())
}

/// Proposition names the grammar can mention.
pub fn is_nl_ap(word: &str) -> bool {
    crate::ltl::is_ap_name(word) && !is_nl_reserved(word)
}
