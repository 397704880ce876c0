//! The regex dialect: parsing, printing, matching and equivalence.
//!
//! ```
//! use nl2formal::regex::{parse_regex, regex_equivalent};
//!
//! let a = parse_regex("(dog)|(truck)").unwrap();
//! let b = parse_regex("(truck)|(dog)").unwrap();
//! assert!(regex_equivalent(&a, &b).unwrap());
//! ```

mod alphabet;
mod ast;
mod compile;
mod dfa;
mod matcher;
mod parse;
pub mod random;

use thiserror::Error;

pub use alphabet::{is_word_char, SymbolicAlphabet};
pub use ast::{print_regex, CharClass, RegexAst};
pub use dfa::{determinize, Dfa, Limits, Nfa};
pub use matcher::regex_matches;
pub(crate) use parse::literal_tokens;
pub use parse::parse_regex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegexError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid regex tree: {0}")]
    Invalid(String),
    #[error("automaton exceeded {limit} states")]
    Capacity { limit: usize },
    #[error("equivalence check timed out")]
    Timeout,
}

/// A compiled regex together with the alphabet its DFA is written over.
#[derive(Debug, Clone)]
pub struct RegexDfa {
    pub alphabet: SymbolicAlphabet,
    pub dfa: Dfa,
}

impl RegexDfa {
    pub fn accepts(&self, s: &str) -> bool {
        match self.alphabet.classes_of_str(s) {
            Some(word) => self.dfa.accepts(&word),
            None => false,
        }
    }

    pub fn num_states(&self) -> usize {
        self.dfa.num_states()
    }
}

/// Minimal DFA for `ast` over the given alphabet, which must refine every
/// class and literal character of `ast`.
pub fn compile_dfa(ast: &RegexAst, alphabet: &SymbolicAlphabet, limits: &Limits) -> Result<Dfa, RegexError> {
    ast.validate().map_err(RegexError::Invalid)?;
    compile::compile_with(ast, alphabet, limits)
}

/// Compiles `ast` over its own minterm alphabet.
pub fn compile(ast: &RegexAst, limits: &Limits) -> Result<RegexDfa, RegexError> {
    let alphabet = SymbolicAlphabet::for_asts(&[ast]);
    let dfa = compile_dfa(ast, &alphabet, limits)?;
    Ok(RegexDfa { alphabet, dfa })
}

/// Language equality with the default state cap and no deadline.
pub fn regex_equivalent(a: &RegexAst, b: &RegexAst) -> Result<bool, RegexError> {
    Ok(regex_counterexample(a, b, &Limits::default())?.is_none())
}

/// `None` if `a` and `b` denote the same language, otherwise a shortest
/// string (over minterm representatives) matched by exactly one of them.
pub fn regex_counterexample(
    a: &RegexAst,
    b: &RegexAst,
    limits: &Limits,
) -> Result<Option<String>, RegexError> {
    if a == b {
        a.validate().map_err(RegexError::Invalid)?;
        return Ok(None);
    }
    let alphabet = SymbolicAlphabet::for_asts(&[a, b]);
    let da = compile_dfa(a, &alphabet, limits)?;
    let db = compile_dfa(b, &alphabet, limits)?;
    if da == db {
        return Ok(None);
    }
    let word = da.distinguishing_word(&db).expect("distinct minimal DFAs differ on some word");
    Ok(Some(word.iter().map(|&i| alphabet.representative(i)).collect()))
}
