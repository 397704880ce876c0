//! First-order logic in boxer's functional notation, `fol(1,some(A,...)).`,
//! with normalisation for syntactic scoring.
//!
//! ```
//! use nl2formal::fol::{fol_syntactic_equal, FolMode};
//!
//! let a = "fol(1,some(A,and(n1port(A),a1available(A)))).";
//! let b = "fol(1, some(B, and(n1port(B), a1available(B)))).";
//! assert!(!fol_syntactic_equal(a, b, FolMode::Exact));
//! assert!(fol_syntactic_equal(a, b, FolMode::Alpha));
//! ```

mod normalize;
mod parse;

use std::fmt;

use thiserror::Error;

pub use normalize::{fol_syntactic_equal, normalize_fol, FolMode};
pub use parse::{parse_fol, parse_fol_formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FolError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{name} is used with {first} and with {second} arguments")]
    ArityConflict { name: String, first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    Func(String, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FolFormula {
    Top,
    Bottom,
    Not(Box<FolFormula>),
    And(Box<FolFormula>, Box<FolFormula>),
    Or(Box<FolFormula>, Box<FolFormula>),
    Imp(Box<FolFormula>, Box<FolFormula>),
    Eq(Term, Term),
    Exists(String, Box<FolFormula>),
    Forall(String, Box<FolFormula>),
    Pred(String, Vec<Term>),
}

/// A numbered boxer output, `fol(<id>,<body>).`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FolDocument {
    pub id: u64,
    pub body: FolFormula,
}

impl FolFormula {
    /// Number of quantifiers anywhere in the formula.
    pub fn quantifier_count(&self) -> usize {
        match self {
            FolFormula::Exists(_, b) | FolFormula::Forall(_, b) => 1 + b.quantifier_count(),
            FolFormula::Not(x) => x.quantifier_count(),
            FolFormula::And(x, y) | FolFormula::Or(x, y) | FolFormula::Imp(x, y) => {
                x.quantifier_count() + y.quantifier_count()
            }
            _ => 0,
        }
    }

    /// Operands of a right- or left-nested chain of `and`.
    pub fn conjuncts(&self) -> Vec<&FolFormula> {
        match self {
            FolFormula::And(x, y) => {
                let mut v = x.conjuncts();
                v.extend(y.conjuncts());
                v
            }
            other => vec![other],
        }
    }

    /// Body below the leading quantifier prefix.
    pub fn matrix(&self) -> &FolFormula {
        match self {
            FolFormula::Exists(_, b) | FolFormula::Forall(_, b) => b.matrix(),
            other => other,
        }
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) | Term::Const(v) => out.push_str(v),
        Term::Func(f, args) => {
            out.push_str(f);
            write_args(args, out);
        }
    }
}

fn write_args(args: &[Term], out: &mut String) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_term(a, out);
    }
    out.push(')');
}

fn write_formula(f: &FolFormula, out: &mut String) {
    let call = |name: &str, parts: &[&FolFormula], out: &mut String| {
        out.push_str(name);
        out.push('(');
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_formula(p, out);
        }
        out.push(')');
    };
    match f {
        FolFormula::Top => out.push_str("true"),
        FolFormula::Bottom => out.push_str("false"),
        FolFormula::Not(x) => call("not", &[x], out),
        FolFormula::And(x, y) => call("and", &[x, y], out),
        FolFormula::Or(x, y) => call("or", &[x, y], out),
        FolFormula::Imp(x, y) => call("imp", &[x, y], out),
        FolFormula::Eq(a, b) => {
            out.push_str("eq");
            write_args(&[a.clone(), b.clone()], out);
        }
        FolFormula::Exists(v, b) | FolFormula::Forall(v, b) => {
            out.push_str(if matches!(f, FolFormula::Exists(..)) { "some(" } else { "all(" });
            out.push_str(v);
            out.push(',');
            write_formula(b, out);
            out.push(')');
        }
        FolFormula::Pred(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                write_args(args, out);
            }
        }
    }
}

/// Canonical boxer text of a formula, without whitespace.
pub fn print_fol_formula(f: &FolFormula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

/// Canonical boxer text of a document, `fol(<id>,<body>).`
pub fn print_fol(doc: &FolDocument) -> String {
    format!("fol({},{}).", doc.id, print_fol_formula(&doc.body))
}

impl fmt::Display for FolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fol_formula(self))
    }
}

impl fmt::Display for FolDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fol(self))
    }
}
