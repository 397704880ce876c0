//! Text normalisation for syntactic accuracy.

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::parse::{parse_fol, parse_fol_formula};
use super::{print_fol, print_fol_formula, FolFormula, Term};

/// How predictions are compared with targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FolMode {
    /// Whitespace-insensitive string equality.
    #[default]
    Exact,
    /// Additionally identifies formulas that differ only in the names of
    /// bound variables.
    Alpha,
}

impl FromStr for FolMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(FolMode::Exact),
            "alpha" => Ok(FolMode::Alpha),
            other => Err(format!("unknown FOL mode {other:?} (expected exact or alpha)")),
        }
    }
}

/// Normal form of a document or bare formula. `Exact` removes whitespace.
/// `Alpha` renames bound variables to `A`, `B`, ... in the order their
/// quantifiers occur; text that does not parse falls back to `Exact`.
pub fn normalize_fol(text: &str, mode: FolMode) -> String {
    let exact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if mode == FolMode::Exact {
        return exact;
    }
    if let Ok(mut doc) = parse_fol(text) {
        doc.body = alpha_rename(&doc.body);
        return print_fol(&doc);
    }
    if let Ok(f) = parse_fol_formula(text) {
        return print_fol_formula(&alpha_rename(&f));
    }
    exact
}

pub fn fol_syntactic_equal(a: &str, b: &str, mode: FolMode) -> bool {
    normalize_fol(a, mode) == normalize_fol(b, mode)
}

fn alpha_rename(f: &FolFormula) -> FolFormula {
    let mut constants = HashSet::new();
    collect_constants(f, &mut constants);
    let mut r = Renamer { constants, next: 0, scope: Vec::new() };
    r.formula(f)
}

fn collect_constants(f: &FolFormula, out: &mut HashSet<String>) {
    fn term(t: &Term, out: &mut HashSet<String>) {
        match t {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::Func(_, args) => args.iter().for_each(|a| term(a, out)),
        }
    }
    match f {
        FolFormula::Top | FolFormula::Bottom => {}
        FolFormula::Not(x) | FolFormula::Exists(_, x) | FolFormula::Forall(_, x) => collect_constants(x, out),
        FolFormula::And(x, y) | FolFormula::Or(x, y) | FolFormula::Imp(x, y) => {
            collect_constants(x, out);
            collect_constants(y, out);
        }
        FolFormula::Eq(a, b) => {
            term(a, out);
            term(b, out);
        }
        FolFormula::Pred(_, args) => args.iter().for_each(|a| term(a, out)),
    }
}

struct Renamer {
    constants: HashSet<String>,
    next: usize,
    scope: Vec<(String, String)>,
}

impl Renamer {
    fn fresh(&mut self) -> String {
        loop {
            let letter = (b'A' + (self.next % 26) as u8) as char;
            let round = self.next / 26;
            self.next += 1;
            let name = if round == 0 { letter.to_string() } else { format!("{letter}{round}") };
            if !self.constants.contains(&name) {
                return name;
            }
        }
    }

    fn term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => {
                let new = self.scope.iter().rev().find(|(old, _)| old == v);
                Term::Var(new.map_or_else(|| v.clone(), |(_, n)| n.clone()))
            }
            Term::Const(c) => Term::Const(c.clone()),
            Term::Func(f, args) => Term::Func(f.clone(), args.iter().map(|a| self.term(a)).collect()),
        }
    }

    fn formula(&mut self, f: &FolFormula) -> FolFormula {
        let sub = |r: &mut Self, x: &FolFormula| Box::new(r.formula(x));
        match f {
            FolFormula::Top => FolFormula::Top,
            FolFormula::Bottom => FolFormula::Bottom,
            FolFormula::Not(x) => FolFormula::Not(sub(self, x)),
            FolFormula::And(x, y) => FolFormula::And(sub(self, x), sub(self, y)),
            FolFormula::Or(x, y) => FolFormula::Or(sub(self, x), sub(self, y)),
            FolFormula::Imp(x, y) => FolFormula::Imp(sub(self, x), sub(self, y)),
            FolFormula::Eq(a, b) => FolFormula::Eq(self.term(a), self.term(b)),
            FolFormula::Pred(p, args) => {
                FolFormula::Pred(p.clone(), args.iter().map(|a| self.term(a)).collect())
            }
            FolFormula::Exists(v, body) | FolFormula::Forall(v, body) => {
                let name = self.fresh();
                self.scope.push((v.clone(), name.clone()));
                let body = sub(self, body);
                self.scope.pop();
                if matches!(f, FolFormula::Exists(..)) {
                    FolFormula::Exists(name, body)
                } else {
                    FolFormula::Forall(name, body)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(normalize_fol("some(Z,p(Z))", FolMode::Alpha), "some(A,p(A))");
        assert_eq!(normalize_fol("some(A, p(A))", FolMode::Exact), "some(A,p(A))");
        assert_eq!(
            normalize_fol("some(B,some(A,and(p(B),q(A))))", FolMode::Alpha),
            "some(A,some(B,and(p(A),q(B))))"
        );
    }

    #[test]
    fn alpha_variants() {
        let a = "fol(1,some(X,n1dog(X))).";
        let b = "fol(1,some(Y,n1dog(Y))).";
        assert!(fol_syntactic_equal(a, b, FolMode::Alpha));
        assert!(!fol_syntactic_equal(a, b, FolMode::Exact));
        assert!(fol_syntactic_equal(a, a, FolMode::Exact));
    }

    #[test]
    fn shadowing_and_free_constants() {
        // the inner A shadows the outer one; the free constant A blocks that name
        assert_eq!(
            normalize_fol("and(p(A),some(X,some(X,q(X))))", FolMode::Alpha),
            "and(p(A),some(B,some(C,q(C))))"
        );
    }

    #[test]
    fn unparsable_text_falls_back_to_exact() {
        assert_eq!(normalize_fol("some(A, p(A)", FolMode::Alpha), "some(A,p(A)");
    }

    #[test]
    fn implication_is_not_rewritten() {
        assert!(!fol_syntactic_equal("imp(p,q)", "or(not(p),q)", FolMode::Alpha));
    }
}
