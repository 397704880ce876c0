//! Parser for boxer functional notation.

use std::collections::HashMap;

use super::{FolDocument, FolError, FolFormula, Term};

fn syntax(pos: usize, msg: impl Into<String>) -> FolError {
    FolError::Syntax { pos, msg: msg.into() }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    bound: Vec<String>,
    preds: HashMap<String, usize>,
    funcs: HashMap<String, usize>,
}

/// Parses a document `fol(<id>,<body>).`; the trailing period is optional.
pub fn parse_fol(text: &str) -> Result<FolDocument, FolError> {
    let mut p = Parser::new(text);
    let at = p.skip();
    if p.ident()? != "fol" {
        return Err(syntax(at, "expected fol(<id>,<formula>)"));
    }
    p.expect('(')?;
    let at = p.skip();
    let id: u64 = p.ident()?.parse().map_err(|_| syntax(at, "document id must be a number"))?;
    p.expect(',')?;
    let body = p.formula()?;
    p.expect(')')?;
    p.skip();
    if p.peek() == Some('.') {
        p.pos += 1;
    }
    p.end()?;
    Ok(FolDocument { id, body })
}

/// Parses a bare formula such as `some(A,p(A))`.
pub fn parse_fol_formula(text: &str) -> Result<FolFormula, FolError> {
    let mut p = Parser::new(text);
    let f = p.formula()?;
    p.end()?;
    Ok(f)
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            bound: Vec::new(),
            preds: HashMap::new(),
            funcs: HashMap::new(),
        }
    }

    fn skip(&mut self) -> usize {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        self.pos
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn end(&mut self) -> Result<(), FolError> {
        let at = self.skip();
        if at < self.chars.len() {
            return Err(syntax(at, "trailing input"));
        }
        Ok(())
    }

    fn expect(&mut self, c: char) -> Result<(), FolError> {
        let at = self.skip();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(at, format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<String, FolError> {
        let start = self.skip();
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an identifier"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    // `(a, b, ...)` after a functor name; empty when no parenthesis follows
    fn has_args(&mut self) -> bool {
        self.skip();
        self.peek() == Some('(')
    }

    fn formula(&mut self) -> Result<FolFormula, FolError> {
        let at = self.skip();
        let name = self.ident()?;
        let logical = |n: usize, got: usize| -> Result<(), FolError> {
            if n == got {
                Ok(())
            } else {
                Err(syntax(at, format!("{name} takes {n} arguments, found {got}")))
            }
        };
        match name.as_str() {
            "some" | "all" => {
                self.expect('(')?;
                let vat = self.skip();
                let var = self.ident()?;
                if !var.starts_with(|c: char| c.is_ascii_uppercase()) {
                    return Err(syntax(vat, "quantified variables are uppercase identifiers"));
                }
                self.expect(',')?;
                self.bound.push(var.clone());
                let body = self.formula();
                self.bound.pop();
                let body = Box::new(body?);
                self.expect(')')?;
                Ok(if name == "some" { FolFormula::Exists(var, body) } else { FolFormula::Forall(var, body) })
            }
            "and" | "or" | "imp" | "not" => {
                let parts = self.formula_args()?;
                let want = if name == "not" { 1 } else { 2 };
                logical(want, parts.len())?;
                let mut it = parts.into_iter().map(Box::new);
                let x = it.next().unwrap();
                Ok(match name.as_str() {
                    "not" => FolFormula::Not(x),
                    "and" => FolFormula::And(x, it.next().unwrap()),
                    "or" => FolFormula::Or(x, it.next().unwrap()),
                    _ => FolFormula::Imp(x, it.next().unwrap()),
                })
            }
            "eq" => {
                let args = self.term_args()?;
                logical(2, args.len())?;
                let mut it = args.into_iter();
                Ok(FolFormula::Eq(it.next().unwrap(), it.next().unwrap()))
            }
            "true" | "false" if !self.has_args() => {
                Ok(if name == "true" { FolFormula::Top } else { FolFormula::Bottom })
            }
            _ => {
                let args = if self.has_args() { self.term_args()? } else { Vec::new() };
                check_arity(&mut self.preds, &name, args.len())?;
                Ok(FolFormula::Pred(name, args))
            }
        }
    }

    fn formula_args(&mut self) -> Result<Vec<FolFormula>, FolError> {
        self.expect('(')?;
        let mut out = vec![self.formula()?];
        loop {
            let at = self.skip();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.formula()?);
                }
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(syntax(at, "expected ',' or ')'")),
            }
        }
    }

    fn term_args(&mut self) -> Result<Vec<Term>, FolError> {
        self.expect('(')?;
        let mut out = vec![self.term()?];
        loop {
            let at = self.skip();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.term()?);
                }
                Some(')') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(syntax(at, "expected ',' or ')'")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, FolError> {
        let name = self.ident()?;
        if self.has_args() {
            let args = self.term_args()?;
            check_arity(&mut self.funcs, &name, args.len())?;
            return Ok(Term::Func(name, args));
        }
        if self.bound.contains(&name) {
            Ok(Term::Var(name))
        } else {
            Ok(Term::Const(name))
        }
    }
}

fn check_arity(seen: &mut HashMap<String, usize>, name: &str, n: usize) -> Result<(), FolError> {
    match seen.get(name) {
        Some(&first) if first != n => {
            Err(FolError::ArityConflict { name: name.to_string(), first, second: n })
        }
        Some(_) => Ok(()),
        None => {
            seen.insert(name.to_string(), n);
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors() {
        assert!(matches!(parse_fol("fol(1,and(p(A))))."), Err(FolError::Syntax { .. })));
        assert!(matches!(parse_fol("fol(1,some(a,p(a)))."), Err(FolError::Syntax { .. })));
        assert!(matches!(parse_fol("fol(1,p(A)"), Err(FolError::Syntax { .. })));
        assert!(matches!(parse_fol("fol(x,p(A))."), Err(FolError::Syntax { .. })));
        assert!(matches!(parse_fol("fol(1,p(A))) ."), Err(FolError::Syntax { .. })));
        assert_eq!(
            parse_fol("fol(1,and(p(A),p(A,B)))."),
            Err(FolError::ArityConflict { name: "p".into(), first: 1, second: 2 })
        );
    }

    #[test]
    fn terms_and_equality() {
        let f = parse_fol_formula("all(X,imp(p(X),eq(f(X),c)))").unwrap();
        assert_eq!(
            f,
            FolFormula::Forall(
                "X".into(),
                Box::new(FolFormula::Imp(
                    Box::new(FolFormula::Pred("p".into(), vec![Term::Var("X".into())])),
                    Box::new(FolFormula::Eq(
                        Term::Func("f".into(), vec![Term::Var("X".into())]),
                        Term::Const("c".into())
                    ))
                ))
            )
        );
    }

    #[test]
    fn scopes_end_with_their_quantifier() {
        let f = parse_fol_formula("and(some(A,p(A)),q(A))").unwrap();
        let FolFormula::And(_, right) = f else { panic!() };
        assert_eq!(*right, FolFormula::Pred("q".into(), vec![Term::Const("A".into())]));
    }
}
