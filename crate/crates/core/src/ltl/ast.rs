//! LTL formulas, their canonical printer and parser.

use std::collections::BTreeSet;
use std::fmt;

use super::LtlError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LtlFormula {
    Ap(String),
    True,
    False,
    Not(Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    Implies(Box<LtlFormula>, Box<LtlFormula>),
    Equiv(Box<LtlFormula>, Box<LtlFormula>),
    Next(Box<LtlFormula>),
    Until(Box<LtlFormula>, Box<LtlFormula>),
    Release(Box<LtlFormula>, Box<LtlFormula>),
    Finally(Box<LtlFormula>),
    Globally(Box<LtlFormula>),
}

/// Words that cannot name an atomic proposition.
pub const RESERVED: [&str; 7] = ["G", "F", "X", "U", "R", "true", "false"];

/// Whether `name` is usable as an atomic proposition.
pub fn is_ap_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
        && !RESERVED.contains(&name)
}

macro_rules! ctor1 {
    ($name:ident, $variant:ident) => {
        pub fn $name(x: LtlFormula) -> LtlFormula {
            LtlFormula::$variant(Box::new(x))
        }
    };
}

macro_rules! ctor2 {
    ($name:ident, $variant:ident) => {
        pub fn $name(x: LtlFormula, y: LtlFormula) -> LtlFormula {
            LtlFormula::$variant(Box::new(x), Box::new(y))
        }
    };
}

impl LtlFormula {
    pub fn ap(name: impl Into<String>) -> Self {
        LtlFormula::Ap(name.into())
    }

    ctor1!(not, Not);
    ctor1!(next, Next);
    ctor1!(finally, Finally);
    ctor1!(globally, Globally);
    ctor2!(and, And);
    ctor2!(or, Or);
    ctor2!(implies, Implies);
    ctor2!(equiv, Equiv);
    ctor2!(until, Until);
    ctor2!(release, Release);

    pub fn children(&self) -> Vec<&LtlFormula> {
        use LtlFormula::*;
        match self {
            Ap(_) | True | False => vec![],
            Not(x) | Next(x) | Finally(x) | Globally(x) => vec![x],
            And(x, y) | Or(x, y) | Implies(x, y) | Equiv(x, y) | Until(x, y) | Release(x, y) => {
                vec![x, y]
            }
        }
    }

    /// Atomic propositions, sorted.
    pub fn aps(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_aps(&mut out);
        out
    }

    fn collect_aps(&self, out: &mut BTreeSet<String>) {
        if let LtlFormula::Ap(a) = self {
            out.insert(a.clone());
        }
        for c in self.children() {
            c.collect_aps(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    /// Renames atomic propositions; names missing from `f`'s result stay.
    pub fn map_aps(&self, f: &mut dyn FnMut(&str) -> String) -> LtlFormula {
        use LtlFormula::*;
        let one = |x: &LtlFormula, f: &mut dyn FnMut(&str) -> String| Box::new(x.map_aps(f));
        match self {
            Ap(a) => Ap(f(a)),
            True => True,
            False => False,
            Not(x) => Not(one(x, f)),
            Next(x) => Next(one(x, f)),
            Finally(x) => Finally(one(x, f)),
            Globally(x) => Globally(one(x, f)),
            And(x, y) => And(one(x, f), one(y, f)),
            Or(x, y) => Or(one(x, f), one(y, f)),
            Implies(x, y) => Implies(one(x, f), one(y, f)),
            Equiv(x, y) => Equiv(one(x, f), one(y, f)),
            Until(x, y) => Until(one(x, f), one(y, f)),
            Release(x, y) => Release(one(x, f), one(y, f)),
        }
    }
}

/// Canonical fully parenthesised text: `(G (a))`, `((a) & (b))`.
pub fn print_ltl(f: &LtlFormula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: &LtlFormula, out: &mut String) {
    use LtlFormula::*;
    let unary = |op: &str, x: &LtlFormula, out: &mut String| {
        out.push('(');
        out.push_str(op);
        out.push_str(" (");
        write(x, out);
        out.push_str("))");
    };
    let binary = |op: &str, x: &LtlFormula, y: &LtlFormula, out: &mut String| {
        out.push_str("((");
        write(x, out);
        out.push_str(") ");
        out.push_str(op);
        out.push_str(" (");
        write(y, out);
        out.push_str("))");
    };
    match f {
        Ap(a) => out.push_str(a),
        True => out.push_str("true"),
        False => out.push_str("false"),
        Not(x) => unary("!", x, out),
        Next(x) => unary("X", x, out),
        Finally(x) => unary("F", x, out),
        Globally(x) => unary("G", x, out),
        And(x, y) => binary("&", x, y, out),
        Or(x, y) => binary("|", x, y, out),
        Implies(x, y) => binary("->", x, y, out),
        Equiv(x, y) => binary("<->", x, y, out),
        Until(x, y) => binary("U", x, y, out),
        Release(x, y) => binary("R", x, y, out),
    }
}

impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ltl(self))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    LParen,
    RParen,
    Not,
    Next,
    Finally,
    Globally,
    Until,
    Release,
    And,
    Or,
    Implies,
    Equiv,
}

fn syntax(pos: usize, msg: impl Into<String>) -> LtlError {
    LtlError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LtlError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "G" => Tok::Globally,
                "F" => Tok::Finally,
                "X" => Tok::Next,
                "U" => Tok::Until,
                "R" => Tok::Release,
                "true" => Tok::True,
                "false" => Tok::False,
                _ if word.contains('_') => {
                    return Err(syntax(start, format!("invalid proposition name {word:?}")))
                }
                _ => Tok::Ident(word),
            };
            out.push((start, tok));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Equiv, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '!' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Implies,
                '↔' => Tok::Equiv,
                '□' => Tok::Globally,
                '◊' | '◇' => Tok::Finally,
                '○' => Tok::Next,
                '⊤' => Tok::True,
                '⊥' => Tok::False,
                _ => return Err(syntax(i, format!("unexpected character {c:?}"))),
            };
            (tok, 1)
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// Parses LTL text. Precedence, tightest first: prefix `! X F G`, then `U`
/// and `R` (right associative), `&`, `|`, `->` (right associative), `<->`.
pub fn parse_ltl(text: &str) -> Result<LtlFormula, LtlError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.chars().count() };
    let f = p.equiv()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.at(), "unexpected token"));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn equiv(&mut self) -> Result<LtlFormula, LtlError> {
        let mut f = self.implies()?;
        while self.eat(&Tok::Equiv) {
            f = LtlFormula::equiv(f, self.implies()?);
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<LtlFormula, LtlError> {
        let f = self.or()?;
        if self.eat(&Tok::Implies) {
            return Ok(LtlFormula::implies(f, self.implies()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<LtlFormula, LtlError> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            f = LtlFormula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<LtlFormula, LtlError> {
        let mut f = self.binary()?;
        while self.eat(&Tok::And) {
            f = LtlFormula::and(f, self.binary()?);
        }
        Ok(f)
    }

    fn binary(&mut self) -> Result<LtlFormula, LtlError> {
        let f = self.unary()?;
        if self.eat(&Tok::Until) {
            return Ok(LtlFormula::until(f, self.binary()?));
        }
        if self.eat(&Tok::Release) {
            return Ok(LtlFormula::release(f, self.binary()?));
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<LtlFormula, LtlError> {
        let at = self.at();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Not => LtlFormula::not(self.unary()?),
            Tok::Next => LtlFormula::next(self.unary()?),
            Tok::Finally => LtlFormula::finally(self.unary()?),
            Tok::Globally => LtlFormula::globally(self.unary()?),
            Tok::True => LtlFormula::True,
            Tok::False => LtlFormula::False,
            Tok::Ident(name) => LtlFormula::Ap(name),
            Tok::LParen => {
                let f = self.equiv()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.at(), "expected ')'"));
                }
                f
            }
            _ => return Err(syntax(at, "expected a formula")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LtlFormula as L;

    fn ap(s: &str) -> L {
        L::ap(s)
    }

    #[test]
    fn parses_request_grant() {
        assert_eq!(parse_ltl("G (r -> F g)").unwrap(), L::globally(L::implies(ap("r"), L::finally(ap("g")))));
        assert_eq!(parse_ltl("a").unwrap(), ap("a"));
        assert_eq!(
            parse_ltl("G (! x -> F o9)").unwrap(),
            L::globally(L::implies(L::not(ap("x")), L::finally(ap("o9"))))
        );
    }

    #[test]
    fn prints_canonically() {
        assert_eq!(print_ltl(&L::globally(ap("a"))), "(G (a))");
        assert_eq!(print_ltl(&ap("a")), "a");
        assert_eq!(print_ltl(&L::and(ap("a"), ap("b"))), "((a) & (b))");
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse_ltl("a U b U c").unwrap(), L::until(ap("a"), L::until(ap("b"), ap("c"))));
        assert_eq!(parse_ltl("a -> b -> c").unwrap(), L::implies(ap("a"), L::implies(ap("b"), ap("c"))));
        assert_eq!(
            parse_ltl("a & b | c & d").unwrap(),
            L::or(L::and(ap("a"), ap("b")), L::and(ap("c"), ap("d")))
        );
        assert_eq!(
            parse_ltl("!a U X b & c").unwrap(),
            L::and(L::until(L::not(ap("a")), L::next(ap("b"))), ap("c"))
        );
        assert_eq!(
            parse_ltl("a <-> b -> c | d").unwrap(),
            L::equiv(ap("a"), L::implies(ap("b"), L::or(ap("c"), ap("d"))))
        );
        assert_eq!(parse_ltl("G F a").unwrap(), L::globally(L::finally(ap("a"))));
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse_ltl("□(¬a → ◊b)").unwrap(), parse_ltl("G (!a -> F b)").unwrap());
        assert_eq!(parse_ltl("a ∧ b ∨ ⊤").unwrap(), parse_ltl("a & b | true").unwrap());
    }

    #[test]
    fn syntax_errors() {
        for (s, pos) in [("(a", 2), ("a &", 3), ("a b", 2), ("G", 1), ("a $ b", 2), (")", 0)] {
            match parse_ltl(s) {
                Err(LtlError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }

    #[test]
    fn ap_names() {
        assert!(is_ap_name("o9"));
        assert!(!is_ap_name("9o"));
        assert!(!is_ap_name("G"));
        assert!(!is_ap_name(""));
    }
}
