//! Syntax tree of the regex dialect and its canonical printer.

use std::fmt;

/// A bracketed character class such as `[AEIOUaeiou]` or `[A-Za-z]`.
///
/// Items are kept in source order so that `[AEIOU]` and `[AEIOUaeiou]` stay
/// distinct nodes; membership is what the automata care about.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharClass {
    items: Vec<(char, char)>,
}

impl CharClass {
    /// Builds a class from inclusive ranges, in the order they should be printed.
    ///
    /// Returns `None` for an empty list or an inverted range.
    pub fn new(items: Vec<(char, char)>) -> Option<Self> {
        if items.is_empty() || items.iter().any(|(lo, hi)| lo > hi) {
            return None;
        }
        Some(Self { items })
    }

    pub fn digits() -> Self {
        Self { items: vec![('0', '9')] }
    }

    pub fn upper() -> Self {
        Self { items: vec![('A', 'Z')] }
    }

    pub fn lower() -> Self {
        Self { items: vec![('a', 'z')] }
    }

    pub fn letters() -> Self {
        Self { items: vec![('A', 'Z'), ('a', 'z')] }
    }

    /// `[AEIOUaeiou]`, the vowel class used by the regex datasets.
    pub fn vowels() -> Self {
        Self { items: "AEIOUaeiou".chars().map(|c| (c, c)).collect() }
    }

    /// `[AEIOU]`, the vowel class as listed in the dialect's terminal table.
    pub fn upper_vowels() -> Self {
        Self { items: "AEIOU".chars().map(|c| (c, c)).collect() }
    }

    pub fn items(&self) -> &[(char, char)] {
        &self.items
    }

    pub fn contains(&self, c: char) -> bool {
        self.items.iter().any(|&(lo, hi)| lo <= c && c <= hi)
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn put(f: &mut fmt::Formatter<'_>, c: char) -> fmt::Result {
            if matches!(c, ']' | '\\' | '-' | '^' | '[') {
                write!(f, "\\{c}")
            } else {
                write!(f, "{c}")
            }
        }
        f.write_str("[")?;
        for &(lo, hi) in &self.items {
            put(f, lo)?;
            if lo != hi {
                f.write_str("-")?;
                put(f, hi)?;
            }
        }
        f.write_str("]")
    }
}

/// Syntax tree of the dialect.
///
/// `Or` and `And` carry two or three children, `Concat` at least two. The
/// sugar nodes (`Contains`, `StartsWith`, `EndsWith`, `FollowedBy`,
/// `WordBounded`) are kept as written rather than desugared so that printing
/// reproduces the dataset shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    Literal(String),
    Class(CharClass),
    AnyChar,
    Concat(Vec<RegexAst>),
    Or(Vec<RegexAst>),
    And(Vec<RegexAst>),
    Not(Box<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    /// `x{n,}`
    RepeatAtLeast(Box<RegexAst>, u32),
    /// `x{1,n}`, with `n >= 1`
    RepeatAtMost(Box<RegexAst>, u32),
    /// `\b x \b`
    WordBounded(Box<RegexAst>),
    /// `.*x.*`
    Contains(Box<RegexAst>),
    /// `x.*`
    StartsWith(Box<RegexAst>),
    /// `.*x`
    EndsWith(Box<RegexAst>),
    /// `.*x.*y`
    FollowedBy(Box<RegexAst>, Box<RegexAst>),
}

/// Characters that can never appear inside a literal.
pub(crate) fn is_meta(c: char) -> bool {
    matches!(c, '(' | ')' | '|' | '&' | '~' | '*' | '+' | '{' | '}' | '.' | '[' | ']' | '\\')
        || c.is_whitespace()
}

impl RegexAst {
    pub fn literal(s: impl Into<String>) -> Self {
        RegexAst::Literal(s.into())
    }

    pub fn star(x: RegexAst) -> Self {
        RegexAst::Star(Box::new(x))
    }

    pub fn plus(x: RegexAst) -> Self {
        RegexAst::Plus(Box::new(x))
    }

    pub fn not(x: RegexAst) -> Self {
        RegexAst::Not(Box::new(x))
    }

    /// Checks the structural invariants (arity of `Or`/`And`/`Concat`,
    /// well-formed literals and bounds).
    pub fn validate(&self) -> Result<(), String> {
        match self {
            RegexAst::Literal(s) => {
                if s.is_empty() {
                    return Err("empty literal".into());
                }
                if let Some(c) = s.chars().find(|&c| is_meta(c)) {
                    return Err(format!("literal {s:?} contains metacharacter {c:?}"));
                }
                Ok(())
            }
            RegexAst::Class(_) | RegexAst::AnyChar => Ok(()),
            RegexAst::Concat(items) => {
                if items.len() < 2 {
                    return Err("concatenation needs at least two items".into());
                }
                items.iter().try_for_each(RegexAst::validate)
            }
            RegexAst::Or(items) | RegexAst::And(items) => {
                if !(2..=3).contains(&items.len()) {
                    return Err(format!("expected 2 or 3 operands, found {}", items.len()));
                }
                items.iter().try_for_each(RegexAst::validate)
            }
            RegexAst::RepeatAtMost(x, n) => {
                if *n == 0 {
                    return Err("upper bound must be at least 1".into());
                }
                x.validate()
            }
            RegexAst::Not(x)
            | RegexAst::Star(x)
            | RegexAst::Plus(x)
            | RegexAst::RepeatAtLeast(x, _)
            | RegexAst::WordBounded(x)
            | RegexAst::Contains(x)
            | RegexAst::StartsWith(x)
            | RegexAst::EndsWith(x) => x.validate(),
            RegexAst::FollowedBy(x, y) => {
                x.validate()?;
                y.validate()
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn children(&self) -> Vec<&RegexAst> {
        match self {
            RegexAst::Literal(_) | RegexAst::Class(_) | RegexAst::AnyChar => vec![],
            RegexAst::Concat(items) | RegexAst::Or(items) | RegexAst::And(items) => items.iter().collect(),
            RegexAst::Not(x)
            | RegexAst::Star(x)
            | RegexAst::Plus(x)
            | RegexAst::RepeatAtLeast(x, _)
            | RegexAst::RepeatAtMost(x, _)
            | RegexAst::WordBounded(x)
            | RegexAst::Contains(x)
            | RegexAst::StartsWith(x)
            | RegexAst::EndsWith(x) => vec![x],
            RegexAst::FollowedBy(x, y) => vec![x, y],
        }
    }

    pub fn has_word_boundary(&self) -> bool {
        matches!(self, RegexAst::WordBounded(_)) || self.children().iter().any(|c| c.has_word_boundary())
    }

    /// Literals and classes that appear anywhere in the tree.
    pub(crate) fn visit_leaves<'a>(&'a self, out: &mut Vec<&'a RegexAst>) {
        match self {
            RegexAst::Literal(_) | RegexAst::Class(_) | RegexAst::AnyChar => out.push(self),
            _ => {
                for c in self.children() {
                    c.visit_leaves(out);
                }
            }
        }
    }

    /// Applies `f` to every literal leaf, rebuilding the tree.
    pub fn map_literals(&self, f: &mut dyn FnMut(&str) -> String) -> RegexAst {
        use RegexAst::*;
        let all = |items: &[RegexAst], f: &mut dyn FnMut(&str) -> String| {
            items.iter().map(|x| x.map_literals(f)).collect::<Vec<_>>()
        };
        match self {
            Literal(s) => Literal(f(s)),
            Class(_) | AnyChar => self.clone(),
            Concat(items) => Concat(all(items, f)),
            Or(items) => Or(all(items, f)),
            And(items) => And(all(items, f)),
            Not(x) => Not(Box::new(x.map_literals(f))),
            Star(x) => Star(Box::new(x.map_literals(f))),
            Plus(x) => Plus(Box::new(x.map_literals(f))),
            RepeatAtLeast(x, n) => RepeatAtLeast(Box::new(x.map_literals(f)), *n),
            RepeatAtMost(x, n) => RepeatAtMost(Box::new(x.map_literals(f)), *n),
            WordBounded(x) => WordBounded(Box::new(x.map_literals(f))),
            Contains(x) => Contains(Box::new(x.map_literals(f))),
            StartsWith(x) => StartsWith(Box::new(x.map_literals(f))),
            EndsWith(x) => EndsWith(Box::new(x.map_literals(f))),
            FollowedBy(x, y) => {
                let x = Box::new(x.map_literals(f));
                FollowedBy(x, Box::new(y.map_literals(f)))
            }
        }
    }
}

/// Canonical text for `ast`; `parse_regex(&print_regex(a)) == a` for every
/// valid tree.
pub fn print_regex(ast: &RegexAst) -> String {
    let mut out = String::new();
    write_node(ast, &mut out);
    out
}

fn group(x: &RegexAst, out: &mut String) {
    out.push('(');
    write_node(x, out);
    out.push(')');
}

// Postfix operands: `.` is printed bare so that `Star(AnyChar)` reads `.*`.
fn postfix_operand(x: &RegexAst, out: &mut String) {
    if matches!(x, RegexAst::AnyChar) {
        out.push('.');
    } else {
        group(x, out);
    }
}

fn write_node(ast: &RegexAst, out: &mut String) {
    match ast {
        RegexAst::Literal(s) => out.push_str(s),
        RegexAst::Class(c) => out.push_str(&c.to_string()),
        RegexAst::AnyChar => out.push('.'),
        RegexAst::Concat(items) => items.iter().for_each(|x| group(x, out)),
        RegexAst::Or(items) | RegexAst::And(items) => {
            let sep = if matches!(ast, RegexAst::Or(_)) { '|' } else { '&' };
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(sep);
                }
                group(x, out);
            }
        }
        RegexAst::Not(x) => {
            out.push('~');
            group(x, out);
        }
        RegexAst::Star(x) => {
            postfix_operand(x, out);
            out.push('*');
        }
        RegexAst::Plus(x) => {
            postfix_operand(x, out);
            out.push('+');
        }
        RegexAst::RepeatAtLeast(x, n) => {
            group(x, out);
            out.push_str(&format!("{{{n},}}"));
        }
        RegexAst::RepeatAtMost(x, n) => {
            group(x, out);
            out.push_str(&format!("{{1,{n}}}"));
        }
        RegexAst::WordBounded(x) => {
            out.push_str("\\b");
            group(x, out);
            out.push_str("\\b");
        }
        RegexAst::Contains(x) => {
            out.push_str(".*");
            group(x, out);
            out.push_str(".*");
        }
        RegexAst::StartsWith(x) => {
            group(x, out);
            out.push_str(".*");
        }
        RegexAst::EndsWith(x) => {
            out.push_str(".*");
            group(x, out);
        }
        RegexAst::FollowedBy(x, y) => {
            out.push_str(".*");
            group(x, out);
            out.push_str(".*");
            group(y, out);
        }
    }
}

impl fmt::Display for RegexAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_regex(self))
    }
}
