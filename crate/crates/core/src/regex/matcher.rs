//! Direct membership test, independent of the automata.
//!
//! `span(x, i, j)` says whether `x` matches `s[i..j]` inside the whole string
//! `s`; word boundaries look at the real neighbours of the span. Results are
//! memoised per node and span, which keeps the cost polynomial in `|s|`.

use std::collections::HashMap;

use super::alphabet::is_word_char;
use super::ast::RegexAst;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Node(usize),
    Star(usize),
    Repeat(usize, u32),
    Optional(usize, u32),
    Seq(usize, usize),
}

struct Matcher {
    s: Vec<char>,
    memo: HashMap<(Key, usize, usize), bool>,
}

fn id(x: &RegexAst) -> usize {
    x as *const RegexAst as usize
}

impl Matcher {
    fn word_at(&self, p: usize) -> bool {
        self.s.get(p).is_some_and(|&c| is_word_char(c))
    }

    fn boundary(&self, p: usize) -> bool {
        let left = p > 0 && self.word_at(p - 1);
        left != self.word_at(p)
    }

    fn memo(&mut self, key: Key, i: usize, j: usize, f: impl FnOnce(&mut Self) -> bool) -> bool {
        if let Some(&v) = self.memo.get(&(key, i, j)) {
            return v;
        }
        let v = f(self);
        self.memo.insert((key, i, j), v);
        v
    }

    fn span(&mut self, x: &RegexAst, i: usize, j: usize) -> bool {
        self.memo(Key::Node(id(x)), i, j, |m| m.compute(x, i, j))
    }

    fn compute(&mut self, x: &RegexAst, i: usize, j: usize) -> bool {
        match x {
            RegexAst::Literal(lit) => {
                let lit: Vec<char> = lit.chars().collect();
                j - i == lit.len() && self.s[i..j] == lit[..]
            }
            RegexAst::Class(c) => j == i + 1 && c.contains(self.s[i]),
            RegexAst::AnyChar => j == i + 1,
            RegexAst::Concat(items) => self.seq(items, 0, i, j),
            RegexAst::Or(items) => items.iter().any(|y| self.span(y, i, j)),
            RegexAst::And(items) => items.iter().all(|y| self.span(y, i, j)),
            RegexAst::Not(y) => !self.span(y, i, j),
            RegexAst::Star(y) => self.star(y, i, j),
            RegexAst::Plus(y) => (i..=j).any(|k| self.span(y, i, k) && self.star(y, k, j)),
            RegexAst::RepeatAtLeast(y, n) => self.at_least(y, *n, i, j),
            RegexAst::RepeatAtMost(y, n) => {
                (i..=j).any(|k| self.span(y, i, k) && self.optional(y, n - 1, k, j))
            }
            RegexAst::WordBounded(y) => self.boundary(i) && self.boundary(j) && self.span(y, i, j),
            RegexAst::Contains(y) => (i..=j).any(|a| (a..=j).any(|b| self.span(y, a, b))),
            RegexAst::StartsWith(y) => (i..=j).any(|b| self.span(y, i, b)),
            RegexAst::EndsWith(y) => (i..=j).any(|a| self.span(y, a, j)),
            RegexAst::FollowedBy(y, z) => {
                (i..=j).any(|c| self.span(z, c, j) && (i..=c).any(|a| (a..=c).any(|b| self.span(y, a, b))))
            }
        }
    }

    fn seq(&mut self, items: &[RegexAst], idx: usize, i: usize, j: usize) -> bool {
        if idx == items.len() {
            return i == j;
        }
        let key = Key::Seq(items.as_ptr() as usize, idx);
        self.memo(key, i, j, |m| (i..=j).any(|k| m.span(&items[idx], i, k) && m.seq(items, idx + 1, k, j)))
    }

    // zero or more non-empty iterations; empty iterations add nothing
    fn star(&mut self, y: &RegexAst, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        self.memo(Key::Star(id(y)), i, j, |m| (i + 1..=j).any(|k| m.span(y, i, k) && m.star(y, k, j)))
    }

    fn at_least(&mut self, y: &RegexAst, n: u32, i: usize, j: usize) -> bool {
        if n == 0 {
            return self.star(y, i, j);
        }
        self.memo(Key::Repeat(id(y), n), i, j, |m| {
            (i..=j).any(|k| m.span(y, i, k) && m.at_least(y, n - 1, k, j))
        })
    }

    // at most `n` further iterations
    fn optional(&mut self, y: &RegexAst, n: u32, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        if n == 0 {
            return false;
        }
        self.memo(Key::Optional(id(y), n), i, j, |m| {
            (i..=j).any(|k| m.span(y, i, k) && m.optional(y, n - 1, k, j))
        })
    }
}

/// Whether `ast` matches the whole of `s`.
pub fn regex_matches(ast: &RegexAst, s: &str) -> bool {
    let mut m = Matcher { s: s.chars().collect(), memo: HashMap::new() };
    let n = m.s.len();
    m.span(ast, 0, n)
}
