//! Sentence to formula.
//!
//! An all-parses recogniser over words: each nonterminal, started at a word
//! index, yields every `(end, formula)` it can derive. A sentence with more
//! than one distinct full reading is reported as ambiguous instead of being
//! resolved silently.

use std::collections::HashMap;
use std::rc::Rc;

use super::{is_nl_ap, is_nl_reserved, GrammarVariant, NlError, ITC};
use crate::ltl::LtlFormula;

type Parses = Rc<Vec<(usize, LtlFormula)>>;

/// Parses a sentence of the given grammar variant. Keywords are matched
/// without regard to case; a trailing period is ignored.
pub fn nl_to_ltl(sentence: &str, variant: GrammarVariant) -> Result<LtlFormula, NlError> {
    let text = sentence.trim().trim_end_matches('.');
    let raw: Vec<&str> = text.split_whitespace().collect();
    if raw.is_empty() {
        return Err(NlError::Syntax { word: 0, msg: "empty sentence".into() });
    }
    let vocabulary = variant.vocabulary();
    let lower: Vec<String> = raw.iter().map(|w| w.to_ascii_lowercase()).collect();
    for (i, w) in raw.iter().enumerate() {
        if !vocabulary.contains(&lower[i].as_str()) && !is_nl_ap(w) {
            let msg = if is_nl_reserved(w) {
                format!("{w:?} is not part of the {variant} grammar")
            } else {
                format!("unknown word {w:?}")
            };
            return Err(NlError::Syntax { word: i, msg });
        }
    }
    let mut p = Parser { variant, raw, lower, memo: HashMap::new() };
    let n = p.raw.len();
    let mut readings: Vec<LtlFormula> = Vec::new();
    for (end, f) in p.parse(Nt::Tail, 0).iter() {
        if *end == n && !readings.contains(f) {
            readings.push(f.clone());
        }
    }
    match readings.len() {
        0 => Err(NlError::Syntax { word: p.furthest(), msg: "sentence does not follow the grammar".into() }),
        1 => Ok(readings.pop().unwrap()),
        parses => Err(NlError::Ambiguity { parses }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Nt {
    Simple,
    Unary,
    Closed,
    Child,
    Tail,
}

struct Parser<'s> {
    variant: GrammarVariant,
    raw: Vec<&'s str>,
    lower: Vec<String>,
    memo: HashMap<(Nt, usize), Parses>,
}

const INFIX: [(&[&str], fn(LtlFormula, LtlFormula) -> LtlFormula); 4] = [
    (&["and"], LtlFormula::and),
    (&["or"], LtlFormula::or),
    (&["until"], LtlFormula::until),
    (&["if", "and", "only", "if"], LtlFormula::equiv),
];

// distinct readings kept per end position; two are enough to detect ambiguity
const KEEP: usize = 2;

fn push(out: &mut Vec<(usize, LtlFormula)>, end: usize, f: LtlFormula) {
    let same_end = out.iter().filter(|(e, _)| *e == end);
    let mut count = 0;
    for (_, g) in same_end {
        if *g == f {
            return;
        }
        count += 1;
    }
    if count < KEEP {
        out.push((end, f));
    }
}

fn is_simple(f: &LtlFormula) -> bool {
    match f {
        LtlFormula::Ap(_) => true,
        LtlFormula::Not(x) => matches!(**x, LtlFormula::Ap(_)),
        _ => false,
    }
}

impl Parser<'_> {
    fn is(&self, i: usize, words: &[&str]) -> bool {
        i + words.len() <= self.lower.len() && words.iter().enumerate().all(|(k, w)| self.lower[i + k] == *w)
    }

    // index of the last word any parse reached, for error messages
    fn furthest(&self) -> usize {
        self.memo
            .values()
            .flat_map(|v| v.iter().map(|(e, _)| *e))
            .max()
            .unwrap_or(0)
            .min(self.raw.len().saturating_sub(1))
    }

    fn parse(&mut self, nt: Nt, i: usize) -> Parses {
        if let Some(p) = self.memo.get(&(nt, i)) {
            return p.clone();
        }
        let mut out = Vec::new();
        if i < self.raw.len() {
            match nt {
                Nt::Simple => self.simple(i, &mut out),
                Nt::Unary => self.unary(i, &mut out),
                Nt::Closed => self.closed(i, &mut out),
                Nt::Child => self.child(i, &mut out),
                Nt::Tail => self.tail(i, &mut out),
            }
        }
        let out = Rc::new(out);
        self.memo.insert((nt, i), out.clone());
        out
    }

    fn simple(&mut self, i: usize, out: &mut Vec<(usize, LtlFormula)>) {
        let name = self.raw[i];
        if !is_nl_ap(name) {
            return;
        }
        if self.is(i + 1, &["holds"]) {
            push(out, i + 2, LtlFormula::ap(name));
        }
        if self.is(i + 1, &["does", "not", "hold"]) {
            push(out, i + 4, LtlFormula::not(LtlFormula::ap(name)));
        }
    }

    fn unary(&mut self, i: usize, out: &mut Vec<(usize, LtlFormula)>) {
        let v = self.variant;
        let tables: [(&[&[&str]], fn(LtlFormula) -> LtlFormula); 4] = [
            (v.globally(), LtlFormula::globally),
            (v.eventually(), LtlFormula::finally),
            (v.next(), LtlFormula::next),
            (v.infinitely_often(), |x| LtlFormula::globally(LtlFormula::finally(x))),
        ];
        for (phrases, wrap) in tables {
            for phrase in phrases {
                if self.is(i, phrase) {
                    self.operand(i + phrase.len(), wrap, out);
                }
            }
        }
        if v.has_eventually_forever() && self.is(i, &["eventually"]) {
            let fg = |x| LtlFormula::finally(LtlFormula::globally(x));
            if self.is(i + 1, &["forever"]) {
                for (e, x) in self.parse(Nt::Simple, i + 2).iter() {
                    push(out, *e, fg(x.clone()));
                }
            }
            if self.is(i + 1, &ITC) && self.is(i + 6, &["forever"]) {
                for (e, x) in self.parse(Nt::Child, i + 7).iter() {
                    push(out, *e, fg(x.clone()));
                }
            }
        }
    }

    // what follows a unary phrase: a simple pattern, or "it is the case that"
    // and a complex one
    fn operand(&mut self, p: usize, wrap: fn(LtlFormula) -> LtlFormula, out: &mut Vec<(usize, LtlFormula)>) {
        for (e, x) in self.parse(Nt::Simple, p).iter() {
            push(out, *e, wrap(x.clone()));
        }
        if self.is(p, &ITC) {
            for (e, x) in self.parse(Nt::Child, p + ITC.len()).iter() {
                push(out, *e, wrap(x.clone()));
            }
        }
    }

    // binary operators after a left operand ending at `k`; the right operand
    // is `right` (closed or tail), release always closes with "or forever"
    fn binary_after(&mut self, k: usize, left: &LtlFormula, right: Nt, out: &mut Vec<(usize, LtlFormula)>) {
        for (kw, make) in INFIX {
            if self.is(k, kw) {
                for (e, r) in self.parse(right, k + kw.len()).iter() {
                    push(out, *e, make(left.clone(), r.clone()));
                }
            }
        }
        if self.is(k, &["holds", "until"]) {
            for (e, r) in self.parse(Nt::Tail, k + 2).iter() {
                if self.is(*e, &["or", "forever"]) {
                    push(out, e + 2, LtlFormula::release(left.clone(), r.clone()));
                }
            }
        }
    }

    // "if" T "then" <consequent>
    fn implication(&mut self, i: usize, consequent: Nt, out: &mut Vec<(usize, LtlFormula)>) {
        if !self.is(i, &["if"]) {
            return;
        }
        for (k, l) in self.parse(Nt::Tail, i + 1).iter() {
            if self.is(*k, &["then"]) {
                for (e, r) in self.parse(consequent, k + 1).iter() {
                    push(out, *e, LtlFormula::implies(l.clone(), r.clone()));
                }
            }
        }
    }

    // a binary node after its opening phrase; `simple_left` restricts the
    // left operand to a simple pattern (child position) or excludes it
    fn opened(&mut self, m: usize, simple_left: Option<bool>, out: &mut Vec<(usize, LtlFormula)>) {
        for (k, l) in self.parse(Nt::Closed, m).iter() {
            if simple_left.is_some_and(|s| s != is_simple(l)) {
                continue;
            }
            self.binary_after(*k, l, Nt::Closed, out);
        }
    }

    fn closed(&mut self, i: usize, out: &mut Vec<(usize, LtlFormula)>) {
        for (e, f) in self.parse(Nt::Simple, i).iter().chain(self.parse(Nt::Unary, i).iter()) {
            push(out, *e, f.clone());
        }
        if self.is(i, &ITC) {
            let m = i + ITC.len();
            self.implication(m, Nt::Closed, out);
            self.opened(m, None, out);
        }
    }

    fn child(&mut self, i: usize, out: &mut Vec<(usize, LtlFormula)>) {
        for (e, f) in self.parse(Nt::Unary, i).iter() {
            push(out, *e, f.clone());
        }
        self.implication(i, Nt::Closed, out);
        self.opened(i, Some(true), out);
        if self.is(i, &ITC) {
            self.opened(i + ITC.len(), Some(false), out);
        }
    }

    fn tail(&mut self, i: usize, out: &mut Vec<(usize, LtlFormula)>) {
        for (e, f) in self.parse(Nt::Simple, i).iter().chain(self.parse(Nt::Unary, i).iter()) {
            push(out, *e, f.clone());
        }
        for (k, l) in self.parse(Nt::Closed, i).iter() {
            self.binary_after(*k, l, Nt::Tail, out);
        }
        self.implication(i, Nt::Tail, out);
    }
}
