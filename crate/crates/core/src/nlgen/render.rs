//! Formula to sentence.
//!
//! Three renderings keep sentences uniquely readable:
//! - tail: the subformula runs to the end of the enclosing region (the whole
//!   sentence, an antecedent closed by `then`, or a release operand closed by
//!   `or forever`);
//! - closed: used for left operands; binary operators are opened with
//!   `it is the case that`, so the reader knows where the operand starts;
//! - child: the operand of `Globally it is the case that` and its siblings,
//!   where that phrase already opens the scope.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{is_nl_ap, GrammarVariant, NlError, ITC};
use crate::datasets::DatasetRecord;
use crate::ltl::{parse_ltl, LtlFormula};

/// Checks that `f` is in the grammar's formula language: negation only on
/// propositions, no constants, and proposition names that are not grammar
/// words.
pub fn check_admissible(f: &LtlFormula) -> Result<(), NlError> {
    match f {
        LtlFormula::True | LtlFormula::False => {
            Err(NlError::UnsupportedShape("constants true/false have no phrase".into()))
        }
        LtlFormula::Ap(name) => {
            if is_nl_ap(name) {
                Ok(())
            } else {
                Err(NlError::UnsupportedShape(format!("{name:?} cannot be used as a proposition")))
            }
        }
        LtlFormula::Not(x) => match &**x {
            LtlFormula::Ap(_) => check_admissible(x),
            _ => Err(NlError::UnsupportedShape(format!("negation of a non-atomic subformula: {f}"))),
        },
        other => other.children().into_iter().try_for_each(check_admissible),
    }
}

/// Renders `f` as a sentence. The seed picks among synonyms in the enriched
/// grammar; base sentences do not depend on it.
pub fn ltl_to_nl(f: &LtlFormula, variant: GrammarVariant, seed: u64) -> Result<String, NlError> {
    check_admissible(f)?;
    let mut r = Renderer { variant, rng: ChaCha8Rng::seed_from_u64(seed), out: Vec::new() };
    r.tail(f);
    let mut sentence = String::new();
    for (i, w) in r.out.iter().enumerate() {
        if i > 0 {
            sentence.push(' ');
        }
        match w {
            Word::Kw(k) if i == 0 => {
                let mut cs = k.chars();
                sentence.extend(cs.next().map(|c| c.to_ascii_uppercase()));
                sentence.push_str(cs.as_str());
            }
            Word::Kw(k) => sentence.push_str(k),
            Word::Ap(a) => sentence.push_str(a),
        }
    }
    Ok(sentence)
}

/// Re-renders the sentence of an LTL record under `variant`, keeping the
/// target.
pub fn rephrase(
    record: &DatasetRecord,
    variant: GrammarVariant,
    seed: u64,
) -> Result<DatasetRecord, NlError> {
    let f = parse_ltl(&record.target)?;
    let mut out = record.clone();
    out.nl = ltl_to_nl(&f, variant, seed)?;
    out.meta.insert("grammar".into(), Value::from(variant.as_str()));
    out.rehash();
    Ok(out)
}

enum Word<'a> {
    Kw(&'static str),
    Ap(&'a str),
}

enum Phrase {
    Plain(&'static [&'static str]),
    // "eventually forever" / "eventually it is the case that forever"
    EventuallyForever,
}

struct Renderer<'a> {
    variant: GrammarVariant,
    rng: ChaCha8Rng,
    out: Vec<Word<'a>>,
}

fn simple(f: &LtlFormula) -> Option<(&str, bool)> {
    match f {
        LtlFormula::Ap(a) => Some((a, true)),
        LtlFormula::Not(x) => match &**x {
            LtlFormula::Ap(a) => Some((a, false)),
            _ => None,
        },
        _ => None,
    }
}

fn infix(f: &LtlFormula) -> Option<(&'static [&'static str], &LtlFormula, &LtlFormula)> {
    match f {
        LtlFormula::And(l, r) => Some((&["and"], l, r)),
        LtlFormula::Or(l, r) => Some((&["or"], l, r)),
        LtlFormula::Until(l, r) => Some((&["until"], l, r)),
        LtlFormula::Equiv(l, r) => Some((&["if", "and", "only", "if"], l, r)),
        _ => None,
    }
}

impl<'a> Renderer<'a> {
    fn kws(&mut self, words: &[&'static str]) {
        self.out.extend(words.iter().map(|w| Word::Kw(w)));
    }

    fn pick(&mut self, table: &'static [&'static [&'static str]]) -> &'static [&'static str] {
        table[self.rng.gen_range(0..table.len())]
    }

    fn e_p(&mut self, name: &'a str, positive: bool) {
        self.out.push(Word::Ap(name));
        if positive {
            self.kws(&["holds"]);
        } else {
            self.kws(&["does", "not", "hold"]);
        }
    }

    // chooses the phrase for a unary node and returns the operand it covers
    fn unary(&mut self, f: &'a LtlFormula) -> Option<(Phrase, &'a LtlFormula)> {
        let enriched = self.variant == GrammarVariant::Enriched;
        match f {
            LtlFormula::Globally(x) => {
                if let LtlFormula::Finally(y) = &**x {
                    if enriched && self.rng.gen_bool(0.5) {
                        return Some((Phrase::Plain(self.pick(self.variant.infinitely_often())), y));
                    }
                }
                Some((Phrase::Plain(self.pick(self.variant.globally())), x))
            }
            LtlFormula::Finally(x) => {
                if let LtlFormula::Globally(y) = &**x {
                    if self.variant.has_eventually_forever() && self.rng.gen_bool(0.5) {
                        return Some((Phrase::EventuallyForever, y));
                    }
                }
                Some((Phrase::Plain(self.pick(self.variant.eventually())), x))
            }
            LtlFormula::Next(x) => Some((Phrase::Plain(self.pick(self.variant.next())), x)),
            _ => None,
        }
    }

    fn emit_unary(&mut self, phrase: Phrase, child: &'a LtlFormula) {
        if let Some((name, pos)) = simple(child) {
            match phrase {
                Phrase::Plain(p) => self.kws(p),
                Phrase::EventuallyForever => self.kws(&["eventually", "forever"]),
            }
            self.e_p(name, pos);
            return;
        }
        match phrase {
            Phrase::Plain(p) => {
                self.kws(p);
                self.kws(&ITC);
            }
            Phrase::EventuallyForever => {
                self.kws(&["eventually"]);
                self.kws(&ITC);
                self.kws(&["forever"]);
            }
        }
        self.child(child);
    }

    fn closed(&mut self, f: &'a LtlFormula) {
        if let Some((name, pos)) = simple(f) {
            return self.e_p(name, pos);
        }
        if let Some((phrase, x)) = self.unary(f) {
            return self.emit_unary(phrase, x);
        }
        self.kws(&ITC);
        self.opened(f, false);
    }

    // operand of a unary phrase that ended in "it is the case that"
    fn child(&mut self, f: &'a LtlFormula) {
        if let Some((phrase, x)) = self.unary(f) {
            return self.emit_unary(phrase, x);
        }
        let left_simple = match f {
            LtlFormula::Implies(..) => true,
            LtlFormula::Release(l, _) => simple(l).is_some(),
            _ => infix(f).is_some_and(|(_, l, _)| simple(l).is_some()),
        };
        if left_simple {
            self.opened(f, true)
        } else {
            self.closed(f)
        }
    }

    // a binary node right after its opening "it is the case that"; `merged`
    // is set when that phrase belongs to an enclosing unary operator
    fn opened(&mut self, f: &'a LtlFormula, merged: bool) {
        match f {
            LtlFormula::Implies(l, r) => {
                self.kws(&["if"]);
                self.tail(l);
                self.kws(&["then"]);
                self.closed(r);
            }
            LtlFormula::Release(l, r) => {
                self.closed(l);
                self.kws(&["holds", "until"]);
                self.tail(r);
                self.kws(&["or", "forever"]);
            }
            _ => {
                let (kw, l, r) = infix(f).expect("binary operator");
                debug_assert!(!merged || simple(l).is_some());
                self.closed(l);
                self.kws(kw);
                self.closed(r);
            }
        }
    }

    fn tail(&mut self, f: &'a LtlFormula) {
        match f {
            LtlFormula::Implies(l, r) => {
                self.kws(&["if"]);
                self.tail(l);
                self.kws(&["then"]);
                self.tail(r);
            }
            LtlFormula::Release(l, r) => {
                self.closed(l);
                self.kws(&["holds", "until"]);
                self.tail(r);
                self.kws(&["or", "forever"]);
            }
            _ => match infix(f) {
                Some((kw, l, r)) => {
                    self.closed(l);
                    self.kws(kw);
                    self.tail(r);
                }
                None => self.closed(f),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(s: &str) -> String {
        ltl_to_nl(&parse_ltl(s).unwrap(), GrammarVariant::Base, 0).unwrap()
    }

    #[test]
    fn shapes() {
        assert_eq!(render("a"), "a holds");
        assert_eq!(render("!a"), "a does not hold");
        assert_eq!(render("G (a -> b)"), "Globally it is the case that if a holds then b holds");
        assert_eq!(render("F (a U b)"), "Eventually it is the case that a holds until b holds");
        assert_eq!(render("G F a"), "Globally it is the case that eventually a holds");
        assert_eq!(render("X !a"), "In the next step a does not hold");
        assert_eq!(render("a R b"), "a holds holds until b holds or forever");
        assert_eq!(render("a <-> b"), "a holds if and only if b holds");
        assert_eq!(
            render("G (a -> b) & G (c -> d)"),
            "Globally it is the case that if a holds then b holds and \
             globally it is the case that if c holds then d holds"
        );
    }

    #[test]
    fn left_operands_are_opened() {
        assert_eq!(render("(a & b) | c"), "It is the case that a holds and b holds or c holds");
        assert_eq!(render("a & (b | c)"), "a holds and b holds or c holds");
        assert_eq!(render("(a -> b) & c"), "It is the case that if a holds then b holds and c holds");
        assert_eq!(render("a -> (b & c)"), "If a holds then b holds and c holds");
        assert_eq!(
            render("G (F a & b)"),
            "Globally it is the case that it is the case that eventually a holds and b holds"
        );
        assert_eq!(render("G F a & b"), "Globally it is the case that eventually a holds and b holds");
    }

    #[test]
    fn rejects_shapes_outside_the_grammar() {
        for s in ["!(a & b)", "G !F a", "true", "a U false", "G until"] {
            let f = parse_ltl(s).unwrap();
            assert!(
                matches!(ltl_to_nl(&f, GrammarVariant::Base, 0), Err(NlError::UnsupportedShape(_))),
                "{s}"
            );
        }
    }

    #[test]
    fn base_ignores_the_seed() {
        let f = parse_ltl("G (a -> F (b & X c))").unwrap();
        let s0 = ltl_to_nl(&f, GrammarVariant::Base, 0).unwrap();
        assert!((1..20).all(|s| ltl_to_nl(&f, GrammarVariant::Base, s).unwrap() == s0));
    }

    #[test]
    fn enriched_uses_synonyms() {
        let f = parse_ltl("G (a -> F b) & G F c & F G d").unwrap();
        let sentences: std::collections::BTreeSet<String> =
            (0..64).map(|s| ltl_to_nl(&f, GrammarVariant::Enriched, s).unwrap()).collect();
        let all = sentences.iter().cloned().collect::<Vec<_>>().join(" ").to_lowercase();
        for w in ["always", "globally", "finally", "infinitely often", "eventually forever"] {
            assert!(all.contains(w), "{w} missing");
        }
        assert_eq!(
            ltl_to_nl(&f, GrammarVariant::Enriched, 7).unwrap(),
            ltl_to_nl(&f, GrammarVariant::Enriched, 7).unwrap()
        );
    }
}
