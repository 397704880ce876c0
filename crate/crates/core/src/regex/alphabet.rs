//! Finite symbolic alphabet shared by the automata of one or more regexes.
//!
//! Every character class, every literal character and (when word boundaries
//! occur) the word set `[A-Za-z0-9]` is a defining set. Two characters land
//! in the same minterm exactly when they belong to the same defining sets, so
//! no regex over those sets can tell them apart.

use std::collections::HashMap;

use super::ast::{CharClass, RegexAst};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Set {
    Class(CharClass),
    Char(char),
    Word,
}

impl Set {
    fn contains(&self, c: char) -> bool {
        match self {
            Set::Class(k) => k.contains(c),
            Set::Char(x) => *x == c,
            Set::Word => is_word_char(c),
        }
    }
}

/// `[A-Za-z0-9]`, the characters on the word side of `\b`.
pub fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
}

/// A partition of the character universe into minterms.
#[derive(Debug, Clone)]
pub struct SymbolicAlphabet {
    sets: Vec<Set>,
    by_signature: HashMap<Vec<u64>, usize>,
    representatives: Vec<char>,
    word: Vec<bool>,
}

impl SymbolicAlphabet {
    /// Alphabet fine enough for every regex in `asts`.
    pub fn for_asts(asts: &[&RegexAst]) -> Self {
        let mut sets: Vec<Set> = Vec::new();
        let add = |s: Set, sets: &mut Vec<Set>| {
            if !sets.contains(&s) {
                sets.push(s);
            }
        };
        let mut word = false;
        for ast in asts {
            word |= ast.has_word_boundary();
            let mut leaves = Vec::new();
            ast.visit_leaves(&mut leaves);
            for leaf in leaves {
                match leaf {
                    RegexAst::Literal(s) => s.chars().for_each(|c| add(Set::Char(c), &mut sets)),
                    RegexAst::Class(k) => add(Set::Class(k.clone()), &mut sets),
                    _ => {}
                }
            }
        }
        if word {
            add(Set::Word, &mut sets);
        }

        let mut universe: Vec<char> = (0x20u8..=0x7e).map(char::from).collect();
        for s in &sets {
            match s {
                Set::Char(c) => universe.push(*c),
                Set::Class(k) => k.items().iter().for_each(|&(lo, hi)| {
                    universe.push(lo);
                    universe.push(hi);
                }),
                Set::Word => {}
            }
        }
        universe.sort_unstable();
        universe.dedup();

        let mut alphabet = SymbolicAlphabet {
            sets,
            by_signature: HashMap::new(),
            representatives: Vec::new(),
            word: Vec::new(),
        };
        // characters outside the universe that no set mentions still need a
        // minterm, even if the listed characters cover every other signature
        let outside = (0x80u32..0x11_0000)
            .filter_map(char::from_u32)
            .find(|&c| alphabet.signature(c).iter().all(|&w| w == 0));
        for c in universe.into_iter().chain(outside) {
            let sig = alphabet.signature(c);
            if !alphabet.by_signature.contains_key(&sig) {
                alphabet.by_signature.insert(sig, alphabet.representatives.len());
                alphabet.representatives.push(c);
                alphabet.word.push(word && is_word_char(c));
            }
        }
        alphabet
    }

    fn signature(&self, c: char) -> Vec<u64> {
        let mut sig = vec![0u64; self.sets.len().div_ceil(64).max(1)];
        for (i, s) in self.sets.iter().enumerate() {
            if s.contains(c) {
                sig[i / 64] |= 1 << (i % 64);
            }
        }
        sig
    }

    /// Number of minterms.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Minterm containing `c`, if any.
    pub fn class_of(&self, c: char) -> Option<usize> {
        self.by_signature.get(&self.signature(c)).copied()
    }

    /// Smallest character of the universe in minterm `i`.
    pub fn representative(&self, i: usize) -> char {
        self.representatives[i]
    }

    pub fn representatives(&self) -> &[char] {
        &self.representatives
    }

    /// Whether minterm `i` is on the word side of `\b`. Always false when no
    /// regex in the alphabet uses word boundaries.
    pub fn is_word(&self, i: usize) -> bool {
        self.word[i]
    }

    /// Minterm of every character of a literal; `None` if one has no class.
    pub fn classes_of_str(&self, s: &str) -> Option<Vec<usize>> {
        s.chars().map(|c| self.class_of(c)).collect()
    }

    /// Minterms whose representative passes `test`.
    pub(crate) fn minterms_of(&self, test: impl Fn(char) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| test(self.representatives[i])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    #[test]
    fn single_literal_gives_two_minterms() {
        let ast = parse_regex("a").unwrap();
        let a = SymbolicAlphabet::for_asts(&[&ast]);
        assert_eq!(a.len(), 2);
        assert_eq!(a.class_of('a'), Some(a.class_of('a').unwrap()));
        assert_ne!(a.class_of('a'), a.class_of('b'));
        assert_eq!(a.class_of('b'), a.class_of('~'));
    }

    #[test]
    fn vowel_and_letter_classes_refine() {
        let ast = parse_regex("([A-Za-z])&([AEIOUaeiou])|([0-9])").unwrap();
        let a = SymbolicAlphabet::for_asts(&[&ast]);
        // vowels, consonants, digits, everything else
        assert_eq!(a.len(), 4);
        assert_eq!(a.class_of('e'), a.class_of('U'));
        assert_eq!(a.class_of('x'), a.class_of('B'));
        assert_eq!(a.class_of('3'), a.class_of('0'));
    }

    #[test]
    fn word_boundary_splits_word_characters() {
        let ast = parse_regex("\\b(a)\\b").unwrap();
        let a = SymbolicAlphabet::for_asts(&[&ast]);
        assert_eq!(a.len(), 3);
        assert!(a.is_word(a.class_of('z').unwrap()));
        assert!(!a.is_word(a.class_of(' ').unwrap()));
        assert_ne!(a.class_of('z'), a.class_of(' '));
    }

    #[test]
    fn non_ascii_falls_into_other() {
        let ast = parse_regex("a").unwrap();
        let a = SymbolicAlphabet::for_asts(&[&ast]);
        assert_eq!(a.class_of('é'), a.class_of('b'));
    }
}
