use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::{DatasetError, DatasetRecord, Domain};
use crate::regex::{self, literal_tokens};

const NOUNS: &str = include_str!("../../data/nouns.txt");

/// The 25 nouns used for perturbation, in their fixed order.
pub fn noun_pool() -> &'static [&'static str] {
    static POOL: OnceLock<Vec<&'static str>> = OnceLock::new();
    POOL.get_or_init(|| {
        NOUNS.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
    })
}

/// Replaces nouns in a regex record: quoted occurrences (`'dog'`) in the
/// sentence and literal runs in the target. The replacement is simultaneous,
/// so swapping two nouns works.
pub fn substitute_nouns(
    record: &DatasetRecord,
    mapping: &BTreeMap<String, String>,
) -> Result<DatasetRecord, DatasetError> {
    if record.domain != Domain::Regex {
        return Err(DatasetError::InvalidRecord {
            id: record.id.clone(),
            msg: format!("noun substitution needs a regex record, found {}", record.domain),
        });
    }
    for (from, to) in mapping {
        if to.is_empty() || !to.chars().all(|c| c.is_alphanumeric()) {
            return Err(DatasetError::Alignment(format!("{to:?} cannot replace {from:?}")));
        }
    }
    let literals = literal_tokens(&record.target)
        .map_err(|e| DatasetError::InvalidRecord { id: record.id.clone(), msg: e.to_string() })?;
    let quoted = quoted_spans(&record.nl);
    for noun in mapping.keys() {
        let in_nl = quoted.iter().any(|&(a, b)| record.nl[a..b] == *noun);
        let in_target = literals.iter().any(|(_, s)| s == noun);
        if in_nl != in_target {
            let (has, lacks) = if in_nl { ("sentence", "target") } else { ("target", "sentence") };
            return Err(DatasetError::Alignment(format!(
                "record {}: {noun:?} occurs in the {has} but not in the {lacks}",
                record.id
            )));
        }
    }

    let mut nl = String::with_capacity(record.nl.len());
    let mut last = 0;
    for &(a, b) in &quoted {
        if let Some(to) = mapping.get(&record.nl[a..b]) {
            nl.push_str(&record.nl[last..a]);
            nl.push_str(to);
            last = b;
        }
    }
    nl.push_str(&record.nl[last..]);

    let chars: Vec<char> = record.target.chars().collect();
    let mut target = String::with_capacity(record.target.len());
    let mut at = 0;
    for (pos, lit) in &literals {
        if let Some(to) = mapping.get(lit) {
            target.extend(&chars[at..*pos]);
            target.push_str(to);
            at = pos + lit.chars().count();
        }
    }
    target.extend(&chars[at..]);

    regex::parse_regex(&target).map_err(|e| DatasetError::Alignment(format!("{target:?}: {e}")))?;
    let mut out = record.clone();
    out.nl = nl;
    out.target = target;
    out.rehash();
    Ok(out)
}

// byte ranges of the text inside '...' pairs
fn quoted_spans(s: &str) -> Vec<(usize, usize)> {
    let quotes: Vec<usize> = s.match_indices('\'').map(|(i, _)| i).collect();
    quotes.chunks_exact(2).map(|p| (p[0] + 1, p[1])).collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn record(nl: &str, target: &str) -> DatasetRecord {
        DatasetRecord::new(Domain::Regex, nl, target, BTreeMap::new())
    }

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn pool() {
        let p = noun_pool();
        assert_eq!(p.len(), 25);
        assert_eq!(&p[..4], &["dog", "truck", "ring", "time"]);
        assert!(p.contains(&"eye"));
        let unique: std::collections::BTreeSet<_> = p.iter().collect();
        assert_eq!(unique.len(), 25);
    }

    #[test]
    fn dog_to_time() {
        let r = record("lines with the string 'dog' before a number", "(.*dog.*)&(.*[0-9].*)");
        let out = substitute_nouns(&r, &map(&[("dog", "time")])).unwrap();
        assert_eq!(out.nl, "lines with the string 'time' before a number");
        assert_eq!(out.target, "(.*time.*)&(.*[0-9].*)");
        assert_ne!(out.id, r.id);
    }

    #[test]
    fn dog_to_eye_keeps_pair_consistent() {
        let r = record("lines containing 'dog' or the string 'time'", "(.*dog.*)|(.*time.*)");
        let out = substitute_nouns(&r, &map(&[("dog", "eye")])).unwrap();
        assert_eq!(out.nl, "lines containing 'eye' or the string 'time'");
        assert_eq!(out.target, "(.*eye.*)|(.*time.*)");
    }

    #[test]
    fn identity_and_swap() {
        let r = record("lines with 'dog' then 'truck'", "(dog)(truck)");
        assert_eq!(substitute_nouns(&r, &map(&[("dog", "dog")])).unwrap(), r);
        let swapped = substitute_nouns(&r, &map(&[("dog", "truck"), ("truck", "dog")])).unwrap();
        assert_eq!(swapped.nl, "lines with 'truck' then 'dog'");
        assert_eq!(swapped.target, "(truck)(dog)");
    }

    #[test]
    fn misalignment() {
        let r = record("lines with the string 'dog'", "(.*ring.*)");
        assert!(matches!(substitute_nouns(&r, &map(&[("dog", "time")])), Err(DatasetError::Alignment(_))));
        let r = record("lines with a number", "(.*dog.*)");
        assert!(substitute_nouns(&r, &map(&[("dog", "time")])).is_err());
        let r = record("lines with 'dog'", "(.*dog.*)");
        assert!(substitute_nouns(&r, &map(&[("dog", "a|b")])).is_err());
    }

    proptest! {
        #[test]
        fn inverse_mapping_restores(i in 0usize..25, j in 0usize..25, k in 0usize..25) {
            let pool = noun_pool();
            prop_assume!(i != k && j != k && i != j);
            let (a, b, c) = (pool[i], pool[j], pool[k]);
            let r = record(
                &format!("lines with '{a}' followed by '{b}'"),
                &format!("(.*{a}.*)&(({b})+)"),
            );
            let forward = map(&[(a, c)]);
            let back = map(&[(c, a)]);
            let there = substitute_nouns(&r, &forward).unwrap();
            let quoted = format!("'{c}'");
            prop_assert!(there.nl.contains(&quoted));
            prop_assert_eq!(substitute_nouns(&there, &back).unwrap(), r);
        }
    }
}
