//! Consistent renaming of propositions in LTL records.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{is_nl_ap, NlError};
use crate::datasets::{DatasetRecord, Domain};
use crate::ltl::{parse_ltl, print_ltl};

/// Renames propositions in the sentence and target of an LTL record.
/// Propositions not in `mapping` keep their names. Without a mapping, every
/// proposition gets a distinct random letter drawn with `seed`.
pub fn rename_aps(
    record: &DatasetRecord,
    mapping: Option<&BTreeMap<String, String>>,
    seed: u64,
) -> Result<DatasetRecord, NlError> {
    if record.domain != Domain::Ltl {
        return Err(NlError::Invalid(format!("record {} is not an LTL record", record.id)));
    }
    let f = parse_ltl(&record.target)?;
    let aps = f.aps();
    let mut full: BTreeMap<String, String> = match mapping {
        Some(m) => m.iter().filter(|(k, _)| aps.contains(*k)).map(|(k, v)| (k.clone(), v.clone())).collect(),
        None => {
            if aps.len() > 26 {
                return Err(NlError::Collision(format!("{} propositions but 26 letters", aps.len())));
            }
            let mut letters: Vec<String> = ('a'..='z').map(String::from).collect();
            letters.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            aps.iter().cloned().zip(letters).collect()
        }
    };
    for p in &aps {
        full.entry(p.clone()).or_insert_with(|| p.clone());
    }
    let mut targets = BTreeSet::new();
    for (from, to) in &full {
        if !is_nl_ap(to) {
            return Err(NlError::Collision(format!("{to:?} cannot name a proposition")));
        }
        if !targets.insert(to) {
            return Err(NlError::Collision(format!(
                "two propositions renamed to {to:?} (one of them {from:?})"
            )));
        }
    }

    let renamed = f.map_aps(&mut |p| full[p].clone());
    let mut nl = String::with_capacity(record.nl.len());
    let mut word = String::new();
    for c in record.nl.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() {
            word.push(c);
            continue;
        }
        nl.push_str(full.get(&word).unwrap_or(&word));
        word.clear();
        nl.push(c);
    }
    nl.pop();

    let mut out = record.clone();
    out.nl = nl;
    out.target = print_ltl(&renamed);
    let changed: BTreeMap<String, Value> =
        full.into_iter().filter(|(k, v)| k != v).map(|(k, v)| (k, Value::from(v))).collect();
    if !changed.is_empty() {
        out.meta.insert("renaming".into(), Value::Object(changed.into_iter().collect()));
    }
    out.rehash();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::LtlFormula;
    use crate::nlgen::{gen_pattern_dataset, nl_to_ltl, pattern_catalog, GrammarVariant, PatternOptions};

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn record(nl: &str, target: &str) -> DatasetRecord {
        DatasetRecord::new(Domain::Ltl, nl, print_ltl(&parse_ltl(target).unwrap()), BTreeMap::new())
    }

    #[test]
    fn infinitely_often_example() {
        let r = record("If a holds infinitely often then b holds infinitely often", "G F a -> G F b");
        let out = rename_aps(&r, Some(&map(&[("a", "x"), ("b", "y")])), 0).unwrap();
        assert_eq!(out.nl, "If x holds infinitely often then y holds infinitely often");
        assert_eq!(parse_ltl(&out.target).unwrap(), parse_ltl("G F x -> G F y").unwrap());
        assert_eq!(out.meta["renaming"]["a"], "x");
    }

    #[test]
    fn identity_is_a_no_op() {
        let r = record("Globally it is the case that if a holds then b holds", "G (a -> b)");
        assert_eq!(rename_aps(&r, Some(&map(&[("a", "a")])), 0).unwrap(), r);
        assert_eq!(rename_aps(&r, Some(&BTreeMap::new()), 0).unwrap(), r);
    }

    #[test]
    fn collisions() {
        let r = record("Globally it is the case that if a holds then b holds", "G (a -> b)");
        for m in
            [map(&[("a", "b")]), map(&[("a", "x"), ("b", "x")]), map(&[("a", "until")]), map(&[("a", "G")])]
        {
            assert!(matches!(rename_aps(&r, Some(&m), 0), Err(NlError::Collision(_))), "{m:?}");
        }
        // swapping is fine
        let out = rename_aps(&r, Some(&map(&[("a", "b"), ("b", "a")])), 0).unwrap();
        assert_eq!(out.nl, "Globally it is the case that if b holds then a holds");
    }

    #[test]
    fn random_letters_keep_records_consistent() {
        let rs = gen_pattern_dataset(&pattern_catalog(), 200, 3, &PatternOptions::default()).unwrap();
        for (i, r) in rs.iter().enumerate() {
            let out = rename_aps(r, None, i as u64).unwrap();
            let f = parse_ltl(&out.target).unwrap();
            assert_eq!(nl_to_ltl(&out.nl, GrammarVariant::Base).unwrap(), f);
            let before = parse_ltl(&r.target).unwrap();
            assert_eq!(f.size(), before.size());
            assert_eq!(f.aps().len(), before.aps().len());
            assert!(f.aps().iter().all(|p| p.len() == 1));
            assert_eq!(rename_aps(r, None, i as u64).unwrap(), out);
        }
        let unchanged = rename_aps(&record("a holds", "a"), None, 1).unwrap();
        assert!(matches!(parse_ltl(&unchanged.target).unwrap(), LtlFormula::Ap(_)));
    }
}
