//! Pattern catalog and the conjoined-pattern generator.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{check_admissible, ltl_to_nl, nl_to_ltl, GrammarVariant, NlError};
use crate::datasets::{DatasetRecord, Domain};
use crate::ltl::{parse_ltl, print_ltl, LtlFormula};

const BUILTIN: &str = include_str!("../../data/patterns.ltl");

/// Names a catalog template may use.
pub const PLACEHOLDERS: [&str; 5] = ["a", "b", "c", "d", "e"];

#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    /// Position in the catalog, recorded in generated metadata.
    pub index: usize,
    pub formula: LtlFormula,
}

impl Pattern {
    /// Placeholders in order of name.
    pub fn placeholders(&self) -> Vec<String> {
        self.formula.aps().into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternCatalog {
    patterns: Vec<Pattern>,
}

impl PatternCatalog {
    /// Reads one formula per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, NlError> {
        let mut patterns: Vec<Pattern> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| NlError::Catalog { line: i + 1, msg };
            let formula = parse_ltl(line).map_err(|e| bad(e.to_string()))?;
            check_admissible(&formula).map_err(|e| bad(e.to_string()))?;
            if let Some(p) = formula.aps().iter().find(|p| !PLACEHOLDERS.contains(&p.as_str())) {
                return Err(bad(format!("{p:?} is not one of the placeholders a..e")));
            }
            if patterns.iter().any(|p| p.formula == formula) {
                return Err(bad(format!("duplicate pattern {line:?}")));
            }
            patterns.push(Pattern { index: patterns.len(), formula });
        }
        if patterns.is_empty() {
            return Err(NlError::Catalog { line: 0, msg: "no patterns".into() });
        }
        Ok(PatternCatalog { patterns })
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// The built-in catalog of global-scope specification patterns.
pub fn pattern_catalog() -> PatternCatalog {
    PatternCatalog::parse(BUILTIN).expect("built-in catalog is valid")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternOptions {
    pub variant: GrammarVariant,
    /// Propositions patterns are instantiated with.
    pub aps: Vec<String>,
    /// Let different conjuncts mention the same proposition. When off, every
    /// placeholder of every conjunct gets its own proposition.
    pub share_aps: bool,
    pub max_conjuncts: usize,
}

impl Default for PatternOptions {
    fn default() -> Self {
        PatternOptions {
            variant: GrammarVariant::Base,
            aps: PLACEHOLDERS.iter().map(|s| s.to_string()).collect(),
            share_aps: false,
            max_conjuncts: 4,
        }
    }
}

/// Conjoins `k` sampled patterns, each instantiated with fresh propositions,
/// and renders the conjunction.
pub fn gen_pattern_record(
    catalog: &PatternCatalog,
    k: usize,
    seed: u64,
    opts: &PatternOptions,
) -> Result<DatasetRecord, NlError> {
    if !(1..=4).contains(&k) {
        return Err(NlError::Invalid(format!("{k} conjuncts requested, expected 1 to 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<&str> = opts.aps.iter().map(String::as_str).collect();
    pool.shuffle(&mut rng);
    let mut remaining = pool.len();
    let mut used = 0;
    let mut conjuncts = Vec::with_capacity(k);
    let mut indices = Vec::with_capacity(k);
    for j in 0..k {
        let pattern = if opts.share_aps {
            let fits: Vec<&Pattern> =
                catalog.patterns.iter().filter(|p| p.formula.aps().len() <= pool.len()).collect();
            fits.choose(&mut rng).copied()
        } else {
            // leave at least one proposition for every later conjunct
            let budget = remaining.saturating_sub(k - j - 1);
            let fits: Vec<&Pattern> =
                catalog.patterns.iter().filter(|p| p.formula.aps().len() <= budget).collect();
            fits.choose(&mut rng).copied()
        };
        let pattern = pattern.ok_or_else(|| {
            NlError::Invalid(format!("catalog cannot fill {k} conjuncts with {} propositions", pool.len()))
        })?;
        let holes = pattern.placeholders();
        let chosen: Vec<&str> = if opts.share_aps {
            pool.choose_multiple(&mut rng, holes.len()).copied().collect()
        } else {
            let c = pool[used..used + holes.len()].to_vec();
            used += holes.len();
            remaining -= holes.len();
            c
        };
        let map: BTreeMap<&str, &str> = holes.iter().map(String::as_str).zip(chosen).collect();
        conjuncts.push(pattern.formula.map_aps(&mut |p| map[p].to_string()));
        indices.push(pattern.index);
    }
    let formula = super::conjunction(conjuncts).expect("k >= 1");
    let nl = ltl_to_nl(&formula, opts.variant, rng.gen())?;
    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), Value::from("ltl-pattern"));
    meta.insert("grammar".into(), Value::from(opts.variant.as_str()));
    meta.insert("seed".into(), Value::from(seed));
    meta.insert("patterns".into(), Value::from(indices));
    meta.insert("aps".into(), Value::from(formula.aps().into_iter().collect::<Vec<_>>()));
    Ok(DatasetRecord::new(Domain::Ltl, nl, print_ltl(&formula), meta))
}

/// `n` distinct records (by sentence and target), each checked to parse back
/// to its target.
pub fn gen_pattern_dataset(
    catalog: &PatternCatalog,
    n: usize,
    seed: u64,
    opts: &PatternOptions,
) -> Result<Vec<DatasetRecord>, NlError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    let budget = n.saturating_mul(20).max(1000);
    let max_k = opts.max_conjuncts.clamp(1, 4);
    for _ in 0..budget {
        if out.len() == n {
            break;
        }
        let k = rng.gen_range(1..=max_k);
        let record = gen_pattern_record(catalog, k, rng.gen(), opts)?;
        if !seen.insert((record.nl.clone(), record.target.clone())) {
            continue;
        }
        let back = nl_to_ltl(&record.nl, opts.variant)?;
        if back != parse_ltl(&record.target)? {
            return Err(NlError::Invalid(format!("{:?} reads back as {back}", record.nl)));
        }
        out.push(record);
    }
    if out.len() < n {
        return Err(NlError::Exhausted { wanted: n, got: out.len() });
    }
    Ok(out)
}
