//! Assumption/guarantee specifications and their single-formula form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{ltl_to_nl, GrammarVariant, NlError};
use crate::datasets::{DatasetRecord, Domain};
use crate::ltl::{parse_ltl, print_ltl, LtlFormula};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynthesisSpec {
    pub assumptions: Vec<LtlFormula>,
    pub guarantees: Vec<LtlFormula>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(default)]
    assumptions: Vec<String>,
    #[serde(default)]
    guarantees: Vec<String>,
    #[serde(default)]
    inputs: Vec<String>,
    #[serde(default)]
    outputs: Vec<String>,
}

impl SynthesisSpec {
    /// Reads `{"assumptions": [..], "guarantees": [..], "inputs": [..],
    /// "outputs": [..]}` with formulas as strings.
    pub fn from_json(text: &str) -> Result<Self, NlError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| NlError::Invalid(e.to_string()))?;
        let parse = |v: &[String]| v.iter().map(|s| parse_ltl(s)).collect::<Result<Vec<_>, _>>();
        let spec = SynthesisSpec {
            assumptions: parse(&raw.assumptions)?,
            guarantees: parse(&raw.guarantees)?,
            inputs: raw.inputs,
            outputs: raw.outputs,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let print = |v: &[LtlFormula]| v.iter().map(print_ltl).collect();
        let raw = RawSpec {
            assumptions: print(&self.assumptions),
            guarantees: print(&self.guarantees),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        };
        serde_json::to_string(&raw).expect("strings serialize")
    }

    /// When inputs or outputs are declared, every proposition must be one of
    /// them.
    pub fn validate(&self) -> Result<(), NlError> {
        if self.inputs.is_empty() && self.outputs.is_empty() {
            return Ok(());
        }
        if let Some(p) = self.inputs.iter().find(|p| self.outputs.contains(p)) {
            return Err(NlError::Invalid(format!("{p:?} is both an input and an output")));
        }
        for f in self.assumptions.iter().chain(&self.guarantees) {
            for p in f.aps() {
                if !self.inputs.contains(&p) && !self.outputs.contains(&p) {
                    return Err(NlError::Invalid(format!("{p:?} is not a declared input or output")));
                }
            }
        }
        Ok(())
    }
}

/// Right-nested conjunction, `None` for an empty list.
pub fn conjunction(fs: impl IntoIterator<Item = LtlFormula>) -> Option<LtlFormula> {
    let fs: Vec<LtlFormula> = fs.into_iter().collect();
    fs.into_iter().rev().reduce(|acc, f| LtlFormula::and(f, acc))
}

/// `assumptions -> guarantees`, each side conjoined. Without assumptions this
/// is the guarantee conjunction; without guarantees it is `true`.
pub fn combine_synthesis_spec(spec: &SynthesisSpec) -> LtlFormula {
    let Some(g) = conjunction(spec.guarantees.iter().cloned()) else {
        return LtlFormula::True;
    };
    match conjunction(spec.assumptions.iter().cloned()) {
        Some(a) => LtlFormula::implies(a, g),
        None => g,
    }
}

pub fn synthesis_record(
    spec: &SynthesisSpec,
    variant: GrammarVariant,
    seed: u64,
) -> Result<DatasetRecord, NlError> {
    spec.validate()?;
    let f = combine_synthesis_spec(spec);
    let nl = ltl_to_nl(&f, variant, seed)?;
    let mut meta = BTreeMap::new();
    meta.insert("generator".into(), Value::from("ltl-synthesis"));
    meta.insert("grammar".into(), Value::from(variant.as_str()));
    meta.insert("seed".into(), Value::from(seed));
    meta.insert("assumptions".into(), Value::from(spec.assumptions.len()));
    meta.insert("guarantees".into(), Value::from(spec.guarantees.len()));
    Ok(DatasetRecord::new(Domain::Ltl, nl, print_ltl(&f), meta))
}
