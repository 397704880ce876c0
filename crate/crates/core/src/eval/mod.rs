//! Scoring model predictions against datasets.
//!
//! Syntactic accuracy compares whitespace-canonical text (FOL optionally up
//! to renaming of bound variables). Semantic accuracy, for regexes and LTL,
//! counts a prediction as correct when it denotes the same language as the
//! target.
//!
//! ```
//! use std::collections::BTreeMap;
//! use nl2formal::datasets::{DatasetRecord, Domain};
//! use nl2formal::eval::{evaluate, EvalOptions, Prediction};
//!
//! let r = DatasetRecord::new(Domain::Regex, "lines with a vowel", "(.*[AEIOUaeiou].*)", BTreeMap::new());
//! let p = Prediction::new(&r.id, ".*[AEIOUaeiou].*");
//! let report = evaluate(&[r], &[p], &EvalOptions::default()).unwrap();
//! assert_eq!(report.syntactic_accuracy, 0.0);
//! assert_eq!(report.semantic_accuracy, Some(1.0));
//! ```

mod external;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datasets::{DatasetError, DatasetRecord, Domain};
use crate::fol::{fol_syntactic_equal, parse_fol, parse_fol_formula, FolMode};
use crate::ltl::{self, LtlEquivalence, LtlError, TableauLimits};
use crate::regex::{self, Limits, RegexError};

pub use external::run_external_model;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no prediction for record {0}")]
    MissingPrediction(String),
    #[error("prediction for unknown record {0}")]
    UnknownRecord(String),
    #[error("two predictions for record {0}")]
    DuplicatePrediction(String),
    #[error("record {id}: target does not parse: {msg}")]
    InvalidTarget { id: String, msg: String },
    #[error("dataset mixes {0} and {1} records")]
    MixedDomains(Domain, Domain),
    #[error("{0} has no semantic equivalence check")]
    NoSemantics(Domain),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("predictions line {line}: {msg}")]
    Json { line: usize, msg: String },
    #[error("model process: {0}")]
    Process(String),
    #[error("model produced no output for line {line} within {timeout:?}")]
    Timeout { line: usize, timeout: Duration },
    #[error("model produced {got} lines for {expected} prompts")]
    LineCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

/// The model input for a sentence.
pub fn format_prompt(domain: Domain, nl: &str) -> String {
    let target = match domain {
        Domain::Fol => "FOL",
        Domain::Ltl => "LTL",
        Domain::Regex => "a regular expression",
    };
    format!("translate natural language to {target}: {nl}")
}

/// Trims and collapses whitespace runs to one space.
pub fn canonical_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub id: String,
    pub prediction: String,
}

impl Prediction {
    pub fn new(id: impl Into<String>, prediction: impl Into<String>) -> Self {
        Prediction { id: id.into(), prediction: prediction.into() }
    }
}

pub fn read_predictions(path: &Path) -> Result<Vec<Prediction>, EvalError> {
    let text = fs::read_to_string(path)
        .map_err(|source| EvalError::Io { path: path.display().to_string(), source })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| EvalError::Json { line: i + 1, msg: e.to_string() })
        })
        .collect()
}

pub fn write_predictions(predictions: &[Prediction], path: &Path) -> Result<(), EvalError> {
    let io = |source| EvalError::Io { path: path.display().to_string(), source };
    let mut out = std::io::BufWriter::new(fs::File::create(path).map_err(io)?);
    for p in predictions {
        let line = serde_json::to_string(p).expect("strings serialize");
        writeln!(out, "{line}").map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Outcome for one example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Same text as the target after normalisation.
    SynOk,
    /// Different text, same language.
    SemOk,
    Wrong,
    /// The prediction is not a well-formed formula.
    ParseFail,
    /// The equivalence check ran out of time or states; scored by the
    /// syntactic comparison, which had already failed.
    EquivTimeout,
}

impl Verdict {
    pub fn syntactic(self) -> bool {
        self == Verdict::SynOk
    }

    pub fn semantic(self) -> bool {
        matches!(self, Verdict::SynOk | Verdict::SemOk)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Budget per equivalence check.
    pub timeout_ms: u64,
    /// State cap for regex automata.
    pub max_states: usize,
    /// State cap for the LTL tableau.
    pub max_tableau_states: usize,
    pub fol_mode: FolMode,
    /// Skip equivalence checks and report syntactic accuracy only.
    pub syntactic_only: bool,
    /// Tag for cross-dataset runs, e.g. the training set of the model.
    pub ood: Option<String>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            timeout_ms: 5000,
            max_states: Limits::default().max_states,
            max_tableau_states: TableauLimits::default().max_states,
            fol_mode: FolMode::default(),
            syntactic_only: false,
            ood: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleVerdict {
    pub id: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub domain: Option<Domain>,
    pub n: usize,
    pub syntactic_correct: usize,
    /// `None` when no equivalence check was run.
    pub semantic_correct: Option<usize>,
    pub parse_failures: usize,
    pub equiv_timeouts: usize,
    pub syntactic_accuracy: f64,
    pub semantic_accuracy: Option<f64>,
    pub ood: Option<String>,
    /// In dataset order.
    pub verdicts: Vec<ExampleVerdict>,
}

impl EvalReport {
    fn from_verdicts(
        domain: Option<Domain>,
        semantic: bool,
        ood: Option<String>,
        verdicts: Vec<ExampleVerdict>,
    ) -> Self {
        let n = verdicts.len();
        let count = |f: fn(Verdict) -> bool| verdicts.iter().filter(|v| f(v.verdict)).count();
        let syntactic_correct = count(Verdict::syntactic);
        let semantic_correct = semantic.then(|| count(Verdict::semantic));
        let ratio = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };
        EvalReport {
            domain,
            n,
            syntactic_correct,
            semantic_correct,
            parse_failures: count(|v| v == Verdict::ParseFail),
            equiv_timeouts: count(|v| v == Verdict::EquivTimeout),
            syntactic_accuracy: ratio(syntactic_correct),
            semantic_accuracy: semantic_correct.map(ratio),
            ood,
            verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary table, one metric per row.
    pub fn to_table(&self) -> String {
        let mut t = String::new();
        let domain = self.domain.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(t, "{:<22}{}", "domain", domain);
        if let Some(tag) = &self.ood {
            let _ = writeln!(t, "{:<22}{}", "ood", tag);
        }
        let _ = writeln!(t, "{:<22}{}", "examples", self.n);
        let _ = writeln!(
            t,
            "{:<22}{:.2}% ({}/{})",
            "syntactic accuracy",
            100.0 * self.syntactic_accuracy,
            self.syntactic_correct,
            self.n
        );
        if let (Some(acc), Some(k)) = (self.semantic_accuracy, self.semantic_correct) {
            let _ = writeln!(t, "{:<22}{:.2}% ({}/{})", "semantic accuracy", 100.0 * acc, k, self.n);
        }
        let _ = writeln!(t, "{:<22}{}", "parse failures", self.parse_failures);
        let _ = writeln!(t, "{:<22}{}", "equivalence timeouts", self.equiv_timeouts);
        t
    }
}

/// Scores one prediction. Target parse errors are returned as `Err`.
pub fn score(domain: Domain, target: &str, prediction: &str, opts: &EvalOptions) -> Result<Verdict, String> {
    let semantic = !opts.syntactic_only && domain != Domain::Fol;
    match domain {
        Domain::Fol => {
            if parse_fol(target).is_err() && parse_fol_formula(target).is_err() {
                return Err("not a FOL document or formula".into());
            }
            if fol_syntactic_equal(target, prediction, opts.fol_mode) {
                Ok(Verdict::SynOk)
            } else if parse_fol(prediction).is_err() && parse_fol_formula(prediction).is_err() {
                Ok(Verdict::ParseFail)
            } else {
                Ok(Verdict::Wrong)
            }
        }
        Domain::Regex => {
            let t = regex::parse_regex(target).map_err(|e| e.to_string())?;
            if canonical_whitespace(target) == canonical_whitespace(prediction) {
                return Ok(Verdict::SynOk);
            }
            let Ok(p) = regex::parse_regex(prediction) else {
                return Ok(Verdict::ParseFail);
            };
            if !semantic {
                return Ok(Verdict::Wrong);
            }
            let limits = Limits {
                max_states: opts.max_states,
                deadline: Some(Instant::now() + Duration::from_millis(opts.timeout_ms)),
            };
            match regex::regex_counterexample(&t, &p, &limits) {
                Ok(None) => Ok(Verdict::SemOk),
                Ok(Some(_)) => Ok(Verdict::Wrong),
                Err(RegexError::Timeout | RegexError::Capacity { .. }) => Ok(Verdict::EquivTimeout),
                Err(e) => Err(e.to_string()),
            }
        }
        Domain::Ltl => {
            let t = ltl::parse_ltl(target).map_err(|e| e.to_string())?;
            if canonical_whitespace(target) == canonical_whitespace(prediction) {
                return Ok(Verdict::SynOk);
            }
            let Ok(p) = ltl::parse_ltl(prediction) else {
                return Ok(Verdict::ParseFail);
            };
            if !semantic {
                return Ok(Verdict::Wrong);
            }
            let limits = TableauLimits {
                max_states: opts.max_tableau_states,
                deadline: Some(Instant::now() + Duration::from_millis(opts.timeout_ms)),
            };
            match ltl::ltl_equivalent_with(&t, &p, &limits) {
                Ok(LtlEquivalence::Equivalent) => Ok(Verdict::SemOk),
                Ok(LtlEquivalence::Inequivalent(_)) => Ok(Verdict::Wrong),
                Err(LtlError::Timeout | LtlError::Capacity(_)) => Ok(Verdict::EquivTimeout),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

/// Scores every record. Predictions must cover the dataset exactly once.
pub fn evaluate(
    records: &[DatasetRecord],
    predictions: &[Prediction],
    opts: &EvalOptions,
) -> Result<EvalReport, EvalError> {
    let domain = records.first().map(|r| r.domain);
    if let Some(d) = domain {
        if let Some(other) = records.iter().find(|r| r.domain != d) {
            return Err(EvalError::MixedDomains(d, other.domain));
        }
    }
    let ids: HashSet<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let mut by_id: HashMap<&str, &str> = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if !ids.contains(p.id.as_str()) {
            return Err(EvalError::UnknownRecord(p.id.clone()));
        }
        if by_id.insert(&p.id, &p.prediction).is_some() {
            return Err(EvalError::DuplicatePrediction(p.id.clone()));
        }
    }
    let mut verdicts = Vec::with_capacity(records.len());
    for r in records {
        let prediction =
            by_id.get(r.id.as_str()).ok_or_else(|| EvalError::MissingPrediction(r.id.clone()))?;
        let verdict = score(r.domain, &r.target, prediction, opts)
            .map_err(|msg| EvalError::InvalidTarget { id: r.id.clone(), msg })?;
        verdicts.push(ExampleVerdict { id: r.id.clone(), verdict });
    }
    let semantic = !opts.syntactic_only && domain.is_some_and(|d| d != Domain::Fol);
    Ok(EvalReport::from_verdicts(domain, semantic, opts.ood.clone(), verdicts))
}

pub fn syntactic_accuracy(records: &[DatasetRecord], predictions: &[Prediction]) -> Result<f64, EvalError> {
    let opts = EvalOptions { syntactic_only: true, ..EvalOptions::default() };
    Ok(evaluate(records, predictions, &opts)?.syntactic_accuracy)
}

pub fn semantic_accuracy(records: &[DatasetRecord], predictions: &[Prediction]) -> Result<f64, EvalError> {
    if let Some(r) = records.iter().find(|r| r.domain == Domain::Fol) {
        return Err(EvalError::NoSemantics(r.domain));
    }
    let report = evaluate(records, predictions, &EvalOptions::default())?;
    Ok(report.semantic_accuracy.unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    use super::*;

    fn rec(domain: Domain, nl: &str, target: &str) -> DatasetRecord {
        DatasetRecord::new(domain, nl, target, BTreeMap::new())
    }

    fn copy(records: &[DatasetRecord]) -> Vec<Prediction> {
        records.iter().map(|r| Prediction::new(&r.id, &r.target)).collect()
    }

    #[test]
    fn prompts() {
        assert_eq!(format_prompt(Domain::Ltl, "a holds"), "translate natural language to LTL: a holds");
        assert_eq!(
            format_prompt(Domain::Regex, "lines with 'dog'"),
            "translate natural language to a regular expression: lines with 'dog'"
        );
        assert_eq!(format_prompt(Domain::Fol, ""), "translate natural language to FOL: ");
    }

    #[test]
    fn whitespace() {
        assert_eq!(canonical_whitespace("  G  (a ->\tb) "), "G (a -> b)");
    }

    #[test]
    fn syntactic_ratios() {
        let rs = vec![rec(Domain::Ltl, "a holds", "a"), rec(Domain::Ltl, "b holds", "b")];
        assert_eq!(syntactic_accuracy(&rs, &copy(&rs)).unwrap(), 1.0);
        let none: Vec<_> = rs.iter().map(|r| Prediction::new(&r.id, "c")).collect();
        assert_eq!(syntactic_accuracy(&rs, &none).unwrap(), 0.0);
        let half = vec![Prediction::new(&rs[0].id, " a "), Prediction::new(&rs[1].id, "c")];
        assert_eq!(syntactic_accuracy(&rs, &half).unwrap(), 0.5);
    }

    #[test]
    fn vowel_example_is_semantically_correct() {
        let r = rec(Domain::Regex, "lines with 7 words containing a vowel", "((..*[AEIOUaeiou].*)(.*)){7,}");
        let p = Prediction::new(&r.id, "((..*[AEIOUaeiou].*){7,})(.*)");
        let report = evaluate(&[r], &[p], &EvalOptions::default()).unwrap();
        assert_eq!(report.verdicts[0].verdict, Verdict::SemOk);
        assert_eq!(report.semantic_accuracy, Some(1.0));
        assert_eq!(report.syntactic_accuracy, 0.0);
    }

    #[test]
    fn verdicts() {
        let o = EvalOptions::default();
        assert_eq!(score(Domain::Regex, "(a)|(b)", "(a)|(b)", &o), Ok(Verdict::SynOk));
        assert_eq!(score(Domain::Regex, "(a)|(b)", "(b)|(a)", &o), Ok(Verdict::SemOk));
        assert_eq!(score(Domain::Regex, "(a)|(b)", "(a)", &o), Ok(Verdict::Wrong));
        assert_eq!(score(Domain::Regex, "(a)|(b)", "((a)", &o), Ok(Verdict::ParseFail));
        assert_eq!(score(Domain::Ltl, "F a", "true U a", &o), Ok(Verdict::SemOk));
        assert_eq!(score(Domain::Ltl, "F a", "G a", &o), Ok(Verdict::Wrong));
        assert_eq!(score(Domain::Ltl, "F a", "F (", &o), Ok(Verdict::ParseFail));
        assert!(score(Domain::Ltl, "F (", "F a", &o).is_err());
        let syn = EvalOptions { syntactic_only: true, ..o.clone() };
        assert_eq!(score(Domain::Ltl, "F a", "true U a", &syn), Ok(Verdict::Wrong));
    }

    #[test]
    fn exhausted_budget_falls_back() {
        let tight = EvalOptions { max_states: 2, max_tableau_states: 2, ..EvalOptions::default() };
        assert_eq!(score(Domain::Regex, "(a)|(b)", "(b)|(a)", &tight), Ok(Verdict::EquivTimeout));
        assert_eq!(score(Domain::Regex, "(a)|(b)", "(a)|(b)", &tight), Ok(Verdict::SynOk));
        assert_eq!(score(Domain::Ltl, "G (a -> F b)", "G (!a | F b)", &tight), Ok(Verdict::EquivTimeout));
        let r = rec(Domain::Regex, "x", "(a)|(b)");
        let report =
            evaluate(std::slice::from_ref(&r), &[Prediction::new(&r.id, "(b)|(a)")], &tight).unwrap();
        assert_eq!(report.equiv_timeouts, 1);
        assert_eq!(report.semantic_correct, Some(0));
    }

    #[test]
    fn prediction_coverage() {
        let rs = vec![rec(Domain::Ltl, "a holds", "a"), rec(Domain::Ltl, "b holds", "b")];
        let o = EvalOptions::default();
        assert!(matches!(
            evaluate(&rs, &copy(&rs)[..1], &o),
            Err(EvalError::MissingPrediction(id)) if id == rs[1].id
        ));
        let mut extra = copy(&rs);
        extra.push(Prediction::new("nope", "a"));
        assert!(matches!(evaluate(&rs, &extra, &o), Err(EvalError::UnknownRecord(_))));
        let mut dup = copy(&rs);
        dup.push(dup[0].clone());
        assert!(matches!(evaluate(&rs, &dup, &o), Err(EvalError::DuplicatePrediction(_))));
        let mixed = vec![rs[0].clone(), rec(Domain::Regex, "x", "(a)")];
        assert!(matches!(evaluate(&mixed, &copy(&mixed), &o), Err(EvalError::MixedDomains(..))));
    }

    #[test]
    fn fol_is_syntactic_only() {
        let target = "fol(1,some(A,and(port(A),available(A))))";
        let r = rec(Domain::Fol, "choose an available port", target);
        let report =
            evaluate(std::slice::from_ref(&r), &copy(std::slice::from_ref(&r)), &EvalOptions::default())
                .unwrap();
        assert_eq!(report.syntactic_accuracy, 1.0);
        assert_eq!(report.semantic_accuracy, None);
        assert!(matches!(
            semantic_accuracy(std::slice::from_ref(&r), &copy(std::slice::from_ref(&r))),
            Err(EvalError::NoSemantics(_))
        ));
        let o = EvalOptions::default();
        assert_eq!(score(Domain::Fol, target, "fol(1,some(", &o), Ok(Verdict::ParseFail));
        let alpha = EvalOptions { fol_mode: FolMode::Alpha, ..o.clone() };
        let renamed = "fol(1,some(B,and(port(B),available(B))))";
        assert_eq!(score(Domain::Fol, target, renamed, &o), Ok(Verdict::Wrong));
        assert_eq!(score(Domain::Fol, target, renamed, &alpha), Ok(Verdict::SynOk));
    }

    #[test]
    fn report_round_trips_and_tables() {
        let rs = vec![rec(Domain::Ltl, "a holds", "a"), rec(Domain::Ltl, "Eventually a holds", "F a")];
        let preds = vec![Prediction::new(&rs[0].id, "a"), Prediction::new(&rs[1].id, "true U a")];
        let opts = EvalOptions { ood: Some("ltl-synthesis".into()), ..EvalOptions::default() };
        let report = evaluate(&rs, &preds, &opts).unwrap();
        let back: EvalReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert_eq!(evaluate(&rs, &preds, &opts).unwrap(), report);
        let table = report.to_table();
        assert!(table.contains("syntactic accuracy    50.00% (1/2)"), "{table}");
        assert!(table.contains("semantic accuracy     100.00% (2/2)"), "{table}");
        assert!(table.contains("ood                   ltl-synthesis"));
        let empty = evaluate(&[], &[], &opts).unwrap();
        assert_eq!((empty.n, empty.syntactic_accuracy), (0, 0.0));
    }

    #[test]
    fn predictions_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.jsonl");
        let ps = vec![Prediction::new("a1", "G a"), Prediction::new("b2", "x\ny")];
        write_predictions(&ps, &path).unwrap();
        assert_eq!(read_predictions(&path).unwrap(), ps);
        fs::write(&path, "{\"id\":\"a\",\"prediction\":\"b\"}\n\n{\"id\":1}\n").unwrap();
        assert!(matches!(read_predictions(&path), Err(EvalError::Json { line: 3, .. })));
    }

    proptest! {
        #[test]
        fn semantic_never_below_syntactic(
            picks in proptest::collection::vec((0usize..6, 0usize..6), 1..12)
        ) {
            let pool = ["a", "F a", "G a", "a U b", "true U a", "!F !a"];
            let rs: Vec<DatasetRecord> = picks
                .iter()
                .enumerate()
                .map(|(i, &(t, _))| rec(Domain::Ltl, &format!("s{i}"), pool[t]))
                .collect();
            let ps: Vec<Prediction> = rs
                .iter()
                .zip(&picks)
                .map(|(r, &(_, p))| Prediction::new(&r.id, pool[p]))
                .collect();
            let report = evaluate(&rs, &ps, &EvalOptions::default()).unwrap();
            prop_assert!(report.semantic_correct.unwrap() >= report.syntactic_correct);
            prop_assert!(report.semantic_accuracy.unwrap() <= 1.0);
        }
    }
}
