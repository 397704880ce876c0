//! The `nl2formal` command line.
//!
//! Exit codes: 0 success (or equivalent), 1 a negative domain result
//! (inequivalent, records that could not be perturbed), 2 usage or runtime
//! errors.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::datasets::{self, noun_pool, substitute_nouns, DatasetRecord, Domain, SplitSpec};
use crate::eval::{self, EvalOptions};
use crate::fol::{self, FolMode};
use crate::ltl::{self, LtlEquivalence, TableauLimits};
use crate::nlgen::{self, GrammarVariant, PatternCatalog, PatternOptions, SynthesisSpec};
use crate::regex::{self, Limits};

#[derive(Parser, Debug)]
#[command(
    name = "nl2formal",
    version,
    about = "Datasets, equivalence checks and scoring for NL to regex/FOL/LTL"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// regex, fol or ltl (parse also accepts nl).
    #[arg(long, global = true)]
    domain: Option<String>,
    /// Sentence grammar: base or enriched.
    #[arg(long, global = true)]
    grammar: Option<GrammarVariant>,
    /// Train/validation/test ratios.
    #[arg(long, global = true)]
    ratios: Option<String>,
    /// Budget per equivalence check or per model output line.
    #[arg(long = "timeout-ms", global = true)]
    timeout_ms: Option<u64>,
    /// Output file (directory for split). Defaults to standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with defaults for the options above; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate an LTL dataset.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Build an out-of-distribution copy of a dataset.
    Perturb {
        kind: PerturbKind,
        input: PathBuf,
        /// Explicit replacements, e.g. `dog=time,truck=eye` or `a=x,b=y`.
        #[arg(long)]
        mapping: Option<String>,
    },
    /// Shuffle a dataset and cut it into train.jsonl, val.jsonl, test.jsonl.
    Split { input: PathBuf },
    /// Score a predictions file against a dataset.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        /// FOL comparison: exact or alpha.
        #[arg(long)]
        fol_mode: Option<FolMode>,
        /// Tag the report as a cross-dataset run.
        #[arg(long)]
        ood: Option<String>,
        #[arg(long)]
        syntactic_only: bool,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two regexes or LTL formulas are equivalent.
    Equiv { a: String, b: String },
    /// Parse and print a regex, LTL or FOL formula, or a sentence.
    Parse { text: String },
    /// Pipe a dataset's prompts through an external model.
    RunModel {
        #[arg(long)]
        dataset: PathBuf,
        /// Program and arguments.
        #[arg(required = true, trailing_var_arg = true, allow_hyphen_values = true)]
        command: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Conjunctions of up to four specification patterns.
    LtlPattern {
        #[arg(short, long)]
        n: usize,
        /// Let conjuncts share propositions.
        #[arg(long)]
        share_aps: bool,
        /// Pattern file, one formula over a..e per line.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// One record per assumption/guarantee spec (JSON lines).
    LtlSynthesis {
        input: PathBuf,
        #[arg(short, long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PerturbKind {
    /// Swap quoted nouns in regex records.
    Nouns,
    /// Rename propositions in LTL records.
    Variables,
    /// Re-render LTL sentences, by default with the enriched grammar.
    Operators,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    seed: Option<u64>,
    domain: Option<String>,
    grammar: Option<String>,
    ratios: Option<String>,
    timeout_ms: Option<u64>,
    max_states: Option<usize>,
    fol_mode: Option<String>,
}

struct Settings {
    seed: u64,
    domain: Option<String>,
    grammar: Option<GrammarVariant>,
    ratios: String,
    timeout_ms: u64,
    max_states: usize,
    fol_mode: FolMode,
    out: Option<PathBuf>,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                toml::from_str::<ConfigFile>(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => ConfigFile::default(),
        };
        let grammar = match (cli.grammar, &file.grammar) {
            (Some(g), _) => Some(g),
            (None, Some(s)) => Some(s.parse().map_err(anyhow::Error::msg)?),
            (None, None) => None,
        };
        let fol_mode = match &file.fol_mode {
            Some(s) => s.parse().map_err(anyhow::Error::msg)?,
            None => FolMode::default(),
        };
        Ok(Settings {
            seed: cli.seed.or(file.seed).unwrap_or(0),
            domain: cli.domain.clone().or(file.domain),
            grammar,
            ratios: cli.ratios.clone().or(file.ratios).unwrap_or_else(|| "0.9,0.05,0.05".into()),
            timeout_ms: cli.timeout_ms.or(file.timeout_ms).unwrap_or(5000),
            max_states: file.max_states.unwrap_or(Limits::default().max_states),
            fol_mode,
            out: cli.out.clone(),
        })
    }

    fn domain(&self) -> Result<Domain> {
        match &self.domain {
            Some(d) => d.parse().map_err(anyhow::Error::msg),
            None => bail!("--domain is required"),
        }
    }

    fn grammar(&self) -> GrammarVariant {
        self.grammar.unwrap_or_default()
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{text}");
                0
            } else {
                let _ = write!(stderr, "{text}");
                2
            };
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let s = Settings::resolve(cli)?;
    match &cli.cmd {
        Cmd::Gen { kind } => gen(kind, &s, stdout),
        Cmd::Perturb { kind, input, mapping } => {
            perturb(*kind, input, mapping.as_deref(), &s, stdout, stderr)
        }
        Cmd::Split { input } => split(input, &s, stdout),
        Cmd::Eval { dataset, predictions, fol_mode, ood, syntactic_only, json } => {
            let records = datasets::read_jsonl(dataset)?;
            let preds = eval::read_predictions(predictions)?;
            let opts = EvalOptions {
                timeout_ms: s.timeout_ms,
                max_states: s.max_states,
                fol_mode: fol_mode.unwrap_or(s.fol_mode),
                syntactic_only: *syntactic_only,
                ood: ood.clone(),
                ..EvalOptions::default()
            };
            let report = eval::evaluate(&records, &preds, &opts)?;
            if let Some(p) = &s.out {
                fs::write(p, report.to_json() + "\n").with_context(|| format!("writing {}", p.display()))?;
            }
            if *json {
                writeln!(stdout, "{}", report.to_json())?;
            } else {
                write!(stdout, "{}", report.to_table())?;
            }
            Ok(0)
        }
        Cmd::Equiv { a, b } => equiv(a, b, &s, stdout),
        Cmd::Parse { text } => parse(text, &s, stdout),
        Cmd::RunModel { dataset, command } => {
            let records = datasets::read_jsonl(dataset)?;
            let preds = eval::run_external_model(
                &command[0],
                &command[1..],
                &records,
                Duration::from_millis(s.timeout_ms),
            )?;
            let mut text = String::new();
            for p in &preds {
                text.push_str(&serde_json::to_string(p)?);
                text.push('\n');
            }
            emit(&s, stdout, &text)?;
            Ok(0)
        }
    }
}

fn jsonl(records: &[DatasetRecord]) -> Result<String> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r)?);
        text.push('\n');
    }
    Ok(text)
}

fn emit(s: &Settings, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match &s.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn gen(kind: &GenKind, s: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    let records = match kind {
        GenKind::LtlPattern { n, share_aps, catalog } => {
            let catalog = match catalog {
                Some(p) => PatternCatalog::parse(
                    &fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                )?,
                None => nlgen::pattern_catalog(),
            };
            let opts =
                PatternOptions { variant: s.grammar(), share_aps: *share_aps, ..PatternOptions::default() };
            nlgen::gen_pattern_dataset(&catalog, *n, s.seed, &opts)?
        }
        GenKind::LtlSynthesis { input, n } => {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let mut records = Vec::new();
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                if n.is_some_and(|n| records.len() >= n) {
                    break;
                }
                let spec = SynthesisSpec::from_json(line)
                    .with_context(|| format!("{} line {}", input.display(), i + 1))?;
                let r = nlgen::synthesis_record(&spec, s.grammar(), rng.gen())
                    .with_context(|| format!("{} line {}", input.display(), i + 1))?;
                let back = nlgen::nl_to_ltl(&r.nl, s.grammar())?;
                if back != ltl::parse_ltl(&r.target)? {
                    bail!("line {}: sentence reads back as {back}", i + 1);
                }
                records.push(r);
            }
            datasets::dedup(records)
        }
    };
    emit(s, stdout, &jsonl(&records)?)?;
    Ok(0)
}

fn parse_mapping(text: &str) -> Result<BTreeMap<String, String>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|pair| match pair.split_once('=') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => bail!("mapping entry {pair:?} is not of the form from=to"),
        })
        .collect()
}

// replaces every pool noun quoted in the sentence by a pool noun the record
// does not already use
fn random_noun_mapping(record: &DatasetRecord, rng: &mut ChaCha8Rng) -> BTreeMap<String, String> {
    let pool = noun_pool();
    let present: BTreeSet<&str> =
        pool.iter().copied().filter(|n| record.nl.contains(&format!("'{n}'"))).collect();
    let mut fresh: Vec<&str> = pool.iter().copied().filter(|n| !present.contains(n)).collect();
    fresh.shuffle(rng);
    present.iter().zip(fresh).map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn perturb(
    kind: PerturbKind,
    input: &Path,
    mapping: Option<&str>,
    s: &Settings,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let records = datasets::read_jsonl(input)?;
    let mapping = mapping.map(parse_mapping).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = Vec::with_capacity(records.len());
    let mut failures = 0;
    for r in &records {
        let result: Result<DatasetRecord> = match kind {
            PerturbKind::Nouns => {
                let m = match &mapping {
                    Some(m) => m.clone(),
                    None => random_noun_mapping(r, &mut rng),
                };
                substitute_nouns(r, &m).map_err(Into::into)
            }
            PerturbKind::Variables => nlgen::rename_aps(r, mapping.as_ref(), rng.gen()).map_err(Into::into),
            PerturbKind::Operators => {
                let variant = s.grammar.unwrap_or(GrammarVariant::Enriched);
                nlgen::rephrase(r, variant, rng.gen()).map_err(Into::into)
            }
        };
        match result {
            Ok(p) => out.push(p),
            Err(e) => {
                failures += 1;
                writeln!(stderr, "record {}: {e}", r.id)?;
            }
        }
    }
    emit(s, stdout, &jsonl(&out)?)?;
    Ok(if failures > 0 { 1 } else { 0 })
}

fn split(input: &Path, s: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    let Some(dir) = &s.out else {
        bail!("split needs --out DIR");
    };
    let records = datasets::read_jsonl(input)?;
    let spec = SplitSpec::parse_ratios(&s.ratios, s.seed)?;
    let parts = datasets::make_split(&records, &spec);
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, part) in [("train", &parts.train), ("val", &parts.val), ("test", &parts.test)] {
        datasets::write_jsonl(part, &dir.join(format!("{name}.jsonl")))?;
        writeln!(stdout, "{name}\t{}", part.len())?;
    }
    Ok(0)
}

fn equiv(a: &str, b: &str, s: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    let deadline = Some(Instant::now() + Duration::from_millis(s.timeout_ms));
    match s.domain()? {
        Domain::Regex => {
            let (x, y) = (regex::parse_regex(a)?, regex::parse_regex(b)?);
            let limits = Limits { max_states: s.max_states, deadline };
            match regex::regex_counterexample(&x, &y, &limits)? {
                None => {
                    writeln!(stdout, "Equivalent")?;
                    Ok(0)
                }
                Some(w) => {
                    writeln!(stdout, "Inequivalent")?;
                    writeln!(stdout, "witness: {w:?}")?;
                    Ok(1)
                }
            }
        }
        Domain::Ltl => {
            let (x, y) = (ltl::parse_ltl(a)?, ltl::parse_ltl(b)?);
            let limits = TableauLimits { deadline, ..TableauLimits::default() };
            match ltl::ltl_equivalent_with(&x, &y, &limits)? {
                LtlEquivalence::Equivalent => {
                    writeln!(stdout, "Equivalent")?;
                    Ok(0)
                }
                LtlEquivalence::Inequivalent(t) => {
                    writeln!(stdout, "Inequivalent")?;
                    writeln!(stdout, "witness: {t}")?;
                    Ok(1)
                }
            }
        }
        Domain::Fol => bail!("fol has no equivalence check; use eval for syntactic comparison"),
    }
}

fn parse(text: &str, s: &Settings, stdout: &mut dyn Write) -> Result<i32> {
    match s.domain.as_deref() {
        Some("nl") => {
            let f = nlgen::nl_to_ltl(text, s.grammar())?;
            writeln!(stdout, "{f}")?;
        }
        _ => match s.domain()? {
            Domain::Regex => {
                let ast = regex::parse_regex(text)?;
                writeln!(stdout, "{ast}\n{ast:#?}")?;
            }
            Domain::Ltl => {
                let f = ltl::parse_ltl(text)?;
                writeln!(stdout, "{f}\n{f:#?}")?;
            }
            Domain::Fol => match fol::parse_fol(text) {
                Ok(doc) => writeln!(stdout, "{doc}\n{doc:#?}")?,
                Err(e) => {
                    let f = fol::parse_fol_formula(text).map_err(|_| e)?;
                    writeln!(stdout, "{f}\n{f:#?}")?;
                }
            },
        },
    }
    Ok(0)
}
