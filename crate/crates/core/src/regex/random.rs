//! Random syntax trees for property tests and oracle cross-checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::ast::{CharClass, RegexAst};

/// Shape of the generated trees. A small leaf palette keeps the minterm
/// alphabet, and hence exhaustive string enumeration, cheap.
#[derive(Debug, Clone)]
pub struct RandomAstConfig {
    pub max_depth: u32,
    pub literals: Vec<String>,
    pub classes: Vec<CharClass>,
    pub word_boundaries: bool,
    /// Largest `n` in `{n,}` and `{1,n}`.
    pub max_bound: u32,
}

impl Default for RandomAstConfig {
    fn default() -> Self {
        RandomAstConfig {
            max_depth: 5,
            literals: vec!["a".into(), "b".into(), "ab".into()],
            classes: vec![CharClass::new(vec![('a', 'z')]).unwrap()],
            word_boundaries: true,
            max_bound: 3,
        }
    }
}

/// A random tree of depth at most `config.max_depth` (a leaf has depth 0).
pub fn random_ast<R: Rng + ?Sized>(rng: &mut R, config: &RandomAstConfig) -> RegexAst {
    node(rng, config, config.max_depth)
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, config: &RandomAstConfig) -> RegexAst {
    let n = config.literals.len() + config.classes.len() + 1;
    let i = rng.gen_range(0..n);
    if i < config.literals.len() {
        RegexAst::Literal(config.literals[i].clone())
    } else if i < n - 1 {
        RegexAst::Class(config.classes[i - config.literals.len()].clone())
    } else {
        RegexAst::AnyChar
    }
}

fn node<R: Rng + ?Sized>(rng: &mut R, config: &RandomAstConfig, depth: u32) -> RegexAst {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, config);
    }
    let d = depth - 1;
    let sub = |rng: &mut R| Box::new(node(rng, config, d));
    let mut kinds: Vec<u8> = (0..15).collect();
    if !config.word_boundaries {
        kinds.retain(|&k| k != 10);
    }
    match *kinds.choose(rng).unwrap() {
        0 => {
            let n = rng.gen_range(2..=3);
            RegexAst::Concat((0..n).map(|_| *sub(rng)).collect())
        }
        1 => {
            let n = rng.gen_range(2..=3);
            RegexAst::Or((0..n).map(|_| *sub(rng)).collect())
        }
        2 => {
            let n = rng.gen_range(2..=3);
            RegexAst::And((0..n).map(|_| *sub(rng)).collect())
        }
        3 => RegexAst::Not(sub(rng)),
        4 => RegexAst::Star(sub(rng)),
        5 => RegexAst::Plus(sub(rng)),
        6 => {
            let n = rng.gen_range(0..=config.max_bound);
            RegexAst::RepeatAtLeast(sub(rng), n)
        }
        7 => {
            let n = rng.gen_range(1..=config.max_bound.max(1));
            RegexAst::RepeatAtMost(sub(rng), n)
        }
        8 => RegexAst::Contains(sub(rng)),
        9 => RegexAst::StartsWith(sub(rng)),
        10 => RegexAst::WordBounded(sub(rng)),
        11 => RegexAst::EndsWith(sub(rng)),
        12 => {
            let x = sub(rng);
            RegexAst::FollowedBy(x, sub(rng))
        }
        13 => RegexAst::Star(Box::new(RegexAst::AnyChar)),
        _ => leaf(rng, config),
    }
}

/// Depth of a tree; leaves have depth 0.
pub fn depth(ast: &RegexAst) -> u32 {
    ast.children().iter().map(|c| depth(c) + 1).max().unwrap_or(0)
}
