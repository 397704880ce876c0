//! Ultimately periodic traces, evaluation and brute-force enumeration.

use std::collections::BTreeMap;
use std::fmt;

use super::ast::LtlFormula;
use super::LtlError;

/// The infinite word `prefix · period^ω`. Each step is a bit set over `aps`
/// (bit `i` set iff `aps[i]` holds).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trace {
    pub aps: Vec<String>,
    pub prefix: Vec<u64>,
    pub period: Vec<u64>,
}

impl Trace {
    pub fn new(aps: Vec<String>, prefix: Vec<u64>, period: Vec<u64>) -> Result<Self, LtlError> {
        if period.is_empty() {
            return Err(LtlError::EmptyPeriod);
        }
        if aps.len() > 64 {
            return Err(LtlError::Capacity("more than 64 propositions".into()));
        }
        Ok(Trace { aps, prefix, period })
    }

    /// Builds a trace from explicit assignments; propositions listed in
    /// `aps` but missing from an assignment are false.
    pub fn from_assignments(
        aps: &[&str],
        prefix: &[&[(&str, bool)]],
        period: &[&[(&str, bool)]],
    ) -> Result<Self, LtlError> {
        let index: BTreeMap<&str, usize> = aps.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let step = |assign: &[(&str, bool)]| -> Result<u64, LtlError> {
            let mut bits = 0u64;
            for &(name, v) in assign {
                let i = *index.get(name).ok_or_else(|| LtlError::MissingAp(name.to_string()))?;
                if v {
                    bits |= 1 << i;
                }
            }
            Ok(bits)
        };
        Trace::new(
            aps.iter().map(|s| s.to_string()).collect(),
            prefix.iter().map(|s| step(s)).collect::<Result<_, _>>()?,
            period.iter().map(|s| step(s)).collect::<Result<_, _>>()?,
        )
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Assignment at position `i` of the infinite word.
    pub fn step(&self, i: usize) -> u64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn assignment(&self, i: usize) -> BTreeMap<String, bool> {
        let bits = self.step(i);
        self.aps.iter().enumerate().map(|(j, a)| (a.clone(), bits >> j & 1 == 1)).collect()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps = |f: &mut fmt::Formatter<'_>, steps: &[u64]| -> fmt::Result {
            f.write_str("[")?;
            for (i, bits) in steps.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str("{")?;
                for (j, a) in self.aps.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}:{}", bits >> j & 1)?;
                }
                f.write_str("}")?;
            }
            f.write_str("]")
        };
        f.write_str("prefix=")?;
        steps(f, &self.prefix)?;
        f.write_str(", period=")?;
        steps(f, &self.period)
    }
}

#[derive(Clone, Copy)]
enum Op {
    Ap(u32),
    True,
    False,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Equiv(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
    Finally(usize),
    Globally(usize),
}

/// A formula prepared for repeated evaluation over traces with a fixed
/// proposition list.
pub struct Evaluator {
    ops: Vec<Op>,
}

impl Evaluator {
    pub fn new(f: &LtlFormula, aps: &[String]) -> Result<Self, LtlError> {
        let mut ops = Vec::new();
        build(f, aps, &mut ops)?;
        Ok(Evaluator { ops })
    }

    /// Truth of the formula at position 0 of `t`, whose `aps` must be the
    /// list the evaluator was built with.
    pub fn eval(&self, t: &Trace) -> bool {
        let n = t.len();
        let loop_start = t.prefix.len();
        let succ = |i: usize| if i + 1 < n { i + 1 } else { loop_start };
        let mut vals: Vec<Vec<bool>> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v: Vec<bool> = match *op {
                Op::Ap(j) => (0..n).map(|i| t.step(i) >> j & 1 == 1).collect(),
                Op::True => vec![true; n],
                Op::False => vec![false; n],
                Op::Not(x) => vals[x].iter().map(|v| !v).collect(),
                Op::And(x, y) => zip(&vals[x], &vals[y], |a, b| a && b),
                Op::Or(x, y) => zip(&vals[x], &vals[y], |a, b| a || b),
                Op::Implies(x, y) => zip(&vals[x], &vals[y], |a, b| !a || b),
                Op::Equiv(x, y) => zip(&vals[x], &vals[y], |a, b| a == b),
                Op::Next(x) => (0..n).map(|i| vals[x][succ(i)]).collect(),
                Op::Until(x, y) => fixpoint(n, false, &succ, |i, next| vals[y][i] || (vals[x][i] && next)),
                Op::Release(x, y) => fixpoint(n, true, &succ, |i, next| vals[y][i] && (vals[x][i] || next)),
                Op::Finally(x) => fixpoint(n, false, &succ, |i, next| vals[x][i] || next),
                Op::Globally(x) => fixpoint(n, true, &succ, |i, next| vals[x][i] && next),
            };
            vals.push(v);
        }
        vals.last().is_some_and(|v| v[0])
    }
}

fn zip(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

// Least (init false) or greatest (init true) fixpoint of v[i] = step(i, v[succ i]).
fn fixpoint(
    n: usize,
    init: bool,
    succ: &impl Fn(usize) -> usize,
    step: impl Fn(usize, bool) -> bool,
) -> Vec<bool> {
    let mut v = vec![init; n];
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let new = step(i, v[succ(i)]);
            if new != v[i] {
                v[i] = new;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

fn build(f: &LtlFormula, aps: &[String], ops: &mut Vec<Op>) -> Result<usize, LtlError> {
    use LtlFormula as L;
    let un = |x: &LtlFormula, ops: &mut Vec<Op>| build(x, aps, ops);
    let op = match f {
        L::Ap(a) => {
            let j = aps.iter().position(|x| x == a).ok_or_else(|| LtlError::MissingAp(a.clone()))?;
            Op::Ap(j as u32)
        }
        L::True => Op::True,
        L::False => Op::False,
        L::Not(x) => Op::Not(un(x, ops)?),
        L::Next(x) => Op::Next(un(x, ops)?),
        L::Finally(x) => Op::Finally(un(x, ops)?),
        L::Globally(x) => Op::Globally(un(x, ops)?),
        L::And(x, y) => Op::And(un(x, ops)?, un(y, ops)?),
        L::Or(x, y) => Op::Or(un(x, ops)?, un(y, ops)?),
        L::Implies(x, y) => Op::Implies(un(x, ops)?, un(y, ops)?),
        L::Equiv(x, y) => Op::Equiv(un(x, ops)?, un(y, ops)?),
        L::Until(x, y) => Op::Until(un(x, ops)?, un(y, ops)?),
        L::Release(x, y) => Op::Release(un(x, ops)?, un(y, ops)?),
    };
    ops.push(op);
    Ok(ops.len() - 1)
}

/// Standard LTL semantics of `f` on `t`.
pub fn eval_trace(f: &LtlFormula, t: &Trace) -> Result<bool, LtlError> {
    Ok(Evaluator::new(f, &t.aps)?.eval(t))
}

/// Every ultimately periodic word over `aps` with a lasso of at most
/// `max_prefix` + `max_period` steps, each listed once in its shortest form:
/// the period is primitive and the prefix cannot be shortened by rotating
/// the period.
pub fn enumerate_traces(aps: &[String], max_prefix: usize, max_period: usize) -> impl Iterator<Item = Trace> {
    let aps = aps.to_vec();
    assert!(aps.len() <= 16, "trace enumeration is an oracle for small alphabets");
    let letters = 1u64 << aps.len();
    (0..=max_prefix).flat_map(move |p| (1..=max_period).map(move |q| (p, q))).flat_map(move |(p, q)| {
        let aps = aps.clone();
        let total = letters.pow((p + q) as u32);
        (0..total).filter_map(move |code| {
            let mut c = code;
            let mut word = Vec::with_capacity(p + q);
            for _ in 0..p + q {
                word.push(c % letters);
                c /= letters;
            }
            let period = word.split_off(p);
            let canonical = is_primitive(&period) && word.last().is_none_or(|l| l != period.last().unwrap());
            canonical.then(|| Trace { aps: aps.clone(), prefix: word, period })
        })
    })
}

fn is_primitive(w: &[u64]) -> bool {
    let n = w.len();
    (1..n).filter(|&d| n.is_multiple_of(d)).all(|d| (0..n).any(|i| w[i] != w[i % d]))
}
