//! Satisfiability by tableau: a generalised Büchi automaton whose states are
//! sets of NNF obligations for the current step, explored on the fly, then an
//! SCC search for a reachable cycle that fulfils every until.

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use super::ast::LtlFormula;
use super::nnf::to_nnf;
use super::trace::Trace;
use super::LtlError;

/// Resource bounds for the tableau.
#[derive(Debug, Clone, Copy)]
pub struct TableauLimits {
    pub max_states: usize,
    pub deadline: Option<Instant>,
}

impl Default for TableauLimits {
    fn default() -> Self {
        TableauLimits { max_states: 1 << 20, deadline: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Trace),
    Unsat,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(u32, u32),
    Or(u32, u32),
    Next(u32),
    Until(u32, u32),
    Release(u32, u32),
}

struct Closure {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    // acceptance bit of each until node
    until_bit: HashMap<u32, u32>,
}

impl Closure {
    fn intern(&mut self, n: Node) -> Result<u32, LtlError> {
        if let Some(&id) = self.ids.get(&n) {
            return Ok(id);
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.ids.insert(n, id);
        if let Node::Until(..) = n {
            let bit = self.until_bit.len() as u32;
            if bit >= 128 {
                return Err(LtlError::Capacity("more than 128 until subformulas".into()));
            }
            self.until_bit.insert(id, bit);
        }
        Ok(id)
    }

    fn add(&mut self, f: &LtlFormula, aps: &[String]) -> Result<u32, LtlError> {
        use LtlFormula as L;
        let ap = |a: &str| aps.iter().position(|x| x == a).unwrap() as u32;
        let n = match f {
            L::True => Node::True,
            L::False => Node::False,
            L::Ap(a) => Node::Lit(ap(a), true),
            L::Not(x) => match &**x {
                L::Ap(a) => Node::Lit(ap(a), false),
                _ => unreachable!("input is in negation normal form"),
            },
            L::And(x, y) => Node::And(self.add(x, aps)?, self.add(y, aps)?),
            L::Or(x, y) => Node::Or(self.add(x, aps)?, self.add(y, aps)?),
            L::Next(x) => Node::Next(self.add(x, aps)?),
            L::Until(x, y) => Node::Until(self.add(x, aps)?, self.add(y, aps)?),
            L::Release(x, y) => Node::Release(self.add(x, aps)?, self.add(y, aps)?),
            _ => unreachable!("input is in negation normal form"),
        };
        self.intern(n)
    }
}

#[derive(Clone, Default)]
struct Branch {
    todo: Vec<u32>,
    seen: Vec<u32>,
    pos: u64,
    neg: u64,
    next: Vec<u32>,
    postponed: u128,
}

struct Edge {
    target: u32,
    label: u64,
    acc: u128,
}

impl Closure {
    // All consistent ways to satisfy the obligations `state` at one step.
    fn covers(&self, state: &[u32]) -> Vec<(u64, u64, Vec<u32>, u128)> {
        let mut out = Vec::new();
        let mut stack = vec![Branch { todo: state.to_vec(), ..Default::default() }];
        'branches: while let Some(mut b) = stack.pop() {
            while let Some(id) = b.todo.pop() {
                if b.seen.contains(&id) {
                    continue;
                }
                b.seen.push(id);
                match self.nodes[id as usize] {
                    Node::True => {}
                    Node::False => continue 'branches,
                    Node::Lit(i, v) => {
                        let bit = 1u64 << i;
                        if v {
                            b.pos |= bit;
                        } else {
                            b.neg |= bit;
                        }
                        if b.pos & b.neg != 0 {
                            continue 'branches;
                        }
                    }
                    Node::And(x, y) => {
                        b.todo.push(x);
                        b.todo.push(y);
                    }
                    Node::Or(x, y) => {
                        let mut other = b.clone();
                        other.todo.push(y);
                        stack.push(other);
                        b.todo.push(x);
                    }
                    Node::Next(x) => b.next.push(x),
                    Node::Until(x, y) => {
                        let mut later = b.clone();
                        later.todo.push(x);
                        later.next.push(id);
                        later.postponed |= 1 << self.until_bit[&id];
                        stack.push(later);
                        b.todo.push(y);
                    }
                    Node::Release(x, y) => {
                        let mut later = b.clone();
                        later.todo.push(y);
                        later.next.push(id);
                        stack.push(later);
                        b.todo.push(x);
                        b.todo.push(y);
                    }
                }
            }
            b.next.sort_unstable();
            b.next.dedup();
            out.push((b.pos, b.neg, b.next, b.postponed));
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Decides satisfiability of `f`; a satisfiable formula comes with a lasso
/// trace over `f.aps()` on which it holds.
pub fn is_satisfiable_with(f: &LtlFormula, limits: &TableauLimits) -> Result<SatResult, LtlError> {
    let aps: Vec<String> = f.aps().into_iter().collect();
    if aps.len() > 64 {
        return Err(LtlError::Capacity("more than 64 propositions".into()));
    }
    let mut closure = Closure { nodes: Vec::new(), ids: HashMap::new(), until_bit: HashMap::new() };
    let root = closure.add(&to_nnf(f), &aps)?;
    let all_bits: u128 = match closure.until_bit.len() {
        128 => u128::MAX,
        n => (1u128 << n) - 1,
    };

    // explore the automaton
    let mut state_ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut states: Vec<Vec<u32>> = vec![vec![root]];
    state_ids.insert(vec![root], 0);
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        if states.len() > limits.max_states {
            return Err(LtlError::Capacity(format!("tableau exceeded {} states", limits.max_states)));
        }
        if i % 64 == 0 {
            if let Some(d) = limits.deadline {
                if Instant::now() >= d {
                    return Err(LtlError::Timeout);
                }
            }
        }
        let mut out = Vec::new();
        for (pos, _neg, next, postponed) in closure.covers(&states[i]) {
            let target = match state_ids.get(&next) {
                Some(&t) => t,
                None => {
                    let t = states.len() as u32;
                    state_ids.insert(next.clone(), t);
                    states.push(next);
                    t
                }
            };
            out.push(Edge { target, label: pos, acc: all_bits & !postponed });
        }
        edges.push(out);
        i += 1;
    }

    let Some(scc) = accepting_scc(&edges, all_bits) else {
        return Ok(SatResult::Unsat);
    };
    let (prefix, period) = lasso(&edges, &scc, all_bits);
    Ok(SatResult::Sat(Trace::new(aps, prefix, period)?))
}

// Tarjan's algorithm, iteratively; returns the membership mask of the first
// SCC found with an internal cycle covering every acceptance bit.
fn accepting_scc(edges: &[Vec<Edge>], all_bits: u128) -> Option<Vec<bool>> {
    let n = edges.len();
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut counter = 0u32;
    let mut call: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != u32::MAX {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let vu = v as usize;
            if *next < edges[vu].len() {
                let w = edges[vu][*next].target;
                *next += 1;
                let wu = w as usize;
                if index[wu] == u32::MAX {
                    index[wu] = counter;
                    low[wu] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[wu] = true;
                    call.push((w, 0));
                } else if on_stack[wu] {
                    low[vu] = low[vu].min(index[wu]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let pu = parent as usize;
                low[pu] = low[pu].min(low[vu]);
            }
            if low[vu] == index[vu] {
                let mut member = vec![false; n];
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w as usize] = false;
                    member[w as usize] = true;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                let mut acc = 0u128;
                let mut internal = false;
                for &s in &comp {
                    for e in &edges[s as usize] {
                        if member[e.target as usize] {
                            internal = true;
                            acc |= e.acc;
                        }
                    }
                }
                if internal && acc == all_bits {
                    return Some(member);
                }
            }
        }
    }
    None
}

// Shortest path of edges from `from` ending in an edge satisfying `goal`, moving
// only inside `within`. The path always has at least one edge; the goal is
// tested on edges.
fn path(
    edges: &[Vec<Edge>],
    from: u32,
    within: &[bool],
    goal: impl Fn(&Edge) -> bool,
) -> Option<Vec<(u32, usize)>> {
    let mut parent: HashMap<u32, (u32, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut visited = vec![false; edges.len()];
    visited[from as usize] = true;
    while let Some(u) = queue.pop_front() {
        for (k, e) in edges[u as usize].iter().enumerate() {
            if !within[e.target as usize] {
                continue;
            }
            if goal(e) {
                let mut p = vec![(u, k)];
                let mut cur = u;
                while cur != from {
                    let (prev, pk) = parent[&cur];
                    p.push((prev, pk));
                    cur = prev;
                }
                p.reverse();
                return Some(p);
            }
            if !visited[e.target as usize] {
                visited[e.target as usize] = true;
                parent.insert(e.target, (u, k));
                queue.push_back(e.target);
            }
        }
    }
    None
}

fn lasso(edges: &[Vec<Edge>], scc: &[bool], all_bits: u128) -> (Vec<u64>, Vec<u64>) {
    let everywhere = vec![true; edges.len()];
    let label =
        |p: &[(u32, usize)]| -> Vec<u64> { p.iter().map(|&(u, k)| edges[u as usize][k].label).collect() };
    // reach the component
    let (entry, prefix) = if scc[0] {
        (0, Vec::new())
    } else {
        let p = path(edges, 0, &everywhere, |e| scc[e.target as usize])
            .expect("accepting component is reachable");
        let &(u, k) = p.last().unwrap();
        (edges[u as usize][k].target, label(&p))
    };
    // walk around it collecting every acceptance bit, then return
    let mut period = Vec::new();
    let mut missing = all_bits;
    let mut at = entry;
    while missing != 0 {
        let p = path(edges, at, scc, |e| e.acc & missing != 0).expect("component covers every bit");
        for &(u, k) in &p {
            missing &= !edges[u as usize][k].acc;
        }
        let &(u, k) = p.last().unwrap();
        at = edges[u as usize][k].target;
        period.extend(label(&p));
    }
    if at != entry || period.is_empty() {
        let p = path(edges, at, scc, |e| e.target == entry).expect("component is strongly connected");
        period.extend(label(&p));
    }
    (prefix, period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{enumerate_traces, eval_trace, parse_ltl};

    fn sat(s: &str) -> SatResult {
        is_satisfiable_with(&parse_ltl(s).unwrap(), &TableauLimits::default()).unwrap()
    }

    #[test]
    fn contradictions() {
        assert_eq!(sat("a & !a"), SatResult::Unsat);
        assert_eq!(sat("F a & G !a"), SatResult::Unsat);
        assert_eq!(sat("G F a & F G !a"), SatResult::Unsat);
        assert_eq!(sat("false"), SatResult::Unsat);
        assert_eq!(sat("a U false"), SatResult::Unsat);
    }

    #[test]
    fn witnesses_satisfy() {
        for s in [
            "G F a",
            "true",
            "a U b & G !a",
            "G (a -> X !a) & G F a & G F !a",
            "G F a & G F b & G !(a & b)",
            "(a R b) & F !b",
            "X X X a & G (a -> X a)",
            "F G a & G F !b",
        ] {
            let f = parse_ltl(s).unwrap();
            match sat(s) {
                SatResult::Sat(t) => assert!(eval_trace(&f, &t).unwrap(), "{s}: {t}"),
                SatResult::Unsat => panic!("{s} is satisfiable"),
            }
        }
    }

    #[test]
    fn gf_witness_has_a_in_period() {
        let SatResult::Sat(t) = sat("G F a") else { panic!() };
        assert!(t.period.iter().any(|&s| s & 1 == 1));
    }

    #[test]
    fn agrees_with_enumeration() {
        // satisfiable iff some short lasso satisfies it, for formulas this small
        let aps = vec!["a".to_string(), "b".to_string()];
        for s in [
            "G (a -> X b) & G (b -> X !b) & G F a",
            "G (a <-> X !a) & F G a",
            "(a U b) & (!b U a) & G !(a & b)",
            "G (a -> F b) & F a & G !b",
        ] {
            let f = parse_ltl(s).unwrap();
            let brute = enumerate_traces(&aps, 3, 3).any(|t| eval_trace(&f, &t).unwrap());
            assert_eq!(matches!(sat(s), SatResult::Sat(_)), brute, "{s}");
        }
    }

    #[test]
    fn capacity() {
        let limits = TableauLimits { max_states: 1, deadline: None };
        let f = parse_ltl("X X X a").unwrap();
        assert!(matches!(is_satisfiable_with(&f, &limits), Err(LtlError::Capacity(_))));
    }
}
