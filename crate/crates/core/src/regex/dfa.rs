//! Complete deterministic automata over a dense symbol range, with subset
//! construction, Hopcroft minimisation and a canonical numbering.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::time::Instant;

use super::RegexError;

/// Complete DFA over symbols `0..symbols`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    symbols: usize,
    start: u32,
    trans: Vec<u32>,
    accept: Vec<bool>,
}

/// Resource bounds for determinisation.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_states: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 200_000, deadline: None }
    }
}

impl Limits {
    fn check(&self, states: usize) -> Result<(), RegexError> {
        if states > self.max_states {
            return Err(RegexError::Capacity { limit: self.max_states });
        }
        if states.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(RegexError::Timeout);
                }
            }
        }
        Ok(())
    }
}

/// A nondeterministic automaton given by its successor functions.
pub trait Nfa {
    type State: Clone + Eq + Hash;
    fn symbols(&self) -> usize;
    fn starts(&self) -> Vec<Self::State>;
    fn step(&self, s: &Self::State, sym: usize, out: &mut Vec<Self::State>);
    fn epsilon(&self, s: &Self::State, out: &mut Vec<Self::State>);
    fn accepting(&self, s: &Self::State) -> bool;
}

/// Subset construction.
pub fn determinize<N: Nfa>(nfa: &N, limits: &Limits) -> Result<Dfa, RegexError> {
    let k = nfa.symbols();
    let mut ids: HashMap<N::State, u32> = HashMap::new();
    let mut states: Vec<N::State> = Vec::new();
    let mut intern = |s: N::State, states: &mut Vec<N::State>| -> u32 {
        *ids.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            (states.len() - 1) as u32
        })
    };

    let mut buf = Vec::new();
    let mut closure = |seed: Vec<N::State>, states: &mut Vec<N::State>| -> Vec<u32> {
        let mut set: Vec<u32> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for s in seed {
            let id = intern(s, states);
            if seen.insert(id) {
                stack.push(id);
            }
        }
        while let Some(id) = stack.pop() {
            set.push(id);
            buf.clear();
            nfa.epsilon(&states[id as usize], &mut buf);
            for s in buf.drain(..) {
                let t = intern(s, states);
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        set.sort_unstable();
        set
    };

    let mut subsets: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut order: Vec<Vec<u32>> = Vec::new();
    let mut trans: Vec<u32> = Vec::new();
    let mut accept: Vec<bool> = Vec::new();

    let first = closure(nfa.starts(), &mut states);
    subsets.insert(first.clone(), 0);
    order.push(first);
    let mut next = 0;
    let mut step_buf = Vec::new();
    while next < order.len() {
        limits.check(order.len())?;
        let set = order[next].clone();
        accept.push(set.iter().any(|&i| nfa.accepting(&states[i as usize])));
        for sym in 0..k {
            let mut seed = Vec::new();
            for &i in &set {
                step_buf.clear();
                nfa.step(&states[i as usize], sym, &mut step_buf);
                seed.append(&mut step_buf);
            }
            let target = closure(seed, &mut states);
            let id = match subsets.get(&target) {
                Some(&id) => id,
                None => {
                    let id = order.len() as u32;
                    subsets.insert(target.clone(), id);
                    order.push(target);
                    id
                }
            };
            trans.push(id);
        }
        next += 1;
    }
    Ok(Dfa { symbols: k, start: 0, trans, accept })
}

impl Dfa {
    pub fn from_parts(symbols: usize, start: u32, trans: Vec<u32>, accept: Vec<bool>) -> Self {
        assert_eq!(trans.len(), symbols * accept.len());
        Dfa { symbols, start, trans, accept }
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn num_states(&self) -> usize {
        self.accept.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn next(&self, q: u32, sym: usize) -> u32 {
        self.trans[q as usize * self.symbols + sym]
    }

    pub fn is_accepting(&self, q: u32) -> bool {
        self.accept[q as usize]
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let q = word.iter().fold(self.start, |q, &a| self.next(q, a));
        self.is_accepting(q)
    }

    /// States from which some accepting state is reachable.
    pub fn live(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.symbols {
                rev[self.next(q as u32, a) as usize].push(q as u32);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn complement(&self) -> Dfa {
        Dfa { accept: self.accept.iter().map(|a| !a).collect(), ..self.clone() }
    }

    /// Reachable part of the synchronous product, accepting by `op`.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.symbols, other.symbols);
        let k = self.symbols;
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut order = vec![(self.start, other.start)];
        ids.insert(order[0], 0);
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            accept.push(op(self.is_accepting(p), other.is_accepting(q)));
            for a in 0..k {
                let pair = (self.next(p, a), other.next(q, a));
                let id = *ids.entry(pair).or_insert_with(|| {
                    order.push(pair);
                    (order.len() - 1) as u32
                });
                trans.push(id);
            }
            i += 1;
        }
        Dfa { symbols: k, start: 0, trans, accept }
    }

    /// Minimal DFA for the same language, numbered in breadth-first order from
    /// the start state with symbols visited in increasing order. Two DFAs
    /// accept the same language iff their minimised forms are equal.
    pub fn minimize(&self) -> Dfa {
        let reach = self.renumber_bfs();
        let blocks = reach.hopcroft();
        let nb = blocks.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut trans = vec![0u32; nb * reach.symbols];
        let mut accept = vec![false; nb];
        for q in 0..reach.num_states() {
            let b = blocks[q] as usize;
            accept[b] = reach.accept[q];
            for a in 0..reach.symbols {
                trans[b * reach.symbols + a] = blocks[reach.next(q as u32, a) as usize];
            }
        }
        Dfa { symbols: reach.symbols, start: blocks[reach.start as usize], trans, accept }.renumber_bfs()
    }

    fn renumber_bfs(&self) -> Dfa {
        let n = self.num_states();
        let mut id = vec![u32::MAX; n];
        let mut order = vec![self.start];
        id[self.start as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..self.symbols {
                let t = self.next(q, a);
                if id[t as usize] == u32::MAX {
                    id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            i += 1;
        }
        let mut trans = Vec::with_capacity(order.len() * self.symbols);
        for &q in &order {
            for a in 0..self.symbols {
                trans.push(id[self.next(q, a) as usize]);
            }
        }
        Dfa {
            symbols: self.symbols,
            start: 0,
            trans,
            accept: order.iter().map(|&q| self.accept[q as usize]).collect(),
        }
    }

    // Hopcroft partition refinement; returns the block of every state.
    fn hopcroft(&self) -> Vec<u32> {
        let n = self.num_states();
        let k = self.symbols;
        // predecessors per symbol, in compressed rows
        let mut pre_start = vec![0usize; k * n + 1];
        for q in 0..n {
            for a in 0..k {
                pre_start[a * n + self.next(q as u32, a) as usize + 1] += 1;
            }
        }
        for i in 1..pre_start.len() {
            pre_start[i] += pre_start[i - 1];
        }
        let mut fill = pre_start.clone();
        let mut pre = vec![0u32; k * n];
        for q in 0..n {
            for a in 0..k {
                let slot = a * n + self.next(q as u32, a) as usize;
                pre[fill[slot]] = q as u32;
                fill[slot] += 1;
            }
        }

        let mut elems: Vec<u32> = Vec::with_capacity(n);
        elems.extend((0..n as u32).filter(|&q| self.accept[q as usize]));
        let n_acc = elems.len();
        elems.extend((0..n as u32).filter(|&q| !self.accept[q as usize]));
        let mut loc = vec![0usize; n];
        for (i, &q) in elems.iter().enumerate() {
            loc[q as usize] = i;
        }
        let mut block_of = vec![0u32; n];
        let mut bstart: Vec<usize> = Vec::new();
        let mut bend: Vec<usize> = Vec::new();
        for (s, e) in [(0, n_acc), (n_acc, n)] {
            if s < e {
                let b = bstart.len() as u32;
                bstart.push(s);
                bend.push(e);
                for &q in &elems[s..e] {
                    block_of[q as usize] = b;
                }
            }
        }

        let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; bstart.len()];
        let mut work: Vec<(u32, usize)> = Vec::new();
        if bstart.len() == 2 {
            let small = if bend[0] - bstart[0] <= bend[1] - bstart[1] { 0 } else { 1 };
            for a in 0..k {
                work.push((small, a));
                pending[small as usize][a] = true;
            }
        }

        let mut marked: Vec<usize> = vec![0; bstart.len()];
        let mut touched: Vec<u32> = Vec::new();
        let mut splitter: Vec<u32> = Vec::new();
        while let Some((b, a)) = work.pop() {
            pending[b as usize][a] = false;
            splitter.clear();
            for &q in &elems[bstart[b as usize]..bend[b as usize]] {
                let row = a * n + q as usize;
                splitter.extend_from_slice(&pre[pre_start[row]..pre_start[row + 1]]);
            }
            for &p in &splitter {
                let c = block_of[p as usize] as usize;
                let slot = bstart[c] + marked[c];
                if loc[p as usize] < slot {
                    continue; // already marked
                }
                if marked[c] == 0 {
                    touched.push(c as u32);
                }
                let other = elems[slot];
                elems.swap(loc[p as usize], slot);
                loc[other as usize] = loc[p as usize];
                loc[p as usize] = slot;
                marked[c] += 1;
            }
            for c in touched.drain(..) {
                let c = c as usize;
                let m = std::mem::take(&mut marked[c]);
                if m == bend[c] - bstart[c] {
                    continue;
                }
                let d = bstart.len();
                bstart.push(bstart[c]);
                bend.push(bstart[c] + m);
                bstart[c] += m;
                marked.push(0);
                for &q in &elems[bstart[d]..bend[d]] {
                    block_of[q as usize] = d as u32;
                }
                pending.push(vec![false; k]);
                let c_small = bend[c] - bstart[c] <= bend[d] - bstart[d];
                for sym in 0..k {
                    let pick = if pending[c][sym] || !c_small { d } else { c };
                    if !pending[pick][sym] {
                        pending[pick][sym] = true;
                        work.push((pick as u32, sym));
                    }
                }
            }
        }

        // number blocks by first occurrence so the result is deterministic
        let mut remap = vec![u32::MAX; bstart.len()];
        let mut next = 0;
        let mut out = vec![0u32; n];
        for q in 0..n {
            let b = block_of[q] as usize;
            if remap[b] == u32::MAX {
                remap[b] = next;
                next += 1;
            }
            out[q] = remap[b];
        }
        out
    }

    /// Shortest word (by length, then symbol order) accepted by exactly one of
    /// the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Option<Vec<usize>> {
        assert_eq!(self.symbols, other.symbols);
        let mut parent: HashMap<(u32, u32), Option<((u32, u32), usize)>> = HashMap::new();
        let start = (self.start, other.start);
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            if self.is_accepting(pair.0) != other.is_accepting(pair.1) {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.symbols {
                let t = (self.next(pair.0, a), other.next(pair.1, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert(Some((pair, a)));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortest accepted word, if the language is non-empty.
    pub fn shortest_word(&self) -> Option<Vec<usize>> {
        let empty = Dfa::from_parts(self.symbols, 0, vec![0; self.symbols], vec![false]);
        self.distinguishing_word(&empty)
    }
}
