//! Regex to DFA.
//!
//! Word boundaries make the language of a sub-expression depend on the
//! characters around it, so every sub-expression is compiled to a *framed*
//! automaton. It reads `BEGIN_l u END_r`, where `l` and `r` say whether the
//! characters just left and right of the matched span `u` are word characters,
//! and accepts when `u` matches in that context. The top level reads
//! `BEGIN_N s END_N`, since the text is surrounded by non-word positions.
//!
//! Symbols: `0..k` are minterms, then `BEGIN_N`, `BEGIN_W`, `END_N`, `END_W`.

use super::alphabet::SymbolicAlphabet;
use super::ast::RegexAst;
use super::dfa::{determinize, Dfa, Limits, Nfa};
use super::RegexError;

struct Ctx<'a> {
    alpha: &'a SymbolicAlphabet,
    k: usize,
    limits: &'a Limits,
}

impl Ctx<'_> {
    fn symbols(&self) -> usize {
        self.k + 4
    }

    fn begin(&self, word: bool) -> usize {
        self.k + word as usize
    }

    fn end(&self, word: bool) -> usize {
        self.k + 2 + word as usize
    }

    fn word(&self, sym: usize) -> bool {
        self.alpha.is_word(sym)
    }

    fn check(&self, d: &Dfa) -> Result<(), RegexError> {
        if d.num_states() > self.limits.max_states {
            return Err(RegexError::Capacity { limit: self.limits.max_states });
        }
        Ok(())
    }

    // Framed automaton for a fixed sequence of minterm sets.
    fn sequence(&self, steps: &[Vec<bool>]) -> Dfa {
        let n = self.symbols();
        let m = steps.len();
        // 0 = before BEGIN, 1..=m+1 = chars read + 1, m+2 = after END, m+3 = sink
        let post = m + 2;
        let sink = (m + 3) as u32;
        let mut trans = vec![sink; (m + 4) * n];
        for w in [false, true] {
            trans[self.begin(w)] = 1;
        }
        for (i, allowed) in steps.iter().enumerate() {
            let q = i + 1;
            for (sym, &ok) in allowed.iter().enumerate() {
                if ok {
                    trans[q * n + sym] = (q + 1) as u32;
                }
            }
        }
        for w in [false, true] {
            trans[(m + 1) * n + self.end(w)] = post as u32;
        }
        let mut accept = vec![false; m + 4];
        accept[post] = true;
        Dfa::from_parts(n, 0, trans, accept).minimize()
    }

    // Every well-formed framed word.
    fn frame(&self) -> Dfa {
        let n = self.symbols();
        let (mid, post, sink) = (1u32, 2u32, 3u32);
        let mut trans = vec![sink; 4 * n];
        for w in [false, true] {
            trans[self.begin(w)] = mid;
            trans[n + self.end(w)] = post;
        }
        for sym in 0..self.k {
            trans[n + sym] = mid;
        }
        Dfa::from_parts(n, 0, trans, vec![false, false, true, false])
    }

    // Framed words whose span starts and ends at a word boundary.
    fn boundary(&self) -> Dfa {
        let n = self.symbols();
        // 0 pre, 1/2 nothing read yet after BEGIN_N/BEGIN_W,
        // 3/4 last char non-word/word, 5 post, 6 sink
        let (post, sink) = (5u32, 6u32);
        let mut trans = vec![sink; 7 * n];
        for l in [false, true] {
            trans[self.begin(l)] = 1 + l as u32;
            let start = (1 + l as usize) * n;
            for sym in 0..self.k {
                let w = self.word(sym);
                if w != l {
                    trans[start + sym] = 3 + w as u32;
                }
            }
            for r in [false, true] {
                if l != r {
                    trans[start + self.end(r)] = post;
                }
            }
            let mid = (3 + l as usize) * n;
            for sym in 0..self.k {
                trans[mid + sym] = 3 + self.word(sym) as u32;
            }
            for r in [false, true] {
                if l != r {
                    trans[mid + self.end(r)] = post;
                }
            }
        }
        let mut accept = vec![false; 7];
        accept[post as usize] = true;
        Dfa::from_parts(n, 0, trans, accept)
    }

    fn empty_span(&self) -> Dfa {
        self.sequence(&[])
    }

    fn product(&self, a: &Dfa, b: &Dfa, op: fn(bool, bool) -> bool) -> Result<Dfa, RegexError> {
        let d = a.product(b, op);
        self.check(&d)?;
        Ok(d.minimize())
    }

    fn concat(&self, x: &Dfa, y: &Dfa) -> Result<Dfa, RegexError> {
        let nfa = ConcatNfa { ctx: self, x, y, x_live: x.live(), y_live: y.live() };
        Ok(determinize(&nfa, self.limits)?.minimize())
    }

    fn star(&self, x: &Dfa) -> Result<Dfa, RegexError> {
        let nfa = StarNfa { ctx: self, x, x_live: x.live() };
        Ok(determinize(&nfa, self.limits)?.minimize())
    }

    fn compile(&self, ast: &RegexAst) -> Result<Dfa, RegexError> {
        let all = self.symbols();
        let chars = |test: &dyn Fn(char) -> bool| -> Vec<bool> {
            let mut v = vec![false; all];
            for i in self.alpha.minterms_of(test) {
                v[i] = true;
            }
            v
        };
        match ast {
            RegexAst::Literal(s) => {
                let steps: Vec<Vec<bool>> = s.chars().map(|c| chars(&move |x| x == c)).collect();
                Ok(self.sequence(&steps))
            }
            RegexAst::Class(class) => Ok(self.sequence(&[chars(&|c| class.contains(c))])),
            RegexAst::AnyChar => Ok(self.sequence(&[chars(&|_| true)])),
            RegexAst::Concat(items) => {
                let mut acc = self.compile(&items[0])?;
                for item in &items[1..] {
                    acc = self.concat(&acc, &self.compile(item)?)?;
                }
                Ok(acc)
            }
            RegexAst::Or(items) | RegexAst::And(items) => {
                let op: fn(bool, bool) -> bool =
                    if matches!(ast, RegexAst::Or(_)) { |a, b| a || b } else { |a, b| a && b };
                let mut acc = self.compile(&items[0])?;
                for item in &items[1..] {
                    acc = self.product(&acc, &self.compile(item)?, op)?;
                }
                Ok(acc)
            }
            RegexAst::Not(x) => {
                let inner = self.compile(x)?;
                self.product(&inner.complement(), &self.frame(), |a, b| a && b)
            }
            RegexAst::Star(x) => self.star(&self.compile(x)?),
            RegexAst::Plus(x) => {
                let inner = self.compile(x)?;
                self.concat(&inner, &self.star(&inner)?)
            }
            RegexAst::RepeatAtLeast(x, n) => {
                let inner = self.compile(x)?;
                let mut acc = self.star(&inner)?;
                for _ in 0..*n {
                    acc = self.concat(&inner, &acc)?;
                }
                Ok(acc)
            }
            RegexAst::RepeatAtMost(x, n) => {
                let inner = self.compile(x)?;
                let optional = self.product(&inner, &self.empty_span(), |a, b| a || b)?;
                let mut acc = inner;
                for _ in 1..*n {
                    acc = self.concat(&acc, &optional)?;
                }
                Ok(acc)
            }
            RegexAst::WordBounded(x) => {
                let inner = self.compile(x)?;
                self.product(&inner, &self.boundary(), |a, b| a && b)
            }
            RegexAst::Contains(x) => {
                let any = self.frame();
                let left = self.concat(&any, &self.compile(x)?)?;
                self.concat(&left, &any)
            }
            RegexAst::StartsWith(x) => self.concat(&self.compile(x)?, &self.frame()),
            RegexAst::EndsWith(x) => self.concat(&self.frame(), &self.compile(x)?),
            RegexAst::FollowedBy(x, y) => {
                let any = self.frame();
                let mut acc = self.concat(&any, &self.compile(x)?)?;
                acc = self.concat(&acc, &any)?;
                self.concat(&acc, &self.compile(y)?)
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ConcatState {
    Start,
    // inside x; `last` is the word status of the previous character
    Left { q: u32, last: bool },
    // inside y; `pending` constrains the word status of y's first character
    // (or the right context, if y matches the empty span)
    Right { q: u32, pending: Option<bool> },
    Accept,
}

struct ConcatNfa<'a> {
    ctx: &'a Ctx<'a>,
    x: &'a Dfa,
    y: &'a Dfa,
    x_live: Vec<bool>,
    y_live: Vec<bool>,
}

impl Nfa for ConcatNfa<'_> {
    type State = ConcatState;

    fn symbols(&self) -> usize {
        self.ctx.symbols()
    }

    fn starts(&self) -> Vec<ConcatState> {
        vec![ConcatState::Start]
    }

    fn step(&self, s: &ConcatState, sym: usize, out: &mut Vec<ConcatState>) {
        let k = self.ctx.k;
        match *s {
            ConcatState::Start => {
                if sym >= k && sym < k + 2 {
                    let q = self.x.next(self.x.start(), sym);
                    if self.x_live[q as usize] {
                        out.push(ConcatState::Left { q, last: sym == k + 1 });
                    }
                }
            }
            ConcatState::Left { q, .. } => {
                if sym < k {
                    let q = self.x.next(q, sym);
                    if self.x_live[q as usize] {
                        out.push(ConcatState::Left { q, last: self.ctx.word(sym) });
                    }
                }
            }
            ConcatState::Right { q, pending } => {
                if sym < k {
                    if pending.is_none_or(|p| p == self.ctx.word(sym)) {
                        let q = self.y.next(q, sym);
                        if self.y_live[q as usize] {
                            out.push(ConcatState::Right { q, pending: None });
                        }
                    }
                } else if sym >= k + 2 {
                    let r = sym == k + 3;
                    if pending.is_none_or(|p| p == r) && self.y.is_accepting(self.y.next(q, sym)) {
                        out.push(ConcatState::Accept);
                    }
                }
            }
            ConcatState::Accept => {}
        }
    }

    fn epsilon(&self, s: &ConcatState, out: &mut Vec<ConcatState>) {
        if let ConcatState::Left { q, last } = *s {
            for m in [false, true] {
                if self.x.is_accepting(self.x.next(q, self.ctx.end(m))) {
                    let qy = self.y.next(self.y.start(), self.ctx.begin(last));
                    if self.y_live[qy as usize] {
                        out.push(ConcatState::Right { q: qy, pending: Some(m) });
                    }
                }
            }
        }
    }

    fn accepting(&self, s: &ConcatState) -> bool {
        *s == ConcatState::Accept
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum StarState {
    Start,
    // between iterations
    Between { last: bool, pending: Option<bool> },
    // inside an iteration; `started` once it has read a character
    Inside { q: u32, last: bool, pending: Option<bool>, started: bool },
    Accept,
}

struct StarNfa<'a> {
    ctx: &'a Ctx<'a>,
    x: &'a Dfa,
    x_live: Vec<bool>,
}

impl Nfa for StarNfa<'_> {
    type State = StarState;

    fn symbols(&self) -> usize {
        self.ctx.symbols()
    }

    fn starts(&self) -> Vec<StarState> {
        vec![StarState::Start]
    }

    fn step(&self, s: &StarState, sym: usize, out: &mut Vec<StarState>) {
        let k = self.ctx.k;
        match *s {
            StarState::Start => {
                if sym >= k && sym < k + 2 {
                    out.push(StarState::Between { last: sym == k + 1, pending: None });
                }
            }
            StarState::Between { pending, .. } => {
                if sym >= k + 2 && pending.is_none_or(|p| p == (sym == k + 3)) {
                    out.push(StarState::Accept);
                }
            }
            StarState::Inside { q, pending, .. } => {
                if sym < k && pending.is_none_or(|p| p == self.ctx.word(sym)) {
                    let q = self.x.next(q, sym);
                    if self.x_live[q as usize] {
                        out.push(StarState::Inside {
                            q,
                            last: self.ctx.word(sym),
                            pending: None,
                            started: true,
                        });
                    }
                }
            }
            StarState::Accept => {}
        }
    }

    fn epsilon(&self, s: &StarState, out: &mut Vec<StarState>) {
        match *s {
            StarState::Between { last, pending } => {
                let q = self.x.next(self.x.start(), self.ctx.begin(last));
                if self.x_live[q as usize] {
                    out.push(StarState::Inside { q, last, pending, started: false });
                }
            }
            StarState::Inside { q, last, started: true, .. } => {
                for m in [false, true] {
                    if self.x.is_accepting(self.x.next(q, self.ctx.end(m))) {
                        out.push(StarState::Between { last, pending: Some(m) });
                    }
                }
            }
            _ => {}
        }
    }

    fn accepting(&self, s: &StarState) -> bool {
        *s == StarState::Accept
    }
}

/// Minimal DFA over the minterms of `alpha` for the strings `ast` matches.
pub fn compile_with(ast: &RegexAst, alpha: &SymbolicAlphabet, limits: &Limits) -> Result<Dfa, RegexError> {
    let ctx = Ctx { alpha, k: alpha.len(), limits };
    let framed = ctx.compile(ast)?;
    let k = ctx.k;
    let start = framed.next(framed.start(), ctx.begin(false));
    // restrict to character symbols, reading END_N as the acceptance test
    let mut ids = std::collections::HashMap::new();
    let mut order = vec![start];
    ids.insert(start, 0u32);
    let mut trans = Vec::new();
    let mut accept = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        accept.push(framed.is_accepting(framed.next(q, ctx.end(false))));
        for sym in 0..k {
            let t = framed.next(q, sym);
            let id = *ids.entry(t).or_insert_with(|| {
                order.push(t);
                (order.len() - 1) as u32
            });
            trans.push(id);
        }
        i += 1;
    }
    Ok(Dfa::from_parts(k, 0, trans, accept).minimize())
}
