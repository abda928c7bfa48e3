//! Exhaustive search over automata induced by accepting paths.
//!
//! A search fixes a word `x`, a state budget `q`, a mode and an acceptance
//! limit `L`, and enumerates the restricted-growth state sequences `s` for `x`
//! with at most `q` states whose induced automaton has `Acc <= L`.
//!
//! The edge set only grows along a branch, and the automaton built so far
//! already contains the rest of the branch's own path. Hence the number of
//! length-`i` paths (or words) from the initial state to `s_i` in the partial
//! automaton is a lower bound on the final acceptance count, and branches
//! exceeding `L` are cut. In deterministic mode a defined transition forces the
//! next state.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::counting::{ceil_log_u64, saturating_pow};
use crate::error::{Error, Result};
use crate::word::Mode;

pub const MAX_STATES: usize = 32;
pub const MAX_SYMBOLS: usize = 4;

/// Edge set of the automaton under construction plus cached per-length
/// reachability statistics from the initial state.
#[derive(Clone)]
pub(crate) struct Walker {
    mode: Mode,
    alphabet: usize,
    succ: [[u32; MAX_SYMBOLS]; MAX_STATES],
    pub(crate) used: usize,
    /// Path counts, `paths[j][t]` = number of length-`j` paths from 0 to `t`.
    paths: Vec<[u64; MAX_STATES]>,
    /// Word counts: `(subset, words)` pairs, words of length `j` reaching exactly `subset`.
    subsets: Vec<Vec<(u32, u64)>>,
    valid: usize,
}

impl Walker {
    pub(crate) fn new(mode: Mode, alphabet: usize) -> Self {
        let mut paths = vec![[0u64; MAX_STATES]];
        paths[0][0] = 1;
        Walker {
            mode,
            alphabet,
            succ: [[0; MAX_SYMBOLS]; MAX_STATES],
            used: 1,
            paths,
            subsets: vec![vec![(1, 1)]],
            valid: 1,
        }
    }

    #[inline]
    pub(crate) fn successors(&self, s: usize, a: usize) -> u32 {
        self.succ[s][a]
    }

    fn invalidate_from_state(&mut self, s: usize) {
        let bit = 1u32 << s;
        let first = match self.mode {
            Mode::Omega => (0..self.valid)
                .find(|&j| self.subsets[j].iter().any(|&(mask, _)| mask & bit != 0)),
            _ => (0..self.valid).find(|&j| self.paths[j][s] != 0),
        };
        if let Some(j) = first {
            self.valid = j + 1;
        }
    }

    /// Adds `(s, a, t)` if absent; returns whether it was added.
    pub(crate) fn add_edge(&mut self, s: usize, a: usize, t: usize) -> bool {
        let bit = 1u32 << t;
        if self.succ[s][a] & bit != 0 {
            return false;
        }
        self.invalidate_from_state(s);
        self.succ[s][a] |= bit;
        true
    }

    pub(crate) fn remove_edge(&mut self, s: usize, a: usize, t: usize) {
        self.invalidate_from_state(s);
        self.succ[s][a] &= !(1u32 << t);
    }

    fn extend_to(&mut self, depth: usize) {
        while self.valid <= depth {
            let j = self.valid;
            match self.mode {
                Mode::Omega => {
                    if self.subsets.len() <= j {
                        self.subsets.push(Vec::new());
                    }
                    let (done, rest) = self.subsets.split_at_mut(j);
                    let prev = &done[j - 1];
                    let next = &mut rest[0];
                    next.clear();
                    for &(mask, count) in prev {
                        for a in 0..self.alphabet {
                            let mut target = 0u32;
                            let mut bits = mask;
                            while bits != 0 {
                                let s = bits.trailing_zeros() as usize;
                                bits &= bits - 1;
                                target |= self.succ[s][a];
                            }
                            if target != 0 {
                                next.push((target, count));
                            }
                        }
                    }
                    next.sort_unstable_by_key(|&(mask, _)| mask);
                    let mut w = 0;
                    for r in 0..next.len() {
                        if w > 0 && next[w - 1].0 == next[r].0 {
                            next[w - 1].1 = next[w - 1].1.saturating_add(next[r].1);
                        } else {
                            next[w] = next[r];
                            w += 1;
                        }
                    }
                    next.truncate(w);
                }
                _ => {
                    if self.paths.len() <= j {
                        self.paths.push([0; MAX_STATES]);
                    }
                    let prev = self.paths[j - 1];
                    let mut next = [0u64; MAX_STATES];
                    for s in 0..self.used {
                        let c = prev[s];
                        if c == 0 {
                            continue;
                        }
                        for a in 0..self.alphabet {
                            let mut bits = self.succ[s][a];
                            while bits != 0 {
                                let t = bits.trailing_zeros() as usize;
                                bits &= bits - 1;
                                next[t] = next[t].saturating_add(c);
                            }
                        }
                    }
                    self.paths[j] = next;
                }
            }
            self.valid += 1;
        }
    }

    /// Number of length-`depth` paths (π, δ) or words (ω) from the initial state to `state`.
    pub(crate) fn reach_count(&mut self, depth: usize, state: usize) -> u64 {
        self.extend_to(depth);
        match self.mode {
            Mode::Omega => {
                let bit = 1u32 << state;
                self.subsets[depth]
                    .iter()
                    .filter(|&&(mask, _)| mask & bit != 0)
                    .fold(0u64, |acc, &(_, c)| acc.saturating_add(c))
            }
            _ => self.paths[depth][state],
        }
    }
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Receives every complete sequence within the current limit.
pub(crate) trait Visitor {
    fn limit(&self) -> u64;
    fn leaf(&mut self, walker: &mut Walker, seq: &[u8], acc: u64) -> Flow;
}

/// One accepting path being laid down over the walker's edge set.
pub(crate) struct Track<'a> {
    pub word: &'a [u8],
    pub max_states: usize,
    /// Required final state, if any.
    pub target: Option<u8>,
    pub seq: Vec<u8>,
}

impl<'a> Track<'a> {
    pub(crate) fn new(word: &'a [u8], max_states: usize) -> Self {
        let mut seq = Vec::with_capacity(word.len() + 1);
        seq.push(0);
        Track {
            word,
            max_states,
            target: None,
            seq,
        }
    }
}

/// Places `s_i = t` for the next position; returns whether an edge was added.
#[inline]
fn step_push(walker: &mut Walker, track: &mut Track, t: usize) -> bool {
    let i = track.seq.len();
    let s = track.seq[i - 1] as usize;
    let a = track.word[i - 1] as usize;
    if t == walker.used {
        walker.used += 1;
    }
    track.seq.push(t as u8);
    walker.add_edge(s, a, t)
}

#[inline]
fn step_pop(walker: &mut Walker, track: &mut Track, added: bool, grew: bool) {
    let t = track.seq.pop().expect("nonempty") as usize;
    let i = track.seq.len();
    let s = track.seq[i - 1] as usize;
    let a = track.word[i - 1] as usize;
    if added {
        walker.remove_edge(s, a, t);
    }
    if grew {
        walker.used -= 1;
    }
}

/// Depth-first search in lexicographic order from the track's current prefix.
pub(crate) fn dfs<V: Visitor>(walker: &mut Walker, track: &mut Track, visitor: &mut V) -> Flow {
    let i = track.seq.len();
    let n = track.word.len();
    if i == n + 1 {
        // only reached when the word is empty
        let state = track.seq[i - 1] as usize;
        let acc = walker.reach_count(n, state);
        if acc <= visitor.limit() && track.target.is_none_or(|t| t as usize == state) {
            return visitor.leaf(walker, &track.seq, acc);
        }
        return Flow::Continue;
    }
    let s = track.seq[i - 1] as usize;
    let a = track.word[i - 1] as usize;
    let forced = if walker.mode == Mode::Delta {
        let succ = walker.successors(s, a);
        (succ != 0).then(|| succ.trailing_zeros() as usize)
    } else {
        None
    };
    let top = if walker.used < track.max_states {
        walker.used
    } else {
        walker.used - 1
    };
    let (lo, hi) = match (forced, track.target) {
        (Some(f), Some(t)) if i == n => {
            if f != t as usize {
                return Flow::Continue;
            }
            (f, f)
        }
        (Some(f), _) => (f, f),
        (None, Some(t)) if i == n => {
            if t as usize > top {
                return Flow::Continue;
            }
            (t as usize, t as usize)
        }
        (None, _) => (0, top),
    };
    for t in lo..=hi {
        let grew = t == walker.used;
        let added = step_push(walker, track, t);
        let bound = walker.reach_count(i, t);
        let flow = if bound <= visitor.limit() {
            if i == n {
                visitor.leaf(walker, &track.seq, bound)
            } else {
                dfs(walker, track, visitor)
            }
        } else {
            Flow::Continue
        };
        step_pop(walker, track, added, grew);
        if let Flow::Stop = flow {
            return Flow::Stop;
        }
    }
    Flow::Continue
}

/// A single-word search space.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Problem<'a> {
    pub word: &'a [u8],
    pub alphabet: usize,
    pub max_states: usize,
    pub mode: Mode,
}

impl<'a> Problem<'a> {
    pub(crate) fn new(word: &'a [u8], alphabet: usize, max_states: usize, mode: Mode) -> Result<Self> {
        if alphabet > MAX_SYMBOLS {
            return Err(Error::AlphabetTooLarge(alphabet));
        }
        if let Some(&symbol) = word.iter().find(|&&s| s as usize >= alphabet) {
            return Err(Error::AlphabetMismatch {
                symbol,
                alphabet_size: alphabet,
            });
        }
        Ok(Problem {
            word,
            alphabet,
            max_states: max_states.clamp(1, MAX_STATES),
            mode,
        })
    }

    fn walker(&self) -> Walker {
        Walker::new(self.mode, self.alphabet)
    }

    /// Replays a prefix on a fresh walker.
    fn replay(&self, prefix: &[u8]) -> (Walker, Track<'a>) {
        let mut walker = self.walker();
        let mut track = Track::new(self.word, self.max_states);
        for &t in &prefix[1..] {
            step_push(&mut walker, &mut track, t as usize);
        }
        (walker, track)
    }

    /// Acceptance count of the automaton induced by `seq`, if it is a valid
    /// sequence for this problem (right length, within the state budget, and
    /// deterministic in δ mode).
    pub(crate) fn evaluate(&self, seq: &[u8]) -> Option<u64> {
        if seq.len() != self.word.len() + 1 || seq[0] != 0 {
            return None;
        }
        let mut max = 0u8;
        for &e in &seq[1..] {
            if e > max + 1 {
                return None;
            }
            max = max.max(e);
        }
        if max as usize >= self.max_states {
            return None;
        }
        let mut walker = self.walker();
        let mut track = Track::new(self.word, self.max_states);
        for &t in &seq[1..] {
            step_push(&mut walker, &mut track, t as usize);
        }
        if self.mode == Mode::Delta {
            for s in 0..walker.used {
                for a in 0..self.alphabet {
                    if walker.successors(s, a).count_ones() > 1 {
                        return None;
                    }
                }
            }
        }
        Some(walker.reach_count(self.word.len(), *seq.last().unwrap() as usize))
    }

    /// Lexicographically least sequence with `Acc <= limit`.
    pub(crate) fn first(&self, limit: u64) -> Option<(Vec<u8>, u64)> {
        struct First {
            limit: u64,
            found: Option<(Vec<u8>, u64)>,
        }
        impl Visitor for First {
            fn limit(&self) -> u64 {
                self.limit
            }
            fn leaf(&mut self, _: &mut Walker, seq: &[u8], acc: u64) -> Flow {
                self.found = Some((seq.to_vec(), acc));
                Flow::Stop
            }
        }
        let mut v = First { limit, found: None };
        let mut walker = self.walker();
        let mut track = Track::new(self.word, self.max_states);
        dfs(&mut walker, &mut track, &mut v);
        v.found
    }

    /// Surviving prefixes with `depth + 1` entries, in lexicographic order.
    fn prefixes(&self, depth: usize, limit: u64) -> Vec<Vec<u8>> {
        struct Collect {
            limit: u64,
            out: Vec<Vec<u8>>,
        }
        impl Visitor for Collect {
            fn limit(&self) -> u64 {
                self.limit
            }
            fn leaf(&mut self, _: &mut Walker, seq: &[u8], _: u64) -> Flow {
                self.out.push(seq.to_vec());
                Flow::Continue
            }
        }
        let truncated = Problem {
            word: &self.word[..depth.min(self.word.len())],
            ..*self
        };
        let mut v = Collect { limit, out: Vec::new() };
        let mut walker = truncated.walker();
        let mut track = Track::new(truncated.word, self.max_states);
        dfs(&mut walker, &mut track, &mut v);
        v.out
    }

    fn split_depth(&self) -> usize {
        if rayon::current_num_threads() <= 1 || self.word.len() < 8 {
            0
        } else {
            (self.word.len() / 3).clamp(2, 6)
        }
    }

    /// Smallest `ceil(log_b Acc)` over the space, searching only below
    /// `b^start_m` when `start_m` is given. Returns `None` if nothing in the
    /// space beats the starting bound.
    pub(crate) fn minimize_log(&self, base: usize, start_m: Option<u32>) -> Option<u32> {
        let initial = match start_m {
            Some(0) => return None,
            Some(m) => saturating_pow(base, m - 1),
            None => u64::MAX,
        };
        let shared = AtomicU64::new(initial);
        struct Bnb<'s> {
            base: usize,
            shared: &'s AtomicU64,
            limit: u64,
        }
        impl Visitor for Bnb<'_> {
            fn limit(&self) -> u64 {
                self.limit.min(self.shared.load(Ordering::Relaxed))
            }
            fn leaf(&mut self, _: &mut Walker, _: &[u8], acc: u64) -> Flow {
                let m = ceil_log_u64(acc, self.base);
                if m == 0 {
                    self.shared.store(0, Ordering::Relaxed);
                    self.limit = 0;
                    return Flow::Stop;
                }
                let next = saturating_pow(self.base, m - 1);
                self.limit = self.limit.min(next);
                self.shared.fetch_min(next, Ordering::Relaxed);
                Flow::Continue
            }
        }
        let run = |prefix: Option<&[u8]>| {
            let (mut walker, mut track) = match prefix {
                Some(p) => self.replay(p),
                None => (self.walker(), Track::new(self.word, self.max_states)),
            };
            let mut v = Bnb {
                base,
                shared: &shared,
                limit: u64::MAX,
            };
            if track.seq.len() == self.word.len() + 1 {
                let acc = walker.reach_count(self.word.len(), *track.seq.last().unwrap() as usize);
                if acc <= v.limit() {
                    v.leaf(&mut walker, &track.seq.clone(), acc);
                }
            } else {
                dfs(&mut walker, &mut track, &mut v);
            }
        };
        let depth = self.split_depth();
        if depth == 0 {
            run(None);
        } else {
            self.prefixes(depth, initial)
                .par_iter()
                .for_each(|p| run(Some(p)));
        }
        let best = shared.load(Ordering::Relaxed);
        if best == initial && start_m.is_some() {
            return None;
        }
        if best == u64::MAX {
            return None;
        }
        // `best` is base^(m-1) for the best m found, or 0 for m = 0
        if best == 0 {
            Some(0)
        } else {
            Some(ceil_log_u64(best, base) + 1)
        }
    }

    /// Every sequence with `Acc <= limit`, sorted, with its acceptance count.
    pub(crate) fn collect_all(&self, limit: u64) -> Vec<(Vec<u8>, u64)> {
        struct All {
            limit: u64,
            out: Vec<(Vec<u8>, u64)>,
        }
        impl Visitor for All {
            fn limit(&self) -> u64 {
                self.limit
            }
            fn leaf(&mut self, _: &mut Walker, seq: &[u8], acc: u64) -> Flow {
                self.out.push((seq.to_vec(), acc));
                Flow::Continue
            }
        }
        let run = |prefix: Option<&[u8]>| {
            let (mut walker, mut track) = match prefix {
                Some(p) => self.replay(p),
                None => (self.walker(), Track::new(self.word, self.max_states)),
            };
            let mut v = All { limit, out: Vec::new() };
            if track.seq.len() == self.word.len() + 1 {
                let acc = walker.reach_count(self.word.len(), *track.seq.last().unwrap() as usize);
                if acc <= limit {
                    v.out.push((track.seq.clone(), acc));
                }
            } else {
                dfs(&mut walker, &mut track, &mut v);
            }
            v.out
        };
        let depth = self.split_depth();
        let mut out = if depth == 0 {
            run(None)
        } else {
            self.prefixes(depth, limit)
                .par_iter()
                .flat_map_iter(|p| run(Some(p)))
                .collect()
        };
        out.sort();
        out
    }
}
