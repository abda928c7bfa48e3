//! Brute-force enumeration of every automaton with a few states.
//!
//! This is the independent check on the path-induced search: no restriction
//! to automata traversed by an accepting path, just every transition subset
//! and every accept state. The state-0 initial convention loses nothing,
//! since any automaton can be relabeled so that its initial state is 0.

use std::collections::HashMap;

use crate::automaton::{Nfa, Transition};
use crate::counting::ceil_log_u64;
use crate::error::{Error, Result};
use crate::word::{Mode, Word};

/// Largest state count the oracle enumerates.
pub const ORACLE_MAX_STATES: usize = 3;
/// Longest word the oracle answers for.
pub const ORACLE_MAX_LEN: usize = 6;

/// Compact automaton with at most 8 states and 4 symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallNfa {
    pub states: usize,
    pub alphabet: usize,
    pub accept: usize,
    /// `succ[s * alphabet + a]` is the successor mask.
    pub succ: [u8; 32],
}

impl SmallNfa {
    fn from_bits(states: usize, alphabet: usize, accept: usize, bits: u64) -> Self {
        let mut succ = [0u8; 32];
        for (i, slot) in succ.iter_mut().enumerate().take(states * alphabet) {
            *slot = ((bits >> (i * states)) & ((1 << states) - 1)) as u8;
        }
        SmallNfa {
            states,
            alphabet,
            accept,
            succ,
        }
    }

    fn bits(&self) -> u64 {
        (0..self.states * self.alphabet).fold(0u64, |acc, i| {
            acc | ((self.succ[i] as u64) << (i * self.states))
        })
    }

    #[inline]
    fn next(&self, s: usize, a: usize) -> u8 {
        self.succ[s * self.alphabet + a]
    }

    /// Whether no relabeling of states `1..q` gives a smaller encoding.
    fn is_canonical(&self, perms: &[Vec<usize>]) -> bool {
        let own = (self.accept, self.bits());
        perms.iter().all(|perm| {
            let mut succ = [0u8; 32];
            for s in 0..self.states {
                for a in 0..self.alphabet {
                    let mut mask = 0u8;
                    let mut m = self.next(s, a);
                    while m != 0 {
                        let t = m.trailing_zeros() as usize;
                        m &= m - 1;
                        mask |= 1 << perm[t];
                    }
                    succ[perm[s] * self.alphabet + a] = mask;
                }
            }
            let other = SmallNfa {
                succ,
                accept: perm[self.accept],
                ..*self
            };
            own <= (other.accept, other.bits())
        })
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut transitions = Vec::new();
        for s in 0..self.states {
            for a in 0..self.alphabet {
                let mut m = self.next(s, a);
                while m != 0 {
                    let t = m.trailing_zeros() as usize;
                    m &= m - 1;
                    transitions.push(Transition::new(s, a as u8, t));
                }
            }
        }
        Nfa::new(self.states, self.alphabet, self.accept, transitions).expect("valid by construction")
    }

    /// Total length-`n` paths from 0 to the accept state, saturating.
    pub fn total_paths(&self, n: usize) -> u64 {
        let mut v = [0u64; 8];
        v[0] = 1;
        for _ in 0..n {
            let mut next = [0u64; 8];
            for s in 0..self.states {
                if v[s] == 0 {
                    continue;
                }
                for a in 0..self.alphabet {
                    let mut m = self.next(s, a);
                    while m != 0 {
                        let t = m.trailing_zeros() as usize;
                        m &= m - 1;
                        next[t] = next[t].saturating_add(v[s]);
                    }
                }
            }
            v = next;
        }
        v[self.accept]
    }

    pub fn paths_for_word(&self, word: &[u8]) -> u64 {
        let mut v = [0u64; 8];
        v[0] = 1;
        for &a in word {
            let mut next = [0u64; 8];
            for s in 0..self.states {
                if v[s] == 0 {
                    continue;
                }
                let mut m = self.next(s, a as usize);
                while m != 0 {
                    let t = m.trailing_zeros() as usize;
                    m &= m - 1;
                    next[t] = next[t].saturating_add(v[s]);
                }
            }
            v = next;
        }
        v[self.accept]
    }

    pub fn is_deterministic(&self) -> bool {
        self.succ[..self.states * self.alphabet]
            .iter()
            .all(|m| m.count_ones() <= 1)
    }

    /// Accepted words of length `n`, each encoded base-`alphabet` as in [`Word::rank`].
    pub fn accepted_words(&self, n: usize, out: &mut Vec<u64>) {
        out.clear();
        // states from which the accept state is reachable in exactly k steps
        let mut alive = [0u8; 32];
        alive[0] = 1 << self.accept;
        for k in 1..=n {
            let mut mask = 0u8;
            for s in 0..self.states {
                for a in 0..self.alphabet {
                    if self.next(s, a) & alive[k - 1] != 0 {
                        mask |= 1 << s;
                    }
                }
            }
            alive[k] = mask;
        }
        self.walk(1, 0, n, 0, &alive, out);
    }

    fn walk(&self, current: u8, depth: usize, n: usize, code: u64, alive: &[u8; 32], out: &mut Vec<u64>) {
        if depth == n {
            if current & (1 << self.accept) != 0 {
                out.push(code);
            }
            return;
        }
        let remaining = n - depth - 1;
        for a in 0..self.alphabet {
            let mut next = 0u8;
            let mut m = current;
            while m != 0 {
                let s = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.next(s, a);
            }
            next &= alive[remaining];
            if next != 0 {
                self.walk(next, depth + 1, n, code * self.alphabet as u64 + a as u64, alive, out);
            }
        }
    }
}

fn relabelings(states: usize) -> Vec<Vec<usize>> {
    // every permutation of 1..states fixing 0, except the identity
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..states).collect();
    fn permute(k: usize, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == rest.len() {
            let mut perm = vec![0];
            perm.extend_from_slice(rest);
            out.push(perm);
            return;
        }
        for i in k..rest.len() {
            rest.swap(k, i);
            permute(k + 1, rest, out);
            rest.swap(k, i);
        }
    }
    permute(0, &mut rest, &mut out);
    out.retain(|p| p.iter().enumerate().any(|(i, &v)| i != v));
    out
}

/// Calls `f` on every automaton with exactly `states` states over `alphabet`
/// symbols. With `canonical_only`, one representative per isomorphism class
/// (relabelings fixing state 0) is visited.
pub fn for_each_nfa(states: usize, alphabet: usize, canonical_only: bool, mut f: impl FnMut(&SmallNfa)) {
    find_nfa(states, alphabet, canonical_only, |m| {
        f(m);
        false
    });
}

/// First automaton (in enumeration order) satisfying `pred`.
pub fn find_nfa(
    states: usize,
    alphabet: usize,
    canonical_only: bool,
    mut pred: impl FnMut(&SmallNfa) -> bool,
) -> Option<SmallNfa> {
    assert!((1..=8).contains(&states) && (1..=4).contains(&alphabet));
    let width = states * states * alphabet;
    assert!(width <= 36, "too many automata to enumerate");
    let perms = if canonical_only { relabelings(states) } else { Vec::new() };
    for bits in 0..(1u64 << width) {
        for accept in 0..states {
            let m = SmallNfa::from_bits(states, alphabet, accept, bits);
            if canonical_only && !m.is_canonical(&perms) {
                continue;
            }
            if pred(&m) {
                return Some(m);
            }
        }
    }
    None
}

/// Minimal state counts over all automata with at most [`ORACLE_MAX_STATES`]
/// states, for every word up to a length, both nondeterministic modes and
/// every log-acceptance bound up to the word length.
#[derive(Debug, Clone)]
pub struct OracleTable {
    alphabet: usize,
    max_len: usize,
    /// (mode, word length, word rank) -> min states per bound `m = 0..=max_m`
    best: HashMap<(Mode, usize, u64), Vec<Option<usize>>>,
    max_m: usize,
}

impl OracleTable {
    pub fn build(alphabet: usize, max_len: usize) -> Result<Self> {
        if max_len > ORACLE_MAX_LEN {
            return Err(Error::WordTooLong {
                length: max_len,
                limit: ORACLE_MAX_LEN,
            });
        }
        if alphabet < 2 {
            return Err(Error::BaseTooSmall(alphabet));
        }
        let max_m = max_len * 3;
        let mut best: HashMap<(Mode, usize, u64), Vec<Option<usize>>> = HashMap::new();
        let mut words = Vec::new();
        for states in 1..=ORACLE_MAX_STATES {
            for_each_nfa(states, alphabet, true, |m| {
                for n in 0..=max_len {
                    m.accepted_words(n, &mut words);
                    if words.is_empty() {
                        continue;
                    }
                    let by_words = ceil_log_u64(words.len() as u64, alphabet) as usize;
                    let by_paths = ceil_log_u64(m.total_paths(n), alphabet) as usize;
                    let by_determinism = if m.is_deterministic() { by_words } else { usize::MAX };
                    for (mode, log) in [(Mode::Omega, by_words), (Mode::Pi, by_paths), (Mode::Delta, by_determinism)] {
                        if log > max_m {
                            continue;
                        }
                        for &code in &words {
                            let slot = best
                                .entry((mode, n, code))
                                .or_insert_with(|| vec![None; max_m + 1]);
                            for entry in &mut slot[log..] {
                                if entry.is_none_or(|e| states < e) {
                                    *entry = Some(states);
                                }
                            }
                        }
                    }
                }
            });
        }
        Ok(OracleTable {
            alphabet,
            max_len,
            best,
            max_m,
        })
    }

    /// `h*` restricted to automata with at most three states; `None` means
    /// every witness needs more.
    pub fn h_star(&self, x: &Word, m: u32, mode: Mode) -> Option<usize> {
        assert!(x.len() <= self.max_len);
        let m = (m as usize).min(self.max_m);
        self.best
            .get(&(mode, x.len(), x.rank(self.alphabet)))
            .and_then(|slot| slot[m])
    }
}

/// Brute-force `h*` over every automaton with at most three states.
///
/// Returns `Ok(None)` when no automaton with three or fewer states qualifies.
pub fn oracle_h_star(x: &Word, m: u32, base: usize, mode: Mode) -> Result<Option<usize>> {
    if x.len() > ORACLE_MAX_LEN {
        return Err(Error::WordTooLong {
            length: x.len(),
            limit: ORACLE_MAX_LEN,
        });
    }
    if base < 2 {
        return Err(Error::BaseTooSmall(base));
    }
    x.check_alphabet(base)?;
    let n = x.len();
    let code = x.rank(base);
    let mut words = Vec::new();
    for states in 1..=ORACLE_MAX_STATES {
        let found = find_nfa(states, base, true, |a| {
            if a.paths_for_word(x.symbols()) == 0 {
                return false;
            }
            let acc = match mode {
                Mode::Pi => a.total_paths(n),
                Mode::Omega => {
                    a.accepted_words(n, &mut words);
                    words.len() as u64
                }
                Mode::Delta => {
                    if !a.is_deterministic() {
                        return false;
                    }
                    a.total_paths(n)
                }
            };
            debug_assert!(mode != Mode::Omega || words.contains(&code));
            ceil_log_u64(acc, base) <= m
        });
        if found.is_some() {
            return Ok(Some(states));
        }
    }
    Ok(None)
}

/// Whether `x` is the only word of its length accepted along exactly one path.
///
/// `succ[s * alphabet + a]` holds successor masks for `states` states.
pub(crate) fn unique_path_condition(succ: &[u32], states: usize, alphabet: usize, accept: usize, x: &[u8]) -> bool {
    let n = x.len();
    // x itself: exactly one path
    let mut v = vec![0u8; states];
    v[0] = 1;
    for &a in x {
        let mut next = vec![0u8; states];
        for s in 0..states {
            if v[s] == 0 {
                continue;
            }
            let mut m = succ[s * alphabet + a as usize];
            while m != 0 {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                next[t] = (next[t] + v[s]).min(2);
            }
        }
        v = next;
    }
    if v[accept] != 1 {
        return false;
    }
    // alive[k]: states reaching accept in exactly k steps
    let mut alive = vec![0u32; n + 1];
    alive[0] = 1 << accept;
    for k in 1..=n {
        let mut mask = 0u32;
        for s in 0..states {
            for a in 0..alphabet {
                if succ[s * alphabet + a] & alive[k - 1] != 0 {
                    mask |= 1 << s;
                }
            }
        }
        alive[k] = mask;
    }
    let mut start = vec![0u8; states];
    start[0] = 1;
    let mut prefix = Vec::with_capacity(n);
    !other_unique_word(succ, states, alphabet, accept, x, &alive, &start, &mut prefix)
}

/// Searches for a word other than `x` with exactly one accepting path.
#[allow(clippy::too_many_arguments)]
fn other_unique_word(
    succ: &[u32],
    states: usize,
    alphabet: usize,
    accept: usize,
    x: &[u8],
    alive: &[u32],
    counts: &[u8],
    prefix: &mut Vec<u8>,
) -> bool {
    let depth = prefix.len();
    let n = x.len();
    if depth == n {
        return counts[accept] == 1 && prefix.as_slice() != x;
    }
    let remaining = n - depth - 1;
    for a in 0..alphabet {
        let mut next = vec![0u8; states];
        for s in 0..states {
            if counts[s] == 0 {
                continue;
            }
            let mut m = succ[s * alphabet + a] & alive[remaining];
            while m != 0 {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                next[t] = (next[t] + counts[s]).min(2);
            }
        }
        // a total of exactly one needs some state holding exactly one path
        if !next.contains(&1) {
            continue;
        }
        prefix.push(a as u8);
        let hit = other_unique_word(succ, states, alphabet, accept, x, alive, &next, prefix);
        prefix.pop();
        if hit {
            return true;
        }
    }
    false
}

/// [`unique_path_condition`] on a general automaton.
pub fn is_unique_path_witness(m: &Nfa, x: &Word) -> bool {
    let b = m.alphabet_size();
    let q = m.state_count();
    if q > 32 || x.check_alphabet(b).is_err() {
        return false;
    }
    let mut succ = vec![0u32; q * b];
    for t in m.transitions() {
        succ[t.from * b + t.symbol as usize] |= 1 << t.to;
    }
    unique_path_condition(&succ, q, b, m.accept(), x.symbols())
}

impl SmallNfa {
    pub fn unique_path_condition(&self, x: &[u8]) -> bool {
        let succ: Vec<u32> = self.succ[..self.states * self.alphabet]
            .iter()
            .map(|&m| m as u32)
            .collect();
        unique_path_condition(&succ, self.states, self.alphabet, self.accept, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_paths_for_word, count_paths_total, count_words};
    use num_bigint::BigUint;

    #[test]
    fn enumeration_sizes() {
        let mut all = 0;
        for_each_nfa(2, 2, false, |_| all += 1);
        assert_eq!(all, 256 * 2);
        let mut canonical = 0;
        for_each_nfa(2, 2, true, |_| canonical += 1);
        assert_eq!(canonical, all);
        let mut three = 0;
        for_each_nfa(3, 1, true, |_| three += 1);
        // 2^9 * 3 automata; orbits under swapping states 1 and 2
        let mut fixed = 0;
        for_each_nfa(3, 1, false, |m| {
            let perms = relabelings(3);
            let swapped = {
                let p = &perms[0];
                let mut succ = [0u8; 32];
                for s in 0..3 {
                    let mut mask = 0u8;
                    let mut bits = m.succ[s];
                    while bits != 0 {
                        let t = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        mask |= 1 << p[t];
                    }
                    succ[p[s]] = mask;
                }
                SmallNfa { succ, accept: p[m.accept], ..*m }
            };
            if swapped == *m {
                fixed += 1;
            }
        });
        assert_eq!(three, (512 * 3 + fixed) / 2);
    }

    #[test]
    fn small_counts_match_reference() {
        let mut checked = 0;
        for_each_nfa(2, 2, false, |m| {
            let nfa = m.to_nfa();
            for n in 0..5 {
                assert_eq!(BigUint::from(m.total_paths(n)), count_paths_total(&nfa, n));
                let mut words = Vec::new();
                m.accepted_words(n, &mut words);
                assert_eq!(BigUint::from(words.len()), count_words(&nfa, n).unwrap());
            }
            let w: Word = "0110".parse().unwrap();
            assert_eq!(
                BigUint::from(m.paths_for_word(w.symbols())),
                count_paths_for_word(&nfa, &w).unwrap()
            );
            checked += 1;
        });
        assert_eq!(checked, 512);
    }

    #[test]
    fn oracle_examples() {
        let x: Word = "001011".parse().unwrap();
        assert_eq!(oracle_h_star(&x, 4, 2, Mode::Omega).unwrap(), Some(2));
        let zero: Word = "0".parse().unwrap();
        assert_eq!(oracle_h_star(&zero, 0, 2, Mode::Pi).unwrap(), Some(1));
        let long: Word = "0000000".parse().unwrap();
        assert!(oracle_h_star(&long, 0, 2, Mode::Pi).is_err());
    }

    #[test]
    fn unique_path_witness_matches_brute_force() {
        let x: Word = "0110".parse().unwrap();
        for_each_nfa(2, 2, false, |m| {
            let brute = Word::all(2, 4).all(|y| {
                let c = m.paths_for_word(y.symbols());
                if y == x {
                    c == 1
                } else {
                    c != 1
                }
            });
            assert_eq!(m.unique_path_condition(x.symbols()), brute);
        });
    }
}
