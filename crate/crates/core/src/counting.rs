//! Exact acceptance counting over arbitrary-precision integers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::automaton::Nfa;
use crate::error::{Error, Result};
use crate::word::{Mode, Word};

/// Largest automaton accepted by [`count_words`].
pub const WORD_COUNT_STATE_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AcceptanceCount {
    Finite(BigUint),
    /// Deterministic mode on a nondeterministic automaton.
    Infinite,
}

impl AcceptanceCount {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            AcceptanceCount::Finite(v) => Some(v),
            AcceptanceCount::Infinite => None,
        }
    }
}

impl From<u64> for AcceptanceCount {
    fn from(v: u64) -> Self {
        AcceptanceCount::Finite(BigUint::from(v))
    }
}

impl fmt::Display for AcceptanceCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AcceptanceCount::Finite(v) => write!(f, "{v}"),
            AcceptanceCount::Infinite => f.write_str("inf"),
        }
    }
}

/// `ceil(log_b(acc))`, or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogAcc {
    Finite(u32),
    Infinite,
}

impl LogAcc {
    pub fn finite(self) -> Option<u32> {
        match self {
            LogAcc::Finite(m) => Some(m),
            LogAcc::Infinite => None,
        }
    }
}

impl fmt::Display for LogAcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogAcc::Finite(m) => write!(f, "{m}"),
            LogAcc::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for LogAcc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LogAcc::Finite(m) => s.serialize_u32(*m),
            LogAcc::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Smallest `m` with `base^m >= value`. `value` must be positive.
pub fn ceil_log(value: &BigUint, base: usize) -> u32 {
    debug_assert!(base >= 2 && !value.is_zero());
    let base = BigUint::from(base);
    let mut power = BigUint::one();
    let mut m = 0;
    while &power < value {
        power *= &base;
        m += 1;
    }
    m
}

/// Same as [`ceil_log`] for machine integers.
pub fn ceil_log_u64(value: u64, base: usize) -> u32 {
    debug_assert!(base >= 2 && value > 0);
    let mut power: u128 = 1;
    let mut m = 0;
    while power < value as u128 {
        power *= base as u128;
        m += 1;
    }
    m
}

/// `base^m`, saturating at `u64::MAX`.
pub fn saturating_pow(base: usize, m: u32) -> u64 {
    (base as u64).checked_pow(m).unwrap_or(u64::MAX)
}

/// Number of length-`n` paths from the initial to the accept state, counting
/// parallel edges with different symbols separately.
pub fn count_paths_total(m: &Nfa, n: usize) -> BigUint {
    let mut v = vec![BigUint::zero(); m.state_count()];
    v[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); m.state_count()];
        for t in m.transitions() {
            if !v[t.from].is_zero() {
                next[t.to] += &v[t.from];
            }
        }
        v = next;
    }
    v.swap_remove(m.accept())
}

/// Number of accepting paths spelling exactly `word`.
pub fn count_paths_for_word(m: &Nfa, word: &Word) -> Result<BigUint> {
    word.check_alphabet(m.alphabet_size())?;
    let mut v = vec![BigUint::zero(); m.state_count()];
    v[0] = BigUint::one();
    for &symbol in word.symbols() {
        let mut next = vec![BigUint::zero(); m.state_count()];
        for t in m.transitions().iter().filter(|t| t.symbol == symbol) {
            if !v[t.from].is_zero() {
                next[t.to] += &v[t.from];
            }
        }
        v = next;
    }
    Ok(v.swap_remove(m.accept()))
}

/// `|L(M) ∩ [b]^n|` by dynamic programming over reachable state subsets.
pub fn count_words(m: &Nfa, n: usize) -> Result<BigUint> {
    let q = m.state_count();
    if q > WORD_COUNT_STATE_LIMIT {
        return Err(Error::StateCountTooLargeForWordCounting {
            state_count: q,
            limit: WORD_COUNT_STATE_LIMIT,
        });
    }
    let b = m.alphabet_size();
    // successor mask for each (state, symbol)
    let mut succ = vec![0u32; q * b];
    for t in m.transitions() {
        succ[t.from * b + t.symbol as usize] |= 1 << t.to;
    }
    let mut layer: HashMap<u32, BigUint> = HashMap::from([(1u32, BigUint::one())]);
    for _ in 0..n {
        let mut next: HashMap<u32, BigUint> = HashMap::new();
        for (&mask, count) in &layer {
            for a in 0..b {
                let mut target = 0u32;
                let mut bits = mask;
                while bits != 0 {
                    let s = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    target |= succ[s * b + a];
                }
                if target != 0 {
                    *next.entry(target).or_default() += count;
                }
            }
        }
        layer = next;
    }
    let accept_bit = 1u32 << m.accept();
    Ok(layer
        .into_iter()
        .filter(|(mask, _)| mask & accept_bit != 0)
        .map(|(_, c)| c)
        .sum())
}

/// `Acc_n^mode(M)`.
pub fn acceptance_count(m: &Nfa, n: usize, mode: Mode) -> Result<AcceptanceCount> {
    Ok(match mode {
        Mode::Delta if !m.is_deterministic() => AcceptanceCount::Infinite,
        // deterministic: one path per accepted word
        Mode::Delta => AcceptanceCount::Finite(count_paths_total(m, n)),
        Mode::Pi => AcceptanceCount::Finite(count_paths_total(m, n)),
        Mode::Omega => AcceptanceCount::Finite(count_words(m, n)?),
    })
}

/// `ceil(log_b Acc_n^mode(M))`; infinite in deterministic mode on a
/// nondeterministic automaton.
pub fn log_acc(m: &Nfa, n: usize, base: usize, mode: Mode) -> Result<LogAcc> {
    if base < 2 {
        return Err(Error::BaseTooSmall(base));
    }
    match acceptance_count(m, n, mode)? {
        AcceptanceCount::Infinite => Ok(LogAcc::Infinite),
        AcceptanceCount::Finite(v) if v.is_zero() => Err(Error::NoAcceptanceAtLength { length: n }),
        AcceptanceCount::Finite(v) => Ok(LogAcc::Finite(ceil_log(&v, base))),
    }
}

/// Every word of length `n` accepted by `m`, in lexicographic order.
pub fn accepted_words(m: &Nfa, n: usize) -> Vec<Word> {
    let q = m.state_count();
    let b = m.alphabet_size();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    let mut start = vec![false; q];
    start[0] = true;
    // co-reachability: states that can reach accept in exactly k steps
    let mut alive = vec![vec![false; q]; n + 1];
    alive[0][m.accept()] = true;
    for k in 1..=n {
        for t in m.transitions() {
            if alive[k - 1][t.to] {
                alive[k][t.from] = true;
            }
        }
    }
    fn walk(
        m: &Nfa,
        b: usize,
        n: usize,
        current: &[bool],
        alive: &[Vec<bool>],
        prefix: &mut Vec<u8>,
        out: &mut Vec<Word>,
    ) {
        let depth = prefix.len();
        if depth == n {
            if current[m.accept()] {
                out.push(Word::new(prefix.clone()));
            }
            return;
        }
        let remaining = n - depth - 1;
        for a in 0..b as u8 {
            let mut next = vec![false; current.len()];
            let mut any = false;
            for t in m.transitions().iter().filter(|t| t.symbol == a) {
                if current[t.from] && alive[remaining][t.to] {
                    next[t.to] = true;
                    any = true;
                }
            }
            if any {
                prefix.push(a);
                walk(m, b, n, &next, alive, prefix, out);
                prefix.pop();
            }
        }
    }
    walk(m, b, n, &start, &alive, &mut prefix, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Transition;

    fn all_loops() -> Nfa {
        Nfa::new(1, 2, 0, [(0, 0, 0), (0, 1, 0)]).unwrap()
    }

    #[test]
    fn all_loops_counts() {
        assert_eq!(count_paths_total(&all_loops(), 3), BigUint::from(8u32));
        assert_eq!(count_words(&all_loops(), 5).unwrap(), BigUint::from(32u32));
        assert_eq!(
            log_acc(&all_loops(), 5, 2, Mode::Omega).unwrap(),
            LogAcc::Finite(5)
        );
    }

    #[test]
    fn zero_length() {
        let m = Nfa::new(2, 2, 1, [(0, 0, 1)]).unwrap();
        assert_eq!(count_paths_total(&m, 0), BigUint::zero());
        assert_eq!(count_paths_total(&all_loops(), 0), BigUint::one());
        assert_eq!(
            log_acc(&m, 0, 2, Mode::Pi).unwrap_err(),
            Error::NoAcceptanceAtLength { length: 0 }
        );
    }

    #[test]
    fn log_acc_requires_base_two() {
        assert_eq!(
            log_acc(&all_loops(), 2, 1, Mode::Pi).unwrap_err(),
            Error::BaseTooSmall(1)
        );
    }

    #[test]
    fn word_count_guard() {
        let big = Nfa::new(33, 2, 0, Vec::<Transition>::new()).unwrap();
        assert!(matches!(
            count_words(&big, 1),
            Err(Error::StateCountTooLargeForWordCounting { .. })
        ));
    }

    #[test]
    fn ceil_logs() {
        assert_eq!(ceil_log_u64(1, 2), 0);
        assert_eq!(ceil_log_u64(3, 2), 2);
        assert_eq!(ceil_log_u64(4, 2), 2);
        assert_eq!(ceil_log_u64(5, 2), 3);
        assert_eq!(ceil_log(&BigUint::from(9u32), 3), 2);
        assert_eq!(ceil_log(&BigUint::from(10u32), 3), 3);
    }

    #[test]
    fn accepted_words_of_all_loops() {
        assert_eq!(accepted_words(&all_loops(), 3).len(), 8);
    }
}
