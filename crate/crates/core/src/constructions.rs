//! Explicit witness automata and figure fixtures.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::automaton::{Nfa, Transition};
use crate::complexity::DoubletonQuery;
use crate::error::{Error, Result};
use crate::word::Word;

/// Figure fixtures known to [`fixture`].
pub const FIXTURE_IDS: [&str; 8] = [
    "fig2",
    "fig3",
    "fig4-left",
    "fig4-right",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
];

/// State path of the Kayleigh graph for length `n` (label independent).
///
/// Odd `n = 2m + 1` walks `0, 1, ..., m`, loops once at `m` and walks back
/// to 0. Even `n` takes the path for `n - 1` and steps into a fresh state.
pub fn kayleigh_path(n: usize) -> Vec<usize> {
    if n == 0 {
        return vec![0];
    }
    let odd = if n % 2 == 1 { n } else { n - 1 };
    let m = odd / 2;
    let mut path: Vec<usize> = (0..=m).collect();
    path.extend((0..=m).rev());
    if n.is_multiple_of(2) {
        path.push(m + 1);
    }
    path
}

/// Kayleigh graph of `x`: `⌊n/2⌋ + 1` states, accepting `x` along the only
/// accepting path of length `n`.
pub fn kayleigh(x: &Word) -> Result<Nfa> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let path = kayleigh_path(x.len());
    Nfa::from_paths(x.len() / 2 + 1, x.default_base(), *path.last().unwrap(), &[(&path, x)])
}

/// Positions `j` (1-based, `2..=m+1`) of states whose forward and backward
/// out-labels agree in the Kayleigh graph of the odd prefix of `x`, plus
/// position 1 when an even-length `x` also conflicts at the initial state.
fn conflicts(x: &[u8]) -> Vec<usize> {
    let n = x.len();
    let odd = if n % 2 == 1 { n } else { n - 1 };
    let m = odd / 2;
    let at = |j: usize| x[j - 1];
    let mut out = Vec::new();
    if n.is_multiple_of(2) && at(1) == at(n) {
        out.push(1);
    }
    for j in 2..=m + 1 {
        if at(j) == at(odd + 2 - j) {
            out.push(j);
        }
    }
    out
}

/// State path of the exploded Kayleigh graph for `x`.
pub fn exploded_path(x: &Word) -> Vec<usize> {
    let n = x.len();
    if n == 0 {
        return vec![0];
    }
    let odd = if n % 2 == 1 { n } else { n - 1 };
    let m = odd / 2;
    let split = conflicts(x.symbols());
    // state q_j is labeled j - 1; its starred copy gets a fresh label
    let mut star = vec![None; m + 2];
    for (k, &j) in split.iter().enumerate() {
        star[j] = Some(m + 1 + k);
    }
    let mut path: Vec<usize> = (0..=m).collect();
    for i in m + 1..=odd {
        let j = odd + 1 - i;
        path.push(star[j].unwrap_or(j - 1));
    }
    if n.is_multiple_of(2) {
        path.push(m + 1 + split.len());
    }
    path
}

/// Deterministic variant of the Kayleigh graph: every state whose two
/// out-edges carry the same symbol is split into a forward copy and a
/// starred copy entered from the backward direction.
pub fn exploded_kayleigh(x: &Word) -> Result<Nfa> {
    if x.is_empty() {
        return Err(Error::EmptyWord);
    }
    let path = exploded_path(x);
    let states = path.iter().max().unwrap() + 1;
    Nfa::from_paths(states, x.default_base(), *path.last().unwrap(), &[(&path, x)])
}

/// State paths of the Chambers–Hyde automaton for a doubleton, sharing one
/// state pool. Both paths start in 0 and end in the accept state.
pub fn chambers_hyde_paths(n: usize) -> (Vec<usize>, Vec<usize>) {
    if n % 2 == 1 {
        let m = n / 2;
        let first = kayleigh_path(n);
        let second = first.iter().map(|&s| if s == 0 { 0 } else { s + m }).collect();
        (first, second)
    } else {
        // fresh initial state 0 in front of two odd-length branches into state 1
        let m = (n - 1) / 2;
        let mut first = vec![0];
        first.extend(kayleigh_path(n - 1).into_iter().map(|s| s + 1));
        let mut second = vec![0];
        second.extend((0..=m).map(|i| m + 2 + i));
        second.extend((1..=m).rev().map(|i| m + 2 + i));
        second.push(1);
        (first, second)
    }
}

/// Automaton with `f⌊n/2⌋ + 1` states accepting each word of the query
/// along one path and nothing else at length `n`.
pub fn chambers_hyde(query: &DoubletonQuery) -> Result<Nfa> {
    let words = query.words();
    let n = query.len();
    if words.len() == 1 {
        return kayleigh(&words[0]).and_then(|m| m.with_alphabet_size(query.base()));
    }
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let (a, b) = chambers_hyde_paths(n);
    let accept = *a.last().unwrap();
    Nfa::from_paths(2 * (n / 2) + 1, query.base(), accept, &[(&a, &words[0]), (&b, &words[1])])
}

/// Two-state automaton accepting `x` with a single excursion: `x_1` into a
/// state with both loops, `x_n` back to the start.
pub fn pacific(x: &Word) -> Result<Nfa> {
    if x.len() < 2 {
        return Err(Error::EmptyWord);
    }
    let (first, last) = (x.symbols()[0], x.symbols()[x.len() - 1]);
    let base = x.default_base();
    let mut edges = BTreeSet::new();
    edges.insert(Transition::new(0, first, 1));
    edges.insert(Transition::new(1, last, 0));
    for a in 0..base as u8 {
        edges.insert(Transition::new(1, a, 1));
    }
    Nfa::new(2, base, 0, edges)
}

fn edges(list: &[(usize, u8, usize)]) -> Vec<Transition> {
    list.iter().map(|&(s, a, t)| Transition::new(s, a, t)).collect()
}

/// The automaton drawn in the given figure.
pub fn fixture(id: &str) -> Result<Nfa> {
    let w = |s: &str| s.parse::<Word>().expect("literal word");
    match id {
        "fig2" => Nfa::new(
            4,
            2,
            0,
            edges(&[(0, 0, 1), (1, 1, 2), (2, 0, 3), (3, 1, 3), (3, 0, 1), (2, 0, 0)]),
        ),
        "fig3" => Nfa::new(
            4,
            2,
            2,
            edges(&[(0, 0, 1), (1, 0, 2), (3, 0, 3), (2, 0, 3), (2, 0, 1), (3, 1, 0)]),
        ),
        "fig4-left" => Nfa::new(3, 2, 0, edges(&[(0, 0, 1), (1, 1, 2), (2, 1, 1), (2, 1, 0)])),
        "fig4-right" => Nfa::new(3, 2, 0, edges(&[(0, 0, 1), (1, 1, 2), (2, 1, 0), (0, 1, 2)])),
        "fig5" => chambers_hyde(&DoubletonQuery::new(vec![w("0110"), w("1111")], 2)?),
        "fig6" => Nfa::new(
            3,
            2,
            2,
            edges(&[(0, 1, 1), (1, 1, 2), (2, 1, 1), (1, 1, 0), (0, 0, 2)]),
        ),
        "fig7" => exploded_kayleigh(&w("0000000111011")),
        "fig8" => Nfa::new(2, 2, 0, edges(&[(0, 0, 0), (0, 0, 1), (1, 0, 0), (1, 1, 1)])),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn check_density_args(b: usize, epsilon: &BigRational) -> Result<()> {
    if !(1..=4).contains(&b) {
        return Err(Error::BadBase(b));
    }
    if *epsilon <= BigRational::zero() {
        return Err(Error::BadEpsilon);
    }
    Ok(())
}

/// `(1/2 + 1/(2b) + ε) n`.
fn density_threshold(n: usize, b: usize, epsilon: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let per_base = BigRational::new(BigInt::one(), BigInt::from(2 * b));
    (half + per_base + epsilon) * BigRational::from_integer(BigInt::from(n))
}

/// Exact fraction of `x ∈ [b]^n` whose exploded Kayleigh graph has at most
/// `(1/2 + 1/(2b) + ε) n` states.
///
/// Conflicts occur independently at each of the `⌊n/2⌋` (odd `n`) or
/// `n/2` (even `n`) mirrored position pairs with probability `1/b`, so the
/// state count is a shifted binomial.
pub fn density_fraction(n: usize, b: usize, epsilon: &BigRational) -> Result<BigRational> {
    check_density_args(b, epsilon)?;
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let pairs = n / 2;
    let fixed = pairs + 1;
    let threshold = density_threshold(n, b, epsilon).floor().to_integer();
    let limit = threshold - BigInt::from(fixed);
    if limit < BigInt::zero() {
        return Ok(BigRational::zero());
    }
    let limit = usize::try_from(limit).unwrap_or(usize::MAX).min(pairs);
    let mut numerator = BigUint::zero();
    let mut binom = BigUint::one();
    for c in 0..=pairs {
        if c <= limit {
            numerator += &binom * BigUint::from(b - 1).pow((pairs - c) as u32);
        }
        binom = binom * BigUint::from(pairs - c) / BigUint::from(c + 1);
    }
    Ok(BigRational::new(
        BigInt::from(numerator),
        BigInt::from(BigUint::from(b).pow(pairs as u32)),
    ))
}

/// [`density_fraction`] by building the exploded graph of every word.
pub fn density_fraction_enumerated(n: usize, b: usize, epsilon: &BigRational) -> Result<BigRational> {
    check_density_args(b, epsilon)?;
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if n > 16 {
        return Err(Error::LengthTooLarge { length: n, limit: 16 });
    }
    let threshold = density_threshold(n, b, epsilon);
    let total = (b as u64).pow(n as u32);
    let hits = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let mut symbols = vec![0u8; n];
            let mut v = i;
            for s in symbols.iter_mut().rev() {
                *s = (v % b as u64) as u8;
                v /= b as u64;
            }
            let states = exploded_path(&Word::new(symbols)).iter().max().unwrap() + 1;
            BigRational::from_integer(BigInt::from(states)) <= threshold
        })
        .count();
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}
