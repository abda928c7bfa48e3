//! Automata with a single initial state (state 0) and a single accept state.
//!
//! Transitions always carry a symbol; there are no ε-moves. The transition
//! relation is a set, so two edges between the same states are distinct only
//! when their symbols differ.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::StateSequence;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub from: usize,
    pub symbol: u8,
    pub to: usize,
}

impl Transition {
    pub fn new(from: usize, symbol: u8, to: usize) -> Self {
        Transition { from, symbol, to }
    }
}

impl From<(usize, u8, usize)> for Transition {
    fn from((from, symbol, to): (usize, u8, usize)) -> Self {
        Transition { from, symbol, to }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Nfa {
    state_count: usize,
    alphabet_size: usize,
    accept: usize,
    /// Sorted by (from, symbol, to).
    transitions: Vec<Transition>,
}

impl Nfa {
    /// Builds and validates an automaton. The initial state is always 0.
    pub fn new<T: Into<Transition>>(
        state_count: usize,
        alphabet_size: usize,
        accept: usize,
        transitions: impl IntoIterator<Item = T>,
    ) -> Result<Nfa> {
        let nfa = Nfa {
            state_count,
            alphabet_size,
            accept,
            transitions: transitions.into_iter().map(Into::into).collect(),
        };
        nfa.validate()?;
        let mut nfa = nfa;
        nfa.transitions.sort_unstable();
        Ok(nfa)
    }

    /// Builds an automaton from a set of transitions, which can not contain duplicates.
    pub(crate) fn from_set(
        state_count: usize,
        alphabet_size: usize,
        accept: usize,
        transitions: BTreeSet<Transition>,
    ) -> Nfa {
        let nfa = Nfa {
            state_count,
            alphabet_size,
            accept,
            transitions: transitions.into_iter().collect(),
        };
        debug_assert!(nfa.validate().is_ok());
        nfa
    }

    /// The union of the edges traversed by each `(states, word)` path.
    ///
    /// State labels are taken as given; every path must start in state 0 and
    /// have one more entry than its word.
    pub fn from_paths(
        state_count: usize,
        alphabet_size: usize,
        accept: usize,
        paths: &[(&[usize], &Word)],
    ) -> Result<Nfa> {
        let mut set = BTreeSet::new();
        for (states, word) in paths {
            if states.len() != word.len() + 1 {
                return Err(Error::LengthMismatch {
                    sequence: states.len(),
                    word: word.len(),
                });
            }
            for (i, &symbol) in word.symbols().iter().enumerate() {
                set.insert(Transition::new(states[i], symbol, states[i + 1]));
            }
        }
        let nfa = Nfa {
            state_count,
            alphabet_size,
            accept,
            transitions: set.into_iter().collect(),
        };
        nfa.validate()?;
        Ok(nfa)
    }

    /// Checks every structural invariant; identity on valid automata.
    pub fn validate(&self) -> Result<()> {
        if self.state_count == 0 {
            return Err(Error::NoStates);
        }
        if self.alphabet_size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if self.accept >= self.state_count {
            return Err(Error::OutOfRangeState {
                state: self.accept,
                state_count: self.state_count,
            });
        }
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            for state in [t.from, t.to] {
                if state >= self.state_count {
                    return Err(Error::OutOfRangeState {
                        state,
                        state_count: self.state_count,
                    });
                }
            }
            if t.symbol as usize >= self.alphabet_size {
                return Err(Error::OutOfRangeSymbol {
                    symbol: t.symbol,
                    alphabet_size: self.alphabet_size,
                });
            }
            if !seen.insert(*t) {
                return Err(Error::DuplicateTransition {
                    from: t.from,
                    symbol: t.symbol,
                    to: t.to,
                });
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Same automaton over a larger alphabet.
    pub fn with_alphabet_size(mut self, alphabet_size: usize) -> Result<Nfa> {
        self.alphabet_size = alphabet_size;
        self.validate()?;
        Ok(self)
    }

    /// Set of states reached from `from` on `symbol`.
    pub fn successors(&self, from: usize, symbol: u8) -> impl Iterator<Item = usize> + '_ {
        let start = self
            .transitions
            .partition_point(|t| (t.from, t.symbol) < (from, symbol));
        self.transitions[start..]
            .iter()
            .take_while(move |t| t.from == from && t.symbol == symbol)
            .map(|t| t.to)
    }

    /// True iff some path from the initial state to the accept state spells `word`.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        word.check_alphabet(self.alphabet_size)?;
        let mut current = vec![false; self.state_count];
        current[0] = true;
        for &symbol in word.symbols() {
            let mut next = vec![false; self.state_count];
            for t in self.transitions.iter().filter(|t| t.symbol == symbol) {
                if current[t.from] {
                    next[t.to] = true;
                }
            }
            current = next;
        }
        Ok(current[self.accept])
    }

    /// No two transitions share a source state and a symbol. Totality is not required.
    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .windows(2)
            .all(|w| (w[0].from, w[0].symbol) != (w[1].from, w[1].symbol))
    }

    /// Reverses every edge and swaps the roles of the initial and accept states.
    ///
    /// States 0 and `accept` trade labels so that the new initial state is again 0.
    pub fn reversed(&self) -> Nfa {
        let swap = |s: usize| {
            if s == 0 {
                self.accept
            } else if s == self.accept {
                0
            } else {
                s
            }
        };
        let set = self
            .transitions
            .iter()
            .map(|t| Transition::new(swap(t.to), t.symbol, swap(t.from)))
            .collect();
        Nfa::from_set(self.state_count, self.alphabet_size, self.accept, set)
    }

    /// Relabels states by `perm` (old index to new index); `perm[0]` must be 0.
    pub fn relabeled(&self, perm: &[usize]) -> Nfa {
        debug_assert_eq!(perm[0], 0);
        let set = self
            .transitions
            .iter()
            .map(|t| Transition::new(perm[t.from], t.symbol, perm[t.to]))
            .collect();
        Nfa::from_set(self.state_count, self.alphabet_size, perm[self.accept], set)
    }

    /// Canonical representative under relabelings of the non-initial states.
    ///
    /// Two automata are isomorphic (by an isomorphism fixing the initial state)
    /// iff their canonical forms are equal. Cost grows factorially with the
    /// state count, which stays small for every automaton compared this way.
    pub fn canonical_form(&self) -> Nfa {
        let q = self.state_count;
        let mut perm: Vec<usize> = (0..q).collect();
        let mut best: Option<(usize, Vec<Transition>)> = None;
        loop {
            let candidate = self.relabeled(&perm);
            let key = (candidate.accept, candidate.transitions);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            if !next_permutation(&mut perm[1..]) {
                break;
            }
        }
        let (accept, transitions) = best.expect("at least one permutation");
        Nfa {
            state_count: q,
            alphabet_size: self.alphabet_size,
            accept,
            transitions,
        }
    }
}

fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// The automaton traversed by the accepting path `sequence` for `word`.
///
/// Its states are the distinct entries of the sequence, the initial state is
/// `s_0 = 0`, the accept state is the last entry, and the transitions are
/// exactly `(s_i, w_{i+1}, s_{i+1})` with repeats merged.
pub fn induced_nfa(sequence: &StateSequence, word: &Word, alphabet_size: usize) -> Result<Nfa> {
    let states = sequence.entries();
    if states.len() != word.len() + 1 {
        return Err(Error::LengthMismatch {
            sequence: states.len(),
            word: word.len(),
        });
    }
    word.check_alphabet(alphabet_size)?;
    Nfa::from_paths(
        sequence.state_count(),
        alphabet_size,
        *states.last().expect("sequence is nonempty"),
        &[(states, word)],
    )
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Nfa(q={}, b={}, accept={}, {{",
            self.state_count, self.alphabet_size, self.accept
        )?;
        for (i, t) in self.transitions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{},{})", t.from, t.symbol, t.to)?;
        }
        f.write_str("})")
    }
}
