//! Restricted-growth state sequences and their enumeration.
//!
//! A state sequence `s_0 .. s_n` records the states visited along an accepting
//! path, numbered by first visit: `s_0 = 0` and `s_i <= 1 + max(s_0 .. s_{i-1})`.
//! Sequences with `k` distinct values of length `L` correspond to set
//! partitions of `L` elements into `k` blocks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSequence {
    entries: Vec<usize>,
}

impl StateSequence {
    /// Validates the restricted-growth property.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || entries[0] != 0 {
            return Err(Error::NotRestrictedGrowth(format!("{entries:?}")));
        }
        let mut max = 0;
        for &e in &entries[1..] {
            if e > max + 1 {
                return Err(Error::NotRestrictedGrowth(format!("{entries:?}")));
            }
            max = max.max(e);
        }
        Ok(StateSequence { entries })
    }

    /// Renumbers arbitrary state labels by order of first appearance.
    ///
    /// The first entry becomes state 0.
    pub fn canonicalize(raw: &[usize]) -> StateSequence {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let entries = raw
            .iter()
            .map(|&s| match map.iter().find(|(from, _)| *from == s) {
                Some(&(_, to)) => to,
                None => {
                    let to = map.len();
                    map.push((s, to));
                    to
                }
            })
            .collect();
        StateSequence { entries }
    }

    pub(crate) fn from_small(entries: &[u8]) -> StateSequence {
        StateSequence {
            entries: entries.iter().map(|&e| e as usize).collect(),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct states, i.e. `1 + max entry`.
    pub fn state_count(&self) -> usize {
        self.entries.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn last(&self) -> usize {
        *self.entries.last().expect("nonempty")
    }
}

impl fmt::Display for StateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.entries.iter().any(|&e| e > 9);
        for (i, e) in self.entries.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for StateSequence {
    type Err = Error;

    /// Accepts either a digit string (`0120`) or comma-separated entries (`0,1,10`).
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::NotRestrictedGrowth(text.to_string());
        let entries: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        StateSequence::new(entries)
    }
}

impl Serialize for StateSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StateSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Iterator over every restricted-growth sequence of a fixed length using at
/// most `max_states` distinct values, in lexicographic order.
///
/// An enumeration may be pinned to a prefix; the sets produced for all valid
/// prefixes of one depth (see [`prefixes`]) partition the full enumeration.
#[derive(Debug, Clone)]
pub struct StateSequences {
    current: Vec<usize>,
    /// `running_max[i] = max(current[0..=i])`
    running_max: Vec<usize>,
    fixed: usize,
    max_states: usize,
    done: bool,
}

impl StateSequences {
    pub fn new(length: usize, max_states: usize) -> Self {
        Self::with_prefix(length, max_states, &[0])
    }

    /// Sequences of `length` entries that begin with `prefix`.
    ///
    /// Yields nothing when the prefix is not itself a valid sequence start.
    pub fn with_prefix(length: usize, max_states: usize, prefix: &[usize]) -> Self {
        let valid = length >= 1
            && max_states >= 1
            && !prefix.is_empty()
            && prefix.len() <= length
            && StateSequence::new(prefix.to_vec()).is_ok()
            && prefix.iter().all(|&p| p < max_states);
        if !valid {
            return StateSequences {
                current: Vec::new(),
                running_max: Vec::new(),
                fixed: 0,
                max_states,
                done: true,
            };
        }
        let mut current = prefix.to_vec();
        current.resize(length, 0);
        let mut running_max = Vec::with_capacity(length);
        let mut m = 0;
        for &c in &current {
            m = m.max(c);
            running_max.push(m);
        }
        StateSequences {
            current,
            running_max,
            fixed: prefix.len(),
            max_states,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let len = self.current.len();
        let mut i = len;
        while i > self.fixed {
            i -= 1;
            let bound = (self.running_max[i - 1] + 1).min(self.max_states - 1);
            if self.current[i] < bound {
                self.current[i] += 1;
                self.running_max[i] = self.running_max[i - 1].max(self.current[i]);
                for j in i + 1..len {
                    self.current[j] = 0;
                    self.running_max[j] = self.running_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for StateSequences {
    type Item = StateSequence;

    fn next(&mut self) -> Option<StateSequence> {
        if self.done {
            return None;
        }
        let out = StateSequence {
            entries: self.current.clone(),
        };
        if !self.advance() {
            self.done = true;
        }
        Some(out)
    }
}

/// Every restricted-growth sequence start of exactly `depth` entries (capped at `length`).
pub fn prefixes(length: usize, max_states: usize, depth: usize) -> Vec<Vec<usize>> {
    let depth = depth.min(length).max(1);
    StateSequences::new(depth, max_states)
        .map(|s| s.entries)
        .collect()
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::from(0u32); k + 1];
    row[0] = BigUint::from(1u32);
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::from(0u32);
    }
    row[k].clone()
}

/// Number of sequences produced by `StateSequences::new(length, max_states)`.
pub fn sequence_count(length: usize, max_states: usize) -> BigUint {
    (1..=max_states).map(|k| stirling2(length, k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn listing(length: usize, q: usize) -> Vec<String> {
        StateSequences::new(length, q).map(|s| s.to_string()).collect()
    }

    #[test]
    fn small_listings() {
        assert_eq!(listing(2, 2), ["00", "01"]);
        assert_eq!(listing(3, 2), ["000", "001", "010", "011"]);
        assert_eq!(listing(1, 5), ["0"]);
    }

    #[test]
    fn count_matches_stirling_sum() {
        assert_eq!(StateSequences::new(12, 3).count(), 88_574);
        assert_eq!(sequence_count(12, 3), BigUint::from(88_574u32));
        assert_eq!(stirling2(12, 2), BigUint::from(2047u32));
        assert_eq!(stirling2(12, 3), BigUint::from(86_526u32));
    }

    #[test]
    fn prefixes_partition_the_enumeration() {
        let all: HashSet<_> = StateSequences::new(8, 4).collect();
        let mut union = Vec::new();
        for p in prefixes(8, 4, 4) {
            union.extend(StateSequences::with_prefix(8, 4, &p));
        }
        assert_eq!(union.len(), all.len());
        assert_eq!(union.into_iter().collect::<HashSet<_>>(), all);
    }

    #[test]
    fn validation_and_parsing() {
        assert!("0123333120".parse::<StateSequence>().is_ok());
        assert!("02".parse::<StateSequence>().is_err());
        assert!("1".parse::<StateSequence>().is_err());
        let wide: StateSequence = "0,1,2,3,4,5,6,7,8,9,10".parse().unwrap();
        assert_eq!(wide.to_string(), "0,1,2,3,4,5,6,7,8,9,10");
        assert_eq!(wide.state_count(), 11);
        assert_eq!(StateSequence::canonicalize(&[5, 3, 5, 7]).to_string(), "0102");
    }
}
