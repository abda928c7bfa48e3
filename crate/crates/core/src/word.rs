use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest symbol accepted when parsing words from text.
pub const MAX_TEXT_SYMBOL: u8 = 3;

/// A finite word over the alphabet `[b] = {0, .., b-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word { symbols }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// The binary word of the given length whose bits spell `value`, most significant first.
    pub fn from_bits(value: u64, len: usize) -> Self {
        let symbols = (0..len)
            .map(|i| ((value >> (len - 1 - i)) & 1) as u8)
            .collect();
        Word { symbols }
    }

    /// Enumerates `[b]^n` in lexicographic order.
    pub fn all(alphabet: usize, len: usize) -> impl Iterator<Item = Word> {
        let total = (alphabet as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut symbols = vec![0u8; len];
            for slot in symbols.iter_mut().rev() {
                *slot = (idx % alphabet as u64) as u8;
                idx /= alphabet as u64;
            }
            Word { symbols }
        })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Smallest alphabet size containing every symbol, never below 2.
    pub fn default_base(&self) -> usize {
        let max = self.symbols.iter().copied().max().unwrap_or(0) as usize;
        (max + 1).max(2)
    }

    pub fn check_alphabet(&self, alphabet_size: usize) -> Result<()> {
        match self.symbols.iter().find(|&&s| s as usize >= alphabet_size) {
            Some(&symbol) => Err(Error::AlphabetMismatch {
                symbol,
                alphabet_size,
            }),
            None => Ok(()),
        }
    }

    /// Swaps 0 and 1; other symbols are left alone.
    pub fn complement(&self) -> Word {
        let symbols = self
            .symbols
            .iter()
            .map(|&s| match s {
                0 => 1,
                1 => 0,
                other => other,
            })
            .collect();
        Word { symbols }
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word { symbols }
    }

    /// Position of the word in the lexicographic order of `[b]^n`.
    pub fn rank(&self, alphabet: usize) -> u64 {
        self.symbols
            .iter()
            .fold(0u64, |acc, &s| acc * alphabet as u64 + s as u64)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Word> {
        let symbols = text
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d) if d <= MAX_TEXT_SYMBOL as u32 => Ok(d as u8),
                _ => Err(Error::InvalidWord(text.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { symbols })
    }
}

impl From<&[u8]> for Word {
    fn from(symbols: &[u8]) -> Self {
        Word::new(symbols.to_vec())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Acceptance-counting semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Deterministic: count accepted words, infinite unless the automaton is deterministic.
    Delta,
    /// Nondeterministic, counting accepting paths.
    Pi,
    /// Nondeterministic, counting accepted words.
    Omega,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Delta, Mode::Pi, Mode::Omega];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Delta => "delta",
            Mode::Pi => "pi",
            Mode::Omega => "omega",
        }
    }

    /// Whether reversing every transition maps witnesses to witnesses.
    pub(crate) fn reversal_invariant(self) -> bool {
        !matches!(self, Mode::Delta)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "delta" | "d" | "δ" => Ok(Mode::Delta),
            "pi" | "p" | "π" => Ok(Mode::Pi),
            "omega" | "w" | "ω" => Ok(Mode::Omega),
            other => Err(format!("unknown mode {other:?} (expected delta, pi or omega)")),
        }
    }
}
