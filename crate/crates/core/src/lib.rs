//! Automatic complexity of words: path-induced automaton search under
//! deterministic, path-counting and word-counting acceptance, structure
//! functions, witness constructions and exact model-selection p-values.

pub mod automaton;
pub mod complexity;
pub mod constructions;
pub mod counting;
pub mod dot;
pub mod error;
pub mod model_selection;
pub mod oracle;
pub(crate) mod search;
pub mod sequence;
pub mod verify;
pub mod word;

pub use automaton::{induced_nfa, Nfa, Transition};
pub use counting::{AcceptanceCount, LogAcc};
pub use error::{Error, Result};
pub use sequence::{StateSequence, StateSequences};
pub use word::{Mode, Word};
