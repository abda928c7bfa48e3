use thiserror::Error;

/// Errors raised by the automata, search and model-selection layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("transition references state {state} but the automaton has {state_count} states")]
    OutOfRangeState { state: usize, state_count: usize },
    #[error("transition uses symbol {symbol} outside the alphabet of size {alphabet_size}")]
    OutOfRangeSymbol { symbol: u8, alphabet_size: usize },
    #[error("duplicate transition ({from}, {symbol}, {to})")]
    DuplicateTransition { from: usize, symbol: u8, to: usize },
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("word uses symbol {symbol} but the alphabet has size {alphabet_size}")]
    AlphabetMismatch { symbol: u8, alphabet_size: usize },
    #[error("word counting is limited to {limit} states, automaton has {state_count}")]
    StateCountTooLargeForWordCounting { state_count: usize, limit: usize },
    #[error("no word of length {length} is accepted")]
    NoAcceptanceAtLength { length: usize },
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(usize),
    #[error("alphabet size {0} is not supported by the search engine (at most 4)")]
    AlphabetTooLarge(usize),
    #[error("state sequence has {sequence} entries but the word has length {word}")]
    LengthMismatch { sequence: usize, word: usize },
    #[error("not a restricted-growth state sequence: {0}")]
    NotRestrictedGrowth(String),
    #[error("invalid word {0:?}: symbols must be digits 0-3")]
    InvalidWord(String),
    #[error("word length {length} exceeds the configured limit {limit}")]
    WordTooLong { length: usize, limit: usize },
    #[error("length {length} exceeds the configured p-value limit {limit}")]
    LengthTooLarge { length: usize, limit: usize },
    #[error("search budget exceeded: value lies in [{lower}, {upper}]")]
    SearchBudgetExceeded { lower: usize, upper: usize },
    #[error("expected one or two distinct words of equal length, got {0}")]
    BadCardinality(String),
    #[error("construction needs a nonempty word")]
    EmptyWord,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("base must lie in 1..=4, got {0}")]
    BadBase(usize),
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("log-acceptance is infinite: automaton is not deterministic")]
    InfiniteLogAcc,
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
