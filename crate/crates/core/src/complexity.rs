//! Complexity measures and structure functions.
//!
//! Membership `(q, m)` in the feasible set of a word only needs automata
//! induced by one accepting path of the word: dropping every transition off
//! that path keeps the word accepted, never increases path or word counts,
//! and keeps a deterministic automaton deterministic. All searches here run
//! over such path-induced automata, except the unique-path measure
//! [`Analyzer::a_dagger`], where dropping transitions can create new
//! unique-path words.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{saturating_pow, LogAcc};
use crate::error::{Error, Result};
use crate::oracle::{find_nfa, unique_path_condition};
use crate::search::{dfs, Flow, Problem, Track, Visitor, Walker};
use crate::sequence::StateSequence;
use crate::word::{Mode, Word};

/// Length limits for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Single-word frontiers and complexities.
    pub max_word_len: usize,
    pub max_doubleton_len: usize,
    /// Mode-equality scans.
    pub max_scan_len: usize,
    pub max_pvalue_len: usize,
    pub max_dagger_len: usize,
    /// Unique-path measure: every automaton up to this many states is enumerated.
    pub dagger_exhaustive_states: usize,
    /// Unique-path measure: path-induced candidates are tried up to this many states.
    pub dagger_max_states: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_word_len: 24,
            max_doubleton_len: 10,
            max_scan_len: 12,
            max_pvalue_len: 14,
            max_dagger_len: 12,
            dagger_exhaustive_states: 3,
            dagger_max_states: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub states: usize,
    pub log_acc: u32,
}

/// Pareto-minimal `(states, log-acceptance)` pairs of models of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFrontier {
    pub word: Word,
    pub base: usize,
    pub mode: Mode,
    /// States strictly increasing, log-acceptance strictly decreasing.
    pub points: Vec<FrontierPoint>,
}

impl StructureFrontier {
    /// Membership in the upward-closed feasible set.
    pub fn contains(&self, states: usize, log_acc: u32) -> bool {
        self.points
            .iter()
            .any(|p| p.states <= states && p.log_acc <= log_acc)
    }

    /// Least log-acceptance with at most `states` states.
    pub fn h(&self, states: usize) -> LogAcc {
        self.points
            .iter()
            .rev()
            .find(|p| p.states <= states)
            .map_or(LogAcc::Infinite, |p| LogAcc::Finite(p.log_acc))
    }

    /// Least state count with log-acceptance at most `log_acc`.
    pub fn h_star(&self, log_acc: u32) -> usize {
        self.points
            .iter()
            .find(|p| p.log_acc <= log_acc)
            .map(|p| p.states)
            .expect("frontier always reaches log-acceptance 0")
    }

    /// State count at which the frontier reaches log-acceptance 0.
    pub fn max_states(&self) -> usize {
        self.points.last().map_or(1, |p| p.states)
    }
}

/// One or two distinct words of a common length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubletonQuery {
    words: Vec<Word>,
    base: usize,
}

impl DoubletonQuery {
    pub fn new(mut words: Vec<Word>, base: usize) -> Result<Self> {
        words.sort();
        let describe = |w: &[Word]| {
            w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        if words.is_empty() || words.len() > 2 {
            return Err(Error::BadCardinality(describe(&words)));
        }
        if words.len() == 2 && (words[0] == words[1] || words[0].len() != words[1].len()) {
            return Err(Error::BadCardinality(describe(&words)));
        }
        if base < 2 {
            return Err(Error::BaseTooSmall(base));
        }
        for w in &words {
            w.check_alphabet(base)?;
        }
        Ok(DoubletonQuery { words, base })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.words[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.words[0].is_empty()
    }

    pub fn cardinality(&self) -> usize {
        self.words.len()
    }
}

/// Minimal automaton for a doubleton together with the two accepting paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubletonWitness {
    pub states: usize,
    /// State labels along each word's path; the two share one state pool.
    pub paths: Vec<Vec<usize>>,
}

/// Progress of a resumable mode-equality scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub max_len: usize,
    /// Index of the next word to examine (words ordered by length, then lexicographically).
    pub next_index: u64,
    pub total: u64,
    pub counterexamples: Vec<Word>,
}

/// The binary word at position `index` among nonempty words ordered by length.
pub fn scan_word(index: u64) -> Word {
    let mut len = 1usize;
    let mut offset = 0u64;
    while index >= offset + (1u64 << len) {
        offset += 1 << len;
        len += 1;
    }
    Word::from_bits(index - offset, len)
}

/// Number of nonempty binary words of length at most `max_len`.
pub fn scan_total(max_len: usize) -> u64 {
    (1u64 << (max_len + 1)) - 2
}

/// Images of `x` under complement (binary only) and, where the mode allows,
/// reversal; sorted and deduplicated.
pub fn symmetry_orbit(x: &Word, base: usize, mode: Mode) -> Vec<Word> {
    let mut out = vec![x.clone()];
    if base == 2 {
        out.push(x.complement());
    }
    if mode.reversal_invariant() {
        let more: Vec<Word> = out.iter().map(Word::reversed).collect();
        out.extend(more);
    }
    out.sort();
    out.dedup();
    out
}

/// Whether `x` is the least element of its symmetry orbit.
pub fn is_orbit_representative(x: &Word, base: usize, mode: Mode) -> bool {
    symmetry_orbit(x, base, mode)[0] == *x
}

/// Entry point for every search, carrying the configured guards.
#[derive(Debug, Clone, Copy, Default)]
pub struct Analyzer {
    pub guards: Guards,
}

impl Analyzer {
    pub fn new(guards: Guards) -> Self {
        Analyzer { guards }
    }

    fn check_len(&self, x: &Word, limit: usize) -> Result<()> {
        if x.len() > limit {
            return Err(Error::WordTooLong {
                length: x.len(),
                limit,
            });
        }
        Ok(())
    }

    fn problem<'a>(&self, x: &'a Word, base: usize, states: usize, mode: Mode) -> Result<Problem<'a>> {
        if base < 2 {
            return Err(Error::BaseTooSmall(base));
        }
        self.check_len(x, self.guards.max_word_len)?;
        Problem::new(x.symbols(), base, states, mode)
    }

    /// Exact Pareto frontier of the feasible `(states, log-acceptance)` set.
    pub fn structure_frontier(&self, x: &Word, base: usize, mode: Mode) -> Result<StructureFrontier> {
        self.problem(x, base, 1, mode)?;
        let n = x.len();
        let mut points = Vec::new();
        let mut best: Option<u32> = None;
        for states in 1..=n + 1 {
            let p = self.problem(x, base, states, mode)?;
            if let Some(m) = p.minimize_log(base, best) {
                points.push(FrontierPoint { states, log_acc: m });
                best = Some(m);
            }
            if best == Some(0) {
                break;
            }
        }
        Ok(StructureFrontier {
            word: x.clone(),
            base,
            mode,
            points,
        })
    }

    /// `h(k)`: least log-acceptance of a model with at most `states` states.
    pub fn h(&self, x: &Word, states: usize, base: usize, mode: Mode) -> Result<LogAcc> {
        let p = self.problem(x, base, states.max(1), mode)?;
        if states == 0 {
            return Ok(LogAcc::Infinite);
        }
        Ok(p.minimize_log(base, None).map_or(LogAcc::Infinite, LogAcc::Finite))
    }

    /// `h*(m)` with the lexicographically least witness sequence.
    pub fn h_star_witness(&self, x: &Word, log_acc: u32, base: usize, mode: Mode) -> Result<(usize, StateSequence)> {
        let limit = saturating_pow(base, log_acc);
        for states in 1..=x.len() + 1 {
            let p = self.problem(x, base, states, mode)?;
            if let Some((seq, _)) = p.first(limit) {
                return Ok((states, StateSequence::from_small(&seq)));
            }
        }
        unreachable!("the path through n + 1 distinct states accepts only x");
    }

    /// `h*(m)`: least state count of a model with log-acceptance at most `log_acc`.
    pub fn h_star(&self, x: &Word, log_acc: u32, base: usize, mode: Mode) -> Result<usize> {
        self.h_star_witness(x, log_acc, base, mode).map(|(q, _)| q)
    }

    /// Path-counting complexity: fewest states with exactly one accepting path.
    pub fn a_pi(&self, x: &Word) -> Result<usize> {
        self.h_star(x, 0, x.default_base(), Mode::Pi)
    }

    /// Word-counting complexity: fewest states accepting only `x` at its length.
    pub fn a_omega(&self, x: &Word) -> Result<usize> {
        self.h_star(x, 0, x.default_base(), Mode::Omega)
    }

    /// Nontotal deterministic complexity.
    pub fn a_minus(&self, x: &Word) -> Result<usize> {
        self.h_star(x, 0, x.default_base(), Mode::Delta)
    }

    /// Fewest states of an automaton in which `x` is the only word of its
    /// length accepted along exactly one path.
    ///
    /// Every automaton up to `dagger_exhaustive_states` states is enumerated;
    /// above that only path-induced candidates are tried, up to
    /// `dagger_max_states`. If neither settles the value, the error carries
    /// the proven lower bound and the path-counting complexity as upper bound.
    pub fn a_dagger(&self, x: &Word) -> Result<usize> {
        self.check_len(x, self.guards.max_dagger_len)?;
        let base = x.default_base();
        if base > crate::search::MAX_SYMBOLS {
            return Err(Error::AlphabetTooLarge(base));
        }
        let g = self.guards;
        for states in 1..=g.dagger_max_states {
            let found = if states <= g.dagger_exhaustive_states {
                find_nfa(states, base, true, |m| {
                    m.paths_for_word(x.symbols()) == 1 && m.unique_path_condition(x.symbols())
                })
                .is_some()
            } else {
                self.dagger_induced_candidate(x, base, states)?
            };
            if found {
                return Ok(states);
            }
            if states > g.dagger_exhaustive_states {
                // an induced candidate failing does not rule out `states`
                let upper = self.a_pi(x)?;
                if upper == g.dagger_exhaustive_states + 1 {
                    return Ok(upper);
                }
                return Err(Error::SearchBudgetExceeded {
                    lower: g.dagger_exhaustive_states + 1,
                    upper,
                });
            }
        }
        Err(Error::SearchBudgetExceeded {
            lower: g.dagger_max_states + 1,
            upper: self.a_pi(x)?,
        })
    }

    fn dagger_induced_candidate(&self, x: &Word, base: usize, states: usize) -> Result<bool> {
        let p = Problem::new(x.symbols(), base, states, Mode::Pi)?;
        // candidates where x has a single path; a second path rules x out
        let candidates = p.collect_all(u64::MAX);
        Ok(candidates.into_par_iter().any(|(seq, _)| {
            let used = *seq.iter().max().unwrap() as usize + 1;
            let mut succ = vec![0u32; used * base];
            for (i, &a) in x.symbols().iter().enumerate() {
                succ[seq[i] as usize * base + a as usize] |= 1 << seq[i + 1];
            }
            unique_path_condition(&succ, used, base, *seq.last().unwrap() as usize, x.symbols())
        }))
    }

    /// Fewest states of an automaton whose length-`n` language is exactly
    /// the query set; in path mode it must also have exactly one accepting
    /// path per word.
    pub fn doubleton_complexity(&self, query: &DoubletonQuery, mode: Mode) -> Result<usize> {
        self.doubleton_witness(query, mode).map(|w| w.states)
    }

    pub fn doubleton_witness(&self, query: &DoubletonQuery, mode: Mode) -> Result<DoubletonWitness> {
        if mode == Mode::Delta {
            return Err(Error::BadCardinality("deterministic mode is not defined for sets".into()));
        }
        let n = query.len();
        if n > self.guards.max_doubleton_len {
            return Err(Error::WordTooLong {
                length: n,
                limit: self.guards.max_doubleton_len,
            });
        }
        let base = query.base();
        if query.cardinality() == 1 {
            let x = &query.words()[0];
            let (states, seq) = self.h_star_witness(x, 0, base, mode)?;
            return Ok(DoubletonWitness {
                states,
                paths: vec![seq.entries().to_vec()],
            });
        }
        let (x, y) = (&query.words()[0], &query.words()[1]);
        for states in 1..=2 * n + 1 {
            let p = Problem::new(x.symbols(), base, states, mode)?;
            if let Some((s, t)) = pair_search(&p, y.symbols()) {
                return Ok(DoubletonWitness {
                    states,
                    paths: vec![
                        s.iter().map(|&e| e as usize).collect(),
                        t.iter().map(|&e| e as usize).collect(),
                    ],
                });
            }
        }
        unreachable!("two disjoint paths through fresh states accept exactly the pair");
    }

    /// All binary words of length at most `max_len` whose word-counting and
    /// path-counting complexities differ.
    pub fn check_mode_equality(&self, max_len: usize) -> Result<Vec<Word>> {
        self.scan_mode_equality(max_len, None, |_| {})
    }

    /// Resumable form of [`Analyzer::check_mode_equality`]. `progress` sees a
    /// checkpoint after every block of words; passing one back as `resume`
    /// continues from it.
    pub fn scan_mode_equality(
        &self,
        max_len: usize,
        resume: Option<ScanCheckpoint>,
        mut progress: impl FnMut(&ScanCheckpoint),
    ) -> Result<Vec<Word>> {
        if max_len > self.guards.max_scan_len {
            return Err(Error::WordTooLong {
                length: max_len,
                limit: self.guards.max_scan_len,
            });
        }
        let total = scan_total(max_len);
        let mut state = match resume {
            Some(c) if c.max_len == max_len => c,
            _ => ScanCheckpoint {
                max_len,
                next_index: 0,
                total,
                counterexamples: Vec::new(),
            },
        };
        const BLOCK: u64 = 256;
        while state.next_index < total {
            let end = (state.next_index + BLOCK).min(total);
            let found: Vec<Vec<Word>> = (state.next_index..end)
                .into_par_iter()
                .map(|i| {
                    let x = scan_word(i);
                    if !is_orbit_representative(&x, 2, Mode::Pi) {
                        return Ok(Vec::new());
                    }
                    if self.modes_differ(&x)? {
                        Ok(symmetry_orbit(&x, 2, Mode::Pi))
                    } else {
                        Ok(Vec::new())
                    }
                })
                .collect::<Result<_>>()?;
            state.counterexamples.extend(found.into_iter().flatten());
            state.next_index = end;
            progress(&state);
        }
        let mut out = state.counterexamples;
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.dedup();
        Ok(out)
    }

    fn modes_differ(&self, x: &Word) -> Result<bool> {
        let pi = self.a_pi(x)?;
        if pi == 1 {
            return Ok(false);
        }
        let p = Problem::new(x.symbols(), 2, pi - 1, Mode::Omega)?;
        Ok(p.first(1).is_some())
    }
}

/// Joint search over a path for `x` (from `p`) and a path for `y` sharing
/// its state pool, start and end, with acceptance count at most 2.
fn pair_search(p: &Problem, y: &[u8]) -> Option<(Vec<u8>, Vec<u8>)> {
    struct Outer<'y> {
        y: &'y [u8],
        max_states: usize,
        found: Option<(Vec<u8>, Vec<u8>)>,
    }
    struct Inner {
        found: Option<Vec<u8>>,
    }
    impl Visitor for Inner {
        fn limit(&self) -> u64 {
            2
        }
        fn leaf(&mut self, _: &mut Walker, seq: &[u8], _: u64) -> Flow {
            self.found = Some(seq.to_vec());
            Flow::Stop
        }
    }
    impl Visitor for Outer<'_> {
        fn limit(&self) -> u64 {
            2
        }
        fn leaf(&mut self, walker: &mut Walker, seq: &[u8], _: u64) -> Flow {
            let mut track = Track::new(self.y, self.max_states);
            track.target = Some(*seq.last().unwrap());
            let mut inner = Inner { found: None };
            dfs(walker, &mut track, &mut inner);
            match inner.found {
                Some(t) => {
                    self.found = Some((seq.to_vec(), t));
                    Flow::Stop
                }
                None => Flow::Continue,
            }
        }
    }
    let mut walker = Walker::new(p.mode, p.alphabet);
    let mut track = Track::new(p.word, p.max_states);
    let mut outer = Outer {
        y,
        max_states: p.max_states,
        found: None,
    };
    dfs(&mut walker, &mut track, &mut outer);
    outer.found
}

pub fn structure_frontier(x: &Word, base: usize, mode: Mode) -> Result<StructureFrontier> {
    Analyzer::default().structure_frontier(x, base, mode)
}

pub fn h(x: &Word, states: usize, base: usize, mode: Mode) -> Result<LogAcc> {
    Analyzer::default().h(x, states, base, mode)
}

pub fn h_star(x: &Word, log_acc: u32, base: usize, mode: Mode) -> Result<usize> {
    Analyzer::default().h_star(x, log_acc, base, mode)
}

pub fn a_pi(x: &Word) -> Result<usize> {
    Analyzer::default().a_pi(x)
}

pub fn a_omega(x: &Word) -> Result<usize> {
    Analyzer::default().a_omega(x)
}

pub fn a_minus(x: &Word) -> Result<usize> {
    Analyzer::default().a_minus(x)
}

pub fn a_dagger(x: &Word) -> Result<usize> {
    Analyzer::default().a_dagger(x)
}

pub fn doubleton_complexity(query: &DoubletonQuery, mode: Mode) -> Result<usize> {
    Analyzer::default().doubleton_complexity(query, mode)
}

pub fn check_mode_equality(max_len: usize) -> Result<Vec<Word>> {
    Analyzer::default().check_mode_equality(max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::induced_nfa;
    use crate::counting::{count_paths_total, count_words, log_acc};
    use crate::oracle::for_each_nfa;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn single_symbol_word() {
        let f = structure_frontier(&w("0"), 2, Mode::Omega).unwrap();
        assert_eq!(f.points, vec![FrontierPoint { states: 1, log_acc: 0 }]);
    }

    #[test]
    fn empty_word() {
        assert_eq!(a_pi(&Word::empty()).unwrap(), 1);
        assert_eq!(a_omega(&Word::empty()).unwrap(), 1);
        assert_eq!(a_dagger(&Word::empty()).unwrap(), 1);
    }

    #[test]
    fn short_words_brute_force() {
        // 0000: one state would need a 0-loop only, giving one path; check it
        assert_eq!(a_pi(&w("0000")).unwrap(), 1);
        assert_eq!(a_minus(&w("0000000000000")).unwrap(), 1);
        assert_eq!(a_minus(&w("01")).unwrap(), 2);
    }

    #[test]
    fn both_symbols_force_full_language_with_one_state() {
        for text in ["01", "0010", "110101"] {
            let x = w(text);
            assert_eq!(h(&x, 1, 2, Mode::Omega).unwrap(), LogAcc::Finite(x.len() as u32));
        }
    }

    #[test]
    fn frontier_is_consistent_with_h_and_h_star() {
        for text in ["001011", "0110", "01111011011", "000010000"] {
            let x = w(text);
            for mode in Mode::ALL {
                let f = structure_frontier(&x, 2, mode).unwrap();
                for pair in f.points.windows(2) {
                    assert!(pair[0].states < pair[1].states);
                    assert!(pair[0].log_acc > pair[1].log_acc);
                }
                for k in 1..=f.max_states() + 1 {
                    assert_eq!(f.h(k), h(&x, k, 2, mode).unwrap(), "{text} {mode} k={k}");
                }
                for m in 0..=x.len() as u32 {
                    assert_eq!(f.h_star(m), h_star(&x, m, 2, mode).unwrap(), "{text} {mode} m={m}");
                }
            }
        }
    }

    #[test]
    fn witnesses_have_the_claimed_parameters() {
        let x = w("000010000");
        for mode in Mode::ALL {
            for m in 0..4 {
                let (q, seq) = Analyzer::default().h_star_witness(&x, m, 2, mode).unwrap();
                let nfa = induced_nfa(&seq, &x, 2).unwrap();
                assert_eq!(nfa.state_count(), q);
                let got = log_acc(&nfa, x.len(), 2, mode).unwrap();
                assert!(got.finite().unwrap() <= m);
            }
        }
    }

    #[test]
    fn dagger_at_most_pi() {
        for text in ["0110", "00101", "0100110", "1"] {
            let x = w(text);
            assert!(a_dagger(&x).unwrap() <= a_pi(&x).unwrap());
        }
    }

    #[test]
    fn doubleton_validation() {
        assert!(DoubletonQuery::new(vec![w("01"), w("011")], 2).is_err());
        assert!(DoubletonQuery::new(vec![w("01"), w("01")], 2).is_err());
        assert!(DoubletonQuery::new(vec![], 2).is_err());
        assert!(DoubletonQuery::new(vec![w("0"), w("1"), w("0")], 2).is_err());
    }

    #[test]
    fn singleton_doubleton_matches_word_complexity() {
        for text in ["0110", "00100"] {
            let q = DoubletonQuery::new(vec![w(text)], 2).unwrap();
            assert_eq!(doubleton_complexity(&q, Mode::Pi).unwrap(), a_pi(&w(text)).unwrap());
            assert_eq!(doubleton_complexity(&q, Mode::Omega).unwrap(), a_omega(&w(text)).unwrap());
        }
    }

    #[test]
    fn doubleton_matches_brute_force_on_short_pairs() {
        // exhaustive over all automata with at most 3 states, n = 3
        let words: Vec<Word> = Word::all(2, 3).collect();
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let (x, y) = (&words[i], &words[j]);
                let q = DoubletonQuery::new(vec![x.clone(), y.clone()], 2).unwrap();
                for mode in [Mode::Pi, Mode::Omega] {
                    let got = doubleton_complexity(&q, mode).unwrap();
                    let mut brute = None;
                    for states in 1..=3 {
                        let mut ok = false;
                        for_each_nfa(states, 2, true, |m| {
                            if ok {
                                return;
                            }
                            let mut acc = Vec::new();
                            m.accepted_words(3, &mut acc);
                            let exact = acc.len() == 2 && acc.contains(&x.rank(2)) && acc.contains(&y.rank(2));
                            if exact && (mode == Mode::Omega || m.total_paths(3) == 2) {
                                ok = true;
                            }
                        });
                        if ok {
                            brute = Some(states);
                            break;
                        }
                    }
                    match brute {
                        Some(b) => assert_eq!(got, b, "{x} {y} {mode}"),
                        None => assert!(got > 3, "{x} {y} {mode}"),
                    }
                }
            }
        }
    }

    #[test]
    fn doubleton_witness_is_exact() {
        let q = DoubletonQuery::new(vec![w("0110"), w("1111")], 2).unwrap();
        let wit = Analyzer::default().doubleton_witness(&q, Mode::Omega).unwrap();
        let nfa = crate::automaton::Nfa::from_paths(
            wit.states,
            2,
            *wit.paths[0].last().unwrap(),
            &[(&wit.paths[0], &w("0110")), (&wit.paths[1], &w("1111"))],
        )
        .unwrap();
        assert_eq!(count_words(&nfa, 4).unwrap(), 2u32.into());
        assert!(count_paths_total(&nfa, 4) >= 2u32.into());
    }

    #[test]
    fn scan_indexing() {
        assert_eq!(scan_total(3), 14);
        assert_eq!(scan_word(0).to_string(), "0");
        assert_eq!(scan_word(1).to_string(), "1");
        assert_eq!(scan_word(2).to_string(), "00");
        assert_eq!(scan_word(13).to_string(), "111");
    }

    #[test]
    fn scan_resumes() {
        let a = Analyzer::default();
        let mut checkpoints = Vec::new();
        let full = a.scan_mode_equality(7, None, |c| checkpoints.push(c.clone())).unwrap();
        assert!(full.is_empty());
        assert_eq!(checkpoints.last().unwrap().next_index, scan_total(7));
        let resumed = a.scan_mode_equality(7, Some(checkpoints[0].clone()), |_| {}).unwrap();
        assert_eq!(resumed, full);
    }

    #[test]
    fn symmetry_spot_checks() {
        for text in ["0010", "011", "000010000", "0110001000"] {
            let x = w(text);
            for mode in Mode::ALL {
                let reference = structure_frontier(&x, 2, mode).unwrap().points;
                for y in symmetry_orbit(&x, 2, mode) {
                    assert_eq!(structure_frontier(&y, 2, mode).unwrap().points, reference, "{x} {y} {mode}");
                }
            }
        }
    }
}
