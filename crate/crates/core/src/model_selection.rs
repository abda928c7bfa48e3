//! Exact p-values, optimal models and explanations.
//!
//! A word `y` qualifies for `(q, m)` when some automaton with at most `q`
//! states accepts it with `logAcc <= m`. The path-induced reduction used by
//! the complexity searches applies unchanged: restricting a qualifying
//! automaton to one accepting path of `y` keeps it qualifying.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::automaton::{induced_nfa, Nfa};
use crate::complexity::{symmetry_orbit, Analyzer, FrontierPoint};
use crate::constructions::{exploded_path, kayleigh_path};
use crate::counting::{acceptance_count, ceil_log, saturating_pow, AcceptanceCount};
use crate::error::{Error, Result};
use crate::search::{Problem, MAX_SYMBOLS};
use crate::sequence::{StateSequence, StateSequences};
use crate::word::{Mode, Word};

/// `numerator / denominator` with `denominator = b^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PValue {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

impl PValue {
    pub fn value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::from(self.denominator.clone()),
        )
    }

    /// Decimal expansion rounded half-up to `places` digits.
    pub fn decimal(&self, places: usize) -> String {
        let scale = BigUint::from(10u32).pow(places as u32);
        let twice = &self.numerator * &scale * 2u32 + &self.denominator;
        let rounded = twice / (&self.denominator * 2u32);
        let (int, frac) = rounded.div_rem(&scale);
        if places == 0 {
            int.to_string()
        } else {
            format!("{int}.{:0>width$}", frac.to_string(), width = places)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for PValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PValue", 4)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("denominator", &self.denominator.to_string())?;
        st.serialize_field("decimal", &self.decimal(6))?;
        st.serialize_field("rounded", &self.decimal(2))?;
        st.end()
    }
}

/// Optimal models of a word in one mode.
#[derive(Debug, Clone, Serialize)]
pub struct ExplanationReport {
    pub word: Word,
    pub base: usize,
    pub mode: Mode,
    pub optimal_states: usize,
    pub optimal_log_acc: u32,
    pub p_value: PValue,
    /// Every frontier point attaining the minimal p-value, by state count.
    pub optima: Vec<FrontierPoint>,
    /// Sequences inducing optimal models, one per automaton up to relabeling.
    pub witnesses: Vec<StateSequence>,
    pub candidates_considered: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModePair {
    pub first: Mode,
    pub second: Mode,
    /// No witness automaton (up to relabeling) is optimal in both modes.
    pub disjoint: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeComparison {
    pub word: Word,
    pub base: usize,
    pub reports: Vec<ExplanationReport>,
    pub pairs: Vec<ModePair>,
}

impl ModeComparison {
    pub fn report(&self, mode: Mode) -> &ExplanationReport {
        self.reports.iter().find(|r| r.mode == mode).expect("all modes present")
    }

    pub fn disjoint(&self, a: Mode, b: Mode) -> bool {
        self.pairs
            .iter()
            .find(|p| (p.first, p.second) == (a, b) || (p.first, p.second) == (b, a))
            .map_or(a != b, |p| p.disjoint)
    }
}

/// Key of a numerator: `(q, m, n, b, mode)`.
pub type NumeratorKey = (usize, u32, usize, usize, Mode);

pub const CACHE_SCHEMA_VERSION: u32 = 1;
const CACHE_HEADER: &str = "# automatic-complexity numerators";
const CACHE_FILE: &str = "numerators.tsv";

/// Append-only store of qualifying-word counts.
///
/// The file starts with a header line; each record is
/// `schema_version  q  m  n  b  mode  numerator`, tab separated, integers in
/// base 10. Records with another schema version are ignored.
#[derive(Debug)]
pub struct NumeratorCache {
    path: PathBuf,
    entries: BTreeMap<NumeratorKey, BigUint>,
}

impl NumeratorCache {
    /// Opens (creating if needed) the cache file inside `dir`.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        let path = dir.join(CACHE_FILE);
        let mut entries = BTreeMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::Cache(e.to_string()))?;
                if let Some((key, value)) = parse_record(&line) {
                    entries.insert(key, value);
                }
            }
        } else {
            fs::write(&path, format!("{CACHE_HEADER}\n"))
                .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        }
        Ok(NumeratorCache { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &NumeratorKey) -> Option<&BigUint> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: NumeratorKey, value: BigUint) -> Result<()> {
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let (q, m, n, b, mode) = key;
        let line = format!("{CACHE_SCHEMA_VERSION}\t{q}\t{m}\t{n}\t{b}\t{mode}\t{value}\n");
        let mut file = OpenOptions::new()
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(format!("{}: {e}", self.path.display())))?;
        file.write_all(line.as_bytes()).map_err(|e| Error::Cache(e.to_string()))?;
        self.entries.insert(key, value);
        Ok(())
    }
}

fn parse_record(line: &str) -> Option<(NumeratorKey, BigUint)> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 7 || f[0].parse::<u32>().ok()? != CACHE_SCHEMA_VERSION {
        return None;
    }
    let key = (
        f[1].parse().ok()?,
        f[2].parse().ok()?,
        f[3].parse().ok()?,
        f[4].parse().ok()?,
        f[5].parse().ok()?,
    );
    Some((key, f[6].parse().ok()?))
}

/// p-value computations with optional persistent caching.
#[derive(Debug, Default)]
pub struct ModelSelector {
    pub analyzer: Analyzer,
    cache: Option<Mutex<NumeratorCache>>,
}

impl ModelSelector {
    pub fn new(analyzer: Analyzer) -> Self {
        ModelSelector { analyzer, cache: None }
    }

    pub fn with_cache(mut self, cache: NumeratorCache) -> Self {
        self.cache = Some(Mutex::new(cache));
        self
    }

    fn check(&self, n: usize, b: usize) -> Result<()> {
        if b < 2 {
            return Err(Error::BaseTooSmall(b));
        }
        if b > MAX_SYMBOLS {
            return Err(Error::AlphabetTooLarge(b));
        }
        let limit = self.analyzer.guards.max_pvalue_len;
        if n > limit {
            return Err(Error::LengthTooLarge { length: n, limit });
        }
        Ok(())
    }

    /// Number of words `y ∈ [b]^n` admitting a model with at most `q`
    /// states and `logAcc <= m`.
    pub fn qualifying_word_count(&self, q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<BigUint> {
        self.check(n, b)?;
        let key = (q, m, n, b, mode);
        if let Some(cache) = &self.cache {
            if let Some(v) = cache.lock().unwrap().get(&key) {
                return Ok(v.clone());
            }
        }
        let value = decision_count(q, m, n, b, mode)?;
        if let Some(cache) = &self.cache {
            cache.lock().unwrap().insert(key, value.clone())?;
        }
        Ok(value)
    }

    pub fn pvalue(&self, q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<PValue> {
        Ok(PValue {
            numerator: self.qualifying_word_count(q, m, n, b, mode)?,
            denominator: BigUint::from(b).pow(n as u32),
        })
    }

    /// p-value of the parameters `(states, logAcc)` of a given automaton.
    pub fn pvalue_of_model(&self, model: &Nfa, n: usize, b: usize, mode: Mode) -> Result<PValue> {
        let acc = match acceptance_count(model, n, mode)? {
            AcceptanceCount::Infinite => return Err(Error::InfiniteLogAcc),
            AcceptanceCount::Finite(c) => c,
        };
        if acc.is_zero() {
            return Err(Error::NoAcceptanceAtLength { length: n });
        }
        self.pvalue(model.state_count(), ceil_log(&acc, b), n, b, mode)
    }

    /// The set of models of `x` achieving the least p-value.
    ///
    /// The p-value is nondecreasing in both parameters, so only frontier
    /// points are candidates.
    pub fn explain(&self, x: &Word, b: usize, mode: Mode) -> Result<ExplanationReport> {
        let start = Instant::now();
        let limit = self.analyzer.guards.max_pvalue_len;
        if x.len() > limit {
            return Err(Error::WordTooLong { length: x.len(), limit });
        }
        self.check(x.len(), b)?;
        let frontier = self.analyzer.structure_frontier(x, b, mode)?;
        let mut scored = Vec::new();
        for p in &frontier.points {
            scored.push((*p, self.pvalue(p.states, p.log_acc, x.len(), b, mode)?));
        }
        let best = scored
            .iter()
            .map(|(_, p)| p.numerator.clone())
            .min()
            .expect("frontier is nonempty");
        let optima: Vec<FrontierPoint> = scored
            .iter()
            .filter(|(_, p)| p.numerator == best)
            .map(|(f, _)| *f)
            .collect();
        let mut candidates = 0u64;
        let mut seen = HashSet::new();
        let mut witnesses = Vec::new();
        for point in &optima {
            let problem = Problem::new(x.symbols(), b, point.states, mode)?;
            let found = problem.collect_all(saturating_pow(b, point.log_acc));
            candidates += found.len() as u64;
            for (seq, _) in found {
                let seq = StateSequence::from_small(&seq);
                if seq.state_count() != point.states {
                    continue;
                }
                let model = induced_nfa(&seq, x, b)?.canonical_form();
                if seen.insert(model) {
                    witnesses.push(seq);
                }
            }
        }
        witnesses.sort();
        let optimum = optima[0];
        Ok(ExplanationReport {
            word: x.clone(),
            base: b,
            mode,
            optimal_states: optimum.states,
            optimal_log_acc: optimum.log_acc,
            p_value: scored
                .into_iter()
                .find(|(f, _)| *f == optimum)
                .map(|(_, p)| p)
                .unwrap(),
            optima,
            witnesses,
            candidates_considered: candidates,
            elapsed: start.elapsed(),
        })
    }

    /// Explanations in all three modes and whether they share a model.
    pub fn compare_modes(&self, x: &Word, b: usize) -> Result<ModeComparison> {
        let reports = Mode::ALL
            .iter()
            .map(|&mode| self.explain(x, b, mode))
            .collect::<Result<Vec<_>>>()?;
        let models = reports
            .iter()
            .map(|r| {
                r.witnesses
                    .iter()
                    .map(|s| induced_nfa(s, x, b).map(|m| m.canonical_form()))
                    .collect::<Result<BTreeSet<Nfa>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        for i in 0..reports.len() {
            for j in i + 1..reports.len() {
                pairs.push(ModePair {
                    first: reports[i].mode,
                    second: reports[j].mode,
                    disjoint: models[i].is_disjoint(&models[j]),
                });
            }
        }
        Ok(ModeComparison {
            word: x.clone(),
            base: b,
            reports,
            pairs,
        })
    }
}

fn word_of_rank(rank: u64, n: usize, b: usize) -> Word {
    let mut symbols = vec![0u8; n];
    let mut v = rank;
    for s in symbols.iter_mut().rev() {
        *s = (v % b as u64) as u8;
        v /= b as u64;
    }
    Word::new(symbols)
}

/// Whether `y` has a model with at most `q` states and `Acc <= b^m`.
fn qualifies(y: &Word, q: usize, m: u32, b: usize, mode: Mode) -> Result<bool> {
    let problem = Problem::new(y.symbols(), b, q, mode)?;
    let limit = saturating_pow(b, m);
    // the explicit constructions settle most large-q queries without search
    for seed in [kayleigh_path(y.len()), exploded_path(y)] {
        let seed: Vec<u8> = StateSequence::canonicalize(&seed)
            .entries()
            .iter()
            .map(|&s| s as u8)
            .collect();
        if problem.evaluate(&seed).is_some_and(|acc| acc <= limit) {
            return Ok(true);
        }
    }
    Ok(problem.first(limit).is_some())
}

/// Per-word decisions over symmetry-orbit representatives.
fn decision_count(q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<BigUint> {
    let total = (b as u64).pow(n as u32);
    let count = (0..total)
        .into_par_iter()
        .map(|rank| {
            let y = word_of_rank(rank, n, b);
            let orbit = symmetry_orbit(&y, b, mode);
            if orbit[0] != y {
                return Ok(0u64);
            }
            Ok(if qualifies(&y, q, m, b, mode)? { orbit.len() as u64 } else { 0 })
        })
        .try_reduce(|| 0, |a, c| Ok(a + c))?;
    Ok(BigUint::from(count))
}

/// Numerators computed as unions of the length-`n` languages of
/// path-induced automata, independent of the per-word search.
///
/// Every automaton induced by a sequence with at most `q` states on a word
/// of length `n` is built once; each word then records the least
/// log-acceptance, per mode, over the automata accepting it. Practical only
/// for small `n` and `q`.
#[derive(Debug, Clone)]
pub struct UnionTable {
    base: usize,
    n: usize,
    /// Least log-acceptance per word rank, per mode (`u32::MAX` if none).
    best: BTreeMap<Mode, Vec<u32>>,
}

impl UnionTable {
    pub fn build(q: usize, n: usize, b: usize) -> Result<Self> {
        if n > 10 {
            return Err(Error::LengthTooLarge { length: n, limit: 10 });
        }
        if b < 2 {
            return Err(Error::BaseTooSmall(b));
        }
        let mut automata = HashSet::new();
        let sequences: Vec<StateSequence> = StateSequences::new(n + 1, q).collect();
        for x in Word::all(b, n) {
            for s in &sequences {
                automata.insert(induced_nfa(s, &x, b)?);
            }
        }
        let size = (b as u64).pow(n as u32) as usize;
        let mut best: BTreeMap<Mode, Vec<u32>> = Mode::ALL.iter().map(|&m| (m, vec![u32::MAX; size])).collect();
        for model in &automata {
            let words: Vec<usize> = crate::counting::accepted_words(model, n)
                .iter()
                .map(|y| y.rank(b) as usize)
                .collect();
            for mode in Mode::ALL {
                if let AcceptanceCount::Finite(c) = acceptance_count(model, n, mode)? {
                    let m = ceil_log(&c, b);
                    let column = best.get_mut(&mode).unwrap();
                    for &y in &words {
                        column[y] = column[y].min(m);
                    }
                }
            }
        }
        Ok(UnionTable { base: b, n, best })
    }

    /// Numerator for `(m, mode)` at the table's `q`, `n` and base.
    pub fn count(&self, m: u32, mode: Mode) -> BigUint {
        BigUint::from(self.best[&mode].iter().filter(|&&v| v <= m).count())
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

pub fn union_word_count(q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<BigUint> {
    Ok(UnionTable::build(q, n, b)?.count(m, mode))
}

pub fn qualifying_word_count(q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<BigUint> {
    ModelSelector::default().qualifying_word_count(q, m, n, b, mode)
}

pub fn pvalue(q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Result<PValue> {
    ModelSelector::default().pvalue(q, m, n, b, mode)
}

pub fn pvalue_of_model(model: &Nfa, n: usize, b: usize, mode: Mode) -> Result<PValue> {
    ModelSelector::default().pvalue_of_model(model, n, b, mode)
}

pub fn explain(x: &Word, b: usize, mode: Mode) -> Result<ExplanationReport> {
    ModelSelector::default().explain(x, b, mode)
}

pub fn compare_modes(x: &Word, b: usize) -> Result<ModeComparison> {
    ModelSelector::default().compare_modes(x, b)
}
