//! Regression harness recomputing every published claim from scratch.
//!
//! Each claim has an identifier, a tier bounding its cost and a check that
//! recomputes the value through the search modules. Figure fixtures come
//! from a [`FixtureProvider`] so that corrupted fixtures can be injected.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::automaton::Nfa;
use crate::complexity::{Analyzer, DoubletonQuery};
use crate::constructions::{self, chambers_hyde, kayleigh, pacific};
use crate::counting::{count_paths_for_word, count_paths_total, count_words, log_acc, accepted_words};
use crate::error::{Error, Result};
use crate::model_selection::ModelSelector;
use crate::oracle::{find_nfa, for_each_nfa, is_unique_path_witness};
use crate::word::{Mode, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Fixture checks only.
    Figures,
    Fast,
    Standard,
    /// Unbounded running time.
    Extended,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Figures => "figures",
            Tier::Fast => "fast",
            Tier::Standard => "standard",
            Tier::Extended => "extended",
        })
    }
}

/// How much work a verification run may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub tier: Tier,
    /// Longest word length for the mode-equality scan.
    pub scan_len: usize,
}

impl Budget {
    pub fn tier(tier: Tier) -> Self {
        let scan_len = match tier {
            Tier::Figures => 0,
            Tier::Fast => 7,
            Tier::Standard => 8,
            Tier::Extended => 10,
        };
        Budget { tier, scan_len }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::tier(Tier::Fast)
    }
}

impl FromStr for Budget {
    type Err = Error;

    /// A tier name, or a scan length (0 meaning fixtures only).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "figures" => Ok(Budget::tier(Tier::Figures)),
            "fast" => Ok(Budget::tier(Tier::Fast)),
            "standard" => Ok(Budget::tier(Tier::Standard)),
            "extended" => Ok(Budget::tier(Tier::Extended)),
            _ => match s.parse::<usize>() {
                Ok(0) => Ok(Budget::tier(Tier::Figures)),
                Ok(n) => Ok(Budget {
                    tier: if n > 8 { Tier::Extended } else { Tier::Standard },
                    scan_len: n,
                }),
                Err(_) => Err(Error::BudgetExceeded(format!("unknown budget {s:?}"))),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub tier: Tier,
    pub status: Status,
    pub computed: Value,
    pub expected: Value,
    /// Smallest input on which a failing check disagrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Source of the figure automata.
pub trait FixtureProvider: Sync {
    fn fixture(&self, id: &str) -> Result<Nfa>;
}

/// The automata as drawn.
#[derive(Debug, Clone, Copy, Default)]
pub struct DrawnFixtures;

impl FixtureProvider for DrawnFixtures {
    fn fixture(&self, id: &str) -> Result<Nfa> {
        constructions::fixture(id)
    }
}

/// Every claim identifier with its tier, in reporting order.
pub const THEOREMS: [(&str, Tier); 24] = [
    ("fig2", Tier::Figures),
    ("fig3", Tier::Figures),
    ("fig4-left", Tier::Figures),
    ("fig4-right", Tier::Figures),
    ("fig5", Tier::Figures),
    ("fig6", Tier::Figures),
    ("fig7", Tier::Figures),
    ("fig8", Tier::Figures),
    ("aaaa", Tier::Fast),
    ("daggerThm", Tier::Fast),
    ("hyde", Tier::Fast),
    ("pacific", Tier::Fast),
    ("bbbb", Tier::Fast),
    ("mainThm", Tier::Fast),
    ("cccc", Tier::Fast),
    ("smallThm", Tier::Fast),
    ("dddd", Tier::Fast),
    ("chokoUndKeks", Tier::Fast),
    ("thermalbad", Tier::Fast),
    ("tenComp", Tier::Fast),
    ("eeee", Tier::Standard),
    ("ffff", Tier::Standard),
    ("stats", Tier::Standard),
    ("word-stats", Tier::Standard),
];

/// Exact path-counting complexity of `{0110, 1111}`, recorded from the
/// doubleton search.
pub const DOUBLETON_PI_GOLDEN: usize = 4;

struct Outcome {
    pass: bool,
    computed: Value,
    expected: Value,
    counterexample: Option<Value>,
}

impl Outcome {
    fn compare(computed: Value, expected: Value) -> Self {
        Outcome {
            pass: computed == expected,
            counterexample: None,
            computed,
            expected,
        }
    }
}

fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}

pub struct Verifier<'f> {
    pub analyzer: Analyzer,
    pub selector: ModelSelector,
    fixtures: &'f dyn FixtureProvider,
}

impl Default for Verifier<'static> {
    fn default() -> Self {
        Verifier::new(ModelSelector::default(), &DrawnFixtures)
    }
}

impl<'f> Verifier<'f> {
    pub fn new(selector: ModelSelector, fixtures: &'f dyn FixtureProvider) -> Self {
        Verifier {
            analyzer: selector.analyzer,
            selector,
            fixtures,
        }
    }

    /// Runs one check. A claim above the budget's tier is refused, except
    /// the scan, which is shortened to the budget.
    pub fn verify_theorem(&self, id: &str, budget: Budget) -> Result<TheoremReport> {
        let (id, tier) = THEOREMS
            .iter()
            .find(|(name, _)| *name == id)
            .copied()
            .ok_or_else(|| Error::UnknownTheorem(id.to_string()))?;
        if tier > budget.tier {
            return Err(Error::BudgetExceeded(format!("{id} needs the {tier} tier")));
        }
        let start = Instant::now();
        let outcome = self.run(id, budget)?;
        Ok(TheoremReport {
            id: id.to_string(),
            tier,
            status: if outcome.pass { Status::Pass } else { Status::Fail },
            computed: outcome.computed,
            expected: outcome.expected,
            counterexample: if outcome.pass { None } else { outcome.counterexample },
            elapsed: start.elapsed(),
        })
    }

    /// Every check within the budget's tier.
    pub fn verify_all(&self, budget: Budget) -> Result<Vec<TheoremReport>> {
        THEOREMS
            .iter()
            .filter(|(_, tier)| *tier <= budget.tier)
            .map(|(id, _)| self.verify_theorem(id, budget))
            .collect()
    }

    fn run(&self, id: &str, budget: Budget) -> Result<Outcome> {
        let a = &self.analyzer;
        Ok(match id {
            id if id.starts_with("fig") => self.figure(id)?,
            "aaaa" => Outcome::compare(
                json!({ "a_pi": a.a_pi(&w("010111010"))? }),
                json!({ "a_pi": 5 }),
            ),
            "daggerThm" => {
                let x = w("010111010");
                let fig = self.fixtures.fixture("fig2")?;
                let dagger = a.a_dagger(&x)?;
                let pi = a.a_pi(&x)?;
                Outcome::compare(
                    json!({
                        "a_dagger": dagger,
                        "a_pi": pi,
                        "dagger_below_pi": dagger < pi,
                        "drawn_witness_states": fig.state_count(),
                        "drawn_witness_valid": is_unique_path_witness(&fig, &x),
                    }),
                    json!({
                        "a_dagger": 4,
                        "a_pi": 5,
                        "dagger_below_pi": true,
                        "drawn_witness_states": 4,
                        "drawn_witness_valid": true,
                    }),
                )
            }
            "hyde" => {
                let max_len = if budget.tier >= Tier::Standard { 12 } else { 10 };
                let mut bad = None;
                'outer: for n in 1..=max_len {
                    for x in Word::all(2, n) {
                        let value = a.a_pi(&x)?;
                        let k = kayleigh(&x)?;
                        let unique = count_paths_total(&k, n) == BigUint::from(1u32) && k.accepts(&x)?;
                        if value > n / 2 + 1 || !unique || k.state_count() != n / 2 + 1 {
                            bad = Some(json!({ "word": x, "a_pi": value, "kayleigh_unique": unique }));
                            break 'outer;
                        }
                    }
                }
                let mut o = Outcome::compare(
                    json!({ "max_length": max_len, "violations": bad.is_some() }),
                    json!({ "max_length": max_len, "violations": false }),
                );
                o.counterexample = bad;
                o
            }
            "pacific" => {
                let mut bad = None;
                'outer: for n in 2..=10 {
                    for x in Word::all(2, n) {
                        let m = pacific(&x)?;
                        let own = log_acc(&m, n, 2, Mode::Omega)?.finite();
                        let hs = a.h_star(&x, n as u32 - 2, 2, Mode::Omega)?;
                        if own != Some(n as u32 - 2) || !m.accepts(&x)? || hs > 2 {
                            bad = Some(json!({ "word": x, "h_star": hs }));
                            break 'outer;
                        }
                    }
                }
                let mut o = Outcome::compare(
                    json!({ "max_length": 10, "violations": bad.is_some() }),
                    json!({ "max_length": 10, "violations": false }),
                );
                o.counterexample = bad;
                o
            }
            "bbbb" => Outcome::compare(
                json!({ "h_star_pi": a.h_star(&w("001011"), 4, 2, Mode::Pi)? }),
                json!({ "h_star_pi": 3 }),
            ),
            "mainThm" => {
                let x = w("001011");
                Outcome::compare(
                    json!({
                        "h_star_omega": a.h_star(&x, 4, 2, Mode::Omega)?,
                        "h_star_pi": a.h_star(&x, 4, 2, Mode::Pi)?,
                    }),
                    json!({ "h_star_omega": 2, "h_star_pi": 3 }),
                )
            }
            "cccc" => Outcome::compare(
                json!({ "h_star_pi": a.h_star(&w("000010000"), 1, 2, Mode::Pi)? }),
                json!({ "h_star_pi": 5 }),
            ),
            "smallThm" => {
                let x = w("000010000");
                let fig = self.fixtures.fixture("fig3")?;
                Outcome::compare(
                    json!({
                        "h_star_omega": a.h_star(&x, 1, 2, Mode::Omega)?,
                        "h_star_pi": a.h_star(&x, 1, 2, Mode::Pi)?,
                        "drawn_model_states": fig.state_count(),
                        "drawn_model_accepts": fig.accepts(&x)?,
                        "drawn_model_log_acc_omega": log_acc(&fig, 9, 2, Mode::Omega)?,
                    }),
                    json!({
                        "h_star_omega": 4,
                        "h_star_pi": 5,
                        "drawn_model_states": 4,
                        "drawn_model_accepts": true,
                        "drawn_model_log_acc_omega": 1,
                    }),
                )
            }
            "dddd" => self.doubleton_oracle()?,
            "chokoUndKeks" => {
                let q = DoubletonQuery::new(vec![w("0110"), w("1111")], 2)?;
                Outcome::compare(
                    json!({
                        "omega": a.doubleton_complexity(&q, Mode::Omega)?,
                        "pi": a.doubleton_complexity(&q, Mode::Pi)?,
                    }),
                    json!({ "omega": 3, "pi": DOUBLETON_PI_GOLDEN }),
                )
            }
            "thermalbad" => {
                let mut bad = None;
                'outer: for n in 1..=6 {
                    let words: Vec<Word> = Word::all(2, n).collect();
                    for i in 0..words.len() {
                        let single = DoubletonQuery::new(vec![words[i].clone()], 2)?;
                        let k = chambers_hyde(&single)?;
                        if k.state_count() != n / 2 + 1 || count_paths_total(&k, n) != BigUint::from(1u32) {
                            bad = Some(json!({ "words": [words[i]] }));
                            break 'outer;
                        }
                        for j in i + 1..words.len() {
                            let q = DoubletonQuery::new(vec![words[i].clone(), words[j].clone()], 2)?;
                            let m = chambers_hyde(&q)?;
                            if m.state_count() != 2 * (n / 2) + 1
                                || count_paths_total(&m, n) != BigUint::from(2u32)
                                || accepted_words(&m, n) != q.words()
                            {
                                bad = Some(json!({ "words": q.words() }));
                                break 'outer;
                            }
                        }
                    }
                }
                let mut o = Outcome::compare(
                    json!({ "max_length": 6, "violations": bad.is_some() }),
                    json!({ "max_length": 6, "violations": false }),
                );
                o.counterexample = bad;
                o
            }
            "tenComp" => {
                let found = a.check_mode_equality(budget.scan_len)?;
                let mut o = Outcome::compare(
                    json!({ "max_length": budget.scan_len, "counterexamples": found }),
                    json!({ "max_length": budget.scan_len, "counterexamples": [] }),
                );
                o.counterexample = found.first().map(|x| json!(x));
                o.expected["claimed_max_length"] = json!(10);
                o.computed["claimed_max_length"] = json!(10);
                o
            }
            "eeee" => {
                let x = w("01111011011");
                let pi = self.selector.explain(&x, 2, Mode::Pi)?;
                let delta = self.selector.explain(&x, 2, Mode::Delta)?;
                let fig = self.fixtures.fixture("fig4-left")?;
                let fig_p = self.selector.pvalue_of_model(&fig, 11, 2, Mode::Pi)?;
                Outcome::compare(
                    json!({
                        "pi": [pi.optimal_states, pi.optimal_log_acc, pi.p_value.decimal(2), pi.witnesses],
                        "delta": [delta.optimal_states, delta.optimal_log_acc, delta.p_value.decimal(2), delta.witnesses],
                        "drawn_pi_model_p": fig_p.decimal(2),
                    }),
                    json!({
                        "pi": [3, 2, "0.04", ["012120120120"]],
                        "delta": [3, 4, "0.30", ["012020120120"]],
                        "drawn_pi_model_p": "0.04",
                    }),
                )
            }
            "ffff" => {
                let x = w("0110001000");
                let pi = self.selector.explain(&x, 2, Mode::Pi)?;
                let omega = self.selector.explain(&x, 2, Mode::Omega)?;
                let fig = self.fixtures.fixture("fig8")?;
                let fig_p = self.selector.pvalue_of_model(&fig, 10, 2, Mode::Omega)?;
                Outcome::compare(
                    json!({
                        "pi": [pi.optimal_states, pi.optimal_log_acc, pi.p_value.decimal(2)],
                        "omega": [omega.optimal_states, omega.optimal_log_acc, omega.p_value.decimal(2)],
                        "drawn_omega_model_p": fig_p.decimal(2),
                    }),
                    json!({
                        "pi": [4, 2, "0.79"],
                        "omega": [2, 7, "0.60"],
                        "drawn_omega_model_p": "0.60",
                    }),
                )
            }
            "stats" => {
                let c = self.selector.compare_modes(&w("01111011011"), 2)?;
                Outcome::compare(
                    json!({ "delta_pi_disjoint": c.disjoint(Mode::Delta, Mode::Pi) }),
                    json!({ "delta_pi_disjoint": true }),
                )
            }
            "word-stats" => {
                let c = self.selector.compare_modes(&w("0110001000"), 2)?;
                Outcome::compare(
                    json!({ "omega_pi_disjoint": c.disjoint(Mode::Omega, Mode::Pi) }),
                    json!({ "omega_pi_disjoint": true }),
                )
            }
            other => return Err(Error::UnknownTheorem(other.to_string())),
        })
    }

    /// Every automaton with at most 3 states whose length-4 language is
    /// `{0110, 1111}`: none with 2 or fewer states, and at least 3
    /// accepting paths with 3 states.
    fn doubleton_oracle(&self) -> Result<Outcome> {
        let target = [w("0110").rank(2), w("1111").rank(2)];
        let exact = |m: &crate::oracle::SmallNfa, buf: &mut Vec<u64>| {
            m.accepted_words(4, buf);
            buf.as_slice() == target
        };
        let mut buf = Vec::new();
        let small = (1..=2).find_map(|q| find_nfa(q, 2, false, |m| exact(m, &mut buf)));
        let mut fewest = u64::MAX;
        let mut qualifying = 0u64;
        for_each_nfa(3, 2, false, |m| {
            if exact(m, &mut buf) {
                qualifying += 1;
                fewest = fewest.min(m.total_paths(4));
            }
        });
        let fig = self.fixtures.fixture("fig6")?;
        let mut o = Outcome::compare(
            json!({
                "two_state_exists": small.is_some(),
                "three_state_min_paths": fewest,
                "drawn_model_paths": count_paths_total(&fig, 4).to_string(),
            }),
            json!({
                "two_state_exists": false,
                "three_state_min_paths": 3,
                "drawn_model_paths": "3",
            }),
        );
        o.computed["three_state_automata"] = json!(qualifying);
        o.counterexample = small.map(|m| json!(m.to_nfa().to_string()));
        Ok(o)
    }

    fn figure(&self, id: &str) -> Result<Outcome> {
        let m = self.fixtures.fixture(id)?;
        let accepts = |s: &str| m.accepts(&w(s));
        let words = |n: usize| accepted_words(&m, n).into_iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let (computed, expected) = match id {
            "fig2" => (
                json!({
                    "states": m.state_count(),
                    "accepts": accepts("010111010")?,
                    "unique_path_witness": is_unique_path_witness(&m, &w("010111010")),
                }),
                json!({ "states": 4, "accepts": true, "unique_path_witness": true }),
            ),
            "fig3" => (
                json!({
                    "states": m.state_count(),
                    "paths_000010000": count_paths_for_word(&m, &w("000010000"))?.to_string(),
                    "paths_000000100": count_paths_for_word(&m, &w("000000100"))?.to_string(),
                    "words": words(9),
                }),
                json!({
                    "states": 4,
                    "paths_000010000": "1",
                    "paths_000000100": "2",
                    "words": ["000000100", "000010000"],
                }),
            ),
            "fig4-left" => (
                json!({
                    "states": m.state_count(),
                    "accepts": accepts("01111011011")?,
                    "log_acc_pi": log_acc(&m, 11, 2, Mode::Pi)?,
                }),
                json!({ "states": 3, "accepts": true, "log_acc_pi": 2 }),
            ),
            "fig4-right" => (
                json!({
                    "states": m.state_count(),
                    "deterministic": m.is_deterministic(),
                    "accepts": accepts("01111011011")?,
                    "log_acc_delta": log_acc(&m, 11, 2, Mode::Delta)?,
                }),
                json!({ "states": 3, "deterministic": true, "accepts": true, "log_acc_delta": 4 }),
            ),
            "fig5" => (
                json!({
                    "states": m.state_count(),
                    "paths": count_paths_total(&m, 4).to_string(),
                    "words": words(4),
                }),
                json!({ "states": 5, "paths": "2", "words": ["0110", "1111"] }),
            ),
            "fig6" => (
                json!({
                    "states": m.state_count(),
                    "words": words(4),
                    "paths_1111": count_paths_for_word(&m, &w("1111"))?.to_string(),
                }),
                json!({ "states": 3, "words": ["0110", "1111"], "paths_1111": "2" }),
            ),
            "fig7" => (
                json!({
                    "states": m.state_count(),
                    "deterministic": m.is_deterministic(),
                    "words": count_words(&m, 13)?.to_string(),
                    "accepts": accepts("0000000111011")?,
                }),
                json!({ "states": 8, "deterministic": true, "words": "1", "accepts": true }),
            ),
            "fig8" => (
                json!({
                    "states": m.state_count(),
                    "accepts": accepts("0110001000")?,
                    "log_acc_omega": log_acc(&m, 10, 2, Mode::Omega)?,
                }),
                json!({ "states": 2, "accepts": true, "log_acc_omega": 7 }),
            ),
            other => return Err(Error::UnknownFixture(other.to_string())),
        };
        let mut o = Outcome::compare(computed, expected);
        o.counterexample = Some(json!({ "fixture": m.to_string() }));
        Ok(o)
    }
}

pub fn verify_theorem(id: &str, budget: Budget) -> Result<TheoremReport> {
    Verifier::default().verify_theorem(id, budget)
}

pub fn verify_all(budget: Budget) -> Result<Vec<TheoremReport>> {
    Verifier::default().verify_all(budget)
}
