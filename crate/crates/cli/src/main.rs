//! `autocx`: automatic complexity queries, structure functions, p-values,
//! explanations, claim verification, census scans and DOT export.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use automatic_complexity::complexity::{
    is_orbit_representative, symmetry_orbit, Analyzer, DoubletonQuery, Guards,
};
use automatic_complexity::constructions::{
    self, chambers_hyde, density_fraction, density_fraction_enumerated, exploded_kayleigh, kayleigh,
    pacific,
};
use automatic_complexity::dot::to_dot;
use automatic_complexity::model_selection::{ModelSelector, NumeratorCache};
use automatic_complexity::verify::{Budget, Tier, Verifier, DrawnFixtures, THEOREMS};
use automatic_complexity::{Error, Mode, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "autocx", version, about = "Automatic complexity of words")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Directory of the p-value numerator cache.
    #[arg(long, global = true, env = "AC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the numerator cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(flatten)]
    guards: GuardArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GuardArgs {
    /// Longest word for complexities and frontiers [default: 24]
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Longest length for p-values and census [default: 14]
    #[arg(long, global = true)]
    max_pvalue_len: Option<usize>,
    /// Longest length for mode-equality scans [default: 12]
    #[arg(long, global = true)]
    max_scan_len: Option<usize>,
    /// Longest doubleton words [default: 10]
    #[arg(long, global = true)]
    max_doubleton_len: Option<usize>,
    /// Longest word for the unique-path measure [default: 12]
    #[arg(long, global = true)]
    max_dagger_len: Option<usize>,
}

impl GuardArgs {
    fn guards(&self) -> Guards {
        let mut g = Guards::default();
        let set = |slot: &mut usize, v: Option<usize>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut g.max_word_len, self.max_word_len);
        set(&mut g.max_pvalue_len, self.max_pvalue_len);
        set(&mut g.max_scan_len, self.max_scan_len);
        set(&mut g.max_doubleton_len, self.max_doubleton_len);
        set(&mut g.max_dagger_len, self.max_dagger_len);
        g
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Delta,
    Pi,
    Omega,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Delta => Mode::Delta,
            ModeArg::Pi => Mode::Pi,
            ModeArg::Omega => Mode::Omega,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    /// Deterministic (partial DFA) complexity.
    Delta,
    /// Path-counting complexity.
    Pi,
    /// Word-counting complexity.
    Omega,
    /// Unique-path complexity.
    Dagger,
    /// Same as delta.
    Aminus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Kayleigh,
    Exploded,
    ChambersHyde,
    Pacific,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity of a word in one measure.
    Complexity {
        word: String,
        #[arg(long, value_enum, default_value = "pi")]
        mode: Measure,
        #[arg(long)]
        base: Option<usize>,
    },
    /// Pareto frontier and structure-function tables.
    Structure {
        word: String,
        #[arg(long, value_enum, default_value = "pi")]
        mode: ModeArg,
        #[arg(long)]
        base: Option<usize>,
    },
    /// Exact p-value of the parameters (states, log-acceptance).
    Pvalue {
        #[arg(short = 'q', long)]
        states: usize,
        #[arg(short = 'm', long)]
        logacc: u32,
        #[arg(short = 'n', long)]
        length: usize,
        #[arg(short = 'b', long, default_value_t = 2)]
        base: usize,
        #[arg(long, value_enum, default_value = "pi")]
        mode: ModeArg,
    },
    /// Optimal models of a word.
    Explain {
        word: String,
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, value_enum, conflicts_with = "all_modes", required_unless_present = "all_modes")]
        mode: Option<ModeArg>,
        /// Explain in every mode and compare the witness sets.
        #[arg(long)]
        all_modes: bool,
    },
    /// Recompute published claims.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// figures (or 0), fast, standard, extended, or a scan length.
        #[arg(long)]
        budget: Option<String>,
    },
    /// Complexity of every word of a length.
    Census {
        #[arg(short = 'n', long)]
        length: usize,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(short = 'b', long, default_value_t = 2)]
        base: usize,
        #[arg(long, default_value = "0.1")]
        epsilon: String,
    },
    /// DOT source for a figure or a construction.
    Dot {
        /// Figure id, or a word (two comma-separated words for chambers-hyde).
        target: String,
        #[arg(long, value_enum)]
        construction: Option<Construction>,
    },
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WordTooLong { .. }
            | Error::LengthTooLarge { .. }
            | Error::SearchBudgetExceeded { .. }
            | Error::BudgetExceeded(_)
            | Error::StateCountTooLargeForWordCounting { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn parse_word(text: &str) -> Result<Word, Failure> {
    text.parse::<Word>().map_err(Failure::from)
}

/// The least base covering the word, raised to `requested` if given.
fn resolve_base(words: &[&Word], requested: Option<usize>) -> Result<usize, Failure> {
    let inferred = words.iter().map(|w| w.default_base()).max().unwrap_or(2);
    match requested {
        None => Ok(inferred),
        Some(b) if b >= inferred => Ok(b),
        Some(b) => Err(usage(format!("--base {b} is below the {inferred} symbols the word uses"))),
    }
}

fn parse_rational(text: &str) -> Result<BigRational, Failure> {
    let bad = || usage(format!("not a decimal or fraction: {text:?}"));
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32)))
}

fn emit_json(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("values serialize"));
}

fn emit_tsv(rows: &[Vec<String>]) {
    for row in rows {
        println!("{}", row.join("\t"));
    }
}

struct App {
    format: Format,
    analyzer: Analyzer,
    selector: ModelSelector,
}

impl App {
    fn run(&self, command: Command) -> Outcome {
        match command {
            Command::Complexity { word, mode, base } => self.complexity(&word, mode, base),
            Command::Structure { word, mode, base } => self.structure(&word, mode.into(), base),
            Command::Pvalue {
                states,
                logacc,
                length,
                base,
                mode,
            } => self.pvalue(states, logacc, length, base, mode.into()),
            Command::Explain {
                word,
                base,
                mode,
                all_modes,
            } => self.explain(&word, base, mode.map(Mode::from), all_modes),
            Command::Verify { id, all, budget } => self.verify(id, all, budget),
            Command::Census {
                length,
                mode,
                base,
                epsilon,
            } => self.census(length, mode.map(Mode::from), base, &epsilon),
            Command::Dot { target, construction } => self.dot(&target, construction),
        }
    }

    fn complexity(&self, text: &str, measure: Measure, base: Option<usize>) -> Outcome {
        let x = parse_word(text)?;
        let b = resolve_base(&[&x], base)?;
        let a = &self.analyzer;
        let (name, value, witness) = match measure {
            Measure::Dagger => ("dagger", a.a_dagger(&x)?, None),
            other => {
                let mode = match other {
                    Measure::Pi => Mode::Pi,
                    Measure::Omega => Mode::Omega,
                    _ => Mode::Delta,
                };
                let (q, seq) = a.h_star_witness(&x, 0, b, mode)?;
                let name = match other {
                    Measure::Aminus => "aminus",
                    _ => mode.name(),
                };
                (name, q, Some(seq.to_string()))
            }
        };
        match self.format {
            Format::Json => emit_json(&json!({
                "word": x.to_string(),
                "base": b,
                "mode": name,
                "value": value,
                "witness_sequence": witness,
            })),
            Format::Tsv => emit_tsv(&[
                vec!["word".into(), "base".into(), "mode".into(), "value".into(), "witness_sequence".into()],
                vec![x.to_string(), b.to_string(), name.into(), value.to_string(), witness.unwrap_or_default()],
            ]),
        }
        Ok(0)
    }

    fn structure(&self, text: &str, mode: Mode, base: Option<usize>) -> Outcome {
        let x = parse_word(text)?;
        let b = resolve_base(&[&x], base)?;
        let f = self.analyzer.structure_frontier(&x, b, mode)?;
        let max_k = (x.len() / 2 + 1).max(f.max_states());
        let h: Vec<(usize, Value)> = (1..=max_k).map(|k| (k, json!(f.h(k)))).collect();
        let h_star: Vec<(u32, usize)> = (0..=x.len() as u32).map(|m| (m, f.h_star(m))).collect();
        match self.format {
            Format::Json => emit_json(&json!({
                "word": x.to_string(),
                "base": b,
                "mode": mode,
                "frontier": f.points.iter().map(|p| json!({"states": p.states, "log_acc": p.log_acc})).collect::<Vec<_>>(),
                "h": h.iter().map(|(k, v)| json!({"states": k, "log_acc": v})).collect::<Vec<_>>(),
                "h_star": h_star.iter().map(|(m, q)| json!({"log_acc": m, "states": q})).collect::<Vec<_>>(),
            })),
            Format::Tsv => {
                let mut rows = vec![vec!["table".into(), "states".into(), "log_acc".into()]];
                for p in &f.points {
                    rows.push(vec!["frontier".into(), p.states.to_string(), p.log_acc.to_string()]);
                }
                for (k, v) in &h {
                    let v = v.as_u64().map_or("inf".to_string(), |v| v.to_string());
                    rows.push(vec!["h".into(), k.to_string(), v]);
                }
                for (m, q) in &h_star {
                    rows.push(vec!["h_star".into(), q.to_string(), m.to_string()]);
                }
                emit_tsv(&rows);
            }
        }
        Ok(0)
    }

    fn pvalue(&self, q: usize, m: u32, n: usize, b: usize, mode: Mode) -> Outcome {
        if q == 0 {
            return Err(usage("--states must be at least 1"));
        }
        let p = self.selector.pvalue(q, m, n, b, mode)?;
        match self.format {
            Format::Json => emit_json(&json!({
                "states": q,
                "log_acc": m,
                "length": n,
                "base": b,
                "mode": mode,
                "p_value": p,
            })),
            Format::Tsv => emit_tsv(&[
                ["states", "log_acc", "length", "base", "mode", "numerator", "denominator", "decimal", "rounded"]
                    .map(String::from)
                    .to_vec(),
                vec![
                    q.to_string(),
                    m.to_string(),
                    n.to_string(),
                    b.to_string(),
                    mode.to_string(),
                    p.numerator.to_string(),
                    p.denominator.to_string(),
                    p.decimal(6),
                    p.decimal(2),
                ],
            ]),
        }
        Ok(0)
    }

    fn explain(&self, text: &str, base: Option<usize>, mode: Option<Mode>, all: bool) -> Outcome {
        let x = parse_word(text)?;
        let b = resolve_base(&[&x], base)?;
        let header = ["word", "base", "mode", "states", "log_acc", "numerator", "denominator", "decimal", "rounded", "witnesses", "candidates"]
            .map(String::from)
            .to_vec();
        let row = |r: &automatic_complexity::model_selection::ExplanationReport| {
            vec![
                r.word.to_string(),
                r.base.to_string(),
                r.mode.to_string(),
                r.optimal_states.to_string(),
                r.optimal_log_acc.to_string(),
                r.p_value.numerator.to_string(),
                r.p_value.denominator.to_string(),
                r.p_value.decimal(6),
                r.p_value.decimal(2),
                r.witnesses.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
                r.candidates_considered.to_string(),
            ]
        };
        if all {
            let c = self.selector.compare_modes(&x, b)?;
            match self.format {
                Format::Json => emit_json(&serde_json::to_value(&c).expect("serializable")),
                Format::Tsv => {
                    let mut rows = vec![header];
                    rows.extend(c.reports.iter().map(row));
                    for p in &c.pairs {
                        rows.push(vec![
                            "#disjoint".into(),
                            p.first.to_string(),
                            p.second.to_string(),
                            p.disjoint.to_string(),
                        ]);
                    }
                    emit_tsv(&rows);
                }
            }
        } else {
            let mode = mode.ok_or_else(|| usage("--mode or --all-modes is required"))?;
            let r = self.selector.explain(&x, b, mode)?;
            match self.format {
                Format::Json => emit_json(&serde_json::to_value(&r).expect("serializable")),
                Format::Tsv => emit_tsv(&[header, row(&r)]),
            }
        }
        Ok(0)
    }

    fn verify(&self, id: Option<String>, all: bool, budget: Option<String>) -> Outcome {
        let budget = match budget {
            Some(text) => text.parse::<Budget>().map_err(|_| usage(format!("unknown budget {text:?}")))?,
            None if all => Budget::tier(Tier::Fast),
            None => Budget::tier(Tier::Standard),
        };
        let verifier = Verifier::new(ModelSelector::new(self.analyzer), &DrawnFixtures);
        let reports = if all {
            verifier.verify_all(budget)?
        } else {
            let id = id.expect("clap requires an id without --all");
            if !THEOREMS.iter().any(|(name, _)| *name == id) {
                return Err(usage(format!("unknown claim {id:?}")));
            }
            vec![verifier.verify_theorem(&id, budget)?]
        };
        match self.format {
            Format::Json => {
                for r in &reports {
                    emit_json(&serde_json::to_value(r).expect("serializable"));
                }
            }
            Format::Tsv => {
                let mut rows = vec![vec!["id".to_string(), "tier".into(), "status".into()]];
                for r in &reports {
                    rows.push(vec![
                        r.id.clone(),
                        r.tier.to_string(),
                        if r.passed() { "pass" } else { "fail" }.into(),
                    ]);
                }
                emit_tsv(&rows);
            }
        }
        Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
    }

    fn census(&self, n: usize, mode: Option<Mode>, b: usize, epsilon: &str) -> Outcome {
        let eps = parse_rational(epsilon)?;
        let limit = self.analyzer.guards.max_pvalue_len;
        if n > limit {
            return Err(Error::LengthTooLarge { length: n, limit }.into());
        }
        if !(2..=4).contains(&b) {
            return Err(Error::BadBase(b).into());
        }
        let modes: Vec<Mode> = mode.map_or(Mode::ALL.to_vec(), |m| vec![m]);
        let words: Vec<Word> = Word::all(b, n).collect();
        let mut values: BTreeMap<Mode, Vec<usize>> = BTreeMap::new();
        for &mode in &modes {
            // solve one word per symmetry orbit, then copy to the orbit
            let reps: Vec<&Word> = words.iter().filter(|w| is_orbit_representative(w, b, mode)).collect();
            let solved = {
                use rayon::prelude::*;
                reps.par_iter()
                    .map(|w| self.analyzer.h_star(w, 0, b, mode))
                    .collect::<Result<Vec<usize>, Error>>()?
            };
            let mut column = vec![0usize; words.len()];
            for (w, v) in reps.iter().zip(solved) {
                for y in symmetry_orbit(w, b, mode) {
                    column[y.rank(b) as usize] = v;
                }
            }
            values.insert(mode, column);
        }
        let mut summary = BTreeMap::new();
        for (mode, column) in &values {
            let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
            for &v in column {
                *hist.entry(v).or_default() += 1;
            }
            summary.insert(*mode, hist);
        }
        let density = if n == 0 {
            None
        } else {
            let closed = density_fraction(n, b, &eps)?;
            let enumerated = if n <= 16 { Some(density_fraction_enumerated(n, b, &eps)?) } else { None };
            Some((closed, enumerated))
        };
        match self.format {
            Format::Json => {
                let rows: Vec<Value> = words
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        let mut row = serde_json::Map::new();
                        row.insert("word".into(), json!(w.to_string()));
                        for (mode, column) in &values {
                            row.insert(mode.to_string(), json!(column[i]));
                        }
                        Value::Object(row)
                    })
                    .collect();
                let summary: serde_json::Map<String, Value> = summary
                    .iter()
                    .map(|(mode, hist)| {
                        let h: serde_json::Map<String, Value> =
                            hist.iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
                        (mode.to_string(), Value::Object(h))
                    })
                    .collect();
                emit_json(&json!({
                    "length": n,
                    "base": b,
                    "rows": rows,
                    "distribution": summary,
                    "density": density.as_ref().map(|(c, e)| json!({
                        "epsilon": eps.to_string(),
                        "closed_form": c.to_string(),
                        "enumerated": e.as_ref().map(|e| e.to_string()),
                    })),
                }));
            }
            Format::Tsv => {
                let mut header = vec!["word".to_string()];
                header.extend(values.keys().map(|m| m.to_string()));
                let mut rows = vec![header];
                for (i, w) in words.iter().enumerate() {
                    let mut row = vec![w.to_string()];
                    row.extend(values.values().map(|c| c[i].to_string()));
                    rows.push(row);
                }
                for (mode, hist) in &summary {
                    for (k, c) in hist {
                        rows.push(vec!["#distribution".into(), mode.to_string(), k.to_string(), c.to_string()]);
                    }
                }
                if let Some((c, e)) = &density {
                    rows.push(vec![
                        "#density".into(),
                        eps.to_string(),
                        c.to_string(),
                        e.as_ref().map_or("-".into(), |e| e.to_string()),
                    ]);
                }
                emit_tsv(&rows);
            }
        }
        Ok(0)
    }

    fn dot(&self, target: &str, construction: Option<Construction>) -> Outcome {
        let nfa = match construction {
            None => constructions::fixture(target)?,
            Some(Construction::ChambersHyde) => {
                let words = target.split(',').map(parse_word).collect::<Result<Vec<_>, _>>()?;
                let b = resolve_base(&words.iter().collect::<Vec<_>>(), None)?;
                chambers_hyde(&DoubletonQuery::new(words, b)?)?
            }
            Some(c) => {
                let x = parse_word(target)?;
                match c {
                    Construction::Kayleigh => kayleigh(&x)?,
                    Construction::Exploded => exploded_kayleigh(&x)?,
                    _ => pacific(&x)?,
                }
            }
        };
        print!("{}", to_dot(&nfa, target));
        Ok(0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool is configured once");
    }
    let analyzer = Analyzer::new(cli.guards.guards());
    let mut selector = ModelSelector::new(analyzer);
    if !cli.no_cache {
        let dir = cli
            .cache_dir
            .clone()
            .or_else(|| dirs::data_dir().map(|d| d.join("automatic-complexity")));
        if let Some(dir) = dir {
            match NumeratorCache::open(&dir) {
                Ok(cache) => selector = selector.with_cache(cache),
                Err(e) => eprintln!("warning: numerator cache disabled: {e}"),
            }
        }
    }
    let app = App {
        format: cli.format,
        analyzer,
        selector,
    };
    match app.run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
