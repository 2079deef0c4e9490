//! The `wopl` command line.
//!
//! Every subcommand is a thin wrapper around `wopl-core`. [`run`] parses the
//! arguments, writes the result to `out` (or the `--output` file) and returns
//! the exit code: 0 on success, 1 when a comparison finds a mismatch, 2 for
//! malformed input, 3 when an operation's precondition fails.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use wopl::constructions::{
    eliminate_pop_weights, from_nwa, hadamard, intersect_with_opl, nivat_decompose, project,
    scalar_left_multiply, sum, NivatDecomposition, WeightedNwa,
};
use wopl::io;
use wopl::logic::{automaton_to_formula, classify, Assignment, Evaluator, Formula, DEFAULT_BUDGET};
use wopl::series::{compatible_words, diff_on, DiffOutcome, Exec, Series};
use wopl::step::{PartitionCheck, StepFunction};
use wopl::{Error, OpAlphabet, Semiring, Weight, WeightedOpa, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Hard cap on `--max-len`.
pub const MAX_LEN_CAP: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "wopl",
    version,
    about = "Weighted operator precedence automata and weighted MSO"
)]
struct Cli {
    /// Print results and errors as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Semiring id (boolean, rational, max-plus, min-plus, fin-lang:LETTERS)
    /// for files that do not declare one; must agree with those that do.
    #[arg(long, global = true, value_name = "ID")]
    semiring: Option<String>,

    /// Write the result to this file instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Bound {
    /// Longest word enumerated (at most 10).
    #[arg(long, default_value_t = 5)]
    max_len: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chain relation of a word.
    Chains { opm: PathBuf, word: String },
    /// Whether a word is compatible with the precedence matrix.
    Compat { opm: PathBuf, word: String },
    /// Whether an automaton accepts a word.
    Accepts { automaton: PathBuf, word: String },
    /// Accepting runs of an automaton on a word, with their weights.
    Runs { automaton: PathBuf, word: String },
    /// Weighted behavior on the given words, or on every compatible word up to --max-len.
    Eval {
        automaton: PathBuf,
        words: Vec<String>,
        #[command(flatten)]
        bound: Bound,
    },
    /// Automaton for the pointwise sum of two behaviors.
    Sum { left: PathBuf, right: PathBuf },
    /// Restriction of a weighted automaton to the language of an unweighted one.
    Intersect {
        automaton: PathBuf,
        language: PathBuf,
    },
    /// Automaton for the pointwise product of two behaviors.
    Hadamard { left: PathBuf, right: PathBuf },
    /// Image of a behavior under a symbol map.
    Project { automaton: PathBuf, map: PathBuf },
    /// Automaton for `k ⊗ behavior`.
    Scale {
        #[arg(allow_hyphen_values = true)]
        k: String,
        automaton: PathBuf,
    },
    /// Equivalent automaton whose pop transitions all weigh one.
    Unpop { automaton: PathBuf },
    /// Operator precedence automaton for a nested word automaton.
    FromNwa { nwa: PathBuf },
    /// Behavior of a nested word automaton on well-matched words.
    NwaEval { nwa: PathBuf, words: Vec<String> },
    /// One-state automaton, language and symbol map presenting a restricted automaton.
    NivatDecompose { automaton: PathBuf },
    /// Compares a decomposition bundle with an automaton up to --max-len.
    NivatCheck {
        bundle: PathBuf,
        automaton: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Value of a step function on words.
    StepEval {
        step: PathBuf,
        words: Vec<String>,
        /// Also check up to --max-len that the parts partition the compatible words.
        #[arg(long)]
        check_partition: bool,
        #[command(flatten)]
        bound: Bound,
    },
    /// Value of a weighted MSO formula on a word.
    MsoEval {
        formula: PathBuf,
        word: String,
        /// Free variable value, `x=3` or `X={1,2}`.
        #[arg(long = "assign", value_name = "VAR=VALUE")]
        assign: Vec<String>,
        /// Precedence matrix (or any file embedding one) for formulas without one.
        #[arg(long, value_name = "PATH")]
        opm: Option<PathBuf>,
    },
    /// Syntactic fragments of a formula.
    MsoClassify { formula: PathBuf },
    /// Weighted MSO sentence defining an automaton's behavior.
    ToMso { automaton: PathBuf },
    /// Compares two series on every compatible word up to --max-len.
    Diff {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
}

/// A failed command, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(kind: &'static str, message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            kind,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_PRECONDITION
            },
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// What a command produced: human-readable text, its JSON form, and the exit code.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            code: EXIT_OK,
        }
    }

    /// A document (automaton, formula, bundle) printed the same way in both modes.
    fn document(v: Value) -> Report {
        Report::ok(pretty(&v), v)
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = semiring_override(&cli).and_then(|sr| execute(&cli.command, sr.as_ref()));
    match result {
        Ok(report) => {
            let mut text = if cli.json && !is_document(&cli.command) {
                pretty(&report.json)
            } else {
                report.text
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match emit(cli.output.as_deref(), out, &text) {
                Ok(()) => report.code,
                Err(f) => fail(&cli, f, out, err),
            }
        }
        Err(f) => fail(&cli, f, out, err),
    }
}

fn is_document(c: &Command) -> bool {
    matches!(
        c,
        Command::Sum { .. }
            | Command::Intersect { .. }
            | Command::Hadamard { .. }
            | Command::Project { .. }
            | Command::Scale { .. }
            | Command::Unpop { .. }
            | Command::FromNwa { .. }
            | Command::NivatDecompose { .. }
            | Command::ToMso { .. }
    )
}

fn emit(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Outcome<()> {
    let result = match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure::input("io", format!("cannot write output: {e}")))
}

fn fail(cli: &Cli, f: Failure, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cli.json {
        let v = json!({"status": "error", "kind": f.kind, "message": f.message, "exit": f.code});
        let _ = writeln!(out, "{}", pretty(&v));
    } else {
        let _ = writeln!(err, "error: {}", f.message);
    }
    f.code
}

fn semiring_override(cli: &Cli) -> Outcome<Option<Semiring>> {
    Ok(cli.semiring.as_deref().map(str::parse).transpose()?)
}

fn check_bound(b: &Bound) -> Outcome<usize> {
    if b.max_len > MAX_LEN_CAP {
        return Err(Failure::input(
            "max-len",
            format!("--max-len {} exceeds the cap of {MAX_LEN_CAP}", b.max_len),
        ));
    }
    Ok(b.max_len)
}

// ---------------------------------------------------------------- loading

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent()
}

/// A weighted automaton; files without a semiring (and no `--semiring`) are
/// read as unweighted automata over the boolean semiring.
fn load_weighted(path: &Path, sr: Option<&Semiring>) -> Outcome<WeightedOpa> {
    let v = io::read_json(path)?;
    weighted_from_value(&v, base_dir(path), sr)
}

fn weighted_from_value(
    v: &Value,
    base: Option<&Path>,
    sr: Option<&Semiring>,
) -> Outcome<WeightedOpa> {
    if v.get("semiring").is_none() && sr.is_none() {
        return Ok(WeightedOpa::lift_boolean(&io::opa_from_value(v, base)?));
    }
    Ok(io::wopa_from_value(v, base, sr)?)
}

fn word(alpha: &OpAlphabet, text: &str) -> Outcome<Word> {
    Ok(alpha.word(text)?)
}

fn weight_json(w: &Weight) -> Value {
    io::weight_to_json(w)
}

// ---------------------------------------------------------------- series sources

/// A formula sentence read as a series over an alphabet.
struct Sentence {
    formula: Formula,
    alpha: Arc<OpAlphabet>,
    semiring: Semiring,
}

impl Series for Sentence {
    fn alphabet(&self) -> &Arc<OpAlphabet> {
        &self.alpha
    }
    fn semiring(&self) -> &Semiring {
        &self.semiring
    }
    fn eval(&self, w: &Word) -> wopl::Result<Weight> {
        Evaluator::new(&self.alpha, &self.semiring).eval(&self.formula, w, &Assignment::new())
    }
}

#[allow(clippy::large_enum_variant)]
enum Source {
    Automaton(WeightedOpa),
    Nwa(WeightedNwa),
    Step(StepFunction),
    Nivat(NivatDecomposition),
    /// A formula, with the alphabet it names if any.
    Formula(Formula, Semiring, Option<OpAlphabet>),
}

impl Source {
    fn load(path: &Path, sr: Option<&Semiring>) -> Outcome<Source> {
        let v = io::read_json(path)?;
        let base = base_dir(path);
        let has = |k: &str| v.get(k).is_some();
        Ok(if has("partition") {
            Source::Nwa(io::nwa_from_value(&v, sr)?)
        } else if has("parts") {
            Source::Step(io::step_from_value(&v, base, sr)?)
        } else if has("one_state") && has("language") {
            Source::Nivat(io::nivat_from_value(&v, base)?)
        } else if has("formula") || has("op") {
            let f = io::formula_file_from_value(&v, base, sr)?;
            Source::Formula(f.formula, f.semiring, f.opm)
        } else {
            Source::Automaton(weighted_from_value(&v, base, sr)?)
        })
    }

    fn alphabet(&self) -> Option<Arc<OpAlphabet>> {
        match self {
            Source::Automaton(a) => Some(a.alphabet().clone()),
            Source::Nwa(n) => Some(n.alphabet().clone()),
            Source::Step(s) => Some(s.alphabet().clone()),
            Source::Nivat(d) => Some(d.target().clone()),
            Source::Formula(_, _, opm) => opm.clone().map(Arc::new),
        }
    }

    /// The series, reading a formula without its own alphabet over `fallback`.
    fn into_series(self, fallback: Option<Arc<OpAlphabet>>) -> Outcome<Box<dyn Series>> {
        Ok(match self {
            Source::Automaton(a) => Box::new(a),
            Source::Nwa(n) => Box::new(n),
            Source::Step(s) => Box::new(s),
            Source::Nivat(d) => Box::new(d),
            Source::Formula(formula, semiring, opm) => {
                let alpha = opm.map(Arc::new).or(fallback).ok_or_else(|| {
                    Failure::input("missing-opm", "neither side names a precedence matrix")
                })?;
                Box::new(Sentence {
                    formula,
                    alpha,
                    semiring,
                })
            }
        })
    }
}

fn compare(
    left: &dyn Series,
    right: &dyn Series,
    max_len: usize,
    nested: Option<&WeightedNwa>,
) -> Outcome<Report> {
    if left.alphabet() != right.alphabet() {
        return Err(Error::AlphabetMismatch.into());
    }
    let alpha = left.alphabet().clone();
    let mut words = compatible_words(&alpha, max_len);
    if let Some(n) = nested {
        words.retain(|w| n.is_well_matched(w));
    }
    Ok(match diff_on(left, right, &words, Exec::default())? {
        DiffOutcome::Equal { words } => Report::ok(
            "equal".into(),
            json!({"status": "equal", "words": words, "max_len": max_len}),
        ),
        DiffOutcome::Mismatch { word, left, right } => {
            let w = alpha.render(&word);
            Report {
                text: format!("mismatch on \"{w}\": left {left}, right {right}"),
                json: json!({
                    "status": "mismatch",
                    "word": w,
                    "left": weight_json(&left),
                    "right": weight_json(&right),
                }),
                code: EXIT_MISMATCH,
            }
        }
    })
}

// ---------------------------------------------------------------- commands

fn execute(command: &Command, sr: Option<&Semiring>) -> Outcome<Report> {
    match command {
        Command::Chains { opm, word: text } => {
            let alpha = io::load_alphabet(opm)?;
            let w = word(&alpha, text)?;
            let chains = alpha.chains(&w);
            let lines: Vec<String> = chains.iter().map(|(i, j)| format!("{i} {j}")).collect();
            Ok(Report::ok(
                lines.join("\n"),
                json!({"word": text, "chains": chains.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>()}),
            ))
        }
        Command::Compat { opm, word: text } => {
            let alpha = io::load_alphabet(opm)?;
            let w = word(&alpha, text)?;
            let status = if alpha.is_compatible(&w) {
                "compatible"
            } else {
                "incompatible"
            };
            Ok(Report::ok(
                status.into(),
                json!({"status": status, "word": text}),
            ))
        }
        Command::Accepts {
            automaton,
            word: text,
        } => {
            let a = io::load_opa(automaton)?;
            let w = word(a.alphabet(), text)?;
            let status = if a.accepts(&w) {
                "accepted"
            } else {
                "rejected"
            };
            Ok(Report::ok(
                status.into(),
                json!({"status": status, "word": text}),
            ))
        }
        Command::Runs {
            automaton,
            word: text,
        } => runs(&load_weighted(automaton, sr)?, text),
        Command::Eval {
            automaton,
            words,
            bound,
        } => {
            let a = load_weighted(automaton, sr)?;
            let max_len = check_bound(bound)?;
            table(a.alphabet(), words, max_len, |w| Ok(a.behavior(w)))
        }
        Command::Sum { left, right } => {
            let (a, b) = (load_weighted(left, sr)?, load_weighted(right, sr)?);
            Ok(Report::document(io::wopa_to_value(&sum(&a, &b)?)))
        }
        Command::Intersect {
            automaton,
            language,
        } => {
            let a = load_weighted(automaton, sr)?;
            let l = io::load_opa(language)?;
            Ok(Report::document(io::wopa_to_value(&intersect_with_opl(
                &a, &l,
            )?)))
        }
        Command::Hadamard { left, right } => {
            let (a, b) = (load_weighted(left, sr)?, load_weighted(right, sr)?);
            Ok(Report::document(io::wopa_to_value(&hadamard(&a, &b)?)))
        }
        Command::Project { automaton, map } => {
            let a = load_weighted(automaton, sr)?;
            let h = io::load_symbol_map(map, a.alphabet())?;
            Ok(Report::document(io::wopa_to_value(&project(&a, &h)?)))
        }
        Command::Scale { k, automaton } => {
            let a = load_weighted(automaton, sr)?;
            let k = a.semiring().parse_weight(k)?;
            Ok(Report::document(io::wopa_to_value(&scalar_left_multiply(
                &k, &a,
            )?)))
        }
        Command::Unpop { automaton } => {
            let a = load_weighted(automaton, sr)?;
            Ok(Report::document(io::wopa_to_value(&eliminate_pop_weights(
                &a,
            )?)))
        }
        Command::FromNwa { nwa } => {
            let n = io::load_nwa(nwa, sr)?;
            Ok(Report::document(io::wopa_to_value(&from_nwa(&n)?)))
        }
        Command::NwaEval { nwa, words } => {
            let n = io::load_nwa(nwa, sr)?;
            table(n.alphabet(), words, 0, |w| Ok(n.behavior(w)?))
        }
        Command::NivatDecompose { automaton } => {
            let a = load_weighted(automaton, sr)?;
            Ok(Report::document(io::nivat_to_value(&nivat_decompose(&a)?)))
        }
        Command::NivatCheck {
            bundle,
            automaton,
            bound,
        } => {
            let max_len = check_bound(bound)?;
            let d = io::load_nivat(bundle)?;
            let a = load_weighted(automaton, sr)?;
            compare(&d, &a, max_len, None)
        }
        Command::StepEval {
            step,
            words,
            check_partition,
            bound,
        } => {
            let max_len = check_bound(bound)?;
            let f = io::load_step(step, sr)?;
            let mut report = table(
                f.alphabet(),
                words,
                if words.is_empty() { max_len } else { 0 },
                |w| Ok(f.eval(w)),
            )?;
            if *check_partition {
                let (line, v) = match f.check_partition(max_len) {
                    PartitionCheck::Partition => {
                        ("partition: yes".to_string(), json!({"partition": true}))
                    }
                    PartitionCheck::Violated { word, parts } => {
                        let w = f.alphabet().render(&word);
                        (
                            format!("partition: no, \"{w}\" lies in {parts} parts"),
                            json!({"partition": false, "word": w, "parts": parts}),
                        )
                    }
                };
                report.text = format!("{}\n{line}", report.text);
                report.json["partition"] = v;
            }
            Ok(report)
        }
        Command::MsoEval {
            formula,
            word: text,
            assign,
            opm,
        } => {
            let f = io::load_formula(formula, sr)?;
            let alpha = match opm {
                Some(p) => io::load_alphabet(p)?,
                None => f.opm.clone().ok_or_else(|| {
                    Failure::input(
                        "missing-opm",
                        "the formula names no precedence matrix; pass --opm",
                    )
                })?,
            };
            let w = word(&alpha, text)?;
            let sigma = assignment(assign)?;
            let value = Evaluator::new(&alpha, &f.semiring)
                .with_budget(DEFAULT_BUDGET)
                .eval(&f.formula, &w, &sigma)?;
            Ok(Report::ok(
                value.to_string(),
                json!({"word": text, "semiring": f.semiring.id(), "value": weight_json(&value)}),
            ))
        }
        Command::MsoClassify { formula } => {
            let f = io::load_formula(formula, sr)?;
            let c = classify(&f.formula, &f.semiring);
            let flags = [
                ("boolean", c.is_boolean),
                ("almost-boolean", c.is_almost_boolean),
                ("otimes-restricted", c.is_otimes_restricted),
                ("prod-restricted", c.is_prod_restricted),
                ("restricted", c.is_restricted),
            ];
            let consts: Vec<String> = c.constants.iter().map(Weight::to_string).collect();
            let mut text: Vec<String> = flags
                .iter()
                .map(|(k, b)| format!("{k}: {}", yes(*b)))
                .collect();
            text.push(
                format!("constants: {}", consts.join(" "))
                    .trim_end()
                    .to_string(),
            );
            let mut v = serde_json::Map::new();
            for (k, b) in flags {
                v.insert(k.into(), json!(b));
            }
            v.insert(
                "constants".into(),
                json!(c.constants.iter().map(weight_json).collect::<Vec<_>>()),
            );
            Ok(Report::ok(text.join("\n"), Value::Object(v)))
        }
        Command::ToMso { automaton } => {
            let a = load_weighted(automaton, sr)?;
            let f = automaton_to_formula(&a)?;
            Ok(Report::document(io::formula_file_to_value(
                &f,
                a.semiring(),
                Some(a.alphabet()),
            )))
        }
        Command::Diff { left, right, bound } => {
            let max_len = check_bound(bound)?;
            let (l, r) = (Source::load(left, sr)?, Source::load(right, sr)?);
            let (la, ra) = (l.alphabet(), r.alphabet());
            let nested = match (&l, &r) {
                (Source::Nwa(n), _) | (_, Source::Nwa(n)) => Some(n.clone()),
                _ => None,
            };
            let left = l.into_series(ra)?;
            let right = r.into_series(la)?;
            compare(left.as_ref(), right.as_ref(), max_len, nested.as_ref())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One line `word<TAB>value` per word; every compatible word up to `max_len`
/// when `words` is empty.
fn table(
    alpha: &Arc<OpAlphabet>,
    words: &[String],
    max_len: usize,
    f: impl Fn(&Word) -> Outcome<Weight>,
) -> Outcome<Report> {
    let words: Vec<Word> = if words.is_empty() {
        compatible_words(alpha, max_len)
    } else {
        words
            .iter()
            .map(|t| word(alpha, t))
            .collect::<Outcome<_>>()?
    };
    let single = words.len() == 1;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for w in &words {
        let value = f(w)?;
        let rendered = alpha.render(w);
        lines.push(if single {
            value.to_string()
        } else {
            format!("{rendered}\t{value}")
        });
        rows.push(json!({"word": rendered, "value": weight_json(&value)}));
    }
    Ok(Report::ok(lines.join("\n"), json!({"results": rows})))
}

fn runs(a: &WeightedOpa, text: &str) -> Outcome<Report> {
    let w = word(a.alphabet(), text)?;
    let mut found = a.base().enumerate_runs(&w)?;
    found.sort();
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for r in &found {
        let moves: Vec<String> = r.iter().map(|m| a.base().render_move(m)).collect();
        let weight = a.run_weight(r);
        lines.push(format!("{}  [{weight}]", moves.join(" ")));
        rows.push(json!({"moves": moves, "weight": weight_json(&weight)}));
    }
    lines.push(format!("{} accepting run(s)", found.len()));
    Ok(Report::ok(
        lines.join("\n"),
        json!({"word": text, "runs": rows}),
    ))
}

/// Parses `--assign` values: `x=3` binds a position, `X={1,2}` a set.
fn assignment(items: &[String]) -> Outcome<Assignment> {
    let bad = |s: &str| {
        Failure::input(
            "invalid-assignment",
            format!("cannot read assignment `{s}`"),
        )
    };
    let mut sigma = Assignment::new();
    for item in items {
        let (var, value) = item.split_once('=').ok_or_else(|| bad(item))?;
        let (var, value) = (var.trim(), value.trim());
        if var.is_empty() {
            return Err(bad(item));
        }
        if let Some(inner) = value.strip_prefix('{').and_then(|v| v.strip_suffix('}')) {
            let set = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad(item)))
                .collect::<Outcome<BTreeSet<usize>>>()?;
            sigma = sigma.with_second(var, set);
        } else {
            sigma = sigma.with_first(var, value.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(sigma)
}
