//! JSON file formats.
//!
//! * OPM: `{"symbols": [..], "matrix": [{"a", "b", "rel"}]}` with `rel` one of
//!   `<·`, `=·`, `·>` (ASCII `<`, `=`, `>` also accepted).
//! * Automaton: `"opm"` (embedded object or a path relative to the file),
//!   `"states"`, `"initial"`, `"final"`, `"push"`/`"shift"` as
//!   `[{"from", "sym", "to"}]`, `"pop"` as `[{"from", "stack", "to"}]`.
//! * Weighted automaton: the above plus `"semiring"` and `"weights"` with
//!   `"push"`, `"shift"`, `"pop"` lists whose entries carry a `"w"`.
//!   Transition lists may be omitted when the weight lists name them.
//! * Nested word automaton: `"semiring"`, `"partition"` (`"call"`, `"int"`,
//!   `"ret"`), `"states"`, `"initial"`, `"final"`, `"call"`/`"int"` as
//!   `[{"from", "sym", "to", "w"}]`, `"ret"` as `[{"from", "stack", "sym", "to", "w"}]`.
//! * Step function: `"semiring"`, `"opm"`, `"parts": [{"automaton", "w"}]`;
//!   part automata inherit the OPM.
//! * Formula: a bare AST, or `{"semiring", "opm", "formula"}`.
//! * Nivat bundle: `"map"`, `"one_state"`, `"language"`, `"target"`.
//! * Symbol map: `"map"` from source to target names, optional `"target"` OPM.
//!
//! Weights are literal strings, numbers, or (finite languages) arrays of strings.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::alphabet::{OpAlphabet, Prec, Sym, SymbolMap};
use crate::constructions::{NivatDecomposition, NwaKind, WeightedNwa, WeightedNwaBuilder};
use crate::error::{Error, Result};
use crate::logic::{formula_from_json, formula_to_json, Formula};
use crate::opa::{Opa, State};
use crate::semiring::{Semiring, Weight};
use crate::step::StepFunction;
use crate::wopa::WeightedOpa;

fn parse_err(context: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{context}: {e}"))
}

/// Parses JSON text without a nesting limit (translated formulas nest deeply).
pub fn parse_json(text: &str) -> Result<Value> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let v = Value::deserialize(&mut de).map_err(|e| parse_err("invalid JSON", e))?;
    de.end().map_err(|e| parse_err("invalid JSON", e))?;
    Ok(v)
}

/// Reads and parses a JSON file.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(&format!("cannot read {}", path.display()), e))?;
    parse_json(&text)
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| parse_err(&format!("malformed {what}"), e))
}

pub fn weight_from_json(v: &Value, sr: &Semiring) -> Result<Weight> {
    match v {
        Value::String(s) => sr.parse_weight(s),
        Value::Number(_) | Value::Array(_) => sr.parse_weight(&v.to_string()),
        _ => Err(Error::InvalidWeight {
            literal: v.to_string(),
            semiring: sr.id(),
            reason: "expected a string, number or array".into(),
        }),
    }
}

pub fn weight_to_json(w: &Weight) -> Value {
    match w {
        Weight::Lang(words) => json!(words),
        _ => Value::String(w.to_string()),
    }
}

/// An embedded object, or the contents of a path relative to `base`
/// together with that file's directory.
fn resolve(v: &Value, base: Option<&Path>) -> Result<(Value, Option<PathBuf>)> {
    match v {
        Value::String(p) => {
            let path = base.map_or_else(|| PathBuf::from(p), |dir| dir.join(p));
            let dir = path.parent().map(Path::to_path_buf);
            Ok((read_json(&path)?, dir))
        }
        _ => Ok((v.clone(), base.map(Path::to_path_buf))),
    }
}

fn dir_of(path: &Path) -> Option<PathBuf> {
    path.parent().map(Path::to_path_buf)
}

// ---------------------------------------------------------------- OPM

#[derive(Serialize, Deserialize)]
struct EntryFile {
    a: String,
    b: String,
    rel: String,
}

#[derive(Serialize, Deserialize)]
struct OpmFile {
    symbols: Vec<String>,
    #[serde(default)]
    matrix: Vec<EntryFile>,
}

pub fn opm_from_value(v: &Value) -> Result<OpAlphabet> {
    let f: OpmFile = from_value(v, "OPM")?;
    let entries = f
        .matrix
        .into_iter()
        .map(|e| Ok((e.a, e.b, Prec::parse(&e.rel)?)))
        .collect::<Result<Vec<_>>>()?;
    OpAlphabet::new(f.symbols, entries)
}

pub fn opm_to_value(alpha: &OpAlphabet) -> Value {
    let matrix: Vec<Value> = alpha
        .entries()
        .map(|(a, b, p)| json!({"a": alpha.name(a), "b": alpha.name(b), "rel": p.symbol()}))
        .collect();
    json!({"symbols": alpha.names(), "matrix": matrix})
}

pub fn load_opm(path: &Path) -> Result<OpAlphabet> {
    opm_from_value(&read_json(path)?)
}

fn opm_field(
    opm: Option<&Value>,
    base: Option<&Path>,
    inherited: Option<&Arc<OpAlphabet>>,
) -> Result<Arc<OpAlphabet>> {
    match (opm, inherited) {
        (Some(v), _) => Ok(Arc::new(opm_from_value(&resolve(v, base)?.0)?)),
        (None, Some(a)) => Ok(a.clone()),
        (None, None) => Err(Error::Parse("missing field `opm`".into())),
    }
}

/// An OPM file, or the OPM of any file carrying an `"opm"` field.
pub fn alphabet_from_value(v: &Value, base: Option<&Path>) -> Result<OpAlphabet> {
    match v.get("opm") {
        Some(o) => opm_from_value(&resolve(o, base)?.0),
        None => opm_from_value(v),
    }
}

pub fn load_alphabet(path: &Path) -> Result<OpAlphabet> {
    alphabet_from_value(&read_json(path)?, dir_of(path).as_deref())
}

// ---------------------------------------------------------------- symbol maps

/// `{"map": {a: b}, "target": opm}`; without a target the map is onto `source`.
pub fn symbol_map_from_value(
    v: &Value,
    base: Option<&Path>,
    source: &Arc<OpAlphabet>,
) -> Result<SymbolMap> {
    let map: BTreeMap<String, String> = from_value(
        v.get("map")
            .ok_or_else(|| Error::Parse("map file lacks `map`".into()))?,
        "symbol map",
    )?;
    let target = match v.get("target") {
        Some(t) => Arc::new(opm_from_value(&resolve(t, base)?.0)?),
        None => source.clone(),
    };
    SymbolMap::new(source.clone(), target, &map)
}

pub fn load_symbol_map(path: &Path, source: &Arc<OpAlphabet>) -> Result<SymbolMap> {
    symbol_map_from_value(&read_json(path)?, dir_of(path).as_deref(), source)
}

pub fn symbol_map_to_value(h: &SymbolMap) -> Value {
    json!({"map": h.to_names(), "target": opm_to_value(h.target())})
}

// ---------------------------------------------------------------- automata

#[derive(Deserialize, Clone)]
struct ReadFile {
    from: String,
    sym: String,
    to: String,
    #[serde(default)]
    w: Option<Value>,
}

#[derive(Deserialize, Clone)]
struct PopFile {
    from: String,
    stack: String,
    to: String,
    #[serde(default)]
    w: Option<Value>,
}

#[derive(Deserialize, Default)]
struct WeightsFile {
    #[serde(default)]
    push: Vec<ReadFile>,
    #[serde(default)]
    shift: Vec<ReadFile>,
    #[serde(default)]
    pop: Vec<PopFile>,
}

#[derive(Deserialize)]
struct AutomatonFile {
    #[serde(default)]
    opm: Option<Value>,
    #[serde(default)]
    semiring: Option<String>,
    #[serde(default)]
    states: Option<Vec<String>>,
    #[serde(default)]
    initial: Vec<String>,
    #[serde(default, rename = "final")]
    finals: Vec<String>,
    #[serde(default)]
    push: Option<Vec<ReadFile>>,
    #[serde(default)]
    shift: Option<Vec<ReadFile>>,
    #[serde(default)]
    pop: Option<Vec<PopFile>>,
    #[serde(default)]
    weights: Option<WeightsFile>,
}

/// State names, either fixed by a `"states"` list or interned on first use.
struct States {
    names: Vec<String>,
    index: BTreeMap<String, State>,
    fixed: bool,
}

impl States {
    fn new(listed: Option<Vec<String>>) -> Result<States> {
        let mut s = States {
            names: Vec::new(),
            index: BTreeMap::new(),
            fixed: false,
        };
        if let Some(listed) = listed {
            for name in listed {
                if s.index.contains_key(&name) {
                    return Err(Error::InvalidAutomaton(format!("duplicate state `{name}`")));
                }
                s.get(&name)?;
            }
            s.fixed = true;
        }
        Ok(s)
    }

    fn get(&mut self, name: &str) -> Result<State> {
        if let Some(&q) = self.index.get(name) {
            return Ok(q);
        }
        if self.fixed {
            return Err(Error::UnknownState(name.to_string()));
        }
        let q = State(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), q);
        Ok(q)
    }
}

type Key = (String, String, String);

/// Transitions with their optional weights, merging the `"weights"` list.
fn merge<T>(
    moves: Option<Vec<T>>,
    weights: Vec<T>,
    key: impl Fn(&T) -> Key,
    weight: impl Fn(&T) -> Option<Value>,
) -> Result<Vec<(Key, Option<Value>)>> {
    let listed = moves.is_some();
    let mut out: Vec<(Key, Option<Value>)> = Vec::new();
    let mut pos: BTreeMap<Key, usize> = BTreeMap::new();
    for t in moves.unwrap_or_default() {
        let k = key(&t);
        if pos.contains_key(&k) {
            return Err(Error::InvalidAutomaton(format!(
                "duplicate transition {k:?}"
            )));
        }
        pos.insert(k.clone(), out.len());
        out.push((k, weight(&t)));
    }
    for t in weights {
        let k = key(&t);
        let w = weight(&t).ok_or_else(|| Error::Parse(format!("weight entry {k:?} lacks `w`")))?;
        match pos.get(&k) {
            Some(&i) if out[i].1.is_some() => {
                return Err(Error::InvalidAutomaton(format!(
                    "transition {k:?} weighted twice"
                )))
            }
            Some(&i) => out[i].1 = Some(w),
            None if listed => {
                return Err(Error::InvalidAutomaton(format!(
                    "weight given for non-transition {k:?}"
                )))
            }
            None => {
                pos.insert(k.clone(), out.len());
                out.push((k, Some(w)));
            }
        }
    }
    Ok(out)
}

struct RawAutomaton {
    alpha: Arc<OpAlphabet>,
    semiring: Option<Semiring>,
    states: Vec<String>,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
    push: Vec<((State, Sym, State), Option<Value>)>,
    shift: Vec<((State, Sym, State), Option<Value>)>,
    pop: Vec<((State, State, State), Option<Value>)>,
}

fn raw_automaton(
    v: &Value,
    base: Option<&Path>,
    inherited: Option<&Arc<OpAlphabet>>,
) -> Result<RawAutomaton> {
    let f: AutomatonFile = from_value(v, "automaton")?;
    let alpha = opm_field(f.opm.as_ref(), base, inherited)?;
    let semiring = f.semiring.as_deref().map(str::parse).transpose()?;
    let weights = f.weights.unwrap_or_default();
    let read_key = |t: &ReadFile| (t.from.clone(), t.sym.clone(), t.to.clone());
    let pop_key = |t: &PopFile| (t.from.clone(), t.stack.clone(), t.to.clone());
    let push = merge(f.push, weights.push, read_key, |t| t.w.clone())?;
    let shift = merge(f.shift, weights.shift, read_key, |t| t.w.clone())?;
    let pop = merge(f.pop, weights.pop, pop_key, |t| t.w.clone())?;

    let mut states = States::new(f.states)?;
    let initial = f
        .initial
        .iter()
        .map(|q| states.get(q))
        .collect::<Result<_>>()?;
    let finals = f
        .finals
        .iter()
        .map(|q| states.get(q))
        .collect::<Result<_>>()?;
    let read = |list: Vec<(Key, Option<Value>)>, states: &mut States| {
        list.into_iter()
            .map(|((p, a, q), w)| Ok(((states.get(&p)?, alpha.sym(&a)?, states.get(&q)?), w)))
            .collect::<Result<Vec<_>>>()
    };
    let push = read(push, &mut states)?;
    let shift = read(shift, &mut states)?;
    let pop = pop
        .into_iter()
        .map(|((p, s, q), w)| Ok(((states.get(&p)?, states.get(&s)?, states.get(&q)?), w)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RawAutomaton {
        alpha,
        semiring,
        states: states.names,
        initial,
        finals,
        push,
        shift,
        pop,
    })
}

impl RawAutomaton {
    fn opa(&self) -> Result<Opa> {
        Opa::new(
            self.alpha.clone(),
            self.states.clone(),
            self.initial.clone(),
            self.finals.clone(),
            self.push.iter().map(|(t, _)| *t).collect(),
            self.shift.iter().map(|(t, _)| *t).collect(),
            self.pop.iter().map(|(t, _)| *t).collect(),
        )
    }

    fn weighted(self, override_sr: Option<&Semiring>) -> Result<WeightedOpa> {
        let sr = match (&self.semiring, override_sr) {
            (Some(s), Some(o)) if s != o => {
                return Err(Error::SemiringMismatch {
                    expected: o.id(),
                    found: s.id(),
                })
            }
            (Some(s), _) => s.clone(),
            (None, Some(o)) => o.clone(),
            (None, None) => return Err(Error::Parse("missing field `semiring`".into())),
        };
        fn weigh<K: Ord + Copy + std::fmt::Debug>(
            list: &[(K, Option<Value>)],
            sr: &Semiring,
        ) -> Result<BTreeMap<K, Weight>> {
            list.iter()
                .map(|(t, w)| {
                    let w = w.as_ref().ok_or_else(|| {
                        Error::InvalidAutomaton(format!("transition {t:?} has no weight"))
                    })?;
                    Ok((*t, weight_from_json(w, sr)?))
                })
                .collect()
        }
        let (push, shift, pop) = (
            weigh(&self.push, &sr)?,
            weigh(&self.shift, &sr)?,
            weigh(&self.pop, &sr)?,
        );
        WeightedOpa::new(self.opa()?, sr, push, shift, pop)
    }
}

pub fn opa_from_value(v: &Value, base: Option<&Path>) -> Result<Opa> {
    raw_automaton(v, base, None)?.opa()
}

/// A weighted automaton; `semiring` supplies or checks the `"semiring"` field.
pub fn wopa_from_value(
    v: &Value,
    base: Option<&Path>,
    semiring: Option<&Semiring>,
) -> Result<WeightedOpa> {
    raw_automaton(v, base, None)?.weighted(semiring)
}

pub fn load_opa(path: &Path) -> Result<Opa> {
    opa_from_value(&read_json(path)?, dir_of(path).as_deref())
}

pub fn load_wopa(path: &Path, semiring: Option<&Semiring>) -> Result<WeightedOpa> {
    wopa_from_value(&read_json(path)?, dir_of(path).as_deref(), semiring)
}

fn opa_fields(a: &Opa) -> serde_json::Map<String, Value> {
    let alpha = a.alphabet();
    let q = |s: State| a.state_name(s).to_string();
    let read = |set: &BTreeSet<(State, Sym, State)>| -> Vec<Value> {
        set.iter()
            .map(|&(p, s, r)| json!({"from": q(p), "sym": alpha.name(s), "to": q(r)}))
            .collect()
    };
    let mut m = serde_json::Map::new();
    m.insert("opm".into(), opm_to_value(alpha));
    m.insert("states".into(), json!(a.state_names()));
    m.insert(
        "initial".into(),
        json!(a.initial().iter().map(|&s| q(s)).collect::<Vec<_>>()),
    );
    m.insert(
        "final".into(),
        json!(a.finals().iter().map(|&s| q(s)).collect::<Vec<_>>()),
    );
    m.insert("push".into(), json!(read(a.push())));
    m.insert("shift".into(), json!(read(a.shift())));
    let pop: Vec<Value> = a
        .pop()
        .iter()
        .map(|&(p, s, r)| json!({"from": q(p), "stack": q(s), "to": q(r)}))
        .collect();
    m.insert("pop".into(), json!(pop));
    m
}

pub fn opa_to_value(a: &Opa) -> Value {
    Value::Object(opa_fields(a))
}

pub fn wopa_to_value(a: &WeightedOpa) -> Value {
    let base = a.base();
    let alpha = a.alphabet();
    let q = |s: State| base.state_name(s).to_string();
    let read = |m: &BTreeMap<(State, Sym, State), Weight>| -> Vec<Value> {
        m.iter()
            .map(|(&(p, s, r), w)| {
                json!({"from": q(p), "sym": alpha.name(s), "to": q(r), "w": weight_to_json(w)})
            })
            .collect()
    };
    let pop: Vec<Value> = a
        .wt_pop()
        .iter()
        .map(|(&(p, s, r), w)| json!({"from": q(p), "stack": q(s), "to": q(r), "w": weight_to_json(w)}))
        .collect();
    let mut m = opa_fields(base);
    m.insert("semiring".into(), json!(a.semiring().id()));
    m.insert(
        "weights".into(),
        json!({"push": read(a.wt_push()), "shift": read(a.wt_shift()), "pop": pop}),
    );
    Value::Object(m)
}

// ---------------------------------------------------------------- nested words

#[derive(Deserialize)]
struct PartitionFile {
    #[serde(default)]
    call: Vec<String>,
    #[serde(default)]
    int: Vec<String>,
    #[serde(default)]
    ret: Vec<String>,
}

#[derive(Deserialize)]
struct NwaReadFile {
    from: String,
    sym: String,
    to: String,
    w: Value,
}

#[derive(Deserialize)]
struct NwaRetFile {
    from: String,
    stack: String,
    sym: String,
    to: String,
    w: Value,
}

#[derive(Deserialize)]
struct NwaFile {
    semiring: Option<String>,
    partition: PartitionFile,
    #[serde(default)]
    states: Vec<String>,
    #[serde(default)]
    initial: Vec<String>,
    #[serde(default, rename = "final")]
    finals: Vec<String>,
    #[serde(default)]
    call: Vec<NwaReadFile>,
    #[serde(default)]
    int: Vec<NwaReadFile>,
    #[serde(default)]
    ret: Vec<NwaRetFile>,
}

pub fn nwa_from_value(v: &Value, semiring: Option<&Semiring>) -> Result<WeightedNwa> {
    let f: NwaFile = from_value(v, "nested word automaton")?;
    let sr = match (
        f.semiring
            .as_deref()
            .map(str::parse::<Semiring>)
            .transpose()?,
        semiring,
    ) {
        (Some(s), Some(o)) if &s != o => {
            return Err(Error::SemiringMismatch {
                expected: o.id(),
                found: s.id(),
            })
        }
        (Some(s), _) => s,
        (None, Some(o)) => o.clone(),
        (None, None) => return Err(Error::Parse("missing field `semiring`".into())),
    };
    fn strs(v: &[String]) -> Vec<&str> {
        v.iter().map(String::as_str).collect()
    }
    let p = &f.partition;
    let mut b = WeightedNwaBuilder::new(&strs(&p.call), &strs(&p.int), &strs(&p.ret), sr.clone())?;
    let known: BTreeSet<&str> = f.states.iter().map(String::as_str).collect();
    let check = |q: &str| {
        if known.is_empty() || known.contains(q) {
            Ok(())
        } else {
            Err(Error::UnknownState(q.to_string()))
        }
    };
    for q in &f.states {
        b.state(q);
    }
    for q in &f.initial {
        check(q)?;
        b.initial(q);
    }
    for q in &f.finals {
        check(q)?;
        b.final_state(q);
    }
    for t in &f.call {
        check(&t.from)?;
        check(&t.to)?;
        b.call(&t.from, &t.sym, &t.to, weight_from_json(&t.w, &sr)?)?;
    }
    for t in &f.int {
        check(&t.from)?;
        check(&t.to)?;
        b.int(&t.from, &t.sym, &t.to, weight_from_json(&t.w, &sr)?)?;
    }
    for t in &f.ret {
        check(&t.from)?;
        check(&t.stack)?;
        check(&t.to)?;
        b.ret(
            &t.from,
            &t.stack,
            &t.sym,
            &t.to,
            weight_from_json(&t.w, &sr)?,
        )?;
    }
    Ok(b.build())
}

pub fn load_nwa(path: &Path, semiring: Option<&Semiring>) -> Result<WeightedNwa> {
    nwa_from_value(&read_json(path)?, semiring)
}

pub fn nwa_to_value(n: &WeightedNwa) -> Value {
    let alpha = n.alphabet();
    let q = |s: State| n.state_names()[s.0 as usize].clone();
    let of_kind = |k: NwaKind| -> Vec<&str> {
        alpha
            .symbols()
            .filter(|&s| n.kind(s) == k)
            .map(|s| alpha.name(s))
            .collect()
    };
    let read = |m: &BTreeMap<(State, Sym, State), Weight>| -> Vec<Value> {
        m.iter()
            .map(|(&(p, s, r), w)| {
                json!({"from": q(p), "sym": alpha.name(s), "to": q(r), "w": weight_to_json(w)})
            })
            .collect()
    };
    let ret: Vec<Value> = n
        .rets()
        .iter()
        .map(|(&(p, s, a, r), w)| {
            json!({"from": q(p), "stack": q(s), "sym": alpha.name(a), "to": q(r), "w": weight_to_json(w)})
        })
        .collect();
    json!({
        "semiring": n.semiring().id(),
        "partition": {
            "call": of_kind(NwaKind::Call),
            "int": of_kind(NwaKind::Int),
            "ret": of_kind(NwaKind::Ret),
        },
        "states": n.state_names(),
        "initial": n.initial().iter().map(|&s| q(s)).collect::<Vec<_>>(),
        "final": n.finals().iter().map(|&s| q(s)).collect::<Vec<_>>(),
        "call": read(n.calls()),
        "int": read(n.ints()),
        "ret": ret,
    })
}

// ---------------------------------------------------------------- step functions

#[derive(Deserialize)]
struct PartFile {
    automaton: Value,
    w: Value,
}

#[derive(Deserialize)]
struct StepFile {
    semiring: Option<String>,
    opm: Value,
    parts: Vec<PartFile>,
}

pub fn step_from_value(
    v: &Value,
    base: Option<&Path>,
    semiring: Option<&Semiring>,
) -> Result<StepFunction> {
    let f: StepFile = from_value(v, "step function")?;
    let sr = pick_semiring(f.semiring.as_deref(), semiring)?;
    let alpha = Arc::new(opm_from_value(&resolve(&f.opm, base)?.0)?);
    let parts = f
        .parts
        .iter()
        .map(|p| {
            let (av, dir) = resolve(&p.automaton, base)?;
            let a = raw_automaton(&av, dir.as_deref(), Some(&alpha))?.opa()?;
            Ok((a, weight_from_json(&p.w, &sr)?))
        })
        .collect::<Result<Vec<_>>>()?;
    StepFunction::new(alpha, sr, parts)
}

pub fn load_step(path: &Path, semiring: Option<&Semiring>) -> Result<StepFunction> {
    step_from_value(&read_json(path)?, dir_of(path).as_deref(), semiring)
}

fn pick_semiring(declared: Option<&str>, given: Option<&Semiring>) -> Result<Semiring> {
    match (declared.map(str::parse::<Semiring>).transpose()?, given) {
        (Some(s), Some(o)) if &s != o => Err(Error::SemiringMismatch {
            expected: o.id(),
            found: s.id(),
        }),
        (Some(s), _) => Ok(s),
        (None, Some(o)) => Ok(o.clone()),
        (None, None) => Err(Error::Parse("no semiring given".into())),
    }
}

// ---------------------------------------------------------------- formulas

/// A formula with the semiring and OP alphabet it is read over, when known.
#[derive(Clone, Debug)]
pub struct FormulaFile {
    pub formula: Formula,
    pub semiring: Semiring,
    pub opm: Option<OpAlphabet>,
}

pub fn formula_file_from_value(
    v: &Value,
    base: Option<&Path>,
    semiring: Option<&Semiring>,
) -> Result<FormulaFile> {
    let wrapped = v.get("formula").is_some() && v.get("op").is_none();
    if !wrapped {
        let sr = pick_semiring(None, semiring)?;
        return Ok(FormulaFile {
            formula: formula_from_json(v, &sr)?,
            semiring: sr,
            opm: None,
        });
    }
    let sr = pick_semiring(v.get("semiring").and_then(Value::as_str), semiring)?;
    let opm = v
        .get("opm")
        .map(|o| opm_from_value(&resolve(o, base)?.0))
        .transpose()?;
    Ok(FormulaFile {
        formula: formula_from_json(&v["formula"], &sr)?,
        semiring: sr,
        opm,
    })
}

pub fn load_formula(path: &Path, semiring: Option<&Semiring>) -> Result<FormulaFile> {
    formula_file_from_value(&read_json(path)?, dir_of(path).as_deref(), semiring)
}

pub fn formula_file_to_value(f: &Formula, semiring: &Semiring, opm: Option<&OpAlphabet>) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("semiring".into(), json!(semiring.id()));
    if let Some(a) = opm {
        m.insert("opm".into(), opm_to_value(a));
    }
    m.insert("formula".into(), formula_to_json(f));
    Value::Object(m)
}

// ---------------------------------------------------------------- Nivat bundles

pub fn nivat_to_value(d: &NivatDecomposition) -> Value {
    json!({
        "map": d.map.to_names(),
        "one_state": wopa_to_value(&d.one_state),
        "language": opa_to_value(&d.language),
        "target": opm_to_value(d.target()),
    })
}

#[derive(Deserialize)]
struct NivatFile {
    map: BTreeMap<String, String>,
    one_state: Value,
    language: Value,
    target: Value,
}

pub fn nivat_from_value(v: &Value, base: Option<&Path>) -> Result<NivatDecomposition> {
    let f: NivatFile = from_value(v, "Nivat bundle")?;
    let (bv, bdir) = resolve(&f.one_state, base)?;
    let one_state = wopa_from_value(&bv, bdir.as_deref(), None)?;
    let (lv, ldir) = resolve(&f.language, base)?;
    let language = opa_from_value(&lv, ldir.as_deref())?;
    let target = Arc::new(opm_from_value(&resolve(&f.target, base)?.0)?);
    if one_state.alphabet() != language.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if one_state.base().num_states() != 1 || !one_state.is_restricted() {
        return Err(Error::InvalidAutomaton(
            "`one_state` must be a one-state restricted automaton".into(),
        ));
    }
    let map = SymbolMap::new(language.alphabet().clone(), target, &f.map)?;
    if !map.is_opm_preserving() {
        return Err(Error::NotOpmPreserving);
    }
    Ok(NivatDecomposition {
        map,
        one_state,
        language,
    })
}

pub fn load_nivat(path: &Path) -> Result<NivatDecomposition> {
    nivat_from_value(&read_json(path)?, dir_of(path).as_deref())
}
