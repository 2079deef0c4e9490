use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::alphabet::{OpAlphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::fixtures::vpl_opm;
use crate::opa::State;
use crate::semiring::{Semiring, Weight};
use crate::wopa::WeightedOpa;

/// Role of a symbol in a visibly pushdown alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NwaKind {
    Call,
    Int,
    Ret,
}

/// A weighted nested word automaton over `Σ_call ⊔ Σ_int ⊔ Σ_ret`.
///
/// Calls push the current state; a return `(q, p, a, r)` pops `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedNwa {
    alpha: Arc<OpAlphabet>,
    kinds: Vec<NwaKind>,
    semiring: Semiring,
    states: Vec<String>,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
    call: BTreeMap<(State, Sym, State), Weight>,
    int: BTreeMap<(State, Sym, State), Weight>,
    ret: BTreeMap<(State, State, Sym, State), Weight>,
}

impl WeightedNwa {
    /// The alphabet with the visibly pushdown matrix.
    pub fn alphabet(&self) -> &Arc<OpAlphabet> {
        &self.alpha
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn kind(&self, a: Sym) -> NwaKind {
        self.kinds[a.index()]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn initial(&self) -> &BTreeSet<State> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn calls(&self) -> &BTreeMap<(State, Sym, State), Weight> {
        &self.call
    }

    pub fn ints(&self) -> &BTreeMap<(State, Sym, State), Weight> {
        &self.int
    }

    pub fn rets(&self) -> &BTreeMap<(State, State, Sym, State), Weight> {
        &self.ret
    }

    /// Every return is matched by an earlier call and no call stays pending.
    pub fn is_well_matched(&self, w: &Word) -> bool {
        let mut depth = 0usize;
        for &a in w.symbols() {
            match self.kind(a) {
                NwaKind::Call => depth += 1,
                NwaKind::Int => {}
                NwaKind::Ret => match depth.checked_sub(1) {
                    Some(d) => depth = d,
                    None => return false,
                },
            }
        }
        depth == 0
    }

    /// Sum over accepting runs of the ordered products of transition weights.
    pub fn behavior(&self, w: &Word) -> Result<Weight> {
        if !self.is_well_matched(w) {
            return Err(Error::UnsupportedWord(format!(
                "`{}` is not well-matched",
                self.alpha.render(w)
            )));
        }
        let sr = &self.semiring;
        type Targets<'a> = Vec<(State, &'a Weight)>;
        let mut call_out: HashMap<(State, Sym), Targets> = HashMap::new();
        for (&(q, a, r), wt) in self.call.iter().chain(&self.int) {
            call_out.entry((q, a)).or_default().push((r, wt));
        }
        let mut ret_out: HashMap<(State, State, Sym), Targets> = HashMap::new();
        for (&(q, p, a, r), wt) in &self.ret {
            ret_out.entry((q, p, a)).or_default().push((r, wt));
        }
        let mut layer: BTreeMap<(Vec<State>, State), Weight> = self
            .initial
            .iter()
            .map(|&q| ((Vec::new(), q), sr.one()))
            .collect();
        for &a in w.symbols() {
            let mut next: BTreeMap<(Vec<State>, State), Weight> = BTreeMap::new();
            let mut add = |key: (Vec<State>, State), v: Weight| {
                if sr.is_zero(&v) {
                    return;
                }
                let merged = match next.remove(&key) {
                    Some(old) => sr.add_unchecked(&old, &v),
                    None => v,
                };
                next.insert(key, merged);
            };
            for ((stack, q), v) in &layer {
                match self.kind(a) {
                    NwaKind::Call | NwaKind::Int => {
                        for &(r, wt) in call_out.get(&(*q, a)).into_iter().flatten() {
                            let mut s = stack.clone();
                            if self.kind(a) == NwaKind::Call {
                                s.push(*q);
                            }
                            add((s, r), sr.mul_unchecked(v, wt));
                        }
                    }
                    NwaKind::Ret => {
                        let Some((&p, rest)) = stack.split_last() else {
                            continue;
                        };
                        for &(r, wt) in ret_out.get(&(*q, p, a)).into_iter().flatten() {
                            add((rest.to_vec(), r), sr.mul_unchecked(v, wt));
                        }
                    }
                }
            }
            layer = next;
        }
        Ok(layer
            .iter()
            .filter(|((stack, q), _)| stack.is_empty() && self.finals.contains(q))
            .fold(sr.zero(), |acc, (_, v)| sr.add_unchecked(&acc, v)))
    }
}

/// Incremental construction of a [`WeightedNwa`].
#[derive(Clone, Debug)]
pub struct WeightedNwaBuilder {
    nwa: WeightedNwa,
    index: HashMap<String, State>,
}

impl WeightedNwaBuilder {
    pub fn new(calls: &[&str], ints: &[&str], rets: &[&str], semiring: Semiring) -> Result<Self> {
        let all: Vec<&str> = calls.iter().chain(ints).chain(rets).copied().collect();
        // validates names and disjointness before the matrix is assembled
        OpAlphabet::from_table(all.iter().copied(), [])?;
        let alpha = vpl_opm(calls, ints, rets);
        let kinds = alpha
            .names()
            .iter()
            .map(|s| {
                if calls.contains(&s.as_str()) {
                    NwaKind::Call
                } else if ints.contains(&s.as_str()) {
                    NwaKind::Int
                } else {
                    NwaKind::Ret
                }
            })
            .collect();
        Ok(WeightedNwaBuilder {
            nwa: WeightedNwa {
                alpha: Arc::new(alpha),
                kinds,
                semiring,
                states: Vec::new(),
                initial: BTreeSet::new(),
                finals: BTreeSet::new(),
                call: BTreeMap::new(),
                int: BTreeMap::new(),
                ret: BTreeMap::new(),
            },
            index: HashMap::new(),
        })
    }

    pub fn state(&mut self, name: &str) -> State {
        if let Some(&q) = self.index.get(name) {
            return q;
        }
        let q = State(self.nwa.states.len() as u32);
        self.nwa.states.push(name.to_string());
        self.index.insert(name.to_string(), q);
        q
    }

    pub fn initial(&mut self, q: &str) -> &mut Self {
        let q = self.state(q);
        self.nwa.initial.insert(q);
        self
    }

    pub fn final_state(&mut self, q: &str) -> &mut Self {
        let q = self.state(q);
        self.nwa.finals.insert(q);
        self
    }

    fn symbol(&self, a: &str, kind: NwaKind) -> Result<Sym> {
        let s = self.nwa.alpha.sym(a)?;
        if self.nwa.kind(s) != kind {
            return Err(Error::InvalidAutomaton(format!(
                "`{a}` is not a {kind:?} symbol"
            )));
        }
        Ok(s)
    }

    fn checked(&self, w: Weight) -> Result<Weight> {
        self.nwa.semiring.check(&w)?;
        Ok(w)
    }

    pub fn call(&mut self, q: &str, a: &str, r: &str, w: Weight) -> Result<&mut Self> {
        let (a, w) = (self.symbol(a, NwaKind::Call)?, self.checked(w)?);
        let t = (self.state(q), a, self.state(r));
        self.nwa.call.insert(t, w);
        Ok(self)
    }

    pub fn int(&mut self, q: &str, a: &str, r: &str, w: Weight) -> Result<&mut Self> {
        let (a, w) = (self.symbol(a, NwaKind::Int)?, self.checked(w)?);
        let t = (self.state(q), a, self.state(r));
        self.nwa.int.insert(t, w);
        Ok(self)
    }

    pub fn ret(&mut self, q: &str, p: &str, a: &str, r: &str, w: Weight) -> Result<&mut Self> {
        let (a, w) = (self.symbol(a, NwaKind::Ret)?, self.checked(w)?);
        let t = (self.state(q), self.state(p), a, self.state(r));
        self.nwa.ret.insert(t, w);
        Ok(self)
    }

    pub fn build(self) -> WeightedNwa {
        self.nwa
    }
}

/// An equivalent restricted wOPA over the visibly pushdown matrix.
///
/// States are `Q ∪ Q×Q` (pairs written `q*r`). Calls become pushes,
/// internals a push into `(q, r)` followed by a pop to `r`, and returns a
/// shift into `(p, r)` followed by a pop to `r`; all pops weigh one.
pub fn from_nwa(n: &WeightedNwa) -> Result<WeightedOpa> {
    let k = n.states.len() as u32;
    let pair = |x: State, y: State| State(k + x.0 * k + y.0);
    let mut names = n.states.clone();
    for x in &n.states {
        for y in &n.states {
            names.push(format!("{x}*{y}"));
        }
    }
    let one = n.semiring.one();
    let mut push = BTreeMap::new();
    let mut shift = BTreeMap::new();
    let mut pop = BTreeMap::new();
    for (&(q, a, r), w) in &n.call {
        push.insert((q, a, r), w.clone());
    }
    for (&(q, a, r), w) in &n.int {
        push.insert((q, a, pair(q, r)), w.clone());
        pop.insert((pair(q, r), q, r), one.clone());
    }
    for (&(q, p, a, r), w) in &n.ret {
        shift.insert((q, a, pair(p, r)), w.clone());
        pop.insert((pair(p, r), p, r), one.clone());
    }
    WeightedOpa::from_parts(
        n.alpha.clone(),
        n.semiring.clone(),
        names,
        n.initial.clone(),
        n.finals.clone(),
        push,
        shift,
        pop,
    )
}
