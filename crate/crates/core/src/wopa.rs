//! Weighted operator precedence automata and their behaviors.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alphabet::{OpAlphabet, Word};
use crate::error::{Error, Result};
use crate::opa::{summarize, Algebra, Move, Opa, OpaBuilder, PopTriple, Run, State, Triple};
use crate::semiring::{Semiring, Weight};

/// A wOPA: an OPA plus a weight for every transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOpa {
    base: Opa,
    semiring: Semiring,
    wt_push: BTreeMap<Triple, Weight>,
    wt_shift: BTreeMap<Triple, Weight>,
    wt_pop: BTreeMap<PopTriple, Weight>,
}

impl WeightedOpa {
    /// Attaches weights to `base`; the weight maps must cover exactly its transitions.
    pub fn new(
        base: Opa,
        semiring: Semiring,
        wt_push: BTreeMap<Triple, Weight>,
        wt_shift: BTreeMap<Triple, Weight>,
        wt_pop: BTreeMap<PopTriple, Weight>,
    ) -> Result<WeightedOpa> {
        let same_keys = wt_push.keys().eq(base.push().iter())
            && wt_shift.keys().eq(base.shift().iter())
            && wt_pop.keys().eq(base.pop().iter());
        if !same_keys {
            return Err(Error::InvalidAutomaton(
                "weight maps must be defined on exactly the transitions".into(),
            ));
        }
        for w in wt_push
            .values()
            .chain(wt_shift.values())
            .chain(wt_pop.values())
        {
            semiring.check(w)?;
        }
        Ok(WeightedOpa {
            base,
            semiring,
            wt_push,
            wt_shift,
            wt_pop,
        })
    }

    /// Builds the automaton whose transitions are the keys of the weight maps.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        alpha: Arc<OpAlphabet>,
        semiring: Semiring,
        states: Vec<String>,
        initial: BTreeSet<State>,
        finals: BTreeSet<State>,
        wt_push: BTreeMap<Triple, Weight>,
        wt_shift: BTreeMap<Triple, Weight>,
        wt_pop: BTreeMap<PopTriple, Weight>,
    ) -> Result<WeightedOpa> {
        let base = Opa::new(
            alpha,
            states,
            initial,
            finals,
            wt_push.keys().copied().collect(),
            wt_shift.keys().copied().collect(),
            wt_pop.keys().copied().collect(),
        )?;
        WeightedOpa::new(base, semiring, wt_push, wt_shift, wt_pop)
    }

    /// The automaton without states; its behavior is constantly zero.
    pub fn empty(alpha: Arc<OpAlphabet>, semiring: Semiring) -> WeightedOpa {
        let base = OpaBuilder::new(alpha).build().expect("empty automaton");
        WeightedOpa::new(
            base,
            semiring,
            BTreeMap::new(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .expect("empty automaton")
    }

    /// All weights one (`lift(A)`), so the behavior counts accepting runs.
    pub fn lift(base: &Opa, semiring: Semiring) -> WeightedOpa {
        let one = semiring.one();
        let push = base.push().iter().map(|&t| (t, one.clone())).collect();
        let shift = base.shift().iter().map(|&t| (t, one.clone())).collect();
        let pop = base.pop().iter().map(|&t| (t, one.clone())).collect();
        WeightedOpa::new(base.clone(), semiring, push, shift, pop)
            .expect("weights cover transitions")
    }

    /// [`WeightedOpa::lift`] over the boolean semiring.
    pub fn lift_boolean(base: &Opa) -> WeightedOpa {
        WeightedOpa::lift(base, Semiring::Boolean)
    }

    pub fn base(&self) -> &Opa {
        &self.base
    }

    pub fn alphabet(&self) -> &Arc<OpAlphabet> {
        self.base.alphabet()
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn wt_push(&self) -> &BTreeMap<Triple, Weight> {
        &self.wt_push
    }

    pub fn wt_shift(&self) -> &BTreeMap<Triple, Weight> {
        &self.wt_shift
    }

    pub fn wt_pop(&self) -> &BTreeMap<PopTriple, Weight> {
        &self.wt_pop
    }

    pub fn weight_of(&self, m: &Move) -> &Weight {
        match *m {
            Move::Push { from, sym, to } => &self.wt_push[&(from, sym, to)],
            Move::Shift { from, sym, to } => &self.wt_shift[&(from, sym, to)],
            Move::Pop { from, stack, to } => &self.wt_pop[&(from, stack, to)],
        }
    }

    /// `wt_pop ≡ 1`.
    pub fn is_restricted(&self) -> bool {
        self.wt_pop.values().all(|w| self.semiring.is_one(w))
    }

    /// Ordered product of the weights along `run`.
    pub fn run_weight(&self, run: &Run) -> Weight {
        run.iter().fold(self.semiring.one(), |acc, m| {
            self.semiring.mul_unchecked(&acc, self.weight_of(m))
        })
    }

    /// `⟦A⟧(w)`: the sum over accepting runs of their ordered weight products;
    /// zero on incompatible words.
    pub fn behavior(&self, w: &Word) -> Weight {
        if !self.alphabet().is_compatible(w) {
            return self.semiring.zero();
        }
        let sr = &self.semiring;
        let starts = self.base.initial().iter().map(|&q| (q, sr.one()));
        summarize(&self.base, w, &Weights(self), starts)
            .iter()
            .fold(sr.zero(), |acc, (_, v)| sr.add_unchecked(&acc, v))
    }

    /// Behavior requested in `expected`, which must be this automaton's semiring.
    pub fn behavior_in(&self, expected: &Semiring, w: &Word) -> Result<Weight> {
        if *expected != self.semiring {
            return Err(Error::SemiringMismatch {
                expected: expected.id(),
                found: self.semiring.id(),
            });
        }
        Ok(self.behavior(w))
    }

    /// The behavior computed by explicit run enumeration.
    pub fn behavior_by_runs(&self, w: &Word) -> Result<Weight> {
        let runs = self.base.enumerate_runs(w)?;
        Ok(runs.iter().fold(self.semiring.zero(), |acc, r| {
            self.semiring.add_unchecked(&acc, &self.run_weight(r))
        }))
    }

    /// Number of accepting runs on `w`, zero if incompatible.
    pub fn count_runs(&self, w: &Word) -> u128 {
        if !self.alphabet().is_compatible(w) {
            return 0;
        }
        let starts = self.base.initial().iter().map(|&q| (q, 1u128));
        summarize(&self.base, w, &Count, starts)
            .iter()
            .map(|(_, v)| v)
            .sum()
    }

    /// Same automaton with every weight replaced by `f(weight)` in `semiring`.
    pub fn map_weights(
        &self,
        semiring: Semiring,
        f: impl Fn(&Weight) -> Weight,
    ) -> Result<WeightedOpa> {
        WeightedOpa::new(
            self.base.clone(),
            semiring,
            self.wt_push.iter().map(|(t, w)| (*t, f(w))).collect(),
            self.wt_shift.iter().map(|(t, w)| (*t, f(w))).collect(),
            self.wt_pop.iter().map(|(t, w)| (*t, f(w))).collect(),
        )
    }
}

/// Semiring arithmetic with this automaton's move weights.
struct Weights<'a>(&'a WeightedOpa);

impl Algebra for Weights<'_> {
    type V = Weight;
    fn add(&self, x: &Weight, y: &Weight) -> Weight {
        self.0.semiring.add_unchecked(x, y)
    }
    fn mul(&self, x: &Weight, y: &Weight) -> Weight {
        self.0.semiring.mul_unchecked(x, y)
    }
    fn is_zero(&self, x: &Weight) -> bool {
        self.0.semiring.is_zero(x)
    }
    fn weight(&self, m: &Move) -> Weight {
        self.0.weight_of(m).clone()
    }
}

/// Run counting: every move counts once.
struct Count;

impl Algebra for Count {
    type V = u128;
    fn add(&self, x: &u128, y: &u128) -> u128 {
        x + y
    }
    fn mul(&self, x: &u128, y: &u128) -> u128 {
        x * y
    }
    fn is_zero(&self, x: &u128) -> bool {
        *x == 0
    }
    fn weight(&self, _: &Move) -> u128 {
        1
    }
}

/// Incremental construction of a wOPA by state and symbol names.
#[derive(Clone, Debug)]
pub struct WeightedOpaBuilder {
    inner: OpaBuilder,
    alpha: Arc<OpAlphabet>,
    semiring: Semiring,
    wt_push: BTreeMap<Triple, Weight>,
    wt_shift: BTreeMap<Triple, Weight>,
    wt_pop: BTreeMap<PopTriple, Weight>,
}

impl WeightedOpaBuilder {
    pub fn new(alpha: Arc<OpAlphabet>, semiring: Semiring) -> Self {
        WeightedOpaBuilder {
            inner: OpaBuilder::new(alpha.clone()),
            alpha,
            semiring,
            wt_push: BTreeMap::new(),
            wt_shift: BTreeMap::new(),
            wt_pop: BTreeMap::new(),
        }
    }

    pub fn state(&mut self, q: &str) -> State {
        self.inner.state(q)
    }

    pub fn initial(&mut self, q: &str) -> &mut Self {
        self.inner.initial(q);
        self
    }

    pub fn final_state(&mut self, q: &str) -> &mut Self {
        self.inner.final_state(q);
        self
    }

    fn insert<K: Ord + Copy>(map: &mut BTreeMap<K, Weight>, k: K, w: Weight) -> Result<()> {
        match map.get(&k) {
            Some(old) if *old != w => Err(Error::InvalidAutomaton(
                "transition listed twice with different weights".into(),
            )),
            _ => {
                map.insert(k, w);
                Ok(())
            }
        }
    }

    pub fn push(&mut self, q: &str, a: &str, r: &str, w: Weight) -> Result<&mut Self> {
        self.semiring.check(&w)?;
        self.inner.push(q, a, r)?;
        let t = (self.inner.state(q), self.alpha.sym(a)?, self.inner.state(r));
        Self::insert(&mut self.wt_push, t, w)?;
        Ok(self)
    }

    pub fn shift(&mut self, q: &str, a: &str, r: &str, w: Weight) -> Result<&mut Self> {
        self.semiring.check(&w)?;
        self.inner.shift(q, a, r)?;
        let t = (self.inner.state(q), self.alpha.sym(a)?, self.inner.state(r));
        Self::insert(&mut self.wt_shift, t, w)?;
        Ok(self)
    }

    pub fn pop(&mut self, q: &str, p: &str, r: &str, w: Weight) -> Result<&mut Self> {
        self.semiring.check(&w)?;
        self.inner.pop(q, p, r);
        let t = (
            self.inner.state(q),
            self.inner.state(p),
            self.inner.state(r),
        );
        Self::insert(&mut self.wt_pop, t, w)?;
        Ok(self)
    }

    pub fn build(self) -> Result<WeightedOpa> {
        WeightedOpa::new(
            self.inner.build()?,
            self.semiring,
            self.wt_push,
            self.wt_shift,
            self.wt_pop,
        )
    }
}
