use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alphabet::SymbolMap;
use crate::error::{Error, Result};
use crate::opa::{Opa, State};
use crate::semiring::{Semiring, Weight};
use crate::wopa::WeightedOpa;

fn same_setting(a: &WeightedOpa, b: &WeightedOpa) -> Result<()> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if a.semiring() != b.semiring() {
        return Err(Error::SemiringMismatch {
            expected: a.semiring().id(),
            found: b.semiring().id(),
        });
    }
    Ok(())
}

/// Disjoint union; `⟦sum(A, B)⟧ = ⟦A⟧ + ⟦B⟧`. States are renamed `A.q` and `B.q`.
pub fn sum(a: &WeightedOpa, b: &WeightedOpa) -> Result<WeightedOpa> {
    same_setting(a, b)?;
    disjoint_union(&[("A", a), ("B", b)])
}

/// Disjoint union of any number of automata, states renamed `1.q`, `2.q`, ….
///
/// An empty list yields the stateless automaton over `alpha` and `semiring`.
pub fn sum_all(
    alpha: &Arc<crate::OpAlphabet>,
    semiring: &Semiring,
    parts: &[WeightedOpa],
) -> Result<WeightedOpa> {
    if parts.is_empty() {
        return Ok(WeightedOpa::empty(alpha.clone(), semiring.clone()));
    }
    for p in parts {
        if p.alphabet() != alpha {
            return Err(Error::AlphabetMismatch);
        }
        same_setting(&parts[0], p)?;
    }
    let tags: Vec<String> = (1..=parts.len()).map(|i| i.to_string()).collect();
    let named: Vec<(&str, &WeightedOpa)> = tags.iter().map(String::as_str).zip(parts).collect();
    disjoint_union(&named)
}

fn disjoint_union(parts: &[(&str, &WeightedOpa)]) -> Result<WeightedOpa> {
    let (_, first) = parts[0];
    let mut names = Vec::new();
    let mut initial = BTreeSet::new();
    let mut finals = BTreeSet::new();
    let mut push = BTreeMap::new();
    let mut shift = BTreeMap::new();
    let mut pop = BTreeMap::new();
    for (tag, a) in parts {
        let off = names.len() as u32;
        let s = |q: State| State(q.0 + off);
        names.extend(a.base().state_names().iter().map(|q| format!("{tag}.{q}")));
        initial.extend(a.base().initial().iter().map(|&q| s(q)));
        finals.extend(a.base().finals().iter().map(|&q| s(q)));
        push.extend(
            a.wt_push()
                .iter()
                .map(|(&(q, x, r), w)| ((s(q), x, s(r)), w.clone())),
        );
        shift.extend(
            a.wt_shift()
                .iter()
                .map(|(&(q, x, r), w)| ((s(q), x, s(r)), w.clone())),
        );
        pop.extend(
            a.wt_pop()
                .iter()
                .map(|(&(q, p, r), w)| ((s(q), s(p), s(r)), w.clone())),
        );
    }
    WeightedOpa::from_parts(
        first.alphabet().clone(),
        first.semiring().clone(),
        names,
        initial,
        finals,
        push,
        shift,
        pop,
    )
}

/// Synchronous product with weights combined by `combine`.
fn product_with(
    a: &WeightedOpa,
    b: &WeightedOpa,
    combine: impl Fn(&Weight, &Weight) -> Weight,
) -> Result<WeightedOpa> {
    let m = b.base().num_states() as u32;
    let pair = |x: State, y: State| State(x.0 * m + y.0);
    let mut names = Vec::new();
    for x in a.base().states() {
        for y in b.base().states() {
            names.push(format!(
                "{}*{}",
                a.base().state_name(x),
                b.base().state_name(y)
            ));
        }
    }
    let cross = |x: &BTreeSet<State>, y: &BTreeSet<State>| -> BTreeSet<State> {
        x.iter()
            .flat_map(|&p| y.iter().map(move |&q| pair(p, q)))
            .collect()
    };
    let mut push = BTreeMap::new();
    for (&(q, s, r), w) in a.wt_push() {
        for (&(q2, s2, r2), w2) in b.wt_push() {
            if s == s2 {
                push.insert((pair(q, q2), s, pair(r, r2)), combine(w, w2));
            }
        }
    }
    let mut shift = BTreeMap::new();
    for (&(q, s, r), w) in a.wt_shift() {
        for (&(q2, s2, r2), w2) in b.wt_shift() {
            if s == s2 {
                shift.insert((pair(q, q2), s, pair(r, r2)), combine(w, w2));
            }
        }
    }
    let mut pop = BTreeMap::new();
    for (&(q, p, r), w) in a.wt_pop() {
        for (&(q2, p2, r2), w2) in b.wt_pop() {
            pop.insert((pair(q, q2), pair(p, p2), pair(r, r2)), combine(w, w2));
        }
    }
    WeightedOpa::from_parts(
        a.alphabet().clone(),
        a.semiring().clone(),
        names,
        cross(a.base().initial(), b.base().initial()),
        cross(a.base().finals(), b.base().finals()),
        push,
        shift,
        pop,
    )
}

/// `⟦A⟧ ∩ L(B)`: the weights of `A` restricted to words accepted by the
/// deterministic OPA `B`.
pub fn intersect_with_opl(a: &WeightedOpa, b: &Opa) -> Result<WeightedOpa> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !b.is_deterministic() {
        return Err(Error::DeterminismRequired(
            "the language automaton of an intersection".into(),
        ));
    }
    let lifted = WeightedOpa::lift(b, a.semiring().clone());
    product_with(a, &lifted, |x, _| x.clone())
}

/// Pointwise product `⟦A⟧ ⊙ ⟦B⟧`; requires a commutative semiring.
pub fn hadamard(a: &WeightedOpa, b: &WeightedOpa) -> Result<WeightedOpa> {
    same_setting(a, b)?;
    let sr = a.semiring().clone();
    if !sr.is_commutative() {
        return Err(Error::CommutativityRequired(sr.id()));
    }
    product_with(a, b, |x, y| sr.mul_unchecked(x, y))
}

/// `h(⟦A⟧)(v) = Σ_{h(w) = v} ⟦A⟧(w)` for an OPM-preserving `h`.
///
/// States are pairs `q*a` remembering the last symbol read; pops keep the
/// remembered symbol.
pub fn project(a: &WeightedOpa, h: &SymbolMap) -> Result<WeightedOpa> {
    if h.source() != a.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    if !h.is_opm_preserving() {
        return Err(Error::NotOpmPreserving);
    }
    let sigma = a.alphabet();
    let k = sigma.len() as u32;
    let pair = |q: State, s: crate::Sym| State(q.0 * k + s.0);
    let mut names = Vec::new();
    for q in a.base().states() {
        for s in sigma.symbols() {
            names.push(format!("{}*{}", a.base().state_name(q), sigma.name(s)));
        }
    }
    let mut initial = BTreeSet::new();
    if let Some(a0) = sigma.symbols().next() {
        initial.extend(a.base().initial().iter().map(|&q| pair(q, a0)));
    }
    let finals: BTreeSet<State> = a
        .base()
        .finals()
        .iter()
        .flat_map(|&q| sigma.symbols().map(move |s| pair(q, s)))
        .collect();
    let mut push = BTreeMap::new();
    let mut shift = BTreeMap::new();
    let mut pop = BTreeMap::new();
    for last in sigma.symbols() {
        for (&(q, s, r), w) in a.wt_push() {
            push.insert((pair(q, last), h.apply(s), pair(r, s)), w.clone());
        }
        for (&(q, s, r), w) in a.wt_shift() {
            shift.insert((pair(q, last), h.apply(s), pair(r, s)), w.clone());
        }
        for stored in sigma.symbols() {
            for (&(q, p, r), w) in a.wt_pop() {
                pop.insert((pair(q, last), pair(p, stored), pair(r, last)), w.clone());
            }
        }
    }
    WeightedOpa::from_parts(
        h.target().clone(),
        a.semiring().clone(),
        names,
        initial,
        finals,
        push,
        shift,
        pop,
    )
}

/// `⟦k⟧ ⊙ ⟦A⟧`: fresh copies `q'` of the initial states whose outgoing pushes
/// carry `k` multiplied from the left.
///
/// The copies also receive the pops of the originals with the copy as stored
/// state, since the first push of every run stores its source state.
pub fn scalar_left_multiply(k: &Weight, a: &WeightedOpa) -> Result<WeightedOpa> {
    let sr = a.semiring();
    sr.check(k)?;
    let base = a.base();
    let mut names: Vec<String> = base.state_names().to_vec();
    let mut copy = BTreeMap::new();
    for &q in base.initial() {
        let mut name = format!("{}'", base.state_name(q));
        while names.contains(&name) {
            name.push('\'');
        }
        copy.insert(q, State(names.len() as u32));
        names.push(name);
    }
    let mut push = a.wt_push().clone();
    for (&(q, s, r), w) in a.wt_push() {
        if let Some(&c) = copy.get(&q) {
            push.insert((c, s, r), sr.mul_unchecked(k, w));
        }
    }
    let mut pop = a.wt_pop().clone();
    for (&(q, p, r), w) in a.wt_pop() {
        if let Some(&c) = copy.get(&p) {
            pop.insert((q, c, r), w.clone());
        }
    }
    WeightedOpa::from_parts(
        a.alphabet().clone(),
        sr.clone(),
        names,
        copy.values().copied().collect(),
        base.finals().clone(),
        push,
        a.wt_shift().clone(),
        pop,
    )
}
