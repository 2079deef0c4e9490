use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alphabet::{pullback_opm, OpAlphabet, Sym, SymbolMap, Word};
use crate::error::{Error, Result};
use crate::opa::{Opa, State};
use crate::semiring::{Semiring, Weight};
use crate::wopa::WeightedOpa;

/// `S = h(⟦B⟧ ∩ L(A′))` with `B` a one-state restricted automaton.
#[derive(Clone, Debug)]
pub struct NivatDecomposition {
    /// `h: Σ′ → Σ`, OPM-preserving by construction.
    pub map: SymbolMap,
    /// One-state rwOPA over `(Σ′, h⁻¹(M))`.
    pub one_state: WeightedOpa,
    /// Unweighted OPA over `(Σ′, h⁻¹(M))`.
    pub language: Opa,
}

/// Decomposes a restricted automaton over `Σ′ = Q × Σ × Q`, whose symbols
/// `(q,a,p)` name push and shift transitions.
///
/// Symbols of `Σ′` that are not transitions get weight zero in `B`.
pub fn nivat_decompose(a: &WeightedOpa) -> Result<NivatDecomposition> {
    if !a.is_restricted() {
        return Err(Error::RestrictedRequired);
    }
    let base = a.base();
    let sigma = a.alphabet();
    let mut names = Vec::new();
    let mut h = BTreeMap::new();
    let mut triples = Vec::new();
    for q in base.states() {
        for s in sigma.symbols() {
            for p in base.states() {
                let name = format!(
                    "({},{},{})",
                    base.state_name(q),
                    sigma.name(s),
                    base.state_name(p)
                );
                if name.chars().any(char::is_whitespace) {
                    return Err(Error::InvalidAutomaton(format!(
                        "state names must not contain whitespace: `{name}`"
                    )));
                }
                h.insert(name.clone(), sigma.name(s).to_string());
                names.push(name);
                triples.push((q, s, p));
            }
        }
    }
    let extended = Arc::new(pullback_opm(&h, sigma, &names)?);
    let map = SymbolMap::new(extended.clone(), sigma.clone(), &h)?;
    let ext = |i: usize| Sym(i as u32);

    let mut push = BTreeSet::new();
    let mut shift = BTreeSet::new();
    for (i, t) in triples.iter().enumerate() {
        let (q, _, p) = *t;
        if base.push().contains(t) {
            push.insert((q, ext(i), p));
        }
        if base.shift().contains(t) {
            shift.insert((q, ext(i), p));
        }
    }
    let language = Opa::new(
        extended.clone(),
        base.state_names().to_vec(),
        base.initial().clone(),
        base.finals().clone(),
        push,
        shift,
        base.pop().clone(),
    )?;

    let sr = a.semiring();
    let u = State(0);
    let lookup =
        |m: &BTreeMap<(State, Sym, State), Weight>, t| m.get(t).cloned().unwrap_or(sr.zero());
    let wt_push = triples
        .iter()
        .enumerate()
        .map(|(i, t)| ((u, ext(i), u), lookup(a.wt_push(), t)))
        .collect();
    let wt_shift = triples
        .iter()
        .enumerate()
        .map(|(i, t)| ((u, ext(i), u), lookup(a.wt_shift(), t)))
        .collect();
    let one_state = WeightedOpa::from_parts(
        extended,
        sr.clone(),
        vec!["q".into()],
        [u].into(),
        [u].into(),
        wt_push,
        wt_shift,
        [((u, u, u), sr.one())].into(),
    )?;
    Ok(NivatDecomposition {
        map,
        one_state,
        language,
    })
}

impl NivatDecomposition {
    pub fn semiring(&self) -> &Semiring {
        self.one_state.semiring()
    }

    /// The target alphabet `(Σ, M)`.
    pub fn target(&self) -> &Arc<OpAlphabet> {
        self.map.target()
    }

    /// `h(⟦B⟧ ∩ L)(v)` by enumerating preimages of `v`, restricted per position
    /// to symbols of the fiber that label some transition of `A′`.
    pub fn recompose(&self, v: &Word) -> Weight {
        let sr = self.semiring();
        let used: BTreeSet<Sym> = self
            .language
            .push()
            .iter()
            .chain(self.language.shift())
            .map(|&(_, s, _)| s)
            .collect();
        let fibers: Vec<Vec<Sym>> = v
            .symbols()
            .iter()
            .map(|&b| {
                self.map
                    .fiber(b)
                    .into_iter()
                    .filter(|s| used.contains(s))
                    .collect()
            })
            .collect();
        if fibers.iter().any(Vec::is_empty) {
            return sr.zero();
        }
        let mut total = sr.zero();
        let mut idx = vec![0usize; fibers.len()];
        loop {
            let syms = idx.iter().zip(&fibers).map(|(&i, f)| f[i]).collect();
            let w = Word::new(syms).expect("non-empty");
            if self.language.accepts(&w) {
                total = sr.add_unchecked(&total, &self.one_state.behavior(&w));
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return total;
                }
                idx[k] += 1;
                if idx[k] < fibers[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}
