use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::opa::State;
use crate::wopa::WeightedOpa;

/// An equivalent restricted automaton over a commutative semiring.
///
/// States are triples `q1*q2*q3`: the first component simulates `A`, the other
/// two guess the source and target of the pop that will close the next push,
/// whose weight is then paid by that push. The distinguished final guess is
/// the first state.
pub fn eliminate_pop_weights(a: &WeightedOpa) -> Result<WeightedOpa> {
    let sr = a.semiring();
    if !sr.is_commutative() {
        return Err(Error::CommutativityRequired(sr.id()));
    }
    let base = a.base();
    let n = base.num_states() as u32;
    if n == 0 {
        return Ok(WeightedOpa::empty(a.alphabet().clone(), sr.clone()));
    }
    let t = |x: State, y: State, z: State| State((x.0 * n + y.0) * n + z.0);
    let states: Vec<State> = base.states().collect();
    let mut names = Vec::new();
    for &x in &states {
        for &y in &states {
            for &z in &states {
                names.push(format!(
                    "{}*{}*{}",
                    base.state_name(x),
                    base.state_name(y),
                    base.state_name(z)
                ));
            }
        }
    }
    let fixed = State(0);
    let mut initial = BTreeSet::new();
    for &i in base.initial() {
        for &y in &states {
            for &z in &states {
                initial.insert(t(i, y, z));
            }
        }
    }
    let finals: BTreeSet<State> = base.finals().iter().map(|&f| t(f, fixed, fixed)).collect();

    let mut push = BTreeMap::new();
    for (&(q1, s, r1), wp) in a.wt_push() {
        for (&(q2, p, q3), wo) in a.wt_pop() {
            if p != q1 {
                continue;
            }
            let w = sr.mul_unchecked(wp, wo);
            for &r2 in &states {
                for &r3 in &states {
                    push.insert((t(q1, q2, q3), s, t(r1, r2, r3)), w.clone());
                }
            }
        }
    }
    let mut shift = BTreeMap::new();
    for (&(q1, s, r1), w) in a.wt_shift() {
        for &q2 in &states {
            for &q3 in &states {
                shift.insert((t(q1, q2, q3), s, t(r1, q2, q3)), w.clone());
            }
        }
    }
    let mut pop = BTreeMap::new();
    for &(q1, p1, r1) in a.wt_pop().keys() {
        for &q2 in &states {
            for &q3 in &states {
                pop.insert((t(q1, q2, q3), t(p1, q1, r1), t(r1, q2, q3)), sr.one());
            }
        }
    }
    WeightedOpa::from_parts(
        a.alphabet().clone(),
        sr.clone(),
        names,
        initial,
        finals,
        push,
        shift,
        pop,
    )
}
