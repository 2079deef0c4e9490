use std::cell::Cell;
use std::collections::BTreeSet;

use super::Formula;
use crate::alphabet::{Prec, DELIMITER};
use crate::error::{Error, Result};
use crate::opa::{Opa, State};
use crate::wopa::WeightedOpa;

struct Translator<'a> {
    a: &'a WeightedOpa,
    counter: Cell<usize>,
}

impl Translator<'_> {
    fn base(&self) -> &Opa {
        self.a.base()
    }

    fn fresh(&self) -> String {
        let i = self.counter.get();
        self.counter.set(i + 1);
        format!("t{i}")
    }

    fn name(&self, q: State) -> &str {
        self.base().state_name(q)
    }

    fn push_var(&self, (p, a, q): (State, crate::Sym, State)) -> String {
        let sigma = self.a.alphabet();
        format!("Xpush({},{},{})", self.name(p), sigma.name(a), self.name(q))
    }

    fn shift_var(&self, (p, a, q): (State, crate::Sym, State)) -> String {
        let sigma = self.a.alphabet();
        format!(
            "Xshift({},{},{})",
            self.name(p),
            sigma.name(a),
            self.name(q)
        )
    }

    fn pop_var(&self, (p, q, r): (State, State, State)) -> String {
        format!("Xpop({},{},{})", self.name(p), self.name(q), self.name(r))
    }

    fn chain(x: &str, y: &str) -> Formula {
        Formula::chain(x, y)
    }

    /// `x ↷ y` with `z` and `v` the outermost positions of the reduced right-hand side.
    fn tree(&self, x: &str, z: &str, v: &str, y: &str) -> Formula {
        let t1 = self.fresh();
        let t2 = self.fresh();
        let left = Formula::and(
            Formula::or(Formula::succ(x, z), Self::chain(x, z)),
            Formula::not(Formula::exists1(
                &t1,
                Formula::big_and(vec![
                    Formula::lt(z, &t1),
                    Formula::lt(&t1, y),
                    Self::chain(x, &t1),
                ]),
            )),
        );
        let right = Formula::and(
            Formula::or(Formula::succ(v, y), Self::chain(v, y)),
            Formula::not(Formula::exists1(
                &t2,
                Formula::big_and(vec![
                    Formula::lt(x, &t2),
                    Formula::lt(&t2, v),
                    Self::chain(&t2, y),
                ]),
            )),
        );
        // z ≤ v keeps the two ends of the right-hand side in order
        Formula::big_and(vec![Self::chain(x, y), Formula::le(z, v), left, right])
    }

    /// The symbol at `y` follows `x` and was read reaching `q`; any `q` at the start.
    fn succ_q(&self, q: State, x: &str, y: &str) -> Formula {
        let mut parts: Vec<Formula> = Vec::new();
        for &t in self.base().push().iter().filter(|t| t.2 == q) {
            parts.push(Formula::member(x, &self.push_var(t)));
        }
        for &t in self.base().shift().iter().filter(|t| t.2 == q) {
            parts.push(Formula::member(x, &self.shift_var(t)));
        }
        parts.push(Formula::min(x));
        Formula::and(Formula::succ(x, y), Formula::big_or(parts))
    }

    /// A pop reduces the subtree between `x` and `y` reaching `r`.
    fn next_r(&self, r: State, x: &str, y: &str) -> Formula {
        let z = self.fresh();
        let v = self.fresh();
        let pops = self
            .base()
            .pop()
            .iter()
            .filter(|t| t.2 == r)
            .map(|&t| Formula::member(&v, &self.pop_var(t)))
            .collect();
        Formula::exists1(
            &z,
            Formula::exists1(
                &v,
                Formula::and(self.tree(x, &z, &v, y), Formula::big_or(pops)),
            ),
        )
    }

    fn q_i(&self, i: State, x: &str, y: &str) -> Formula {
        Formula::or(self.succ_q(i, x, y), self.next_r(i, x, y))
    }

    fn tree_ij(&self, i: State, j: State, x: &str, z: &str, v: &str, y: &str) -> Formula {
        Formula::big_and(vec![
            self.tree(x, z, v, y),
            self.q_i(i, v, y),
            self.q_i(j, x, z),
        ])
    }

    /// Every position of `#w#` other than the delimiters lies in exactly one set.
    fn partition(&self, sets: &[String]) -> Formula {
        let x = self.fresh();
        let alternatives = (0..sets.len())
            .map(|i| {
                let mut parts = vec![Formula::member(&x, &sets[i])];
                parts.extend(
                    (0..sets.len())
                        .filter(|&j| j != i)
                        .map(|j| Formula::not(Formula::member(&x, &sets[j]))),
                );
                Formula::big_and(parts)
            })
            .chain([Formula::lab(DELIMITER, &x)])
            .collect();
        Formula::forall1(&x, Formula::big_or(alternatives))
    }

    fn unique(&self, sets: &[String]) -> Formula {
        let x = self.fresh();
        let mut parts = Vec::new();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j {
                    parts.push(Formula::not(Formula::and(
                        Formula::member(&x, &sets[i]),
                        Formula::member(&x, &sets[j]),
                    )));
                }
            }
        }
        Formula::forall1(&x, Formula::big_and(parts))
    }

    fn init_final(&self) -> Formula {
        let base = self.base();
        let (x, y, x1, y1) = (self.fresh(), self.fresh(), self.fresh(), self.fresh());
        let starts = base
            .push()
            .iter()
            .filter(|t| base.initial().contains(&t.0))
            .map(|&t| Formula::member(&x1, &self.push_var(t)))
            .collect();
        let accept = base
            .finals()
            .iter()
            .map(|&f| {
                let mut parts = vec![self.next_r(f, &x, &y)];
                parts.extend(
                    base.states()
                        .filter(|&j| j != f)
                        .map(|j| Formula::not(self.next_r(j, &x, &y))),
                );
                Formula::big_and(parts)
            })
            .collect();
        let body = Formula::big_and(vec![
            Formula::min(&x),
            Formula::max(&y),
            Formula::succ(&x, &x1),
            Formula::succ(&y1, &y),
            Formula::big_or(starts),
            Formula::big_or(accept),
        ]);
        [x, y, x1, y1]
            .iter()
            .rev()
            .fold(body, |f, v| Formula::exists1(v, f))
    }

    fn trans_read(&self, rel: Prec) -> Formula {
        let base = self.base();
        let (moves, var): (&BTreeSet<_>, fn(&Self, _) -> String) = match rel {
            Prec::Yields => (base.push(), Self::push_var),
            _ => (base.shift(), Self::shift_var),
        };
        let x = self.fresh();
        let parts = moves
            .iter()
            .map(|&t| {
                let z = self.fresh();
                let a = self.a.alphabet().name(t.1);
                Formula::implies(
                    Formula::member(&x, &var(self, t)),
                    Formula::and(
                        Formula::lab(a, &x),
                        Formula::exists1(
                            &z,
                            Formula::and(
                                Formula::prec(self.a.alphabet(), rel, &z, &x),
                                self.q_i(t.0, &z, &x),
                            ),
                        ),
                    ),
                )
            })
            .collect();
        Formula::forall1(&x, Formula::big_and(parts))
    }

    fn trans_pop(&self) -> Formula {
        let base = self.base();
        let v = self.fresh();
        let mut parts = Vec::new();
        for p in base.states() {
            for q in base.states() {
                let lhs = Formula::big_or(
                    base.pop()
                        .iter()
                        .filter(|t| t.0 == p && t.1 == q)
                        .map(|&t| Formula::member(&v, &self.pop_var(t)))
                        .collect(),
                );
                let (x, y, z) = (self.fresh(), self.fresh(), self.fresh());
                let rhs = Formula::exists1(
                    &x,
                    Formula::exists1(&y, Formula::exists1(&z, self.tree_ij(p, q, &x, &z, &v, &y))),
                );
                parts.push(Formula::iff(lhs, rhs));
            }
        }
        Formula::forall1(&v, Formula::big_and(parts))
    }
}

/// A restricted sentence with the behavior of `a`.
///
/// One second-order variable per transition records where it is taken (for a
/// pop: the position of the top stack symbol). The boolean part describes
/// accepting runs; a product quantifier multiplies the weights in.
pub fn automaton_to_formula(a: &WeightedOpa) -> Result<Formula> {
    let sr = a.semiring();
    if !a.is_restricted() && !sr.is_commutative() {
        return Err(Error::UnsupportedCase(format!(
            "the automaton has pop weights and {} is not commutative",
            sr.id()
        )));
    }
    let tr = Translator {
        a,
        counter: Cell::new(0),
    };
    let base = a.base();
    let push_vars: Vec<String> = base.push().iter().map(|&t| tr.push_var(t)).collect();
    let shift_vars: Vec<String> = base.shift().iter().map(|&t| tr.shift_var(t)).collect();
    let pop_vars: Vec<String> = base.pop().iter().map(|&t| tr.pop_var(t)).collect();
    let all: Vec<&String> = push_vars
        .iter()
        .chain(&shift_vars)
        .chain(&pop_vars)
        .collect();
    if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
        return Err(Error::UnsupportedCase(
            "state or symbol names make transition variable names ambiguous".into(),
        ));
    }
    let read_vars: Vec<String> = push_vars.iter().chain(&shift_vars).cloned().collect();
    let psi = Formula::big_and(vec![
        tr.partition(&read_vars),
        tr.unique(&pop_vars),
        tr.init_final(),
        tr.trans_read(Prec::Yields),
        tr.trans_read(Prec::Equal),
        tr.trans_pop(),
    ]);

    let x = tr.fresh();
    let one = sr.one();
    let ite = |var: String, w: &crate::Weight| {
        Formula::ite(Formula::member(&x, &var), w.clone(), one.clone())
    };
    let mut factors = Vec::new();
    for p in base.states() {
        for q in base.states() {
            for s in a.alphabet().symbols() {
                if let Some(w) = a.wt_push().get(&(p, s, q)) {
                    factors.push(ite(tr.push_var((p, s, q)), w));
                }
            }
            for s in a.alphabet().symbols() {
                if let Some(w) = a.wt_shift().get(&(p, s, q)) {
                    factors.push(ite(tr.shift_var((p, s, q)), w));
                }
            }
            for r in base.states() {
                if let Some(w) = a.wt_pop().get(&(p, q, r)) {
                    factors.push(ite(tr.pop_var((p, q, r)), w));
                }
            }
        }
    }
    let weights = Formula::big_otimes(factors).unwrap_or_else(|| Formula::constant(one.clone()));
    let theta = Formula::otimes(psi, Formula::prod1(&x, weights));
    Ok(all.iter().rev().fold(theta, |f, v| Formula::sum2(v, f)))
}
