//! Weighted MSO over OP alphabets: syntax, direct semantics, the syntactic
//! fragments (almost boolean, restricted), and the translation of automata
//! into formulas.
//!
//! Positions are 1-based; the delimiter `#` sits at positions `0` and `n+1`.
//! Bound boolean first-order variables range over `0..=n+1`, weighted
//! quantifiers and second-order variables over `1..=n`.

mod classify;
mod eval;
mod json;
mod translate;

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{OpAlphabet, Prec, DELIMITER};
use crate::error::{Error, Result};
use crate::semiring::Weight;

pub use classify::{classify, Classification};
pub use eval::{bool_eval, consistency_check, mso_eval, Assignment, Evaluator, DEFAULT_BUDGET};
pub use json::{formula_from_json, formula_to_json};
pub use translate::automaton_to_formula;

/// First- or second-order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    First,
    Second,
}

/// A weighted MSO formula. Derived connectives are built by the associated
/// functions and expand into these nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    /// `Lab_a(x)`; `a` may be `#`.
    Lab(String, String),
    Le(String, String),
    Chain(String, String),
    /// `x ∈ X`.
    In(String, String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists1(String, Box<Formula>),
    Exists2(String, Box<Formula>),
    Const(Weight),
    Oplus(Box<Formula>, Box<Formula>),
    Otimes(Box<Formula>, Box<Formula>),
    Sum1(String, Box<Formula>),
    Sum2(String, Box<Formula>),
    Prod1(String, Box<Formula>),
}

/// A variable name distinct from every name in `avoid`.
fn fresh(base: &str, avoid: &[&str]) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name.as_str()) {
        name.push('\'');
    }
    name
}

impl Formula {
    pub fn lab(a: &str, x: &str) -> Formula {
        Formula::Lab(a.into(), x.into())
    }

    pub fn le(x: &str, y: &str) -> Formula {
        Formula::Le(x.into(), y.into())
    }

    pub fn chain(x: &str, y: &str) -> Formula {
        Formula::Chain(x.into(), y.into())
    }

    pub fn member(x: &str, set: &str) -> Formula {
        Formula::In(x.into(), set.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn exists1(x: &str, f: Formula) -> Formula {
        Formula::Exists1(x.into(), Box::new(f))
    }

    pub fn exists2(x: &str, f: Formula) -> Formula {
        Formula::Exists2(x.into(), Box::new(f))
    }

    pub fn constant(k: Weight) -> Formula {
        Formula::Const(k)
    }

    pub fn oplus(f: Formula, g: Formula) -> Formula {
        Formula::Oplus(Box::new(f), Box::new(g))
    }

    pub fn otimes(f: Formula, g: Formula) -> Formula {
        Formula::Otimes(Box::new(f), Box::new(g))
    }

    pub fn sum1(x: &str, f: Formula) -> Formula {
        Formula::Sum1(x.into(), Box::new(f))
    }

    pub fn sum2(x: &str, f: Formula) -> Formula {
        Formula::Sum2(x.into(), Box::new(f))
    }

    pub fn prod1(x: &str, f: Formula) -> Formula {
        Formula::Prod1(x.into(), Box::new(f))
    }

    /// `¬(¬f ∨ ¬g)`.
    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::not(Formula::or(Formula::not(f), Formula::not(g)))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::or(Formula::not(f), g)
    }

    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::and(
            Formula::implies(f.clone(), g.clone()),
            Formula::implies(g, f),
        )
    }

    pub fn forall1(x: &str, f: Formula) -> Formula {
        Formula::not(Formula::exists1(x, Formula::not(f)))
    }

    pub fn forall2(x: &str, f: Formula) -> Formula {
        Formula::not(Formula::exists2(x, Formula::not(f)))
    }

    /// `x ≤ y ∧ y ≤ x`.
    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::and(Formula::le(x, y), Formula::le(y, x))
    }

    /// `x ≤ y ∧ ¬(y ≤ x)`.
    pub fn lt(x: &str, y: &str) -> Formula {
        Formula::and(Formula::le(x, y), Formula::not(Formula::le(y, x)))
    }

    /// `y = x + 1`.
    pub fn succ(x: &str, y: &str) -> Formula {
        let z = fresh("z", &[x, y]);
        Formula::and(
            Formula::lt(x, y),
            Formula::forall1(&z, Formula::or(Formula::le(&z, x), Formula::le(y, &z))),
        )
    }

    /// `∀y. x ≤ y`.
    pub fn min(x: &str) -> Formula {
        let y = fresh("y", &[x]);
        Formula::forall1(&y, Formula::le(x, &y))
    }

    /// `∀y. y ≤ x`.
    pub fn max(x: &str) -> Formula {
        let y = fresh("y", &[x]);
        Formula::forall1(&y, Formula::le(&y, x))
    }

    /// `∃t. t ≤ t`.
    pub fn truth() -> Formula {
        Formula::exists1("t", Formula::le("t", "t"))
    }

    pub fn falsity() -> Formula {
        Formula::not(Formula::truth())
    }

    /// `(β ⊗ k₁) ⊕ (¬β ⊗ k₂)`.
    pub fn ite(b: Formula, k1: Weight, k2: Weight) -> Formula {
        Formula::oplus(
            Formula::otimes(b.clone(), Formula::constant(k1)),
            Formula::otimes(Formula::not(b), Formula::constant(k2)),
        )
    }

    /// `x ∘ y` for a precedence relation, over `Σ ∪ {#}`.
    pub fn prec(alpha: &OpAlphabet, rel: Prec, x: &str, y: &str) -> Formula {
        let mut letters: Vec<&str> = vec![DELIMITER];
        letters.extend(alpha.names().iter().map(String::as_str));
        let mut parts = Vec::new();
        for &a in &letters {
            for &b in &letters {
                if alpha.lookup(a, b).ok().flatten() == Some(rel) {
                    parts.push(Formula::and(Formula::lab(a, x), Formula::lab(b, y)));
                }
            }
        }
        Formula::big_or(parts)
    }

    /// Balanced disjunction; empty is false.
    pub fn big_or(parts: Vec<Formula>) -> Formula {
        Formula::balanced(parts, Formula::or).unwrap_or_else(Formula::falsity)
    }

    /// Balanced conjunction; empty is true.
    pub fn big_and(parts: Vec<Formula>) -> Formula {
        Formula::balanced(parts, Formula::and).unwrap_or_else(Formula::truth)
    }

    /// Left-to-right product, kept balanced; `None` when empty.
    pub fn big_otimes(parts: Vec<Formula>) -> Option<Formula> {
        Formula::balanced(parts, Formula::otimes)
    }

    fn balanced(mut parts: Vec<Formula>, op: fn(Formula, Formula) -> Formula) -> Option<Formula> {
        match parts.len() {
            0 => None,
            1 => parts.pop(),
            n => {
                let right = parts.split_off(n / 2);
                Some(op(
                    Formula::balanced(parts, op)?,
                    Formula::balanced(right, op)?,
                ))
            }
        }
    }

    /// Built only from labels, `≤`, `↷`, `∈`, `¬`, `∨` and `∃`.
    pub fn is_boolean(&self) -> bool {
        match self {
            Formula::Lab(..) | Formula::Le(..) | Formula::Chain(..) | Formula::In(..) => true,
            Formula::Not(f) | Formula::Exists1(_, f) | Formula::Exists2(_, f) => f.is_boolean(),
            Formula::Or(f, g) => f.is_boolean() && g.is_boolean(),
            _ => false,
        }
    }

    /// Free variables with their kinds.
    ///
    /// Fails if a variable is used with both kinds, or a boolean connective
    /// is applied to a weighted subformula.
    pub fn free_vars(&self) -> Result<BTreeMap<String, VarKind>> {
        let mut free = BTreeMap::new();
        self.collect_free(&mut Vec::new(), &mut free)?;
        Ok(free)
    }

    fn collect_free(
        &self,
        bound: &mut Vec<(String, VarKind)>,
        free: &mut BTreeMap<String, VarKind>,
    ) -> Result<()> {
        let mut use_var = |name: &str, kind: VarKind, bound: &Vec<(String, VarKind)>| {
            let found = bound
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, k)| *k)
                .or_else(|| free.get(name).copied());
            match found {
                Some(k) if k != kind => Err(Error::MalformedFormula(format!(
                    "variable `{name}` used as both first- and second-order"
                ))),
                Some(_) => Ok(()),
                None => {
                    free.insert(name.to_string(), kind);
                    Ok(())
                }
            }
        };
        let boolean = |f: &Formula, ctx: &str| {
            if f.is_boolean() {
                Ok(())
            } else {
                Err(Error::MalformedFormula(format!(
                    "{ctx} applied to a weighted formula"
                )))
            }
        };
        match self {
            Formula::Lab(_, x) => use_var(x, VarKind::First, bound),
            Formula::Le(x, y) | Formula::Chain(x, y) => {
                use_var(x, VarKind::First, bound)?;
                use_var(y, VarKind::First, bound)
            }
            Formula::In(x, s) => {
                use_var(x, VarKind::First, bound)?;
                use_var(s, VarKind::Second, bound)
            }
            Formula::Not(f) => {
                boolean(f, "negation")?;
                f.collect_free(bound, free)
            }
            Formula::Or(f, g) => {
                boolean(f, "disjunction")?;
                boolean(g, "disjunction")?;
                f.collect_free(bound, free)?;
                g.collect_free(bound, free)
            }
            Formula::Oplus(f, g) | Formula::Otimes(f, g) => {
                f.collect_free(bound, free)?;
                g.collect_free(bound, free)
            }
            Formula::Const(_) => Ok(()),
            Formula::Exists1(x, f) | Formula::Exists2(x, f) => {
                boolean(f, "existential quantifier")?;
                let kind = if matches!(self, Formula::Exists1(..)) {
                    VarKind::First
                } else {
                    VarKind::Second
                };
                bound.push((x.clone(), kind));
                let r = f.collect_free(bound, free);
                bound.pop();
                r
            }
            Formula::Sum1(x, f) | Formula::Prod1(x, f) => {
                bound.push((x.clone(), VarKind::First));
                let r = f.collect_free(bound, free);
                bound.pop();
                r
            }
            Formula::Sum2(x, f) => {
                bound.push((x.clone(), VarKind::Second));
                let r = f.collect_free(bound, free);
                bound.pop();
                r
            }
        }
    }

    /// The constants occurring in the formula, in order of first occurrence.
    pub fn constants(&self) -> Vec<Weight> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Const(k) = f {
                if !out.contains(k) {
                    out.push(k.clone());
                }
            }
        });
        out
    }

    /// Calls `f` on every subformula, parents first.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(g)
            | Formula::Exists1(_, g)
            | Formula::Exists2(_, g)
            | Formula::Sum1(_, g)
            | Formula::Sum2(_, g)
            | Formula::Prod1(_, g) => g.visit(f),
            Formula::Or(g, h) | Formula::Oplus(g, h) | Formula::Otimes(g, h) => {
                g.visit(f);
                h.visit(f);
            }
            _ => {}
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Lab(a, x) => write!(f, "Lab_{a}({x})"),
            Formula::Le(x, y) => write!(f, "{x} <= {y}"),
            Formula::Chain(x, y) => write!(f, "{x} ~> {y}"),
            Formula::In(x, s) => write!(f, "{x} in {s}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::Or(g, h) => write!(f, "({g} | {h})"),
            Formula::Exists1(x, g) => write!(f, "E {x}. {g}"),
            Formula::Exists2(x, g) => write!(f, "E2 {x}. {g}"),
            Formula::Const(k) => write!(f, "{k}"),
            Formula::Oplus(g, h) => write!(f, "({g} (+) {h})"),
            Formula::Otimes(g, h) => write!(f, "({g} (x) {h})"),
            Formula::Sum1(x, g) => write!(f, "Sum {x}. {g}"),
            Formula::Sum2(x, g) => write!(f, "Sum2 {x}. {g}"),
            Formula::Prod1(x, g) => write!(f, "Prod {x}. {g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sugar_avoids_capture() {
        let s = Formula::succ("z", "y");
        let free = s.free_vars().unwrap();
        assert_eq!(free.keys().collect::<Vec<_>>(), ["y", "z"]);
        let m = Formula::min("y");
        assert_eq!(m.free_vars().unwrap().len(), 1);
    }

    #[test]
    fn kinds_must_agree() {
        let f = Formula::and(Formula::member("x", "X"), Formula::le("X", "x"));
        assert!(matches!(f.free_vars(), Err(Error::MalformedFormula(_))));
        let g = Formula::not(Formula::constant(Weight::integer(1)));
        assert!(matches!(g.free_vars(), Err(Error::MalformedFormula(_))));
        // a bound first-order x shadows nothing of kind second-order
        let h = Formula::exists1("x", Formula::le("x", "x"));
        assert!(h.free_vars().unwrap().is_empty());
    }

    #[test]
    fn booleanness() {
        assert!(Formula::min("x").is_boolean());
        assert!(
            !Formula::ite(Formula::truth(), Weight::integer(1), Weight::integer(0)).is_boolean()
        );
    }
}
