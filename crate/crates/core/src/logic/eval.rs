use std::collections::{BTreeMap, BTreeSet};

use super::{Formula, VarKind};
use crate::alphabet::{Letter, OpAlphabet, Sym, Word, DELIMITER};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, Weight};

/// Default bound on the assignment space explored by one evaluation.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Values for first-order (positions) and second-order (position sets) variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub first: BTreeMap<String, usize>,
    pub second: BTreeMap<String, BTreeSet<usize>>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with_first(mut self, x: &str, i: usize) -> Assignment {
        self.first.insert(x.into(), i);
        self
    }

    pub fn with_second<I: IntoIterator<Item = usize>>(mut self, x: &str, set: I) -> Assignment {
        self.second.insert(x.into(), set.into_iter().collect());
        self
    }

    /// Every position lies in `1..=n`.
    pub fn is_valid(&self, n: usize) -> bool {
        let ok = |i: &usize| (1..=n).contains(i);
        self.first.values().all(ok) && self.second.values().all(|s| s.iter().all(ok))
    }

    /// The assignment restricted to the given variables.
    pub fn restrict(&self, vars: &BTreeMap<String, VarKind>) -> Assignment {
        Assignment {
            first: self
                .first
                .iter()
                .filter(|(x, _)| vars.get(*x) == Some(&VarKind::First))
                .map(|(x, i)| (x.clone(), *i))
                .collect(),
            second: self
                .second
                .iter()
                .filter(|(x, _)| vars.get(*x) == Some(&VarKind::Second))
                .map(|(x, s)| (x.clone(), s.clone()))
                .collect(),
        }
    }
}

/// Formula with variables resolved to environment slots.
#[derive(Clone, Debug)]
enum Node {
    Lab(Option<Sym>, usize),
    Le(usize, usize),
    Chain(usize, usize),
    In(usize, usize),
    Not(Box<Node>),
    Or(Box<Node>, Box<Node>),
    Exists1(Box<Node>),
    Exists2(Box<Node>),
    Const(Weight),
    Oplus(Box<Node>, Box<Node>),
    Otimes(Box<Node>, Box<Node>),
    Sum1(Box<Node>),
    Sum2(Box<Node>),
    Prod1(Box<Node>),
}

struct Scope {
    first: Vec<String>,
    second: Vec<String>,
}

impl Scope {
    fn slot(&self, x: &str, kind: VarKind) -> Result<usize> {
        let names = match kind {
            VarKind::First => &self.first,
            VarKind::Second => &self.second,
        };
        names
            .iter()
            .rposition(|n| n == x)
            .ok_or_else(|| Error::UnboundVariable(x.to_string()))
    }
}

fn compile(f: &Formula, alpha: &OpAlphabet, scope: &mut Scope) -> Result<Node> {
    use VarKind::{First, Second};
    let bx = |f: &Formula, scope: &mut Scope| compile(f, alpha, scope).map(Box::new);
    let bind = |f: &Formula, x: &str, kind, scope: &mut Scope| -> Result<Box<Node>> {
        match kind {
            First => scope.first.push(x.to_string()),
            Second => scope.second.push(x.to_string()),
        }
        let r = compile(f, alpha, scope);
        match kind {
            First => scope.first.pop(),
            Second => scope.second.pop(),
        };
        r.map(Box::new)
    };
    Ok(match f {
        Formula::Lab(a, x) => {
            let sym = match a.as_str() {
                DELIMITER => None,
                _ => Some(alpha.sym(a)?),
            };
            Node::Lab(sym, scope.slot(x, First)?)
        }
        Formula::Le(x, y) => Node::Le(scope.slot(x, First)?, scope.slot(y, First)?),
        Formula::Chain(x, y) => Node::Chain(scope.slot(x, First)?, scope.slot(y, First)?),
        Formula::In(x, s) => Node::In(scope.slot(x, First)?, scope.slot(s, Second)?),
        Formula::Not(g) => Node::Not(bx(g, scope)?),
        Formula::Or(g, h) => Node::Or(bx(g, scope)?, bx(h, scope)?),
        Formula::Exists1(x, g) => Node::Exists1(bind(g, x, First, scope)?),
        Formula::Exists2(x, g) => Node::Exists2(bind(g, x, Second, scope)?),
        Formula::Const(k) => Node::Const(k.clone()),
        Formula::Oplus(g, h) => Node::Oplus(bx(g, scope)?, bx(h, scope)?),
        Formula::Otimes(g, h) => Node::Otimes(bx(g, scope)?, bx(h, scope)?),
        Formula::Sum1(x, g) => Node::Sum1(bind(g, x, First, scope)?),
        Formula::Sum2(x, g) => Node::Sum2(bind(g, x, Second, scope)?),
        Formula::Prod1(x, g) => Node::Prod1(bind(g, x, First, scope)?),
    })
}

/// Largest product of `2^n` along a chain of nested second-order quantifiers.
fn space(node: &Node, n: usize) -> u128 {
    let subsets = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
    match node {
        Node::Exists2(g) | Node::Sum2(g) => subsets.saturating_mul(space(g, n)),
        Node::Not(g) | Node::Exists1(g) | Node::Sum1(g) | Node::Prod1(g) => space(g, n),
        Node::Or(g, h) | Node::Oplus(g, h) | Node::Otimes(g, h) => space(g, n).max(space(h, n)),
        _ => 1,
    }
}

fn uses_sets(node: &Node) -> bool {
    match node {
        Node::In(..) | Node::Exists2(_) | Node::Sum2(_) => true,
        Node::Not(g) | Node::Exists1(g) | Node::Sum1(g) | Node::Prod1(g) => uses_sets(g),
        Node::Or(g, h) | Node::Oplus(g, h) | Node::Otimes(g, h) => uses_sets(g) || uses_sets(h),
        _ => false,
    }
}

/// Sets are bitmasks over positions `1..=n`.
const MAX_SET_LEN: usize = 127;

struct Run<'a> {
    sr: &'a Semiring,
    letters: Vec<Letter>,
    chain: Vec<bool>,
    n: usize,
}

impl Run<'_> {
    fn holds(&self, node: &Node, fo: &mut Vec<usize>, so: &mut Vec<u128>) -> bool {
        match node {
            Node::Lab(a, x) => {
                let l = self.letters[fo[*x]];
                match a {
                    None => l == Letter::Delim,
                    Some(s) => l == Letter::Sym(*s),
                }
            }
            Node::Le(x, y) => fo[*x] <= fo[*y],
            Node::Chain(x, y) => self.chain[fo[*x] * (self.n + 2) + fo[*y]],
            Node::In(x, s) => {
                let i = fo[*x];
                (1..=self.n).contains(&i) && so[*s] >> i & 1 == 1
            }
            Node::Not(g) => !self.holds(g, fo, so),
            Node::Or(g, h) => self.holds(g, fo, so) || self.holds(h, fo, so),
            Node::Exists1(g) => {
                let mut found = false;
                for i in 0..=self.n + 1 {
                    fo.push(i);
                    found = self.holds(g, fo, so);
                    fo.pop();
                    if found {
                        break;
                    }
                }
                found
            }
            Node::Exists2(g) => {
                let mut found = false;
                for mask in 0..1u128 << self.n {
                    so.push(mask << 1);
                    found = self.holds(g, fo, so);
                    so.pop();
                    if found {
                        break;
                    }
                }
                found
            }
            _ => unreachable!("weighted node in boolean position"),
        }
    }

    fn weight(&self, node: &Node, fo: &mut Vec<usize>, so: &mut Vec<u128>) -> Weight {
        let sr = self.sr;
        match node {
            Node::Const(k) => k.clone(),
            Node::Oplus(g, h) => {
                let a = self.weight(g, fo, so);
                sr.add_unchecked(&a, &self.weight(h, fo, so))
            }
            Node::Otimes(g, h) => {
                let a = self.weight(g, fo, so);
                if sr.is_zero(&a) {
                    return a;
                }
                sr.mul_unchecked(&a, &self.weight(h, fo, so))
            }
            Node::Sum1(g) => {
                let mut acc = sr.zero();
                for i in 1..=self.n {
                    fo.push(i);
                    acc = sr.add_unchecked(&acc, &self.weight(g, fo, so));
                    fo.pop();
                }
                acc
            }
            Node::Prod1(g) => {
                let mut acc = sr.one();
                for i in 1..=self.n {
                    fo.push(i);
                    acc = sr.mul_unchecked(&acc, &self.weight(g, fo, so));
                    fo.pop();
                    if sr.is_zero(&acc) {
                        break;
                    }
                }
                acc
            }
            Node::Sum2(g) => {
                let mut acc = sr.zero();
                for mask in 0..1u128 << self.n {
                    so.push(mask << 1);
                    acc = sr.add_unchecked(&acc, &self.weight(g, fo, so));
                    so.pop();
                }
                acc
            }
            boolean => {
                if self.holds(boolean, fo, so) {
                    sr.one()
                } else {
                    sr.zero()
                }
            }
        }
    }
}

/// Direct evaluator of weighted MSO formulas over one OP alphabet and semiring.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    alpha: &'a OpAlphabet,
    semiring: &'a Semiring,
    budget: u128,
}

impl<'a> Evaluator<'a> {
    pub fn new(alpha: &'a OpAlphabet, semiring: &'a Semiring) -> Self {
        Evaluator {
            alpha,
            semiring,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// The assignment space an evaluation of `f` on words of length `n` explores.
    pub fn assignment_space(&self, f: &Formula, n: usize) -> Result<u128> {
        let (node, _) = self.prepare(f, &Assignment::new(), false)?;
        Ok(space(&node, n))
    }

    fn prepare(
        &self,
        f: &Formula,
        sigma: &Assignment,
        bind_all: bool,
    ) -> Result<(Node, Assignment)> {
        let free = f.free_vars()?;
        for k in f.constants() {
            self.semiring.check(&k)?;
        }
        let mut scope = Scope {
            first: Vec::new(),
            second: Vec::new(),
        };
        let mut env = Assignment::new();
        for (x, kind) in &free {
            match kind {
                VarKind::First => {
                    let i = match sigma.first.get(x) {
                        Some(i) => *i,
                        None if bind_all => return Err(Error::UnboundVariable(x.clone())),
                        None => 0,
                    };
                    scope.first.push(x.clone());
                    env.first.insert(x.clone(), i);
                }
                VarKind::Second => {
                    let s = match sigma.second.get(x) {
                        Some(s) => s.clone(),
                        None if bind_all => return Err(Error::UnboundVariable(x.clone())),
                        None => BTreeSet::new(),
                    };
                    scope.second.push(x.clone());
                    env.second.insert(x.clone(), s);
                }
            }
        }
        Ok((compile(f, self.alpha, &mut scope)?, env))
    }

    fn run(
        &self,
        node: &Node,
        env: &Assignment,
        w: &Word,
    ) -> Result<(Run<'_>, Vec<usize>, Vec<u128>)> {
        let n = w.len();
        let budget_space = space(node, n);
        if budget_space > self.budget {
            return Err(Error::BudgetExceeded {
                space: budget_space,
                budget: self.budget,
            });
        }
        if n > MAX_SET_LEN && uses_sets(node) {
            return Err(Error::UnsupportedWord(format!(
                "second-order variables are limited to words of length {MAX_SET_LEN}"
            )));
        }
        let mut chain = vec![false; (n + 2) * (n + 2)];
        for (i, j) in self.alpha.chains(w) {
            chain[i * (n + 2) + j] = true;
        }
        let run = Run {
            sr: self.semiring,
            letters: (0..=n + 1).map(|i| w.letter(i)).collect(),
            chain,
            n,
        };
        // variables are pushed in the sorted order used by `prepare`
        let fo = env.first.values().copied().collect();
        let so = env
            .second
            .values()
            .map(|s| s.iter().fold(0u128, |m, &i| m | 1 << i))
            .collect();
        Ok((run, fo, so))
    }

    /// `⟦φ⟧_𝒱(w, σ)` where `𝒱` is the domain of `σ`; invalid assignments give zero.
    pub fn eval(&self, f: &Formula, w: &Word, sigma: &Assignment) -> Result<Weight> {
        let (node, env) = self.prepare(f, sigma, true)?;
        if !sigma.is_valid(w.len()) {
            return Ok(self.semiring.zero());
        }
        let (run, mut fo, mut so) = self.run(&node, &env, w)?;
        Ok(run.weight(&node, &mut fo, &mut so))
    }

    /// Satisfaction of a boolean formula; first-order values may be `0..=n+1`.
    pub fn holds(&self, f: &Formula, w: &Word, sigma: &Assignment) -> Result<bool> {
        if !f.is_boolean() {
            return Err(Error::MalformedFormula("expected a boolean formula".into()));
        }
        let n = w.len();
        if let Some((x, i)) = sigma.first.iter().find(|(_, i)| **i > n + 1) {
            return Err(Error::InvalidAssignment(format!(
                "{x} = {i} lies outside 0..={}",
                n + 1
            )));
        }
        if let Some((x, _)) = sigma
            .second
            .iter()
            .find(|(_, s)| s.iter().any(|i| !(1..=n).contains(i)))
        {
            return Err(Error::InvalidAssignment(format!(
                "{x} must be a subset of 1..={n}"
            )));
        }
        let (node, env) = self.prepare(f, sigma, true)?;
        let (run, mut fo, mut so) = self.run(&node, &env, w)?;
        Ok(run.holds(&node, &mut fo, &mut so))
    }
}

/// `⟦φ⟧_𝒱(w, σ)` with the default budget.
pub fn mso_eval(
    alpha: &OpAlphabet,
    semiring: &Semiring,
    f: &Formula,
    w: &Word,
    sigma: &Assignment,
) -> Result<Weight> {
    Evaluator::new(alpha, semiring).eval(f, w, sigma)
}

/// `(w, σ) ⊨ β` with the default budget.
pub fn bool_eval(alpha: &OpAlphabet, f: &Formula, w: &Word, sigma: &Assignment) -> Result<bool> {
    Evaluator::new(alpha, &Semiring::Boolean).holds(f, w, sigma)
}

/// Evaluating under `σ` agrees with evaluating under `σ` restricted to the
/// free variables of `φ`. `σ` must be valid.
pub fn consistency_check(
    alpha: &OpAlphabet,
    semiring: &Semiring,
    f: &Formula,
    w: &Word,
    sigma: &Assignment,
) -> Result<bool> {
    let ev = Evaluator::new(alpha, semiring);
    let restricted = sigma.restrict(&f.free_vars()?);
    Ok(ev.eval(f, w, sigma)? == ev.eval(f, w, &restricted)?)
}
