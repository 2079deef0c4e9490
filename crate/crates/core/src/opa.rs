//! Operator precedence automata without weights.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::alphabet::{Letter, OpAlphabet, Prec, Sym, Word};
use crate::error::{Error, Result};

/// Index of a state within its automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub u32);

impl State {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One move of a run, tagged with the transition it used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Push {
        from: State,
        sym: Sym,
        to: State,
    },
    Shift {
        from: State,
        sym: Sym,
        to: State,
    },
    Pop {
        from: State,
        stack: State,
        to: State,
    },
}

impl Move {
    pub fn target(&self) -> State {
        match *self {
            Move::Push { to, .. } | Move::Shift { to, .. } | Move::Pop { to, .. } => to,
        }
    }
}

/// `⟨Π, q, w#⟩`: the stack grows to the right, `pos` is the next unread position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub stack: Vec<(Sym, State)>,
    pub state: State,
    pub pos: usize,
}

impl Configuration {
    pub fn initial(q: State) -> Self {
        Configuration {
            stack: Vec::new(),
            state: q,
            pos: 1,
        }
    }

    fn top(&self) -> Letter {
        self.stack
            .last()
            .map_or(Letter::Delim, |&(a, _)| Letter::Sym(a))
    }
}

pub type Run = Vec<Move>;

/// A push or shift transition `(from, symbol, to)`.
pub type Triple = (State, Sym, State);
/// A pop transition `(from, stack, to)`.
pub type PopTriple = (State, State, State);

/// An OPA `(Q, I, F, δ_push, δ_shift, δ_pop)` over a shared OP alphabet.
#[derive(Clone, Debug)]
pub struct Opa {
    alpha: Arc<OpAlphabet>,
    states: Vec<String>,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
    push: BTreeSet<Triple>,
    shift: BTreeSet<Triple>,
    pop: BTreeSet<PopTriple>,
    push_out: HashMap<(State, Sym), Vec<State>>,
    shift_out: HashMap<(State, Sym), Vec<State>>,
    pop_out: HashMap<(State, State), Vec<State>>,
}

impl PartialEq for Opa {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha
            && self.states == other.states
            && self.initial == other.initial
            && self.finals == other.finals
            && self.push == other.push
            && self.shift == other.shift
            && self.pop == other.pop
    }
}

impl Eq for Opa {}

impl Opa {
    pub fn new(
        alpha: Arc<OpAlphabet>,
        states: Vec<String>,
        initial: BTreeSet<State>,
        finals: BTreeSet<State>,
        push: BTreeSet<Triple>,
        shift: BTreeSet<Triple>,
        pop: BTreeSet<PopTriple>,
    ) -> Result<Opa> {
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(Error::InvalidAutomaton(format!("duplicate state `{s}`")));
            }
        }
        let n = states.len();
        let bad_state = |q: &State| q.index() >= n;
        let bad_sym = |a: &Sym| a.index() >= alpha.len();
        if initial.iter().chain(&finals).any(bad_state)
            || push
                .iter()
                .chain(&shift)
                .any(|(q, a, r)| bad_state(q) || bad_state(r) || bad_sym(a))
            || pop
                .iter()
                .any(|(q, p, r)| bad_state(q) || bad_state(p) || bad_state(r))
        {
            return Err(Error::InvalidAutomaton(
                "transition refers to an unknown state or symbol".into(),
            ));
        }
        let mut push_out: HashMap<_, Vec<State>> = HashMap::new();
        for &(q, a, r) in &push {
            push_out.entry((q, a)).or_default().push(r);
        }
        let mut shift_out: HashMap<_, Vec<State>> = HashMap::new();
        for &(q, a, r) in &shift {
            shift_out.entry((q, a)).or_default().push(r);
        }
        let mut pop_out: HashMap<_, Vec<State>> = HashMap::new();
        for &(q, p, r) in &pop {
            pop_out.entry((q, p)).or_default().push(r);
        }
        Ok(Opa {
            alpha,
            states,
            initial,
            finals,
            push,
            shift,
            pop,
            push_out,
            shift_out,
            pop_out,
        })
    }

    /// The one-state automaton accepting every compatible word.
    pub fn universal(alpha: Arc<OpAlphabet>) -> Opa {
        let u = State(0);
        let all: BTreeSet<Triple> = alpha.symbols().map(|a| (u, a, u)).collect();
        Opa::new(
            alpha,
            vec!["u".into()],
            [u].into(),
            [u].into(),
            all.clone(),
            all,
            [(u, u, u)].into(),
        )
        .expect("universal automaton is well-formed")
    }

    pub fn alphabet(&self) -> &Arc<OpAlphabet> {
        &self.alpha
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> impl Iterator<Item = State> + Clone {
        (0..self.states.len() as u32).map(State)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: State) -> &str {
        &self.states[q.index()]
    }

    pub fn state(&self, name: &str) -> Result<State> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| State(i as u32))
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn initial(&self) -> &BTreeSet<State> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn push(&self) -> &BTreeSet<Triple> {
        &self.push
    }

    pub fn shift(&self) -> &BTreeSet<Triple> {
        &self.shift
    }

    pub fn pop(&self) -> &BTreeSet<PopTriple> {
        &self.pop
    }

    pub fn push_targets(&self, q: State, a: Sym) -> &[State] {
        self.push_out.get(&(q, a)).map_or(&[], Vec::as_slice)
    }

    pub fn shift_targets(&self, q: State, a: Sym) -> &[State] {
        self.shift_out.get(&(q, a)).map_or(&[], Vec::as_slice)
    }

    pub fn pop_targets(&self, q: State, p: State) -> &[State] {
        self.pop_out.get(&(q, p)).map_or(&[], Vec::as_slice)
    }

    pub fn render_move(&self, m: &Move) -> String {
        let s = |q: State| self.state_name(q);
        match *m {
            Move::Push { from, sym, to } => {
                format!("push({}, {}, {})", s(from), self.alpha.name(sym), s(to))
            }
            Move::Shift { from, sym, to } => {
                format!("shift({}, {}, {})", s(from), self.alpha.name(sym), s(to))
            }
            Move::Pop { from, stack, to } => format!("pop({}, {}, {})", s(from), s(stack), s(to)),
        }
    }

    /// All successors of `c` on `w` according to the move table.
    pub fn step(&self, c: &Configuration, w: &Word) -> Vec<(Configuration, Move)> {
        let mut out = Vec::new();
        let b = w.letter(c.pos);
        let q = c.state;
        match self.alpha.prec(c.top(), b) {
            Some(Prec::Yields) => {
                let Letter::Sym(b) = b else { return out };
                for &r in self.push_targets(q, b) {
                    let mut stack = c.stack.clone();
                    stack.push((b, q));
                    out.push((
                        Configuration {
                            stack,
                            state: r,
                            pos: c.pos + 1,
                        },
                        Move::Push {
                            from: q,
                            sym: b,
                            to: r,
                        },
                    ));
                }
            }
            Some(Prec::Equal) => {
                let (Letter::Sym(b), Some(&(_, p))) = (b, c.stack.last()) else {
                    return out;
                };
                for &r in self.shift_targets(q, b) {
                    let mut stack = c.stack.clone();
                    *stack.last_mut().expect("non-empty") = (b, p);
                    out.push((
                        Configuration {
                            stack,
                            state: r,
                            pos: c.pos + 1,
                        },
                        Move::Shift {
                            from: q,
                            sym: b,
                            to: r,
                        },
                    ));
                }
            }
            Some(Prec::Takes) => {
                let Some(&(_, p)) = c.stack.last() else {
                    return out;
                };
                for &r in self.pop_targets(q, p) {
                    let mut stack = c.stack.clone();
                    stack.pop();
                    out.push((
                        Configuration {
                            stack,
                            state: r,
                            pos: c.pos,
                        },
                        Move::Pop {
                            from: q,
                            stack: p,
                            to: r,
                        },
                    ));
                }
            }
            None => {}
        }
        out
    }

    pub fn is_accepting(&self, c: &Configuration, w: &Word) -> bool {
        c.stack.is_empty() && c.pos == w.len() + 1 && self.finals.contains(&c.state)
    }

    /// Every accepting run on `w`, by depth-first search over configurations.
    pub fn enumerate_runs(&self, w: &Word) -> Result<Vec<Run>> {
        if !self.alpha.is_compatible(w) {
            return Err(Error::Incompatible(self.alpha.render(w)));
        }
        let mut runs = Vec::new();
        let mut trail = Vec::new();
        for &q in &self.initial {
            self.dfs(&Configuration::initial(q), w, &mut trail, &mut runs);
        }
        Ok(runs)
    }

    fn dfs(&self, c: &Configuration, w: &Word, trail: &mut Run, runs: &mut Vec<Run>) {
        if self.is_accepting(c, w) {
            runs.push(trail.clone());
        }
        for (next, m) in self.step(c, w) {
            trail.push(m);
            self.dfs(&next, w, trail, runs);
            trail.pop();
        }
    }

    /// Membership in `L(A)`; incompatible words are rejected.
    pub fn accepts(&self, w: &Word) -> bool {
        !summarize(self, w, &Reach, self.initial.iter().map(|&q| (q, true))).is_empty()
    }

    /// `|I| = 1` and every transition relation is functional.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1
            && self.push_out.values().all(|v| v.len() == 1)
            && self.shift_out.values().all(|v| v.len() == 1)
            && self.pop_out.values().all(|v| v.len() == 1)
    }

    /// Synchronous product; `L(A × B) = L(A) ∩ L(B)`.
    pub fn product(&self, other: &Opa) -> Result<Opa> {
        if self.alpha != other.alpha {
            return Err(Error::AlphabetMismatch);
        }
        let m = other.num_states() as u32;
        let pair = |a: State, b: State| State(a.0 * m + b.0);
        let mut names = Vec::new();
        for a in self.states() {
            for b in other.states() {
                names.push(format!("{}*{}", self.state_name(a), other.state_name(b)));
            }
        }
        let cross = |x: &BTreeSet<State>, y: &BTreeSet<State>| {
            x.iter()
                .flat_map(|&a| y.iter().map(move |&b| pair(a, b)))
                .collect::<BTreeSet<_>>()
        };
        let cross_sym = |x: &BTreeSet<Triple>, y: &BTreeSet<Triple>| {
            let mut out = BTreeSet::new();
            for &(q, a, r) in x {
                for &(q2, a2, r2) in y {
                    if a == a2 {
                        out.insert((pair(q, q2), a, pair(r, r2)));
                    }
                }
            }
            out
        };
        let mut pop = BTreeSet::new();
        for &(q, p, r) in &self.pop {
            for &(q2, p2, r2) in &other.pop {
                pop.insert((pair(q, q2), pair(p, p2), pair(r, r2)));
            }
        }
        Opa::new(
            self.alpha.clone(),
            names,
            cross(&self.initial, &other.initial),
            cross(&self.finals, &other.finals),
            cross_sym(&self.push, &other.push),
            cross_sym(&self.shift, &other.shift),
            pop,
        )
    }
}

/// Incremental construction by state name.
#[derive(Clone, Debug)]
pub struct OpaBuilder {
    alpha: Arc<OpAlphabet>,
    names: Vec<String>,
    index: HashMap<String, State>,
    initial: BTreeSet<State>,
    finals: BTreeSet<State>,
    push: BTreeSet<Triple>,
    shift: BTreeSet<Triple>,
    pop: BTreeSet<PopTriple>,
}

impl OpaBuilder {
    pub fn new(alpha: Arc<OpAlphabet>) -> Self {
        OpaBuilder {
            alpha,
            names: Vec::new(),
            index: HashMap::new(),
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
            push: BTreeSet::new(),
            shift: BTreeSet::new(),
            pop: BTreeSet::new(),
        }
    }

    /// Interns a state name.
    pub fn state(&mut self, name: &str) -> State {
        if let Some(&q) = self.index.get(name) {
            return q;
        }
        let q = State(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), q);
        q
    }

    pub fn initial(&mut self, q: &str) -> &mut Self {
        let q = self.state(q);
        self.initial.insert(q);
        self
    }

    pub fn final_state(&mut self, q: &str) -> &mut Self {
        let q = self.state(q);
        self.finals.insert(q);
        self
    }

    pub fn push(&mut self, q: &str, a: &str, r: &str) -> Result<&mut Self> {
        let t = self.triple(q, a, r)?;
        self.push.insert(t);
        Ok(self)
    }

    pub fn shift(&mut self, q: &str, a: &str, r: &str) -> Result<&mut Self> {
        let t = self.triple(q, a, r)?;
        self.shift.insert(t);
        Ok(self)
    }

    pub fn pop(&mut self, q: &str, p: &str, r: &str) -> &mut Self {
        let t = (self.state(q), self.state(p), self.state(r));
        self.pop.insert(t);
        self
    }

    fn triple(&mut self, q: &str, a: &str, r: &str) -> Result<Triple> {
        let a = self.alpha.sym(a)?;
        Ok((self.state(q), a, self.state(r)))
    }

    pub fn build(self) -> Result<Opa> {
        Opa::new(
            self.alpha,
            self.names,
            self.initial,
            self.finals,
            self.push,
            self.shift,
            self.pop,
        )
    }
}

/// The value domain of [`summarize`]: a semiring with move weights.
pub(crate) trait Algebra {
    type V: Clone;
    fn add(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn mul(&self, x: &Self::V, y: &Self::V) -> Self::V;
    fn is_zero(&self, x: &Self::V) -> bool;
    fn weight(&self, m: &Move) -> Self::V;
}

/// Reachability: every move has value `true`.
struct Reach;

impl Algebra for Reach {
    type V = bool;
    fn add(&self, x: &bool, y: &bool) -> bool {
        *x || *y
    }
    fn mul(&self, x: &bool, y: &bool) -> bool {
        *x && *y
    }
    fn is_zero(&self, x: &bool) -> bool {
        !*x
    }
    fn weight(&self, _: &Move) -> bool {
        true
    }
}

type Matrix<V> = Vec<Vec<Option<V>>>;

fn accumulate<A: Algebra>(alg: &A, slot: &mut Option<A::V>, v: A::V) {
    *slot = Some(match slot.take() {
        Some(old) => alg.add(&old, &v),
        None => v,
    });
}

/// Sums over all accepting runs of `A` on `w` of the ordered products of
/// move values, per final state; empty if `w` is incompatible.
///
/// The precedence matrix fixes which move (push, shift or pop) every step of
/// a run makes, so runs differ only in their states. Each stack frame keeps
/// a matrix `M[p][q]`: the value of the run pieces since the frame was pushed
/// from state `p` that are now in state `q`. The bottom level is a single row
/// of start values, and a pop multiplies the popped matrix into the one below.
pub(crate) fn summarize<A: Algebra>(
    a: &Opa,
    w: &Word,
    alg: &A,
    starts: impl IntoIterator<Item = (State, A::V)>,
) -> Vec<(State, A::V)> {
    let n = a.num_states();
    let mut bottom = vec![None; n];
    for (q, v) in starts {
        accumulate(alg, &mut bottom[q.index()], v);
    }
    let mut levels: Vec<Matrix<A::V>> = vec![vec![bottom]];
    let mut symbols: Vec<Sym> = Vec::new();
    let mut pos = 1;
    loop {
        let top = symbols.last().map_or(Letter::Delim, |&s| Letter::Sym(s));
        let b = w.letter(pos);
        let cur = levels.last_mut().expect("bottom level");
        match (a.alpha.prec(top, b), b) {
            (Some(Prec::Yields), Letter::Sym(s)) => {
                let mut m = vec![vec![None; n]; n];
                for q in (0..n).filter(|&q| cur.iter().any(|row| row[q].is_some())) {
                    for &r in a.push_targets(State(q as u32), s) {
                        let v = alg.weight(&Move::Push {
                            from: State(q as u32),
                            sym: s,
                            to: r,
                        });
                        if !alg.is_zero(&v) {
                            m[q][r.index()] = Some(v);
                        }
                    }
                }
                levels.push(m);
                symbols.push(s);
                pos += 1;
            }
            (Some(Prec::Equal), Letter::Sym(s)) if !symbols.is_empty() => {
                let mut next = vec![vec![None; n]; cur.len()];
                for (p, row) in cur.iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        let Some(x) = x else { continue };
                        for &r in a.shift_targets(State(q as u32), s) {
                            let m = Move::Shift {
                                from: State(q as u32),
                                sym: s,
                                to: r,
                            };
                            let v = alg.mul(x, &alg.weight(&m));
                            if !alg.is_zero(&v) {
                                accumulate(alg, &mut next[p][r.index()], v);
                            }
                        }
                    }
                }
                *cur = next;
                *symbols.last_mut().expect("non-empty") = s;
                pos += 1;
            }
            (Some(Prec::Takes), _) if !symbols.is_empty() => {
                let popped = levels.pop().expect("frame");
                symbols.pop();
                // k[p][r]: from the push out of p, through the pop, into r
                let mut k: Matrix<A::V> = vec![vec![None; n]; n];
                for (p, row) in popped.iter().enumerate() {
                    for (q, x) in row.iter().enumerate() {
                        let Some(x) = x else { continue };
                        for &r in a.pop_targets(State(q as u32), State(p as u32)) {
                            let m = Move::Pop {
                                from: State(q as u32),
                                stack: State(p as u32),
                                to: r,
                            };
                            let v = alg.mul(x, &alg.weight(&m));
                            if !alg.is_zero(&v) {
                                accumulate(alg, &mut k[p][r.index()], v);
                            }
                        }
                    }
                }
                let lower = levels.last_mut().expect("bottom level");
                let mut next = vec![vec![None; n]; lower.len()];
                for (row, out) in lower.iter().zip(next.iter_mut()) {
                    for (p, x) in row.iter().enumerate() {
                        let Some(x) = x else { continue };
                        for (r, y) in k[p].iter().enumerate() {
                            let Some(y) = y else { continue };
                            let v = alg.mul(x, y);
                            if !alg.is_zero(&v) {
                                accumulate(alg, &mut out[r], v);
                            }
                        }
                    }
                }
                *lower = next;
            }
            (None, Letter::Delim) if symbols.is_empty() && pos == w.len() + 1 => {
                return cur[0]
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| a.finals.contains(&State(*q as u32)))
                    .filter_map(|(q, v)| v.clone().map(|v| (State(q as u32), v)))
                    .collect();
            }
            _ => return Vec::new(),
        }
        let live = levels
            .last()
            .expect("level")
            .iter()
            .flatten()
            .any(Option::is_some);
        if !live {
            return Vec::new();
        }
    }
}
