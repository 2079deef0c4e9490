//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::Rng;
use wopl::alphabet::SymbolMap;
use wopl::constructions::{WeightedNwa, WeightedNwaBuilder};
use wopl::opa::{Opa, PopTriple, Triple};
use wopl::{Letter, OpAlphabet, Prec, Semiring, State, Sym, Weight, WeightedOpa, Word};

pub fn names(alpha: &OpAlphabet, w: &Word) -> Vec<String> {
    w.symbols()
        .iter()
        .map(|&s| alpha.name(s).to_string())
        .collect()
}

/// Chains found by an operator precedence parser, or `None` if the parse fails.
///
/// The stack holds positions of `#w#`; on `⋗` the maximal `≐`-run on top is
/// reduced and the chain from the position below it to the lookahead recorded.
pub fn parser_chains(alpha: &OpAlphabet, w: &Word) -> Option<BTreeSet<(usize, usize)>> {
    let n = w.len();
    let rel = |i: usize, j: usize| alpha.prec(w.letter(i), w.letter(j));
    let mut stack = vec![0usize];
    let mut chains = BTreeSet::new();
    let mut j = 1;
    while j <= n + 1 {
        let top = *stack.last().unwrap();
        if j == n + 1 && top == 0 {
            break;
        }
        match rel(top, j) {
            Some(Prec::Yields) | Some(Prec::Equal) => {
                stack.push(j);
                j += 1;
            }
            Some(Prec::Takes) => {
                let mut popped = stack.pop().unwrap();
                while rel(*stack.last()?, popped) == Some(Prec::Equal) {
                    popped = stack.pop().unwrap();
                }
                let below = *stack.last()?;
                if rel(below, popped) != Some(Prec::Yields) {
                    return None;
                }
                chains.insert((below, j));
            }
            None => return None,
        }
    }
    chains.contains(&(0, n + 1)).then_some(chains)
}

/// Calls never answered by a return: a return answers the latest open call,
/// an interrupt discards every open call.
pub fn pending_calls(word: &[String]) -> u32 {
    let (mut open, mut discarded) = (0u32, 0u32);
    for s in word {
        match s.as_str() {
            "call" => open += 1,
            "ret" => open = open.saturating_sub(1),
            "int" => {
                discarded += open;
                open = 0;
            }
            _ => {}
        }
    }
    open + discarded
}

/// Largest `#call − #ret` over the stretches between two consecutive `$`.
pub fn interval_scan(word: &[String]) -> Option<i64> {
    let dollars: Vec<usize> = (0..word.len()).filter(|&i| word[i] == "$").collect();
    dollars
        .windows(2)
        .map(|d| {
            word[d[0] + 1..d[1]]
                .iter()
                .map(|s| match s.as_str() {
                    "call" => 1,
                    "ret" => -1,
                    _ => 0,
                })
                .sum()
        })
        .max()
}

/// `Σ_{h(w) = v} f(w)`, enumerating the preimages position by position.
pub fn preimage_sum(h: &SymbolMap, sr: &Semiring, v: &Word, f: impl Fn(&Word) -> Weight) -> Weight {
    let mut words: Vec<Vec<Sym>> = vec![Vec::new()];
    for &b in v.symbols() {
        let fiber = h.fiber(b);
        words = words
            .into_iter()
            .flat_map(|w| {
                fiber.iter().map(move |&a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    words
        .into_iter()
        .filter_map(Word::new)
        .fold(sr.zero(), |acc, w| sr.add(&acc, &f(&w)).unwrap())
}

/// A handful of small elements of `sr`.
pub fn sample_weights(sr: &Semiring) -> Vec<Weight> {
    match sr {
        Semiring::Boolean => vec![Weight::Bool(true)],
        Semiring::Rational => vec![
            Weight::rational(1, 2),
            Weight::integer(1),
            Weight::integer(2),
            Weight::integer(3),
            Weight::integer(-1),
            Weight::rational(2, 3),
        ],
        Semiring::MaxPlus => (-2..=3).map(Weight::max_plus).collect(),
        Semiring::MinPlus => (-2..=3).map(Weight::min_plus).collect(),
        Semiring::FinLang(letters) => {
            let mut it = letters.letters().map(String::from);
            let x = it.next().unwrap_or_default();
            let y = it.next().unwrap_or_else(|| x.clone());
            vec![
                Weight::lang([x.clone()]),
                Weight::lang([y.clone()]),
                Weight::lang([String::new(), x.clone()]),
                Weight::lang([format!("{x}{y}")]),
                Weight::lang([""]),
            ]
        }
    }
}

fn pick<T: Clone>(rng: &mut StdRng, xs: &[T]) -> T {
    xs[rng.gen_range(0..xs.len())].clone()
}

/// A random automaton with at most `max_states` states; every possible
/// transition is present with probability `density`.
pub fn random_wopa(
    rng: &mut StdRng,
    alpha: &Arc<OpAlphabet>,
    sr: &Semiring,
    max_states: usize,
    density: f64,
) -> WeightedOpa {
    let n = rng.gen_range(1..=max_states);
    let states: Vec<State> = (0..n as u32).map(State).collect();
    let names = (0..n).map(|i| format!("q{i}")).collect();
    let weights = sample_weights(sr);
    let mut initial: BTreeSet<State> = states
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    initial.insert(State(0));
    let finals = states
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    let mut push: BTreeMap<Triple, Weight> = BTreeMap::new();
    let mut shift: BTreeMap<Triple, Weight> = BTreeMap::new();
    let mut pop: BTreeMap<PopTriple, Weight> = BTreeMap::new();
    for &p in &states {
        for a in alpha.symbols() {
            for &q in &states {
                if rng.gen_bool(density) {
                    push.insert((p, a, q), pick(rng, &weights));
                }
                if rng.gen_bool(density) {
                    shift.insert((p, a, q), pick(rng, &weights));
                }
            }
        }
        for &q in &states {
            for &r in &states {
                if rng.gen_bool(density) {
                    pop.insert((p, q, r), pick(rng, &weights));
                }
            }
        }
    }
    WeightedOpa::from_parts(
        alpha.clone(),
        sr.clone(),
        names,
        initial,
        finals,
        push,
        shift,
        pop,
    )
    .expect("random automaton")
}

/// A random weighted nested word automaton over calls `c`, `d`, internal `i`
/// and return `r`.
pub fn random_nwa(rng: &mut StdRng, sr: &Semiring, max_states: usize, density: f64) -> WeightedNwa {
    let mut b = WeightedNwaBuilder::new(&["c", "d"], &["i"], &["r"], sr.clone()).unwrap();
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let weights = sample_weights(sr);
    for q in &names {
        b.state(q);
    }
    b.initial("s0");
    for q in &names {
        if rng.gen_bool(0.3) {
            b.initial(q);
        }
        if rng.gen_bool(0.6) {
            b.final_state(q);
        }
    }
    for q in &names {
        for r in &names {
            for c in ["c", "d"] {
                if rng.gen_bool(density) {
                    b.call(q, c, r, pick(rng, &weights)).unwrap();
                }
            }
            if rng.gen_bool(density) {
                b.int(q, "i", r, pick(rng, &weights)).unwrap();
            }
            for p in &names {
                if rng.gen_bool(density) {
                    b.ret(q, p, "r", r, pick(rng, &weights)).unwrap();
                }
            }
        }
    }
    b.build()
}

/// `alpha` extended by a primed copy `a'` of every symbol with the relations
/// of the original, and the map `a' ↦ a`.
pub fn doubled(alpha: &Arc<OpAlphabet>) -> SymbolMap {
    let mut h = BTreeMap::new();
    for name in alpha.names() {
        h.insert(name.clone(), name.clone());
        h.insert(format!("{name}'"), name.clone());
    }
    let symbols: Vec<String> = h.keys().cloned().collect();
    let source = wopl::alphabet::pullback_opm(&h, alpha, &symbols).unwrap();
    SymbolMap::new(Arc::new(source), alpha.clone(), &h).unwrap()
}

/// `a` lifted along `h`: every transition reading `h(a′)` is copied for `a′`,
/// with the weight multiplied by `k` when `a′` is primed.
pub fn pull_back_automaton(a: &WeightedOpa, h: &SymbolMap, k: &Weight) -> WeightedOpa {
    let sr = a.semiring();
    let src = h.source();
    let mut push = BTreeMap::new();
    let mut shift = BTreeMap::new();
    for s in src.symbols() {
        let t = h.apply(s);
        let primed = src.name(s).ends_with('\'');
        let w = |x: &Weight| {
            if primed {
                sr.mul(x, k).unwrap()
            } else {
                x.clone()
            }
        };
        for (&(p, b, q), x) in a.wt_push() {
            if b == t {
                push.insert((p, s, q), w(x));
            }
        }
        for (&(p, b, q), x) in a.wt_shift() {
            if b == t {
                shift.insert((p, s, q), w(x));
            }
        }
    }
    WeightedOpa::from_parts(
        src.clone(),
        sr.clone(),
        a.base().state_names().to_vec(),
        a.base().initial().clone(),
        a.base().finals().clone(),
        push,
        shift,
        a.wt_pop().clone(),
    )
    .unwrap()
}

pub fn letter_is(alpha: &OpAlphabet, w: &Word, i: usize, name: &str) -> bool {
    match w.letter(i) {
        Letter::Delim => name == "#",
        Letter::Sym(s) => alpha.name(s) == name,
    }
}

pub fn sym(alpha: &OpAlphabet, name: &str) -> Sym {
    alpha.sym(name).unwrap()
}

/// Deterministic automaton tracking whether `sym` occurred; accepts iff
/// the answer is `seen`.
pub fn seen(alpha: &Arc<OpAlphabet>, sym: &str, seen: bool) -> Opa {
    let mut b = wopl::opa::OpaBuilder::new(alpha.clone());
    b.initial("no").final_state(if seen { "yes" } else { "no" });
    b.state("yes");
    for a in alpha.names() {
        let hit = if a == sym { "yes" } else { "no" };
        b.push("no", a, hit).unwrap();
        b.shift("no", a, hit).unwrap();
        b.push("yes", a, "yes").unwrap();
        b.shift("yes", a, "yes").unwrap();
    }
    for q in ["no", "yes"] {
        for p in ["no", "yes"] {
            b.pop(q, p, q);
        }
    }
    b.build().unwrap()
}

/// Deterministic automaton accepting the words whose length has parity `odd`.
pub fn parity(alpha: &Arc<OpAlphabet>, odd: bool) -> Opa {
    let mut b = wopl::opa::OpaBuilder::new(alpha.clone());
    b.initial("e").final_state(if odd { "o" } else { "e" });
    b.state("o");
    for a in alpha.names() {
        for (from, to) in [("e", "o"), ("o", "e")] {
            b.push(from, a, to).unwrap();
            b.shift(from, a, to).unwrap();
        }
    }
    for q in ["e", "o"] {
        for p in ["e", "o"] {
            b.pop(q, p, q);
        }
    }
    b.build().unwrap()
}
