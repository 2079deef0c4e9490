//! Worked examples for each operation, on the reference fixtures.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use wopl::alphabet::{check_opm_preserving, pullback_opm, SymbolMap};
use wopl::constructions::{
    eliminate_pop_weights, from_nwa, hadamard, intersect_with_opl, nivat_decompose, project,
    scalar_left_multiply, sum, WeightedNwaBuilder,
};
use wopl::logic::{classify, Formula};
use wopl::opa::{Configuration, Opa, OpaBuilder, State};
use wopl::semiring::Law;
use wopl::series::{all_words, compatible_words};
use wopl::step::{PartitionCheck, StepFunction};
use wopl::{fixtures, Error, Letter, OpAlphabet, Prec, Semiring, Weight, WeightedOpa};

fn r(n: i64, d: i64) -> Weight {
    Weight::rational(n, d)
}

fn pairs(v: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    v.iter().copied().collect()
}

#[test]
fn semiring_arithmetic() {
    let q = Semiring::Rational;
    assert_eq!(q.add(&r(1, 2), &r(1, 2)).unwrap(), r(1, 1));
    assert_eq!(q.product([&r(1, 2), &r(2, 1)]).unwrap(), r(1, 1));
    assert_eq!(q.product([]).unwrap(), q.one());
    let mp = Semiring::MaxPlus;
    assert_eq!(
        mp.add(&mp.zero(), &Weight::max_plus(3)).unwrap(),
        Weight::max_plus(3)
    );
    let fl = Semiring::fin_lang("ab");
    let (a, b) = (Weight::lang(["a"]), Weight::lang(["b"]));
    assert_eq!(fl.add(&a, &b).unwrap(), Weight::lang(["a", "b"]));
    assert_eq!(fl.product([&a, &b, &a]).unwrap(), Weight::lang(["aba"]));
    assert!(matches!(
        q.add(&r(1, 1), &a),
        Err(Error::SemiringMismatch { .. })
    ));
}

#[test]
fn semiring_laws_on_samples() {
    let samples = [q0(), r(1, 1), r(1, 2), r(3, 1)];
    assert!(Semiring::Rational.check_laws(&samples, true).is_empty());
    let mp = Semiring::MaxPlus;
    assert!(mp
        .check_laws(&[mp.zero(), Weight::max_plus(0), Weight::max_plus(1)], true)
        .is_empty());
    let fl = Semiring::fin_lang("ab");
    let samples = [
        fl.zero(),
        fl.one(),
        Weight::lang(["a"]),
        Weight::lang(["b"]),
    ];
    assert!(fl.check_laws(&samples, false).is_empty());
    let report = fl.check_laws(&samples, true);
    assert!(
        report
            .violations_of(Law::MultiplicativeCommutativity)
            .count()
            > 0
    );
}

fn q0() -> Weight {
    r(0, 1)
}

#[test]
fn matrix_lookups() {
    let e = fixtures::expression_opm();
    assert_eq!(e.lookup("n", "(").unwrap(), None);
    let c = fixtures::call_opm();
    assert_eq!(c.lookup("call", "ret").unwrap(), Some(Prec::Equal));
    let call = c.sym("call").unwrap();
    assert_eq!(c.prec(Letter::Delim, Letter::Sym(call)), Some(Prec::Yields));
    assert_eq!(c.prec(Letter::Sym(call), Letter::Delim), Some(Prec::Takes));
    assert_eq!(c.prec(Letter::Delim, Letter::Delim), None);
}

#[test]
fn chain_sets() {
    let e = fixtures::expression_opm();
    assert_eq!(
        e.chains(&e.word("n + n").unwrap()),
        pairs(&[(0, 2), (2, 4), (0, 4)])
    );
    assert_eq!(e.chains(&e.word("n").unwrap()), pairs(&[(0, 2)]));
    let c = fixtures::call_opm();
    assert_eq!(c.chains(&c.word("call ret").unwrap()), pairs(&[(0, 3)]));
    assert!(e.is_compatible(&e.word("n + n").unwrap()));
    assert!(!e.is_compatible(&e.word(") (").unwrap()));
}

#[test]
fn complete_matrix_accepts_everything() {
    let v = fixtures::vpl_opm(&["c"], &["i"], &["r"]);
    assert!(v.is_complete());
    assert!(all_words(&v, 5).iter().all(|w| v.is_compatible(w)));
}

#[test]
fn opm_preserving_maps() {
    let e = Arc::new(fixtures::expression_opm());
    let id: BTreeMap<String, String> = e.names().iter().map(|a| (a.clone(), a.clone())).collect();
    assert!(check_opm_preserving(&id, &e, &e).unwrap());

    let c = Arc::new(fixtures::call_opm());
    let collapse: BTreeMap<String, String> = [("call", "ret"), ("ret", "ret"), ("int", "int")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert!(!check_opm_preserving(&collapse, &c, &c).unwrap());

    let h: BTreeMap<String, String> = [("c1", "call"), ("c2", "call")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let pulled = pullback_opm(&h, &c, &["c1".into(), "c2".into()]).unwrap();
    for a in ["c1", "c2"] {
        for b in ["c1", "c2"] {
            assert_eq!(pulled.lookup(a, b).unwrap(), Some(Prec::Yields));
        }
    }
}

#[test]
fn moves_and_runs() {
    let a = fixtures::expression_opa();
    let alpha = a.alphabet().clone();
    let w = alpha.word("n + n").unwrap();
    let succ = a.step(&Configuration::initial(State(0)), &w);
    assert_eq!(succ.len(), 1);
    assert_eq!(a.render_move(&succ[0].1), "push(0, n, 1)");
    assert_eq!(a.enumerate_runs(&w).unwrap().len(), 1);
    assert!(matches!(
        a.enumerate_runs(&alpha.word("n n").unwrap()),
        Err(Error::Incompatible(_))
    ));
    assert!(a.accepts(&alpha.word("n + n * ( n + n )").unwrap()));
    assert!(a.is_deterministic());

    let p = fixtures::policy();
    assert!(!p.base().is_deterministic());
    let w = p.alphabet().word("$ call $").unwrap();
    assert_eq!(p.base().enumerate_runs(&w).unwrap().len(), 1);

    let mut b = OpaBuilder::new(alpha.clone());
    b.initial("only");
    let empty = b.build().unwrap();
    assert!(empty.is_deterministic());
    assert!(!empty.accepts(&alpha.word("n").unwrap()));
}

#[test]
fn pop_with_exhausted_input() {
    let a = fixtures::penalty();
    let alpha = a.alphabet().clone();
    let w = alpha.word("call ret").unwrap();
    let after_push = a.base().step(&Configuration::initial(State(0)), &w);
    let after_shift = a.base().step(&after_push[0].0, &w);
    let last = a.base().step(&after_shift[0].0, &w);
    assert_eq!(last.len(), 1);
    assert_eq!(a.base().render_move(&last[0].1), "pop(q0, q0, q0)");
}

fn parenthesis_free(alpha: &Arc<OpAlphabet>) -> Opa {
    common::seen(alpha, "(", false)
}

#[test]
fn products_of_automata() {
    let a = fixtures::expression_opa();
    let alpha = a.alphabet().clone();
    let words = all_words(&alpha, 6);
    let aa = a.product(&a).unwrap();
    let au = a.product(&Opa::universal(alpha.clone())).unwrap();
    let free = parenthesis_free(&alpha);
    let af = a.product(&free).unwrap();
    for w in &words {
        assert_eq!(aa.accepts(w), a.accepts(w));
        assert_eq!(au.accepts(w), a.accepts(w));
        assert_eq!(
            af.accepts(w),
            a.accepts(w) && !alpha.render(w).contains('(')
        );
    }
}

#[test]
fn weighted_behaviors() {
    let p = fixtures::penalty();
    let ev = |text: &str| p.behavior(&p.alphabet().word(text).unwrap());
    assert_eq!(ev("call ret"), r(1, 1));
    assert_eq!(ev("call int"), r(1, 2));
    assert_eq!(ev("call call ret"), r(1, 2));

    let pol = fixtures::policy();
    let w = pol.alphabet().word("$ call ret $ call call $").unwrap();
    assert_eq!(pol.behavior(&w), Weight::max_plus(2));

    let s = fixtures::separation();
    let ev = |text: &str| s.behavior(&s.alphabet().word(text).unwrap());
    assert_eq!(ev("c c r"), Weight::lang(["aabaa"]));
    assert_eq!(ev("c r r"), Weight::lang(Vec::<String>::new()));

    assert!(p.is_restricted());
    assert!(!s.is_restricted());
}

#[test]
fn lifted_automata_count_and_decide() {
    let e = fixtures::expression_opa();
    let b = WeightedOpa::lift_boolean(&e);
    assert_eq!(
        b.behavior(&e.alphabet().word("n + n").unwrap()),
        Weight::Bool(true)
    );
    assert_eq!(
        b.behavior(&e.alphabet().word("n +").unwrap()),
        Weight::Bool(false)
    );

    let pol = fixtures::policy();
    let counted = WeightedOpa::lift(pol.base(), Semiring::Rational);
    for w in compatible_words(pol.alphabet(), 5) {
        let runs = pol.base().enumerate_runs(&w).unwrap().len() as i64;
        assert_eq!(counted.behavior(&w), r(runs, 1));
    }
}

fn first_symbol_parts(alpha: &Arc<OpAlphabet>) -> Vec<Opa> {
    // the first symbol read is the first push out of the initial state
    alpha
        .names()
        .iter()
        .map(|first| {
            let mut b = OpaBuilder::new(alpha.clone());
            b.initial("start").final_state("hit");
            b.state("miss");
            for a in alpha.names() {
                b.push("start", a, if a == first { "hit" } else { "miss" })
                    .unwrap();
                for q in ["hit", "miss"] {
                    b.push(q, a, q).unwrap();
                    b.shift(q, a, q).unwrap();
                }
            }
            for q in ["hit", "miss"] {
                for p in ["start", "hit", "miss"] {
                    b.pop(q, p, q);
                }
            }
            b.build().unwrap()
        })
        .collect()
}

#[test]
fn step_functions() {
    let alpha = Arc::new(fixtures::call_opm());
    let sr = Semiring::Rational;
    let words = compatible_words(&alpha, 5);

    let k = StepFunction::constant(alpha.clone(), sr.clone(), r(5, 1)).unwrap();
    assert!(words.iter().all(|w| k.eval(w) == r(5, 1)));

    let parts = first_symbol_parts(&alpha);
    let weights = [r(1, 1), r(2, 1), r(3, 1)];
    let f = StepFunction::new(
        alpha.clone(),
        sr.clone(),
        parts.iter().cloned().zip(weights.iter().cloned()).collect(),
    )
    .unwrap();
    assert_eq!(f.check_partition(5), PartitionCheck::Partition);
    assert_eq!(f.eval(&alpha.word("ret call").unwrap()), r(2, 1));

    let overlap = StepFunction::new(
        alpha.clone(),
        sr.clone(),
        vec![
            (Opa::universal(alpha.clone()), r(1, 1)),
            (parts[0].clone(), r(2, 1)),
        ],
    )
    .unwrap();
    let w = alpha.word("call").unwrap();
    assert_eq!(overlap.eval(&w), r(3, 1));
    assert!(matches!(
        overlap.check_partition(5),
        PartitionCheck::Violated { .. }
    ));

    let zero = StepFunction::constant(alpha.clone(), sr.clone(), sr.zero()).unwrap();
    let one = StepFunction::constant(alpha.clone(), sr.clone(), sr.one()).unwrap();
    let plus_zero = f.add(&zero).unwrap();
    let times_one = f.mul(&one).unwrap();
    let two_by_two = common_parity(&alpha, &sr)
        .mul(&common_parity(&alpha, &sr))
        .unwrap();
    assert_eq!(two_by_two.parts().len(), 4);
    let automaton = f.to_rwopa().unwrap();
    assert!(automaton.is_restricted());
    for w in &words {
        assert_eq!(plus_zero.eval(w), f.eval(w));
        assert_eq!(times_one.eval(w), f.eval(w));
        assert_eq!(automaton.behavior(w), f.eval(w));
    }
    let none = StepFunction::new(alpha.clone(), sr.clone(), Vec::new()).unwrap();
    let empty = none.to_rwopa().unwrap();
    assert!(words.iter().all(|w| empty.behavior(w) == sr.zero()));
}

fn common_parity(alpha: &Arc<OpAlphabet>, sr: &Semiring) -> StepFunction {
    StepFunction::new(
        alpha.clone(),
        sr.clone(),
        vec![
            (common::parity(alpha, true), r(2, 1)),
            (common::parity(alpha, false), r(3, 1)),
        ],
    )
    .unwrap()
}

#[test]
fn closure_examples() {
    let p = fixtures::penalty();
    let alpha = p.alphabet().clone();
    let w = alpha.word("call int").unwrap();
    let words = compatible_words(&alpha, 6);

    let pp = sum(&p, &p).unwrap();
    assert_eq!(pp.behavior(&w), r(1, 1));
    assert!(pp.is_restricted());
    let pe = sum(&p, &WeightedOpa::empty(alpha.clone(), Semiring::Rational)).unwrap();

    let all = intersect_with_opl(&p, &Opa::universal(alpha.clone())).unwrap();
    let no_int = intersect_with_opl(&p, &common::seen(&alpha, "int", false)).unwrap();
    assert_eq!(no_int.behavior(&w), r(0, 1));
    assert!(no_int.is_restricted());

    let sq = hadamard(&p, &p).unwrap();
    assert_eq!(sq.behavior(&w), r(1, 4));
    let u = WeightedOpa::lift_boolean(&Opa::universal(alpha.clone()));
    assert!(matches!(
        hadamard(&p, &u),
        Err(Error::SemiringMismatch { .. })
    ));
    let ones = WeightedOpa::lift(&Opa::universal(alpha.clone()), Semiring::Rational);
    let same = hadamard(&p, &ones).unwrap();
    assert!(matches!(
        hadamard(&fixtures::log(), &fixtures::log()),
        Err(Error::CommutativityRequired(_))
    ));

    let unchanged = scalar_left_multiply(&r(1, 1), &p).unwrap();
    let zeroed = scalar_left_multiply(&r(0, 1), &p).unwrap();
    let id = project(&p, &SymbolMap::identity(alpha.clone())).unwrap();
    assert!(id.is_restricted());
    for w in &words {
        for other in [&pe, &all, &same, &unchanged, &id] {
            assert_eq!(other.behavior(w), p.behavior(w), "{}", alpha.render(w));
        }
        assert_eq!(zeroed.behavior(w), r(0, 1));
    }

    let s = fixtures::separation();
    let b = scalar_left_multiply(&Weight::lang(["b"]), &s).unwrap();
    assert_eq!(
        b.behavior(&s.alphabet().word("c r").unwrap()),
        Weight::lang(["baba"])
    );
}

#[test]
fn projection_of_split_calls() {
    // c1 and c2 both behave like call, with different weights
    let c = Arc::new(fixtures::call_opm());
    let h: BTreeMap<String, String> = [
        ("c1", "call"),
        ("c2", "call"),
        ("ret", "ret"),
        ("int", "int"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    let symbols: Vec<String> = ["c1", "c2", "ret", "int"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let split = Arc::new(pullback_opm(&h, &c, &symbols).unwrap());
    let map = SymbolMap::new(split.clone(), c.clone(), &h).unwrap();
    let mut b = wopl::wopa::WeightedOpaBuilder::new(split.clone(), Semiring::Rational);
    b.initial("q0").final_state("q0");
    b.push("q0", "c1", "q0", r(1, 2)).unwrap();
    b.push("q0", "c2", "q0", r(1, 3)).unwrap();
    b.push("q0", "int", "q0", r(1, 1)).unwrap();
    b.shift("q0", "ret", "q0", r(2, 1)).unwrap();
    b.pop("q0", "q0", "q0", r(1, 1)).unwrap();
    let a = b.build().unwrap();
    let p = project(&a, &map).unwrap();
    assert_eq!(p.behavior(&c.word("call").unwrap()), r(5, 6));
    for v in compatible_words(&c, 4) {
        let expected = common::preimage_sum(&map, &Semiring::Rational, &v, |w| a.behavior(w));
        assert_eq!(p.behavior(&v), expected);
    }
}

#[test]
fn pop_weight_elimination() {
    let p = fixtures::penalty();
    let alpha = p.alphabet().clone();
    let mut b = wopl::wopa::WeightedOpaBuilder::new(alpha.clone(), Semiring::Rational);
    b.initial("q0").final_state("q0");
    b.push("q0", "call", "q0", r(1, 1)).unwrap();
    b.push("q0", "int", "q0", r(1, 1)).unwrap();
    b.shift("q0", "ret", "q0", r(1, 1)).unwrap();
    b.pop("q0", "q0", "q0", r(1, 1)).unwrap();
    // a pop closing a call without a return costs 1/2: the pop reads the state only,
    // so the variant halves every pop and doubles returns instead
    let moved = {
        let mut m = wopl::wopa::WeightedOpaBuilder::new(alpha.clone(), Semiring::Rational);
        m.initial("q0").final_state("q0");
        m.push("q0", "call", "q0", r(1, 1)).unwrap();
        m.push("q0", "int", "q0", r(2, 1)).unwrap();
        m.shift("q0", "ret", "q0", r(2, 1)).unwrap();
        m.pop("q0", "q0", "q0", r(1, 2)).unwrap();
        m.build().unwrap()
    };
    let from_penalty = eliminate_pop_weights(&p).unwrap();
    let from_moved = eliminate_pop_weights(&moved).unwrap();
    assert!(from_moved.is_restricted());
    for w in compatible_words(&alpha, 6) {
        assert_eq!(from_penalty.behavior(&w), p.behavior(&w));
        assert_eq!(from_moved.behavior(&w), moved.behavior(&w));
        assert_eq!(from_moved.count_runs(&w), moved.count_runs(&w));
    }
    assert!(matches!(
        eliminate_pop_weights(&fixtures::separation()),
        Err(Error::CommutativityRequired(_))
    ));
}

#[test]
fn nested_word_embedding() {
    let mut b =
        WeightedNwaBuilder::new(&["c"], &["a"], &["r"], Semiring::fin_lang("wxyz")).unwrap();
    b.initial("q0").final_state("q4");
    b.int("q0", "a", "q1", Weight::lang(["w"])).unwrap();
    b.call("q1", "c", "q2", Weight::lang(["x"])).unwrap();
    b.int("q2", "a", "q3", Weight::lang(["y"])).unwrap();
    b.ret("q3", "q1", "r", "q4", Weight::lang(["z"])).unwrap();
    let n = b.build();
    let w = n.alphabet().word("a c a r").unwrap();
    assert_eq!(n.behavior(&w).unwrap(), Weight::lang(["wxyz"]));
    let o = from_nwa(&n).unwrap();
    assert!(o.is_restricted());
    assert_eq!(o.behavior(&w), Weight::lang(["wxyz"]));
    let run = &o.base().enumerate_runs(&w).unwrap()[0];
    let moves: Vec<String> = run.iter().map(|m| o.base().render_move(m)).collect();
    let shift = moves.iter().position(|m| m.starts_with("shift")).unwrap();
    assert!(moves[shift + 1].starts_with("pop"));
    assert!(matches!(
        n.behavior(&n.alphabet().word("r").unwrap()),
        Err(Error::UnsupportedWord(_))
    ));

    let mut single = WeightedNwaBuilder::new(&["c"], &["a"], &["r"], Semiring::Rational).unwrap();
    single.initial("s").final_state("t");
    single.int("s", "a", "t", r(7, 1)).unwrap();
    let single = single.build();
    assert_eq!(
        single
            .behavior(&single.alphabet().word("a").unwrap())
            .unwrap(),
        r(7, 1)
    );

    let mut internal =
        WeightedNwaBuilder::new(&["c"], &["a", "b"], &["r"], Semiring::Rational).unwrap();
    internal.initial("s").final_state("s").final_state("t");
    internal.int("s", "a", "t", r(2, 1)).unwrap();
    internal.int("t", "b", "s", r(3, 1)).unwrap();
    internal.int("t", "a", "t", r(1, 2)).unwrap();
    let internal = internal.build();
    let embedded = from_nwa(&internal).unwrap();
    let mut no_final = WeightedNwaBuilder::new(&["c"], &["a"], &["r"], Semiring::Rational).unwrap();
    no_final.initial("s");
    no_final.int("s", "a", "s", r(1, 1)).unwrap();
    let no_final = from_nwa(&no_final.build()).unwrap();
    for w in all_words(internal.alphabet(), 6) {
        if internal.is_well_matched(&w) {
            assert_eq!(embedded.behavior(&w), internal.behavior(&w).unwrap());
        }
        assert_eq!(no_final.behavior(&w), r(0, 1));
    }
}

#[test]
fn nivat_examples() {
    let p = fixtures::penalty();
    let d = nivat_decompose(&p).unwrap();
    assert_eq!(d.map.source().len(), 3);
    assert!(d.map.is_opm_preserving());
    assert_eq!(d.one_state.base().num_states(), 1);
    assert_eq!(
        d.recompose(&p.alphabet().word("call int").unwrap()),
        r(1, 2)
    );
    for w in compatible_words(p.alphabet(), 5) {
        assert_eq!(d.recompose(&w), p.behavior(&w));
    }
    assert!(matches!(
        nivat_decompose(&fixtures::separation()),
        Err(Error::RestrictedRequired)
    ));

    let empty = WeightedOpa::empty(p.alphabet().clone(), Semiring::Rational);
    let d = nivat_decompose(&empty).unwrap();
    assert!(compatible_words(p.alphabet(), 4)
        .iter()
        .all(|w| d.recompose(w) == r(0, 1)));
}

#[test]
fn formula_fragments() {
    let c = classify(&fixtures::policy_formula(), &Semiring::MaxPlus);
    assert!(c.is_restricted);
    let k = || Formula::constant(r(2, 1));
    let nested = Formula::prod1("x", Formula::prod1("y", k()));
    assert!(!classify(&nested, &Semiring::Rational).is_prod_restricted);
    let beta = Formula::exists1("y", Formula::chain("x", "y"));
    let c = classify(&beta, &Semiring::Rational);
    assert!(c.is_boolean && c.is_almost_boolean && c.is_restricted);
    assert!(c.constants.is_empty());
}
