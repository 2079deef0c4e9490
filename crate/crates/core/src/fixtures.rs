//! Reference alphabets, automata and formulas: arithmetic expressions, the
//! call/return penalty and policy automata, the logging automaton, the `cⁿr`
//! witness, the visibly pushdown matrix, and a sentence for the policy automaton.

use std::sync::Arc;

use crate::alphabet::{OpAlphabet, Prec};
use crate::logic::Formula;
use crate::opa::{Opa, OpaBuilder};
use crate::semiring::{Semiring, Weight};
use crate::wopa::{WeightedOpa, WeightedOpaBuilder};

use Prec::{Equal as Eq, Takes as Gt, Yields as Lt};

/// Matrix of the expression grammar `E → E + T | T, T → T * F | F, F → n | ( E )`.
///
/// `*` stands for the multiplication operator.
pub fn expression_opm() -> OpAlphabet {
    let rows: [(&str, [Option<Prec>; 5]); 5] = [
        ("+", [Some(Gt), Some(Lt), Some(Lt), Some(Gt), Some(Lt)]),
        ("*", [Some(Gt), Some(Gt), Some(Lt), Some(Gt), Some(Lt)]),
        ("(", [Some(Lt), Some(Lt), Some(Lt), Some(Eq), Some(Lt)]),
        (")", [Some(Gt), Some(Gt), None, Some(Gt), None]),
        ("n", [Some(Gt), Some(Gt), None, Some(Gt), None]),
    ];
    let cols = ["+", "*", "(", ")", "n"];
    let entries = rows.iter().flat_map(|(a, row)| {
        cols.iter()
            .zip(row)
            .filter_map(move |(b, p)| p.map(|p| (*a, *b, p)))
    });
    OpAlphabet::from_table(cols, entries).expect("expression matrix")
}

/// `call ⋖ call`, `call ≐ ret`, `call ⋗ int`, `int ⋖ int`, `int ⋗ call`, `ret ⋗ *`.
pub fn call_opm() -> OpAlphabet {
    OpAlphabet::from_table(["call", "ret", "int"], call_entries()).expect("call matrix")
}

fn call_entries() -> Vec<(&'static str, &'static str, Prec)> {
    vec![
        ("call", "call", Lt),
        ("call", "ret", Eq),
        ("call", "int", Gt),
        ("int", "int", Lt),
        ("int", "call", Gt),
        ("ret", "call", Gt),
        ("ret", "ret", Gt),
        ("ret", "int", Gt),
    ]
}

/// [`call_opm`] extended with `$`: `a ⋖ $` and `$ ⋗ a` for the other symbols,
/// and `$ ⋗ $`.
pub fn policy_opm() -> OpAlphabet {
    let mut entries = call_entries();
    for a in ["call", "ret", "int"] {
        entries.push((a, "$", Lt));
        entries.push(("$", a, Gt));
    }
    entries.push(("$", "$", Gt));
    OpAlphabet::from_table(["call", "ret", "int", "$"], entries).expect("policy matrix")
}

/// The complete matrix embedding visibly pushdown alphabets.
pub fn vpl_opm(calls: &[&str], ints: &[&str], rets: &[&str]) -> OpAlphabet {
    let mut entries = Vec::new();
    for &c in calls {
        for &b in calls.iter().chain(ints) {
            entries.push((c, b, Lt));
        }
        for &r in rets {
            entries.push((c, r, Eq));
        }
    }
    for &a in ints.iter().chain(rets) {
        for &b in calls.iter().chain(ints).chain(rets) {
            entries.push((a, b, Gt));
        }
    }
    let symbols = calls.iter().chain(ints).chain(rets).copied();
    OpAlphabet::from_table(symbols, entries).expect("visibly pushdown matrix")
}

/// `c ⋖ c`, `c ≐ r`.
pub fn separation_opm() -> OpAlphabet {
    OpAlphabet::from_table(["c", "r"], [("c", "c", Lt), ("c", "r", Eq)]).expect("c/r matrix")
}

/// Deterministic automaton for arithmetic expressions.
pub fn expression_opa() -> Opa {
    let mut b = OpaBuilder::new(Arc::new(expression_opm()));
    for q in ["0", "1", "2", "3"] {
        b.state(q);
    }
    b.initial("0").final_state("1").final_state("3");
    let push = [
        ("0", "n", "1"),
        ("0", "(", "2"),
        ("1", "+", "0"),
        ("1", "*", "0"),
        ("2", "n", "3"),
        ("2", "(", "2"),
        ("3", "+", "2"),
        ("3", "*", "2"),
    ];
    for (q, a, r) in push {
        b.push(q, a, r).expect("symbol");
    }
    b.shift("3", ")", "3").expect("symbol");
    b.pop("1", "0", "1").pop("1", "1", "1");
    for p in ["0", "1", "2", "3"] {
        b.pop("3", p, "3");
    }
    b.build().expect("expression automaton")
}

/// One state; calls weigh `1/2`, returns `2`, interrupts and pops `1`.
pub fn penalty() -> WeightedOpa {
    let r = Weight::rational;
    let mut b = WeightedOpaBuilder::new(Arc::new(call_opm()), Semiring::Rational);
    b.initial("q0").final_state("q0");
    b.push("q0", "call", "q0", r(1, 2)).unwrap();
    b.push("q0", "int", "q0", r(1, 1)).unwrap();
    b.shift("q0", "ret", "q0", r(2, 1)).unwrap();
    b.pop("q0", "q0", "q0", r(1, 1)).unwrap();
    b.build().expect("penalty automaton")
}

/// Max-plus automaton: `q1` marks the single penalised interval between two `$`.
pub fn policy() -> WeightedOpa {
    let w = Weight::max_plus;
    let mut b = WeightedOpaBuilder::new(Arc::new(policy_opm()), Semiring::MaxPlus);
    for q in ["q0", "q1", "q2"] {
        b.state(q);
    }
    b.initial("q0").final_state("q2");
    for a in ["$", "int", "call"] {
        b.push("q0", a, "q0", w(0)).unwrap();
    }
    b.shift("q0", "ret", "q0", w(0)).unwrap();
    b.pop("q0", "q0", "q0", w(0)).unwrap();
    b.push("q0", "$", "q1", w(0)).unwrap();

    b.push("q1", "call", "q1", w(1)).unwrap();
    b.shift("q1", "ret", "q1", w(-1)).unwrap();
    b.push("q1", "int", "q1", w(0)).unwrap();
    b.pop("q1", "q0", "q1", w(0)).unwrap();
    b.pop("q1", "q1", "q1", w(0)).unwrap();
    b.push("q1", "$", "q2", w(0)).unwrap();

    for a in ["$", "call", "int"] {
        b.push("q2", a, "q2", w(0)).unwrap();
    }
    b.shift("q2", "ret", "q2", w(0)).unwrap();
    for p in ["q0", "q1", "q2"] {
        b.pop("q2", p, "q2", w(0)).unwrap();
    }
    b.build().expect("policy automaton")
}

/// Finite-language automaton writing either a full or an interrupt-only log.
pub fn log() -> WeightedOpa {
    let l = |s: &str| Weight::lang([s]);
    let mut b = WeightedOpaBuilder::new(Arc::new(call_opm()), Semiring::fin_lang("crpi"));
    b.initial("q0").final_state("q0").final_state("q1");
    b.push("q0", "call", "q0", l("c")).unwrap();
    b.push("q0", "int", "q0", l("i")).unwrap();
    b.shift("q0", "ret", "q0", l("r")).unwrap();
    b.pop("q0", "q0", "q0", l("p")).unwrap();
    b.push("q0", "call", "q1", l("")).unwrap();

    b.push("q1", "call", "q0", l("")).unwrap();
    b.push("q1", "call", "q1", l("")).unwrap();
    b.push("q1", "int", "q1", l("i")).unwrap();
    b.shift("q1", "ret", "q1", l("")).unwrap();
    b.pop("q1", "q0", "q1", l("")).unwrap();
    b.pop("q1", "q1", "q1", l("")).unwrap();
    b.build().expect("log automaton")
}

/// Recognizes `cⁿr ↦ {aⁿbaⁿ}` using a weighted pop; not restricted.
pub fn separation() -> WeightedOpa {
    let l = |s: &str| Weight::lang([s]);
    let mut b = WeightedOpaBuilder::new(Arc::new(separation_opm()), Semiring::fin_lang("ab"));
    b.initial("q0").final_state("q1");
    b.push("q0", "c", "q0", l("a")).unwrap();
    b.shift("q0", "r", "q1", l("b")).unwrap();
    b.pop("q1", "q0", "q1", l("a")).unwrap();
    b.build().expect("separation automaton")
}

/// One state over `{a}` with `a ⋖ a`; every push weighs `1/2`.
pub fn halving() -> WeightedOpa {
    let alpha = OpAlphabet::from_table(["a"], [("a", "a", Lt)]).expect("matrix");
    let mut b = WeightedOpaBuilder::new(Arc::new(alpha), Semiring::Rational);
    b.initial("q").final_state("q");
    b.push("q", "a", "q", Weight::rational(1, 2)).unwrap();
    b.pop("q", "q", "q", Weight::integer(1)).unwrap();
    b.build().expect("halving automaton")
}

/// The sentence `χ = ⊕_{X0} ⊕_{X1} ⊕_{X2} ∏_x (β ⊗ φ02 ⊗ φ1)` over the policy
/// matrix in the max-plus semiring, transcribed as stated.
///
/// `X1` is meant to be the penalized interval between two `$`, `X0` and `X2`
/// the parts before and after it.
pub fn policy_formula() -> Formula {
    let w = |n| Formula::constant(Weight::max_plus(n));
    let dollars = |y: &str, z: &str| Formula::and(Formula::lab("$", y), Formula::lab("$", z));
    let witnesses = |cond: Formula| {
        Formula::exists1(
            "y",
            Formula::exists1("z", Formula::and(cond, dollars("y", "z"))),
        )
    };
    let neq = |x: &str, y: &str| Formula::not(Formula::eq(x, y));
    let in_x0 = Formula::iff(
        Formula::member("x", "X0"),
        witnesses(Formula::and(Formula::lt("x", "y"), Formula::lt("x", "z"))),
    );
    let in_x1 = Formula::iff(
        Formula::member("x", "X1"),
        witnesses(Formula::big_and(vec![
            Formula::le("y", "x"),
            Formula::le("x", "z"),
            Formula::implies(
                Formula::and(neq("x", "y"), neq("x", "z")),
                Formula::not(Formula::lab("$", "x")),
            ),
        ])),
    );
    let in_x2 = Formula::iff(
        Formula::member("x", "X2"),
        witnesses(Formula::and(Formula::lt("y", "x"), Formula::lt("z", "x"))),
    );
    let beta = Formula::and(Formula::and(in_x0, in_x1), in_x2);

    let labelled = Formula::or(
        Formula::or(Formula::lab("call", "x"), Formula::lab("ret", "x")),
        Formula::lab("int", "x"),
    );
    let outside = Formula::or(Formula::member("x", "X0"), Formula::member("x", "X2"));
    let phi02 = Formula::oplus(Formula::not(Formula::and(outside, labelled)), w(0));
    let inside = |a: &str| {
        Formula::not(Formula::and(
            Formula::member("x", "X1"),
            Formula::lab(a, "x"),
        ))
    };
    let phi1 = Formula::otimes(
        Formula::otimes(
            Formula::otimes(
                Formula::oplus(inside("call"), w(1)),
                Formula::oplus(inside("ret"), w(-1)),
            ),
            Formula::oplus(inside("int"), w(0)),
        ),
        Formula::oplus(Formula::not(Formula::lab("$", "x")), w(0)),
    );
    let psi = Formula::prod1("x", Formula::otimes(Formula::otimes(beta, phi02), phi1));
    Formula::sum2("X0", Formula::sum2("X1", Formula::sum2("X2", psi)))
}
