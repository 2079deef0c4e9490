//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wopl::alphabet::SymbolMap;
use wopl::constructions::{
    eliminate_pop_weights, from_nwa, hadamard, intersect_with_opl, nivat_decompose, project,
    scalar_left_multiply, sum,
};
use wopl::logic::{
    automaton_to_formula, bool_eval, classify, consistency_check, mso_eval, Assignment, Evaluator,
    Formula, VarKind,
};
use wopl::opa::Opa;
use wopl::series::{all_words, compatible_words, map_words, Exec};
use wopl::step::{PartitionCheck, StepFunction};
use wopl::{fixtures, Error, OpAlphabet, Semiring, Weight, WeightedOpa, Word};

type Outcome = Result<String, String>;

fn show(alpha: &OpAlphabet, w: &Word) -> String {
    format!("\"{}\"", alpha.render(w))
}

/// Fails with the first word where `check` returns a message.
fn all_ok<F>(words: &[Word], check: F) -> std::result::Result<(), String>
where
    F: Fn(&Word) -> Option<String> + Sync + Send,
{
    match map_words(words, Exec::default(), check)
        .into_iter()
        .flatten()
        .next()
    {
        Some(msg) => Err(msg),
        None => Ok(()),
    }
}

fn pow_half(k: u32) -> Weight {
    Weight::rational(1, 1i64 << k)
}

fn criterion_1() -> Outcome {
    let a = fixtures::penalty();
    let alpha = a.alphabet().clone();
    let words = compatible_words(&alpha, 8);
    let results = map_words(&words, Exec::default(), |w| {
        let expected = pow_half(common::pending_calls(&common::names(&alpha, w)));
        let got = a.behavior(w);
        (got != expected).then(|| (w.clone(), got, expected))
    });
    let bad: Vec<_> = results.into_iter().flatten().collect();
    if bad.is_empty() {
        return Ok(format!("{} compatible words", words.len()));
    }
    // a return with no open call has no transition to read it
    let unanswered = |w: &Word| {
        let mut open = 0i64;
        common::names(&alpha, w).iter().any(|s| match s.as_str() {
            "call" => {
                open += 1;
                false
            }
            "ret" if open == 0 => true,
            "ret" => {
                open -= 1;
                false
            }
            _ => {
                open = 0;
                false
            }
        })
    };
    let explained = bad.iter().filter(|(w, _, _)| unanswered(w)).count();
    let (w, got, expected) = &bad[0];
    Err(format!(
        "{} of {} words differ, first {} automaton {} closed form {}; {} of the differing words read a return with no open call",
        bad.len(),
        words.len(),
        show(&alpha, w),
        got,
        expected,
        explained
    ))
}

fn criterion_2() -> Outcome {
    let a = fixtures::policy();
    let alpha = a.alphabet().clone();
    let words: Vec<Word> = compatible_words(&alpha, 8)
        .into_iter()
        .filter(|w| {
            common::names(&alpha, w)
                .iter()
                .filter(|s| *s == "$")
                .count()
                >= 2
        })
        .collect();
    let results = map_words(&words, Exec::default(), |w| {
        let merged = a.behavior(w);
        let runs = a.behavior_by_runs(w).expect("compatible");
        let oracle = match common::interval_scan(&common::names(&alpha, w)) {
            Some(k) => Weight::max_plus(k),
            None => Semiring::MaxPlus.zero(),
        };
        (merged, runs, oracle)
    });
    if let Some((w, (m, r, _))) = words.iter().zip(&results).find(|(_, (m, r, _))| m != r) {
        return Err(format!(
            "summary evaluation {} differs from run enumeration {} on {}",
            m,
            r,
            show(&alpha, w)
        ));
    }
    let findings: Vec<_> = words
        .iter()
        .zip(&results)
        .filter(|(_, (_, r, o))| r != o)
        .collect();
    let mut detail = format!(
        "{} words, behavior = run enumeration everywhere; interval-scan oracle agrees on {}",
        words.len(),
        words.len() - findings.len()
    );
    if let Some((w, (_, r, o))) = findings.first() {
        let no_run = findings
            .iter()
            .filter(|(_, (_, r, _))| Semiring::MaxPlus.is_zero(r))
            .count();
        detail.push_str(&format!(
            "; finding against the oracle on {} words ({} of them without accepting run), first {} automaton {} oracle {}",
            findings.len(),
            no_run,
            show(&alpha, w),
            r,
            o
        ));
    }
    Ok(detail)
}

fn criterion_3() -> Outcome {
    let a = fixtures::separation();
    let alpha = a.alphabet().clone();
    let words = all_words(&alpha, 7);
    let expected = |w: &Word| {
        let s = common::names(&alpha, w);
        let n = s.len() - 1;
        if s[n] == "r" && s[..n].iter().all(|x| x == "c") {
            Weight::lang([format!("{}b{}", "a".repeat(n), "a".repeat(n))])
        } else {
            Weight::lang(Vec::<String>::new())
        }
    };
    let bad: Vec<_> = words
        .iter()
        .filter_map(|w| {
            let (got, want) = (a.behavior(w), expected(w));
            (got != want).then(|| format!("{} gives {} expected {}", show(&alpha, w), got, want))
        })
        .collect();
    if bad.is_empty() {
        Ok(format!("{} words", words.len()))
    } else {
        Err(format!(
            "{} of {} words differ: {}",
            bad.len(),
            words.len(),
            bad.join(", ")
        ))
    }
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut total = 0;
    for i in 0..24 {
        let sr = if i % 2 == 0 {
            Semiring::Rational
        } else {
            Semiring::fin_lang("ab")
        };
        let n = common::random_nwa(&mut rng, &sr, 3, 0.4);
        let b = from_nwa(&n).map_err(|e| format!("automaton {i}: {e}"))?;
        if !b.is_restricted() {
            return Err(format!("automaton {i}: embedding has weighted pops"));
        }
        let words: Vec<Word> = all_words(n.alphabet(), 6)
            .into_iter()
            .filter(|w| n.is_well_matched(w))
            .collect();
        total += words.len();
        all_ok(&words, |w| {
            let (x, y) = (n.behavior(w).unwrap(), b.behavior(w));
            (x != y).then(|| {
                format!(
                    "automaton {i} on {}: nwa {x} embedding {y}",
                    show(n.alphabet(), w)
                )
            })
        })?;
    }
    Ok(format!("24 automata, {total} well-matched word checks"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let alphabets = [
        Arc::new(fixtures::call_opm()),
        Arc::new(fixtures::separation_opm()),
        Arc::new(fixtures::expression_opm()),
    ];
    let mut total = 0;
    for i in 0..24 {
        let sr = if i % 2 == 0 {
            Semiring::Rational
        } else {
            Semiring::MaxPlus
        };
        let alpha = &alphabets[i % 3];
        let a = common::random_wopa(&mut rng, alpha, &sr, 3, 0.35);
        let b = eliminate_pop_weights(&a).map_err(|e| format!("automaton {i}: {e}"))?;
        if !b.is_restricted() {
            return Err(format!("automaton {i}: result has weighted pops"));
        }
        let words = compatible_words(alpha, 6);
        total += words.len();
        all_ok(&words, |w| {
            if a.count_runs(w) != b.count_runs(w) {
                return Some(format!(
                    "automaton {i} on {}: {} runs before, {} after",
                    show(alpha, w),
                    a.count_runs(w),
                    b.count_runs(w)
                ));
            }
            let (x, y) = (a.behavior(w), b.behavior(w));
            (x != y).then(|| format!("automaton {i} on {}: {x} before, {y} after", show(alpha, w)))
        })?;
    }
    Ok(format!("24 automata, {total} word checks"))
}

fn closure_fixtures() -> Vec<(&'static str, WeightedOpa)> {
    vec![
        ("penalty", fixtures::penalty()),
        ("policy", fixtures::policy()),
        ("log", fixtures::log()),
        ("separation", fixtures::separation()),
        ("halving", fixtures::halving()),
        (
            "expressions",
            WeightedOpa::lift(&fixtures::expression_opa(), Semiring::Rational),
        ),
    ]
}

fn compare(
    label: &str,
    alpha: &OpAlphabet,
    words: &[Word],
    got: impl Fn(&Word) -> Weight + Sync + Send,
    want: impl Fn(&Word) -> Weight + Sync + Send,
) -> std::result::Result<(), String> {
    all_ok(words, |w| {
        let (x, y) = (got(w), want(w));
        (x != y).then(|| format!("{label} on {}: {x}, expected {y}", show(alpha, w)))
    })
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut checks = 0;
    for (name, a) in closure_fixtures() {
        let alpha = a.alphabet().clone();
        let sr = a.semiring().clone();
        let words = compatible_words(&alpha, 5);
        let other = common::random_wopa(&mut rng, &alpha, &sr, 2, 0.4);
        let e = |x: Error| format!("{name}: {x}");

        let s = sum(&a, &other).map_err(e)?;
        compare(
            &format!("{name} sum"),
            &alpha,
            &words,
            |w| s.behavior(w),
            |w| sr.add(&a.behavior(w), &other.behavior(w)).unwrap(),
        )?;

        let first = alpha.names()[0].clone();
        for l in [
            common::seen(&alpha, &first, false),
            common::parity(&alpha, false),
        ] {
            let b = intersect_with_opl(&a, &l).map_err(e)?;
            compare(
                &format!("{name} intersection"),
                &alpha,
                &words,
                |w| b.behavior(w),
                |w| {
                    if l.accepts(w) {
                        a.behavior(w)
                    } else {
                        sr.zero()
                    }
                },
            )?;
        }

        if sr.is_commutative() {
            for b in [&a, &other] {
                let h = hadamard(&a, b).map_err(e)?;
                compare(
                    &format!("{name} hadamard"),
                    &alpha,
                    &words,
                    |w| h.behavior(w),
                    |w| sr.mul(&a.behavior(w), &b.behavior(w)).unwrap(),
                )?;
            }
        } else if !matches!(hadamard(&a, &a), Err(Error::CommutativityRequired(_))) {
            return Err(format!(
                "{name}: hadamard accepted a non-commutative semiring"
            ));
        }

        let id = SymbolMap::identity(alpha.clone());
        let p = project(&a, &id).map_err(e)?;
        compare(
            &format!("{name} identity projection"),
            &alpha,
            &words,
            |w| p.behavior(w),
            |w| a.behavior(w),
        )?;
        let h = common::doubled(&alpha);
        let k = common::sample_weights(&sr)[1].clone();
        let lifted = common::pull_back_automaton(&a, &h, &k);
        let p = project(&lifted, &h).map_err(e)?;
        compare(
            &format!("{name} projection"),
            &alpha,
            &words,
            |w| p.behavior(w),
            |v| common::preimage_sum(&h, &sr, v, |w| lifted.behavior(w)),
        )?;

        for k in common::sample_weights(&sr).into_iter().take(3) {
            let b = scalar_left_multiply(&k, &a).map_err(e)?;
            compare(
                &format!("{name} scaling by {k}"),
                &alpha,
                &words,
                |w| b.behavior(w),
                |w| sr.mul(&k, &a.behavior(w)).unwrap(),
            )?;
        }
        checks += words.len();
    }
    Ok(format!(
        "6 fixtures, {checks} compatible words through every construction"
    ))
}

fn criterion_7() -> Outcome {
    let cases = [
        ("penalty", fixtures::penalty()),
        ("policy", fixtures::policy()),
        (
            "expressions",
            WeightedOpa::lift(&fixtures::expression_opa(), Semiring::Rational),
        ),
    ];
    let mut total = 0;
    for (name, a) in cases {
        let d = nivat_decompose(&a).map_err(|e| format!("{name}: {e}"))?;
        let words = compatible_words(a.alphabet(), 5);
        total += words.len();
        compare(
            name,
            a.alphabet(),
            &words,
            |w| d.recompose(w),
            |w| a.behavior(w),
        )?;
    }
    Ok(format!("3 fixtures, {total} words"))
}

fn step_functions(alpha: &Arc<OpAlphabet>, sr: &Semiring) -> Vec<StepFunction> {
    let k = common::sample_weights(sr);
    let sym = alpha.names()[0].clone();
    let parts = |l: Vec<(Opa, Weight)>| StepFunction::new(alpha.clone(), sr.clone(), l).unwrap();
    vec![
        parts(vec![
            (common::seen(alpha, &sym, true), k[0].clone()),
            (common::seen(alpha, &sym, false), k[1].clone()),
        ]),
        parts(vec![
            (common::parity(alpha, true), k[2].clone()),
            (common::parity(alpha, false), k[3].clone()),
        ]),
        StepFunction::constant(alpha.clone(), sr.clone(), k[4].clone()).unwrap(),
    ]
}

fn criterion_8() -> Outcome {
    let mut checks = 0;
    for sr in [
        Semiring::Rational,
        Semiring::fin_lang("ab"),
        Semiring::MaxPlus,
    ] {
        let alpha = Arc::new(fixtures::call_opm());
        let words = compatible_words(&alpha, 5);
        let fs = step_functions(&alpha, &sr);
        for f in &fs {
            if f.check_partition(5) != PartitionCheck::Partition {
                return Err(format!("{sr}: a test step function is not a partition"));
            }
            let b = f.to_rwopa().map_err(|e| e.to_string())?;
            if !b.is_restricted() {
                return Err(format!("{sr}: step automaton has weighted pops"));
            }
            compare(
                &format!("{sr} step automaton"),
                &alpha,
                &words,
                |w| b.behavior(w),
                |w| f.eval(w),
            )?;
            for g in &fs {
                let s = f.add(g).map_err(|e| e.to_string())?;
                let m = f.mul(g).map_err(|e| e.to_string())?;
                compare(
                    &format!("{sr} step sum"),
                    &alpha,
                    &words,
                    |w| s.eval(w),
                    |w| sr.add(&f.eval(w), &g.eval(w)).unwrap(),
                )?;
                compare(
                    &format!("{sr} step product"),
                    &alpha,
                    &words,
                    |w| m.eval(w),
                    |w| sr.mul(&f.eval(w), &g.eval(w)).unwrap(),
                )?;
                checks += 2 * words.len();
            }
        }
    }
    Ok(format!("{checks} pointwise identity checks"))
}

/// Formulas over the call/return alphabet with free variables.
fn formula_pool() -> Vec<Formula> {
    let r = Weight::rational;
    vec![
        Formula::ite(Formula::lab("call", "x"), r(1, 2), r(2, 1)),
        Formula::prod1(
            "y",
            Formula::ite(Formula::member("y", "X"), r(2, 1), r(1, 1)),
        ),
        Formula::sum1(
            "y",
            Formula::ite(
                Formula::and(Formula::lt("x", "y"), Formula::member("y", "X")),
                r(3, 1),
                r(0, 1),
            ),
        ),
        Formula::exists1("y", Formula::chain("x", "y")),
        Formula::sum2(
            "Y",
            Formula::otimes(Formula::member("x", "Y"), Formula::constant(r(1, 3))),
        ),
    ]
}

fn random_extension(rng: &mut StdRng, free: &BTreeMap<String, VarKind>, n: usize) -> Assignment {
    let mut sigma = Assignment::new();
    let random_set =
        |rng: &mut StdRng| -> Vec<usize> { (1..=n).filter(|_| rng.gen_bool(0.5)).collect() };
    for (v, kind) in free {
        sigma = match kind {
            VarKind::First => sigma.with_first(v, rng.gen_range(1..=n)),
            VarKind::Second => sigma.with_second(v, random_set(rng)),
        };
    }
    // variables the formulas never mention
    sigma = sigma.with_first("u", rng.gen_range(1..=n));
    sigma = sigma.with_second("U", random_set(rng));
    if rng.gen_bool(0.5) {
        sigma = sigma.with_first("v", rng.gen_range(1..=n));
    }
    sigma
}

fn criterion_9() -> Outcome {
    let alpha = fixtures::call_opm();
    let sr = Semiring::Rational;
    let r = Weight::rational;
    let w2 = alpha.word("call ret").unwrap();

    // constants
    for k in common::sample_weights(&sr) {
        let got = mso_eval(
            &alpha,
            &sr,
            &Formula::constant(k.clone()),
            &w2,
            &Assignment::new(),
        )
        .map_err(|e| e.to_string())?;
        if got != k {
            return Err(format!("constant {k} evaluates to {got}"));
        }
    }
    // quantifier counts
    let one = Formula::constant(r(1, 1));
    let two = Formula::constant(r(2, 1));
    let ev = |f: &Formula, w: &Word| mso_eval(&alpha, &sr, f, w, &Assignment::new()).unwrap();
    if ev(&Formula::sum1("x", one.clone()), &w2) != r(2, 1) {
        return Err("⊕_x 1 on a two-letter word is not 2".into());
    }
    for w in compatible_words(&alpha, 4) {
        let n = w.len() as u32;
        let exp = r(1i64 << n, 1);
        if ev(&Formula::prod1("x", two.clone()), &w) != exp
            || ev(&Formula::sum2("X", one.clone()), &w) != exp
        {
            return Err(format!("2^|w| counts fail on {}", show(&alpha, &w)));
        }
    }
    // product order in a non-commutative semiring
    let fl = Semiring::fin_lang("ab");
    let letters = Formula::prod1(
        "x",
        Formula::ite(
            Formula::lab("call", "x"),
            Weight::lang(["a"]),
            Weight::lang(["b"]),
        ),
    );
    let w = alpha.word("call ret ret").unwrap();
    let got = mso_eval(&alpha, &fl, &letters, &w, &Assignment::new()).map_err(|e| e.to_string())?;
    if got != Weight::lang(["abb"]) {
        return Err(format!("∏_x order: got {got}"));
    }
    // boolean atoms agree with the parser oracle
    for w in compatible_words(&alpha, 4) {
        let chains = common::parser_chains(&alpha, &w).unwrap();
        for i in 0..=w.len() + 1 {
            for j in 0..=w.len() + 1 {
                let s = Assignment::new().with_first("x", i).with_first("y", j);
                let holds = bool_eval(&alpha, &Formula::chain("x", "y"), &w, &s).unwrap();
                if holds != chains.contains(&(i, j)) {
                    return Err(format!("chain atom ({i},{j}) on {}", show(&alpha, &w)));
                }
            }
        }
    }
    // ⊕ / ⊗ homomorphism on sampled pairs
    let mut rng = StdRng::seed_from_u64(9);
    let pool = formula_pool();
    let words: Vec<Word> = compatible_words(&alpha, 4);
    let mut pairs = 0;
    for _ in 0..60 {
        let f = &pool[rng.gen_range(0..pool.len())];
        let g = &pool[rng.gen_range(0..pool.len())];
        let w = &words[rng.gen_range(0..words.len())];
        let mut free = f.free_vars().unwrap();
        free.extend(g.free_vars().unwrap());
        let sigma = random_extension(&mut rng, &free, w.len());
        let e = |h: &Formula| mso_eval(&alpha, &sr, h, w, &sigma).unwrap();
        let (x, y) = (e(f), e(g));
        if e(&Formula::oplus(f.clone(), g.clone())) != sr.add(&x, &y).unwrap()
            || e(&Formula::otimes(f.clone(), g.clone())) != sr.mul(&x, &y).unwrap()
        {
            return Err(format!(
                "homomorphism fails for {f} and {g} on {}",
                show(&alpha, w)
            ));
        }
        pairs += 1;
    }
    // consistency under random extensions
    let policy_alpha = fixtures::policy_opm();
    let policy_words = compatible_words(&policy_alpha, 3);
    let mut cases: Vec<(&OpAlphabet, &Semiring, Formula, &[Word])> = pool
        .iter()
        .map(|f| (&alpha, &sr, f.clone(), words.as_slice()))
        .collect();
    cases.push((
        &policy_alpha,
        &Semiring::MaxPlus,
        fixtures::policy_formula(),
        &policy_words,
    ));
    for (alpha, sr, f, words) in &cases {
        let free = f.free_vars().unwrap();
        for _ in 0..50 {
            let w = &words[rng.gen_range(0..words.len())];
            let sigma = random_extension(&mut rng, &free, w.len());
            if !consistency_check(alpha, sr, f, w, &sigma).map_err(|e| e.to_string())? {
                return Err(format!("consistency fails for {f} on {}", show(alpha, w)));
            }
        }
    }
    Ok(format!(
        "constants, counts, product order, chain atoms, {pairs} homomorphism pairs, {} formulas x 50 extensions",
        cases.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut total = 0;
    for (name, a) in [
        ("halving", fixtures::halving()),
        ("penalty", fixtures::penalty()),
    ] {
        let f = automaton_to_formula(&a).map_err(|e| format!("{name}: {e}"))?;
        if !classify(&f, a.semiring()).is_restricted {
            return Err(format!("{name}: formula is not restricted"));
        }
        let ev = Evaluator::new(a.alphabet(), a.semiring());
        let words = compatible_words(a.alphabet(), 2);
        for w in &words {
            let space = ev
                .assignment_space(&f, w.len())
                .map_err(|e| e.to_string())?;
            if space > wopl::logic::DEFAULT_BUDGET {
                return Err(format!("{name}: assignment space {space} over budget"));
            }
        }
        total += words.len();
        all_ok(&words, |w| {
            let got = ev.eval(&f, w, &Assignment::new()).unwrap();
            let want = a.behavior(w);
            (got != want).then(|| {
                format!(
                    "{name} on {}: formula {got} automaton {want}",
                    show(a.alphabet(), w)
                )
            })
        })?;
    }
    Ok(format!("2 automata, {total} words"))
}

fn criterion_11() -> Outcome {
    let mut total = 0;
    for alpha in [fixtures::expression_opm(), fixtures::call_opm()] {
        let words = all_words(&alpha, 7);
        let compatible: Vec<Word> = words
            .into_iter()
            .filter(|w| alpha.is_compatible(w))
            .collect();
        total += compatible.len();
        all_ok(&compatible, |w| {
            let parsed = common::parser_chains(&alpha, w);
            (parsed.as_ref() != Some(&alpha.chains(w))).then(|| {
                format!(
                    "{}: definition {:?} parser {:?}",
                    show(&alpha, w),
                    alpha.chains(w),
                    parsed
                )
            })
        })?;
    }
    Ok(format!("{total} compatible words"))
}

fn criterion_12() -> Outcome {
    let mut bases: Vec<(&str, Opa)> = vec![("expressions", fixtures::expression_opa())];
    for (name, a) in closure_fixtures() {
        bases.push((name, a.base().clone()));
    }
    let mut total = 0;
    for (name, a) in &bases {
        let b = WeightedOpa::lift_boolean(a);
        let words = all_words(a.alphabet(), 6);
        total += words.len();
        all_ok(&words, |w| {
            let got = b.behavior(w);
            (got != Weight::Bool(a.accepts(w)))
                .then(|| format!("{name} on {}", show(a.alphabet(), w)))
        })?;
    }
    Ok(format!("{} automata, {total} words", bases.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("penalty closed form", criterion_1),
        ("policy interval oracle", criterion_2),
        ("separation witness", criterion_3),
        ("nested word embedding", criterion_4),
        ("pop-weight elimination", criterion_5),
        ("closure suite", criterion_6),
        ("Nivat round trip", criterion_7),
        ("step functions", criterion_8),
        ("MSO evaluator", criterion_9),
        ("automaton to formula", criterion_10),
        ("chain oracle", criterion_11),
        ("boolean reduction", criterion_12),
    ];
    // optional criterion numbers select a subset
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    let ran = if only.is_empty() { 12 } else { only.len() };
    println!("{} of {ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
