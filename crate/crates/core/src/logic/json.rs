//! JSON form of formulas: objects tagged by `"op"`.
//!
//! Core tags: `lab` (`sym`, `var`), `le` and `chain` (`x`, `y`), `in` (`var`,
//! `set`), `not` (`arg`), `or`/`oplus`/`otimes` (`args`, or `left`/`right`),
//! `exists1`/`exists2`/`sum1`/`sum2`/`prod1` (`var`, `body`), `const` (`w`).
//! Sugar tags expanded on load: `and`, `implies`, `iff`, `forall1`,
//! `forall2`, `eq`, `lt`, `succ` (`y = x+1`), `min`/`max` (`var`), `true`,
//! `false`, `ite` (`cond`, `then`, `else`).

use serde_json::{json, Map, Value};

use super::Formula;
use crate::error::{Error, Result};
use crate::io::{weight_from_json, weight_to_json};
use crate::semiring::Semiring;

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedFormula(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, op: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("`{op}` node lacks field `{key}`")))
}

fn string(obj: &Map<String, Value>, key: &str, op: &str) -> Result<String> {
    field(obj, key, op)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| bad(format!("field `{key}` of `{op}` must be a string")))
}

/// Reads a formula; constants are parsed in `sr`.
pub fn formula_from_json(v: &Value, sr: &Semiring) -> Result<Formula> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(format!("expected an object, found {v}")))?;
    let op = obj
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("node lacks a string `op` tag"))?;
    let sub = |key: &str| formula_from_json(field(obj, key, op)?, sr);
    let s = |key: &str| string(obj, key, op);
    let operands = || -> Result<Vec<Formula>> {
        if let Some(args) = obj.get("args") {
            let args = args
                .as_array()
                .ok_or_else(|| bad(format!("`args` of `{op}` must be an array")))?;
            args.iter().map(|a| formula_from_json(a, sr)).collect()
        } else {
            Ok(vec![sub("left")?, sub("right")?])
        }
    };
    let fold = |f: fn(Formula, Formula) -> Formula| -> Result<Formula> {
        operands()?
            .into_iter()
            .reduce(f)
            .ok_or_else(|| bad(format!("`{op}` needs at least one operand")))
    };
    let pair = |f: fn(Formula, Formula) -> Formula| -> Result<Formula> {
        let mut args = operands()?;
        if args.len() != 2 {
            return Err(bad(format!("`{op}` takes two operands")));
        }
        let r = args.pop().unwrap();
        Ok(f(args.pop().unwrap(), r))
    };
    Ok(match op {
        "lab" => Formula::lab(&s("sym")?, &s("var")?),
        "le" => Formula::le(&s("x")?, &s("y")?),
        "chain" => Formula::chain(&s("x")?, &s("y")?),
        "in" => Formula::member(&s("var")?, &s("set")?),
        "not" => Formula::not(sub("arg")?),
        "or" => fold(Formula::or)?,
        "exists1" => Formula::exists1(&s("var")?, sub("body")?),
        "exists2" => Formula::exists2(&s("var")?, sub("body")?),
        "const" => Formula::constant(weight_from_json(field(obj, "w", op)?, sr)?),
        "oplus" => fold(Formula::oplus)?,
        "otimes" => fold(Formula::otimes)?,
        "sum1" => Formula::sum1(&s("var")?, sub("body")?),
        "sum2" => Formula::sum2(&s("var")?, sub("body")?),
        "prod1" => Formula::prod1(&s("var")?, sub("body")?),
        "and" => fold(Formula::and)?,
        "implies" => pair(Formula::implies)?,
        "iff" => pair(Formula::iff)?,
        "forall1" => Formula::forall1(&s("var")?, sub("body")?),
        "forall2" => Formula::forall2(&s("var")?, sub("body")?),
        "eq" => Formula::eq(&s("x")?, &s("y")?),
        "lt" => Formula::lt(&s("x")?, &s("y")?),
        "succ" => Formula::succ(&s("x")?, &s("y")?),
        "min" => Formula::min(&s("var")?),
        "max" => Formula::max(&s("var")?),
        "true" => Formula::truth(),
        "false" => Formula::falsity(),
        "ite" => Formula::ite(
            sub("cond")?,
            weight_from_json(field(obj, "then", op)?, sr)?,
            weight_from_json(field(obj, "else", op)?, sr)?,
        ),
        other => return Err(bad(format!("unknown op `{other}`"))),
    })
}

/// Operands of a maximal chain of one associative connective, in order.
fn flatten<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    let same = |g: &Formula| std::mem::discriminant(g) == std::mem::discriminant(f);
    match f {
        Formula::Or(l, r) | Formula::Oplus(l, r) | Formula::Otimes(l, r) => {
            for g in [l, r] {
                if same(g) {
                    flatten(g, out);
                } else {
                    out.push(g);
                }
            }
        }
        _ => out.push(f),
    }
}

/// Writes the core syntax; chains of `or`, `oplus` and `otimes` become `args` lists.
pub fn formula_to_json(f: &Formula) -> Value {
    let nary = |op: &str| {
        let mut args = Vec::new();
        flatten(f, &mut args);
        json!({"op": op, "args": args.into_iter().map(formula_to_json).collect::<Vec<_>>()})
    };
    let binder =
        |op: &str, x: &str, g: &Formula| json!({"op": op, "var": x, "body": formula_to_json(g)});
    match f {
        Formula::Lab(a, x) => json!({"op": "lab", "sym": a, "var": x}),
        Formula::Le(x, y) => json!({"op": "le", "x": x, "y": y}),
        Formula::Chain(x, y) => json!({"op": "chain", "x": x, "y": y}),
        Formula::In(x, s) => json!({"op": "in", "var": x, "set": s}),
        Formula::Not(g) => json!({"op": "not", "arg": formula_to_json(g)}),
        Formula::Or(..) => nary("or"),
        Formula::Oplus(..) => nary("oplus"),
        Formula::Otimes(..) => nary("otimes"),
        Formula::Exists1(x, g) => binder("exists1", x, g),
        Formula::Exists2(x, g) => binder("exists2", x, g),
        Formula::Sum1(x, g) => binder("sum1", x, g),
        Formula::Sum2(x, g) => binder("sum2", x, g),
        Formula::Prod1(x, g) => binder("prod1", x, g),
        Formula::Const(k) => json!({"op": "const", "w": weight_to_json(k)}),
    }
}
