//! Semirings and their elements.
//!
//! A [`Semiring`] is selected at runtime by id and operates on [`Weight`]
//! values. All arithmetic is exact: rationals are arbitrary precision and the
//! tropical semirings carry an explicit infinity instead of floating point.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element of a tropical semiring: a finite rational or the semiring's
/// infinity (`-inf` for max-plus, `inf` for min-plus).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Infinite,
    Finite(BigRational),
}

/// A finite language: a canonically sorted, duplicate-free set of strings.
pub type Language = BTreeSet<String>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Bool(bool),
    Rational(BigRational),
    MaxPlus(Tropical),
    MinPlus(Tropical),
    Lang(Language),
}

impl Weight {
    pub fn rational(numer: i64, denom: i64) -> Weight {
        Weight::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Weight {
        Weight::rational(n, 1)
    }

    pub fn max_plus(n: i64) -> Weight {
        Weight::MaxPlus(Tropical::Finite(BigRational::from_integer(n.into())))
    }

    pub fn min_plus(n: i64) -> Weight {
        Weight::MinPlus(Tropical::Finite(BigRational::from_integer(n.into())))
    }

    pub fn lang<I, S>(words: I) -> Weight
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Weight::Lang(words.into_iter().map(Into::into).collect())
    }

    fn family(&self) -> &'static str {
        match self {
            Weight::Bool(_) => "boolean",
            Weight::Rational(_) => "rational",
            Weight::MaxPlus(_) => "max-plus",
            Weight::MinPlus(_) => "min-plus",
            Weight::Lang(_) => "fin-lang",
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical literal syntax, accepted back by [`Semiring::parse_weight`].
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Bool(b) => write!(f, "{}", u8::from(*b)),
            Weight::Rational(r) => fmt_rational(r, f),
            Weight::MaxPlus(Tropical::Infinite) => write!(f, "-inf"),
            Weight::MinPlus(Tropical::Infinite) => write!(f, "inf"),
            Weight::MaxPlus(Tropical::Finite(r)) | Weight::MinPlus(Tropical::Finite(r)) => {
                fmt_rational(r, f)
            }
            Weight::Lang(words) => {
                write!(f, "[")?;
                for (i, w) in words.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    // JSON string quoting keeps the literal round-trippable.
                    write!(f, "{}", serde_json::Value::String(w.clone()))?;
                }
                write!(f, "]")
            }
        }
    }
}

/// The letters available to a finite-language semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LangAlphabet(BTreeSet<char>);

impl LangAlphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Self {
        LangAlphabet(letters.into_iter().collect())
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn admits(&self, word: &str) -> bool {
        word.chars().all(|c| self.0.contains(&c))
    }
}

/// A semiring instance, selectable by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// `({0,1}, or, and, 0, 1)`
    Boolean,
    /// Exact rationals under `+` and `*`.
    Rational,
    /// `(Q ∪ {-inf}, max, +, -inf, 0)`
    MaxPlus,
    /// `(Q ∪ {inf}, min, +, inf, 0)`
    MinPlus,
    /// Finite languages under union and concatenation.
    FinLang(LangAlphabet),
}

impl Semiring {
    pub fn fin_lang(letters: &str) -> Semiring {
        Semiring::FinLang(LangAlphabet::new(letters.chars()))
    }

    /// The id this semiring is selected by, e.g. `max-plus` or `fin-lang:ab`.
    pub fn id(&self) -> String {
        match self {
            Semiring::Boolean => "boolean".into(),
            Semiring::Rational => "rational".into(),
            Semiring::MaxPlus => "max-plus".into(),
            Semiring::MinPlus => "min-plus".into(),
            Semiring::FinLang(a) => format!("fin-lang:{}", a.letters().collect::<String>()),
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self {
            Semiring::FinLang(a) => a.len() <= 1,
            _ => true,
        }
    }

    pub fn zero(&self) -> Weight {
        match self {
            Semiring::Boolean => Weight::Bool(false),
            Semiring::Rational => Weight::Rational(BigRational::zero()),
            Semiring::MaxPlus => Weight::MaxPlus(Tropical::Infinite),
            Semiring::MinPlus => Weight::MinPlus(Tropical::Infinite),
            Semiring::FinLang(_) => Weight::Lang(Language::new()),
        }
    }

    pub fn one(&self) -> Weight {
        match self {
            Semiring::Boolean => Weight::Bool(true),
            Semiring::Rational => Weight::Rational(BigRational::one()),
            Semiring::MaxPlus => Weight::MaxPlus(Tropical::Finite(BigRational::zero())),
            Semiring::MinPlus => Weight::MinPlus(Tropical::Finite(BigRational::zero())),
            Semiring::FinLang(_) => Weight::Lang(std::iter::once(String::new()).collect()),
        }
    }

    pub fn is_zero(&self, x: &Weight) -> bool {
        *x == self.zero()
    }

    pub fn is_one(&self, x: &Weight) -> bool {
        *x == self.one()
    }

    /// True if `x` is a well-formed element of this semiring.
    pub fn contains(&self, x: &Weight) -> bool {
        match (self, x) {
            (Semiring::Boolean, Weight::Bool(_))
            | (Semiring::Rational, Weight::Rational(_))
            | (Semiring::MaxPlus, Weight::MaxPlus(_))
            | (Semiring::MinPlus, Weight::MinPlus(_)) => true,
            (Semiring::FinLang(a), Weight::Lang(l)) => l.iter().all(|w| a.admits(w)),
            _ => false,
        }
    }

    pub fn check(&self, x: &Weight) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(self.mismatch(x))
        }
    }

    fn mismatch(&self, x: &Weight) -> Error {
        Error::SemiringMismatch {
            expected: self.id(),
            found: match x {
                Weight::Lang(_) => format!("fin-lang element {x}"),
                _ => x.family().to_string(),
            },
        }
    }

    pub fn add(&self, x: &Weight, y: &Weight) -> Result<Weight> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub fn mul(&self, x: &Weight, y: &Weight) -> Result<Weight> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    /// Addition for operands already known to belong to this semiring.
    pub(crate) fn add_unchecked(&self, x: &Weight, y: &Weight) -> Weight {
        match (x, y) {
            (Weight::Bool(a), Weight::Bool(b)) => Weight::Bool(*a || *b),
            (Weight::Rational(a), Weight::Rational(b)) => Weight::Rational(a + b),
            (Weight::MaxPlus(a), Weight::MaxPlus(b)) => Weight::MaxPlus(match (a, b) {
                (Tropical::Infinite, t) | (t, Tropical::Infinite) => t.clone(),
                (Tropical::Finite(p), Tropical::Finite(q)) => Tropical::Finite(p.max(q).clone()),
            }),
            (Weight::MinPlus(a), Weight::MinPlus(b)) => Weight::MinPlus(match (a, b) {
                (Tropical::Infinite, t) | (t, Tropical::Infinite) => t.clone(),
                (Tropical::Finite(p), Tropical::Finite(q)) => Tropical::Finite(p.min(q).clone()),
            }),
            (Weight::Lang(a), Weight::Lang(b)) => Weight::Lang(a.union(b).cloned().collect()),
            _ => unreachable!("operands checked against the semiring"),
        }
    }

    pub(crate) fn mul_unchecked(&self, x: &Weight, y: &Weight) -> Weight {
        fn tropical_times(a: &Tropical, b: &Tropical) -> Tropical {
            match (a, b) {
                (Tropical::Finite(p), Tropical::Finite(q)) => Tropical::Finite(p + q),
                _ => Tropical::Infinite,
            }
        }
        match (x, y) {
            (Weight::Bool(a), Weight::Bool(b)) => Weight::Bool(*a && *b),
            (Weight::Rational(a), Weight::Rational(b)) => Weight::Rational(a * b),
            (Weight::MaxPlus(a), Weight::MaxPlus(b)) => Weight::MaxPlus(tropical_times(a, b)),
            (Weight::MinPlus(a), Weight::MinPlus(b)) => Weight::MinPlus(tropical_times(a, b)),
            (Weight::Lang(a), Weight::Lang(b)) => {
                let mut out = Language::new();
                for u in a {
                    for v in b {
                        out.insert(format!("{u}{v}"));
                    }
                }
                Weight::Lang(out)
            }
            _ => unreachable!("operands checked against the semiring"),
        }
    }

    /// Left-to-right product `one · f1 · f2 · …`; factor order is preserved.
    pub fn product<'a, I>(&self, factors: I) -> Result<Weight>
    where
        I: IntoIterator<Item = &'a Weight>,
    {
        factors
            .into_iter()
            .try_fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn sum<'a, I>(&self, terms: I) -> Result<Weight>
    where
        I: IntoIterator<Item = &'a Weight>,
    {
        terms
            .into_iter()
            .try_fold(self.zero(), |acc, t| self.add(&acc, t))
    }

    /// Parses a weight literal in this semiring's syntax.
    pub fn parse_weight(&self, literal: &str) -> Result<Weight> {
        let s = literal.trim();
        let bad = |reason: &str| Error::InvalidWeight {
            literal: literal.to_string(),
            semiring: self.id(),
            reason: reason.to_string(),
        };
        match self {
            Semiring::Boolean => match s {
                "0" => Ok(Weight::Bool(false)),
                "1" => Ok(Weight::Bool(true)),
                _ => Err(bad("expected 0 or 1")),
            },
            Semiring::Rational => parse_rational(s).map(Weight::Rational).map_err(|r| bad(&r)),
            Semiring::MaxPlus => match s {
                "-inf" => Ok(Weight::MaxPlus(Tropical::Infinite)),
                _ => parse_rational(s)
                    .map(|r| Weight::MaxPlus(Tropical::Finite(r)))
                    .map_err(|r| bad(&r)),
            },
            Semiring::MinPlus => match s {
                "inf" => Ok(Weight::MinPlus(Tropical::Infinite)),
                _ => parse_rational(s)
                    .map(|r| Weight::MinPlus(Tropical::Finite(r)))
                    .map_err(|r| bad(&r)),
            },
            Semiring::FinLang(a) => {
                let words: Vec<String> = serde_json::from_str(s)
                    .map_err(|_| bad("expected a bracketed list of quoted strings"))?;
                if let Some(w) = words.iter().find(|w| !a.admits(w)) {
                    return Err(bad(&format!("`{w}` uses letters outside the alphabet")));
                }
                Ok(Weight::Lang(words.into_iter().collect()))
            }
        }
    }

    /// Checks the semiring axioms on every pair and triple drawn from `samples`.
    ///
    /// Multiplicative commutativity is checked when the semiring claims it, or
    /// for every semiring when `probe_commutativity` is set.
    pub fn check_laws(&self, samples: &[Weight], probe_commutativity: bool) -> LawReport {
        let mut report = LawReport::default();
        if let Some(bad) = samples.iter().find(|x| !self.contains(x)) {
            report.violations.push(LawViolation {
                law: Law::WellFormed,
                witnesses: vec![bad.clone()],
            });
            return report;
        }
        let (zero, one) = (self.zero(), self.one());
        let add = |x: &Weight, y: &Weight| self.add_unchecked(x, y);
        let mul = |x: &Weight, y: &Weight| self.mul_unchecked(x, y);
        let mut fail = |law: Law, w: &[&Weight]| {
            report.violations.push(LawViolation {
                law,
                witnesses: w.iter().map(|x| (*x).clone()).collect(),
            })
        };
        for x in samples {
            if add(x, &zero) != *x || add(&zero, x) != *x {
                fail(Law::AdditiveIdentity, &[x]);
            }
            if mul(x, &one) != *x || mul(&one, x) != *x {
                fail(Law::MultiplicativeIdentity, &[x]);
            }
            if mul(x, &zero) != zero || mul(&zero, x) != zero {
                fail(Law::Annihilation, &[x]);
            }
            for y in samples {
                if add(x, y) != add(y, x) {
                    fail(Law::AdditiveCommutativity, &[x, y]);
                }
                if (probe_commutativity || self.is_commutative()) && mul(x, y) != mul(y, x) {
                    fail(Law::MultiplicativeCommutativity, &[x, y]);
                }
                for z in samples {
                    if add(&add(x, y), z) != add(x, &add(y, z)) {
                        fail(Law::AdditiveAssociativity, &[x, y, z]);
                    }
                    if mul(&mul(x, y), z) != mul(x, &mul(y, z)) {
                        fail(Law::MultiplicativeAssociativity, &[x, y, z]);
                    }
                    if mul(x, &add(y, z)) != add(&mul(x, y), &mul(x, z)) {
                        fail(Law::LeftDistributivity, &[x, y, z]);
                    }
                    if mul(&add(x, y), z) != add(&mul(x, z), &mul(y, z)) {
                        fail(Law::RightDistributivity, &[x, y, z]);
                    }
                }
            }
        }
        report
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator `{n}`"))?;
    let denom = BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator `{d}`"))?;
    if denom.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(numer, denom))
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        match id.trim() {
            "boolean" => Ok(Semiring::Boolean),
            "rational" => Ok(Semiring::Rational),
            "max-plus" => Ok(Semiring::MaxPlus),
            "min-plus" => Ok(Semiring::MinPlus),
            other => match other.strip_prefix("fin-lang") {
                Some("") => Ok(Semiring::FinLang(LangAlphabet::new(None))),
                Some(rest) => match rest.strip_prefix(':') {
                    Some(letters) if !letters.chars().any(char::is_whitespace) => {
                        Ok(Semiring::fin_lang(letters))
                    }
                    _ => Err(Error::UnknownSemiring(id.to_string())),
                },
                None => Err(Error::UnknownSemiring(id.to_string())),
            },
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    WellFormed,
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveIdentity,
    MultiplicativeAssociativity,
    MultiplicativeIdentity,
    MultiplicativeCommutativity,
    LeftDistributivity,
    RightDistributivity,
    Annihilation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub witnesses: Vec<Weight>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, law: Law) -> impl Iterator<Item = &LawViolation> {
        self.violations.iter().filter(move |v| v.law == law)
    }
}
