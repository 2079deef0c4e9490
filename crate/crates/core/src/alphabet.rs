//! Operator-precedence alphabets, words, and the chain relation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Precedence relation between two letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prec {
    /// `⋖`
    Yields,
    /// `≐`
    Equal,
    /// `⋗`
    Takes,
}

impl Prec {
    pub const ALL: [Prec; 3] = [Prec::Yields, Prec::Equal, Prec::Takes];

    pub fn symbol(self) -> &'static str {
        match self {
            Prec::Yields => "<·",
            Prec::Equal => "=·",
            Prec::Takes => "·>",
        }
    }

    pub fn parse(s: &str) -> Result<Prec> {
        match s {
            "<·" | "<" => Ok(Prec::Yields),
            "=·" | "=" => Ok(Prec::Equal),
            "·>" | ">" => Ok(Prec::Takes),
            _ => Err(Error::Parse(format!("unknown precedence relation `{s}`"))),
        }
    }
}

impl fmt::Display for Prec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Index of a symbol within its [`OpAlphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A symbol or the delimiter `#`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Delim,
    Sym(Sym),
}

pub const DELIMITER: &str = "#";

/// An alphabet `Σ` together with its operator precedence matrix over `Σ ∪ {#}`.
///
/// The delimiter relations `# ⋖ a` and `a ⋗ #` are installed automatically;
/// `(#, #)` stays undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpAlphabet {
    symbols: Vec<String>,
    index: HashMap<String, Sym>,
    // (|Σ|+1)², the last row and column belong to `#`.
    matrix: Vec<Option<Prec>>,
}

impl OpAlphabet {
    /// Builds an alphabet from its symbols and the user-supplied matrix entries.
    pub fn new<S, E>(symbols: S, entries: E) -> Result<OpAlphabet>
    where
        S: IntoIterator,
        S::Item: Into<String>,
        E: IntoIterator<Item = (String, String, Prec)>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol `{s}` must be non-empty and free of whitespace"
                )));
            }
            if s == DELIMITER {
                return Err(Error::InvalidAlphabet(
                    "`#` is reserved for the delimiter".into(),
                ));
            }
            if index.insert(s.clone(), Sym(i as u32)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        let k = symbols.len();
        let mut alpha = OpAlphabet {
            symbols,
            index,
            matrix: vec![None; (k + 1) * (k + 1)],
        };
        for a in 0..k {
            alpha.matrix[k * (k + 1) + a] = Some(Prec::Yields);
            alpha.matrix[a * (k + 1) + k] = Some(Prec::Takes);
        }
        for (a, b, rel) in entries {
            if a == DELIMITER || b == DELIMITER {
                return Err(Error::InvalidAlphabet(
                    "matrix entries for `#` are fixed and must not be given".into(),
                ));
            }
            let (sa, sb) = (alpha.sym(&a)?, alpha.sym(&b)?);
            let slot = &mut alpha.matrix[sa.index() * (k + 1) + sb.index()];
            match slot {
                Some(old) if *old != rel => {
                    return Err(Error::InvalidAlphabet(format!(
                        "conflicting relations {old} and {rel} for ({a}, {b})"
                    )))
                }
                _ => *slot = Some(rel),
            }
        }
        Ok(alpha)
    }

    /// Convenience constructor from string triples.
    pub fn from_table<'a, S, E>(symbols: S, entries: E) -> Result<OpAlphabet>
    where
        S: IntoIterator<Item = &'a str>,
        E: IntoIterator<Item = (&'a str, &'a str, Prec)>,
    {
        OpAlphabet::new(
            symbols.into_iter().map(str::to_string),
            entries
                .into_iter()
                .map(|(a, b, p)| (a.to_string(), b.to_string(), p)),
        )
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + Clone + '_ {
        (0..self.symbols.len() as u32).map(Sym)
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.symbols[s.index()]
    }

    pub fn letter_name(&self, l: Letter) -> &str {
        match l {
            Letter::Delim => DELIMITER,
            Letter::Sym(s) => self.name(s),
        }
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        if name == DELIMITER {
            Ok(Letter::Delim)
        } else {
            self.sym(name).map(Letter::Sym)
        }
    }

    fn slot(&self, l: Letter) -> usize {
        match l {
            Letter::Delim => self.symbols.len(),
            Letter::Sym(s) => s.index(),
        }
    }

    /// The relation stored for `(a, b)`, if any.
    pub fn prec(&self, a: Letter, b: Letter) -> Option<Prec> {
        self.matrix[self.slot(a) * (self.symbols.len() + 1) + self.slot(b)]
    }

    pub fn prec_sym(&self, a: Sym, b: Sym) -> Option<Prec> {
        self.prec(Letter::Sym(a), Letter::Sym(b))
    }

    /// Lookup by symbol names (`#` allowed).
    pub fn lookup(&self, a: &str, b: &str) -> Result<Option<Prec>> {
        Ok(self.prec(self.letter(a)?, self.letter(b)?))
    }

    /// The user-visible matrix entries (delimiter entries omitted).
    pub fn entries(&self) -> impl Iterator<Item = (Sym, Sym, Prec)> + '_ {
        self.symbols().flat_map(move |a| {
            self.symbols()
                .filter_map(move |b| self.prec_sym(a, b).map(|p| (a, b, p)))
        })
    }

    /// True when every pair of symbols has a relation.
    pub fn is_complete(&self) -> bool {
        self.symbols()
            .all(|a| self.symbols().all(|b| self.prec_sym(a, b).is_some()))
    }

    /// Parses a whitespace-separated word.
    pub fn word(&self, text: &str) -> Result<Word> {
        let syms = text
            .split_whitespace()
            .map(|t| self.sym(t))
            .collect::<Result<Vec<_>>>()?;
        Word::new(syms).ok_or_else(|| Error::Parse("words must be non-empty".into()))
    }

    pub fn render(&self, w: &Word) -> String {
        w.symbols()
            .iter()
            .map(|s| self.name(*s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// All pairs `(i, j)` of positions of `#w#` with `i ↷ j`.
    pub fn chains(&self, w: &Word) -> BTreeSet<(usize, usize)> {
        ChainTable::new(self, w).all()
    }

    /// `w` is compatible iff `0 ↷ n+1`.
    pub fn is_compatible(&self, w: &Word) -> bool {
        ChainTable::new(self, w).chain(0, w.len() + 1)
    }
}

/// A non-empty word; positions are 1-based with `#` at 0 and `n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Sym>);

impl Word {
    pub fn new(symbols: Vec<Sym>) -> Option<Word> {
        (!symbols.is_empty()).then_some(Word(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.0
    }

    /// Letter at position `i ∈ 0..=n+1`.
    pub fn letter(&self, i: usize) -> Letter {
        if i == 0 || i > self.0.len() {
            Letter::Delim
        } else {
            Letter::Sym(self.0[i - 1])
        }
    }
}

/// Memo table for the chain relation of one word.
///
/// `i ↷ j` holds if there are positions `i = k1 < … < km = j` (m ≥ 3) with
/// `a_k1 ⋖ a_k2 ≐ … ≐ a_k(m-1) ⋗ a_km`, and each consecutive pair is either
/// adjacent or itself in the chain relation.
pub(crate) struct ChainTable<'a> {
    alpha: &'a OpAlphabet,
    letters: Vec<Letter>,
    memo: Vec<Option<bool>>,
}

impl<'a> ChainTable<'a> {
    pub(crate) fn new(alpha: &'a OpAlphabet, w: &Word) -> Self {
        let letters: Vec<Letter> = (0..=w.len() + 1).map(|i| w.letter(i)).collect();
        let m = letters.len();
        ChainTable {
            alpha,
            letters,
            memo: vec![None; m * m],
        }
    }

    fn rel(&self, i: usize, j: usize) -> Option<Prec> {
        self.alpha.prec(self.letters[i], self.letters[j])
    }

    fn link(&mut self, i: usize, j: usize) -> bool {
        j == i + 1 || self.chain(i, j)
    }

    pub(crate) fn chain(&mut self, i: usize, j: usize) -> bool {
        let m = self.letters.len();
        if j < i + 2 {
            return false;
        }
        if let Some(v) = self.memo[i * m + j] {
            return v;
        }
        // reach[k]: some admissible sequence i ⋖ … ≐ k exists with linked steps
        let mut reach = vec![false; j];
        for k in i + 1..j {
            let opened = self.rel(i, k) == Some(Prec::Yields) && self.link(i, k);
            reach[k] = opened
                || (i + 1..k).any(|k2| {
                    reach[k2] && self.rel(k2, k) == Some(Prec::Equal) && self.link(k2, k)
                });
        }
        let result =
            (i + 1..j).any(|k| reach[k] && self.rel(k, j) == Some(Prec::Takes) && self.link(k, j));
        self.memo[i * m + j] = Some(result);
        result
    }

    pub(crate) fn all(&mut self) -> BTreeSet<(usize, usize)> {
        let m = self.letters.len();
        let mut out = BTreeSet::new();
        for i in 0..m {
            for j in i + 2..m {
                if self.chain(i, j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

/// A total map between the symbols of two OP alphabets.
#[derive(Clone, Debug)]
pub struct SymbolMap {
    source: Arc<OpAlphabet>,
    target: Arc<OpAlphabet>,
    image: Vec<Sym>,
}

impl SymbolMap {
    pub fn new(
        source: Arc<OpAlphabet>,
        target: Arc<OpAlphabet>,
        map: &BTreeMap<String, String>,
    ) -> Result<SymbolMap> {
        for k in map.keys() {
            source.sym(k)?;
        }
        let image = source
            .names()
            .iter()
            .map(|a| {
                let b = map.get(a).ok_or_else(|| Error::MapDomain(a.clone()))?;
                target.sym(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolMap {
            source,
            target,
            image,
        })
    }

    pub fn identity(alpha: Arc<OpAlphabet>) -> SymbolMap {
        let image = alpha.symbols().collect();
        SymbolMap {
            source: alpha.clone(),
            target: alpha,
            image,
        }
    }

    pub fn source(&self) -> &Arc<OpAlphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OpAlphabet> {
        &self.target
    }

    pub fn apply(&self, a: Sym) -> Sym {
        self.image[a.index()]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        Word(w.symbols().iter().map(|&a| self.apply(a)).collect())
    }

    /// Symbols of the source mapped onto `b`.
    pub fn fiber(&self, b: Sym) -> Vec<Sym> {
        self.source
            .symbols()
            .filter(|&a| self.apply(a) == b)
            .collect()
    }

    /// `a ⊙ b ⇔ h(a) ⊙ h(b)` for every relation, absence included.
    pub fn is_opm_preserving(&self) -> bool {
        self.source.symbols().all(|a| {
            self.source.symbols().all(|b| {
                self.source.prec_sym(a, b) == self.target.prec_sym(self.apply(a), self.apply(b))
            })
        })
    }

    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.source
            .symbols()
            .map(|a| {
                (
                    self.source.name(a).to_string(),
                    self.target.name(self.apply(a)).to_string(),
                )
            })
            .collect()
    }
}

/// Checks whether `h: source → target` preserves and reflects all relations.
pub fn check_opm_preserving(
    h: &BTreeMap<String, String>,
    source: &Arc<OpAlphabet>,
    target: &Arc<OpAlphabet>,
) -> Result<bool> {
    Ok(SymbolMap::new(source.clone(), target.clone(), h)?.is_opm_preserving())
}

/// The matrix `h⁻¹(M)` on `source_symbols`: `(a', b')` gets `M(h(a'), h(b'))`.
pub fn pullback_opm(
    h: &BTreeMap<String, String>,
    target: &OpAlphabet,
    source_symbols: &[String],
) -> Result<OpAlphabet> {
    let image = source_symbols
        .iter()
        .map(|a| {
            let b = h.get(a).ok_or_else(|| Error::MapDomain(a.clone()))?;
            target.sym(b)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for (i, a) in source_symbols.iter().enumerate() {
        for (j, b) in source_symbols.iter().enumerate() {
            if let Some(p) = target.prec_sym(image[i], image[j]) {
                entries.push((a.clone(), b.clone(), p));
            }
        }
    }
    OpAlphabet::new(source_symbols.iter().cloned(), entries)
}
