//! Series as black boxes: bounded word enumeration and differential comparison.
//!
//! With the `parallel` feature, evaluation over many words is spread over a
//! rayon thread pool; results are always reported in enumeration order.

use std::sync::Arc;

use crate::alphabet::{OpAlphabet, Word};
use crate::constructions::{NivatDecomposition, WeightedNwa};
use crate::error::{Error, Result};
use crate::semiring::{Semiring, Weight};
use crate::step::StepFunction;
use crate::wopa::WeightedOpa;

/// A function from compatible words to semiring elements.
pub trait Series: Sync {
    fn alphabet(&self) -> &Arc<OpAlphabet>;
    fn semiring(&self) -> &Semiring;
    fn eval(&self, w: &Word) -> Result<Weight>;
}

impl Series for WeightedOpa {
    fn alphabet(&self) -> &Arc<OpAlphabet> {
        WeightedOpa::alphabet(self)
    }
    fn semiring(&self) -> &Semiring {
        WeightedOpa::semiring(self)
    }
    fn eval(&self, w: &Word) -> Result<Weight> {
        Ok(self.behavior(w))
    }
}

impl Series for StepFunction {
    fn alphabet(&self) -> &Arc<OpAlphabet> {
        StepFunction::alphabet(self)
    }
    fn semiring(&self) -> &Semiring {
        StepFunction::semiring(self)
    }
    fn eval(&self, w: &Word) -> Result<Weight> {
        Ok(StepFunction::eval(self, w))
    }
}

impl Series for WeightedNwa {
    fn alphabet(&self) -> &Arc<OpAlphabet> {
        WeightedNwa::alphabet(self)
    }
    fn semiring(&self) -> &Semiring {
        WeightedNwa::semiring(self)
    }
    fn eval(&self, w: &Word) -> Result<Weight> {
        self.behavior(w)
    }
}

impl Series for NivatDecomposition {
    fn alphabet(&self) -> &Arc<OpAlphabet> {
        self.target()
    }
    fn semiring(&self) -> &Semiring {
        NivatDecomposition::semiring(self)
    }
    fn eval(&self, w: &Word) -> Result<Weight> {
        Ok(self.recompose(w))
    }
}

/// How to evaluate a batch of words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to sequential evaluation without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// All words over `alpha` of length `1..=max_len`, by length and then by the
/// lexicographic order of their symbol names.
pub fn all_words(alpha: &OpAlphabet, max_len: usize) -> Vec<Word> {
    let mut order: Vec<_> = alpha.symbols().collect();
    order.sort_by(|a, b| alpha.name(*a).cmp(alpha.name(*b)));
    let mut out = Vec::new();
    let mut layer: Vec<Vec<crate::Sym>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * order.len());
        for w in &layer {
            for &a in &order {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().filter_map(Word::new));
        layer = next;
    }
    out
}

/// The compatible words among [`all_words`].
pub fn compatible_words(alpha: &OpAlphabet, max_len: usize) -> Vec<Word> {
    all_words(alpha, max_len)
        .into_iter()
        .filter(|w| alpha.is_compatible(w))
        .collect()
}

/// Maps `f` over `items`, preserving order.
pub fn map_words<T, F>(items: &[Word], exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Word) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Evaluates `s` on every word, in order.
pub fn eval_all<S: Series + ?Sized>(s: &S, words: &[Word], exec: Exec) -> Result<Vec<Weight>> {
    map_words(words, exec, |w| s.eval(w)).into_iter().collect()
}

/// Result of a bounded comparison of two series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiffOutcome {
    Equal {
        words: usize,
    },
    Mismatch {
        word: Word,
        left: Weight,
        right: Weight,
    },
}

/// Compares two series on all words (first in enumeration order wins).
pub fn diff_on<A, B>(a: &A, b: &B, words: &[Word], exec: Exec) -> Result<DiffOutcome>
where
    A: Series + ?Sized,
    B: Series + ?Sized,
{
    if a.semiring() != b.semiring() {
        return Err(Error::SemiringMismatch {
            expected: a.semiring().id(),
            found: b.semiring().id(),
        });
    }
    let results = map_words(words, exec, |w| -> Result<Option<(Weight, Weight)>> {
        let (x, y) = (a.eval(w)?, b.eval(w)?);
        Ok((x != y).then_some((x, y)))
    });
    for (w, r) in words.iter().zip(results) {
        if let Some((left, right)) = r? {
            return Ok(DiffOutcome::Mismatch {
                word: w.clone(),
                left,
                right,
            });
        }
    }
    Ok(DiffOutcome::Equal { words: words.len() })
}

/// [`diff_on`] over all compatible words up to `max_len`; both series must
/// share an alphabet.
pub fn diff<A, B>(a: &A, b: &B, max_len: usize, exec: Exec) -> Result<DiffOutcome>
where
    A: Series + ?Sized,
    B: Series + ?Sized,
{
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    diff_on(a, b, &compatible_words(a.alphabet(), max_len), exec)
}
