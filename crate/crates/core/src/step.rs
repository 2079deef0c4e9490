//! OPL step functions `Σᵢ kᵢ·1_{Lᵢ}` with deterministic OPA for the `Lᵢ`.

use std::sync::Arc;

use crate::alphabet::{OpAlphabet, Word};
use crate::constructions::{intersect_with_opl, scalar_left_multiply, sum_all};
use crate::error::{Error, Result};
use crate::opa::Opa;
use crate::semiring::{Semiring, Weight};
use crate::series::compatible_words;
use crate::wopa::WeightedOpa;

#[derive(Clone, Debug)]
pub struct StepFunction {
    alpha: Arc<OpAlphabet>,
    semiring: Semiring,
    parts: Vec<(Opa, Weight)>,
}

/// Outcome of the bounded partition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionCheck {
    /// Every compatible word up to the bound lies in exactly one part.
    Partition,
    /// A word accepted by a number of parts other than one.
    Violated { word: Word, parts: usize },
}

impl StepFunction {
    pub fn new(
        alpha: Arc<OpAlphabet>,
        semiring: Semiring,
        parts: Vec<(Opa, Weight)>,
    ) -> Result<StepFunction> {
        for (i, (a, k)) in parts.iter().enumerate() {
            if *a.alphabet() != alpha {
                return Err(Error::AlphabetMismatch);
            }
            if !a.is_deterministic() {
                return Err(Error::DeterminismRequired(format!(
                    "step function part {i}"
                )));
            }
            semiring.check(k)?;
        }
        Ok(StepFunction {
            alpha,
            semiring,
            parts,
        })
    }

    /// `k·1_{(Σ,M)⁺}`.
    pub fn constant(alpha: Arc<OpAlphabet>, semiring: Semiring, k: Weight) -> Result<StepFunction> {
        let u = Opa::universal(alpha.clone());
        StepFunction::new(alpha, semiring, vec![(u, k)])
    }

    pub fn alphabet(&self) -> &Arc<OpAlphabet> {
        &self.alpha
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn parts(&self) -> &[(Opa, Weight)] {
        &self.parts
    }

    /// Sum of the weights of all parts accepting `w`.
    pub fn eval(&self, w: &Word) -> Weight {
        self.parts
            .iter()
            .filter(|(a, _)| a.accepts(w))
            .fold(self.semiring.zero(), |acc, (_, k)| {
                self.semiring.add_unchecked(&acc, k)
            })
    }

    fn combine(
        &self,
        other: &StepFunction,
        op: impl Fn(&Weight, &Weight) -> Weight,
    ) -> Result<StepFunction> {
        if self.alpha != other.alpha {
            return Err(Error::AlphabetMismatch);
        }
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch {
                expected: self.semiring.id(),
                found: other.semiring.id(),
            });
        }
        let mut parts = Vec::new();
        for (a, k) in &self.parts {
            for (b, k2) in &other.parts {
                parts.push((a.product(b)?, op(k, k2)));
            }
        }
        StepFunction::new(self.alpha.clone(), self.semiring.clone(), parts)
    }

    /// Parts `Lᵢ ∩ L′ⱼ` weighted `kᵢ + k′ⱼ`.
    pub fn add(&self, other: &StepFunction) -> Result<StepFunction> {
        self.combine(other, |x, y| self.semiring.add_unchecked(x, y))
    }

    /// Parts `Lᵢ ∩ L′ⱼ` weighted `kᵢ · k′ⱼ`.
    pub fn mul(&self, other: &StepFunction) -> Result<StepFunction> {
        self.combine(other, |x, y| self.semiring.mul_unchecked(x, y))
    }

    /// Checks on all compatible words up to `max_len` that the parts partition them.
    pub fn check_partition(&self, max_len: usize) -> PartitionCheck {
        for w in compatible_words(&self.alpha, max_len) {
            let n = self.parts.iter().filter(|(a, _)| a.accepts(&w)).count();
            if n != 1 {
                return PartitionCheck::Violated { word: w, parts: n };
            }
        }
        PartitionCheck::Partition
    }

    /// A restricted wOPA with the same behavior: the sum over the parts of
    /// `⟦kᵢ⟧ ∩ Lᵢ`, where `⟦kᵢ⟧` is the scaled universal automaton.
    pub fn to_rwopa(&self) -> Result<WeightedOpa> {
        let universal =
            WeightedOpa::lift(&Opa::universal(self.alpha.clone()), self.semiring.clone());
        let pieces = self
            .parts
            .iter()
            .map(|(l, k)| intersect_with_opl(&scalar_left_multiply(k, &universal)?, l))
            .collect::<Result<Vec<_>>>()?;
        sum_all(&self.alpha, &self.semiring, &pieces)
    }
}
