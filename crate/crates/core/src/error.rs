use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants fall into two families: malformed input (`is_input_error`) and
/// well-formed input that violates an operation's precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semiring mismatch: expected {expected}, found {found}")]
    SemiringMismatch { expected: String, found: String },

    #[error("unknown semiring id `{0}`")]
    UnknownSemiring(String),

    #[error("invalid weight literal `{literal}` for semiring {semiring}: {reason}")]
    InvalidWeight {
        literal: String,
        semiring: String,
        reason: String,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("symbol map is not total: no image for `{0}`")]
    MapDomain(String),

    #[error("word `{0}` is not compatible with the precedence matrix")]
    Incompatible(String),

    #[error("operands are defined over different OP alphabets")]
    AlphabetMismatch,

    #[error("a deterministic automaton is required: {0}")]
    DeterminismRequired(String),

    #[error("a commutative semiring is required, got {0}")]
    CommutativityRequired(String),

    #[error("the symbol map is not OPM-preserving")]
    NotOpmPreserving,

    #[error("a restricted automaton (all pop weights one) is required")]
    RestrictedRequired,

    #[error("unsupported word: {0}")]
    UnsupportedWord(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("malformed formula: {0}")]
    MalformedFormula(String),

    #[error("assignment space {space} exceeds the evaluation budget {budget}")]
    BudgetExceeded { space: u128, budget: u128 },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than a violated precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::UnknownSemiring(_)
                | Error::InvalidWeight { .. }
                | Error::UnknownSymbol(_)
                | Error::UnknownState(_)
                | Error::InvalidAlphabet(_)
                | Error::InvalidAutomaton(_)
                | Error::MapDomain(_)
                | Error::UnboundVariable(_)
                | Error::InvalidAssignment(_)
                | Error::MalformedFormula(_)
                | Error::Parse(_)
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SemiringMismatch { .. } => "semiring-mismatch",
            Error::UnknownSemiring(_) => "unknown-semiring",
            Error::InvalidWeight { .. } => "invalid-weight",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::UnknownState(_) => "unknown-state",
            Error::InvalidAlphabet(_) => "invalid-alphabet",
            Error::InvalidAutomaton(_) => "invalid-automaton",
            Error::MapDomain(_) => "map-domain",
            Error::Incompatible(_) => "incompatible-word",
            Error::AlphabetMismatch => "alphabet-mismatch",
            Error::DeterminismRequired(_) => "determinism-required",
            Error::CommutativityRequired(_) => "commutativity-required",
            Error::NotOpmPreserving => "not-opm-preserving",
            Error::RestrictedRequired => "restricted-required",
            Error::UnsupportedWord(_) => "unsupported-word",
            Error::UnboundVariable(_) => "unbound-variable",
            Error::InvalidAssignment(_) => "invalid-assignment",
            Error::MalformedFormula(_) => "malformed-formula",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::UnsupportedCase(_) => "unsupported-case",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
