//! Weighted operator precedence languages.
//!
//! OP alphabets and the chain relation ([`alphabet`]), unweighted and weighted
//! operator precedence automata ([`opa`], [`wopa`]), OPL step functions
//! ([`step`]), closure and translation constructions ([`constructions`]), and a
//! direct evaluator for weighted MSO over OP alphabets ([`logic`]).
//!
//! ```
//! use wopl::{fixtures, semiring::Weight};
//!
//! let penalty = fixtures::penalty();
//! let w = penalty.alphabet().word("call int").unwrap();
//! assert_eq!(penalty.behavior(&w), Weight::rational(1, 2));
//! ```

pub mod alphabet;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod logic;
pub mod opa;
pub mod semiring;
pub mod series;
pub mod step;
pub mod wopa;

pub use alphabet::{Letter, OpAlphabet, Prec, Sym, Word};
pub use error::{Error, Result};
pub use opa::{Opa, State};
pub use semiring::{Semiring, Weight};
pub use wopa::WeightedOpa;
