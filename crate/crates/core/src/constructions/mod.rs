//! Closure constructions on weighted OPA, the embedding of weighted nested
//! word automata, and the Nivat decomposition.

mod closure;
mod nivat;
mod nwa;
mod unpop;

pub use closure::{hadamard, intersect_with_opl, project, scalar_left_multiply, sum, sum_all};
pub use nivat::{nivat_decompose, NivatDecomposition};
pub use nwa::{from_nwa, NwaKind, WeightedNwa, WeightedNwaBuilder};
pub use unpop::eliminate_pop_weights;
