//! Independent checks: Buchberger Groebner bases, dimension counts and
//! exhaustive collapse search.

mod brute;
mod dimension;
mod groebner;

pub use brute::brute_strength;
pub use dimension::{
    hilbert_function, is_regular_sequence, krull_dim, minors_space, singular_codim, subsets, symbolic_det,
};
pub use groebner::{groebner, groebner_with_budget, Budget, GroebnerBasis, MonomialOrder};
