//! Quadratic forms: Gram data, rank, normal forms, collapse witnesses and
//! space-level questions.

mod classify;
mod discriminant;
mod gram;
mod normal;
mod space;

pub use classify::{classify_all_reducible, ReducibleClassification};
pub(crate) use classify::invariant_directions;
pub use discriminant::{reduced_discriminant, Discriminant};
pub use gram::{gram, quad_rank, QuadData, SymRep};
pub use normal::{
    canonical_quadric, collapse_witness, jrank_quadric, normal_form, strength_quadric, CollapseWitness,
    NormalFormResult,
};
pub(crate) use space::{enumerate_min_rank, visit_projective};
pub use space::{max_rank_element, space_min_rank, space_strength, Backend, MinRank, SpaceStrength};
