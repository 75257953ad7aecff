//! Homogeneous polynomials, graded subspaces and linear coordinate changes.

mod form;
mod linear;
mod monomial;
mod parse;
mod subring;
mod subspace;

pub use form::Form;
pub use linear::{LinearChange, LinearPool};
pub use monomial::Monomial;
pub use parse::{parse_form, parse_form_in, parse_forms, parse_forms_in, MAX_VARS};
pub use subring::{membership_in_subring, SubringExpression};
pub use subspace::{
    check_degrees, derivative_space, dimension_sequence, reduce_mod_linear, DimensionSequence,
    GradedSubspace,
};
