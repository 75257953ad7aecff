//! Exact scalar arithmetic and linear algebra.

mod bound;
mod field;
mod gf;
mod matrix;
mod rational;

pub use bound::BoundValue;
pub use field::{is_prime, CharClass, Field, FieldSpec};
pub use gf::{Gf, BINARY_MODULI};
pub use matrix::Matrix;
pub use rational::Rationals;
