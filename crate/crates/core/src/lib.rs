//! Strength, collapse and small-subalgebra computations for homogeneous forms
//! over finite fields and the rationals.

pub mod algebra;
pub mod error;
pub mod forms;

pub use error::{Error, Result};
pub mod oracle;
pub mod quadforms;
pub mod bounds;
pub mod json;
pub mod subalgebra;
pub mod suites;
