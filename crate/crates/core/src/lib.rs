//! Exact computational engine for plastic-number polynomial structures.
//!
//! Everything is computed over the cubic field Q(rho), rho the real root
//! of x^3 - x - 1, with tensor fields on a single polynomial coordinate
//! chart. Identity checks are exact (rational-function equality by
//! cross-multiplication); floating point appears only in the advisory
//! embedding cross-check. All values are immutable after construction and
//! safe to share across threads.

pub mod chart;
pub mod connection;
pub mod error;
pub mod generalized;
pub mod matrix;
pub mod numberfield;
pub mod parse;
pub mod plastic;
pub mod symfunc;
pub mod verifier;

pub use chart::{Chart, Metric, OneForm, Tensor11, TwoTensor, VectorField};
pub use connection::Connection;
pub use error::{Error, Result};
pub use generalized::{GenOperator, GenSection};
pub use matrix::FnMatrix;
pub use numberfield::{rat, rat_frac, FieldElem, Rational};
pub use plastic::{Cubic, Matrix2};
pub use symfunc::{Polynomial, RationalFn};
pub use verifier::{InstanceSpec, SuiteConfig, SuiteReport};
