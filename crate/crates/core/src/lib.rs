//! Exact computations on Fock spaces with equivariant-parameter coefficients.

pub mod adhm;
pub mod characters;
pub mod error;
pub mod exact;
pub mod fock;
pub mod matrix;
pub mod rmatrix;
pub mod scalar;
pub mod virasoro;
pub mod wlattice;

pub use error::{Error, Result};
pub use exact::{Poly, RationalFunction, Var};
pub use matrix::Matrix;

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
/// Polynomials over the rationals in the equivariant variables.
pub type QPoly = Poly<Rational>;
/// Rational functions over the rationals in the equivariant variables.
pub type QFunc = RationalFunction<Rational>;
/// Fock vectors with rational-function coefficients.
pub type QVector = fock::FockVector<QFunc>;
/// Operators with rational-function entries.
pub type QOperator = fock::OperatorMatrix<QFunc>;
