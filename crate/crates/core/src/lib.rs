//! Exact and high-precision machinery for recurrence relations among the values
//! `ζ(2k+1)` of the Riemann zeta function.
//!
//! The algebraic layers ([`laurent`], [`cothalg`], [`coeffs`]) are generic over a
//! [`scalar::Field`]; the numeric layer ([`zetanum`]) over a [`scalar::Real`].
//! Concrete instantiations are exported below.

pub mod bigfloat;
pub mod cli;
pub mod coeffs;
pub mod cothalg;
pub mod exactcore;
pub mod identities;
pub mod laurent;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod zetanum;

pub use bigfloat::BigFloat;

pub type Rational = num_rational::BigRational;
pub type LaurentPolyQ = laurent::LaurentPoly<Rational>;
pub type LaurentPolyF64 = laurent::LaurentPoly<f64>;
pub type CPolyQ = cothalg::CPoly<Rational>;
pub type MatrixQ = matrix::Matrix<Rational>;
