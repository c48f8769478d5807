//! Classical and free Meixner classes of orthogonal polynomials.
//!
//! Every family is carried by its Jacobi coefficients; polynomial and series
//! identities are checked in exact rational arithmetic wherever the inputs
//! allow it.

pub mod check;
pub mod cumulants;
pub mod error;
pub mod jacobi;
pub mod operators;
pub mod params;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use jacobi::{JacobiCoeffs, MomentSeq, QuadratureRule};
pub use params::{alpha_beta, classify, AlphaBeta, Framework, MeixnerCase, MeixnerParams};
pub use poly::{OpsBasis, Poly};
pub use scalar::{parse_rational, QuadraticSurd, Rational, Scalar};
pub use series::TruncatedSeries;

/// Default truncation order for series computations.
pub const DEFAULT_ORDER: usize = 16;
