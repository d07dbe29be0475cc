//! Multiple orthogonal polynomials of hypergeometric type.
//!
//! Exact construction and verification of type I / type II multiple
//! orthogonal polynomials in the Jacobi, Laguerre and Bessel settings,
//! finite free multiplicative convolution and S-transform machinery,
//! high-precision zero extraction with limiting-density comparison,
//! product random matrix simulation, and exact Hermite-Pade approximants
//! with Diophantine quality diagnostics.
//!
//! Everything the theory makes exact is computed in arbitrary-precision
//! rational arithmetic; asymptotic statements are checked numerically at
//! desk scale.

pub mod analysis;
pub mod error;
pub mod freeconv;
pub mod hppade;
pub mod linalg;
pub mod mop;
pub mod multiindex;
pub mod params;
pub mod pfrac;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod rmt;
pub mod series;
pub mod sweep;
pub mod zeros;

pub use error::{Error, Result};
pub use multiindex::MultiIndex;
pub use params::{ParamSystem, Setting, WeightId};
pub use poly::ExactPolynomial;
pub use rat::Rat;
