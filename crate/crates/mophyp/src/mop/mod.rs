//! Exact construction and verification of the type I and type II multiple
//! orthogonal polynomials in the Jacobi, Laguerre and Bessel settings.

mod pearson;
mod type1;
mod type2;
mod verify;

pub use pearson::{pearson_data, pearson_verify, PearsonData};
pub use type1::{
    combined_rel_moment, type1_construct, type1_moment_formula, type1_oracle, Type1Route,
    TypeIResult,
};
pub use type2::{type2_construct, type2_oracle, TypeIIResult};
pub use verify::{
    biorthogonal_pairing, verify_orthogonality, verify_type1, verify_type2, Check, CheckReport,
};

use serde::{Deserialize, Serialize};

/// Scaling conventions for type II polynomials. The underlying polynomial is
/// unique up to a scalar; equivalence checks are always up to scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Constant term one (the hypergeometric series convention).
    HypergeometricConstantOne,
    /// Leading coefficient one.
    Monic,
}
