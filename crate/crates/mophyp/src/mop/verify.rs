//! Exact verification of orthogonality conditions, with per-check reports.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mop::type1::{
    combined_rel_moment, type1_moment_formula, type1_moment_ratio, TypeIResult,
};
use crate::mop::type2::TypeIIResult;
use crate::multiindex::MultiIndex;
use crate::params::{ParamSystem, WeightId};
use crate::rat::Rat;

/// One named exact check; `residual` holds the exact deviation as a string
/// ("0" on success) so reports stay machine-readable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: String,
}

impl Check {
    pub fn exact(name: impl Into<String>, residual: &Rat) -> Self {
        Check {
            name: name.into(),
            passed: residual.is_zero(),
            residual: residual.to_string(),
        }
    }

    pub fn float(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            passed: residual.abs() <= tol,
            residual: format!("{residual:e}"),
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, note: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            residual: note.into(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Verifies each type II orthogonality sum exactly:
/// sum_k P[k] rel_moment(w_j, s + k) = 0 for s < n_j (and the v-analogues).
pub fn verify_type2(
    sys: &ParamSystem,
    mi: &MultiIndex,
    result: &TypeIIResult,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let mut conditions: Vec<(WeightId, usize)> = Vec::new();
    for (j, &c) in mi.head().iter().enumerate() {
        for s in 0..c {
            conditions.push((WeightId::W(j + 1), s));
        }
    }
    if let Some(tail) = mi.tail() {
        for (j, &c) in tail.iter().enumerate() {
            for s in 0..c {
                conditions.push((WeightId::V(j + 1), s));
            }
        }
    }
    for (w, s) in conditions {
        let mut acc = Rat::zero();
        for (k, coef) in result.poly.coeffs().iter().enumerate() {
            if !coef.is_zero() {
                acc += coef * sys.rel_moment(w, s + k)?;
            }
        }
        report.push(Check::exact(format!("type2 orth {w} s={s}"), &acc));
    }
    Ok(report)
}

/// Verifies the type I combined moments against the closed-form moment
/// formula for s = 1..=2N, exactly.
pub fn verify_type1(
    sys: &ParamSystem,
    mi: &MultiIndex,
    result: &TypeIResult,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let ratio = type1_moment_ratio(sys, mi);
    for s in 1..=2 * mi.size() {
        let lhs = combined_rel_moment(sys, result, s)? * ratio.clone();
        let rhs = type1_moment_formula(sys, mi, s);
        report.push(Check::exact(format!("type1 moment s={s}"), &(lhs - rhs)));
    }
    Ok(report)
}

/// Convenience wrapper running whichever verification matches the result kind.
pub fn verify_orthogonality(
    sys: &ParamSystem,
    mi: &MultiIndex,
    type2: Option<&TypeIIResult>,
    type1: Option<&TypeIResult>,
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    if let Some(t2) = type2 {
        report.merge(verify_type2(sys, mi, t2)?);
    }
    if let Some(t1) = type1 {
        report.merge(verify_type1(sys, mi, t1)?);
    }
    Ok(report)
}

/// Exact pairing of a type II polynomial with the moment sequence of a type I
/// function: sum_k P[k] * (relative type I moment at s = k + 1).
/// Vanishes whenever deg P = |n| <= |n'| - 2.
pub fn biorthogonal_pairing(
    sys: &ParamSystem,
    type2: &TypeIIResult,
    mi_type1: &MultiIndex,
) -> Rat {
    let ratio = type1_moment_ratio(sys, mi_type1);
    let mut acc = Rat::zero();
    for (k, coef) in type2.poly.coeffs().iter().enumerate() {
        if !coef.is_zero() {
            acc += coef * (type1_moment_formula(sys, mi_type1, k + 1) / ratio.clone());
        }
    }
    acc
}
