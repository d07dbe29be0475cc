//! Type II polynomials: the hypergeometric closed form and an independent
//! moment-matrix oracle.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mop::Normalization;
use crate::multiindex::MultiIndex;
use crate::params::{ParamSystem, Setting, WeightId};
use crate::poly::ExactPolynomial;
use crate::rat::{poch, Rat};

/// A constructed type II polynomial.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeIIResult {
    pub poly: ExactPolynomial,
    pub normalization: Normalization,
    pub setting: Setting,
}

impl TypeIIResult {
    /// The same polynomial in monic normalization.
    pub fn monic(&self) -> TypeIIResult {
        TypeIIResult {
            poly: self.poly.monic().expect("nonzero type II polynomial"),
            normalization: Normalization::Monic,
            setting: self.setting,
        }
    }
}

/// Closed-form type II polynomial: coefficients
/// c_k = (-N)_k prod_j (b_j + n_j + 1)_k / (prod_i (a_i + 1)_k k!)
/// with N the full size of the multi-index and n its head.
pub fn type2_construct(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIIResult> {
    mi.validate_for(sys)?;
    let nn = mi.size();
    let head = mi.head();
    let mut coeffs = Vec::with_capacity(nn + 1);
    let minus_n = crate::rat::rat_int(-(nn as i64));
    let mut kfac = Rat::one();
    for k in 0..=nn {
        if k > 0 {
            kfac *= Rat::from_integer(BigInt::from(k as i64));
        }
        let mut c = poch(&minus_n, k) / kfac.clone();
        for (j, b) in sys.b().iter().enumerate() {
            let up = b + Rat::from_integer(BigInt::from(head[j] as i64 + 1));
            c *= poch(&up, k);
        }
        for a in sys.a() {
            c /= poch(&(a + Rat::one()), k);
        }
        coeffs.push(c);
    }
    Ok(TypeIIResult {
        poly: ExactPolynomial::new(coeffs),
        normalization: Normalization::HypergeometricConstantOne,
        setting: sys.setting(),
    })
}

/// Independent oracle: exact null-space solve of the moment matrix built from
/// the relative moments. Slower, but shares no code path with the closed form.
pub fn type2_oracle(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIIResult> {
    mi.validate_for(sys)?;
    let nn = mi.size();
    let mut rows: Vec<(WeightId, usize)> = Vec::with_capacity(nn);
    for (j, &njj) in mi.head().iter().enumerate() {
        for s in 0..njj {
            rows.push((WeightId::W(j + 1), s));
        }
    }
    if let Some(tail) = mi.tail() {
        for (j, &mjj) in tail.iter().enumerate() {
            for s in 0..mjj {
                rows.push((WeightId::V(j + 1), s));
            }
        }
    }
    debug_assert_eq!(rows.len(), nn);
    let mut mat = RatMatrix::zero(nn, nn + 1);
    for (r, (w, s)) in rows.iter().enumerate() {
        for k in 0..=nn {
            mat[(r, k)] = sys.rel_moment(*w, s + k)?;
        }
    }
    let ns = mat.null_space();
    if ns.len() != 1 {
        return Err(Error::RankDeficient(format!(
            "null space dimension {} (index not normal, or hypotheses violated)",
            ns.len()
        )));
    }
    let poly = ExactPolynomial::new(ns.into_iter().next().unwrap());
    if poly.degree() != Some(nn) {
        return Err(Error::RankDeficient(
            "oracle polynomial does not attain full degree".into(),
        ));
    }
    let (poly, normalization) = match poly.constant_term_one() {
        Some(p) => (p, Normalization::HypergeometricConstantOne),
        None => (poly.monic().unwrap(), Normalization::Monic),
    };
    Ok(TypeIIResult {
        poly,
        normalization,
        setting: sys.setting(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn jacobi_legendre_like_case() {
        // a = (0), b = (0), n = (2): 1 - 6x + 6x^2 (shifted Legendre)
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let p = type2_construct(&sys, &MultiIndex::new(vec![2])).unwrap();
        assert_eq!(p.poly, ExactPolynomial::from_i64(&[1, -6, 6]));
    }

    #[test]
    fn laguerre_case() {
        // p=1, q=0, a=(0), tail (2): 1 - 2x + x^2/2 = L_2^{(0)}
        let sys = ParamSystem::from_i64(&[0], &[]).unwrap();
        let mi = MultiIndex::with_tail(vec![], vec![2]);
        let p = type2_construct(&sys, &mi).unwrap();
        assert_eq!(
            p.poly,
            ExactPolynomial::new(vec![rat_int(1), rat_int(-2), rat(1, 2)])
        );
    }

    #[test]
    fn bessel_case() {
        // p=0, q=1, b=(0), n=(1): 2F0(-1, 2; -; z) = 1 - 2z
        let sys = ParamSystem::from_i64(&[], &[0]).unwrap();
        let p = type2_construct(&sys, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(p.poly, ExactPolynomial::from_i64(&[1, -2]));
    }

    #[test]
    fn oracle_matches_hand_solved_cases() {
        // degree-2 case: solve int_0^1 (c0 + c1 x + c2 x^2) x^k dx = 0, k = 0, 1
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let o = type2_oracle(&sys, &MultiIndex::new(vec![2])).unwrap();
        assert_eq!(o.poly, ExactPolynomial::from_i64(&[1, -6, 6]));
        // degree-1 case: single equation gives 1 - 2x
        let o = type2_oracle(&sys, &MultiIndex::new(vec![1])).unwrap();
        assert_eq!(o.poly, ExactPolynomial::from_i64(&[1, -2]));
    }

    #[test]
    fn oracle_equals_construct_up_to_scalar_jacobi_pineiro() {
        let sys = ParamSystem::new(vec![rat_int(0), rat(1, 2)], vec![rat_int(0), rat(1, 2)])
            .unwrap();
        let mi = MultiIndex::new(vec![1, 1]);
        let c = type2_construct(&sys, &mi).unwrap();
        let o = type2_oracle(&sys, &mi).unwrap();
        let s = c.poly.proportionality(&o.poly);
        assert!(s.is_some());
        // pinned coefficients for the construct route: 1 - 20/3 x + 7 x^2
        assert_eq!(
            c.poly,
            ExactPolynomial::new(vec![rat_int(1), rat(-20, 3), rat_int(7)])
        );
    }
}
