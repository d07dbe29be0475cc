//! Matrix Pearson relations, verified exactly at the moment level.
//!
//! For p <= q the relation checked is, for every row J and integer s,
//!     sum_j [g_j + (s + b_J) d_{jJ}] w^_j(s) = s^{q-p} (s + b_J + 1) w^_J(s+1)
//! with g_j = (-b_j)^{q-p} prod_i (a_i - b_j) / prod_{i!=j} (b_i - b_j);
//! at p = q this is exactly the moment-level relation behind the matrix
//! Pearson equation, and the s^{q-p} factor is the unique monic completion
//! that extends it to the Bessel setting.
//!
//! For p > q (Laguerre) the relation is
//!     (s-1) v^_{p-q}(s) = sum_j c_j w^_j(s) + v^_1(s+1) + sum_j d_{j-1} v^_j(s)
//! with the c_j and d_k read off an exact partial fraction decomposition of
//! prod_i (s + a_i) / prod_j (s + b_j) in the shifted variable s - 1.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mop::verify::{Check, CheckReport};
use crate::params::{ParamSystem, Setting, WeightId};
use crate::pfrac::partial_fractions_shifted;
use crate::poly::ExactPolynomial;
use crate::rat::{rat_int, Rat};

/// Coefficients of the matrix Pearson relation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PearsonData {
    /// Diagonal-inclusive coefficients c_j (one per b entry). For p <= q this
    /// is g_j + b_j; for the Laguerre setting the c_j of the displayed
    /// relation.
    #[serde(with = "crate::rat::serde_str_vec")]
    pub c: Vec<Rat>,
    /// d_0..d_{p-q-1}; empty outside the Laguerre setting.
    #[serde(with = "crate::rat::serde_str_vec")]
    pub d: Vec<Rat>,
}

fn base_coefficient(sys: &ParamSystem, j: usize) -> Rat {
    let b = sys.b();
    let mut g = Rat::one();
    for a in sys.a() {
        g *= a - &b[j];
    }
    for (i, bi) in b.iter().enumerate() {
        if i != j {
            g /= bi - &b[j];
        }
    }
    for _ in 0..sys.q().saturating_sub(sys.p()) {
        g *= -b[j].clone();
    }
    g
}

/// Computes the Pearson coefficients for the system. Requires pairwise
/// distinct b entries.
pub fn pearson_data(sys: &ParamSystem) -> Result<PearsonData> {
    if !sys.hypotheses().b_pairwise_distinct {
        return Err(Error::HypothesisViolation(
            "Pearson coefficients need pairwise distinct b entries".into(),
        ));
    }
    match sys.setting() {
        Setting::Jacobi | Setting::Bessel => {
            let c = (0..sys.q())
                .map(|j| base_coefficient(sys, j) + sys.b()[j].clone())
                .collect();
            Ok(PearsonData { c, d: vec![] })
        }
        Setting::Laguerre => {
            // prod_i (s + a_i) / prod_j (s + b_j), polynomial part in (s - 1)
            let mut numer = ExactPolynomial::one();
            for a in sys.a() {
                numer = numer.mul(&ExactPolynomial::new(vec![a.clone(), Rat::one()]));
            }
            let poles: Vec<(Rat, usize)> =
                sys.b().iter().map(|b| (-b.clone(), 1)).collect();
            let dec = partial_fractions_shifted(&numer, &poles, &Rat::one())?;
            let lead = dec.polynomial_part.coeff(sys.num_v());
            if !lead.is_one() {
                return Err(Error::HypothesisViolation(format!(
                    "expected monic polynomial part, leading coefficient {lead}"
                )));
            }
            let c = (0..sys.q()).map(|j| -dec.coeff(j, 1)).collect();
            let d = (0..sys.num_v())
                .map(|k| -dec.polynomial_part.coeff(k))
                .collect();
            Ok(PearsonData { c, d })
        }
    }
}

fn w_hat(sys: &ParamSystem, j: usize, s: usize) -> Result<Rat> {
    sys.rel_moment(WeightId::W(j + 1), s - 1)
}

fn v_hat(sys: &ParamSystem, j: usize, s: usize) -> Result<Rat> {
    sys.rel_moment(WeightId::V(j + 1), s - 1)
}

/// Verifies the Pearson relation exactly at s = 1..=2 max(p, q) + 3.
pub fn pearson_verify(sys: &ParamSystem, data: &PearsonData) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let smax = 2 * sys.r() + 3;
    match sys.setting() {
        Setting::Jacobi | Setting::Bessel => {
            let gap = sys.q() - sys.p();
            for jj in 0..sys.q() {
                let bj = sys.b()[jj].clone();
                for s in 1..=smax {
                    let srat = rat_int(s as i64);
                    let mut lhs = Rat::one() - Rat::one();
                    for j in 0..sys.q() {
                        let mut coef = data.c[j].clone() - sys.b()[j].clone();
                        if j == jj {
                            coef += &srat + &bj;
                        }
                        lhs += coef * w_hat(sys, j, s)?;
                    }
                    let mut rhs = (&srat + &bj + Rat::one()) * w_hat(sys, jj, s + 1)?;
                    for _ in 0..gap {
                        rhs *= &srat;
                    }
                    report.push(Check::exact(
                        format!("pearson row J={} s={s}", jj + 1),
                        &(lhs - rhs),
                    ));
                }
            }
        }
        Setting::Laguerre => {
            let pv = sys.num_v();
            for s in 1..=smax {
                let srat = rat_int(s as i64);
                let lhs = (&srat - Rat::one()) * v_hat(sys, pv - 1, s)?;
                let mut rhs = v_hat(sys, 0, s + 1)?;
                for j in 0..sys.q() {
                    rhs += data.c[j].clone() * w_hat(sys, j, s)?;
                }
                for j in 0..pv {
                    rhs += data.d[j].clone() * v_hat(sys, j, s)?;
                }
                report.push(Check::exact(format!("pearson laguerre s={s}"), &(lhs - rhs)));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn diagonal_coefficient_cancels_in_hand_case() {
        // p=q=1, a=(0), b=(1): c_1 = -1 + 1 = 0
        let sys = ParamSystem::from_i64(&[0], &[1]).unwrap();
        let data = pearson_data(&sys).unwrap();
        assert_eq!(data.c, vec![rat_int(0)]);
        let rep = pearson_verify(&sys, &data).unwrap();
        assert!(rep.all_passed());
    }

    #[test]
    fn laguerre_hand_case() {
        // p=1, q=0, a=(0): no c, d_0 = -1
        let sys = ParamSystem::from_i64(&[0], &[]).unwrap();
        let data = pearson_data(&sys).unwrap();
        assert!(data.c.is_empty());
        assert_eq!(data.d, vec![rat_int(-1)]);
        let rep = pearson_verify(&sys, &data).unwrap();
        assert!(rep.all_passed());
    }

    #[test]
    fn random_rational_systems_verify_exactly() {
        let cases = [
            ParamSystem::new(vec![rat(1, 3), rat(1, 5)], vec![rat(1, 2), rat(9, 7)]).unwrap(),
            ParamSystem::new(vec![rat(1, 4), rat(2, 3)], vec![rat(5, 6)]).unwrap(),
            ParamSystem::new(vec![rat(1, 5)], vec![rat(1, 2), rat(7, 3)]).unwrap(),
            ParamSystem::new(vec![rat(2, 7), rat(1, 6), rat(3, 4)], vec![rat(1, 2)]).unwrap(),
        ];
        for sys in cases {
            let data = pearson_data(&sys).unwrap();
            let rep = pearson_verify(&sys, &data).unwrap();
            assert!(
                rep.all_passed(),
                "{:?} failed: {:?}",
                sys,
                rep.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn perturbed_coefficients_fail() {
        let sys = ParamSystem::new(vec![rat(1, 3)], vec![rat(1, 2)]).unwrap();
        let mut data = pearson_data(&sys).unwrap();
        data.c[0] += rat(1, 10);
        let rep = pearson_verify(&sys, &data).unwrap();
        assert!(!rep.all_passed());
    }

    #[test]
    fn repeated_b_rejected() {
        let sys = ParamSystem::new(vec![rat(1, 3), rat(1, 5)], vec![rat(1, 2), rat(1, 2)])
            .unwrap();
        assert!(pearson_data(&sys).is_err());
    }
}
