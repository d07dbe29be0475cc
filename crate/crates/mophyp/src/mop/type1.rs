//! Type I polynomials: the Jacobi/Bessel closed forms, the Jacobi-Pineiro
//! partial-fraction route, the exact oracle used in the Laguerre setting, and
//! the closed-form moment formula of the normalized type I function.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::multiindex::MultiIndex;
use crate::params::{ParamSystem, Setting};
use crate::poly::ExactPolynomial;
use crate::rat::{poch, rat_int, Rat};

/// Which construction produced a type I result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Type1Route {
    /// Triple-sum closed form (Jacobi/Bessel, generic parameters).
    ClosedForm,
    /// Partial-fraction coefficients (confluent case a = b).
    JacobiPineiro,
    /// Exact moment-system solve.
    Oracle,
}

/// Type I vector (A_{n,1}, ..., A_{n,r}), ordered like `sys.weights()`
/// (w_1..w_q then v_1..v_{p-q}); normalized so the type I function has
/// Mellin data Gamma(s+a)/Gamma(s+b+n) (1-s)_{N-1}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeIResult {
    pub polys: Vec<ExactPolynomial>,
    #[serde(with = "crate::rat::serde_str")]
    pub normalization: Rat,
    pub route: Type1Route,
}

/// Exact relative moment of the normalized type I function:
/// (a+1)_{s-1} (1-s)_{N-1} / prod_j (b_j + n_j + 1)_{s-1},
/// relative to the constant Gamma(a+1)/Gamma(b+n+1).
pub fn type1_moment_formula(sys: &ParamSystem, mi: &MultiIndex, s: usize) -> Rat {
    assert!(s >= 1);
    let nn = mi.size();
    let mut acc = poch(&Rat::one(), 0);
    for a in sys.a() {
        acc *= poch(&(a + Rat::one()), s - 1);
    }
    acc *= poch(&rat_int(1 - s as i64), nn - 1);
    for (j, b) in sys.b().iter().enumerate() {
        acc /= poch(&(b + rat_int(mi.head()[j] as i64 + 1)), s - 1);
    }
    acc
}

/// prod_j (b_j + 1)_{n_j}: the constant relating the combined w/v-relative
/// moments of the type I function to `type1_moment_formula`.
pub fn type1_moment_ratio(sys: &ParamSystem, mi: &MultiIndex) -> Rat {
    let mut acc = Rat::one();
    for (j, b) in sys.b().iter().enumerate() {
        acc *= poch(&(b + Rat::one()), mi.head()[j]);
    }
    acc
}

/// Moment at integer s >= 1 of the combination sum_j A_j w_j (+ sum_j A'_j v_j),
/// relative to Gamma(a+1)/Gamma(b+1).
pub fn combined_rel_moment(
    sys: &ParamSystem,
    result: &TypeIResult,
    s: usize,
) -> Result<Rat> {
    assert!(s >= 1);
    let weights = sys.weights();
    assert_eq!(weights.len(), result.polys.len());
    let mut acc = Rat::zero();
    for (w, poly) in weights.iter().zip(&result.polys) {
        for (k, c) in poly.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += c * sys.rel_moment(*w, s - 1 + k)?;
            }
        }
    }
    Ok(acc)
}

/// Coefficients P_{n,J}[K] of the type I Jacobi-Pineiro polynomials:
/// (b_J+K+1)_{N-1} / prod_{i != J} (b_i - b_J - K)_{n_i} * (-1)^K / (K! (n_J-K-1)!).
pub fn jacobi_pineiro_coeff(b: &[Rat], head: &[usize], jj: usize, kk: usize) -> Rat {
    let nn: usize = head.iter().sum();
    let bj = &b[jj];
    let mut acc = poch(&(bj + rat_int(kk as i64 + 1)), nn - 1);
    for (i, bi) in b.iter().enumerate() {
        if i != jj {
            acc /= poch(&(bi - bj - rat_int(kk as i64)), head[i]);
        }
    }
    let sign = if kk % 2 == 0 { Rat::one() } else { -Rat::one() };
    acc * sign / (factorial(kk) * factorial(head[jj] - kk - 1))
}

fn factorial(k: usize) -> Rat {
    let mut acc = Rat::one();
    for j in 2..=k {
        acc *= rat_int(j as i64);
    }
    acc
}

/// Triple-sum closed form for the type I polynomials (Jacobi and Bessel
/// settings). Valid when b_j - a_i is never a nonpositive integer and the b
/// entries are pairwise non-congruent mod Z.
fn type1_closed_form(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIResult> {
    let b = sys.b();
    let a = sys.a();
    let head = mi.head();
    let r = b.len();
    let mut polys = Vec::with_capacity(r);
    for j in 0..r {
        if head[j] == 0 {
            polys.push(ExactPolynomial::zero());
            continue;
        }
        let mut pref = Rat::one();
        for ai in a {
            pref *= ai - &b[j];
        }
        for (i, bi) in b.iter().enumerate() {
            if i != j {
                pref /= bi - &b[j];
            }
        }
        let mut coeffs = vec![Rat::zero(); head[j]];
        for jj in 0..r {
            for kk in 0..head[jj] {
                let pjk = jacobi_pineiro_coeff(b, head, jj, kk);
                let kmax = if jj == j { kk } else { kk.saturating_sub(1) };
                if jj != j && kk == 0 {
                    continue;
                }
                let base = &b[jj] + rat_int(kk as i64);
                for k in 0..=kmax {
                    let mut t = Rat::one();
                    for (i, bi) in b.iter().enumerate() {
                        if i != j {
                            t *= poch(&(bi - &base), k + 1);
                        }
                    }
                    t *= poch(&(&b[j] - &base), k);
                    for ai in a {
                        t /= poch(&(ai - &base), k + 1);
                    }
                    coeffs[k] += &pjk * t;
                }
            }
        }
        polys.push(ExactPolynomial::new(coeffs).scale(&pref));
    }
    Ok(TypeIResult {
        polys,
        normalization: Rat::one(),
        route: Type1Route::ClosedForm,
    })
}

/// Confluent route for a = b (Jacobi-Pineiro): the type I coefficients are
/// exactly the partial-fraction coefficients P_{n,j}[k].
fn type1_jacobi_pineiro(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIResult> {
    let b = sys.b();
    let head = mi.head();
    let polys = (0..b.len())
        .map(|j| {
            ExactPolynomial::new(
                (0..head[j])
                    .map(|k| jacobi_pineiro_coeff(b, head, j, k))
                    .collect(),
            )
        })
        .collect();
    Ok(TypeIResult {
        polys,
        normalization: Rat::one(),
        route: Type1Route::JacobiPineiro,
    })
}

/// Exact oracle: solves the N-1 orthogonality conditions plus the moment
/// normalization at s = N as a square rational system.
pub fn type1_oracle(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIResult> {
    mi.validate_for(sys)?;
    let nn = mi.size();
    if nn == 0 {
        return Err(Error::InvalidMultiIndex {
            index: "[]".into(),
            reason: "type I needs a nonzero multi-index".into(),
        });
    }
    let weights = sys.weights();
    let comps = mi.all();
    // unknown layout: for each weight j, coefficients 0..comps[j]
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for (j, &c) in comps.iter().enumerate() {
        for k in 0..c {
            cols.push((j, k));
        }
    }
    debug_assert_eq!(cols.len(), nn);
    let ratio = type1_moment_ratio(sys, mi);
    let mut mat = RatMatrix::zero(nn, nn);
    let mut rhs = vec![Rat::zero(); nn];
    for s in 1..=nn {
        for (cidx, &(j, k)) in cols.iter().enumerate() {
            mat[(s - 1, cidx)] = sys.rel_moment(weights[j], s - 1 + k)?;
        }
        rhs[s - 1] = type1_moment_formula(sys, mi, s) / ratio.clone();
    }
    let sol = mat
        .solve(&rhs)
        .map_err(|_| Error::RankDeficient("type I moment system is singular".into()))?;
    let mut polys = Vec::with_capacity(weights.len());
    let mut idx = 0;
    for &c in &comps {
        let coeffs = sol[idx..idx + c].to_vec();
        idx += c;
        polys.push(ExactPolynomial::new(coeffs));
    }
    Ok(TypeIResult {
        polys,
        normalization: Rat::one(),
        route: Type1Route::Oracle,
    })
}

/// Type I construction. Dispatches to the closed form where the theorem
/// hypotheses hold, the partial-fraction route in the confluent case a = b,
/// and the exact oracle otherwise (always, in the Laguerre setting).
pub fn type1_construct(sys: &ParamSystem, mi: &MultiIndex) -> Result<TypeIResult> {
    mi.validate_for(sys)?;
    if mi.size() == 0 {
        return Err(Error::InvalidMultiIndex {
            index: "[]".into(),
            reason: "type I needs a nonzero multi-index".into(),
        });
    }
    match sys.setting() {
        Setting::Laguerre => type1_oracle(sys, mi),
        Setting::Jacobi | Setting::Bessel => {
            let h = sys.hypotheses();
            if sys.a() == sys.b() && h.b_distinct_mod_z {
                type1_jacobi_pineiro(sys, mi)
            } else if h.b_minus_a_not_nonposint && h.b_distinct_mod_z {
                type1_closed_form(sys, mi)
            } else {
                type1_oracle(sys, mi)
            }
        }
    }
}

/// Helper mirroring `rel_moment` naming for the type I function itself:
/// relative moment at s of the constructed combination, in the w/v convention.
pub fn type1_combined_formula(sys: &ParamSystem, mi: &MultiIndex, s: usize) -> Rat {
    type1_moment_formula(sys, mi, s) / type1_moment_ratio(sys, mi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::WeightId;
    use crate::rat::rat;

    #[test]
    fn moment_formula_values() {
        // r=1, a=(0), b=(0), n=(2): s=1 -> 0 and s=3 -> -1/3 (absolute -1/6
        // after the constant 1/2); the formula vanishes on s = 1..N-1
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let mi = MultiIndex::new(vec![2]);
        assert_eq!(type1_moment_formula(&sys, &mi, 1), rat_int(0));
        assert_eq!(type1_moment_formula(&sys, &mi, 3), rat(-1, 3));
        let mi4 = MultiIndex::new(vec![4]);
        for s in 1..4 {
            assert_eq!(type1_moment_formula(&sys, &mi4, s), rat_int(0));
        }
        assert!(!type1_moment_formula(&sys, &mi4, 4).is_zero());
    }

    #[test]
    fn degree_zero_case_fixed_by_normalization() {
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let mi = MultiIndex::new(vec![1]);
        let r = type1_construct(&sys, &mi).unwrap();
        assert_eq!(r.polys[0], ExactPolynomial::one());
    }

    #[test]
    fn jacobi_pineiro_route_matches_legendre_case() {
        // a=(0), b=(0), n=(2): A(x) = 1 - 2x with moments (1-s)/(s(s+1))
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let mi = MultiIndex::new(vec![2]);
        let r = type1_construct(&sys, &mi).unwrap();
        assert_eq!(r.route, Type1Route::JacobiPineiro);
        assert_eq!(r.polys[0], ExactPolynomial::from_i64(&[1, -2]));
        // int_0^1 (1-2x) x^{s-1} dx = (1-s)/(s(s+1)): check s = 1..6 via moments
        for s in 1..=6usize {
            let lhs = combined_rel_moment(&sys, &r, s).unwrap();
            let want = rat_int(1 - s as i64)
                / (rat_int(s as i64) * rat_int(s as i64 + 1));
            assert_eq!(lhs, want);
        }
    }

    #[test]
    fn bessel_closed_form_example() {
        // p=0, q=1, b=(0), n=(2): A(z) = -1 + 2z
        let sys = ParamSystem::from_i64(&[], &[0]).unwrap();
        let mi = MultiIndex::new(vec![2]);
        let r = type1_construct(&sys, &mi).unwrap();
        assert_eq!(r.polys[0], ExactPolynomial::from_i64(&[-1, 2]));
    }

    #[test]
    fn closed_form_matches_oracle_generic_jacobi() {
        let sys = ParamSystem::new(
            vec![rat(1, 3), rat(1, 5)],
            vec![rat(1, 2), rat(9, 7)],
        )
        .unwrap();
        let mi = MultiIndex::new(vec![2, 1]);
        let cf = type1_construct(&sys, &mi).unwrap();
        assert_eq!(cf.route, Type1Route::ClosedForm);
        let or = type1_oracle(&sys, &mi).unwrap();
        assert_eq!(cf.polys, or.polys);
    }

    #[test]
    fn laguerre_route_is_oracle_and_moments_match() {
        let sys = ParamSystem::new(vec![rat(1, 4), rat(1, 3)], vec![rat(1, 2)]).unwrap();
        let mi = MultiIndex::with_tail(vec![1], vec![2]);
        let r = type1_construct(&sys, &mi).unwrap();
        assert_eq!(r.route, Type1Route::Oracle);
        let ratio = type1_moment_ratio(&sys, &mi);
        for s in 1..=2 * mi.size() {
            let lhs = combined_rel_moment(&sys, &r, s).unwrap() * ratio.clone();
            assert_eq!(lhs, type1_moment_formula(&sys, &mi, s), "s={s}");
        }
    }

    #[test]
    fn zero_component_gives_zero_polynomial() {
        let sys = ParamSystem::new(vec![rat(1, 3), rat(1, 5)], vec![rat(1, 2), rat(9, 7)])
            .unwrap();
        let mi = MultiIndex::new(vec![1, 0]);
        let r = type1_construct(&sys, &mi).unwrap();
        assert!(r.polys[1].is_zero());
        assert!(!r.polys[0].is_zero());
    }

    #[test]
    fn leading_coefficients_nonzero_under_normality() {
        let sys = ParamSystem::new(
            vec![rat(1, 3), rat(1, 5)],
            vec![rat(1, 2), rat(9, 7)],
        )
        .unwrap();
        for mi in [MultiIndex::new(vec![2, 2]), MultiIndex::new(vec![3, 2])] {
            let r = type1_construct(&sys, &mi).unwrap();
            for (j, p) in r.polys.iter().enumerate() {
                assert_eq!(p.degree(), Some(mi.head()[j] - 1));
            }
        }
    }

    #[test]
    fn rel_moment_weight_errors_surface() {
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        assert!(sys.rel_moment(WeightId::V(1), 0).is_err());
    }
}
