//! Exact partial fraction decomposition with multiple poles.
//!
//! Pole multiplicities are handled by truncated power series division around
//! each pole (repeated synthetic division), never by differentiation, so the
//! whole computation stays in exact rational arithmetic.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPolynomial;
use crate::rat::Rat;

/// Exact decomposition
/// numer / prod_i (s - p_i)^{m_i}
///   = polynomial_part(s - shift) + sum_i sum_{t=1..m_i} coeff(i, t) / (s - p_i)^t.
#[derive(Debug, Clone)]
pub struct PFDecomp {
    /// Pole locations with multiplicities, in input order.
    pub poles: Vec<(Rat, usize)>,
    /// coefficients[i][t-1] is the coefficient over (s - p_i)^t.
    pub coefficients: Vec<Vec<Rat>>,
    /// Polynomial part, expressed in powers of (s - shift).
    pub polynomial_part: ExactPolynomial,
    pub shift: Rat,
}

impl PFDecomp {
    pub fn coeff(&self, pole: usize, power: usize) -> Rat {
        self.coefficients[pole]
            .get(power - 1)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Recombines the decomposition at a sample point (must avoid the poles).
    pub fn eval(&self, s: &Rat) -> Rat {
        let mut acc = self.polynomial_part.eval(&(s - &self.shift));
        for (i, (p, m)) in self.poles.iter().enumerate() {
            let d = s - p;
            assert!(!d.is_zero(), "evaluation at a pole");
            let mut dpow = Rat::one();
            for t in 1..=*m {
                dpow *= &d;
                acc += self.coeff(i, t) / dpow.clone();
            }
        }
        acc
    }
}

/// Full denominator prod_i (s - p_i)^{m_i} as a polynomial.
fn denominator_poly(poles: &[(Rat, usize)]) -> ExactPolynomial {
    let mut d = ExactPolynomial::one();
    for (p, m) in poles {
        let lin = ExactPolynomial::new(vec![-p.clone(), Rat::one()]);
        for _ in 0..*m {
            d = d.mul(&lin);
        }
    }
    d
}

/// Partial fraction decomposition of numer / prod (s - p_i)^{m_i}.
///
/// The polynomial part (present when deg numer >= total multiplicity) is
/// returned in powers of (s - shift); pass shift = 0 for plain powers of s.
pub fn partial_fractions_shifted(
    numer: &ExactPolynomial,
    poles: &[(Rat, usize)],
    shift: &Rat,
) -> Result<PFDecomp> {
    for i in 0..poles.len() {
        for j in 0..i {
            if poles[i].0 == poles[j].0 {
                return Err(Error::DuplicatePole(poles[i].0.to_string()));
            }
        }
        if poles[i].1 == 0 {
            return Err(Error::InvalidParams("pole with multiplicity 0".into()));
        }
    }
    let denom = denominator_poly(poles);
    let (quot, rem) = numer.divrem(&denom);
    let polynomial_part = quot.shift(shift);

    // Principal part at each pole: expand rem / (denom / (s-p)^m) around p as a
    // power series in u = s - p, truncated at order m. Coefficient g_t of u^t
    // sits over (s - p)^{m - t}.
    let mut coefficients = Vec::with_capacity(poles.len());
    for (i, (p, m)) in poles.iter().enumerate() {
        let mut cofactor = ExactPolynomial::one();
        for (j, (pj, mj)) in poles.iter().enumerate() {
            if j != i {
                let lin = ExactPolynomial::new(vec![-pj.clone(), Rat::one()]);
                for _ in 0..*mj {
                    cofactor = cofactor.mul(&lin);
                }
            }
        }
        let num_at = rem.shift(p); // rem(u + p)
        let den_at = cofactor.shift(p); // cofactor(u + p), nonzero constant term
        let series = series_div(&num_at, &den_at, *m);
        // series[t] over (s - p)^{m - t}; store by power 1..=m
        let mut per_pole = vec![Rat::zero(); *m];
        for (t, g) in series.into_iter().enumerate() {
            per_pole[*m - 1 - t] = g;
        }
        coefficients.push(per_pole);
    }
    Ok(PFDecomp {
        poles: poles.to_vec(),
        coefficients,
        polynomial_part,
        shift: shift.clone(),
    })
}

/// Proper-fraction decomposition: rejects numerators that would need a
/// polynomial part.
pub fn partial_fractions(numer: &ExactPolynomial, poles: &[(Rat, usize)]) -> Result<PFDecomp> {
    let budget: usize = poles.iter().map(|(_, m)| m).sum();
    if let Some(d) = numer.degree() {
        if d >= budget {
            return Err(Error::DegreeOverflow { deg: d, budget });
        }
    }
    partial_fractions_shifted(numer, poles, &Rat::zero())
}

/// First `order` coefficients of the power series num(u)/den(u); den(0) != 0.
fn series_div(num: &ExactPolynomial, den: &ExactPolynomial, order: usize) -> Vec<Rat> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero());
    let mut out = Vec::with_capacity(order);
    for t in 0..order {
        let mut acc = num.coeff(t);
        for j in 1..=t {
            acc -= den.coeff(j) * &out[t - j];
        }
        out.push(acc / &d0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn sample_points() -> Vec<Rat> {
        (2..12).map(|k| rat(k, 7)).collect()
    }

    #[test]
    fn double_pole_at_zero() {
        // (1 - s)/s^2 = 1/s^2 - 1/s
        let numer = ExactPolynomial::from_i64(&[1, -1]);
        let d = partial_fractions(&numer, &[(rat_int(0), 2)]).unwrap();
        assert_eq!(d.coeff(0, 2), rat_int(1));
        assert_eq!(d.coeff(0, 1), rat_int(-1));
        assert!(d.polynomial_part.is_zero());
    }

    #[test]
    fn telescoping_identity() {
        // 1/(s(s+1)) = 1/s - 1/(s+1)
        let d = partial_fractions(
            &ExactPolynomial::one(),
            &[(rat_int(0), 1), (rat_int(-1), 1)],
        )
        .unwrap();
        assert_eq!(d.coeff(0, 1), rat_int(1));
        assert_eq!(d.coeff(1, 1), rat_int(-1));
    }

    #[test]
    fn simple_poles_with_linear_numerator() {
        // (1 - s)/(s (s+1)) = 1/s - 2/(s+1), poles 0 and -b_1 with b_1 = 1
        let numer = ExactPolynomial::from_i64(&[1, -1]);
        let d = partial_fractions(&numer, &[(rat_int(0), 1), (rat_int(-1), 1)]).unwrap();
        assert_eq!(d.coeff(0, 1), rat_int(1));
        assert_eq!(d.coeff(1, 1), rat_int(-2));
    }

    #[test]
    fn recombination_is_exact() {
        // ((s-1)(s-2)(s-3)) / ((s+1/2)^3 (s-5)^2) with polynomial part absent
        let numer = ExactPolynomial::new(vec![rat_int(-6), rat_int(11), rat_int(-6), rat_int(1)]);
        let poles = vec![(rat(-1, 2), 3), (rat_int(5), 2)];
        let d = partial_fractions(&numer, &poles).unwrap();
        let den = denominator_poly(&poles);
        for s in sample_points() {
            let expect = numer.eval(&s) / den.eval(&s);
            assert_eq!(d.eval(&s), expect);
        }
    }

    #[test]
    fn polynomial_part_in_shifted_variable() {
        // (s^3 + 1)/(s + 2) = polynomial + 1/(s+2)-type remainder; shift 1
        let numer = ExactPolynomial::from_i64(&[1, 0, 0, 1]);
        let poles = vec![(rat_int(-2), 1)];
        let d = partial_fractions_shifted(&numer, &poles, &rat_int(1)).unwrap();
        let den = denominator_poly(&poles);
        for s in sample_points() {
            let expect = numer.eval(&s) / den.eval(&s);
            assert_eq!(d.eval(&s), expect);
        }
        // degree of the polynomial part is deg numer - deg denom
        assert_eq!(d.polynomial_part.degree(), Some(2));
    }

    #[test]
    fn improper_without_poly_part_rejected() {
        let numer = ExactPolynomial::from_i64(&[0, 0, 1]);
        assert!(matches!(
            partial_fractions(&numer, &[(rat_int(0), 1)]),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn duplicate_pole_rejected() {
        assert!(partial_fractions(
            &ExactPolynomial::one(),
            &[(rat_int(0), 1), (rat_int(0), 1)]
        )
        .is_err());
    }
}
