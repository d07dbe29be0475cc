//! Dense polynomials over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::rat::{rat_to_f64, Rat};

/// Dense polynomial with exact rational coefficients, ascending powers.
/// The coefficient list never has trailing zeros; the zero polynomial is
/// the empty list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPolynomial {
    #[serde(with = "crate::rat::serde_str_vec")]
    coeffs: Vec<Rat>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact Euclidean division: self = q * d + r with deg r < deg d.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() / &lead;
            if !c.is_zero() {
                for j in 0..dd {
                    let t = &c * &d.coeffs[j];
                    rem[k - dd + j] -= t;
                }
            }
            rem[k] = Rat::zero();
            quot[k - dd] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Horner evaluation over exact rationals.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in f64, returning (value, running error bound).
    pub fn eval_f64(&self, x: f64) -> (f64, f64) {
        let mut acc = 0.0f64;
        let mut err = 0.0f64;
        let u = f64::EPSILON / 2.0;
        for c in self.coeffs.iter().rev() {
            let cf = rat_to_f64(c);
            acc = acc * x + cf;
            err = err * x.abs() + (acc.abs() + cf.abs()) * u;
        }
        (acc, 2.0 * err)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Taylor shift: returns p(x + c).
    pub fn shift(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for coef in self.coeffs.iter().rev() {
            out = out.mul(&Self::new(vec![c.clone(), Rat::one()]));
            out = out.add(&Self::constant(coef.clone()));
        }
        out
    }

    /// Variable scaling: returns p(c * x).
    pub fn scale_var(&self, c: &Rat) -> Self {
        let mut pw = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &pw;
                pw *= c;
                v
            })
            .collect();
        Self::new(coeffs)
    }

    /// Monic normalization; returns None for the zero polynomial.
    pub fn monic(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let l = self.leading_coeff();
        Some(self.scale(&(Rat::one() / l)))
    }

    /// Divides by the constant term so p(0) = 1; None when p(0) = 0.
    pub fn constant_term_one(&self) -> Option<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return None;
        }
        Some(self.scale(&(Rat::one() / c)))
    }

    /// If other == s * self for an exact scalar s != 0, returns s.
    pub fn proportionality(&self, other: &Self) -> Option<Rat> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.degree() != other.degree() {
            return None;
        }
        let k = self.coeffs.iter().position(|c| !c.is_zero())?;
        if other.coeff(k).is_zero() {
            return None;
        }
        let s = other.coeff(k) / self.coeff(k).clone();
        if &self.scale(&s) == other {
            Some(s)
        } else {
            None
        }
    }

    /// Clears denominators: returns (integer coefficients, common denominator D)
    /// with D * p having the returned (primitive up to sign of D) coefficients.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = d.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (ints, d)
    }

    /// Polynomial gcd, normalized monic. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(Self::zero)
    }

    /// Writes the polynomial in the boxtimes coefficient convention of
    /// degree d: p(x) = sum_k x^{d-k} (-1)^k p[k]. Requires deg p <= d.
    pub fn boxtimes_coeffs(&self, d: usize) -> Vec<Rat> {
        assert!(self.degree().map_or(true, |g| g <= d));
        (0..=d)
            .map(|k| {
                let c = self.coeff(d - k);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }

    /// Inverse of `boxtimes_coeffs`.
    pub fn from_boxtimes_coeffs(coeffs: &[Rat]) -> Self {
        let d = coeffs.len() - 1;
        Self::new(
            (0..=d)
                .map(|j| {
                    let k = d - j;
                    let c = coeffs[k].clone();
                    if k % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{k}")?,
                _ => write!(f, "{a}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn arithmetic_and_eval() {
        let p = ExactPolynomial::from_i64(&[1, -6, 6]); // 1 - 6x + 6x^2
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&rat(1, 2)), rat(-1, 2));
        assert_eq!(p.eval(&rat_int(0)), rat_int(1));
        let q = ExactPolynomial::from_i64(&[0, 1]);
        assert_eq!(p.mul(&q).degree(), Some(3));
        let (quo, rem) = p.divrem(&q);
        assert_eq!(quo, ExactPolynomial::from_i64(&[-6, 6]));
        assert_eq!(rem, ExactPolynomial::from_i64(&[1]));
    }

    #[test]
    fn shift_and_scale() {
        // (x+1)^2 = x^2 + 2x + 1
        let p = ExactPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(p.shift(&rat_int(1)), ExactPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(
            p.scale_var(&rat_int(3)),
            ExactPolynomial::from_i64(&[0, 0, 9])
        );
    }

    #[test]
    fn proportionality_detection() {
        let p = ExactPolynomial::from_i64(&[1, -6, 6]);
        let q = p.scale(&rat(-3, 7));
        assert_eq!(p.proportionality(&q), Some(rat(-3, 7)));
        let r = ExactPolynomial::from_i64(&[1, -6, 7]);
        assert_eq!(p.proportionality(&r), None);
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = ExactPolynomial::from_i64(&[-1, 1]); // x - 1
        let b = ExactPolynomial::from_i64(&[2, 1]); // x + 2
        let p = a.mul(&b);
        let q = a.mul(&ExactPolynomial::from_i64(&[5, 3]));
        let g = p.gcd(&q);
        assert_eq!(g, a);
    }

    #[test]
    fn clear_denominators_primitive() {
        let p = ExactPolynomial::new(vec![rat(1, 2), rat(1, 3)]);
        let (ints, d) = p.clear_denominators();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::from(2)]);
    }

    #[test]
    fn boxtimes_round_trip() {
        let p = ExactPolynomial::from_i64(&[4, -4, 1]); // (x-2)^2
        let c = p.boxtimes_coeffs(2);
        assert_eq!(c, vec![rat_int(1), rat_int(4), rat_int(4)]);
        assert_eq!(ExactPolynomial::from_boxtimes_coeffs(&c), p);
    }
}
