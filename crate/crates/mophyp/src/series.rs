//! Truncated power series arithmetic, generic over the coefficient field so
//! the same code drives exact rational and floating-point moment pipelines.

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient field for series arithmetic.
pub trait Scalar:
    Clone
    + Zero
    + One
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Power series truncated after z^order: coeffs[k] is the z^k coefficient,
/// with coeffs.len() == order + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<T> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> TruncSeries<T> {
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![T::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out[i + j] =
                    out[i + j].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse needs nonzero constant term");
        let order = self.order();
        let mut out = vec![T::zero(); order + 1];
        out[0] = T::one() / c0.clone();
        for k in 1..=order {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeff(j) * out[k - j].clone();
            }
            out[k] = -(acc / c0.clone());
        }
        Self { coeffs: out }
    }

    /// Compositional inverse of f(z) = c1 z + c2 z^2 + ... with c1 != 0:
    /// returns g with f(g(z)) = z up to the truncation order.
    pub fn reversion(&self) -> Self {
        assert!(self.coeff(0).is_zero(), "reversion needs f(0) = 0");
        let c1 = self.coeff(1);
        assert!(!c1.is_zero(), "reversion needs f'(0) != 0");
        let order = self.order();
        let mut g = vec![T::zero(); order + 1];
        if order >= 1 {
            g[1] = T::one() / c1.clone();
        }
        // solve f(g(z)) = z order by order: coefficient n of f(g) depends on
        // g[1..=n]; the only term containing g[n] is c1 * g[n]
        for n in 2..=order {
            let partial = Self {
                coeffs: g[..=n].to_vec(),
            };
            let comp = self.compose_prefix(&partial, n);
            g[n] = -(comp.coeff(n) / c1.clone());
        }
        Self { coeffs: g }
    }

    /// f(g(z)) truncated at z^order; g must have zero constant term.
    fn compose_prefix(&self, g: &Self, order: usize) -> Self {
        assert!(g.coeff(0).is_zero());
        let mut acc = Self::new(vec![], order);
        let mut gpow = Self::new(vec![T::one()], order);
        for k in 0..=order.min(self.order()) {
            if k > 0 {
                gpow = gpow.mul(&Self {
                    coeffs: g.coeffs[..=order.min(g.order())].to_vec(),
                });
            }
            let ck = self.coeff(k);
            if !ck.is_zero() {
                for j in 0..=order {
                    acc.coeffs[j] = acc.coeffs[j].clone() + ck.clone() * gpow.coeff(j);
                }
            }
        }
        acc
    }

    pub fn compose(&self, g: &Self) -> Self {
        self.compose_prefix(g, self.order().min(g.order()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int, Rat};

    fn s(v: &[i64], order: usize) -> TruncSeries<Rat> {
        TruncSeries::new(v.iter().map(|&x| rat_int(x)).collect(), order)
    }

    #[test]
    fn inverse_of_one_minus_z() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let f = s(&[1, -1], 5);
        let inv = f.inverse();
        for k in 0..=5 {
            assert_eq!(inv.coeff(k), rat_int(1));
        }
    }

    #[test]
    fn reversion_of_geometric() {
        // f(z) = z/(1-z) = z + z^2 + ...; inverse is z/(1+z) = z - z^2 + z^3 - ...
        let f = s(&[0, 1, 1, 1, 1, 1, 1], 6);
        let g = f.reversion();
        for k in 1..=6 {
            let want = if k % 2 == 1 { rat_int(1) } else { rat_int(-1) };
            assert_eq!(g.coeff(k), want);
        }
        // f(g) = z
        let comp = f.compose(&g);
        assert_eq!(comp.coeff(1), rat_int(1));
        for k in 2..=6 {
            assert_eq!(comp.coeff(k), rat_int(0));
        }
    }

    #[test]
    fn reversion_round_trip_random() {
        let f = TruncSeries::new(
            vec![rat_int(0), rat(3, 2), rat(-1, 3), rat(5, 7), rat_int(2)],
            8,
        );
        let g = f.reversion();
        let comp = f.compose(&g);
        assert_eq!(comp.coeff(1), rat_int(1));
        for k in 2..=8 {
            assert!(comp.coeff(k).is_zero(), "k={k}");
        }
    }

    #[test]
    fn float_series_work_too() {
        let f = TruncSeries::new(vec![0.0f64, 2.0, 1.0], 4);
        let g = f.reversion();
        let comp = f.compose(&g);
        assert!((comp.coeff(1) - 1.0).abs() < 1e-12);
        for k in 2..=4 {
            assert!(comp.coeff(k).abs() < 1e-12);
        }
    }
}
