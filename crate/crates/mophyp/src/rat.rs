//! Exact rational scalars and the Pochhammer / lcm helpers shared by every
//! construction module.
//!
//! All rationals are kept in canonical reduced form with a positive
//! denominator; `num_rational::BigRational` maintains that invariant for us.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Rational from a small numerator/denominator pair.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or a plain integer, e.g. "-3/4", "7".
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1.
pub fn poch(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rat::one();
    }
    acc
}

/// Vector Pochhammer: product of (x_j)_k over all components.
pub fn poch_all(xs: &[Rat], k: usize) -> Rat {
    xs.iter().map(|x| poch(x, k)).product()
}

/// lcm(1, ..., n).
pub fn lcm_range(n: u64) -> BigInt {
    assert!(n >= 1, "lcm_range needs n >= 1");
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc = acc.lcm(&BigInt::from(j));
    }
    acc
}

/// True when x is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// True when x is an integer and x < 0 (strictly).
pub fn is_negative_integer(x: &Rat) -> bool {
    is_integer(x) && x.is_negative()
}

/// True when x is an integer and x <= 0.
pub fn is_nonpositive_integer(x: &Rat) -> bool {
    is_integer(x) && !x.is_positive()
}

/// True when x is an integer and x >= 0.
pub fn is_nonnegative_integer(x: &Rat) -> bool {
    is_integer(x) && !x.is_negative()
}

fn bigint_to_f64_scaled(n: &BigInt) -> (f64, i64) {
    // Returns (m, e) with n ~ m * 2^e and m holding ~63 significant bits.
    let bits = n.bits() as i64;
    if bits <= 62 {
        return (n.to_f64().unwrap_or(0.0), 0);
    }
    let shift = (bits - 62) as u64;
    let m = (n >> shift).to_f64().unwrap_or(0.0);
    (m, shift as i64)
}

/// Conversion to f64 that survives numerators/denominators far outside the
/// f64 exponent range (plain `to_f64` would produce inf/inf = NaN there).
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (mn, en) = bigint_to_f64_scaled(x.numer());
    let (md, ed) = bigint_to_f64_scaled(x.denom());
    (mn / md) * 2f64.powi((en - ed) as i32)
}

/// Natural log of |x|; computed from bit lengths so it never overflows.
pub fn rat_ln_abs(x: &Rat) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let (mn, en) = bigint_to_f64_scaled(&x.numer().abs());
    let (md, ed) = bigint_to_f64_scaled(x.denom());
    (mn / md).ln() + (en - ed) as f64 * std::f64::consts::LN_2
}

/// Decimal expansion of x with `digits` digits after the point, truncated
/// toward zero, e.g. ("1.71828...", 5) style strings for regression pins.
pub fn rat_decimal_string(x: &Rat, digits: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (ax.numer() * &scale) / ax.denom();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_str}")
    }
}

/// Serde helpers: rationals travel as canonical "num/den" strings so that
/// re-parsing the JSON reproduces them bit-for-bit.
pub mod serde_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        Rat::from_str(&s).map_err(de::Error::custom)
    }
}

/// Same helpers for sequences of rationals.
pub mod serde_str_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let ss = Vec::<String>::deserialize(d)?;
        ss.iter()
            .map(|s| Rat::from_str(s).map_err(de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poch_small_values() {
        assert_eq!(poch(&rat_int(2), 3), rat_int(24));
        assert_eq!(poch(&rat_int(-2), 2), rat_int(2));
        assert_eq!(poch(&rat_int(5), 0), rat_int(1));
        assert_eq!(poch_all(&[rat_int(1), rat_int(2)], 2), rat_int(12));
    }

    #[test]
    fn poch_splits_multiplicatively() {
        // (x)_{j+k} = (x)_j (x+j)_k
        let x = rat(3, 7);
        for j in 0..6usize {
            for k in 0..6usize {
                let lhs = poch(&x, j + k);
                let rhs = poch(&x, j) * poch(&(x.clone() + rat_int(j as i64)), k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lcm_range_values() {
        assert_eq!(lcm_range(1), BigInt::from(1));
        assert_eq!(lcm_range(6), BigInt::from(60));
        assert_eq!(lcm_range(10), BigInt::from(2520));
    }

    #[test]
    fn f64_conversion_of_huge_ratios() {
        // numerator and denominator each overflow f64 on their own
        let big = BigInt::from(10u32).pow(400);
        let x = Rat::new(big.clone() * 3, big);
        assert!((rat_to_f64(&x) - 3.0).abs() < 1e-12);
        assert!((rat_ln_abs(&x) - 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(rat_decimal_string(&rat(1, 3), 6), "0.333333");
        assert_eq!(rat_decimal_string(&rat(-22, 7), 4), "-3.1428");
        assert_eq!(rat_decimal_string(&rat_int(5), 0), "5");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "-1/2", "7", "0", "-12"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&x.to_string()).unwrap(), x);
        }
        assert!(parse_rat("abc").is_err());
    }
}
