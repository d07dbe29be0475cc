//! Parameter systems (a, b) and the exact relative moments of their weights.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{
    is_integer, is_negative_integer, is_nonpositive_integer, poch, poch_all, rat_int, Rat,
};

/// The three supported weight families, derived from the sign of p - q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    /// p = q: weights on the unit interval.
    Jacobi,
    /// p > q: weights on the positive half line.
    Laguerre,
    /// p < q: weights on the unit circle (moment level only).
    Bessel,
}

/// Identifies one weight of the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightId {
    /// The base weight w_0.
    W0,
    /// w_j = w_0 with b_j raised by one; 1-based j up to len(b).
    W(usize),
    /// v_j (Laguerre only), 1-based j up to p - q.
    V(usize),
}

impl std::fmt::Display for WeightId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightId::W0 => write!(f, "w0"),
            WeightId::W(j) => write!(f, "w{j}"),
            WeightId::V(j) => write!(f, "v{j}"),
        }
    }
}

/// Which named hypotheses of the construction theorems hold for a system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// a_j < b_j for j <= min(p, q).
    pub a_below_b: bool,
    /// b_i - b_j not an integer whenever i != j.
    pub b_distinct_mod_z: bool,
    /// b entries pairwise distinct.
    pub b_pairwise_distinct: bool,
    /// b_j - a_i never a negative integer.
    pub b_minus_a_not_negint: bool,
    /// b_j - a_i never a nonpositive integer (strengthening used by the
    /// closed-form type I path; equality makes the triple sum degenerate).
    pub b_minus_a_not_nonposint: bool,
    /// a_i - a_j not an integer whenever i != j.
    pub a_distinct_mod_z: bool,
    /// b_i - a_j not an integer for all i, j.
    pub b_minus_a_not_int: bool,
    /// Zero theorem hypothesis: b_j > a_i if i <= j and b_j > a_i - 1 if i > j.
    pub real_simple_zeros: bool,
}

/// The (p, q) parameter vectors with all entries > -1, plus the derived setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSystem {
    #[serde(with = "crate::rat::serde_str_vec")]
    a: Vec<Rat>,
    #[serde(with = "crate::rat::serde_str_vec")]
    b: Vec<Rat>,
}

impl ParamSystem {
    pub fn new(a: Vec<Rat>, b: Vec<Rat>) -> Result<Self> {
        let minus_one = rat_int(-1);
        for (name, v) in [("a", &a), ("b", &b)] {
            for x in v {
                if *x <= minus_one {
                    return Err(Error::InvalidParams(format!(
                        "{name} entry {x} is not > -1"
                    )));
                }
            }
        }
        if a.is_empty() && b.is_empty() {
            return Err(Error::InvalidParams("both a and b empty".into()));
        }
        Ok(Self { a, b })
    }

    pub fn from_i64(a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(
            a.iter().map(|&x| rat_int(x)).collect(),
            b.iter().map(|&x| rat_int(x)).collect(),
        )
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn b(&self) -> &[Rat] {
        &self.b
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    /// Number of weights: max(p, q).
    pub fn r(&self) -> usize {
        self.p().max(self.q())
    }

    pub fn setting(&self) -> Setting {
        use std::cmp::Ordering::*;
        match self.p().cmp(&self.q()) {
            Equal => Setting::Jacobi,
            Greater => Setting::Laguerre,
            Less => Setting::Bessel,
        }
    }

    /// Number of w-type weights (the length of b), and of v-type weights.
    pub fn num_w(&self) -> usize {
        self.q()
    }

    pub fn num_v(&self) -> usize {
        self.p().saturating_sub(self.q())
    }

    pub fn hypotheses(&self) -> HypothesisReport {
        let m = self.p().min(self.q());
        let a_below_b = (0..m).all(|j| self.a[j] < self.b[j]);
        let b_distinct_mod_z = pairwise(&self.b, |x, y| !is_integer(&(x - y)));
        let b_pairwise_distinct = pairwise(&self.b, |x, y| x != y);
        let mut b_minus_a_not_negint = true;
        let mut b_minus_a_not_nonposint = true;
        let mut b_minus_a_not_int = true;
        for bj in &self.b {
            for ai in &self.a {
                let d = bj - ai;
                if is_negative_integer(&d) {
                    b_minus_a_not_negint = false;
                }
                if is_nonpositive_integer(&d) {
                    b_minus_a_not_nonposint = false;
                }
                if is_integer(&d) {
                    b_minus_a_not_int = false;
                }
            }
        }
        let a_distinct_mod_z = pairwise(&self.a, |x, y| !is_integer(&(x - y)));
        let mut real_simple_zeros = true;
        for (j, bj) in self.b.iter().enumerate() {
            for (i, ai) in self.a.iter().enumerate() {
                let ok = if i <= j {
                    bj > ai
                } else {
                    bj > &(ai - Rat::one())
                };
                if !ok {
                    real_simple_zeros = false;
                }
            }
        }
        HypothesisReport {
            a_below_b,
            b_distinct_mod_z,
            b_pairwise_distinct,
            b_minus_a_not_negint,
            b_minus_a_not_nonposint,
            a_distinct_mod_z,
            b_minus_a_not_int,
            real_simple_zeros,
        }
    }

    /// m-th moment of the identified weight, relative to the shared constant
    /// Gamma(a+1)/Gamma(b+1); every orthogonality sum built from these is a
    /// finite exact rational computation.
    pub fn rel_moment(&self, weight: WeightId, m: usize) -> Result<Rat> {
        let base =
            poch_all(&add_one(&self.a), m) / poch_all(&add_one(&self.b), m);
        match weight {
            WeightId::W0 => Ok(base),
            WeightId::W(j) => {
                if j == 0 || j > self.num_w() {
                    return Err(Error::InvalidWeight(format!("w{j}")));
                }
                let bj = &self.b[j - 1];
                Ok(base / (bj + rat_int(m as i64 + 1)))
            }
            WeightId::V(j) => {
                // any j >= 1 is meaningful: v_j = (x d/dx)^{j-1} w_0
                if self.setting() != Setting::Laguerre || j == 0 {
                    return Err(Error::InvalidWeight(format!("v{j}")));
                }
                let mut factor = Rat::one();
                for _ in 0..j - 1 {
                    factor *= rat_int(m as i64);
                }
                Ok(base * factor)
            }
        }
    }

    /// All weights of the system in their conventional order: w_1..w_q then
    /// (Laguerre) v_1..v_{p-q}.
    pub fn weights(&self) -> Vec<WeightId> {
        let mut ws: Vec<WeightId> = (1..=self.num_w()).map(WeightId::W).collect();
        ws.extend((1..=self.num_v()).map(WeightId::V));
        ws
    }
}

fn pairwise(v: &[Rat], ok: impl Fn(&Rat, &Rat) -> bool) -> bool {
    for i in 0..v.len() {
        for j in 0..v.len() {
            if i != j && !ok(&v[i], &v[j]) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn add_one(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| x + Rat::one()).collect()
}

/// Pochhammer of a shifted vector: prod_j (v_j + shift)_k.
pub(crate) fn poch_shifted(v: &[Rat], shift: &Rat, k: usize) -> Rat {
    v.iter().map(|x| poch(&(x + shift), k)).product()
}
