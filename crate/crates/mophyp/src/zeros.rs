//! Exact real-root isolation and refinement for type II polynomials, plus
//! empirical-vs-predicted zero distribution comparison.
//!
//! Isolation is Descartes-rule bisection on integer polynomials; refinement
//! is dyadic bisection with exact sign evaluation. Type II coefficients grow
//! fast enough that any fixed-precision float evaluation loses roots near the
//! support endpoints, so every sign decision here is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freeconv::DensityModel;
use crate::poly::ExactPolynomial;
use crate::rat::{rat_to_f64, Rat};

/// Real roots of a polynomial, sorted ascending.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroSet {
    /// Refined roots (f64 view of the dyadic enclosure midpoints).
    pub roots: Vec<f64>,
    /// Dyadic enclosure midpoints at full requested precision.
    #[serde(with = "crate::rat::serde_str_vec")]
    pub roots_exact: Vec<Rat>,
    /// Multiplicity of each root (from the square-free decomposition).
    pub multiplicities: Vec<usize>,
    /// Degree of the input polynomial.
    pub degree: usize,
    /// degree minus the number of real roots counted with multiplicity.
    pub complex_count: usize,
    /// Multiplicative scaling applied to the roots (1 if none).
    pub scaling: f64,
}

impl ZeroSet {
    pub fn all_real(&self) -> bool {
        self.complex_count == 0
    }

    pub fn all_simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }

    /// Returns the zero set with every root multiplied by `factor`
    /// (e.g. 1/N^{p-q} for the scaled Laguerre-type comparison).
    pub fn scaled(&self, factor: f64) -> ZeroSet {
        let mut out = self.clone();
        out.roots.iter_mut().for_each(|x| *x *= factor);
        out.scaling = self.scaling * factor;
        out
    }
}

/// Isolates and refines all real roots to width 2^-precision_bits.
pub fn real_roots(poly: &ExactPolynomial, precision_bits: u32) -> Result<ZeroSet> {
    if poly.is_zero() {
        return Err(Error::RootIsolation("zero polynomial".into()));
    }
    let degree = poly.degree().unwrap();
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    for (factor, mult) in squarefree_decomposition(poly) {
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let (ints, _) = factor.clear_denominators();
        for root in isolate_squarefree(&ints, precision_bits)? {
            roots.push((root, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let real_with_mult: usize = roots.iter().map(|(_, m)| m).sum();
    Ok(ZeroSet {
        roots: roots.iter().map(|(r, _)| rat_to_f64(r)).collect(),
        roots_exact: roots.iter().map(|(r, _)| r.clone()).collect(),
        multiplicities: roots.iter().map(|(_, m)| *m).collect(),
        degree,
        complex_count: degree - real_with_mult,
        scaling: 1.0,
    })
}

/// Yun's square-free decomposition: returns pairwise-coprime square-free
/// factors with their multiplicities.
fn squarefree_decomposition(poly: &ExactPolynomial) -> Vec<(ExactPolynomial, usize)> {
    let mut out = Vec::new();
    let d = poly.derivative();
    let g = poly.gcd(&d);
    if g.degree().unwrap_or(0) == 0 {
        out.push((poly.clone(), 1));
        return out;
    }
    let (mut w, _) = poly.divrem(&g);
    let (mut y, _) = d.divrem(&g);
    let mut mult = 1usize;
    loop {
        let z = y.sub(&w.derivative());
        if z.is_zero() {
            if w.degree().unwrap_or(0) > 0 {
                out.push((w, mult));
            }
            break;
        }
        let f = w.gcd(&z);
        if f.degree().unwrap_or(0) > 0 {
            out.push((f.clone(), mult));
        }
        let (w2, _) = w.divrem(&f);
        let (y2, _) = z.divrem(&f);
        w = w2;
        y = y2;
        mult += 1;
        if w.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    out
}

fn isolate_squarefree(coeffs: &[BigInt], precision_bits: u32) -> Result<Vec<Rat>> {
    let mut coeffs = coeffs.to_vec();
    let mut roots = Vec::new();
    // strip zero roots
    let mut zero_mult = 0usize;
    while coeffs.first().map_or(false, |c| c.is_zero()) {
        coeffs.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push(Rat::zero());
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    let bound = cauchy_bound(&coeffs);
    // positive roots on (0, bound)
    roots.extend(isolate_on_unit(
        &map_to_unit(&coeffs, &bound),
        &coeffs,
        &bound,
        precision_bits,
    )?);
    // negative roots: x -> -x
    let neg: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let negroots = isolate_on_unit(&map_to_unit(&neg, &bound), &neg, &bound, precision_bits)?;
    roots.extend(negroots.into_iter().map(|r| -r));
    roots.sort();
    Ok(roots)
}

/// Power-of-two Cauchy bound on root magnitudes.
fn cauchy_bound(coeffs: &[BigInt]) -> BigInt {
    let lead = coeffs.last().unwrap().magnitude().clone();
    let maxc = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    // bound = smallest power of two with bound * lead >= maxc + lead
    let mut b = BigInt::from(2u32);
    while b.magnitude() * &lead < &maxc + &lead {
        b <<= 1;
    }
    b
}

/// q(t) = p(bound * t), integer coefficients (a harmless overall power).
fn map_to_unit(coeffs: &[BigInt], bound: &BigInt) -> Vec<BigInt> {
    let mut pw = BigInt::one();
    coeffs
        .iter()
        .map(|c| {
            let v = c * &pw;
            pw *= bound;
            v
        })
        .collect()
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut v = 0;
    let mut last = 0i8;
    for c in coeffs {
        let s = match c.sign() {
            num_bigint::Sign::Plus => 1i8,
            num_bigint::Sign::Minus => -1i8,
            num_bigint::Sign::NoSign => 0i8,
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Taylor shift by one: q(t) -> q(t + 1), via polynomial Horner.
fn shift_one(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len();
    let mut out = vec![BigInt::zero(); n];
    for c in coeffs.iter().rev() {
        // out = out * (t + 1) + c
        for j in (1..n).rev() {
            let add = out[j - 1].clone();
            out[j] += add;
        }
        out[0] += c;
    }
    out
}

/// Descartes bound for the number of roots of q in (0, 1).
fn descartes_in_unit(coeffs: &[BigInt]) -> usize {
    let reversed: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
    sign_variations(&shift_one(&reversed))
}

/// q(t) -> 2^n q(t/2)
fn left_half(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c << (n - k))
        .collect()
}

/// q(t) -> 2^n q((t+1)/2)
fn right_half(left: &[BigInt]) -> Vec<BigInt> {
    shift_one(left)
}

struct Isolator<'a> {
    orig: &'a [BigInt],
    bound: Rat,
    precision_bits: u32,
    out: Vec<Rat>,
}

fn isolate_on_unit(
    unit_poly: &[BigInt],
    orig: &[BigInt],
    bound: &BigInt,
    precision_bits: u32,
) -> Result<Vec<Rat>> {
    let mut iso = Isolator {
        orig,
        bound: Rat::from_integer(bound.clone()),
        precision_bits,
        out: Vec::new(),
    };
    iso.recurse(unit_poly, Rat::zero(), Rat::one(), 0)?;
    let mut out = std::mem::take(&mut iso.out);
    out.sort();
    out.dedup();
    Ok(out)
}

impl Isolator<'_> {
    /// lo/width live in the (0,1)-mapped coordinate; original root = bound * t.
    fn recurse(&mut self, q: &[BigInt], lo: Rat, width: Rat, depth: u32) -> Result<()> {
        match descartes_in_unit(q) {
            0 => Ok(()),
            1 => {
                let a = &self.bound * &lo;
                let b = &self.bound * (&lo + &width);
                self.refine(a, b);
                Ok(())
            }
            _ => {
                if depth > 24 + self.precision_bits {
                    return Err(Error::RootIsolation(format!(
                        "unresolved root cluster near t = {lo} at depth {depth}"
                    )));
                }
                let half = width / Rat::from_integer(BigInt::from(2));
                let l = left_half(q);
                let r = right_half(&l);
                // an exact root at the midpoint shows up as a zero constant term
                let mid = &lo + &half;
                if r.first().map_or(false, |c| c.is_zero()) {
                    self.out.push(&self.bound * &mid);
                }
                self.recurse(&l, lo, half.clone(), depth + 1)?;
                self.recurse(&r, mid, half, depth + 1)
            }
        }
    }

    /// Bisection with exact sign evaluation down to width 2^-precision_bits.
    fn refine(&mut self, mut a: Rat, mut b: Rat) {
        let eval = |x: &Rat| -> Rat {
            let mut acc = Rat::zero();
            for c in self.orig.iter().rev() {
                acc = acc * x + Rat::from_integer(c.clone());
            }
            acc
        };
        let fa = eval(&a);
        if fa.is_zero() {
            self.out.push(a);
            return;
        }
        let fb = eval(&b);
        if fb.is_zero() {
            self.out.push(b);
            return;
        }
        let sign_a = fa.is_positive();
        let tol = Rat::new(BigInt::one(), BigInt::one() << self.precision_bits);
        let two = Rat::from_integer(BigInt::from(2));
        while (&b - &a) > tol {
            let mid = (&a + &b) / &two;
            let fm = eval(&mid);
            if fm.is_zero() {
                self.out.push(mid);
                return;
            }
            if fm.is_positive() == sign_a {
                a = mid;
            } else {
                b = mid;
            }
        }
        self.out.push((&a + &b) / two);
    }
}

/// Kolmogorov-Smirnov distance and first-moment deltas between the empirical
/// zero measure and a limiting model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistComparison {
    pub ks_distance: f64,
    pub moment_deltas: Vec<f64>,
    pub sample_size: usize,
}

pub fn compare_distribution(zs: &ZeroSet, model: &DensityModel) -> Result<DistComparison> {
    let mut xs = zs.roots.clone();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    empirical_vs_model(&xs, model)
}

/// Shared KS + moment comparison for any sorted-or-not sample.
pub fn empirical_vs_model(sample: &[f64], model: &DensityModel) -> Result<DistComparison> {
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n == 0 {
        return Err(Error::RootIsolation("empty sample".into()));
    }
    let mut ks: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = model.cdf(x)?;
        ks = ks.max((((i + 1) as f64) / n as f64 - f).abs());
        ks = ks.max((f - (i as f64) / n as f64).abs());
    }
    let model_ms = model.moments(4, 1e-9)?;
    let mut moment_deltas = Vec::with_capacity(4);
    for k in 1..=4usize {
        let emp: f64 = xs.iter().map(|x| x.powi(k as i32)).sum::<f64>() / n as f64;
        moment_deltas.push(emp - model_ms.moments[k - 1]);
    }
    Ok(DistComparison {
        ks_distance: ks,
        moment_deltas,
        sample_size: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mop::type2_construct;
    use crate::multiindex::MultiIndex;
    use crate::params::ParamSystem;
    use crate::rat::rat;

    #[test]
    fn quadratic_roots() {
        // 1 - 6x + 6x^2: roots (3 +- sqrt 3)/6
        let p = ExactPolynomial::from_i64(&[1, -6, 6]);
        let zs = real_roots(&p, 80).unwrap();
        assert_eq!(zs.roots.len(), 2);
        assert!(zs.all_real() && zs.all_simple());
        let s3 = 3.0f64.sqrt();
        assert!((zs.roots[0] - (3.0 - s3) / 6.0).abs() < 1e-15);
        assert!((zs.roots[1] - (3.0 + s3) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn linear_and_rational_roots() {
        let p = ExactPolynomial::from_i64(&[1, -2]);
        let zs = real_roots(&p, 60).unwrap();
        assert_eq!(zs.roots, vec![0.5]);
        assert_eq!(zs.roots_exact[0], rat(1, 2));
    }

    #[test]
    fn complex_roots_reported() {
        // x^2 + 1 has no real roots
        let p = ExactPolynomial::from_i64(&[1, 0, 1]);
        let zs = real_roots(&p, 60).unwrap();
        assert!(zs.roots.is_empty());
        assert_eq!(zs.complex_count, 2);
        // (x^2+1)(x-1): one real
        let p = p.mul(&ExactPolynomial::from_i64(&[-1, 1]));
        let zs = real_roots(&p, 60).unwrap();
        assert_eq!(zs.roots.len(), 1);
        assert_eq!(zs.complex_count, 2);
    }

    #[test]
    fn multiple_roots_via_squarefree() {
        // (x - 1/3)^2 (x + 2)
        let f = ExactPolynomial::new(vec![rat(-1, 3), Rat::one()]);
        let p = f.mul(&f).mul(&ExactPolynomial::from_i64(&[2, 1]));
        let zs = real_roots(&p, 60).unwrap();
        assert_eq!(zs.roots.len(), 2);
        assert_eq!(zs.multiplicities, vec![1, 2]);
        assert!((zs.roots[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!(zs.all_real());
        assert!(!zs.all_simple());
    }

    #[test]
    fn negative_and_zero_roots() {
        // x (x + 3/2) (x - 5)
        let p = ExactPolynomial::new(vec![
            Rat::zero(),
            rat(-15, 2),
            rat(-7, 2),
            Rat::one(),
        ]);
        let zs = real_roots(&p, 60).unwrap();
        assert_eq!(zs.roots.len(), 3);
        assert!((zs.roots[0] + 1.5).abs() < 1e-14);
        assert_eq!(zs.roots[1], 0.0);
        assert!((zs.roots[2] - 5.0).abs() < 1e-13);
    }

    #[test]
    fn type2_zeros_land_in_unit_interval() {
        let sys =
            ParamSystem::new(vec![rat(0, 1), rat(1, 2)], vec![rat(1, 4), rat(3, 4)]).unwrap();
        let mi = MultiIndex::new(vec![4, 4]);
        let p = type2_construct(&sys, &mi).unwrap();
        let zs = real_roots(&p.poly, 120).unwrap();
        assert_eq!(zs.roots.len(), 8);
        assert!(zs.all_simple());
        assert!(zs.roots.iter().all(|&x| x > 0.0 && x < 1.0));
        for w in zs.roots.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn legendre_zeros_approach_arcsine() {
        // zeros of the degree-24 shifted-Legendre-type polynomial vs u_0
        let sys = ParamSystem::from_i64(&[0], &[0]).unwrap();
        let p = type2_construct(&sys, &MultiIndex::new(vec![24])).unwrap();
        let zs = real_roots(&p.poly, 100).unwrap();
        assert_eq!(zs.roots.len(), 24);
        let cmp =
            compare_distribution(&zs, &DensityModel::DeformedArcsin { alpha: 0.0 }).unwrap();
        assert!(cmp.ks_distance < 0.11, "KS = {}", cmp.ks_distance);
    }

    #[test]
    fn degenerate_single_zero_vs_model() {
        let p = ExactPolynomial::from_i64(&[-1, 2]);
        let zs = real_roots(&p, 60).unwrap();
        let cmp =
            compare_distribution(&zs, &DensityModel::DeformedArcsin { alpha: 0.0 }).unwrap();
        assert!(cmp.ks_distance > 0.1); // informative only
    }
}
