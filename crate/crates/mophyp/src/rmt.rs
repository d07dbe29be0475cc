//! Truncated Haar unitary and Ginibre product ensembles: sampling, Monte
//! Carlo averages of characteristic polynomials, and spectral comparison
//! against the predicted free-product laws.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freeconv::DensityModel;
use crate::mop::{type2_construct, TypeIIResult};
use crate::multiindex::MultiIndex;
use crate::params::ParamSystem;
use crate::rat::rat_to_f64;
use crate::zeros::{empirical_vs_model, DistComparison};

type CMatrix = DMatrix<Complex<f64>>;

/// One factor of the matrix product chain (applied right to left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    /// Upper-left rows x cols block of a Haar unitary of size source.
    Truncation {
        rows: usize,
        cols: usize,
        source: usize,
    },
    /// Independent standard complex Gaussian entries (unit entry variance).
    Ginibre { rows: usize, cols: usize },
}

impl Factor {
    pub fn rows(&self) -> usize {
        match self {
            Factor::Truncation { rows, .. } | Factor::Ginibre { rows, .. } => *rows,
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Factor::Truncation { cols, .. } | Factor::Ginibre { cols, .. } => *cols,
        }
    }
}

/// A validated product ensemble with its predicted parameter system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleSpec {
    /// Number of squared singular values (the chain's inner dimension).
    pub n: usize,
    /// Factors ordered rightmost first (the first factor hits the vector first).
    pub factors: Vec<Factor>,
    /// Parameter system whose type II polynomial is the predicted average
    /// characteristic polynomial.
    pub sys: ParamSystem,
    pub mi: MultiIndex,
    /// p - q: squared singular values are compared against the limit law
    /// after scaling by n^{-(p-q)}.
    pub scaling_exponent: i32,
    /// Constraint notes (layout inequalities that only hold with slack).
    pub notes: Vec<String>,
}

/// Builds the truncation-only ensemble: T_j of shape (n+a_j) x (n+a_{j-1})
/// truncated from Haar unitaries of size n + n_j + b_j, with a_0 = 0.
pub fn build_t_ensemble(n: usize, head: &[usize], a: &[i64], b: &[i64]) -> Result<EnsembleSpec> {
    let r = head.len();
    if a.len() != r || b.len() != r {
        return Err(Error::BadEnsemble("a, b and the index need equal length".into()));
    }
    if head.iter().sum::<usize>() != n {
        return Err(Error::BadEnsemble("|index| must equal n".into()));
    }
    let mi = MultiIndex::new(head.to_vec());
    let sys = ParamSystem::from_i64(a, b)?;
    mi.validate_for(&sys)?;
    let mut notes = Vec::new();
    for (j, (&aj, &bj)) in a.iter().zip(b).enumerate() {
        if aj < 0 || bj < 0 {
            return Err(Error::BadEnsemble("a, b must be nonnegative integers".into()));
        }
        let required = if j == 0 { (n - head[0]) as i64 + aj } else { aj };
        if bj < required {
            return Err(Error::BadEnsemble(format!(
                "layout constraint violated: b_{} = {bj} < {required}",
                j + 1
            )));
        }
    }
    let mut factors = Vec::with_capacity(r);
    let mut prev_a = 0i64;
    for j in 0..r {
        let rows = (n as i64 + a[j]) as usize;
        let cols = (n as i64 + prev_a) as usize;
        let source = n + head[j] + b[j] as usize;
        if source < rows || source < cols {
            return Err(Error::BadEnsemble(format!(
                "truncation source {source} smaller than block {rows}x{cols}"
            )));
        }
        if source < rows + 1 {
            notes.push(format!(
                "factor {}: source = rows; the polynomial ensemble theorem wants source >= rows + 1",
                j + 1
            ));
        }
        factors.push(Factor::Truncation { rows, cols, source });
        prev_a = a[j];
    }
    Ok(EnsembleSpec {
        n,
        factors,
        sys,
        mi,
        scaling_exponent: 0,
        notes,
    })
}

/// Builds the mixed ensemble T_q ... T_1 G_{p-q} ... G_1 with
/// G_j of shape (n+c_j) x (n+c_{j-1}), c_0 = 0, and the truncations chained
/// on top starting at a_0 = c_{p-q}.
pub fn build_mixed_ensemble(
    n: usize,
    head: &[usize],
    tail: &[usize],
    a: &[i64],
    b: &[i64],
    c: &[i64],
) -> Result<EnsembleSpec> {
    let q = head.len();
    let vg = tail.len();
    if a.len() != q || b.len() != q || c.len() != vg || vg == 0 {
        return Err(Error::BadEnsemble(
            "need |a| = |b| = |head| and |c| = |tail| >= 1".into(),
        ));
    }
    if head.iter().sum::<usize>() + tail.iter().sum::<usize>() != n {
        return Err(Error::BadEnsemble("|index| must equal n".into()));
    }
    let mut afull: Vec<i64> = a.to_vec();
    afull.extend_from_slice(c);
    let sys = ParamSystem::from_i64(&afull, b)?;
    let mi = MultiIndex::with_tail(head.to_vec(), tail.to_vec());
    mi.validate_for(&sys)?;
    let mut notes = Vec::new();
    for (&aj, &bj) in a.iter().zip(b) {
        if aj > bj {
            return Err(Error::BadEnsemble(format!(
                "layout wants a_j <= b_j, got {aj} > {bj}"
            )));
        }
    }
    let mut factors = Vec::with_capacity(q + vg);
    let mut prev = 0i64;
    for &cj in c {
        let rows = (n as i64 + cj) as usize;
        let cols = (n as i64 + prev) as usize;
        factors.push(Factor::Ginibre { rows, cols });
        prev = cj;
    }
    for j in 0..q {
        let rows = (n as i64 + a[j]) as usize;
        let cols = (n as i64 + prev) as usize;
        let source = n + head[j] + b[j] as usize;
        if source < rows || source < cols {
            return Err(Error::BadEnsemble(format!(
                "truncation source {source} smaller than block {rows}x{cols}"
            )));
        }
        if source < rows + 1 {
            notes.push(format!(
                "T factor {}: source = rows; the polynomial ensemble theorem wants source >= rows + 1",
                j + 1
            ));
        }
        factors.push(Factor::Truncation { rows, cols, source });
        prev = a[j];
    }
    Ok(EnsembleSpec {
        n,
        factors,
        sys,
        mi,
        scaling_exponent: vg as i32,
        notes,
    })
}

/// Standard complex Gaussian with E|g|^2 = 1 (Box-Muller).
fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex<f64> {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    let r = (-u1.ln()).sqrt(); // radius for variance 1/2 per component
    let theta = 2.0 * std::f64::consts::PI * u2;
    Complex::new(r * theta.cos(), r * theta.sin())
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn sample_ginibre<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar unitary of the given size: QR of a Ginibre matrix with the R diagonal
/// phases folded into Q.
pub fn sample_haar_unitary<R: Rng>(size: usize, rng: &mut R) -> CMatrix {
    let g = sample_ginibre(size, size, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..size {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..size {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Upper-left rows x cols truncation of a Haar unitary of size source.
pub fn sample_truncation<R: Rng>(
    rows: usize,
    cols: usize,
    source: usize,
    rng: &mut R,
) -> Result<CMatrix> {
    if source < rows || source < cols {
        return Err(Error::BadEnsemble(format!(
            "truncation {rows}x{cols} does not fit in a {source}x{source} unitary"
        )));
    }
    let u = sample_haar_unitary(source, rng);
    Ok(u.view((0, 0), (rows, cols)).into_owned())
}

fn sample_factor<R: Rng>(f: &Factor, rng: &mut R) -> Result<CMatrix> {
    match *f {
        Factor::Ginibre { rows, cols } => Ok(sample_ginibre(rows, cols, rng)),
        Factor::Truncation { rows, cols, source } => sample_truncation(rows, cols, source, rng),
    }
}

/// Per-sample RNG: one ChaCha stream per sample index, so batches are
/// reproducible and sharding-independent.
fn stream_rng(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A reproducible batch of squared singular value samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleBatch {
    pub seed: u64,
    pub count: usize,
    /// Each inner vector holds the n squared singular values, ascending.
    pub sq_singvals: Vec<Vec<f64>>,
}

/// Draws `count` independent product samples and records their squared
/// singular values.
pub fn sample_sq_singvals(spec: &EnsembleSpec, count: usize, seed: u64) -> Result<SampleBatch> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = stream_rng(seed, i as u64);
        let mut m: Option<CMatrix> = None;
        for f in &spec.factors {
            let fm = sample_factor(f, &mut rng)?;
            m = Some(match m {
                None => fm,
                Some(prev) => &fm * prev,
            });
        }
        let m = m.ok_or_else(|| Error::BadEnsemble("empty factor chain".into()))?;
        let mut vals: Vec<f64> = m
            .svd(false, false)
            .singular_values
            .iter()
            .map(|s| s * s)
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals.truncate(spec.n); // all but the smallest n are zero-padded dims
        if vals.len() != spec.n {
            return Err(Error::BadEnsemble("unexpected singular value count".into()));
        }
        out.push(vals);
    }
    Ok(SampleBatch {
        seed,
        count,
        sq_singvals: out,
    })
}

/// Monte Carlo estimate of one characteristic polynomial coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffEstimate {
    /// Power of x this coefficient multiplies.
    pub power: usize,
    pub mean: f64,
    pub stderr: f64,
    /// Predicted exact value (monic type II coefficient).
    pub predicted: f64,
}

/// Averages the characteristic polynomial prod_j (x - lambda_j) of the
/// squared singular values over a batch, against the monic type II
/// prediction.
pub fn mc_avg_charpoly(
    spec: &EnsembleSpec,
    count: usize,
    seed: u64,
) -> Result<(Vec<CoeffEstimate>, TypeIIResult)> {
    let batch = sample_sq_singvals(spec, count, seed)?;
    let n = spec.n;
    let mut sums = vec![0.0f64; n + 1];
    let mut sumsq = vec![0.0f64; n + 1];
    for vals in &batch.sq_singvals {
        let coeffs = charpoly_from_roots(vals);
        for (k, c) in coeffs.iter().enumerate() {
            sums[k] += c;
            sumsq[k] += c * c;
        }
    }
    let predicted = type2_construct(&spec.sys, &spec.mi)?.monic();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mean = sums[k] / count as f64;
        let var = (sumsq[k] / count as f64 - mean * mean).max(0.0);
        let stderr = (var / count as f64).sqrt();
        out.push(CoeffEstimate {
            power: k,
            mean,
            stderr,
            predicted: rat_to_f64(&predicted.poly.coeff(k)),
        });
    }
    Ok((out, predicted))
}

/// Monic coefficients (ascending powers) of prod_j (x - r_j).
fn charpoly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; roots.len() + 1];
    c[0] = 1.0;
    for (i, &r) in roots.iter().enumerate() {
        // multiply by (x - r): new[k] = old[k-1] - r * old[k]
        let mut prev = 0.0;
        for ck in c.iter_mut().take(i + 2) {
            let old = *ck;
            *ck = prev - r * old;
            prev = old;
        }
    }
    c
}

/// KS comparison of (scaled) sampled squared singular values against a model.
pub fn compare_spectrum(
    spec: &EnsembleSpec,
    count: usize,
    seed: u64,
    model: &DensityModel,
) -> Result<DistComparison> {
    let batch = sample_sq_singvals(spec, count, seed)?;
    let scale = (spec.n as f64).powi(-spec.scaling_exponent);
    let mut all: Vec<f64> = Vec::with_capacity(count * spec.n);
    for vals in &batch.sq_singvals {
        all.extend(vals.iter().map(|v| v * scale));
    }
    empirical_vs_model(&all, model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_coefficients() {
        // (x-2)(x-3) = 6 - 5x + x^2
        let c = charpoly_from_roots(&[2.0, 3.0]);
        assert_eq!(c, vec![6.0, -5.0, 1.0]);
        assert_eq!(charpoly_from_roots(&[]), vec![1.0]);
    }

    #[test]
    fn ginibre_shape_and_moment() {
        let mut rng = stream_rng(7, 0);
        let m = sample_ginibre(3, 2, &mut rng);
        assert_eq!((m.nrows(), m.ncols()), (3, 2));
        // E|g|^2 = 1 within 3 sigma over 10^5 draws (var of |g|^2 is 1)
        let n = 100_000;
        let mut acc = 0.0;
        let mut rng = stream_rng(12345, 0);
        for _ in 0..n {
            acc += complex_gaussian(&mut rng).norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn seed_determinism() {
        let spec = build_t_ensemble(2, &[2], &[0], &[0]).unwrap();
        let b1 = sample_sq_singvals(&spec, 5, 99).unwrap();
        let b2 = sample_sq_singvals(&spec, 5, 99).unwrap();
        assert_eq!(b1.sq_singvals, b2.sq_singvals);
        let b3 = sample_sq_singvals(&spec, 5, 100).unwrap();
        assert_ne!(b1.sq_singvals, b3.sq_singvals);
    }

    #[test]
    fn haar_unitarity() {
        let mut rng = stream_rng(3, 0);
        let u = sample_haar_unitary(6, &mut rng);
        let prod = u.adjoint() * &u;
        let mut err = 0.0f64;
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                err = err.max((prod[(i, j)] - Complex::new(want, 0.0)).norm());
            }
        }
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn truncation_1x1_beta_law() {
        // |U_11|^2 of a 2x2 Haar unitary is uniform on (0,1)
        let n = 100_000;
        let mut acc = 0.0;
        for i in 0..n {
            let mut rng = stream_rng(5, i);
            let t = sample_truncation(1, 1, 2, &mut rng).unwrap();
            acc += t[(0, 0)].norm_sqr();
        }
        let mean = acc / n as f64;
        // variance of U(0,1) is 1/12
        let sigma = (1.0 / 12.0f64 / n as f64).sqrt();
        assert!((mean - 0.5).abs() < 3.0 * sigma, "{mean}");
    }

    #[test]
    fn truncation_values_in_unit_interval() {
        let spec = build_t_ensemble(1, &[1], &[0], &[0]).unwrap();
        let batch = sample_sq_singvals(&spec, 200, 11).unwrap();
        assert!(batch
            .sq_singvals
            .iter()
            .all(|v| v[0] > 0.0 && v[0] < 1.0));
    }

    #[test]
    fn ensemble_validation() {
        // layout constraint b_1 >= (n - n_1) + a_1
        assert!(build_t_ensemble(4, &[2, 2], &[0, 0], &[0, 0]).is_err());
        assert!(build_t_ensemble(4, &[2, 2], &[0, 0], &[2, 0]).is_ok());
        // mixed: a_j <= b_j
        assert!(build_mixed_ensemble(2, &[1], &[1], &[1], &[0], &[0]).is_err());
        let spec = build_mixed_ensemble(2, &[1], &[1], &[0], &[0], &[0]).unwrap();
        assert_eq!(spec.scaling_exponent, 1);
        assert_eq!(spec.factors.len(), 2);
        assert!(matches!(spec.factors[0], Factor::Ginibre { .. }));
    }

    #[test]
    fn single_ginibre_charpoly_is_laguerre() {
        // 1x1 Ginibre: E[x - |g|^2] = x - 1
        let spec = build_mixed_ensemble(1, &[], &[1], &[], &[], &[0]).unwrap();
        let (est, pred) = mc_avg_charpoly(&spec, 30_000, 21).unwrap();
        assert!((est[0].predicted + 1.0).abs() < 1e-14);
        assert!((est[0].mean - est[0].predicted).abs() < 3.0 * est[0].stderr);
        assert_eq!(pred.poly.degree(), Some(1));
    }

    #[test]
    fn single_truncation_charpoly() {
        // 1x1 truncation of 2x2 Haar: E[x - |t|^2] = x - 1/2
        let spec = build_t_ensemble(1, &[1], &[0], &[0]).unwrap();
        let (est, _) = mc_avg_charpoly(&spec, 30_000, 22).unwrap();
        assert!((est[0].predicted + 0.5).abs() < 1e-14);
        assert!((est[0].mean - est[0].predicted).abs() < 3.0 * est[0].stderr);
    }

    #[test]
    fn product_of_independent_ginibres_mean() {
        // product of two independent 1x1 Ginibres: E[|g1 g2|^2] = 1
        let spec = build_mixed_ensemble(1, &[], &[1, 0], &[], &[], &[0, 0]).unwrap();
        let batch = sample_sq_singvals(&spec, 50_000, 33).unwrap();
        let mean: f64 =
            batch.sq_singvals.iter().map(|v| v[0]).sum::<f64>() / batch.count as f64;
        // var(|g1 g2|^2) = E[x^2 y^2] - 1 = 3 (x, y independent exp(1))
        let sigma = (3.0f64 / batch.count as f64).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * sigma, "{mean}");
    }
}
