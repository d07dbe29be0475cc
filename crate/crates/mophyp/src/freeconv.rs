//! Finite free multiplicative convolution, S-transform machinery on moment
//! series, the limiting zero densities, and their algebraic Stieltjes
//! equations.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mop::{type2_construct, Check, CheckReport};
use crate::multiindex::MultiIndex;
use crate::params::{ParamSystem, Setting};
use crate::poly::ExactPolynomial;
use crate::quad::tanh_sinh;
use crate::rat::{rat_int, Rat};
use crate::series::{Scalar, TruncSeries};

/// Finite free multiplicative convolution exactly as displayed in the source
/// definition: coefficientwise product of the boxtimes coefficients, no
/// binomial normalization.
pub fn ffmc(p: &ExactPolynomial, q: &ExactPolynomial, d: usize) -> ExactPolynomial {
    let pc = p.boxtimes_coeffs(d);
    let qc = q.boxtimes_coeffs(d);
    let rc: Vec<Rat> = pc.iter().zip(&qc).map(|(a, b)| a * b).collect();
    ExactPolynomial::from_boxtimes_coeffs(&rc)
}

/// The same convolution with the 1/binom(d, k) normalization under which
/// (x-1)^d is the identity and the decomposition identities hold. This is the
/// variant `verify_decomposition` checks against.
pub fn ffmc_normalized(p: &ExactPolynomial, q: &ExactPolynomial, d: usize) -> ExactPolynomial {
    let pc = p.boxtimes_coeffs(d);
    let qc = q.boxtimes_coeffs(d);
    let mut binom = Rat::one();
    let rc: Vec<Rat> = (0..=d)
        .map(|k| {
            if k > 0 {
                binom *= rat_int((d - k + 1) as i64);
                binom /= rat_int(k as i64);
            }
            &pc[k] * &qc[k] / &binom
        })
        .collect();
    ExactPolynomial::from_boxtimes_coeffs(&rc)
}

/// Hypergeometric polynomial sum_k (-N)_k prod(upper)_k / (prod(lower)_k k!) x^k.
pub fn hyper_poly(upper: &[Rat], lower: &[Rat], n: usize) -> ExactPolynomial {
    let minus_n = rat_int(-(n as i64));
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut kfac = Rat::one();
    for k in 0..=n {
        if k > 0 {
            kfac *= rat_int(k as i64);
        }
        let mut c = crate::rat::poch(&minus_n, k) / kfac.clone();
        for u in upper {
            c *= crate::rat::poch(u, k);
        }
        for l in lower {
            c /= crate::rat::poch(l, k);
        }
        coeffs.push(c);
    }
    ExactPolynomial::new(coeffs)
}

/// Checks the finite free decompositions of the type II polynomial for the
/// system, up to an exact scalar (reported). Uses the normalized convolution;
/// the unnormalized display cannot satisfy the identities for degree >= 2.
pub fn verify_decomposition(sys: &ParamSystem, mi: &MultiIndex) -> Result<CheckReport> {
    mi.validate_for(sys)?;
    let mut report = CheckReport::default();
    let nn = mi.size();
    let one = Rat::one();
    let plus1 = |x: &Rat| x + &one;
    match sys.setting() {
        Setting::Jacobi => {
            // Jacobi-Pineiro display: F(-N, b+n+1; b+1) = box of 2F1(-N, b_j+n_j+1; b_j+1)
            let jp_sys = ParamSystem::new(sys.b().to_vec(), sys.b().to_vec())?;
            let target = type2_construct(&jp_sys, mi)?.poly;
            let mut conv: Option<ExactPolynomial> = None;
            for (j, b) in sys.b().iter().enumerate() {
                let f = hyper_poly(&[b + rat_int(mi.head()[j] as i64 + 1)], &[plus1(b)], nn);
                conv = Some(match conv {
                    None => f,
                    Some(c) => ffmc_normalized(&c, &f, nn),
                });
            }
            push_scalar_check(
                &mut report,
                "jacobi-pineiro decomposition",
                &target,
                &conv.unwrap(),
            );

            // general display: P(a,b) = P^(II|b) box 2F1(-N, b_j+1; a_j+1) factors
            let target = type2_construct(sys, mi)?.poly;
            let mut conv = type2_construct(&jp_sys, mi)?.poly;
            for (j, b) in sys.b().iter().enumerate() {
                let f = hyper_poly(&[plus1(b)], &[plus1(&sys.a()[j])], nn);
                conv = ffmc_normalized(&conv, &f, nn);
            }
            push_scalar_check(&mut report, "jacobi two-step decomposition", &target, &conv);
        }
        Setting::Laguerre => {
            // first factor: type II of the Jacobi-like system (a, b ++ a_tail)
            let target = type2_construct(sys, mi)?.poly;
            let a_tail: Vec<Rat> = sys.a()[sys.q()..].to_vec();
            let mut b_full = sys.b().to_vec();
            b_full.extend(a_tail.iter().cloned());
            let jac_sys = ParamSystem::new(sys.a().to_vec(), b_full)?;
            let jac_mi = MultiIndex::new(mi.all());
            let mut conv = type2_construct(&jac_sys, &jac_mi)?.poly;
            let tail = mi.tail().unwrap();
            for (j, aj) in a_tail.iter().enumerate() {
                let f = hyper_poly(&[], &[aj + rat_int(tail[j] as i64 + 1)], nn);
                conv = ffmc_normalized(&conv, &f, nn);
            }
            push_scalar_check(&mut report, "laguerre decomposition", &target, &conv);
        }
        Setting::Bessel => {
            let target = type2_construct(sys, mi)?.poly;
            let mut conv: Option<ExactPolynomial> = None;
            for (j, b) in sys.b().iter().enumerate() {
                let up = b + rat_int(mi.head()[j] as i64 + 1);
                let f = if j < sys.p() {
                    hyper_poly(&[up], &[plus1(&sys.a()[j])], nn)
                } else {
                    hyper_poly(&[up], &[], nn)
                };
                conv = Some(match conv {
                    None => f,
                    Some(c) => ffmc_normalized(&c, &f, nn),
                });
            }
            push_scalar_check(&mut report, "bessel decomposition", &target, &conv.unwrap());
        }
    }
    Ok(report)
}

fn push_scalar_check(
    report: &mut CheckReport,
    name: &str,
    target: &ExactPolynomial,
    conv: &ExactPolynomial,
) {
    match target.proportionality(conv) {
        Some(s) => report.push(Check::flag(name, true, format!("scalar {s}"))),
        None => report.push(Check::flag(name, false, "not proportional")),
    }
}

/// Truncated moment sequence m_1..m_K of a probability measure (m_0 = 1
/// implicitly). Generic over exact rationals and floats.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries<T> {
    pub moments: Vec<T>,
}

impl<T: Scalar> MomentSeries<T> {
    pub fn new(moments: Vec<T>) -> Self {
        Self { moments }
    }

    pub fn order(&self) -> usize {
        self.moments.len()
    }

    fn m_series(&self) -> TruncSeries<T> {
        let mut coeffs = vec![T::zero()];
        coeffs.extend(self.moments.iter().cloned());
        TruncSeries::new(coeffs, self.order())
    }

    /// S-transform coefficients (a power series in z of order K-1):
    /// S(z) = m^{-1}(z) (z+1)/z. Requires m_1 != 0.
    pub fn stransform(&self) -> Result<TruncSeries<T>> {
        if self.moments.is_empty() || self.moments[0].is_zero() {
            return Err(Error::HypothesisViolation(
                "S-transform needs a nonzero first moment".into(),
            ));
        }
        let minv = self.m_series().reversion();
        // u(z) = m^{-1}(z)/z, then S = u * (1 + z)
        let k = self.order() - 1;
        let u = TruncSeries::new(minv.coeffs[1..].to_vec(), k);
        let one_plus_z = TruncSeries::new(vec![T::one(), T::one()], k);
        Ok(u.mul(&one_plus_z))
    }

    /// Rebuilds the first K moments from an S-transform series of order K-1.
    pub fn from_stransform(s: &TruncSeries<T>) -> Self {
        let k = s.order() + 1;
        let one_plus_z = TruncSeries::new(vec![T::one(), T::one()], s.order());
        let u = s.mul(&one_plus_z.inverse());
        // m^{-1}(z) = z * u(z)
        let mut minv_coeffs = vec![T::zero()];
        minv_coeffs.extend(u.coeffs.iter().cloned());
        let minv = TruncSeries::new(minv_coeffs, k);
        let m = minv.reversion();
        Self::new(m.coeffs[1..].to_vec())
    }
}

/// moments -> S-transform -> moments; identity up to the truncation order.
pub fn stransform_roundtrip<T: Scalar>(ms: &MomentSeries<T>) -> Result<MomentSeries<T>> {
    Ok(MomentSeries::from_stransform(&ms.stransform()?))
}

/// First K moments of the free multiplicative convolution, via the
/// S-transform product.
pub fn free_mult_moments<T: Scalar>(
    a: &MomentSeries<T>,
    b: &MomentSeries<T>,
    k: usize,
) -> Result<MomentSeries<T>> {
    let ta = truncate(a, k).stransform()?;
    let tb = truncate(b, k).stransform()?;
    let prod = ta.mul(&tb);
    Ok(MomentSeries::from_stransform(&prod))
}

fn truncate<T: Scalar>(ms: &MomentSeries<T>, k: usize) -> MomentSeries<T> {
    assert!(ms.order() >= k, "not enough moments");
    MomentSeries::new(ms.moments[..k].to_vec())
}

/// Moment sequence of the Marchenko-Pastur law (ratio 1): Catalan numbers.
pub fn marchenko_pastur_moments(k: usize) -> MomentSeries<Rat> {
    let mut ms = Vec::with_capacity(k);
    let mut c = Rat::one();
    for n in 1..=k {
        // C_n = C_{n-1} * 2(2n-1)/(n+1)
        c = c * rat_int(2 * (2 * n as i64 - 1)) / rat_int(n as i64 + 1);
        ms.push(c.clone());
    }
    MomentSeries::new(ms)
}

/// Limiting density models for zero distributions and singular value laws.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityModel {
    /// Deformed arcsine u_alpha on (0, 4(alpha+1)/(alpha+2)^2).
    DeformedArcsin { alpha: f64 },
    /// Limiting zero density of the r-component Jacobi-type polynomials.
    VJacobi { r: usize },
    /// Marchenko-Pastur law with ratio 1 on (0, 4).
    MarchenkoPastur,
    /// Unit point mass at 1.
    PointMassAtOne,
    Mixture {
        weights: Vec<f64>,
        parts: Vec<DensityModel>,
    },
    /// Free multiplicative product of the parts (moment level only).
    FreeProduct { parts: Vec<DensityModel> },
}

impl DensityModel {
    /// Closed support interval; point masses report a degenerate interval.
    pub fn support(&self) -> (f64, f64) {
        match self {
            DensityModel::DeformedArcsin { alpha } => {
                (0.0, 4.0 * (alpha + 1.0) / ((alpha + 2.0) * (alpha + 2.0)))
            }
            DensityModel::VJacobi { .. } => (0.0, 1.0),
            DensityModel::MarchenkoPastur => (0.0, 4.0),
            DensityModel::PointMassAtOne => (1.0, 1.0),
            DensityModel::Mixture { parts, .. } => {
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for p in parts {
                    let (a, b) = p.support();
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
                (lo, hi)
            }
            DensityModel::FreeProduct { .. } => (0.0, f64::INFINITY),
        }
    }

    /// Density value at x in the open support. Point masses and free products
    /// have no pointwise density.
    pub fn density(&self, x: f64) -> Result<f64> {
        match self {
            DensityModel::DeformedArcsin { alpha } => {
                let (lo, hi) = self.support();
                if x <= lo || x >= hi {
                    return Err(Error::OutsideSupport(format!("{x} not in ({lo}, {hi})")));
                }
                let a2 = alpha + 2.0;
                let disc = 4.0 * (alpha + 1.0) * x - a2 * a2 * x * x;
                Ok(disc.sqrt() / (2.0 * std::f64::consts::PI * x * (1.0 - x)))
            }
            DensityModel::VJacobi { r } => {
                if x <= 0.0 || x >= 1.0 {
                    return Err(Error::OutsideSupport(format!("{x} not in (0, 1)")));
                }
                let phi = vjacobi_invert(*r, x);
                Ok(vjacobi_density_at_phi(*r, phi))
            }
            DensityModel::MarchenkoPastur => {
                if x <= 0.0 || x >= 4.0 {
                    return Err(Error::OutsideSupport(format!("{x} not in (0, 4)")));
                }
                Ok(((4.0 - x) / x).sqrt() / (2.0 * std::f64::consts::PI))
            }
            DensityModel::PointMassAtOne | DensityModel::FreeProduct { .. } => Err(
                Error::OutsideSupport("model has no pointwise density".into()),
            ),
            DensityModel::Mixture { weights, parts } => {
                let mut acc = 0.0;
                for (w, p) in weights.iter().zip(parts) {
                    if matches!(p, DensityModel::PointMassAtOne) {
                        continue;
                    }
                    let (lo, hi) = p.support();
                    if x > lo && x < hi {
                        acc += w * p.density(x)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Distribution function F(x), by quadrature of the density (the VJacobi
    /// model integrates in the phi parametrization where both the density and
    /// dx are explicit).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            DensityModel::PointMassAtOne => Ok(if x >= 1.0 { 1.0 } else { 0.0 }),
            DensityModel::Mixture { weights, parts } => {
                let mut acc = 0.0;
                for (w, p) in weights.iter().zip(parts) {
                    acc += w * p.cdf(x)?;
                }
                Ok(acc)
            }
            DensityModel::VJacobi { r } => {
                if x <= 0.0 {
                    return Ok(0.0);
                }
                if x >= 1.0 {
                    return Ok(1.0);
                }
                let r = *r;
                let phi_x = vjacobi_invert(r, x);
                let top = std::f64::consts::PI / (r as f64 + 1.0);
                // F(x) = int_{phi(x)}^{pi/(r+1)} v_r(x(phi)) |x'(phi)| dphi
                Ok(
                    tanh_sinh(|phi, _, _| vjacobi_g(r, phi), phi_x, top, 1e-11)?
                        .value
                        .clamp(0.0, 1.0),
                )
            }
            DensityModel::FreeProduct { .. } => Err(Error::OutsideSupport(
                "free products are moment-level models".into(),
            )),
            _ => {
                let (lo, hi) = self.support();
                if x <= lo {
                    return Ok(0.0);
                }
                if x >= hi {
                    return Ok(1.0);
                }
                Ok(self.quad_over(lo, x, 1e-11)?.clamp(0.0, 1.0))
            }
        }
    }

    /// First K moments by adaptive quadrature (exact 1s for the point mass,
    /// S-transform products for free products).
    pub fn moments(&self, k: usize, tol: f64) -> Result<MomentSeries<f64>> {
        match self {
            DensityModel::PointMassAtOne => Ok(MomentSeries::new(vec![1.0; k])),
            DensityModel::Mixture { weights, parts } => {
                let parts_ms: Vec<MomentSeries<f64>> = parts
                    .iter()
                    .map(|p| p.moments(k, tol))
                    .collect::<Result<_>>()?;
                let mut out = vec![0.0; k];
                for (w, ms) in weights.iter().zip(&parts_ms) {
                    for (i, m) in ms.moments.iter().enumerate() {
                        out[i] += w * m;
                    }
                }
                Ok(MomentSeries::new(out))
            }
            DensityModel::FreeProduct { parts } => {
                let mut acc: Option<MomentSeries<f64>> = None;
                for p in parts {
                    let ms = p.moments(k, tol)?;
                    acc = Some(match acc {
                        None => ms,
                        Some(a) => free_mult_moments(&a, &ms, k)?,
                    });
                }
                acc.ok_or_else(|| Error::InvalidParams("empty free product".into()))
            }
            DensityModel::VJacobi { r } => {
                let r = *r;
                let top = std::f64::consts::PI / (r as f64 + 1.0);
                let mut out = Vec::with_capacity(k);
                for j in 1..=k {
                    let g = |phi: f64, _: f64, _: f64| {
                        vjacobi_x(r, phi).powi(j as i32) * vjacobi_g(r, phi)
                    };
                    out.push(tanh_sinh(g, 0.0, top, tol)?.value);
                }
                Ok(MomentSeries::new(out))
            }
            _ => {
                let (lo, hi) = self.support();
                let mut out = Vec::with_capacity(k);
                for j in 1..=k {
                    out.push(self.quad_moment(j as i32, lo, hi, tol)?);
                }
                Ok(MomentSeries::new(out))
            }
        }
    }

    /// Total mass by quadrature; 1 for well-formed models.
    pub fn mass(&self, tol: f64) -> Result<f64> {
        match self {
            DensityModel::PointMassAtOne => Ok(1.0),
            DensityModel::Mixture { weights, parts } => {
                let mut acc = 0.0;
                for (w, p) in weights.iter().zip(parts) {
                    acc += w * p.mass(tol)?;
                }
                Ok(acc)
            }
            DensityModel::FreeProduct { .. } => Ok(1.0),
            DensityModel::VJacobi { r } => {
                let r = *r;
                let top = std::f64::consts::PI / (r as f64 + 1.0);
                Ok(tanh_sinh(|phi, _, _| vjacobi_g(r, phi), 0.0, top, tol)?.value)
            }
            _ => {
                let (lo, hi) = self.support();
                Ok(self.quad_moment(0, lo, hi, tol)?)
            }
        }
    }

    /// Endpoint-aware density for quadrature: distances to both interval
    /// endpoints are supplied by the rule, keeping the square-root endpoint
    /// factors accurate where x has rounded to an endpoint.
    fn density_quad(&self, x: f64, fl: f64, fr: f64, lo: f64, hi: f64) -> f64 {
        match self {
            DensityModel::DeformedArcsin { alpha } => {
                let (slo, shi) = self.support();
                // distances to the support endpoints
                let dl = if lo == slo { fl } else { x - slo };
                let dr = if hi == shi { fr } else { shi - x };
                if dl <= 0.0 || dr <= 0.0 {
                    return 0.0;
                }
                let a2 = alpha + 2.0;
                let one_minus_x = if shi == 1.0 { dr } else { 1.0 - x };
                a2 * (dl * dr).sqrt() / (2.0 * std::f64::consts::PI * x * one_minus_x)
            }
            DensityModel::MarchenkoPastur => {
                let dl = if lo == 0.0 { fl } else { x };
                let dr = if hi == 4.0 { fr } else { 4.0 - x };
                if dl <= 0.0 || dr <= 0.0 {
                    return 0.0;
                }
                (dr / dl).sqrt() / (2.0 * std::f64::consts::PI)
            }
            _ => self.density(x).unwrap_or(0.0),
        }
    }

    fn quad_over(&self, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        let (slo, shi) = self.support();
        Ok(tanh_sinh(
            |x, fl, fr| self.density_quad(x, fl, fr, lo, hi),
            lo.max(slo),
            hi.min(shi),
            tol,
        )?
        .value)
    }

    fn quad_moment(&self, k: i32, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        Ok(tanh_sinh(
            |x, fl, fr| x.powi(k) * self.density_quad(x, fl, fr, lo, hi),
            lo,
            hi,
            tol,
        )?
        .value)
    }
}

fn vjacobi_x(r: usize, phi: f64) -> f64 {
    let rf = r as f64;
    let c = rf.powi(r as i32) / (rf + 1.0).powi(r as i32 + 1);
    c * ((rf + 1.0) * phi).sin().powi(r as i32 + 1)
        / (phi.sin() * (rf * phi).sin().powi(r as i32))
}

/// cot(z) - 1/z, stable near z = 0 (series) and elsewhere (direct).
fn cot_minus_inv(z: f64) -> f64 {
    if z.abs() < 0.1 {
        let z2 = z * z;
        -z / 3.0 * (1.0 + z2 / 15.0 * (1.0 + 2.0 * z2 / 21.0))
    } else {
        1.0 / z.tan() - 1.0 / z
    }
}

/// d log x / d phi; the 1/phi parts of the three cotangents cancel exactly,
/// so they are removed symbolically before evaluation.
fn vjacobi_dlog(r: usize, phi: f64) -> f64 {
    let rf = r as f64;
    (rf + 1.0) * (rf + 1.0) * cot_minus_inv((rf + 1.0) * phi)
        - cot_minus_inv(phi)
        - rf * rf * cot_minus_inv(rf * phi)
}

fn vjacobi_dx_dphi(r: usize, phi: f64, x: f64) -> f64 {
    x * vjacobi_dlog(r, phi)
}

/// The quadratic form in the density denominator, written as the exact sum of
/// squares |(r+1) sin(r phi) - r sin((r+1) phi) e^{i phi}|^2 so the phi -> 0
/// cancellation (it vanishes to fourth order) costs no precision.
fn vjacobi_denom(r: usize, phi: f64) -> f64 {
    let rf = r as f64;
    let sr = (rf * phi).sin();
    let sr1 = ((rf + 1.0) * phi).sin();
    let e = (rf + 1.0) * sr - rf * sr1 * phi.cos();
    e * e + rf * rf * sr1 * sr1 * phi.sin() * phi.sin()
}

fn vjacobi_density_at_phi(r: usize, phi: f64) -> f64 {
    let rf = r as f64;
    let x = vjacobi_x(r, phi);
    let s1 = phi.sin();
    let sr = (rf * phi).sin();
    let sr1 = ((rf + 1.0) * phi).sin();
    (rf + 1.0) / (std::f64::consts::PI * x) * s1 * sr * sr1 / vjacobi_denom(r, phi)
}

/// Pushforward of the zero density to the phi coordinate:
/// g(phi) = v_r(x(phi)) |x'(phi)|; the x factors cancel, leaving a bounded
/// smooth integrand on (0, pi/(r+1)).
fn vjacobi_g(r: usize, phi: f64) -> f64 {
    let rf = r as f64;
    if phi < 1e-8 {
        // limit value; avoids underflow of the phi^4 denominator
        return (rf + 1.0) / std::f64::consts::PI;
    }
    let s1 = phi.sin();
    let sr = (rf * phi).sin();
    let sr1 = ((rf + 1.0) * phi).sin();
    (rf + 1.0) / std::f64::consts::PI * s1 * sr * sr1 * (-vjacobi_dlog(r, phi))
        / vjacobi_denom(r, phi)
}

/// Inverts the monotone parametrization x(phi) on (0, pi/(r+1)) by bisection.
fn vjacobi_invert(r: usize, x: f64) -> f64 {
    let mut lo = 1e-14f64;
    let mut hi = std::f64::consts::PI / (r as f64 + 1.0) * (1.0 - 1e-14);
    // x(phi) decreases from 1 to 0
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if vjacobi_x(r, mid) > x {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Which algebraic Stieltjes equation to test against.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StieltjesEq {
    /// (zS)^{r+1} = z (zS - 1)(zS + 1/r)^r, the equation satisfied by the
    /// limiting zero distribution of the r-component Jacobi-type polynomials
    /// (the p = q case of the Laguerre equation below, derived from the
    /// S-transform product form).
    Jacobi { r: usize },
    /// (zS)^{p+1} = z (zS + 1/p)^q (zS - 1) for the scaled Laguerre-type
    /// zero distribution.
    Laguerre { p: usize, q: usize },
    /// z(1-z) S^2 - alpha z S + (alpha + 1) = 0 for the deformed arcsine.
    DeformedArcsin { alpha: f64 },
}

/// Left minus right side of the respective algebraic equation.
pub fn stieltjes_residual(eq: StieltjesEq, z: Complex64, s: Complex64) -> Complex64 {
    match eq {
        StieltjesEq::Jacobi { r } => stieltjes_residual(StieltjesEq::Laguerre { p: r, q: r }, z, s),
        StieltjesEq::Laguerre { p, q } => {
            let zs = z * s;
            let lhs = zs.powu(p as u32 + 1);
            let rhs = z * (zs + 1.0 / p as f64).powu(q as u32) * (zs - 1.0);
            lhs - rhs
        }
        StieltjesEq::DeformedArcsin { alpha } => {
            z * (Complex64::new(1.0, 0.0) - z) * s * s - alpha * z * s + (alpha + 1.0)
        }
    }
}

/// Average resolvent (1/n) sum_i 1/(z - x_i) of an empirical zero set.
pub fn empirical_stieltjes(zeros: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for &x in zeros {
        acc += (z - x).inv();
    }
    acc / zeros.len() as f64
}

/// Stieltjes transform from a truncated moment series at large |z|:
/// S(z) ~ sum_{k=0..K} m_k z^{-k-1} with m_0 = 1.
pub fn stieltjes_from_moments(moments: &[f64], z: Complex64) -> Complex64 {
    let zinv = z.inv();
    let mut acc = zinv;
    let mut pw = zinv;
    for m in moments {
        pw *= zinv;
        acc += m * pw;
    }
    acc
}
