//! Exact centred moments of Poisson U-statistics and their upper bounds.
//!
//! The ℓ-th centred moment is `Σ_σ γ^{k(σ)} ∫(f^{⊗ℓ})_σ dΛ^{k(σ)}`, summed
//! over the subpartitions streamed by [`crate::combinat::enumerate_star2`].
//! Kernel integrals come from a [`KernelIntegrals`] provider.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinat::{enumerate_star2, star2_histogram, stirling2, Subpartition};
use crate::error::{Error, Result};
use crate::model::{A1Params, ConstantKernel};

/// Source of the kernel integrals `∫(f^{⊗ℓ})_σ dΛ^k`.
pub trait KernelIntegrals {
    fn integral(&self, sigma: &Subpartition, ell: usize, k: usize) -> Result<f64>;
}

/// Closed form for a constant kernel: `c^ℓ a^k`.
impl KernelIntegrals for ConstantKernel {
    fn integral(&self, _sigma: &Subpartition, ell: usize, k: usize) -> Result<f64> {
        Ok(self.c.powi(ell as i32) * self.a.powi(k as i32))
    }
}

/// Integrals looked up by the blocks of σ (canonical order).
#[derive(Debug, Clone, Default)]
pub struct Tabulated {
    pub values: HashMap<Vec<Vec<usize>>, f64>,
}

impl KernelIntegrals for Tabulated {
    fn integral(&self, sigma: &Subpartition, _ell: usize, _k: usize) -> Result<f64> {
        self.values
            .get(&sigma.blocks)
            .copied()
            .ok_or_else(|| Error::Missing(format!("no tabulated integral for {:?}", sigma.blocks)))
    }
}

/// Integrals supplied by a user callback.
pub struct Callback<F>(pub F);

impl<F> KernelIntegrals for Callback<F>
where
    F: Fn(&Subpartition, usize, usize) -> Result<f64>,
{
    fn integral(&self, sigma: &Subpartition, ell: usize, k: usize) -> Result<f64> {
        (self.0)(sigma, ell, k)
    }
}

/// An exact centred moment with the number of summed terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    pub ell: usize,
    pub value: f64,
    pub term_count: u64,
}

/// `E[P_α^n] = Σ_k S(n,k) α^k`.
pub fn poisson_raw_moment(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut total = 0.0;
    for k in 1..=n {
        let s = stirling2(n, k)?.to_f64().unwrap_or(f64::INFINITY);
        total += s * alpha.powi(k as i32);
    }
    Ok(total)
}

/// `(n / log(1 + n/α))^n`, an upper bound on `E[P_α^n]`.
pub fn poisson_moment_bound(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need alpha > 0 and n >= 1, got alpha = {alpha}, n = {n}"
        )));
    }
    let nf = n as f64;
    Ok((nf / (nf / alpha).ln_1p()).powi(n as i32))
}

/// Sums `γ^{k(σ)} ki(σ)` over the enumerated class.
pub fn centred_moment_exact<K: KernelIntegrals + ?Sized>(
    ki: &K,
    gamma: f64,
    m: usize,
    ell: usize,
) -> Result<MomentResult> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut term_count = 0u64;
    for sigma in enumerate_star2(m, ell)? {
        let k = sigma.k();
        let term = gamma.powi(k as i32) * ki.integral(&sigma, ell, k)?;
        // Kahan summation keeps long sums reproducible to the last bits
        let y = term - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
        term_count += 1;
    }
    Ok(MomentResult { ell, value, term_count })
}

/// `α2^ℓ Σ_k S^m_{≥2}(ℓ,k) (γα1)^k`, the ℓ-th centred moment of `α2 (P_{γα1})_m`.
pub fn centred_moment_constant_kernel(
    alpha1: f64,
    alpha2: f64,
    gamma: f64,
    m: usize,
    ell: usize,
) -> Result<f64> {
    if !(alpha1 > 0.0 && alpha2 > 0.0 && gamma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need alpha1, alpha2, gamma > 0; got ({alpha1}, {alpha2}, {gamma})"
        )));
    }
    let hist = star2_histogram(m, ell)?;
    let x = gamma * alpha1;
    let sum: f64 = hist
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| c.to_f64().unwrap_or(f64::INFINITY) * x.powi(k as i32))
        .sum();
    Ok(alpha2.powi(ell as i32) * sum)
}

/// `Σ_{k=1}^m γ^{2m−k} k! ‖f_k‖²`.
pub fn variance_exact(fk_norms_sq: &[f64], gamma: f64, m: usize) -> Result<f64> {
    if fk_norms_sq.len() != m {
        return Err(Error::InvalidArgument(format!(
            "expected {m} norms, got {}",
            fk_norms_sq.len()
        )));
    }
    if fk_norms_sq.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(Error::InvalidArgument("norms must be finite and non-negative".into()));
    }
    let mut fact = 1.0;
    let mut total = 0.0;
    for (i, v) in fk_norms_sq.iter().enumerate() {
        let k = i + 1;
        fact *= k as f64;
        total += gamma.powi((2 * m - k) as i32) * fact * v;
    }
    Ok(total)
}

/// Which closed form of the centred-moment bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentRegime {
    General,
    /// Requires `γβ1 >= 2mℓ`.
    HighIntensity,
}

fn moment_bases(p: &A1Params, gamma: f64, m: usize, ell: usize, regime: MomentRegime) -> Result<f64> {
    p.validate()?;
    if ell < 2 || m == 0 {
        return Err(Error::InvalidArgument(format!("need m >= 1 and ell >= 2, got m = {m}, ell = {ell}")));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    let mf = m as f64;
    let ml = mf * ell as f64;
    let x = gamma * p.beta1;
    match regime {
        MomentRegime::General => {
            let num = 2f64.powf(p.q * mf)
                * ml.powi(m as i32)
                * p.beta2
                * (x / ml).max(1.0).powf((mf - 0.5) * p.q);
            let den = (ml / x).ln_1p().powf(mf * (1.0 - p.q));
            Ok(num / den)
        }
        MomentRegime::HighIntensity => {
            if x < 2.0 * ml {
                return Err(Error::Precondition(format!(
                    "high-intensity regime needs gamma*beta1 >= 2*m*ell = {}, got {x}",
                    2.0 * ml
                )));
            }
            Ok(2f64.powi(2 * m as i32 + 1) * ml * p.beta2 * p.beta2 * x.powf(2.0 * mf - 1.0))
        }
    }
}

/// Upper bound on `E[(F_m − E F_m)^ℓ]` under (A1).
///
/// General: `β0 (2^{qm}(mℓ)^m β2 max(1, γβ1/mℓ)^{(m−1/2)q} / log^{m(1−q)}(1 + mℓ/γβ1))^ℓ`.
/// High intensity: `β0 (2^{2m+1} mℓ β2² (γβ1)^{2m−1})^{ℓ/2}`.
pub fn centred_moment_upper(p: &A1Params, gamma: f64, m: usize, ell: usize, regime: MomentRegime) -> Result<f64> {
    let base = moment_bases(p, gamma, m, ell, regime)?;
    Ok(match regime {
        MomentRegime::General => p.beta0 * base.powi(ell as i32),
        MomentRegime::HighIntensity => p.beta0 * base.powf(ell as f64 / 2.0),
    })
}

/// The variant without the `β0` prefactor: `e` (general) or `e²` (high
/// intensity) moves inside the base. Requires `ℓ >= max(log β0, 2)`.
pub fn centred_moment_upper_absorbed(
    p: &A1Params,
    gamma: f64,
    m: usize,
    ell: usize,
    regime: MomentRegime,
) -> Result<f64> {
    let base = moment_bases(p, gamma, m, ell, regime)?;
    if (ell as f64) < p.beta0.ln() {
        return Err(Error::Precondition(format!(
            "need ell >= log(beta0) = {}, got {ell}",
            p.beta0.ln()
        )));
    }
    let e = std::f64::consts::E;
    Ok(match regime {
        MomentRegime::General => (e * base).powi(ell as i32),
        MomentRegime::HighIntensity => (e * e * base).powf(ell as f64 / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn raw_moments() {
        assert_relative_eq!(poisson_raw_moment(3.7, 1).unwrap(), 3.7);
        assert_relative_eq!(poisson_raw_moment(2.0, 2).unwrap(), 6.0);
        assert_relative_eq!(poisson_raw_moment(1.0, 3).unwrap(), 5.0);
        assert_relative_eq!(poisson_raw_moment(5.0, 3).unwrap(), 205.0);
        assert_eq!(poisson_raw_moment(1.0, 0).unwrap(), 1.0);
        assert!(poisson_raw_moment(1.0, 65).is_err());
    }

    #[test]
    fn ahle_bound_values() {
        assert_relative_eq!(poisson_moment_bound(1.0, 1).unwrap(), 1.0 / 2f64.ln(), max_relative = 1e-14);
        let v = poisson_moment_bound(5.0, 3).unwrap();
        assert_relative_eq!(v, (3.0 / 1.6f64.ln()).powi(3), max_relative = 1e-14);
        assert!(v >= 205.0);
    }

    #[test]
    fn exact_moments_point_count() {
        let k = ConstantKernel::new(1, 1.0, 1.0).unwrap();
        let lam = 2.5;
        assert_relative_eq!(centred_moment_exact(&k, lam, 1, 2).unwrap().value, lam);
        let r4 = centred_moment_exact(&k, lam, 1, 4).unwrap();
        assert_relative_eq!(r4.value, lam + 3.0 * lam * lam, max_relative = 1e-14);
        assert_eq!(r4.term_count, 4);
        assert_relative_eq!(centred_moment_constant_kernel(1.0, 1.0, lam, 1, 3).unwrap(), lam);
    }

    #[test]
    fn exact_variance_order_two() {
        let (g, c, a): (f64, f64, f64) = (1.7, 0.6, 2.2);
        let k = ConstantKernel::new(2, c, a).unwrap();
        let want = 4.0 * g.powi(3) * c * c * a.powi(3) + 2.0 * g * g * c * c * a * a;
        let r = centred_moment_exact(&k, g, 2, 2).unwrap();
        assert_eq!(r.term_count, 6);
        assert_relative_eq!(r.value, want, max_relative = 1e-14);
        assert_relative_eq!(variance_exact(&k.fk_norms_sq(), g, 2).unwrap(), want, max_relative = 1e-14);
        assert_relative_eq!(centred_moment_constant_kernel(1.0, 1.0, g, 2, 2).unwrap(), 4.0 * g.powi(3) + 2.0 * g * g);
    }

    #[test]
    fn variance_degenerate_inputs() {
        assert_eq!(variance_exact(&[0.0, 0.0], 3.0, 2).unwrap(), 0.0);
        assert_relative_eq!(variance_exact(&[2.0], 3.0, 1).unwrap(), 6.0);
        assert!(variance_exact(&[1.0], 3.0, 2).is_err());
    }

    #[test]
    fn moment_bound_examples() {
        let p = A1Params::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(
            centred_moment_upper(&p, 4.0, 1, 2, MomentRegime::HighIntensity).unwrap(),
            64.0
        );
        assert!(matches!(
            centred_moment_upper(&p, 3.0, 1, 2, MomentRegime::HighIntensity),
            Err(Error::Precondition(_))
        ));
        let k = ConstantKernel::new(1, 1.0, 1.0).unwrap();
        for ell in [2, 4, 6] {
            let exact = centred_moment_exact(&k, 1.0, 1, ell).unwrap().value;
            assert!(exact <= centred_moment_upper(&p, 1.0, 1, ell, MomentRegime::General).unwrap());
        }
    }

    #[test]
    fn q_one_drops_the_log() {
        let p = A1Params::new(1.0, 1.0, 1.0, 1.0).unwrap();
        // max(1, 4/2)^{1/2} * 2 * 2 = 4√2 when the log factor has exponent 0
        let v = centred_moment_upper(&p, 4.0, 1, 2, MomentRegime::General).unwrap();
        assert_relative_eq!(v, (2.0 * 2.0 * 2f64.sqrt()).powi(2), max_relative = 1e-14);
    }

    #[test]
    fn absorbed_variant_checks_ell() {
        let p = A1Params::new(100.0, 1.0, 1.0, 0.0).unwrap();
        assert!(centred_moment_upper_absorbed(&p, 1.0, 1, 4, MomentRegime::General).is_err());
        let v = centred_moment_upper_absorbed(&p, 1.0, 1, 6, MomentRegime::General).unwrap();
        assert!(v >= centred_moment_upper(&p, 1.0, 1, 6, MomentRegime::General).unwrap() * 0.999);
    }

    #[test]
    fn tabulated_and_callback_providers() {
        let k = ConstantKernel::new(2, 1.3, 0.7).unwrap();
        let mut tab = Tabulated::default();
        for s in enumerate_star2(2, 2).unwrap() {
            tab.values.insert(s.blocks.clone(), k.integral(&s, 2, s.k()).unwrap());
        }
        let a = centred_moment_exact(&tab, 2.0, 2, 2).unwrap();
        let b = centred_moment_exact(&Callback(|s: &Subpartition, l, kk| k.integral(s, l, kk)), 2.0, 2, 2).unwrap();
        assert_eq!(a, b);
        assert!(centred_moment_exact(&Tabulated::default(), 2.0, 2, 2).is_err());
    }
}
