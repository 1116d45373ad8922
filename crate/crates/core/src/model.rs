//! Kernels, intensities and the assumption parameter sets (A1)–(A4).
//!
//! (A1) is the integral-bound family every general theorem consumes; (A2)
//! and (A3) convert into it. (A4) only feeds the anti-concentration bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack allowed when checking derived inequalities between floats.
const REL_SLACK: f64 = 1e-12;

/// Intensity `γΛ` of the underlying Poisson process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntensitySpec {
    pub gamma: f64,
    /// `Λ(X)` when finite.
    pub total_mass: Option<f64>,
}

impl IntensitySpec {
    pub fn new(gamma: f64, total_mass: Option<f64>) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
        }
        if let Some(a) = total_mass {
            if !(a > 0.0) {
                return Err(Error::InvalidArgument(format!("total mass must be positive, got {a}")));
            }
        }
        Ok(Self { gamma, total_mass })
    }
}

/// Integral-bound parameters `(β0, β1, β2, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct A1Params {
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub q: f64,
}

impl A1Params {
    pub fn new(beta0: f64, beta1: f64, beta2: f64, q: f64) -> Result<Self> {
        let p = Self { beta0, beta1, beta2, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.beta0 >= 1.0
            && self.beta1 > 0.0
            && self.beta2 > 0.0
            && (0.0..=1.0).contains(&self.q)
            && self.beta0.is_finite()
            && self.beta1.is_finite()
            && self.beta2.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "A1 needs beta0 >= 1, beta1 > 0, beta2 > 0, q in [0,1]; got {self:?}"
            )))
        }
    }
}

/// Bounded finite model: `α1 = Λ(X)`, `α2 = sup |f|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct A2Params {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl A2Params {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        let p = Self { alpha1, alpha2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha1 > 0.0 && self.alpha2 > 0.0 && self.alpha1.is_finite() && self.alpha2.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "A2 needs alpha1 > 0 and alpha2 > 0; got {self:?}"
            )))
        }
    }
}

/// Metric-decay model. The decay function `g` enters only through `C(g, Λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct A3Params {
    #[serde(rename = "M")]
    pub big_m: f64,
    #[serde(rename = "C_gLambda")]
    pub c_g_lambda: f64,
    /// `‖f‖_{L¹(Λ^m)}`.
    #[serde(rename = "f_L1")]
    pub f_l1: f64,
}

impl A3Params {
    pub fn validate(&self) -> Result<()> {
        if self.big_m > 0.0 && self.c_g_lambda > 0.0 && self.f_l1 >= 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "A3 needs M > 0, C(g,Λ) > 0, ‖f‖_L1 >= 0; got {self:?}"
            )))
        }
    }
}

/// Positivity witnesses `(θ1, θ2)` for order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct A4Params {
    pub theta1: f64,
    pub theta2: f64,
    pub m: usize,
}

impl A4Params {
    pub fn new(theta1: f64, theta2: f64, m: usize) -> Result<Self> {
        if theta1 > 0.0 && theta2 > 0.0 && m >= 1 {
            Ok(Self { theta1, theta2, m })
        } else {
            Err(Error::InvalidArgument(format!(
                "A4 needs theta1 > 0, theta2 > 0, m >= 1; got ({theta1}, {theta2}, {m})"
            )))
        }
    }
}

/// One of the assumption sets that convert into (A1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Assumption {
    A1(A1Params),
    A2(A2Params),
    A3 {
        #[serde(flatten)]
        params: A3Params,
        /// Interpolation exponent in `[0, 1]` for the (A3) → (A1) map.
        #[serde(default)]
        s: f64,
    },
}

/// A Poisson U-statistic of order `m` described by the scalars the bounds use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UStatModel {
    pub m: usize,
    pub assumption: Assumption,
    /// `‖f1‖²_{L²(Λ)}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1_norm_sq: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variance: Option<f64>,
    /// Whether the kernel is known to be non-negative.
    #[serde(default)]
    pub kernel_nonnegative: bool,
}

impl UStatModel {
    pub fn new(m: usize, assumption: Assumption) -> Result<Self> {
        let model = Self {
            m,
            assumption,
            f1_norm_sq: None,
            variance: None,
            kernel_nonnegative: false,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_f1_norm_sq(mut self, v: f64) -> Result<Self> {
        self.f1_norm_sq = Some(v);
        self.validate()?;
        Ok(self)
    }

    pub fn with_variance(mut self, v: f64) -> Result<Self> {
        self.variance = Some(v);
        self.validate()?;
        Ok(self)
    }

    pub fn nonnegative(mut self, flag: bool) -> Self {
        self.kernel_nonnegative = flag;
        self
    }

    /// The (A1) parameters implied by the stored assumption.
    pub fn a1(&self) -> Result<A1Params> {
        match self.assumption {
            Assumption::A1(p) => Ok(p),
            Assumption::A2(p) => Ok(a2_to_a1(&p)),
            Assumption::A3 { params, s } => a3_to_a1(&params, self.m, s),
        }
    }

    pub fn a2(&self) -> Option<A2Params> {
        match self.assumption {
            Assumption::A2(p) => Some(p),
            _ => None,
        }
    }

    pub fn f1_norm_sq(&self) -> Result<f64> {
        self.f1_norm_sq
            .ok_or_else(|| Error::Missing("f1_norm_sq (‖f1‖² in L²(Λ)) is required".into()))
    }

    /// Checks parameter ranges and `‖f1‖² <= 2^q m² β0 β2² β1^{2m−1}`.
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("order m must be >= 1".into()));
        }
        match self.assumption {
            Assumption::A1(p) => p.validate()?,
            Assumption::A2(p) => p.validate()?,
            Assumption::A3 { params, s } => {
                params.validate()?;
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::InvalidArgument(format!("A3 exponent s must lie in [0,1], got {s}")));
                }
            }
        }
        if let Some(v) = self.variance {
            if !(v >= 0.0) {
                return Err(Error::InvalidArgument(format!("variance must be >= 0, got {v}")));
            }
        }
        if let Some(f1) = self.f1_norm_sq {
            if !(f1 >= 0.0 && f1.is_finite()) {
                return Err(Error::InvalidArgument(format!("f1_norm_sq must be finite and >= 0, got {f1}")));
            }
            let cap = f1_norm_sq_cap(&self.a1()?, self.m);
            if f1 > cap * (1.0 + REL_SLACK) {
                return Err(Error::InvalidArgument(format!(
                    "f1_norm_sq = {f1} exceeds the (A1) cap {cap}"
                )));
            }
        }
        Ok(())
    }
}

/// Largest `‖f1‖²` compatible with given (A1) parameters.
pub fn f1_norm_sq_cap(p: &A1Params, m: usize) -> f64 {
    let m = m as f64;
    2f64.powf(p.q) * m * m * p.beta0 * p.beta2 * p.beta2 * p.beta1.powf(2.0 * m - 1.0)
}

/// (A2) implies (A1) with `β0 = 1, β1 = α1, β2 = α2, q = 0`.
pub fn a2_to_a1(p: &A2Params) -> A1Params {
    A1Params {
        beta0: 1.0,
        beta1: p.alpha1,
        beta2: p.alpha2,
        q: 0.0,
    }
}

/// (A3) implies (A1) with `q = 0, β0 = 1, β1 = C·R^{s/m}, β2 = M·R^{(1−s)/2}`,
/// `R = max(1, ‖f‖_{L¹}/(M C^m))`.
pub fn a3_to_a1(p: &A3Params, m: usize, s: f64) -> Result<A1Params> {
    p.validate()?;
    if m == 0 || !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!("need m >= 1 and s in [0,1], got m = {m}, s = {s}")));
    }
    let c = p.c_g_lambda;
    let r = (p.f_l1 / (p.big_m * c.powi(m as i32))).max(1.0);
    Ok(A1Params {
        beta0: 1.0,
        beta1: c * r.powf(s / m as f64),
        beta2: p.big_m * r.powf((1.0 - s) / 2.0),
        q: 0.0,
    })
}

/// Bracket `[γ^{2m−1}‖f1‖², 2^q β0 m² (2^q m/c47 + 1)^{m−1} β2² (γβ1)^{2m−1}]`
/// for the variance; needs `γβ1 >= c47`.
pub fn variance_window(model: &UStatModel, gamma: f64, c47: f64) -> Result<(f64, f64)> {
    let p = model.a1()?;
    let f1 = model.f1_norm_sq()?;
    if !(c47 > 0.0) {
        return Err(Error::InvalidArgument(format!("c47 must be positive, got {c47}")));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidArgument(format!("gamma must be positive, got {gamma}")));
    }
    if gamma * p.beta1 < c47 {
        return Err(Error::Precondition(format!(
            "intensity too small: gamma*beta1 = {} < c47 = {c47}",
            gamma * p.beta1
        )));
    }
    let m = model.m as f64;
    let two_q = 2f64.powf(p.q);
    let lower = gamma.powf(2.0 * m - 1.0) * f1;
    let upper = two_q
        * p.beta0
        * m
        * m
        * (two_q * m / c47 + 1.0).powf(m - 1.0)
        * p.beta2
        * p.beta2
        * (gamma * p.beta1).powf(2.0 * m - 1.0);
    Ok((lower, upper))
}

/// Constant kernel `f ≡ c` on a space of total mass `a`.
///
/// `F_m` then equals `c·(P_{γa})_m` in distribution and every kernel
/// integral has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantKernel {
    pub m: usize,
    pub c: f64,
    pub a: f64,
}

impl ConstantKernel {
    pub fn new(m: usize, c: f64, a: f64) -> Result<Self> {
        if m == 0 || !(c > 0.0) || !(a > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "constant kernel needs m >= 1, c > 0, a > 0; got ({m}, {c}, {a})"
            )));
        }
        Ok(Self { m, c, a })
    }

    /// `‖f_k‖² = C(m,k)² c² a^{2m−k}` for `k = 1..=m`.
    pub fn fk_norms_sq(&self) -> Vec<f64> {
        (1..=self.m)
            .map(|k| {
                let b = binom_f64(self.m, k);
                b * b * self.c * self.c * self.a.powi((2 * self.m - k) as i32)
            })
            .collect()
    }

    pub fn a2(&self) -> A2Params {
        A2Params {
            alpha1: self.a,
            alpha2: self.c,
        }
    }

    /// Model with (A2) parameters, the exact `‖f1‖²` and the sign flag set.
    pub fn model(&self) -> UStatModel {
        UStatModel {
            m: self.m,
            assumption: Assumption::A2(self.a2()),
            f1_norm_sq: Some(self.fk_norms_sq()[0]),
            variance: None,
            kernel_nonnegative: true,
        }
    }

    /// `E F_m = c (γa)^m`.
    pub fn mean(&self, gamma: f64) -> f64 {
        self.c * (gamma * self.a).powi(self.m as i32)
    }
}

pub(crate) fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
