//! Tail-bound rate functions with explicit constants, and Poisson tail
//! estimates.
//!
//! Every bound is reported as a [`BoundResult`] holding the rate `I`, the
//! prefactor and `min(1, factor·e^{−I})`. Unmet theorem preconditions give a
//! not-applicable result (trivial bound 1) with reasons, never a silent value.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{A2Params, A4Params, UStatModel};
use crate::special::{clamp_prob, log_plus};

/// Which deviation the bound controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `P(|F − E F| >= t)`.
    Two,
    /// `P(F − E F >= t)`.
    Upper,
    /// `P(F − E F <= −t)`.
    Lower,
}

impl Tail {
    /// Prefactor of a two-sided bound that is `2` only for two-sided tails.
    pub fn factor(self) -> f64 {
        match self {
            Tail::Two => 2.0,
            Tail::Upper | Tail::Lower => 1.0,
        }
    }
}

/// Which branch of a piecewise bound produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Regime (a): `t <= c24 γ^{m−1/2}`.
    SubVariance,
    /// Regime (b): `c24 γ^{m−1/2} <= t < c17 γ^m`.
    Gaussian,
    /// Regime (c): `t >= c17 γ^m`.
    PoissonLog,
    /// The single-formula bound (d).
    Unified,
    /// Bounds with only one branch.
    Single,
    NotApplicable,
}

/// An evaluated tail bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub method: String,
    pub regime: Regime,
    pub tail: Tail,
    pub t: f64,
    pub rate: f64,
    pub factor: f64,
    pub prob_bound: f64,
    pub preconditions_met: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

impl BoundResult {
    pub fn new(method: &str, regime: Regime, tail: Tail, t: f64, factor: f64, rate: f64) -> Self {
        let rate = if rate.is_nan() { 0.0 } else { rate.max(0.0) };
        Self {
            method: method.to_string(),
            regime,
            tail,
            t,
            rate,
            factor,
            prob_bound: clamp_prob(factor, rate),
            preconditions_met: true,
            reasons: Vec::new(),
        }
    }

    pub fn not_applicable(method: &str, tail: Tail, t: f64, reasons: Vec<String>) -> Self {
        Self {
            method: method.to_string(),
            regime: Regime::NotApplicable,
            tail,
            t,
            rate: 0.0,
            factor: 1.0,
            prob_bound: 1.0,
            preconditions_met: false,
            reasons,
        }
    }

    pub fn applicable(&self) -> bool {
        self.preconditions_met
    }

    /// The probability bound if applicable.
    pub fn value(&self) -> Option<f64> {
        self.preconditions_met.then_some(self.prob_bound)
    }
}

fn check_t(t: f64) -> Result<()> {
    if t >= 0.0 && !t.is_nan() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("t must be >= 0, got {t}")))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("gamma must be positive and finite, got {gamma}")))
    }
}

/// Constants of the main theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateConstants {
    pub c26: f64,
    pub c23: f64,
    pub c24: f64,
    pub c11: f64,
    pub c9: f64,
    pub c15: f64,
    pub c16: f64,
    pub c17: f64,
    pub c27: f64,
}

/// Evaluates the nine constants from the (A1) parameters and `‖f1‖²`.
pub fn main_constants(model: &UStatModel) -> Result<RateConstants> {
    let p = model.a1()?;
    let f1 = model.f1_norm_sq()?;
    let m = model.m as f64;
    let (b0, b1, b2, q) = (p.beta0, p.beta1, p.beta2, p.q);
    let e = std::f64::consts::E;
    let mb0 = m * b0;
    Ok(RateConstants {
        c26: f1 / (2f64.powf(17.0 * m + 4.0) * mb0.powf(2.0 * m + 3.0) * b2.powi(4) * b1.powf(4.0 * m - 2.0)),
        c23: 1.0 / (2f64.powf(16.0 * m + 4.0) * mb0.powf(2.0 * m + 1.0) * b2 * b2 * b1.powf(2.0 * m - 1.0)),
        c24: 2f64.powf(8.0 * m + 1.5) * mb0.powf(m + 0.5) * b2 * b1.powf(m - 0.5),
        c11: 8.0 * m * b0 / b1,
        c9: 1.0 / b1,
        c15: 1.0 / (2f64.powf(1.0 + q) * e * m) * (e * b2).powf(-1.0 / m),
        c16: 2f64.powf(-m * q) * (-m - 1.0).exp() / b2 / b1.powf(m),
        c17: 2f64.powf(8.0 * m) * b2 * (mb0 * b1).powf(m),
        c27: 2f64.powf(-17.0 * m - 4.0)
            * mb0.powf(-2.0 * m - 3.0)
            * (f1 / (b2 * b2) * b1.powf(1.0 - 2.0 * m)).min(1.0),
    })
}

/// Regime picked by the `t`-thresholds, ignoring the `γ` preconditions.
///
/// Intervals are closed on the left: at both thresholds the right-hand
/// regime is the sharper of the two overlapping statements.
pub fn main_regime(c: &RateConstants, m: usize, gamma: f64, t: f64) -> Regime {
    let m = m as f64;
    if t >= c.c17 * gamma.powf(m) {
        Regime::PoissonLog
    } else if t >= c.c24 * gamma.powf(m - 0.5) {
        Regime::Gaussian
    } else {
        Regime::SubVariance
    }
}

/// The three-regime main bound on `P(|F − E F| >= t)` (or one tail).
pub fn main_bound(model: &UStatModel, gamma: f64, t: f64, tail: Tail) -> Result<BoundResult> {
    check_t(t)?;
    check_gamma(gamma)?;
    let c = main_constants(model)?;
    let p = model.a1()?;
    let mf = model.m as f64;
    let method = "main";
    let regime = main_regime(&c, model.m, gamma, t);
    match regime {
        Regime::SubVariance | Regime::Gaussian => {
            if gamma < c.c11 {
                return Ok(BoundResult::not_applicable(
                    method,
                    tail,
                    t,
                    vec![format!("gamma = {gamma} < c11 = {}", c.c11)],
                ));
            }
            let scale = t * t / gamma.powf(2.0 * mf - 1.0);
            if regime == Regime::SubVariance {
                if c.c26 <= 0.0 {
                    return Ok(BoundResult::not_applicable(
                        method,
                        tail,
                        t,
                        vec!["‖f1‖² = 0 makes c26 vanish".into()],
                    ));
                }
                Ok(BoundResult::new(method, regime, tail, t, tail.factor(), c.c26 * scale))
            } else {
                Ok(BoundResult::new(method, regime, tail, t, 1.0, c.c23 * scale))
            }
        }
        _ => {
            if gamma < c.c9 {
                return Ok(BoundResult::not_applicable(
                    method,
                    tail,
                    t,
                    vec![format!("gamma = {gamma} < c9 = {}", c.c9)],
                ));
            }
            let arg = c.c16 * t / gamma.powf(mf);
            let rate = c.c15 * t.powf(1.0 / mf) * arg.ln().max(0.0).powf(1.0 - p.q);
            Ok(BoundResult::new(method, regime, tail, t, 1.0, rate))
        }
    }
}

/// Rate of the single-formula bound:
/// `c27 (t/β2)^{1/m} min(x^{2−1/m}, (1 + log₊ x)^{1−q})`, `x = t/(β2 (β1γ)^m)`.
pub fn unified_rate(beta1: f64, beta2: f64, q: f64, m: usize, c27: f64, gamma: f64, t: f64) -> f64 {
    let mf = m as f64;
    let x = t / (beta2 * (beta1 * gamma).powf(mf));
    c27 * (t / beta2).powf(1.0 / mf) * x.powf(2.0 - 1.0 / mf).min((1.0 + log_plus(x)).powf(1.0 - q))
}

/// The single-formula bound, valid when `β1 γ >= 8 m β0`.
pub fn unified_bound(model: &UStatModel, gamma: f64, t: f64, tail: Tail) -> Result<BoundResult> {
    check_t(t)?;
    check_gamma(gamma)?;
    let c = main_constants(model)?;
    let p = model.a1()?;
    let need = 8.0 * model.m as f64 * p.beta0;
    if p.beta1 * gamma < need {
        return Ok(BoundResult::not_applicable(
            "unified",
            tail,
            t,
            vec![format!("beta1*gamma = {} < 8*m*beta0 = {need}", p.beta1 * gamma)],
        ));
    }
    if c.c27 <= 0.0 {
        return Ok(BoundResult::not_applicable("unified", tail, t, vec!["‖f1‖² = 0 makes c27 vanish".into()]));
    }
    let rate = unified_rate(p.beta1, p.beta2, p.q, model.m, c.c27, gamma, t);
    Ok(BoundResult::new("unified", Regime::Unified, tail, t, tail.factor(), rate))
}

/// `P(P_α >= y) <= (eα/y)^y` for `y >= α + 1`.
pub fn poisson_tail_upper(alpha: f64, y: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    if !(y >= alpha + 1.0) {
        return Err(Error::Precondition(format!("need y >= alpha + 1 = {}, got {y}", alpha + 1.0)));
    }
    Ok((y * (std::f64::consts::E * alpha / y).ln()).exp().min(1.0))
}

/// `ln(√(2π) n^{n+1/2} e^{−n+1})`, the Robbins upper bound on `ln n!`.
fn ln_robbins(n: f64) -> f64 {
    0.5 * (2.0 * std::f64::consts::PI).ln() + (n + 0.5) * n.ln() - n + 1.0
}

/// Number of terms scanned when evaluating [`c19`].
pub const C19_SCAN: u64 = 200_000;

/// Smallest `c` with `√(2π)⌈y⌉^{⌈y⌉+1/2}e^{−⌈y⌉+1} <= (c·y)^y` for every `y > y0`.
///
/// On each interval `(n−1, n]` the ratio `R(n)^{1/y}/y` decreases in `y`, so
/// the supremum is attained at left ends; those are scanned up to
/// [`C19_SCAN`], beyond which the sequence decreases towards `1/e`.
pub fn c19(y0: f64) -> Result<f64> {
    if !(y0 > 0.0 && y0.is_finite()) {
        return Err(Error::InvalidArgument(format!("c19 needs a positive lower end, got {y0}")));
    }
    let n0 = y0.floor() + 1.0;
    let mut best = ln_robbins(n0) / y0 - y0.ln();
    let mut n = n0 + 1.0;
    let end = n0 + C19_SCAN as f64;
    while n <= end {
        let v = ln_robbins(n) / (n - 1.0) - (n - 1.0).ln();
        if v > best {
            best = v;
        }
        n += 1.0;
    }
    Ok(best.exp())
}

/// Constants of the Poisson lower tail for given `(C1, C2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonLowerConstants {
    pub c1: f64,
    pub c2: f64,
    pub c19: f64,
    pub c14: f64,
}

pub fn poisson_lower_constants(c1: f64, c2: f64) -> Result<PoissonLowerConstants> {
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(Error::InvalidArgument(format!("C1, C2 must be positive, got ({c1}, {c2})")));
    }
    let c19 = c19(c1 * c2)?;
    let c14 = c1.min(1.0) / ((1.0 / c2).exp() * c19);
    Ok(PoissonLowerConstants { c1, c2, c19, c14 })
}

/// `P(P_α >= y) >= (c14 α/y)^y` for `α > C1`, `y >= C2 α`.
///
/// The endpoint `y = C2 α` is included: it is the limit from the right, where
/// `P(P_α >= y)` can only be smaller.
pub fn poisson_tail_lower(alpha: f64, y: f64, c1: f64, c2: f64) -> Result<f64> {
    let k = poisson_lower_constants(c1, c2)?;
    if !(alpha > c1) {
        return Err(Error::Precondition(format!("need alpha > C1 = {c1}, got {alpha}")));
    }
    if !(y >= c2 * alpha) {
        return Err(Error::Precondition(format!("need y >= C2*alpha = {}, got {y}", c2 * alpha)));
    }
    Ok((y * (k.c14 * alpha / y).ln()).exp())
}

/// Large-order upper bound from Poisson tails.
///
/// Non-centred: `P(F >= t) <= exp(−(1/m)(t/α2)^{1/m} log(t/(e^m α2 (α1γ)^m)))`
/// for `t >= α2 (α1γ)^m`. Centred: the same with `t/2` and a factor 2 for the
/// two-sided tail, for `t >= 2 α2 (α1γ)^m`.
pub fn largeorder_upper(p: &A2Params, m: usize, gamma: f64, t: f64, centred: bool, tail: Tail) -> Result<BoundResult> {
    p.validate()?;
    check_t(t)?;
    check_gamma(gamma)?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let mf = m as f64;
    let scale = p.alpha2 * (p.alpha1 * gamma).powf(mf);
    let (tt, threshold, factor, tail) = if centred {
        (t / 2.0, 2.0 * scale, tail.factor(), tail)
    } else {
        (t, scale, 1.0, Tail::Upper)
    };
    let method = "largeorder";
    if t < threshold {
        return Ok(BoundResult::not_applicable(
            method,
            tail,
            t,
            vec![format!("t = {t} below the threshold {threshold}")],
        ));
    }
    let rate = (tt / p.alpha2).powf(1.0 / mf) / mf * (tt / scale).ln() - (tt / p.alpha2).powf(1.0 / mf);
    Ok(BoundResult::new(method, Regime::Single, tail, t, factor, rate))
}

/// Constants of the anti-concentration bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntiConcentrationConstants {
    /// `2 θ2^{−1/m}`.
    pub c1905c: f64,
    /// Smallest grid-certified `C >= ‖f‖_{L¹}` with validity for `t >= C γ^m`.
    pub c1905d: f64,
    /// `1/(c14^m θ2 θ1^m)`.
    pub c18: f64,
    pub poisson: PoissonLowerConstants,
    /// Upper end of the certification grid in units of `γ^m`.
    pub grid_top: f64,
    pub grid_certified: bool,
}

const CERT_GRID: usize = 20_000;

/// Computes `c1905c` and a grid-certified `c1905d`.
///
/// With `u = t/γ^m` the defining inequality
/// `(u + L)^{1/m} log(c18 (u + L)) <= 2 u^{1/m} log u` no longer involves `γ`;
/// the crossing is bracketed on a log grid over `[L, 10⁶]` and refined by
/// bisection.
pub fn anti_concentration_constants(p: &A4Params, f_l1: f64) -> Result<AntiConcentrationConstants> {
    if !(f_l1 > 0.0) {
        return Err(Error::InvalidArgument(format!("‖f‖_L1 must be positive, got {f_l1}")));
    }
    let mf = p.m as f64;
    let c1 = p.theta1;
    let c2 = (f_l1 / p.theta2).powf(1.0 / mf) / p.theta1;
    let poisson = poisson_lower_constants(c1, c2)?;
    let c18 = 1.0 / (poisson.c14.powf(mf) * p.theta2 * p.theta1.powf(mf));
    let h = |u: f64| 2.0 * u.powf(1.0 / mf) * u.ln() - (u + f_l1).powf(1.0 / mf) * (c18 * (u + f_l1)).ln();

    let lo = f_l1.max(1.0 + 1e-9);
    let mut top = 1e6_f64.max(10.0 * lo);
    loop {
        let grid: Vec<f64> = (0..=CERT_GRID)
            .map(|i| lo * (top / lo).powf(i as f64 / CERT_GRID as f64))
            .collect();
        let last_fail = grid.iter().rposition(|&u| !(h(u) >= 0.0));
        let c = match last_fail {
            None => lo,
            Some(i) if i == CERT_GRID => {
                if top >= 1e15 {
                    return Err(Error::NoRoot(
                        "anti-concentration inequality fails on the whole grid up to 1e15".into(),
                    ));
                }
                top *= 1e3;
                continue;
            }
            Some(i) => {
                let (mut a, mut b) = (grid[i], grid[i + 1]);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if h(mid) >= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                    if b - a <= 1e-13 * b {
                        break;
                    }
                }
                b
            }
        };
        let c1905d = c.max(f_l1);
        return Ok(AntiConcentrationConstants {
            c1905c: 2.0 * p.theta2.powf(-1.0 / mf),
            c1905d,
            c18,
            poisson,
            grid_top: top,
            grid_certified: h(c1905d) >= 0.0,
        });
    }
}

/// A lower bound on `P(F − E F >= t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntiConcentration {
    pub t: f64,
    pub gamma: f64,
    pub value: f64,
    pub rate: f64,
    pub constants: AntiConcentrationConstants,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

/// `P(F − E F >= t) >= exp(−c1905c t^{1/m} log(t/γ^m))` for `γ > 1`,
/// `t >= c1905d γ^m`, under (A4) with a non-negative kernel.
pub fn largeorder_lower(p: &A4Params, f_l1: f64, gamma: f64, t: f64) -> Result<AntiConcentration> {
    check_t(t)?;
    check_gamma(gamma)?;
    let constants = anti_concentration_constants(p, f_l1)?;
    let mf = p.m as f64;
    let mut reasons = Vec::new();
    if !(gamma > 1.0) {
        reasons.push(format!("need gamma > 1, got {gamma}"));
    }
    let threshold = constants.c1905d * gamma.powf(mf);
    if t < threshold {
        reasons.push(format!("t = {t} below c1905d*gamma^m = {threshold}"));
    }
    if t > constants.grid_top * gamma.powf(mf) {
        reasons.push(format!(
            "t/gamma^m = {} beyond the certified grid end {}",
            t / gamma.powf(mf),
            constants.grid_top
        ));
    }
    let applicable = reasons.is_empty();
    let (rate, value) = if applicable {
        let r = constants.c1905c * t.powf(1.0 / mf) * (t / gamma.powf(mf)).ln();
        (r, (-r).exp())
    } else {
        (f64::INFINITY, 0.0)
    };
    Ok(AntiConcentration {
        t,
        gamma,
        value,
        rate,
        constants,
        applicable,
        reasons,
    })
}

/// `C181 = 2^{q+1} m² (2^q m/c47 + 1)^{m−1}`.
pub fn c181(q: f64, m: usize, c47: f64) -> f64 {
    let mf = m as f64;
    2f64.powf(q + 1.0) * mf * mf * (2f64.powf(q) * mf / c47 + 1.0).powf(mf - 1.0)
}

/// Lower-tail bound `exp(−t²/(C181 β0 β2² (γβ1)^{2m−1}))` for non-negative
/// kernels with `γβ1 >= c47`.
pub fn lower_tail_bp(model: &UStatModel, gamma: f64, t: f64, c47: f64) -> Result<BoundResult> {
    check_t(t)?;
    check_gamma(gamma)?;
    if !(c47 > 0.0) {
        return Err(Error::InvalidArgument(format!("c47 must be positive, got {c47}")));
    }
    let p = model.a1()?;
    let mut reasons = Vec::new();
    if !model.kernel_nonnegative {
        reasons.push("kernel not flagged non-negative".to_string());
    }
    if gamma * p.beta1 < c47 {
        reasons.push(format!("gamma*beta1 = {} < c47 = {c47}", gamma * p.beta1));
    }
    if !reasons.is_empty() {
        return Ok(BoundResult::not_applicable("bp", Tail::Lower, t, reasons));
    }
    let mf = model.m as f64;
    let denom = c181(p.q, model.m, c47) * p.beta0 * p.beta2 * p.beta2 * (gamma * p.beta1).powf(2.0 * mf - 1.0);
    Ok(BoundResult::new("bp", Regime::Single, Tail::Lower, t, 1.0, t * t / denom))
}

/// Sharper lower-tail bound `exp(−t²/(2 m² V))`, `m² V = Σ γ^{2m−k} k·k! ‖f_k‖²`.
pub fn lower_tail_bp_sharp(fk_norms_sq: &[f64], gamma: f64, t: f64, nonnegative: bool) -> Result<BoundResult> {
    check_t(t)?;
    check_gamma(gamma)?;
    if !nonnegative {
        return Ok(BoundResult::not_applicable(
            "bp-sharp",
            Tail::Lower,
            t,
            vec!["kernel not flagged non-negative".into()],
        ));
    }
    let m = fk_norms_sq.len();
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one norm".into()));
    }
    let mut fact = 1.0;
    let mut m2v = 0.0;
    for (i, v) in fk_norms_sq.iter().enumerate() {
        let k = (i + 1) as f64;
        fact *= k;
        m2v += gamma.powi((2 * m - i - 1) as i32) * k * fact * v;
    }
    if !(m2v > 0.0) {
        return Ok(BoundResult::not_applicable("bp-sharp", Tail::Lower, t, vec!["V = 0".into()]));
    }
    Ok(BoundResult::new("bp-sharp", Regime::Single, Tail::Lower, t, 1.0, t * t / (2.0 * m2v)))
}

/// Order-one bounds: upper tail `exp(−(t/2α2) log(1 + t/(γα1α2)))` and, for
/// non-negative kernels, lower tail `exp(−t²/(2γα2²α1))`.
pub fn wu_order1(p: &A2Params, gamma: f64, t: f64, nonnegative: bool) -> Result<(BoundResult, BoundResult)> {
    p.validate()?;
    check_t(t)?;
    check_gamma(gamma)?;
    let up_rate = t / (2.0 * p.alpha2) * (t / (gamma * p.alpha1 * p.alpha2)).ln_1p();
    let upper = BoundResult::new("wu", Regime::Single, Tail::Upper, t, 1.0, up_rate);
    let lower = if nonnegative {
        let r = t * t / (2.0 * gamma * p.alpha2 * p.alpha2 * p.alpha1);
        BoundResult::new("wu", Regime::Single, Tail::Lower, t, 1.0, r)
    } else {
        BoundResult::not_applicable("wu", Tail::Lower, t, vec!["kernel not flagged non-negative".into()])
    };
    Ok((upper, lower))
}

/// Upper-tail bound `exp(−t²/((1 + c43²) V))` for `0 <= t < c43 √V`.
pub fn chebyshev_cantelli(variance: f64, t: f64, c43: f64) -> Result<BoundResult> {
    check_t(t)?;
    if !(variance > 0.0) || !(c43 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need variance > 0 and c43 > 0, got ({variance}, {c43})"
        )));
    }
    if t >= c43 * variance.sqrt() {
        return Ok(BoundResult::not_applicable(
            "cc",
            Tail::Upper,
            t,
            vec![format!("t = {t} >= c43*sqrt(V) = {}", c43 * variance.sqrt())],
        ));
    }
    Ok(BoundResult::new("cc", Regime::Single, Tail::Upper, t, 1.0, t * t / ((1.0 + c43 * c43) * variance)))
}

/// `C44 = 2^q β0 m² (2^q m/c47 + 1)^{m−1} (1 + c43²)`.
pub fn c44(q: f64, beta0: f64, m: usize, c47: f64, c43: f64) -> f64 {
    let mf = m as f64;
    2f64.powf(q) * beta0 * mf * mf * (2f64.powf(q) * mf / c47 + 1.0).powf(mf - 1.0) * (1.0 + c43 * c43)
}

/// (A1) form `exp(−t²/(C44 β2² (β1γ)^{2m−1}))`.
///
/// The range `t < c43 √V` is checked against the model's variance when
/// present, else against the lower bound `γ^{2m−1}‖f1‖² <= V`.
pub fn chebyshev_cantelli_a1(model: &UStatModel, gamma: f64, t: f64, c43: f64, c47: f64) -> Result<BoundResult> {
    check_t(t)?;
    check_gamma(gamma)?;
    if !(c43 > 0.0 && c47 > 0.0) {
        return Err(Error::InvalidArgument(format!("need c43, c47 > 0, got ({c43}, {c47})")));
    }
    let p = model.a1()?;
    let mf = model.m as f64;
    let v_floor = match (model.variance, model.f1_norm_sq) {
        (Some(v), _) => v,
        (None, Some(f1)) => gamma.powf(2.0 * mf - 1.0) * f1,
        (None, None) => {
            return Err(Error::Missing("variance or f1_norm_sq is needed to check the range".into()));
        }
    };
    let mut reasons = Vec::new();
    if gamma * p.beta1 < c47 {
        reasons.push(format!("gamma*beta1 = {} < c47 = {c47}", gamma * p.beta1));
    }
    if !(v_floor > 0.0) || t >= c43 * v_floor.sqrt() {
        reasons.push(format!("t = {t} not below c43*sqrt(V) >= {}", c43 * v_floor.sqrt()));
    }
    if !reasons.is_empty() {
        return Ok(BoundResult::not_applicable("cc", Tail::Upper, t, reasons));
    }
    let denom = c44(p.q, p.beta0, model.m, c47, c43) * p.beta2 * p.beta2 * (p.beta1 * gamma).powf(2.0 * mf - 1.0);
    Ok(BoundResult::new("cc", Regime::Single, Tail::Upper, t, 1.0, t * t / denom))
}

/// Constants of the normalised-deviation bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CltConstants {
    pub c10: f64,
    pub c11: f64,
}

pub fn clt_constants(model: &UStatModel) -> Result<CltConstants> {
    let p = model.a1()?;
    let f1 = model.f1_norm_sq()?;
    let m = model.m as f64;
    Ok(CltConstants {
        c10: f1 * f1
            / (2f64.powf(3.0 * m + 7.0 + p.q) * (p.beta0 * m).powi(2) * m * p.beta2.powi(4) * p.beta1.powf(4.0 * m - 2.0)),
        c11: 2f64.powf((m + 5.0 - p.q) / 2.0) / p.beta0.sqrt() / m,
    })
}

/// `P(|F − E F| >= s √V) <= 2 exp(−C10 s²)` for `0 <= s <= C11 √(γβ1)`,
/// provided `γβ1 >= 8m max(1, ⌈log β0⌉)` and `‖f1‖² > 0`. The result's `t`
/// field holds `s`.
pub fn clt_regime(model: &UStatModel, gamma: f64, s: f64, tail: Tail) -> Result<BoundResult> {
    check_t(s)?;
    check_gamma(gamma)?;
    let c = clt_constants(model)?;
    let p = model.a1()?;
    let f1 = model.f1_norm_sq()?;
    let mut reasons = Vec::new();
    let need = 8.0 * model.m as f64 * p.beta0.ln().ceil().max(1.0);
    if gamma * p.beta1 < need {
        reasons.push(format!("gamma*beta1 = {} < 8*m*max(1, ceil(log beta0)) = {need}", gamma * p.beta1));
    }
    if !(f1 > 0.0) {
        reasons.push("‖f1‖² must be positive".into());
    }
    let s_max = c.c11 * (gamma * p.beta1).sqrt();
    if s > s_max {
        reasons.push(format!("s = {s} > C11*sqrt(gamma*beta1) = {s_max}"));
    }
    if !reasons.is_empty() {
        return Ok(BoundResult::not_applicable("clt", tail, s, reasons));
    }
    Ok(BoundResult::new("clt", Regime::Single, tail, s, tail.factor(), c.c10 * s * s))
}
