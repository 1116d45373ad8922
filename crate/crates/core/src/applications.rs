//! Assumption-parameter presets for geometric functionals: subgraph counts
//! and power-weighted edge length of random geometric graphs in
//! constant-curvature spaces, intrinsic-volume functionals of Euclidean
//! hyperplane processes, and the surface functional of hyperbolic
//! hyperplanes.
//!
//! Every preset returns a ready [`UStatModel`] carrying a certified lower
//! bound on `‖f1‖²`. Feeding that model to [`crate::bounds::unified_bound`]
//! reproduces the displayed application constant, clipped at the `min(1, ·)`
//! of the generic statement.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundResult, Regime, Tail};
use crate::error::{ensure, Error, Result};
use crate::geometry::chord_length;
use crate::model::{A1Params, A2Params, Assumption, UStatModel};
use crate::quad::integrate_default;
use crate::special::{kappa, log_plus, omega};

/// Complete simply connected space of constant curvature `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kappa: f64,
    pub d: usize,
}

impl SpaceSpec {
    pub fn new(kappa: f64, d: usize) -> Result<Self> {
        let s = Self { kappa, d };
        s.validate()?;
        Ok(s)
    }

    pub fn euclidean(d: usize) -> Self {
        Self { kappa: 0.0, d }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.d >= 2, || format!("dimension must be >= 2, got {}", self.d))?;
        ensure(self.kappa.is_finite(), || format!("curvature must be finite, got {}", self.kappa))
    }

    /// `π/(2√κ)` for positive curvature, infinite otherwise.
    pub fn max_radius(&self) -> f64 {
        if self.kappa > 0.0 {
            std::f64::consts::FRAC_PI_2 / self.kappa.sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// `|κ|^{−1/2}`, infinite for flat space.
    pub fn curvature_radius(&self) -> f64 {
        if self.kappa == 0.0 {
            f64::INFINITY
        } else {
            1.0 / self.kappa.abs().sqrt()
        }
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be >= 0, got {r}")));
        }
        if r >= self.max_radius() {
            return Err(Error::InvalidArgument(format!(
                "radius {r} must be below pi/(2 sqrt(kappa)) = {}",
                self.max_radius()
            )));
        }
        Ok(())
    }
}

/// Observation window `W`: its volume and inradius, plus the radius when it
/// is a ball centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub volume: f64,
    pub inradius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball_radius: Option<f64>,
}

impl WindowSpec {
    pub fn ball(space: &SpaceSpec, r: f64) -> Result<Self> {
        ensure(r > 0.0, || format!("window radius must be positive, got {r}"))?;
        Ok(Self {
            volume: ball_volume(space, r)?,
            inradius: r,
            ball_radius: Some(r),
        })
    }

    pub fn validate(&self, space: &SpaceSpec) -> Result<()> {
        ensure(self.volume > 0.0 && self.inradius > 0.0, || {
            format!("window needs positive volume and inradius, got {self:?}")
        })?;
        let inner = ball_volume(space, self.inradius)?;
        ensure(self.volume >= inner * (1.0 - 1e-12), || {
            format!("volume {} is smaller than the inscribed ball {inner}", self.volume)
        })
    }
}

/// Small connected graphs shipped for subgraph counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmallGraph {
    Edge,
    Path3,
    Triangle,
    Star3,
    Cycle4,
}

impl SmallGraph {
    pub fn order(self) -> usize {
        match self {
            SmallGraph::Edge => 2,
            SmallGraph::Path3 | SmallGraph::Triangle => 3,
            SmallGraph::Star3 | SmallGraph::Cycle4 => 4,
        }
    }

    pub fn diameter(self) -> usize {
        match self {
            SmallGraph::Edge | SmallGraph::Triangle => 1,
            _ => 2,
        }
    }

    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            SmallGraph::Edge => &[(0, 1)],
            SmallGraph::Path3 => &[(0, 1), (1, 2)],
            SmallGraph::Triangle => &[(0, 1), (1, 2), (0, 2)],
            SmallGraph::Star3 => &[(0, 1), (0, 2), (0, 3)],
            SmallGraph::Cycle4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
        }
    }

    /// Number of automorphisms.
    pub fn automorphisms(self) -> usize {
        match self {
            SmallGraph::Edge => 2,
            SmallGraph::Path3 => 2,
            SmallGraph::Triangle => 6,
            SmallGraph::Star3 => 6,
            SmallGraph::Cycle4 => 8,
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "edge" | "k2" => Ok(SmallGraph::Edge),
            "path3" | "p3" => Ok(SmallGraph::Path3),
            "triangle" | "k3" => Ok(SmallGraph::Triangle),
            "star3" | "s3" => Ok(SmallGraph::Star3),
            "cycle4" | "c4" => Ok(SmallGraph::Cycle4),
            _ => Err(Error::InvalidArgument(format!(
                "unsupported graph {name:?}; choose edge, path3, triangle, star3 or cycle4"
            ))),
        }
    }
}

/// Which Gilbert-graph functional is analysed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFunctionalSpec {
    IncludedSubgraph { h: SmallGraph },
    PowerEdge { tau: f64 },
    EdgeCount,
}

impl GraphFunctionalSpec {
    /// Order `m` of the U-statistic.
    pub fn m(&self) -> usize {
        match self {
            GraphFunctionalSpec::IncludedSubgraph { h } => h.order(),
            _ => 2,
        }
    }

    /// Diameter bound `n` of the counted graphs.
    pub fn n(&self) -> usize {
        match self {
            GraphFunctionalSpec::IncludedSubgraph { h } => h.diameter(),
            _ => 1,
        }
    }
}

/// `∫₀^x sinh^{j}(u) du`, or the `sin` analogue when `spherical`.
fn sn_power_integral(j: usize, x: f64, spherical: bool) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let small = x < 0.05;
    match (j, spherical) {
        (0, _) => x,
        (1, false) => 2.0 * (x / 2.0).sinh().powi(2),
        (1, true) => 2.0 * (x / 2.0).sin().powi(2),
        (2, false) if !small => (2.0 * x).sinh() / 4.0 - x / 2.0,
        (2, true) if !small => x / 2.0 - (2.0 * x).sin() / 4.0,
        (3, false) => {
            let cm1 = 2.0 * (x / 2.0).sinh().powi(2);
            cm1 * cm1 * (cm1 + 3.0) / 3.0
        }
        (3, true) => {
            let omc = 2.0 * (x / 2.0).sin().powi(2);
            omc * omc * (3.0 - omc) / 3.0
        }
        _ if spherical => integrate_default(|u| u.sin().powi(j as i32), 0.0, x),
        _ => integrate_default(|u| u.sinh().powi(j as i32), 0.0, x),
    }
}

/// Volume `ω_d ∫₀^r sn_κ(s)^{d−1} ds` of a geodesic ball of radius `r`.
pub fn ball_volume(space: &SpaceSpec, r: f64) -> Result<f64> {
    space.validate()?;
    space.check_radius(r)?;
    let d = space.d;
    if space.kappa == 0.0 {
        return Ok(kappa(d) * r.powi(d as i32));
    }
    let k = space.kappa.abs();
    let x = k.sqrt() * r;
    let integral = sn_power_integral(d - 1, x, space.kappa > 0.0);
    Ok(omega(d) * k.powf(-(d as f64) / 2.0) * integral)
}

/// Volume by direct quadrature, kept as an independent check of
/// [`ball_volume`].
pub fn ball_volume_quadrature(space: &SpaceSpec, r: f64) -> Result<f64> {
    space.validate()?;
    space.check_radius(r)?;
    let d = space.d as i32;
    let k = space.kappa;
    let sn = move |s: f64| {
        if k == 0.0 {
            s
        } else if k < 0.0 {
            (s * (-k).sqrt()).sinh() / (-k).sqrt()
        } else {
            (s * k.sqrt()).sin() / k.sqrt()
        }
    };
    Ok(omega(space.d) * integrate_default(|s| sn(s).powi(d - 1), 0.0, r))
}

/// Parameters of a graph preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphPreset {
    pub beta1: f64,
    pub beta2: f64,
    /// The displayed application constant.
    pub c27: f64,
    /// Smallest admissible intensity.
    pub gamma_min: f64,
    /// Certified lower bound on `‖f1‖²`.
    pub f1_lower: f64,
    pub model: UStatModel,
}

fn preset_model(m: usize, beta1: f64, beta2: f64, f1_lower: f64) -> Result<UStatModel> {
    let p = A1Params::new(1.0, beta1, beta2, 0.0)?;
    let cap = crate::model::f1_norm_sq_cap(&p, m);
    UStatModel::new(m, Assumption::A1(p))?
        .nonnegative(true)
        .with_f1_norm_sq(f1_lower.min(cap))
}

fn check_s(s: f64) -> Result<()> {
    ensure((0.0..=1.0).contains(&s), || format!("s must lie in [0, 1], got {s}"))
}

fn check_positive_curvature(space: &SpaceSpec, no_antipodal: bool) -> Result<()> {
    if space.kappa > 0.0 && !no_antipodal {
        return Err(Error::Precondition(
            "positive curvature needs the caller to assert the window has no antipodal points".into(),
        ));
    }
    Ok(())
}

/// Preset for included subgraph counts with diameter bound `n·ρ`.
///
/// `β1 = H(B_{nρ})^{1−s/m} H(W)^{s/m}`, `β2 = (H(W)/H(B_{nρ}))^{(1−s)/2}`,
/// intensity threshold `8m/β1`.
pub fn subgraph_params(
    space: &SpaceSpec,
    window: &WindowSpec,
    functional: &GraphFunctionalSpec,
    rho: f64,
    s: f64,
    no_antipodal: bool,
) -> Result<GraphPreset> {
    window.validate(space)?;
    check_s(s)?;
    check_positive_curvature(space, no_antipodal)?;
    if let GraphFunctionalSpec::PowerEdge { .. } = functional {
        return Err(Error::InvalidArgument("use power_edge_params for the power-weighted length".into()));
    }
    let m = functional.m();
    let n = functional.n() as f64;
    let mf = m as f64;
    ensure(rho > 0.0, || format!("rho must be positive, got {rho}"))?;
    if rho > window.inradius / n {
        return Err(Error::Precondition(format!(
            "rho = {rho} exceeds r(W)/n = {}",
            window.inradius / n
        )));
    }
    let hw = window.volume;
    let hn = ball_volume(space, n * rho)?;
    let hhalf = ball_volume(space, rho / 2.0)?;
    let hin = ball_volume(space, window.inradius / 2.0)?;
    let beta1 = hn.powf(1.0 - s / mf) * hw.powf(s / mf);
    let beta2 = (hw / hn).powf((1.0 - s) / 2.0);
    let mfact = statrs::function::factorial::factorial(m as u64);
    let c27 = 2f64.powf(-17.0 * mf - 4.0) * mf.powf(-2.0 * mf - 1.0) / (mfact * mfact)
        * (hhalf / hn).powf(2.0 * mf - 2.0)
        * (hn / hw).powf(s * (1.0 - 1.0 / mf))
        * (hin / hw);
    let mm1 = mfact / mf;
    let f1_lower = hhalf.powf(2.0 * mf - 2.0) * hin / (mm1 * mm1);
    Ok(GraphPreset {
        beta1,
        beta2,
        c27,
        gamma_min: 8.0 * mf / beta1,
        f1_lower,
        model: preset_model(m, beta1, beta2, f1_lower)?,
    })
}

/// Preset for the power-weighted edge length `(1/2)Σ d^τ 1{d <= ρ}`.
///
/// `β1 = H(W)^{s/2} H(B_ρ)^{1−s/2}`, `β2 = (ρ^τ/2)(H(W)/H(B_ρ))^{(1−s)/2}`,
/// intensity threshold `16/β1`.
pub fn power_edge_params(
    space: &SpaceSpec,
    window: &WindowSpec,
    rho: f64,
    tau: f64,
    s: f64,
    no_antipodal: bool,
) -> Result<GraphPreset> {
    window.validate(space)?;
    check_s(s)?;
    check_positive_curvature(space, no_antipodal)?;
    ensure(tau >= 0.0, || format!("tau must be >= 0, got {tau}"))?;
    if !(rho > 0.0 && rho <= window.inradius) {
        return Err(Error::Precondition(format!(
            "need 0 < rho <= r(W) = {}, got {rho}",
            window.inradius
        )));
    }
    let hw = window.volume;
    let hr = ball_volume(space, rho)?;
    let hhalf = ball_volume(space, rho / 2.0)?;
    let hin = ball_volume(space, window.inradius)?;
    let beta1 = hw.powf(s / 2.0) * hr.powf(1.0 - s / 2.0);
    let beta2 = rho.powf(tau) / 2.0 * (hw / hr).powf((1.0 - s) / 2.0);
    let c27 = 2f64.powf(-47.0 - 2.0 * tau) * (hhalf / hr).powi(2) * (hr / hw).powf(s / 2.0) * (hin / hw);
    let f1_lower = (rho / 2.0).powf(2.0 * tau) * hhalf * hhalf * hin / 16.0;
    Ok(GraphPreset {
        beta1,
        beta2,
        c27,
        gamma_min: 16.0 / beta1,
        f1_lower,
        model: preset_model(2, beta1, beta2, f1_lower)?,
    })
}

/// Radius `ρ` with `γ H(B_ρ) = δ`, the fixed expected degree regime.
///
/// The root is sought below `min(|κ|^{−1/2}, r(W))`; pass `inradius = None`
/// to drop the window constraint.
pub fn fixed_degree_radius(space: &SpaceSpec, delta: f64, gamma: f64, inradius: Option<f64>) -> Result<f64> {
    space.validate()?;
    ensure(gamma > 0.0, || format!("gamma must be positive, got {gamma}"))?;
    if delta < 16.0 {
        return Err(Error::Precondition(format!("need delta >= 16, got {delta}")));
    }
    let mut hi = space.curvature_radius().min(inradius.unwrap_or(f64::INFINITY));
    let f = |r: f64| -> Result<f64> { Ok(gamma * ball_volume(space, r)? - delta) };
    if hi.is_infinite() {
        hi = 1.0;
        while f(hi)? < 0.0 {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::NoRoot("expected degree never reaches delta".into()));
            }
        }
    } else {
        // Positive curvature forbids the endpoint itself.
        let top = hi.min(space.max_radius() * (1.0 - 1e-15));
        if f(top)? < 0.0 {
            return Err(Error::NoRoot(format!(
                "gamma*H(B_rho) < delta on the admissible range rho < {hi}"
            )));
        }
        hi = top;
    }
    let mut lo = 0.0;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Intrinsic volumes `V_0..V_d` of the Euclidean ball of radius `r`.
pub fn ball_intrinsic_volumes(d: usize, r: f64) -> Vec<f64> {
    (0..=d)
        .map(|j| crate::model::binom_f64(d, j) * kappa(d) / kappa(d - j) * r.powi(j as i32))
        .collect()
}

/// Intrinsic volumes of an axis-parallel box: elementary symmetric
/// polynomials of the side lengths.
pub fn box_intrinsic_volumes(sides: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; sides.len() + 1];
    e[0] = 1.0;
    for (n, &a) in sides.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] += a * e[j - 1];
        }
    }
    e
}

/// Constants for intrinsic-volume functionals of a Euclidean hyperplane
/// process in a convex window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperplanePreset {
    pub alpha1: f64,
    pub alpha2: f64,
    pub c27: f64,
    pub gamma_min: f64,
    pub model: UStatModel,
}

/// `α1 = ω_{d+1}ν1/(πω_d)`, `α2 = ν_i/m!`, and
/// `C27 = 2^{−17m−4} m^{−2m−3} min(1, (m ω_{i+1} ν_{i+m}/(α2 ω_{i+m+1} (πν1)^m))²)`.
///
/// `nu` lists `V_0(W), …, V_d(W)`.
pub fn euclidean_hyperplane_params(d: usize, m: usize, i: usize, nu: &[f64]) -> Result<HyperplanePreset> {
    ensure(m >= 1 && m <= d, || format!("need 1 <= m <= d, got m = {m}, d = {d}"))?;
    ensure(i + m <= d, || format!("need 0 <= i <= d - m, got i = {i}"))?;
    ensure(nu.len() == d + 1, || format!("need d + 1 = {} intrinsic volumes, got {}", d + 1, nu.len()))?;
    ensure(nu.iter().all(|v| *v >= 0.0) && nu[1] > 0.0, || {
        "intrinsic volumes must be >= 0 with nu_1 > 0".to_string()
    })?;
    let mf = m as f64;
    let pi = std::f64::consts::PI;
    let alpha1 = omega(d + 1) * nu[1] / (pi * omega(d));
    let alpha2 = nu[i] / statrs::function::factorial::factorial(m as u64);
    ensure(alpha2 > 0.0, || format!("nu_{i} must be positive"))?;
    let ratio = mf * omega(i + 1) * nu[i + m] / (alpha2 * omega(i + m + 1) * (pi * nu[1]).powf(mf));
    let c27 = 2f64.powf(-17.0 * mf - 4.0) * mf.powf(-2.0 * mf - 3.0) * ratio.powi(2).min(1.0);
    let a = A2Params::new(alpha1, alpha2)?;
    let p = crate::model::a2_to_a1(&a);
    // The norm implied by the displayed constant, capped at the (A1) ceiling.
    let f1 = (ratio * alpha2).powi(2) * alpha1.powf(2.0 * mf - 1.0);
    let f1 = f1.min(crate::model::f1_norm_sq_cap(&p, m));
    let model = UStatModel::new(m, Assumption::A2(a))?.nonnegative(true).with_f1_norm_sq(f1)?;
    Ok(HyperplanePreset {
        alpha1,
        alpha2,
        c27,
        gamma_min: 8.0 * mf / alpha1,
        model,
    })
}

fn check_hyp(d: usize, r: f64) -> Result<()> {
    ensure(d >= 2, || format!("dimension must be >= 2, got {d}"))?;
    ensure(r > 0.0 && r.is_finite(), || format!("radius must be positive, got {r}"))
}

/// (A1) parameters of the total hyperplane surface area inside `B_r` in
/// hyperbolic space (`β0 = 1`).
pub fn hyperbolic_f1_params(d: usize, r: f64) -> Result<A1Params> {
    check_hyp(d, r)?;
    let df = d as f64;
    let (q, b1, b2) = match d {
        2 => (1.0, 2.0 * r.exp(), 4.0),
        3 => (0.0, 2.0 * r, omega(2) * r.exp()),
        _ => (0.0, 2.0, omega(d - 1) / (df - 2.0) * (r * (df - 2.0)).exp()),
    };
    A1Params::new(1.0, b1, b2, q)
}

/// `∫ chord^k` over hyperplanes hitting `B_r`: `2∫₀^r cosh^{d−1}(s) chord(s)^k ds`.
pub fn hyperbolic_chord_moment(d: usize, k: u32, r: f64) -> Result<f64> {
    check_hyp(d, r)?;
    let v = integrate_default(
        |s| s.cosh().powi(d as i32 - 1) * chord_length(d, r, s).map(|c| c.powi(k as i32)).unwrap_or(0.0),
        0.0,
        r,
    );
    Ok(2.0 * v)
}

/// Model for the hyperbolic surface functional with `‖f1‖²` from
/// quadrature of the chord second moment.
pub fn hyperbolic_model(d: usize, r: f64) -> Result<UStatModel> {
    let p = hyperbolic_f1_params(d, r)?;
    let f1 = hyperbolic_chord_moment(d, 2, r)? * (1.0 - 1e-9);
    let f1 = f1.min(crate::model::f1_norm_sq_cap(&p, 1));
    UStatModel::new(1, Assumption::A1(p))?.nonnegative(true).with_f1_norm_sq(f1)
}

/// Route for [`hyperbolic_rate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperbolicMethod {
    /// Order-one upper tail `exp(−I_d)`.
    Wu,
    /// Two-sided bound through the (A1) parameters.
    A1,
}

/// Tail bound for the hyperbolic surface functional.
pub fn hyperbolic_rate(d: usize, r: f64, gamma: f64, t: f64, method: HyperbolicMethod) -> Result<BoundResult> {
    check_hyp(d, r)?;
    ensure(gamma > 0.0, || format!("gamma must be positive, got {gamma}"))?;
    ensure(t >= 0.0, || format!("t must be >= 0, got {t}"))?;
    let df = d as f64;
    let er = r.exp();
    match method {
        HyperbolicMethod::Wu => {
            let rate = match d {
                2 => t / (4.0 * r) * (t * r / (32.0 * gamma * er)).ln_1p(),
                3 => {
                    let w = omega(2) * er;
                    t / w * (t / (4.0 * gamma * w * r)).ln_1p()
                }
                _ => {
                    let w = omega(d - 1) * ((df - 2.0) * r).exp();
                    2f64.powf(df - 3.0) * (df - 2.0) * t / w
                        * ((df - 2.0) * t / (2f64.powf(df - 1.0) * gamma * w)).ln_1p()
                }
            };
            Ok(BoundResult::new("hyp-wu", Regime::Single, Tail::Upper, t, 1.0, rate))
        }
        HyperbolicMethod::A1 => {
            let need = if d == 2 { 4.0 / er } else { 8.0 / hyperbolic_f1_params(d, r)?.beta1 };
            if gamma < need {
                return Ok(BoundResult::not_applicable(
                    "hyp-a1",
                    Tail::Two,
                    t,
                    vec![format!("gamma = {gamma} below the threshold {need}")],
                ));
            }
            let rate = if d == 2 {
                t / 2f64.powi(31) * (t / (8.0 * er * gamma)).min(1.0)
            } else {
                let beta = if d == 3 {
                    omega(2) * r * er
                } else {
                    omega(d - 1) / (df - 2.0) * (r * (df - 2.0)).exp()
                };
                let x = t / (beta * gamma);
                2f64.powf(-4.0 * df - 22.0) / omega(d - 1) * (t / (r * (df - 2.0)).exp()) * x.min(1.0 + log_plus(x))
            };
            Ok(BoundResult::new("hyp-a1", Regime::Single, Tail::Two, t, 2.0, rate))
        }
    }
}

/// Closed-form bounds on `2∫₀^r cosh^{d−1}(s) chord(s)^k ds`: the upper one
/// for `k >= 2`, and the lower one for `k = 2`, `r >= 3`.
pub fn hyperbolic_chord_moment_bounds(d: usize, k: u32, r: f64) -> Result<(f64, Option<f64>)> {
    check_hyp(d, r)?;
    ensure(k >= 2, || format!("k must be >= 2, got {k}"))?;
    let df = d as f64;
    let kf = k as f64;
    let upper = match (d, k) {
        (2, _) => 2.0 * 4f64.powf(kf) * statrs::function::factorial::factorial(k as u64) * r.exp(),
        (3, 2) => 2.0 * omega(2).powi(2) * r * (2.0 * r).exp(),
        _ => 2.0 * omega(d - 1).powf(kf) * (df - 2.0).powf(-kf) * (r * kf * (df - 2.0)).exp(),
    };
    let lower = (k == 2 && r >= 3.0).then(|| match d {
        2 => r.exp(),
        3 => omega(2).powi(2) * r * (2.0 * r).exp() / 64.0,
        _ => 2f64.powf(-4.0 * df + 6.0) * omega(d - 1).powi(2) / (df - 2.0).powi(3) * (2.0 * r * (df - 2.0)).exp(),
    });
    Ok((upper, lower))
}

/// Variance window `γ·(lower, upper)` for `r >= 3`, `γ >= 1`.
pub fn hyperbolic_variance_window(d: usize, r: f64, gamma: f64) -> Result<(f64, f64)> {
    check_hyp(d, r)?;
    if r < 3.0 || gamma < 1.0 {
        return Err(Error::Precondition(format!("need r >= 3 and gamma >= 1, got r = {r}, gamma = {gamma}")));
    }
    let (upper, lower) = hyperbolic_chord_moment_bounds(d, 2, r)?;
    Ok((gamma * lower.expect("r >= 3"), gamma * upper))
}
