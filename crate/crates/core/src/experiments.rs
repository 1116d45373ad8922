//! Monte Carlo harness: simulates a functional under a [`Scenario`],
//! estimates tail probabilities with exact binomial intervals, checks tail
//! bounds against them and compares simulated centred moments with the
//! exact formula.
//!
//! Replicate `i` always draws from its own counter-based stream, so reports
//! do not depend on the thread count.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::beta::inv_beta_reg;

use crate::applications::{
    hyperbolic_chord_moment, hyperbolic_model, hyperbolic_rate, power_edge_params, subgraph_params,
    GraphFunctionalSpec, HyperbolicMethod, SmallGraph, SpaceSpec, WindowSpec,
};
use crate::bounds::{
    chebyshev_cantelli, clt_regime, largeorder_upper, lower_tail_bp, main_bound, unified_bound, wu_order1,
    BoundResult, Tail,
};
use crate::error::{ensure, Error, Result};
use crate::geometry::{
    close_pairs, count_subgraphs, f1_hyperbolic, BallSampler, ChordSampler, PointSample,
};
use crate::model::{ConstantKernel, UStatModel};
use crate::moments::{centred_moment_constant_kernel, variance_exact};
use crate::rng::{stream, Family};

/// Simulated functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionalConfig {
    /// Number of points in a window of mass `mass`.
    PointCount { mass: f64 },
    /// `c·(N)_m` with `N ~ Poisson(γ·mass)`.
    ConstantKernel { m: usize, c: f64, mass: f64 },
    EdgeCount { space: SpaceSpec, window_radius: f64, rho: f64 },
    Subgraph { space: SpaceSpec, window_radius: f64, rho: f64, h: SmallGraph },
    PowerEdge { space: SpaceSpec, window_radius: f64, rho: f64, tau: f64 },
    /// Total hyperplane surface area inside a hyperbolic ball.
    HyperbolicSurface { d: usize, r: f64 },
}

impl FunctionalConfig {
    fn constant_kernel(&self) -> Option<ConstantKernel> {
        match *self {
            FunctionalConfig::PointCount { mass } => ConstantKernel::new(1, 1.0, mass).ok(),
            FunctionalConfig::ConstantKernel { m, c, mass } => ConstantKernel::new(m, c, mass).ok(),
            _ => None,
        }
    }
}

/// Bound families a scenario can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Main,
    Unified,
    Wu,
    Clt,
    Largeorder,
    HypWu,
    HypA1,
    Cc,
    Bp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Main => "main",
            Method::Unified => "unified",
            Method::Wu => "wu",
            Method::Clt => "clt",
            Method::Largeorder => "largeorder",
            Method::HypWu => "hyp-wu",
            Method::HypA1 => "hyp-a1",
            Method::Cc => "cc",
            Method::Bp => "bp",
        }
    }
}

/// How the simulated values are centred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Centering {
    /// Mean of an independent batch of the same size.
    #[default]
    Calibration,
    /// The exact mean, when the functional has one.
    Analytic,
}

fn default_methods() -> Vec<Method> {
    vec![Method::Main]
}

fn default_tails() -> Vec<Tail> {
    vec![Tail::Two]
}

fn default_confidence() -> f64 {
    0.99
}

/// A simulation experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub functional: FunctionalConfig,
    pub gamma: f64,
    /// Deviations `t`.
    #[serde(default)]
    pub t_grid: Vec<f64>,
    /// Normalised deviations `s`, with `t = s·√V`.
    #[serde(default)]
    pub s_grid: Vec<f64>,
    pub replications: usize,
    pub seed: u64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default = "default_tails")]
    pub tails: Vec<Tail>,
    #[serde(default)]
    pub centering: Centering,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
    /// Interpolation exponent of the graph presets.
    #[serde(default)]
    pub preset_s: f64,
    /// Caller assertion for positive curvature windows.
    #[serde(default)]
    pub no_antipodal: bool,
}

fn sorted(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        ensure(self.replications >= 1, || "replications must be >= 1".into())?;
        ensure(self.gamma > 0.0 && self.gamma.is_finite(), || {
            format!("gamma must be positive, got {}", self.gamma)
        })?;
        ensure(!self.t_grid.is_empty() || !self.s_grid.is_empty(), || "t_grid and s_grid are both empty".into())?;
        ensure(sorted(&self.t_grid) && sorted(&self.s_grid), || "grids must be sorted".into())?;
        ensure(self.t_grid.iter().chain(&self.s_grid).all(|x| *x >= 0.0), || {
            "grid values must be >= 0".into()
        })?;
        ensure(self.confidence > 0.0 && self.confidence < 1.0, || {
            format!("confidence must lie in (0, 1), got {}", self.confidence)
        })?;
        ensure(!self.tails.is_empty(), || "no tails requested".into())?;
        if !self.s_grid.is_empty() && self.variance()?.is_none() {
            return Err(Error::Missing("s_grid needs a functional with an exact variance".into()));
        }
        Ok(())
    }

    /// The model feeding the bounds.
    pub fn model(&self) -> Result<UStatModel> {
        let model = match &self.functional {
            f @ (FunctionalConfig::PointCount { .. } | FunctionalConfig::ConstantKernel { .. }) => {
                let k = f
                    .constant_kernel()
                    .ok_or_else(|| Error::InvalidArgument("invalid constant kernel".into()))?;
                k.model()
            }
            FunctionalConfig::EdgeCount { space, window_radius, rho } => {
                let w = WindowSpec::ball(space, *window_radius)?;
                let f = GraphFunctionalSpec::IncludedSubgraph { h: SmallGraph::Edge };
                subgraph_params(space, &w, &f, *rho, self.preset_s, self.no_antipodal)?.model
            }
            FunctionalConfig::Subgraph { space, window_radius, rho, h } => {
                let w = WindowSpec::ball(space, *window_radius)?;
                let f = GraphFunctionalSpec::IncludedSubgraph { h: *h };
                subgraph_params(space, &w, &f, *rho, self.preset_s, self.no_antipodal)?.model
            }
            FunctionalConfig::PowerEdge { space, window_radius, rho, tau } => {
                let w = WindowSpec::ball(space, *window_radius)?;
                power_edge_params(space, &w, *rho, *tau, self.preset_s, self.no_antipodal)?.model
            }
            FunctionalConfig::HyperbolicSurface { d, r } => hyperbolic_model(*d, *r)?,
        };
        Ok(match self.variance()? {
            Some(v) => model.with_variance(v)?,
            None => model,
        })
    }

    /// Exact mean, when available.
    pub fn analytic_mean(&self) -> Result<Option<f64>> {
        if let Some(k) = self.functional.constant_kernel() {
            return Ok(Some(k.mean(self.gamma)));
        }
        match self.functional {
            FunctionalConfig::HyperbolicSurface { d, r } => Ok(Some(self.gamma * hyperbolic_chord_moment(d, 1, r)?)),
            _ => Ok(None),
        }
    }

    /// Exact variance, when available.
    pub fn variance(&self) -> Result<Option<f64>> {
        if let Some(k) = self.functional.constant_kernel() {
            return Ok(Some(variance_exact(&k.fk_norms_sq(), self.gamma, k.m)?));
        }
        match self.functional {
            FunctionalConfig::HyperbolicSurface { d, r } => Ok(Some(self.gamma * hyperbolic_chord_moment(d, 2, r)?)),
            _ => Ok(None),
        }
    }

    /// Grid of `(t, s)` pairs: the `t` grid followed by the scaled `s` grid.
    pub fn grid(&self) -> Result<Vec<(f64, Option<f64>)>> {
        let mut g: Vec<(f64, Option<f64>)> = self.t_grid.iter().map(|&t| (t, None)).collect();
        if !self.s_grid.is_empty() {
            let sd = self
                .variance()?
                .ok_or_else(|| Error::Missing("no exact variance for the s grid".into()))?
                .sqrt();
            g.extend(self.s_grid.iter().map(|&s| (s * sd, Some(s))));
        }
        Ok(g)
    }
}

enum Prepared {
    Constant { m: usize, c: f64, mean: f64 },
    Graph { sampler: BallSampler, rho: f64, kind: GraphKind },
    Hyperbolic(ChordSampler),
}

enum GraphKind {
    Edges,
    Subgraph(SmallGraph),
    Power(f64),
}

fn falling(n: u64, m: usize) -> f64 {
    (0..m as u64).map(|i| n.saturating_sub(i) as f64).product()
}

impl Prepared {
    fn new(sc: &Scenario) -> Result<Self> {
        let g = sc.gamma;
        Ok(match &sc.functional {
            f @ (FunctionalConfig::PointCount { .. } | FunctionalConfig::ConstantKernel { .. }) => {
                let k = f
                    .constant_kernel()
                    .ok_or_else(|| Error::InvalidArgument("constant kernel needs m >= 1, c > 0, mass > 0".into()))?;
                Prepared::Constant { m: k.m, c: k.c, mean: g * k.a }
            }
            FunctionalConfig::EdgeCount { space, window_radius, rho } => Prepared::Graph {
                sampler: BallSampler::new(*space, *window_radius, g)?,
                rho: *rho,
                kind: GraphKind::Edges,
            },
            FunctionalConfig::Subgraph { space, window_radius, rho, h } => Prepared::Graph {
                sampler: BallSampler::new(*space, *window_radius, g)?,
                rho: *rho,
                kind: GraphKind::Subgraph(*h),
            },
            FunctionalConfig::PowerEdge { space, window_radius, rho, tau } => Prepared::Graph {
                sampler: BallSampler::new(*space, *window_radius, g)?,
                rho: *rho,
                kind: GraphKind::Power(*tau),
            },
            FunctionalConfig::HyperbolicSurface { d, r } => Prepared::Hyperbolic(ChordSampler::new(*d, *r, g)?),
        })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Prepared::Constant { m, c, mean } => c * falling(crate::geometry::poisson_draw(*mean, rng), *m),
            Prepared::Graph { sampler, rho, kind } => {
                let s: PointSample = sampler.sample(rng, 0);
                match kind {
                    GraphKind::Edges => close_pairs(&s, *rho).len() as f64,
                    GraphKind::Power(tau) => close_pairs(&s, *rho)
                        .iter()
                        .map(|&(_, _, d)| if *tau == 0.0 { 1.0 } else { d.powf(*tau) })
                        .sum(),
                    GraphKind::Subgraph(h) => {
                        let adj = crate::geometry::adjacency(&s, *rho);
                        count_subgraphs(&adj, *h) as f64
                    }
                }
            }
            Prepared::Hyperbolic(sampler) => f1_hyperbolic(&sampler.sample(rng, 0)),
        }
    }
}

/// Simulates `n` replicates from the given stream family.
pub fn simulate(sc: &Scenario, family: Family, n: usize) -> Result<Vec<f64>> {
    let prepared = Prepared::new(sc)?;
    Ok((0..n as u64)
        .into_par_iter()
        .map(|i| prepared.draw(&mut stream(sc.seed, family, i)))
        .collect())
}

/// Neumaier-compensated mean.
pub fn compensated_mean(values: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / values.len() as f64
}

/// Two-sided Clopper–Pearson interval for `k` successes out of `n`.
pub fn clopper_pearson(k: u64, n: u64, confidence: f64) -> (f64, f64) {
    let a = (1.0 - confidence) / 2.0;
    let (kf, nf) = (k as f64, n as f64);
    let lo = if k == 0 { 0.0 } else { inv_beta_reg(kf, nf - kf + 1.0, a) };
    let hi = if k == n {
        1.0
    } else if k == 0 {
        1.0 - a.powf(1.0 / nf)
    } else {
        inv_beta_reg(kf + 1.0, nf - kf, 1.0 - a)
    };
    (lo, hi)
}

/// Empirical exceedance probability at one deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    pub tail: Tail,
    pub exceed_count: u64,
    pub n: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Estimates of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRun {
    pub centering: Centering,
    pub center: f64,
    pub estimates: Vec<TailEstimate>,
}

fn exceeds(dev: f64, t: f64, tail: Tail) -> bool {
    match tail {
        Tail::Two => dev.abs() >= t,
        Tail::Upper => dev >= t,
        Tail::Lower => -dev >= t,
    }
}

/// Tail estimates from simulated values centred at `center`, ordered by tail
/// then grid point.
pub fn tail_estimates(values: &[f64], center: f64, grid: &[(f64, Option<f64>)], tails: &[Tail], confidence: f64) -> Vec<TailEstimate> {
    let n = values.len() as u64;
    let mut out = Vec::with_capacity(grid.len() * tails.len());
    for &tail in tails {
        for &(t, s) in grid {
            let k = values.iter().filter(|v| exceeds(**v - center, t, tail)).count() as u64;
            let (ci_low, ci_high) = clopper_pearson(k, n, confidence);
            out.push(TailEstimate {
                t,
                s,
                tail,
                exceed_count: k,
                n,
                point_estimate: k as f64 / n as f64,
                ci_low,
                ci_high,
            });
        }
    }
    out
}

/// Simulates the scenario and estimates every requested tail on its grid.
pub fn run_tails(sc: &Scenario) -> Result<TailRun> {
    sc.validate()?;
    let values = simulate(sc, Family::Replicate, sc.replications)?;
    let center = match sc.centering {
        Centering::Calibration => compensated_mean(&simulate(sc, Family::Calibration, sc.replications)?),
        Centering::Analytic => sc
            .analytic_mean()?
            .ok_or_else(|| Error::Missing("functional has no analytic mean".into()))?,
    };
    Ok(TailRun {
        centering: sc.centering,
        center,
        estimates: tail_estimates(&values, center, &sc.grid()?, &sc.tails, sc.confidence),
    })
}

/// Evaluates one bound method at deviation `t`.
pub fn evaluate_method(sc: &Scenario, model: &UStatModel, method: Method, tail: Tail, t: f64) -> Result<BoundResult> {
    let name = method.name();
    let na = |why: &str| Ok(BoundResult::not_applicable(name, tail, t, vec![why.to_string()]));
    let g = sc.gamma;
    match method {
        Method::Main => main_bound(model, g, t, tail),
        Method::Unified => unified_bound(model, g, t, tail),
        Method::Wu => {
            let Some(a2) = model.a2().filter(|_| model.m == 1) else {
                return na("needs order one with (A2) parameters");
            };
            let (up, lo) = wu_order1(&a2, g, t, model.kernel_nonnegative)?;
            match tail {
                Tail::Upper => Ok(up),
                Tail::Lower => Ok(lo),
                Tail::Two => na("only one-sided statements"),
            }
        }
        Method::Clt => {
            let Some(v) = model.variance else {
                return na("needs the exact variance");
            };
            let mut r = clt_regime(model, g, t / v.sqrt(), tail)?;
            r.t = t;
            Ok(r)
        }
        Method::Largeorder => match model.a2() {
            Some(a2) => largeorder_upper(&a2, model.m, g, t, true, tail),
            None => na("needs (A2) parameters"),
        },
        Method::HypWu | Method::HypA1 => {
            let FunctionalConfig::HyperbolicSurface { d, r } = sc.functional else {
                return na("only for the hyperbolic surface functional");
            };
            let res = if method == Method::HypWu {
                hyperbolic_rate(d, r, g, t, HyperbolicMethod::Wu)?
            } else {
                hyperbolic_rate(d, r, g, t, HyperbolicMethod::A1)?
            };
            if res.tail != Tail::Two && res.tail != tail {
                return na("upper tail only");
            }
            Ok(BoundResult { tail, ..res })
        }
        Method::Cc => match (tail, model.variance) {
            (Tail::Upper, Some(v)) => chebyshev_cantelli(v, t, 1.0),
            _ => na("upper tail with exact variance only"),
        },
        Method::Bp => {
            if tail != Tail::Lower {
                return na("lower tail only");
            }
            let p = model.a1()?;
            lower_tail_bp(model, g, t, g * p.beta1)
        }
    }
}

/// Outcome of checking one bound at one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    pub tail: Tail,
    pub method: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub bound: Option<f64>,
    pub applicable: bool,
    /// `None` when the bound is not applicable.
    pub pass: Option<bool>,
    /// `ln(bound/estimate)`; absent when nothing exceeded.
    pub log_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

/// Pairs estimates with bounds at the same `(t, tail)`; passes iff
/// `ci_low <= bound`.
pub fn verify_bounds(estimates: &[TailEstimate], bounds: &[BoundResult]) -> Result<Vec<VerifyRow>> {
    if estimates.len() != bounds.len() {
        return Err(Error::InvalidArgument(format!(
            "{} estimates but {} bounds",
            estimates.len(),
            bounds.len()
        )));
    }
    estimates
        .iter()
        .zip(bounds)
        .map(|(e, b)| {
            if e.t != b.t || e.tail != b.tail {
                return Err(Error::InvalidArgument(format!(
                    "misaligned grids: estimate at ({}, {:?}) vs bound at ({}, {:?})",
                    e.t, e.tail, b.t, b.tail
                )));
            }
            let applicable = b.applicable();
            let bound = applicable.then_some(b.prob_bound);
            Ok(VerifyRow {
                t: e.t,
                s: e.s,
                tail: e.tail,
                method: b.method.clone(),
                estimate: e.point_estimate,
                ci_low: e.ci_low,
                ci_high: e.ci_high,
                bound,
                applicable,
                pass: bound.map(|v| e.ci_low <= v),
                log_margin: bound.filter(|_| e.point_estimate > 0.0).map(|v| (v / e.point_estimate).ln()),
                reasons: b.reasons.clone(),
            })
        })
        .collect()
}

/// Pass/fail tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl Tally {
    pub fn of(rows: &[VerifyRow]) -> Self {
        rows.iter().fold(Self::default(), |mut t, r| {
            match r.pass {
                Some(true) => t.passed += 1,
                Some(false) => t.failed += 1,
                None => t.not_applicable += 1,
            }
            t
        })
    }
}

/// Full verification report of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub scenario: String,
    pub gamma: f64,
    pub replications: usize,
    pub confidence: f64,
    pub centering: Centering,
    pub center: f64,
    pub rows: Vec<VerifyRow>,
    pub tally: Tally,
    /// No applicable bound failed.
    pub all_pass: bool,
}

/// Simulates the scenario and checks every requested bound method.
pub fn verify_scenario(sc: &Scenario) -> Result<VerifyReport> {
    let run = run_tails(sc)?;
    let model = sc.model()?;
    let mut rows = Vec::new();
    for &method in &sc.methods {
        let bounds = run
            .estimates
            .iter()
            .map(|e| evaluate_method(sc, &model, method, e.tail, e.t))
            .collect::<Result<Vec<_>>>()?;
        rows.extend(verify_bounds(&run.estimates, &bounds)?);
    }
    let tally = Tally::of(&rows);
    Ok(VerifyReport {
        version: crate::VERSION.to_string(),
        scenario: sc.name.clone(),
        gamma: sc.gamma,
        replications: sc.replications,
        confidence: sc.confidence,
        centering: run.centering,
        center: run.center,
        rows,
        tally,
        all_pass: tally.failed == 0,
    })
}

/// Simulated versus exact centred moment of one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub ell: usize,
    pub exact: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub z: f64,
    pub flagged: bool,
}

/// Number of groups of the delete-a-group jackknife.
pub const JACKKNIFE_GROUPS: usize = 100;

/// Centred moment of order `ell` from raw moments `M_j = mean((x − c)^j)`.
fn centred_from_raw(raw: &[f64], ell: usize) -> f64 {
    let delta = raw[1];
    (0..=ell)
        .map(|j| crate::model::binom_f64(ell, j) * (-delta).powi((ell - j) as i32) * raw[j])
        .sum()
}

/// Plug-in centred moment with a grouped jackknife standard error.
pub fn jackknife_centred_moment(values: &[f64], shift: f64, ell: usize) -> (f64, f64) {
    let n = values.len();
    let g = JACKKNIFE_GROUPS.min(n).max(1);
    let mut sums = vec![vec![0.0; ell + 1]; g];
    let mut counts = vec![0usize; g];
    for (i, v) in values.iter().enumerate() {
        let b = i * g / n;
        counts[b] += 1;
        let x = v - shift;
        let mut p = 1.0;
        for s in sums[b].iter_mut() {
            *s += p;
            p *= x;
        }
    }
    let total: Vec<f64> = (0..=ell).map(|j| sums.iter().map(|s| s[j]).sum()).collect();
    let full: Vec<f64> = total.iter().map(|s| s / n as f64).collect();
    let est = centred_from_raw(&full, ell);
    if g < 2 {
        return (est, f64::NAN);
    }
    let leave: Vec<f64> = (0..g)
        .map(|b| {
            let m = (n - counts[b]) as f64;
            let raw: Vec<f64> = (0..=ell).map(|j| (total[j] - sums[b][j]) / m).collect();
            centred_from_raw(&raw, ell)
        })
        .collect();
    let mean = leave.iter().sum::<f64>() / g as f64;
    let var = (g as f64 - 1.0) / g as f64 * leave.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    (est, var.sqrt())
}

/// Compares simulated centred moments with the exact ones; needs a
/// constant-kernel functional.
pub fn moment_mc_check(sc: &Scenario, ells: &[usize]) -> Result<Vec<MomentRow>> {
    ensure(sc.replications >= 2, || "need at least two replications".into())?;
    let k = sc
        .functional
        .constant_kernel()
        .ok_or_else(|| Error::InvalidArgument("exact moments need a constant-kernel functional".into()))?;
    let values = simulate(sc, Family::Replicate, sc.replications)?;
    let shift = k.mean(sc.gamma);
    ells.iter()
        .map(|&ell| {
            ensure(ell >= 1, || "moment order must be >= 1".into())?;
            let exact = centred_moment_constant_kernel(k.a, k.c, sc.gamma, k.m, ell)?;
            let (estimate, std_error) = jackknife_centred_moment(&values, shift, ell);
            let z = if std_error > 0.0 { (estimate - exact) / std_error } else { 0.0 };
            Ok(MomentRow {
                ell,
                exact,
                estimate,
                std_error,
                z,
                flagged: z.abs() > 4.0,
            })
        })
        .collect()
}
