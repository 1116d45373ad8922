//! Sphere surface areas, ball volumes and a few log-space helpers.

use statrs::function::gamma::ln_gamma;

/// Surface area `ω_j = 2π^{j/2}/Γ(j/2)` of the unit sphere in `ℝ^j`.
pub fn omega(j: usize) -> f64 {
    assert!(j >= 1, "omega needs j >= 1");
    let h = j as f64 / 2.0;
    2.0 * (h * std::f64::consts::PI.ln() - ln_gamma(h)).exp()
}

/// Volume `κ_j = π^{j/2}/Γ(j/2 + 1)` of the unit ball in `ℝ^j` (`κ_0 = 1`).
pub fn kappa(j: usize) -> f64 {
    let h = j as f64 / 2.0;
    (h * std::f64::consts::PI.ln() - ln_gamma(h + 1.0)).exp()
}

/// `log(1 + x)` clipped below at zero: `max(0, log x)` as used by `log₊`.
pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// `min(1, factor·e^{−rate})` evaluated in log space.
pub fn clamp_prob(factor: f64, rate: f64) -> f64 {
    let l = factor.ln() - rate;
    if l >= 0.0 {
        1.0
    } else {
        l.exp()
    }
}
