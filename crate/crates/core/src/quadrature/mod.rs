//! Time along the orbit as a quadrature, and its inverse.
//!
//! While `ξ` rises from `ξ⁻` the elapsed time is
//! `t(ξ) = ∫_{ξ⁻}^{ξ} dx / √((h+1+x)² − e^{2x})`; the fall back from `ξ⁺`
//! mirrors it about the half period `t*`. The integrand has an inverse square
//! root singularity at both turning points.

pub mod tanh_sinh;

use std::f64::consts::PI;

use crate::error::{convergence, domain, Result};
use crate::orbit::{Energy, Orbit, Phase};

/// How far `ξ` may stray outside `[ξ⁻, ξ⁺]` before it is a domain error.
const BOUNDS_SLACK: f64 = 1e-12;
/// Times within this fraction of `t*` of the half period count as `t*`.
const HALF_PERIOD_TIE: f64 = 1e-12;

/// Accuracy controls for the tanh-sinh engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_levels: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            max_levels: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, max_levels: u32) -> Result<Self> {
        if !(rel_tol > 1e-15 && rel_tol < 1e-2) {
            return Err(domain(
                "quadrature_config",
                format!("rel_tol {rel_tol:e} outside (1e-15, 1e-2)"),
            ));
        }
        if !(4..=20).contains(&max_levels) {
            return Err(domain(
                "quadrature_config",
                format!("max_levels {max_levels} outside [4, 20]"),
            ));
        }
        Ok(QuadratureConfig {
            rel_tol,
            max_levels,
        })
    }
}

/// Time `t*` for `ξ` to travel from `ξ⁻` to `ξ⁺`; equals `π·Θ(h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriod {
    pub t_star: f64,
}

/// The exact time solution of one orbit, with `t*` computed once.
#[derive(Debug, Clone, Copy)]
pub struct TimeSolution {
    orbit: Orbit,
    cfg: QuadratureConfig,
    t_star: f64,
}

impl TimeSolution {
    pub fn new(h: Energy, cfg: QuadratureConfig) -> Result<Self> {
        h.positive("time_solution")?;
        let orbit = Orbit::new(h)?;
        let split = -h.value();
        let t_star = rise_from_minus(&orbit, split, &cfg)? + fall_to_plus(&orbit, split, &cfg)?;
        Ok(TimeSolution { orbit, cfg, t_star })
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    pub fn half_period(&self) -> HalfPeriod {
        HalfPeriod {
            t_star: self.t_star,
        }
    }

    pub fn t_star(&self) -> f64 {
        self.t_star
    }

    /// Full period `2t*` in normalized time.
    pub fn period(&self) -> f64 {
        2.0 * self.t_star
    }

    pub fn theta(&self) -> f64 {
        self.t_star / PI
    }

    fn clamp_to_orbit(&self, op: &'static str, xi: f64) -> Result<f64> {
        let b = self.orbit.bounds();
        if !(xi >= b.xi_minus - BOUNDS_SLACK && xi <= b.xi_plus + BOUNDS_SLACK) {
            return Err(domain(
                op,
                format!("ξ = {xi} outside [{}, {}]", b.xi_minus, b.xi_plus),
            ));
        }
        Ok(xi.clamp(b.xi_minus, b.xi_plus))
    }

    /// `∫_{ξ⁻}^{ξ}`, the time spent rising to `ξ`.
    ///
    /// Past the maximum of `U` at `ξ = −h` this is evaluated as
    /// `t* − ∫_{ξ}^{ξ⁺}` so that the only singular endpoint is a turning point.
    pub fn rise_time(&self, xi: f64) -> Result<f64> {
        let xi = self.clamp_to_orbit("time_of_xi", xi)?;
        let h = self.orbit.energy().value();
        if xi <= -h {
            rise_from_minus(&self.orbit, xi, &self.cfg)
        } else {
            Ok(self.t_star - fall_to_plus(&self.orbit, xi, &self.cfg)?)
        }
    }

    /// Time at which `ξ` is reached within the given half of the first period.
    pub fn time_of_xi(&self, xi: f64, phase: Phase) -> Result<f64> {
        let rise = self.rise_time(xi)?;
        Ok(match phase {
            Phase::Growth => rise,
            Phase::Decay => 2.0 * self.t_star - rise,
        })
    }

    /// `ξ(t)` for any `t ≥ 0`, with the phase it lies in.
    ///
    /// `t` is reduced modulo `2t*`. At `t*` itself the growth phase is
    /// reported.
    pub fn xi_of_time(&self, t: f64) -> Result<(f64, Phase)> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(domain("xi_of_time", format!("t = {t} must be finite and >= 0")));
        }
        let (reduced, phase) = self.reduce(t);
        let target = match phase {
            Phase::Growth => reduced,
            Phase::Decay => 2.0 * self.t_star - reduced,
        };
        Ok((self.invert_rise(target)?, phase))
    }

    /// Reduces `t` into one period and classifies the half it falls in.
    pub(crate) fn reduce(&self, t: f64) -> (f64, Phase) {
        let period = self.period();
        let mut reduced = t - (t / period).floor() * period;
        if reduced >= period || reduced < 0.0 {
            reduced = 0.0;
        }
        if reduced <= self.t_star * (1.0 + HALF_PERIOD_TIE) {
            (reduced.min(self.t_star), Phase::Growth)
        } else {
            (reduced, Phase::Decay)
        }
    }

    // Solves rise_time(ξ) = target for ξ ∈ [ξ⁻, ξ⁺].
    //
    // The bracket is parametrized as ξ = ξ⁻ + (ξ⁺ − ξ⁻)·sin²(θ/2), θ ∈ [0, π].
    // In θ the rise time is smooth through both turning points (exactly linear
    // for the harmonic limit), so secant steps converge quickly; bisection
    // takes over whenever a secant step leaves the bracket or stalls.
    fn invert_rise(&self, target: f64) -> Result<f64> {
        let b = self.orbit.bounds();
        if target <= 0.0 {
            return Ok(b.xi_minus);
        }
        if target >= self.t_star {
            return Ok(b.xi_plus);
        }
        let width = b.width();
        let xi_at = |theta: f64| {
            let s = (0.5 * theta).sin();
            (b.xi_minus + width * s * s).clamp(b.xi_minus, b.xi_plus)
        };
        let residual = |theta: f64| -> Result<f64> { Ok(self.rise_time(xi_at(theta))? - target) };

        let (mut lo, mut hi) = (0.0_f64, PI);
        let (mut prev, mut g_prev) = (PI, self.t_star - target);
        let mut theta = (PI * target / self.t_star).clamp(f64::MIN_POSITIVE, PI);
        let mut best = (theta, f64::INFINITY);
        // bracket widths after the previous two iterations
        let mut widths = [PI, PI];
        let residual_tol = 4.0 * f64::EPSILON * self.t_star;

        for _ in 0..200 {
            let g = residual(theta)?;
            if g.abs() < best.1 {
                best = (theta, g.abs());
            }
            if g.abs() <= residual_tol {
                return Ok(xi_at(theta));
            }
            if g < 0.0 {
                lo = theta;
            } else {
                hi = theta;
            }
            if 0.5 * width * (hi - lo) <= 1e-15 * width.max(1.0) {
                return Ok(xi_at(best.0));
            }
            let secant = theta - g * (theta - prev) / (g - g_prev);
            let stalled = hi - lo > 0.5 * widths[0];
            let next = if secant > lo && secant < hi && !stalled {
                secant
            } else {
                0.5 * (lo + hi)
            };
            widths = [widths[1], hi - lo];
            prev = theta;
            g_prev = g;
            theta = next;
        }
        Err(convergence(
            "xi_of_time",
            format!("inversion for t = {target} did not converge"),
        ))
    }
}

// ∫_{ξ⁻}^{end}; the singular endpoint is ξ⁻.
fn rise_from_minus(orbit: &Orbit, end: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let start = orbit.bounds().xi_minus;
    if end <= start {
        return Ok(0.0);
    }
    let exp_root = start.exp();
    tanh_sinh::integrate(
        |_, from_root, _| {
            let gap = orbit.gap_from_minus(from_root);
            1.0 / (gap * (gap + 2.0 * exp_root * from_root.exp())).sqrt()
        },
        start,
        end,
        cfg,
    )
}

// ∫_{start}^{ξ⁺}; the singular endpoint is ξ⁺.
fn fall_to_plus(orbit: &Orbit, start: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let end = orbit.bounds().xi_plus;
    if start >= end {
        return Ok(0.0);
    }
    let exp_root = end.exp();
    tanh_sinh::integrate(
        |_, _, to_root| {
            let gap = orbit.gap_from_plus(-to_root);
            1.0 / (gap * (gap + 2.0 * exp_root * (-to_root).exp())).sqrt()
        },
        start,
        end,
        cfg,
    )
}

/// Time to reach `ξ` in the given phase of the first period.
pub fn time_of_xi(xi: f64, h: Energy, phase: Phase, cfg: &QuadratureConfig) -> Result<f64> {
    TimeSolution::new(h, *cfg)?.time_of_xi(xi, phase)
}

/// `Θ(h) = (1/π) ∫_{ξ⁻}^{ξ⁺} dx / √((h+1+x)² − e^{2x})` for `h > 0`.
pub fn theta(h: Energy, cfg: &QuadratureConfig) -> Result<f64> {
    h.positive("theta")?;
    Ok(TimeSolution::new(h, *cfg)?.theta())
}

/// Inverse of [`time_of_xi`] over the whole periodic motion.
pub fn xi_of_time(t: f64, h: Energy, cfg: &QuadratureConfig) -> Result<(f64, Phase)> {
    h.positive("xi_of_time")?;
    TimeSolution::new(h, *cfg)?.xi_of_time(t)
}
