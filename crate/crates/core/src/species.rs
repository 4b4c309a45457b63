//! Prey and predator populations as explicit functions of time.
//!
//! Given `ξ(t)` from the inverted quadrature, `u + v = 2(h + 1 + ξ)` and
//! `uv = e^{2ξ}` fix the pair up to order; the phase decides which species
//! takes the larger root.

use crate::error::{domain, Result};
use crate::orbit::{self, Energy, SpeciesState};
use crate::quadrature::{QuadratureConfig, TimeSolution};

/// One point of a trajectory, ready for emission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub xi: f64,
    pub eta: f64,
    pub u: f64,
    pub v: f64,
    /// Energy recomputed from `(u, v)`.
    pub h_check: f64,
}

impl TrajectorySample {
    /// Fills in `ξ`, `η` and the recomputed energy from a population pair.
    pub fn from_populations(t: f64, s: SpeciesState) -> Result<Self> {
        let hybrid = orbit::hybrid_from_populations(s)?;
        Ok(TrajectorySample {
            t,
            xi: hybrid.xi,
            eta: hybrid.eta,
            u: s.u,
            v: s.v,
            h_check: energy_unclamped(s),
        })
    }
}

// Raw ½(u + v − ln uv) − 1, kept signed so rounding shows up in checks.
fn energy_unclamped(s: SpeciesState) -> f64 {
    0.5 * (s.u + s.v - s.u.ln() - s.v.ln()) - 1.0
}

impl TimeSolution {
    /// Populations at time `t`; the orbit starts at `u = v = e^{ξ⁻}`.
    pub fn populations_at(&self, t: f64) -> Result<SpeciesState> {
        let (xi, phase) = self.xi_of_time(t)?;
        self.orbit().populations(xi, phase)
    }

    pub fn sample_at(&self, t: f64) -> Result<TrajectorySample> {
        let (xi, phase) = self.xi_of_time(t)?;
        let s = self.orbit().populations(xi, phase)?;
        let mut sample = TrajectorySample::from_populations(t, s)?;
        // ½ln(uv) reproduces ξ to rounding; keep the solver's value.
        sample.xi = xi;
        Ok(sample)
    }

    /// `n_samples` points at uniform `t` over `[0, n_periods·2t*]`.
    pub fn sample_trajectory(&self, n_samples: usize, n_periods: f64) -> Result<Vec<TrajectorySample>> {
        if n_samples < 2 {
            return Err(domain("sample_trajectory", format!("need at least 2 samples, got {n_samples}")));
        }
        if !(n_periods > 0.0 && n_periods.is_finite()) {
            return Err(domain("sample_trajectory", format!("periods = {n_periods} must be positive")));
        }
        let span = n_periods * self.period();
        let last = (n_samples - 1) as f64;
        (0..n_samples)
            .map(|i| self.sample_at(span * i as f64 / last))
            .collect()
    }
}

/// Prey and predator populations at time `t` on the orbit of energy `h`.
pub fn populations_at(t: f64, h: Energy, cfg: &QuadratureConfig) -> Result<SpeciesState> {
    h.positive("populations_at")?;
    TimeSolution::new(h, *cfg)?.populations_at(t)
}

/// Uniformly sampled trajectory covering `n_periods` full periods.
pub fn sample_trajectory(
    h: Energy,
    n_samples: usize,
    n_periods: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec<TrajectorySample>> {
    h.positive("sample_trajectory")?;
    TimeSolution::new(h, *cfg)?.sample_trajectory(n_samples, n_periods)
}
