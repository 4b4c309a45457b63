//! Orbit geometry in the hybrid `(ξ, η)` plane.
//!
//! With `u = e^{ξ−η}` and `v = e^{ξ+η}` the conserved energy
//! `h = ½(u + v − ln uv) − 1` becomes `cosh η = (h + 1 + ξ)e^{−ξ}`, so every
//! orbit is fixed by `h` alone. `ξ` oscillates between the two roots of
//! `e^ξ − ξ − 1 = h`.

use std::fmt;

use crate::error::{convergence, domain, Error, Result};
use crate::specfun;

/// Radicand values this far below zero are rounding residue at a turning point.
pub const RADICAND_CLAMP: f64 = 1e-12;
/// Radicand values below this are a genuine domain violation.
pub const RADICAND_DOMAIN: f64 = 1e-10;
/// `U(ξ)` may undershoot 1 by this much before `ξ` counts as off the orbit.
pub const AUX_U_DOMAIN: f64 = 1e-10;

/// Below this energy the turning points are taken from `ξ = ±√(2h)` directly.
const QUADRATIC_ROOT_ENERGY: f64 = 1e-8;

/// Conserved orbital energy `h ≥ 0`. `h = 0` is the fixed point `u = v = 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Energy(f64);

impl Energy {
    pub const ZERO: Energy = Energy(0.0);

    pub fn new(h: f64) -> Result<Self> {
        if h.is_finite() && h >= 0.0 {
            Ok(Energy(h))
        } else {
            Err(domain("energy", format!("h = {h} must be finite and >= 0")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Errors unless `h > 0`; most time-domain operations need a real orbit.
    pub(crate) fn positive(self, op: &'static str) -> Result<f64> {
        if self.0 > 0.0 {
            Ok(self.0)
        } else {
            Err(domain(op, "needs h > 0 (h = 0 is the fixed point)"))
        }
    }
}

impl TryFrom<f64> for Energy {
    type Error = Error;

    fn try_from(h: f64) -> Result<Self> {
        Energy::new(h)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={}", self.0)
    }
}

/// Prey growth rate `alpha` and predator decay rate `delta`.
///
/// Only the equal-rate case `λ = √(α/δ) = 1` has the closed-form solution;
/// [`crate::period::period`] rejects anything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateConfig {
    pub alpha: f64,
    pub delta: f64,
}

impl RateConfig {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && delta.is_finite() && delta > 0.0) {
            return Err(domain(
                "rate_config",
                format!("rates must be positive and finite (alpha = {alpha}, delta = {delta})"),
            ));
        }
        Ok(RateConfig { alpha, delta })
    }

    /// Both rates equal to `alpha`.
    pub fn equal(alpha: f64) -> Result<Self> {
        RateConfig::new(alpha, alpha)
    }

    pub fn lambda(&self) -> f64 {
        (self.alpha / self.delta).sqrt()
    }

    pub fn is_equal_rate(&self) -> bool {
        (self.alpha - self.delta).abs() <= 1e-12 * self.alpha.max(self.delta)
    }
}

/// Turning points `ξ⁻ ≤ 0 ≤ ξ⁺` of the `ξ` oscillation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitBounds {
    pub xi_minus: f64,
    pub xi_plus: f64,
}

impl OrbitBounds {
    pub fn width(&self) -> f64 {
        self.xi_plus - self.xi_minus
    }

    pub fn contains(&self, xi: f64) -> bool {
        (self.xi_minus..=self.xi_plus).contains(&xi)
    }
}

/// A point `(ξ, η)` in the hybrid-species plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridState {
    pub xi: f64,
    pub eta: f64,
}

/// Prey `u` and predator `v` populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeciesState {
    pub u: f64,
    pub v: f64,
}

impl SpeciesState {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        let s = SpeciesState { u, v };
        s.check("species_state")?;
        Ok(s)
    }

    fn check(&self, op: &'static str) -> Result<()> {
        if self.u > 0.0 && self.v > 0.0 && self.u.is_finite() && self.v.is_finite() {
            Ok(())
        } else {
            Err(domain(
                op,
                format!("populations must be positive (u = {}, v = {})", self.u, self.v),
            ))
        }
    }
}

/// Sign of the `η` branch, `η± = ±acosh U(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Half of the `ξ` oscillation: rising from `ξ⁻` (growth) or falling from
/// `ξ⁺` (decay).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Growth,
    Decay,
}

impl Phase {
    pub fn sign(self) -> f64 {
        match self {
            Phase::Growth => 1.0,
            Phase::Decay => -1.0,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Growth => "growth",
            Phase::Decay => "decay",
        })
    }
}

/// `U(ξ) = (h + 1 + ξ)e^{−ξ}`; equals `cosh η` on the orbit and peaks at
/// `e^h` for `ξ = −h`.
pub fn aux_u(xi: f64, h: Energy) -> f64 {
    (h.value() + 1.0 + xi) * (-xi).exp()
}

/// Both roots of `e^ξ − ξ − 1 = h`.
pub fn orbit_bounds(h: Energy) -> Result<OrbitBounds> {
    let h = h.value();
    if h == 0.0 {
        return Ok(OrbitBounds {
            xi_minus: 0.0,
            xi_plus: 0.0,
        });
    }
    if h < QUADRATIC_ROOT_ENERGY {
        let r = (2.0 * h).sqrt();
        return Ok(OrbitBounds {
            xi_minus: -r,
            xi_plus: r,
        });
    }
    let f = |x: f64| x.exp_m1() - x - h;
    let df = |x: f64| x.exp_m1();

    let (guess_minus, guess_plus) = if h >= 0.5 {
        (-(h + 1.0), (1.0 + h + (1.0 + h).ln()).ln())
    } else {
        (-(2.0 * h).sqrt(), (2.0 * h).sqrt())
    };

    let xi_minus = safeguarded_newton(f, df, guess_minus, -(h + 1.0), 0.0)?;

    let mut upper = 2.0 * guess_plus + 1.0;
    while f(upper) <= 0.0 {
        upper *= 2.0;
        if !upper.is_finite() {
            return Err(convergence("orbit_bounds", "no upper bracket for ξ⁺"));
        }
    }
    let xi_plus = safeguarded_newton(f, df, guess_plus, 0.0, upper)?;
    Ok(OrbitBounds { xi_minus, xi_plus })
}

/// Newton iteration kept inside a sign-changing bracket; falls back to
/// bisection whenever a step leaves it.
fn safeguarded_newton(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    guess: f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let lo_positive = f_lo > 0.0;
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx > 0.0) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / df(x);
        if !(next > lo.min(hi) && next < lo.max(hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        x = next;
    }
    Err(convergence("orbit_bounds", "Newton iteration limit reached"))
}

/// `η±(ξ) = ±acosh U(ξ)`.
pub fn eta_from_xi(xi: f64, h: Energy, branch: Branch) -> Result<f64> {
    Orbit::new(h)?.eta(xi, branch)
}

/// Energy of a population pair, `½(u + v − ln uv) − 1`.
pub fn energy_from_populations(s: SpeciesState) -> Result<Energy> {
    s.check("energy_from_populations")?;
    let h = 0.5 * (s.u + s.v - s.u.ln() - s.v.ln()) - 1.0;
    Energy::new(h.max(0.0))
}

/// `ξ = ½ ln(uv)`, `η = ½ ln(v/u)`.
pub fn hybrid_from_populations(s: SpeciesState) -> Result<HybridState> {
    s.check("hybrid_from_populations")?;
    let (lu, lv) = (s.u.ln(), s.v.ln());
    Ok(HybridState {
        xi: 0.5 * (lu + lv),
        eta: 0.5 * (lv - lu),
    })
}

/// `u = e^{ξ−η}`, `v = e^{ξ+η}`.
pub fn populations_from_hybrid(x: HybridState) -> SpeciesState {
    SpeciesState {
        u: (x.xi - x.eta).exp(),
        v: (x.xi + x.eta).exp(),
    }
}

/// `ξ̇ = ±√((h + 1 + ξ)² − e^{2ξ})`, positive in the growth phase.
pub fn xi_rate(xi: f64, h: Energy, phase: Phase) -> Result<f64> {
    Orbit::new(h)?.xi_rate(xi, phase)
}

/// A single orbit with its turning points resolved.
///
/// Quantities that vanish at a turning point (`h + 1 + ξ − e^ξ`, the radicand,
/// `U − 1`) are evaluated relative to the nearer turning point, which treats
/// the computed roots as exact and avoids cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    h: f64,
    bounds: OrbitBounds,
    exp_minus: f64,
    exp_plus: f64,
}

impl Orbit {
    pub fn new(h: Energy) -> Result<Self> {
        let bounds = orbit_bounds(h)?;
        Ok(Orbit {
            h: h.value(),
            bounds,
            exp_minus: bounds.xi_minus.exp(),
            exp_plus: bounds.xi_plus.exp(),
        })
    }

    pub fn energy(&self) -> Energy {
        Energy(self.h)
    }

    pub fn bounds(&self) -> OrbitBounds {
        self.bounds
    }

    /// `h + 1 + ξ − e^ξ` for `ξ = ξ⁻ + d`.
    pub(crate) fn gap_from_minus(&self, d: f64) -> f64 {
        gap_from_root(self.bounds.xi_minus, self.exp_minus, d)
    }

    /// `h + 1 + ξ − e^ξ` for `ξ = ξ⁺ + d`.
    pub(crate) fn gap_from_plus(&self, d: f64) -> f64 {
        gap_from_root(self.bounds.xi_plus, self.exp_plus, d)
    }

    fn near_minus(&self, xi: f64) -> bool {
        xi <= -self.h
    }

    /// `h + 1 + ξ − e^ξ`; nonnegative exactly on `[ξ⁻, ξ⁺]`.
    pub fn gap(&self, xi: f64) -> f64 {
        if self.near_minus(xi) {
            self.gap_from_minus(xi - self.bounds.xi_minus)
        } else {
            self.gap_from_plus(xi - self.bounds.xi_plus)
        }
    }

    /// `h + 1 + ξ`, which is `½(u + v)` on the orbit.
    pub fn half_sum(&self, xi: f64) -> f64 {
        if self.near_minus(xi) {
            self.exp_minus + (xi - self.bounds.xi_minus)
        } else {
            self.exp_plus + (xi - self.bounds.xi_plus)
        }
    }

    /// `(h + 1 + ξ)² − e^{2ξ}`.
    pub fn radicand(&self, xi: f64) -> f64 {
        let gap = self.gap(xi);
        gap * (gap + 2.0 * xi.exp())
    }

    /// `U(ξ) − 1`.
    pub fn aux_u_minus_one(&self, xi: f64) -> f64 {
        self.gap(xi) * (-xi).exp()
    }

    pub fn eta(&self, xi: f64, branch: Branch) -> Result<f64> {
        let excess = self.aux_u_minus_one(xi);
        if !(excess >= -AUX_U_DOMAIN) {
            return Err(domain(
                "eta_from_xi",
                format!("ξ = {xi} is off the h = {} orbit (U − 1 = {excess:e})", self.h),
            ));
        }
        Ok(branch.sign() * specfun::acosh_1p(excess))
    }

    pub fn xi_rate(&self, xi: f64, phase: Phase) -> Result<f64> {
        Ok(phase.sign() * self.checked_radicand("xi_rate", xi)?.sqrt())
    }

    pub(crate) fn checked_radicand(&self, op: &'static str, xi: f64) -> Result<f64> {
        let r = self.radicand(xi);
        if !(r >= -RADICAND_DOMAIN) {
            return Err(domain(
                op,
                format!("ξ = {xi} is off the h = {} orbit (radicand {r:e})", self.h),
            ));
        }
        Ok(r.max(0.0))
    }

    /// Populations at `ξ` in the given phase.
    ///
    /// The larger root `h + 1 + ξ + √R` goes to the prey while `ξ` grows and to
    /// the predator while it decays. The smaller root is formed as
    /// `e^{2ξ}/(larger)` so that `uv = e^{2ξ}` holds to rounding.
    pub fn populations(&self, xi: f64, phase: Phase) -> Result<SpeciesState> {
        let r = self.checked_radicand("populations", xi)?;
        if r == 0.0 {
            let both = self.half_sum(xi);
            return Ok(SpeciesState { u: both, v: both });
        }
        let large = self.half_sum(xi) + r.sqrt();
        let small = (2.0 * xi).exp() / large;
        Ok(match phase {
            Phase::Growth => SpeciesState { u: large, v: small },
            Phase::Decay => SpeciesState { u: small, v: large },
        })
    }
}

// h + 1 + ξ − e^ξ at ξ = root + d, using h + 1 + root = e^root:
//   d(1 − e^root) − e^root (e^d − 1 − d)
fn gap_from_root(root: f64, exp_root: f64, d: f64) -> f64 {
    -d * root.exp_m1() - exp_root * expm1_minus_x(d)
}

// e^d − 1 − d without cancellation for small d.
fn expm1_minus_x(d: f64) -> f64 {
    if d.abs() < 1e-3 {
        let d2 = d * d;
        d2 * (0.5 + d * (1.0 / 6.0 + d * (1.0 / 24.0 + d * (1.0 / 120.0))))
    } else {
        d.exp_m1() - d
    }
}
