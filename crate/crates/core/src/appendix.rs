//! Series representation of the rise time through exponential integrals.
//!
//! Splitting `1/√R = (1 − e^{2x})/√R + e^{2x}/√R` gives exactly
//!
//! ```text
//! t(ξ) = acosh U(ξ) + √R(ξ) + ∫_{ξ⁻}^{ξ} e^{2x} / ((h+1+x)·√(1 − U(x)^{−2})) dx
//! ```
//!
//! and expanding `(1 − U^{−2})^{−1/2}` binomially turns the remaining integral
//! into a sum of `∫ e^{2(p+1)x}/(h+1+x)^{2p+1} dx`, each reducible to `Ei` by
//! repeated integration by parts. Direct quadrature is the reference for every
//! integral here; the closed forms are cross-checks.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::orbit::{Energy, Orbit};
use crate::quadrature::{tanh_sinh, QuadratureConfig};
use crate::specfun;

/// Deepest `p` for which integration by parts is evaluated in closed form.
pub const BY_PARTS_MAX_P: u32 = 2;
pub const SERIES_MAX_P: u32 = 12;

const BOUNDS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesConfig {
    /// Last binomial order kept.
    pub p_max: u32,
    /// Evaluate every series integral by quadrature instead of by parts.
    pub quad_fallback: bool,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            p_max: 3,
            quad_fallback: true,
        }
    }
}

impl SeriesConfig {
    pub fn new(p_max: u32, quad_fallback: bool) -> Result<Self> {
        if p_max > SERIES_MAX_P {
            return Err(domain(
                "series_config",
                format!("p_max {p_max} exceeds {SERIES_MAX_P}"),
            ));
        }
        Ok(SeriesConfig {
            p_max,
            quad_fallback,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegralMethod {
    ByParts,
    Numeric,
}

/// `Γ(½)/(Γ(½ − p)·Γ(p + 1))`, i.e. the binomial coefficient `C(−½, p)`.
///
/// `Σ binom_half(p)·zᵖ = (1 + z)^{−1/2}`, so the expansion of
/// `(1 − z)^{−1/2}` uses `(−1)ᵖ·binom_half(p)`.
pub fn binom_half(p: u32) -> f64 {
    (1..=p).fold(1.0, |c, k| {
        let k = f64::from(k);
        -c * (2.0 * k - 1.0) / (2.0 * k)
    })
}

fn orbit_for(op: &'static str, xi: f64, h: Energy) -> Result<(Orbit, f64)> {
    h.positive(op)?;
    let orbit = Orbit::new(h)?;
    let b = orbit.bounds();
    if !(xi >= b.xi_minus - BOUNDS_SLACK && xi <= b.xi_plus + BOUNDS_SLACK) {
        return Err(domain(
            op,
            format!("ξ = {xi} outside [{}, {}]", b.xi_minus, b.xi_plus),
        ));
    }
    Ok((orbit, xi.clamp(b.xi_minus, b.xi_plus)))
}

/// `∫_{ξ⁻}^{ξ} e^{rate·x} / (h+1+x)^{power} dx`.
fn exp_power_integral(
    orbit: &Orbit,
    xi: f64,
    rate: f64,
    power: u32,
    method: IntegralMethod,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let lower = orbit.bounds().xi_minus;
    if xi <= lower {
        return Ok(0.0);
    }
    match method {
        IntegralMethod::Numeric => {
            // h + 1 + ξ⁻ = e^{ξ⁻}, so h + 1 + x = e^{ξ⁻} + (x − ξ⁻)
            let base = lower.exp();
            let n = f64::from(power);
            tanh_sinh::integrate(
                |x, from_lower, _| (rate * x - n * (base + from_lower).ln()).exp(),
                lower,
                xi,
                cfg,
            )
        }
        IntegralMethod::ByParts => {
            let h = orbit.energy().value();
            let upper = by_parts_antiderivative(orbit.half_sum(xi), xi, h, rate, power)?;
            let start = by_parts_antiderivative(lower.exp(), lower, h, rate, power)?;
            Ok(upper - start)
        }
    }
}

// e^{−a(h+1)}·F_n(y) where F_n is the antiderivative of e^{a y}/yⁿ and
// y = h + 1 + x:
//   F_1 = Ei(a y),   F_n = −e^{a y}/((n−1) y^{n−1}) + a/(n−1)·F_{n−1}
fn by_parts_antiderivative(y: f64, x: f64, h: f64, rate: f64, power: u32) -> Result<f64> {
    let mut acc = (-rate * (h + 1.0)).exp() * specfun::ei(rate * y)?;
    for n in 2..=power {
        let m = f64::from(n - 1);
        acc = -(rate * x - m * y.ln()).exp() / m + rate / m * acc;
    }
    Ok(acc)
}

/// `I₂ₚ(ξ) = ∫_{ξ⁻}^{ξ} e^{2px} / (h+1+x)^{2p+1} dx` for `p ≥ 1`.
pub fn i2p_integral(
    xi: f64,
    h: Energy,
    p: u32,
    method: IntegralMethod,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if p == 0 {
        return Err(domain("i2p_integral", "p must be at least 1"));
    }
    check_by_parts(p, method)?;
    let (orbit, xi) = orbit_for("i2p_integral", xi, h)?;
    exp_power_integral(&orbit, xi, 2.0 * f64::from(p), 2 * p + 1, method, cfg)
}

/// Integral multiplying the `p`-th binomial coefficient in the series:
/// `∫_{ξ⁻}^{ξ} e^{2x}U(x)^{−2p}/(h+1+x) dx = ∫ e^{2(p+1)x}/(h+1+x)^{2p+1} dx`.
pub fn series_term_integral(
    xi: f64,
    h: Energy,
    p: u32,
    method: IntegralMethod,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_by_parts(p, method)?;
    let (orbit, xi) = orbit_for("series_term_integral", xi, h)?;
    exp_power_integral(&orbit, xi, 2.0 * f64::from(p + 1), 2 * p + 1, method, cfg)
}

fn check_by_parts(p: u32, method: IntegralMethod) -> Result<()> {
    if method == IntegralMethod::ByParts && p > BY_PARTS_MAX_P {
        return Err(Error::ByPartsUnavailable {
            p,
            max: BY_PARTS_MAX_P,
        });
    }
    Ok(())
}

/// Which argument to use for the lower-limit `Ei` term of the `p = 0` integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerLimitVariant {
    /// `Ei(2e^{2ξ⁻})`.
    Printed,
    /// `Ei(2(h+1+ξ⁻)) = Ei(2e^{ξ⁻})`, from the antiderivative `Ei(2(h+1+x))`.
    Antiderivative,
}

impl LowerLimitVariant {
    pub fn name(self) -> &'static str {
        match self {
            LowerLimitVariant::Printed => "printed Ei(2e^{2xi-})",
            LowerLimitVariant::Antiderivative => "antiderivative Ei(2e^{xi-})",
        }
    }
}

impl fmt::Display for LowerLimitVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `e^{−2(h+1)}·(Ei(2(h+1+ξ)) − Ei(lower))` with the chosen lower argument.
pub fn p0_closed_form(xi: f64, h: Energy, variant: LowerLimitVariant) -> Result<f64> {
    let (orbit, xi) = orbit_for("p0_closed_form", xi, h)?;
    let lower = orbit.bounds().xi_minus;
    let lower_arg = match variant {
        LowerLimitVariant::Printed => 2.0 * (2.0 * lower).exp(),
        LowerLimitVariant::Antiderivative => 2.0 * lower.exp(),
    };
    let scale = (-2.0 * (h.value() + 1.0)).exp();
    Ok(scale * (specfun::ei(2.0 * orbit.half_sum(xi))? - specfun::ei(lower_arg)?))
}

/// The `p = 0` integral `∫_{ξ⁻}^{ξ} e^{2x}/(h+1+x) dx` three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P0Integral {
    /// Direct quadrature; the reference value.
    pub direct: f64,
    pub printed: f64,
    pub antiderivative: f64,
}

impl P0Integral {
    pub fn closed_form(&self, variant: LowerLimitVariant) -> f64 {
        match variant {
            LowerLimitVariant::Printed => self.printed,
            LowerLimitVariant::Antiderivative => self.antiderivative,
        }
    }

    /// `|closed form − direct| / |direct|` (absolute when `direct = 0`).
    pub fn discrepancy(&self, variant: LowerLimitVariant) -> f64 {
        let diff = (self.closed_form(variant) - self.direct).abs();
        if self.direct == 0.0 {
            diff
        } else {
            diff / self.direct.abs()
        }
    }

    /// The variant reproducing the direct quadrature within `rel_tol`, if any.
    pub fn matching_variant(&self, rel_tol: f64) -> Option<LowerLimitVariant> {
        [LowerLimitVariant::Antiderivative, LowerLimitVariant::Printed]
            .into_iter()
            .filter(|&v| self.discrepancy(v) <= rel_tol)
            .min_by(|a, b| self.discrepancy(*a).total_cmp(&self.discrepancy(*b)))
    }
}

pub fn p0_integral(xi: f64, h: Energy, cfg: &QuadratureConfig) -> Result<P0Integral> {
    let (orbit, xi) = orbit_for("p0_integral", xi, h)?;
    Ok(P0Integral {
        direct: exp_power_integral(&orbit, xi, 2.0, 1, IntegralMethod::Numeric, cfg)?,
        printed: p0_closed_form(xi, h, LowerLimitVariant::Printed)?,
        antiderivative: p0_closed_form(xi, h, LowerLimitVariant::Antiderivative)?,
    })
}

/// A truncated series evaluation of the rise time.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    pub value: f64,
    /// `acosh U(ξ) + √R(ξ)`.
    pub closed_terms: f64,
    /// Signed contribution of each order `p = 0..=p_max`.
    pub terms: Vec<f64>,
    /// Magnitude of the last included term.
    pub truncation_estimate: f64,
}

/// Rise time `t(ξ)` from the closed-form terms plus the series through
/// `cfg.p_max`.
pub fn t_series(
    xi: f64,
    h: Energy,
    cfg: &SeriesConfig,
    quad: &QuadratureConfig,
) -> Result<SeriesEvaluation> {
    let (orbit, xi) = orbit_for("t_series", xi, h)?;
    let closed_terms =
        specfun::acosh_1p(orbit.aux_u_minus_one(xi)) + orbit.radicand(xi).max(0.0).sqrt();
    let method = if cfg.quad_fallback {
        IntegralMethod::Numeric
    } else {
        IntegralMethod::ByParts
    };
    let terms = (0..=cfg.p_max)
        .map(|p| {
            check_by_parts(p, method)?;
            let coefficient = if p % 2 == 0 { 1.0 } else { -1.0 } * binom_half(p);
            let integral =
                exp_power_integral(&orbit, xi, 2.0 * f64::from(p + 1), 2 * p + 1, method, quad)?;
            Ok(coefficient * integral)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesEvaluation {
        value: closed_terms + terms.iter().sum::<f64>(),
        closed_terms,
        truncation_estimate: terms.last().map_or(0.0, |t| t.abs()),
        terms,
    })
}
