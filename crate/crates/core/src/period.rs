//! Oscillation period `T(h) = (2π/α)·Θ(h)` and the four ways of getting `Θ`.

use std::f64::consts::{FRAC_2_PI, LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Result};
use crate::orbit::{orbit_bounds, Energy, RateConfig};
use crate::quadrature::{self, QuadratureConfig};
use crate::specfun;

/// Evaluation regime for `Θ(h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaMethod {
    /// Singular quadrature over the full orbit.
    Exact,
    /// Complete elliptic integral form, valid for small `h < 0.5`.
    Elliptic,
    /// `1 + h/3 + h²/42`.
    Series,
    /// `(ξ⁺ − ξ⁻ + ln 2)/π`, meant for large `h`.
    Asymptotic,
}

impl ThetaMethod {
    pub const ALL: [ThetaMethod; 4] = [
        ThetaMethod::Exact,
        ThetaMethod::Elliptic,
        ThetaMethod::Series,
        ThetaMethod::Asymptotic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ThetaMethod::Exact => "exact",
            ThetaMethod::Elliptic => "elliptic",
            ThetaMethod::Series => "series",
            ThetaMethod::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for ThetaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThetaMethod {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        ThetaMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| domain("theta_method", format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodResult {
    pub theta: f64,
    /// Period in units of `1/alpha`.
    pub period: f64,
    pub method: ThetaMethod,
    pub h: Energy,
    pub alpha: f64,
}

/// `Θ(h)` by quadrature; `Θ(0) = 1` exactly.
pub fn theta_exact(h: Energy, cfg: &QuadratureConfig) -> Result<f64> {
    if h.value() == 0.0 {
        return Ok(1.0);
    }
    quadrature::theta(h, cfg)
}

/// `Θ(h) = (2/π)·K(k)/√(1 + √(2h))` with `k² = 2√(2h)/(1 + √(2h))`.
pub fn theta_elliptic(h: Energy) -> Result<f64> {
    let h = h.value();
    if !(h > 0.0 && h < 0.5) {
        return Err(domain("theta_elliptic", format!("needs 0 < h < 0.5, got {h}")));
    }
    let r = (2.0 * h).sqrt();
    let k = (2.0 * r / (1.0 + r)).sqrt();
    Ok(FRAC_2_PI * specfun::elliptic_k(k)? / (1.0 + r).sqrt())
}

/// Truncated small-energy series `1 + h/3 + h²/42`.
pub fn theta_series(h: Energy) -> f64 {
    let h = h.value();
    1.0 + h / 3.0 + h * h / 42.0
}

/// High-energy approximation `(ξ⁺ − ξ⁻ + ln 2)/π`.
///
/// Defined for every `h`; it is only meant to be accurate for large `h`.
pub fn theta_asymptotic(h: Energy) -> Result<f64> {
    let b = orbit_bounds(h)?;
    Ok((b.xi_plus - b.xi_minus + LN_2) / PI)
}

pub fn theta_with(method: ThetaMethod, h: Energy, cfg: &QuadratureConfig) -> Result<f64> {
    match method {
        ThetaMethod::Exact => theta_exact(h, cfg),
        ThetaMethod::Elliptic => theta_elliptic(h),
        ThetaMethod::Series => Ok(theta_series(h)),
        ThetaMethod::Asymptotic => theta_asymptotic(h),
    }
}

/// Period of the orbit with energy `h`; the rates must be equal.
pub fn period(
    h: Energy,
    rates: RateConfig,
    method: ThetaMethod,
    cfg: &QuadratureConfig,
) -> Result<PeriodResult> {
    if !rates.is_equal_rate() {
        return Err(domain(
            "period",
            format!(
                "closed form needs alpha = delta (got lambda = {})",
                rates.lambda()
            ),
        ));
    }
    let theta = theta_with(method, h, cfg)?;
    Ok(PeriodResult {
        theta,
        period: 2.0 * PI * theta / rates.alpha,
        method,
        h,
        alpha: rates.alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(h: f64) -> Energy {
        Energy::new(h).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn exact_theta_examples() {
        assert_eq!(theta_exact(Energy::ZERO, &cfg()).unwrap(), 1.0);
        assert!((theta_exact(e(1.0), &cfg()).unwrap() - 1.355).abs() <= 1e-3);
        assert!((theta_exact(e(7.0), &cfg()).unwrap() - 3.535).abs() <= 1e-3);
    }

    #[test]
    fn elliptic_examples() {
        assert!((theta_elliptic(e(1e-10)).unwrap() - 1.0).abs() <= 1e-5);
        let exact = theta_exact(e(1e-4), &cfg()).unwrap();
        let ell = theta_elliptic(e(1e-4)).unwrap();
        assert!((ell - exact).abs() / exact <= 1e-4);
        assert!(theta_elliptic(e(0.5)).is_err());
        assert!(theta_elliptic(Energy::ZERO).is_err());
    }

    #[test]
    fn series_examples() {
        assert_eq!(theta_series(Energy::ZERO), 1.0);
        let v = theta_series(e(0.3));
        assert!((v - (1.1 + 0.09 / 42.0)).abs() < 1e-15);
        assert!((v - 1.102).abs() < 1e-3);
        let exact = theta_exact(e(0.01), &cfg()).unwrap();
        assert!((theta_series(e(0.01)) - exact).abs() <= 5e-7);
    }

    #[test]
    fn asymptotic_examples() {
        let v = theta_asymptotic(e(10.0)).unwrap();
        let from_table = (2.611 + 11.00 + LN_2) / PI;
        assert!((v - from_table).abs() < 1e-3);
        assert!((v - 4.569).abs() / 4.569 <= 5e-3);
        // outside its regime it still returns a value
        assert!(theta_asymptotic(e(0.3)).unwrap().is_finite());
    }

    #[test]
    fn period_examples() {
        let unit = RateConfig::equal(1.0).unwrap();
        let p = period(Energy::ZERO, unit, ThetaMethod::Exact, &cfg()).unwrap();
        assert_eq!(p.period, 2.0 * PI);
        let p = period(e(2.0), unit, ThetaMethod::Exact, &cfg()).unwrap();
        assert!((p.period - 10.857).abs() <= 1e-2);
        let fast = period(e(2.0), RateConfig::equal(2.0).unwrap(), ThetaMethod::Exact, &cfg()).unwrap();
        assert!((fast.period - p.period / 2.0).abs() <= 1e-14 * p.period);
        assert!((fast.period - 5.429).abs() <= 1e-2);
    }

    #[test]
    fn period_rejects_unequal_rates() {
        let r = RateConfig::new(2.0, 1.0).unwrap();
        assert!(period(e(1.0), r, ThetaMethod::Exact, &cfg()).is_err());
    }

    #[test]
    fn period_propagates_method_domain_errors() {
        let unit = RateConfig::equal(1.0).unwrap();
        assert!(period(e(1.0), unit, ThetaMethod::Elliptic, &cfg()).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in ThetaMethod::ALL {
            assert_eq!(m.name().parse::<ThetaMethod>().unwrap(), m);
        }
        assert!("bogus".parse::<ThetaMethod>().is_err());
    }
}
