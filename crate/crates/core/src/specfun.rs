//! Special functions needed by the closed-form solution: inverse hyperbolic
//! cosine, the complete elliptic integral of the first kind, and the
//! exponential integral Ei.

use std::f64::consts::{FRAC_PI_2, LN_2};

use crate::error::{domain, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Arguments this far below 1 are treated as rounding residue and clamped.
pub const ACOSH_CLAMP: f64 = 1e-12;

const AGM_TOL: f64 = 1e-15;
const EI_SERIES_LIMIT: f64 = 40.0;
// Ei(x) ~ e^x / x overflows f64 a little above this.
const EI_OVERFLOW: f64 = 716.0;

/// Inverse hyperbolic cosine on `[1, ∞)`.
///
/// Arguments within [`ACOSH_CLAMP`] below 1 are clamped to 1.
pub fn acosh(x: f64) -> Result<f64> {
    if !(x >= 1.0 - ACOSH_CLAMP) {
        return Err(domain("acosh", format!("argument {x} < 1")));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let x = x.max(1.0);
    if x < 2.0 {
        Ok(acosh_1p(x - 1.0))
    } else if x < 1e8 {
        Ok((x + (x * x - 1.0).sqrt()).ln())
    } else {
        Ok(x.ln() + LN_2)
    }
}

/// `acosh(1 + y)` for `y ≥ 0`, accurate when `y` is tiny.
///
/// Callers that know `U − 1` directly should use this instead of forming
/// `1 + y` and calling [`acosh`].
pub fn acosh_1p(y: f64) -> f64 {
    let y = y.max(0.0);
    if y < 1e8 {
        (y + (y * (y + 2.0)).sqrt()).ln_1p()
    } else {
        (1.0 + y).ln() + LN_2
    }
}

/// Complete elliptic integral of the first kind `K(k)` with modulus `k`.
///
/// Evaluated through the arithmetic-geometric mean
/// `K = π / (2·AGM(1, √(1−k²)))`.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(domain("elliptic_k", format!("modulus {k} outside [0, 1)")));
    }
    let mut a = 1.0_f64;
    // (1−k)(1+k) keeps the complementary modulus accurate as k → 1.
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let mean = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = mean;
    }
    Ok(FRAC_PI_2 / a)
}

/// Exponential integral `Ei(x)` for `x > 0`.
///
/// Uses the convergent power series up to `x = 40` and the asymptotic series,
/// truncated at its smallest term, above.
pub fn ei(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("ei", format!("argument {x} must be positive")));
    }
    if x > EI_OVERFLOW {
        return Err(domain("ei", format!("Ei({x}) overflows")));
    }
    if x <= EI_SERIES_LIMIT {
        Ok(ei_power_series(x))
    } else {
        Ok(ei_asymptotic(x))
    }
}

// γ + ln x + Σ xⁿ/(n·n!); every term is positive for x > 0.
fn ei_power_series(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 1..1000 {
        let n = n as f64;
        term *= x / n;
        let contribution = term / n;
        sum += contribution;
        if contribution <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

// e^x/x · Σ n!/xⁿ, stopped before the terms start growing.
fn ei_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 1.0;
    loop {
        let next = term * n / x;
        if next >= term || next <= f64::EPSILON * 0.25 * sum {
            break;
        }
        sum += next;
        term = next;
        n += 1.0;
    }
    x.exp() / x * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn acosh_at_one_is_zero() {
        assert_eq!(acosh(1.0).unwrap(), 0.0);
    }

    #[test]
    fn acosh_of_e_squared() {
        let x = 2.0_f64.exp();
        let y = acosh(x).unwrap();
        assert!((y.cosh() - x).abs() / x <= 1e-14);
    }

    #[test]
    fn acosh_rejects_below_domain() {
        assert!(matches!(acosh(0.5), Err(crate::Error::Domain { .. })));
        assert!(acosh(f64::NAN).is_err());
    }

    #[test]
    fn acosh_clamps_rounding_residue() {
        assert_eq!(acosh(1.0 - 1e-13).unwrap(), 0.0);
        assert!(acosh(1.0 - 1e-11).is_err());
    }

    #[test]
    fn acosh_near_one_keeps_relative_accuracy() {
        // acosh(1 + y) ≈ √(2y)(1 − y/12) for small y
        let y: f64 = 1e-12;
        let expected = (2.0 * y).sqrt() * (1.0 - y / 12.0);
        assert!((acosh_1p(y) - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn elliptic_k_at_zero() {
        assert_eq!(elliptic_k(0.0).unwrap(), PI / 2.0);
    }

    #[test]
    fn elliptic_k_domain() {
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
    }

    #[test]
    fn ei_domain() {
        assert!(ei(-1.0).is_err());
        assert!(ei(0.0).is_err());
    }

    #[test]
    fn ei_small_argument_leading_term() {
        let x = 1e-8;
        let tail = ei(x).unwrap() - (EULER_GAMMA + x.ln());
        assert!((tail - x).abs() / x < 1e-6, "tail {tail}");
    }

    #[test]
    fn ei_branches_agree_at_split() {
        let below = ei_power_series(40.0);
        let above = ei_asymptotic(40.0);
        assert!((below - above).abs() / below < 1e-10);
    }
}
