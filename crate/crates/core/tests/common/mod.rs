#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use lotka_core::orbit::orbit_bounds;
use lotka_core::Energy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(h, Θ(h), ξ⁻, ξ⁺)` computed offline at 30 digits.
pub const REFERENCE: [(f64, f64, f64, f64); 11] = [
    (0.01, 1.003336104726592, -0.1448347510668347, 0.1381651223793947),
    (0.3, 1.102323942005929, -0.8888868861354237, 0.6862468559702339),
    (0.5, 1.172789289858618, -1.198290437315664, 0.8576766739458991),
    (1.0, 1.35453548436374, -1.841405660436961, 1.146193220620583),
    (2.0, 1.728524694102964, -2.947530902542285, 1.505241495792883),
    (3.0, 2.101591366142561, -3.981339370911317, 1.749031386012702),
    (4.0, 2.468245863068801, -4.993216188647903, 1.936847407220219),
    (5.0, 2.828603654780541, -5.997515080664851, 2.090717405155485),
    (7.0, 3.534972086096055, -7.999664424780262, 2.335593630314842),
    (10.0, 4.571006212043202, -10.99998329802026, 2.610868638149876),
    (20.0, 7.928829383715523, -20.99999999924174, 3.185764204040805),
];

pub fn energy(h: f64) -> Energy {
    Energy::new(h).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Θ(h) with `x = c − w·cos φ`, which turns the square-root endpoint
/// singularities into a smooth even integrand in `φ`; midpoint rule.
pub fn theta_oracle(h: f64) -> f64 {
    let b = orbit_bounds(energy(h)).unwrap();
    let c = 0.5 * (b.xi_minus + b.xi_plus);
    let w = 0.5 * (b.xi_plus - b.xi_minus);
    let n = 4000;
    let step = PI / n as f64;
    let sum: f64 = (0..n)
        .map(|i| {
            let phi = (i as f64 + 0.5) * step;
            let x = c - w * phi.cos();
            let s = h + 1.0 + x;
            let r = (s - x.exp()) * (s + x.exp());
            w * phi.sin() / r.sqrt()
        })
        .sum();
    sum * step / PI
}

/// Ei(x) = γ + ln x + ∫₀ˣ (eᵗ − 1)/t dt, composite Simpson.
pub fn ei_oracle(x: f64) -> f64 {
    let n = 200_000;
    let step = x / n as f64;
    let f = |t: f64| if t == 0.0 { 1.0 } else { t.exp_m1() / t };
    let mut sum = f(0.0) + f(x);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * step);
    }
    0.577_215_664_901_532_9 + x.ln() + sum * step / 3.0
}

/// K(k) = ∫₀^{π/2} dθ/√(1 − k²sin²θ) by the trapezoid rule, which is
/// spectrally accurate for this periodic integrand.
pub fn elliptic_k_oracle(k: f64) -> f64 {
    let n = 2000;
    let step = FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt();
    let inner: f64 = (1..n).map(|i| f(i as f64 * step)).sum();
    step * (0.5 * (f(0.0) + f(FRAC_PI_2)) + inner)
}
