mod common;

use common::{energy, rel};
use lotka_core::oracle::{integrate_lv_at, IntegratorConfig};
use lotka_core::species::sample_trajectory;
use lotka_core::{QuadratureConfig, SpeciesState, TimeSolution};
use rand::Rng;

fn sol(h: f64) -> TimeSolution {
    TimeSolution::new(energy(h), QuadratureConfig::default()).unwrap()
}

// h + 1 + ξ for the given floats, with the rounding of h + 1 carried along
fn half_sum(h: f64, xi: f64) -> f64 {
    let s = h + 1.0;
    let err = (h - (s - 1.0)) + (1.0 - (s - (s - 1.0)));
    (s + xi) + err
}

// Beyond h ≈ 10 one ulp of h + 1 is a relative 1e-10 of h + 1 + ξ⁻ ≈ e^{ξ⁻},
// so the sum identity is sampled over the same energies as the other checks.
#[test]
fn conservation_and_identities_at_random_times() {
    let mut rng = common::rng(7);
    for _ in 0..1000 {
        let h: f64 = rng.random_range(0.05..=10.0);
        let s = sol(h);
        let t = rng.random_range(0.0..3.0) * s.period();
        let p = s.sample_at(t).unwrap();
        assert!((p.h_check - h).abs() <= 1e-8, "h = {h}, t = {t}: {}", p.h_check);
        assert!(rel(p.u * p.v, (2.0 * p.xi).exp()) <= 1e-10, "h = {h}, t = {t}");
        assert!(rel(p.u + p.v, 2.0 * half_sum(h, p.xi)) <= 1e-10, "h = {h}, t = {t}");

        let d = rng.random_range(0.0..1.0) * s.t_star();
        let before = s.populations_at(s.t_star() - d).unwrap();
        let after = s.populations_at(s.t_star() + d).unwrap();
        assert!(rel(after.u, before.v) <= 1e-8, "h = {h}, s = {d}");
        assert!(rel(after.v, before.u) <= 1e-8, "h = {h}, s = {d}");
    }
}

#[test]
fn matches_rk4_over_one_period() {
    for h in [0.5, 2.0, 5.0] {
        let s = sol(h);
        let times: Vec<f64> = (0..100).map(|i| s.period() * i as f64 / 100.0).collect();
        let start = s.orbit().bounds().xi_minus.exp();
        let rk = integrate_lv_at(
            SpeciesState::new(start, start).unwrap(),
            &IntegratorConfig::new(1e-5, 10_000_000).unwrap(),
            &times,
        )
        .unwrap();
        for (&t, r) in times.iter().zip(&rk) {
            let a = s.populations_at(t).unwrap();
            assert!(rel(a.u, r.u) <= 1e-5 && rel(a.v, r.v) <= 1e-5, "h = {h}, t = {t}");
        }
    }
}

#[test]
fn prey_peak_sits_where_predators_cross_one() {
    let samples = sample_trajectory(energy(2.0), 1001, 1.0, &QuadratureConfig::default()).unwrap();
    let peak = samples.iter().max_by(|a, b| a.u.total_cmp(&b.u)).unwrap();
    assert!((peak.u - 6.94).abs() <= 1e-2, "{peak:?}");
    assert!((peak.v - 1.0).abs() <= 1e-2, "{peak:?}");
}

#[test]
fn sampling_is_uniform_in_time() {
    let s = sol(1.0);
    let samples = s.sample_trajectory(11, 2.5).unwrap();
    let span = 2.5 * s.period();
    for (i, p) in samples.iter().enumerate() {
        assert!((p.t - span * i as f64 / 10.0).abs() <= 1e-12 * span);
    }
}
