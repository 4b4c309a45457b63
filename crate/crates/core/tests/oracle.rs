mod common;

use std::f64::consts::PI;

use common::{energy, rel};
use lotka_core::oracle::{integrate_lv, integrate_lv_strided, integrate_xi, IntegratorConfig};
use lotka_core::orbit::orbit_bounds;
use lotka_core::period::theta_exact;
use lotka_core::{QuadratureConfig, SpeciesState, TimeSolution};

fn start(h: f64) -> SpeciesState {
    let x = orbit_bounds(energy(h)).unwrap().xi_minus.exp();
    SpeciesState::new(x, x).unwrap()
}

fn drift(h: f64, dt: f64) -> f64 {
    let period = 2.0 * PI * theta_exact(energy(h), &QuadratureConfig::default()).unwrap();
    let n = (period / dt).ceil() as usize;
    integrate_lv_strided(start(h), &IntegratorConfig::new(dt, 10_000_000).unwrap(), n, 1)
        .unwrap()
        .iter()
        .map(|s| (s.h_check - h).abs())
        .fold(0.0, f64::max)
}

#[test]
fn energy_drift_is_fourth_order() {
    // at small h the drift is already at rounding level for dt = 1e-3
    for h in [2.0, 5.0] {
        let d = [drift(h, 1e-3), drift(h, 5e-4), drift(h, 2.5e-4)];
        for w in d.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 16.0).abs() <= 4.0, "h = {h}: drifts {d:?}");
        }
    }
}

#[test]
fn returns_to_start_after_one_period() {
    let h = 2.0;
    let period = 2.0 * PI * theta_exact(energy(h), &QuadratureConfig::default()).unwrap();
    let ic = IntegratorConfig::new(1e-5, 10_000_000).unwrap();
    let s = lotka_core::oracle::integrate_lv_at(start(h), &ic, &[period]).unwrap();
    let s0 = start(h);
    assert!(rel(s[0].u, s0.u) <= 1e-6 && rel(s[0].v, s0.v) <= 1e-6, "{:?}", s[0]);
}

#[test]
fn eta_rate_is_xi_plus_h() {
    // η̇ = ½(u + v) − 1, which is ξ + h on the orbit
    let h = 2.0;
    let dt = 1e-4;
    let run = integrate_lv(start(h), &IntegratorConfig::new(dt, 10_000_000).unwrap(), 100_000).unwrap();
    for i in (1..run.len() - 1).step_by(997) {
        let fd = (run[i + 1].eta - run[i - 1].eta) / (2.0 * dt);
        let target = run[i].xi + h;
        if target.abs() < 1e-2 {
            continue;
        }
        assert!(rel(fd, target) <= 1e-4, "t = {}: {fd} vs {target}", run[i].t);
    }
}

#[test]
fn xi_run_agrees_with_coupled_run() {
    let h = 2.0;
    let dt = 1e-5;
    let n = 1_200_000;
    let xi_run = integrate_xi(energy(h), &IntegratorConfig::new(dt, 10_000_000).unwrap(), n).unwrap();
    let lv = integrate_lv_strided(start(h), &IntegratorConfig::new(dt, 10_000_000).unwrap(), n, 100).unwrap();
    let mut compared = 0;
    let mut j = 0;
    for s in &lv {
        while j < xi_run.samples.len() && xi_run.samples[j].0 < s.t - 0.5 * dt {
            j += 1;
        }
        if let Some(&(t, xi)) = xi_run.samples.get(j) {
            if (t - s.t).abs() < 1e-9 {
                assert!((xi - s.xi).abs() <= 1e-5, "t = {t}: {xi} vs {}", s.xi);
                compared += 1;
            }
        }
    }
    assert!(compared > 10_000, "only {compared} shared grid points");
}

#[test]
fn xi_run_agrees_with_inverted_quadrature() {
    for h in [0.05, 2.0, 10.0, 20.0] {
        let sol = TimeSolution::new(energy(h), QuadratureConfig::default()).unwrap();
        let dt = 1e-5;
        let n = (1.2 * sol.period() / dt).ceil() as usize;
        let run = integrate_xi(energy(h), &IntegratorConfig::new(dt, 10_000_000).unwrap(), n).unwrap();
        assert_eq!(run.turning_points.len(), 3, "h = {h}");
        let worst = run
            .samples
            .iter()
            .step_by(run.samples.len() / 2000)
            .map(|&(t, xi)| (sol.xi_of_time(t).unwrap().0 - xi).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "h = {h}: max deviation {worst:e}");
        for tp in &run.turning_points[1..] {
            let expected = if tp.upper { sol.t_star() } else { sol.period() };
            assert!((tp.t - expected).abs() <= 1e-7 * expected, "h = {h}: {tp:?}");
        }
    }
}

#[test]
fn xi_maxima_are_one_period_apart() {
    let h = energy(2.0);
    let run = integrate_xi(h, &IntegratorConfig::new(1e-4, 10_000_000).unwrap(), 250_000).unwrap();
    let tops: Vec<f64> = run.turning_points.iter().filter(|p| p.upper).map(|p| p.t).collect();
    assert!(tops.len() >= 2);
    assert!(rel(tops[1] - tops[0], 2.0 * PI * 1.728) <= 1e-3);
}
