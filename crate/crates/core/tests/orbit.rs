mod common;

use common::{energy, rel, REFERENCE};
use lotka_core::orbit::{
    aux_u, energy_from_populations, hybrid_from_populations, orbit_bounds, populations_from_hybrid,
};
use lotka_core::{Branch, HybridState, Orbit, SpeciesState};
use proptest::prelude::*;

fn residual(x: f64, h: f64) -> f64 {
    (x.exp() - x - 1.0 - h).abs()
}

#[test]
fn roots_solve_the_turning_point_equation() {
    for &(h, _, lo, hi) in &REFERENCE {
        let b = orbit_bounds(energy(h)).unwrap();
        assert!(residual(b.xi_minus, h) <= 1e-12, "h = {h}");
        assert!(residual(b.xi_plus, h) <= 1e-12, "h = {h}");
        assert!((b.xi_minus - lo).abs() <= 1e-12 * lo.abs().max(1.0), "h = {h}");
        assert!((b.xi_plus - hi).abs() <= 1e-12, "h = {h}");
    }
}

#[test]
fn roots_match_printed_reference_values() {
    let printed = [
        (0.3, -0.889, 0.686),
        (0.5, -1.198, 0.858),
        (1.0, -1.841, 1.146),
        (2.0, -2.948, 1.505),
        (3.0, -3.981, 1.749),
        (5.0, -5.998, 2.091),
        (7.0, -8.000, 2.336),
        (10.0, -11.00, 2.611),
    ];
    for (h, lo, hi) in printed {
        let b = orbit_bounds(energy(h)).unwrap();
        let tol_lo = if lo < -7.5 { 1e-2 } else { 1e-3 };
        assert!((b.xi_minus - lo).abs() <= tol_lo, "h = {h}: {}", b.xi_minus);
        assert!((b.xi_plus - hi).abs() <= 1e-3, "h = {h}: {}", b.xi_plus);
    }
}

#[test]
fn tiny_energies_use_the_quadratic_roots() {
    let b = orbit_bounds(energy(1e-10)).unwrap();
    let r = (2e-10f64).sqrt();
    assert_eq!((b.xi_minus, b.xi_plus), (-r, r));
    let b = orbit_bounds(energy(0.0)).unwrap();
    assert_eq!((b.xi_minus, b.xi_plus), (0.0, 0.0));
}

#[test]
fn aux_u_peaks_at_minus_h() {
    for h in [0.3, 1.0, 2.0, 5.0, 10.0] {
        let e = energy(h);
        let top = aux_u(-h, e);
        assert!(rel(top, h.exp()) <= 1e-14, "h = {h}");
        assert!(aux_u(-h - 1e-3, e) < top && aux_u(-h + 1e-3, e) < top);
    }
}

#[test]
fn energy_is_recovered_from_the_prey_peak() {
    let h = energy_from_populations(SpeciesState::new(6.94, 1.0).unwrap()).unwrap();
    assert!((h.value() - 2.0).abs() <= 1e-2);
    let start = orbit_bounds(energy(2.0)).unwrap().xi_minus.exp();
    let h = energy_from_populations(SpeciesState::new(start, start).unwrap()).unwrap();
    assert!((h.value() - 2.0).abs() <= 1e-12);
}

#[test]
fn orbit_eta_matches_free_function_inside() {
    let e = energy(3.0);
    let orbit = Orbit::new(e).unwrap();
    let b = orbit.bounds();
    for i in 1..20 {
        let xi = b.xi_minus + b.width() * i as f64 / 20.0;
        let direct = lotka_core::specfun::acosh(aux_u(xi, e)).unwrap();
        assert!(rel(orbit.eta(xi, Branch::Plus).unwrap(), direct) <= 1e-10);
    }
}

proptest! {
    #[test]
    fn aux_u_is_one_at_both_roots(h in 1e-6f64..50.0) {
        let e = energy(h);
        let b = orbit_bounds(e).unwrap();
        prop_assert!((aux_u(b.xi_minus, e) - 1.0).abs() <= 1e-10, "lower root, h = {}", h);
        prop_assert!((aux_u(b.xi_plus, e) - 1.0).abs() <= 1e-10, "upper root, h = {}", h);
    }

    #[test]
    fn roots_bracket_zero(h in 1e-9f64..60.0) {
        let b = orbit_bounds(energy(h)).unwrap();
        prop_assert!(b.xi_minus < 0.0 && 0.0 < b.xi_plus);
        prop_assert!(residual(b.xi_minus, h) <= 1e-12);
        prop_assert!(residual(b.xi_plus, h) <= 1e-12);
    }

    #[test]
    fn hybrid_round_trip(xi in -10.0f64..3.0, eta in -5.0f64..5.0) {
        let s = populations_from_hybrid(HybridState { xi, eta });
        let back = hybrid_from_populations(s).unwrap();
        let again = populations_from_hybrid(back);
        prop_assert!(rel(again.u, s.u) <= 1e-14 && rel(again.v, s.v) <= 1e-14);
        prop_assert!((back.xi - xi).abs() <= 1e-14 * xi.abs().max(1.0));
        prop_assert!((back.eta - eta).abs() <= 1e-14 * eta.abs().max(1.0));
    }

    #[test]
    fn energy_is_constant_along_the_orbit(h in 0.01f64..15.0, frac in 0.0f64..=1.0, upper in any::<bool>()) {
        let e = energy(h);
        let orbit = Orbit::new(e).unwrap();
        let b = orbit.bounds();
        let xi = b.xi_minus + frac * b.width();
        let branch = if upper { Branch::Plus } else { Branch::Minus };
        let eta = orbit.eta(xi, branch).unwrap();
        let s = populations_from_hybrid(HybridState { xi, eta });
        let back = energy_from_populations(s).unwrap().value();
        prop_assert!((back - h).abs() <= 1e-10, "h = {}, xi = {}, got {}", h, xi, back);
    }

    #[test]
    fn eta_satisfies_the_orbit_equation(h in 0.01f64..8.0, frac in 0.0f64..=1.0) {
        let e = energy(h);
        let orbit = Orbit::new(e).unwrap();
        let b = orbit.bounds();
        let xi = b.xi_minus + frac * b.width();
        let eta = orbit.eta(xi, Branch::Plus).unwrap();
        prop_assert!(rel(eta.cosh(), aux_u(xi, e)) <= 1e-10);
    }
}
