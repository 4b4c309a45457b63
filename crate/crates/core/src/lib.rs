//! Exact solution of the equal-rate Lotka-Volterra predator-prey system.
//!
//! The normalized system `u̇ = u(1 − v)`, `v̇ = v(u − 1)` conserves
//! `h = ½(u + v − ln uv) − 1`. In the coordinates `ξ = ½ln(uv)` and
//! `η = ½ln(v/u)` the orbit of energy `h` is `cosh η = (h + 1 + ξ)e^{−ξ}`, and
//! `ξ(t)` follows from a single quadrature. This crate evaluates that
//! quadrature, inverts it, rebuilds `u(t)` and `v(t)`, and computes the period
//! `T = 2πΘ(h)` in several regimes. An RK4 oracle provides independent
//! reference values.

pub mod appendix;
pub mod error;
pub mod oracle;
pub mod orbit;
pub mod period;
pub mod quadrature;
pub mod species;
pub mod specfun;

pub use error::{Error, Result};
pub use orbit::{Branch, Energy, HybridState, Orbit, OrbitBounds, Phase, RateConfig, SpeciesState};
pub use period::{PeriodResult, ThetaMethod};
pub use quadrature::{QuadratureConfig, TimeSolution};
pub use species::TrajectorySample;
