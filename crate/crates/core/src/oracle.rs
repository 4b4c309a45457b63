//! Fixed-step RK4 reference solutions.
//!
//! These integrate the original coupled system and the one-dimensional
//! equation for `ξ` directly, without using any of the quadrature machinery,
//! so they serve as independent ground truth for the closed-form solution.

use std::time::Instant;

use crate::error::{domain, Error, Result};
use crate::orbit::{orbit_bounds, Energy, Orbit, SpeciesState};
use crate::species::TrajectorySample;

const DEADLINE_CHECK_EVERY: usize = 1024;
/// Turning-point switch times are refined to this fraction of `dt`.
const SWITCH_RESOLUTION: f64 = 1e-3;
const STALL_LIMIT: usize = 16;
// Grid steps on either side of a turning point covered by the local model.
const MODEL_STEPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub max_steps: usize,
    /// Cooperative cancellation point; checked every 1024 steps.
    pub deadline: Option<Instant>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: 1e-4,
            max_steps: 10_000_000,
            deadline: None,
        }
    }
}

impl IntegratorConfig {
    pub fn new(dt: f64, max_steps: usize) -> Result<Self> {
        if !(dt > 0.0 && dt <= 1e-2) {
            return Err(domain("integrator_config", format!("dt = {dt} outside (0, 1e-2]")));
        }
        if max_steps == 0 {
            return Err(domain("integrator_config", "max_steps must be positive"));
        }
        Ok(IntegratorConfig {
            dt,
            max_steps,
            deadline: None,
        })
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    fn check_deadline(&self, step: usize, t: f64) -> Result<()> {
        if step.is_multiple_of(DEADLINE_CHECK_EVERY) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Interrupted { t });
                }
            }
        }
        Ok(())
    }

    fn check_steps(&self, requested: usize) -> Result<()> {
        if requested > self.max_steps {
            return Err(Error::StepLimit {
                requested,
                max_steps: self.max_steps,
            });
        }
        Ok(())
    }
}

fn lv_field(u: f64, v: f64) -> (f64, f64) {
    (u * (1.0 - v), v * (u - 1.0))
}

/// One classic RK4 step of `u̇ = u(1 − v)`, `v̇ = v(u − 1)`.
pub fn lv_step(u: f64, v: f64, dt: f64) -> (f64, f64) {
    let (k1u, k1v) = lv_field(u, v);
    let (k2u, k2v) = lv_field(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
    let (k3u, k3v) = lv_field(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
    let (k4u, k4v) = lv_field(u + dt * k3u, v + dt * k3v);
    (
        u + dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
        v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

fn checked_state(u: f64, v: f64, t: f64) -> Result<SpeciesState> {
    if u.is_finite() && v.is_finite() && u > 0.0 && v > 0.0 {
        Ok(SpeciesState { u, v })
    } else {
        Err(Error::NonFinite { t })
    }
}

/// `n_steps` RK4 steps of size `cfg.dt`; returns `n_steps + 1` samples
/// including the start.
pub fn integrate_lv(
    start: SpeciesState,
    cfg: &IntegratorConfig,
    n_steps: usize,
) -> Result<Vec<TrajectorySample>> {
    integrate_lv_strided(start, cfg, n_steps, 1)
}

/// Like [`integrate_lv`] but keeps only every `stride`-th sample (and the
/// last one).
pub fn integrate_lv_strided(
    start: SpeciesState,
    cfg: &IntegratorConfig,
    n_steps: usize,
    stride: usize,
) -> Result<Vec<TrajectorySample>> {
    let start = SpeciesState::new(start.u, start.v)?;
    cfg.check_steps(n_steps)?;
    let stride = stride.max(1);
    let mut out = Vec::with_capacity(n_steps / stride + 2);
    out.push(TrajectorySample::from_populations(0.0, start)?);
    let (mut u, mut v) = (start.u, start.v);
    for step in 1..=n_steps {
        let t = step as f64 * cfg.dt;
        cfg.check_deadline(step, t)?;
        (u, v) = lv_step(u, v, cfg.dt);
        let s = checked_state(u, v, t)?;
        if step % stride == 0 || step == n_steps {
            out.push(TrajectorySample::from_populations(t, s)?);
        }
    }
    Ok(out)
}

/// Samples at the given nondecreasing times `≥ 0`.
///
/// Each gap between requested times is split into equal steps no longer than
/// `cfg.dt`, so every sample lands exactly on its time.
pub fn integrate_lv_at(
    start: SpeciesState,
    cfg: &IntegratorConfig,
    times: &[f64],
) -> Result<Vec<TrajectorySample>> {
    let start = SpeciesState::new(start.u, start.v)?;
    let mut out = Vec::with_capacity(times.len());
    let (mut u, mut v) = (start.u, start.v);
    let mut t = 0.0;
    let mut total = 0usize;
    for &target in times {
        if !(target >= t) || !target.is_finite() {
            return Err(domain(
                "integrate_lv_at",
                format!("sample times must be finite, nondecreasing and >= 0 (got {target} after {t})"),
            ));
        }
        let gap = target - t;
        let n = (gap / cfg.dt).ceil() as usize;
        total += n;
        cfg.check_steps(total)?;
        if n > 0 {
            let h = gap / n as f64;
            for i in 1..=n {
                cfg.check_deadline(total - n + i, t + i as f64 * h)?;
                (u, v) = lv_step(u, v, h);
                checked_state(u, v, t + i as f64 * h)?;
            }
        }
        t = target;
        out.push(TrajectorySample::from_populations(t, SpeciesState { u, v })?);
    }
    Ok(out)
}

/// A moment where `ξ` reaches one of its turning points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint {
    pub t: f64,
    pub xi: f64,
    /// `true` at `ξ⁺`, `false` at `ξ⁻`.
    pub upper: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct XiTrajectory {
    /// Every accepted state `(t, ξ)`, including the turning points.
    pub samples: Vec<(f64, f64)>,
    pub turning_points: Vec<TurningPoint>,
}

// Local model of the radicand near a turning point r: with d the distance
// into the orbit, R ≈ a·d + b·d², a = |R'(r)|, b = R''(r)/2.
#[derive(Debug, Clone, Copy)]
struct LocalModel {
    a: f64,
    b: f64,
}

impl LocalModel {
    fn at(root: f64) -> Self {
        let e = root.exp();
        LocalModel {
            a: (2.0 * e * root.exp_m1()).abs(),
            b: 1.0 - 2.0 * e * e,
        }
    }

    // Time to travel between the turning point and distance d.
    fn time_to(&self, d: f64) -> f64 {
        let LocalModel { a, b } = *self;
        if b > 0.0 {
            2.0 / b.sqrt() * (b * d / a).sqrt().asinh()
        } else if b < 0.0 {
            2.0 / (-b).sqrt() * (-b * d / a).sqrt().min(1.0).asin()
        } else {
            2.0 * (d / a).sqrt()
        }
    }

    // Distance reached a time s after leaving the turning point.
    fn distance_after(&self, s: f64) -> f64 {
        let LocalModel { a, b } = *self;
        if b > 0.0 {
            a / b * (0.5 * b.sqrt() * s).sinh().powi(2)
        } else if b < 0.0 {
            a / -b * (0.5 * (-b).sqrt() * s).min(std::f64::consts::FRAC_PI_2).sin().powi(2)
        } else {
            0.25 * a * s * s
        }
    }
}

// ξ held as an offset from one of the roots, so that distances to the turning
// point being approached keep full relative precision. The anchor moves to
// the nearer root when ξ crosses the maximum of U at −h.
#[derive(Debug, Clone, Copy, PartialEq)]
struct XiState {
    upper: bool,
    d: f64,
}

struct XiStepper {
    orbit: Orbit,
}

impl XiStepper {
    fn root(&self, upper: bool) -> f64 {
        let b = self.orbit.bounds();
        if upper {
            b.xi_plus
        } else {
            b.xi_minus
        }
    }

    fn xi(&self, s: XiState) -> f64 {
        self.root(s.upper) + s.d
    }

    fn rebase(&self, s: XiState) -> XiState {
        let upper = self.xi(s) > -self.orbit.energy().value();
        if upper == s.upper {
            s
        } else {
            XiState {
                upper,
                d: (self.root(s.upper) - self.root(upper)) + s.d,
            }
        }
    }

    fn radicand(&self, upper: bool, d: f64) -> f64 {
        let gap = if upper {
            self.orbit.gap_from_plus(d)
        } else {
            self.orbit.gap_from_minus(d)
        };
        gap * (gap + 2.0 * (self.root(upper) + d).exp())
    }

    // One RK4 step of ξ̇ = sign·√R, or None if any stage leaves the orbit.
    fn step(&self, s: XiState, sign: f64, dt: f64) -> Option<XiState> {
        let f = |d: f64| {
            let r = self.radicand(s.upper, d);
            (r >= 0.0).then(|| sign * r.sqrt())
        };
        let k1 = f(s.d)?;
        let k2 = f(s.d + 0.5 * dt * k1)?;
        let k3 = f(s.d + 0.5 * dt * k2)?;
        let k4 = f(s.d + dt * k3)?;
        let d = s.d + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        (self.radicand(s.upper, d) >= 0.0).then_some(XiState { upper: s.upper, d })
    }
}

/// RK4 on `ξ̇ = ±√((h+1+ξ)² − e^{2ξ})` from `ξ(0) = ξ⁻` on the rising branch.
///
/// Within `MODEL_STEPS` grid steps of a turning point the local quadratic model
/// of the radicand replaces RK4, whose stages lose accuracy where `√R` is not
/// Lipschitz. A step whose trial stages still leave the orbit is bisected down
/// to `dt·1e−3` and the remaining distance is covered with the same model.
pub fn integrate_xi(h: Energy, cfg: &IntegratorConfig, n_steps: usize) -> Result<XiTrajectory> {
    h.positive("integrate_xi")?;
    cfg.check_steps(n_steps)?;
    let stepper = XiStepper { orbit: Orbit::new(h)? };
    let dt = cfg.dt;
    let t_end = n_steps as f64 * dt;
    let horizon = MODEL_STEPS as f64 * dt;

    let mut out = XiTrajectory::default();
    let mut grid = 0usize;
    let mut stalled = 0usize;
    let mut state = XiState { upper: false, d: 0.0 };
    let mut sign = 1.0;
    let mut t_tp = 0.0;
    out.turning_points.push(TurningPoint {
        t: 0.0,
        xi: stepper.root(false),
        upper: false,
    });
    out.samples.push((0.0, stepper.root(false)));

    loop {
        // leave the last turning point along the model
        let upper = !(sign > 0.0);
        while grid < n_steps && (grid + 1) as f64 * dt <= t_tp + horizon {
            grid += 1;
            let t = grid as f64 * dt;
            state = leave_turning_point(&stepper, upper, t - t_tp);
            out.samples.push((t, stepper.xi(state)));
        }

        // RK4 until the next turning point is within reach of the model
        let approaching = sign > 0.0;
        let model = LocalModel::at(stepper.root(approaching));
        let next_tp = loop {
            if grid >= n_steps {
                return Ok(out);
            }
            let t = grid as f64 * dt;
            cfg.check_deadline(grid, t)?;
            if state.upper == approaching {
                let remaining = model.time_to(state.d.abs());
                if remaining <= horizon {
                    break t + remaining;
                }
            }
            match stepper.step(state, sign, dt) {
                Some(next) => {
                    stalled = if next == state { stalled + 1 } else { 0 };
                    if stalled > STALL_LIMIT {
                        return Err(Error::NotDetected {
                            what: "turning point",
                            max_steps: grid,
                        });
                    }
                    state = stepper.rebase(next);
                    grid += 1;
                    out.samples.push((grid as f64 * dt, stepper.xi(state)));
                }
                None => {
                    let (lo, reached) = bisect_switch(&stepper, state, sign, dt);
                    let root = stepper.root(approaching);
                    let remaining = if reached.upper == approaching {
                        reached.d.abs()
                    } else {
                        (root - stepper.xi(reached)).abs()
                    };
                    break t + lo + model.time_to(remaining);
                }
            }
        };

        // arrive along the model
        let root = stepper.root(approaching);
        while grid < n_steps && ((grid + 1) as f64 * dt) < next_tp {
            grid += 1;
            let t = grid as f64 * dt;
            let d = model.distance_after(next_tp - t);
            state = XiState {
                upper: approaching,
                d: if approaching { -d } else { d },
            };
            out.samples.push((t, stepper.xi(state)));
        }
        if next_tp > t_end {
            return Ok(out);
        }
        out.turning_points.push(TurningPoint {
            t: next_tp,
            xi: root,
            upper: approaching,
        });
        out.samples.push((next_tp, root));
        sign = -sign;
        t_tp = next_tp;
    }
}

fn leave_turning_point(stepper: &XiStepper, upper: bool, s: f64) -> XiState {
    let d = LocalModel::at(stepper.root(upper)).distance_after(s);
    stepper.rebase(XiState {
        upper,
        d: if upper { -d } else { d },
    })
}

// Longest sub-step (to dt·1e−3) that stays on the orbit, and where it ends.
fn bisect_switch(stepper: &XiStepper, start: XiState, sign: f64, step: f64) -> (f64, XiState) {
    let (mut lo, mut hi) = (0.0, step);
    let mut reached = start;
    while hi - lo > SWITCH_RESOLUTION * step {
        let mid = 0.5 * (lo + hi);
        match stepper.step(start, sign, mid) {
            Some(s) => {
                lo = mid;
                reached = s;
            }
            None => hi = mid,
        }
    }
    (lo, reached)
}

/// Period from RK4 return time to the section `{u = v, u < 1}`.
///
/// Starts at `u = v = e^{ξ⁻}` and stops at the first crossing of `v − u`
/// from positive to nonpositive below the fixed point; the crossing time is
/// interpolated linearly.
pub fn measure_period(h: Energy, cfg: &IntegratorConfig) -> Result<f64> {
    h.positive("measure_period")?;
    let start = orbit_bounds(h)?.xi_minus.exp();
    let (mut u, mut v) = (start, start);
    let mut g_prev = 0.0;
    for step in 1..=cfg.max_steps {
        let t = step as f64 * cfg.dt;
        cfg.check_deadline(step, t)?;
        (u, v) = lv_step(u, v, cfg.dt);
        checked_state(u, v, t)?;
        let g = v - u;
        if g_prev > 0.0 && g <= 0.0 && u < 1.0 {
            return Ok(t - cfg.dt * g / (g - g_prev));
        }
        g_prev = g;
    }
    Err(Error::NotDetected {
        what: "return to the u = v section",
        max_steps: cfg.max_steps,
    })
}
