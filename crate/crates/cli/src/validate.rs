use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use lotka_core::appendix::{p0_integral, LowerLimitVariant};
use lotka_core::oracle::{integrate_lv_at, integrate_lv_strided, integrate_xi, measure_period, IntegratorConfig};
use lotka_core::{Energy, Error, SpeciesState, TimeSolution};

use crate::commands::Settings;
use crate::error::CliError;
use crate::output::{format_sig, Cell, Report, SUMMARY_DIGITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

struct Check {
    name: &'static str,
    measured: f64,
    tolerance: f64,
    detail: String,
}

impl Check {
    fn new(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Check {
            name,
            measured,
            tolerance,
            detail: String::new(),
        }
    }

    fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct Suite {
    h: f64,
    level: Level,
    sol: TimeSolution,
    integ: IntegratorConfig,
    deadline: Instant,
}

impl Suite {
    fn samples(&self) -> usize {
        match self.level {
            Level::Quick => 201,
            Level::Full => 2001,
        }
    }

    // Finer steps for the full level, never coarser than requested.
    fn oracle_config(&self) -> IntegratorConfig {
        let mut c = self.integ;
        if self.level == Level::Full {
            c.dt = c.dt.min(1e-5);
        }
        c
    }

    fn check_time(&self) -> Result<(), Error> {
        if Instant::now() >= self.deadline {
            return Err(Error::Interrupted { t: 0.0 });
        }
        Ok(())
    }

    fn start(&self) -> SpeciesState {
        let x = self.sol.orbit().bounds().xi_minus.exp();
        SpeciesState { u: x, v: x }
    }

    fn conservation(&self) -> Result<Check, Error> {
        let worst = self
            .sol
            .sample_trajectory(self.samples(), 1.0)?
            .iter()
            .map(|p| (p.h_check - self.h).abs())
            .fold(0.0, f64::max);
        let mut c = Check::new("energy conservation (exact)", worst, 1e-8);
        c.detail = format!("max |h_check - h| over {} samples", self.samples());
        Ok(c)
    }

    fn oracle_energy(&self) -> Result<Check, Error> {
        let cfg = self.integ;
        let n = (self.sol.period() / cfg.dt).ceil() as usize;
        let worst = integrate_lv_strided(self.start(), &cfg, n, 1)?
            .iter()
            .map(|p| (p.h_check - self.h).abs())
            .fold(0.0, f64::max);
        let mut c = Check::new("energy conservation (rk4)", worst, 1e-8);
        c.detail = format!("max drift over one period, dt = {}", cfg.dt);
        Ok(c)
    }

    fn symmetry(&self) -> Result<Check, Error> {
        let t_star = self.sol.t_star();
        let n = self.samples();
        let mut worst: f64 = 0.0;
        for i in 1..n {
            let s = t_star * i as f64 / n as f64;
            let before = self.sol.populations_at(t_star - s)?;
            let after = self.sol.populations_at(t_star + s)?;
            worst = worst.max(rel(after.u, before.v)).max(rel(after.v, before.u));
        }
        let mut c = Check::new("half-period symmetry", worst, 1e-8);
        c.detail = "max relative |u(t*+s) - v(t*-s)|, |v(t*+s) - u(t*-s)|".into();
        Ok(c)
    }

    fn trajectory_oracle(&self) -> Result<Check, Error> {
        let cfg = self.oracle_config();
        let times: Vec<f64> = (0..100).map(|i| self.sol.period() * i as f64 / 100.0).collect();
        let rk = integrate_lv_at(self.start(), &cfg, &times)?;
        let mut worst: f64 = 0.0;
        for (&t, r) in times.iter().zip(&rk) {
            let a = self.sol.populations_at(t)?;
            worst = worst.max(rel(a.u, r.u)).max(rel(a.v, r.v));
        }
        let mut c = Check::new("trajectory vs rk4", worst, 1e-5);
        c.detail = format!("max relative deviation at 100 times, dt = {}", cfg.dt);
        Ok(c)
    }

    fn period(&self) -> Result<Check, Error> {
        let cfg = self.oracle_config();
        let measured = measure_period(Energy::new(self.h)?, &cfg)?;
        let predicted = 2.0 * PI * self.sol.theta();
        let tolerance = if cfg.dt <= 1e-5 { 1e-4 } else { 1e-3 };
        let mut c = Check::new("period vs rk4", rel(measured, predicted), tolerance);
        c.detail = format!(
            "measured {}, predicted {}, dt = {}",
            format_sig(measured, SUMMARY_DIGITS),
            format_sig(predicted, SUMMARY_DIGITS),
            cfg.dt
        );
        Ok(c)
    }

    fn xi_oracle(&self) -> Result<Check, Error> {
        let cfg = self.oracle_config();
        let n = (1.2 * self.sol.period() / cfg.dt).ceil() as usize;
        let run = integrate_xi(Energy::new(self.h)?, &cfg, n)?;
        let mut worst: f64 = 0.0;
        for &(t, xi) in run.samples.iter().step_by((run.samples.len() / 2000).max(1)) {
            worst = worst.max((self.sol.xi_of_time(t)?.0 - xi).abs());
        }
        let mut c = Check::new("xi vs rk4", worst, 1e-5);
        c.detail = format!(
            "max |xi - xi_rk4|, {} turning points, dt = {}",
            run.turning_points.len(),
            cfg.dt
        );
        Ok(c)
    }

    fn lower_limit(&self) -> Result<Check, Error> {
        let e = Energy::new(self.h)?;
        let b = self.sol.orbit().bounds();
        let (mut antiderivative, mut printed) = (0.0f64, 0.0f64);
        for xi in [0.0, b.xi_plus] {
            let r = p0_integral(xi, e, self.sol.config())?;
            antiderivative = antiderivative.max(r.discrepancy(LowerLimitVariant::Antiderivative));
            printed = printed.max(r.discrepancy(LowerLimitVariant::Printed));
        }
        let (best, measured) = if antiderivative <= printed {
            (LowerLimitVariant::Antiderivative, antiderivative)
        } else {
            (LowerLimitVariant::Printed, printed)
        };
        let mut c = Check::new("p0 lower limit", measured, 1e-10);
        c.detail = format!(
            "{} {best}; antiderivative off by {}, printed off by {}",
            if c.passed() { "matches" } else { "closest" },
            format_sig(antiderivative, SUMMARY_DIGITS),
            format_sig(printed, SUMMARY_DIGITS)
        );
        Ok(c)
    }
}

pub fn run(
    h: f64,
    level: Level,
    time_limit: f64,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain {
            op: "validate",
            detail: format!("needs a nondegenerate orbit, h > 0 (got {h})"),
        }
        .into());
    }
    if !(time_limit > 0.0 && time_limit.is_finite()) {
        return Err(Error::Domain {
            op: "validate",
            detail: format!("time limit must be positive (got {time_limit})"),
        }
        .into());
    }
    let deadline = Instant::now() + Duration::from_secs_f64(time_limit);
    let suite = Suite {
        h,
        level,
        sol: TimeSolution::new(Energy::new(h)?, s.quad)?,
        integ: s.integ.with_deadline(deadline),
        deadline,
    };

    type Step = fn(&Suite) -> Result<Check, Error>;
    let mut steps: Vec<Step> = vec![
        Suite::conservation,
        Suite::oracle_energy,
        Suite::symmetry,
        Suite::trajectory_oracle,
        Suite::period,
        Suite::lower_limit,
    ];
    if level == Level::Full {
        steps.push(Suite::xi_oracle);
    }
    let mut checks = Vec::with_capacity(steps.len());
    let timeout = |e: Error| match e {
        Error::Interrupted { .. } => CliError::Timeout { seconds: time_limit },
        e => e.into(),
    };
    for step in steps {
        suite.check_time().map_err(timeout)?;
        checks.push(step(&suite).map_err(timeout)?);
    }

    let mut r = Report::new(&["check", "status", "measured", "tolerance", "detail"]);
    r.param("command", "validate")
        .param("h", h)
        .param("level", if level == Level::Full { "full" } else { "quick" })
        .param("dt", s.integ.dt);
    for c in &checks {
        r.push(vec![
            c.name.into(),
            if c.passed() { "pass" } else { "fail" }.into(),
            Cell::Num(c.measured),
            Cell::Num(c.tolerance),
            c.detail.clone().into(),
        ]);
    }
    r.write(s.format, &mut *out)?;

    let failed = checks.iter().filter(|c| !c.passed()).count();
    for c in checks.iter().filter(|c| !c.passed()) {
        eprintln!(
            "FAIL {}: {} > {}",
            c.name,
            format_sig(c.measured, SUMMARY_DIGITS),
            format_sig(c.tolerance, SUMMARY_DIGITS)
        );
    }
    eprintln!("validate h = {}: {}/{} checks passed", format_sig(h, SUMMARY_DIGITS), checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(CliError::Checks {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}
