use std::io::Write;

use lotka_core::orbit::orbit_bounds;
use lotka_core::period::{self, theta_asymptotic, theta_exact, theta_series};
use lotka_core::{Energy, QuadratureConfig, RateConfig, ThetaMethod, TimeSolution};
use lotka_core::oracle::IntegratorConfig;

use crate::error::CliError;
use crate::output::{Cell, OutputFormat, Report};

pub const DEFAULT_H_LIST: [f64; 8] = [0.3, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0];

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub format: OutputFormat,
    pub quad: QuadratureConfig,
    pub integ: IntegratorConfig,
}

impl Settings {
    fn report(&self, command: &str, columns: &[&'static str]) -> Report {
        let mut r = Report::new(columns);
        r.param("command", command)
            .param("rel_tol", self.quad.rel_tol)
            .param("max_levels", self.quad.max_levels);
        r
    }
}

// e^ξ − ξ − 1 − h
fn residual(xi: f64, h: f64) -> f64 {
    xi.exp_m1() - xi - h
}

pub fn roots(h: f64, s: &Settings, out: &mut dyn Write) -> Result<(), CliError> {
    let b = orbit_bounds(Energy::new(h)?)?;
    let mut r = s.report(
        "roots",
        &["h", "xi_minus", "xi_plus", "residual_minus", "residual_plus"],
    );
    r.param("h", h);
    r.push(vec![
        h.into(),
        b.xi_minus.into(),
        b.xi_plus.into(),
        residual(b.xi_minus, h).into(),
        residual(b.xi_plus, h).into(),
    ]);
    r.write(s.format, out)?;
    Ok(())
}

pub fn period(
    h: f64,
    alpha: f64,
    method: ThetaMethod,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let p = period::period(Energy::new(h)?, RateConfig::equal(alpha)?, method, &s.quad)?;
    let mut r = s.report("period", &["h", "method", "theta", "T"]);
    r.param("h", h).param("alpha", alpha).param("method", method.name());
    r.push(vec![h.into(), method.name().into(), p.theta.into(), p.period.into()]);
    r.write(s.format, out)?;
    Ok(())
}

pub fn trajectory(
    h: f64,
    samples: usize,
    periods: f64,
    s: &Settings,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let sol = TimeSolution::new(Energy::new(h)?, s.quad)?;
    let points = sol.sample_trajectory(samples, periods)?;
    let mut r = s.report("trajectory", &["t", "xi", "eta", "u", "v", "h_check"]);
    r.param("h", h)
        .param("samples", samples)
        .param("periods", periods)
        .param("t_star", sol.t_star());
    for p in points {
        r.push(vec![p.t.into(), p.xi.into(), p.eta.into(), p.u.into(), p.v.into(), p.h_check.into()]);
    }
    r.write(s.format, out)?;
    Ok(())
}

fn table_row(h: f64, quad: &QuadratureConfig) -> lotka_core::Result<[f64; 6]> {
    let e = Energy::new(h)?;
    let b = orbit_bounds(e)?;
    Ok([
        h,
        b.xi_minus,
        b.xi_plus,
        theta_exact(e, quad)?,
        theta_asymptotic(e)?,
        theta_series(e),
    ])
}

pub fn table(h_list: &[f64], s: &Settings, out: &mut dyn Write) -> Result<(), CliError> {
    let mut r = s.report(
        "table",
        &["h", "xi_minus", "xi_plus", "theta_exact", "theta_asymptotic", "theta_series", "status"],
    );
    r.param("h_list", h_list.to_vec());
    let mut failed = 0;
    for &h in h_list {
        match table_row(h, &s.quad) {
            Ok(values) => {
                let mut row: Vec<Cell> = values.iter().map(|&x| x.into()).collect();
                row.push("ok".into());
                r.push(row);
            }
            Err(e) => {
                failed += 1;
                let mut row = vec![Cell::from(h)];
                row.extend(std::iter::repeat_n(Cell::Empty, 5));
                row.push(format!("error: {e}").into());
                r.push(row);
            }
        }
    }
    r.write(s.format, out)?;
    if failed > 0 {
        return Err(CliError::Rows {
            failed,
            total: h_list.len(),
        });
    }
    Ok(())
}
