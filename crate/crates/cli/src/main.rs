//! `lotka`: periods, turning points and exact trajectories of the equal-rate
//! Lotka-Volterra system.

mod commands;
mod error;
mod output;
mod validate;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lotka_core::oracle::IntegratorConfig;
use lotka_core::{QuadratureConfig, ThetaMethod};

use crate::commands::{Settings, DEFAULT_H_LIST};
use crate::error::{CliError, EXIT_USAGE};
use crate::output::OutputFormat;
use crate::validate::Level;

#[derive(Debug, Parser)]
#[command(name = "lotka", version, about = "Exact solutions of the equal-rate Lotka-Volterra system")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: OutputFormat,

    /// Target relative error of the quadrature
    #[arg(long, global = true, default_value_t = 1e-10)]
    rel_tol: f64,

    /// Refinement levels allowed to the quadrature
    #[arg(long, global = true, default_value_t = 12)]
    max_levels: u32,

    /// RK4 step size for oracle integrations
    #[arg(long, global = true, default_value_t = 1e-4)]
    dt: f64,

    /// Step budget for oracle integrations
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_steps: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Elliptic,
    Series,
    Asymptotic,
}

impl From<MethodArg> for ThetaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => ThetaMethod::Exact,
            MethodArg::Elliptic => ThetaMethod::Elliptic,
            MethodArg::Series => ThetaMethod::Series,
            MethodArg::Asymptotic => ThetaMethod::Asymptotic,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Turning points of the orbit with energy h
    Roots {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
    },
    /// Period and Θ(h) by the chosen method
    Period {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        /// Prey growth rate (equal to the predator decay rate)
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
    },
    /// Uniformly sampled exact trajectory
    Trajectory {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        periods: f64,
    },
    /// Turning points and Θ(h) in every regime for a list of energies
    Table {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = DEFAULT_H_LIST)]
        h_list: Vec<f64>,
    },
    /// Cross-check the exact solution against the RK4 oracle
    Validate {
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, value_enum, default_value = "full")]
        level: Level,
        /// Wall-clock budget in seconds
        #[arg(long, default_value_t = 120.0)]
        time_limit: f64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let settings = Settings {
        format: cli.format,
        quad: QuadratureConfig::new(cli.rel_tol, cli.max_levels)?,
        integ: IntegratorConfig::new(cli.dt, cli.max_steps)?,
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Roots { h } => commands::roots(h, &settings, &mut out)?,
        Command::Period { h, alpha, method } => {
            commands::period(h, alpha, method.into(), &settings, &mut out)?
        }
        Command::Trajectory { h, samples, periods } => {
            commands::trajectory(h, samples, periods, &settings, &mut out)?
        }
        Command::Table { h_list } => commands::table(&h_list, &settings, &mut out)?,
        Command::Validate { h, level, time_limit } => {
            validate::run(h, level, time_limit, &settings, &mut out)?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_broken_pipe() => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lotka: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
