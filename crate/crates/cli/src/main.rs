#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, CliResult};
use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "cdd",
    version,
    about = "Continuous dynamical decoupling experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path prefix, overrides `output` from the config.
    #[arg(long)]
    out: Option<String>,
    /// RK4 steps over the gate time, overrides `steps`.
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Baseline, protected and tilted-axis fidelity curves.
    Fig1 {
        #[command(flatten)]
        common: Common,
        /// Decoupling cycles per gate.
        #[arg(long)]
        n: Option<u32>,
        /// Extra tilt angles (degrees) for the control axis.
        #[arg(long, value_delimiter = ',', default_values_t = [10.0, 30.0])]
        tilt_deg: Vec<f64>,
    },
    /// Final fidelity over a grid of pure initial states.
    SweepInitial {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        tilt_deg: Option<f64>,
        #[arg(long, default_value_t = 200)]
        nphi: usize,
        #[arg(long, default_value_t = 100)]
        ntheta: usize,
    },
    /// Final fidelity over temperature and cycle count.
    Inset {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tilt_deg: Option<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.25, 0.5, 1.0])]
        temps: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 5, 10])]
        cycles: Vec<u32>,
    },
    /// Sampled drive field.
    Waveform {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        tilt_deg: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Numerical consistency checks for the configured experiment.
    Selftest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        tilt_deg: Option<f64>,
    },
    /// Bath kernels on the integration grid.
    Kernels {
        #[command(flatten)]
        common: Common,
    },
    /// Prints the effective config in canonical form.
    ShowConfig {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common, n: Option<u32>, tilt_deg: Option<f64>) -> CliResult<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(out) = &common.out {
        cfg.output = out.clone();
    }
    if let Some(steps) = common.steps {
        cdd_core::engine::SimGrid::new(steps)
            .map_err(|e| CliError::Usage(format!("--steps: {e}")))?;
        cfg.steps = steps;
    }
    if let Some(n) = n {
        if n == 0 {
            return Err(CliError::Usage("--n must be at least 1".into()));
        }
        cfg.cycles = n;
    }
    if let Some(t) = tilt_deg {
        cfg.tilt_deg = t;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Fig1 {
            common,
            n,
            tilt_deg,
        } => commands::fig1(&load(&common, n, None)?, &tilt_deg),
        Command::SweepInitial {
            common,
            n,
            tilt_deg,
            nphi,
            ntheta,
        } => commands::sweep_initial(&load(&common, n, tilt_deg)?, nphi, ntheta),
        Command::Inset {
            common,
            tilt_deg,
            temps,
            cycles,
        } => commands::inset(&load(&common, None, tilt_deg)?, &temps, &cycles),
        Command::Waveform {
            common,
            n,
            tilt_deg,
            samples,
        } => commands::waveform(&load(&common, n, tilt_deg)?, samples),
        Command::Selftest {
            common,
            n,
            tilt_deg,
        } => commands::selftest(&load(&common, n, tilt_deg)?),
        Command::Kernels { common } => commands::kernels(&load(&common, None, None)?),
        Command::ShowConfig { common } => {
            print!("{}", load(&common, None, None)?.to_canonical());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
