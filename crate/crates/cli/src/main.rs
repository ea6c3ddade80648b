//! `paramp-sim`: runs scenario files for the parametric-amplifier simulator.

mod presets;
mod run;
mod scenario;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use scenario::{Overrides, Scenario};

#[derive(Parser)]
#[command(
    name = "paramp-sim",
    version,
    about = "Two-mode Gaussian states in a parametric amplifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a built-in scenario (fig1 … fig7).
    Preset {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// List built-in scenarios, or print one with --show.
    List {
        #[arg(long)]
        show: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Output directory. Defaults to the scenario's `output`, else `out/<name>`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid points per axis (entropy grid; tomogram grid for tomogram runs).
    #[arg(long)]
    grid_n: Option<usize>,
    /// Entropy grid half width, or tomogram half width in standard deviations.
    #[arg(long)]
    grid_width: Option<f64>,
    /// Number of time points.
    #[arg(long)]
    t_steps: Option<usize>,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { scenario, common } => {
            let text = fs::read_to_string(&scenario)
                .with_context(|| format!("cannot read {}", scenario.display()))?;
            execute(
                Scenario::parse(&text).with_context(|| format!("in {}", scenario.display()))?,
                common,
            )
        }
        Command::Preset { name, common } => {
            let text = presets::lookup(&name).with_context(|| {
                format!(
                    "unknown preset {name:?}; available: {}",
                    presets::names().collect::<Vec<_>>().join(", ")
                )
            })?;
            execute(Scenario::parse(text)?, common)
        }
        Command::List { show: Some(name) } => {
            print!(
                "{}",
                presets::lookup(&name).with_context(|| format!("unknown preset {name:?}"))?
            );
            Ok(())
        }
        Command::List { show: None } => {
            for name in presets::names() {
                let s = Scenario::parse(presets::lookup(name).unwrap_or_default())?;
                println!("{name}\t{}", s.task.as_str());
            }
            Ok(())
        }
    }
}

fn execute(mut scenario: Scenario, common: Common) -> Result<()> {
    scenario.apply(&Overrides {
        grid_n: common.grid_n,
        grid_width: common.grid_width,
        t_steps: common.t_steps,
    })?;
    let dir = common
        .out
        .or_else(|| scenario.output.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(&scenario.name));
    let output = run::execute(&scenario)?;
    for path in run::write_outputs(&output, &dir)? {
        println!("wrote {}", path.display());
    }
    for line in &output.summary {
        println!("{line}");
    }
    Ok(())
}
