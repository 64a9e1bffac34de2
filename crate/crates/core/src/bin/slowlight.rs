use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slowlight::cli::{
    parse_config, run_scenario, ConfigError, RunError, RunManifest, Scenario, ScenarioConfig,
};

#[derive(Parser)]
#[command(name = "slowlight", version, about = "Boundary reflection of slow-light wavepackets")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its CSV table.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV; overrides `output` in the config. Stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for sweeps.
        #[arg(
            long,
            env = "SLOWLIGHT_THREADS",
            value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..)
        )]
        threads: Option<usize>,
    },
    /// Boundary parameter of an ideal EIT medium.
    EstimateEit {
        /// Atomic density in m^-3.
        #[arg(long)]
        density: f64,
        /// Wavelength in m.
        #[arg(long)]
        wavelength: f64,
        /// Radiative rate in rad/s.
        #[arg(long, requires = "rabi")]
        gamma: Option<f64>,
        /// Rabi frequency in rad/s.
        #[arg(long, requires = "gamma")]
        rabi: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_outputs(csv: &str, manifest: &RunManifest, out: Option<&Path>) -> Result<(), RunError> {
    let manifest_json = serde_json::to_string_pretty(manifest)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::Other, e))?;
    match out {
        Some(path) => {
            fs::write(path, csv)?;
            let mut name = path.as_os_str().to_owned();
            name.push(".manifest.json");
            fs::write(PathBuf::from(name), manifest_json + "\n")?;
        }
        None => {
            print!("{csv}");
            eprintln!("{manifest_json}");
        }
    }
    Ok(())
}

fn execute(command: Command) -> Result<(), RunError> {
    match command {
        Command::Run {
            config,
            out,
            threads,
        } => {
            let text = fs::read_to_string(&config).map_err(|e| ConfigError::Unreadable {
                path: config.display().to_string(),
                reason: e.to_string(),
            })?;
            let config = parse_config(&text)?;
            let workers = threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let (csv, manifest) = run_scenario(&config, workers)?;
            let out = out.or_else(|| config.output.clone());
            write_outputs(&csv, &manifest, out.as_deref())
        }
        Command::EstimateEit {
            density,
            wavelength,
            gamma,
            rabi,
            out,
        } => {
            let mut text = format!(
                "scenario = {}\ndensity = {density:e}\nwavelength = {wavelength:e}\n",
                Scenario::EitEstimate
            );
            if let (Some(g), Some(r)) = (gamma, rabi) {
                text.push_str(&format!("gamma = {g:e}\nrabi = {r:e}\n"));
            }
            let config: ScenarioConfig = parse_config(&text)?;
            let (csv, manifest) = run_scenario(&config, 1)?;
            write_outputs(&csv, &manifest, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("slowlight: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
