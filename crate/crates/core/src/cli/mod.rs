//! Scenario files in, CSV tables and a run manifest out.
//!
//! Every number is written with 17 significant digits in scientific
//! notation, so a given configuration produces the same bytes on every run
//! and for any worker count.

mod config;

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use thiserror::Error;

pub use config::{parse_config, ConfigError, Range, Scenario, ScenarioConfig, Steepness, Velocities};

use crate::dispersion::{
    boundary_parameter_r, eit_boundary_parameter, eit_r_from_density, group_velocity_at,
    plasma_group_velocity, EitParameters, MediumModel, SPEED_OF_LIGHT,
};
use crate::energy::{sweep_transfer_ratio, PacketShape};
use crate::error::Error;
use crate::fresnel::boundary_coefficients;
use crate::wavepacket::gaussian_sigma;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(#[from] ConfigError),
    #[error("numeric error: {0}")]
    Numeric(#[from] Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl RunError {
    /// Process exit code: 2 for configuration, 3 for numeric domain errors,
    /// 1 when output cannot be written.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numeric(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}

/// Medium quantities recomputed for one emitted model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedModel {
    pub vg_over_c: f64,
    pub alpha: f64,
    pub cutoff_frequency: f64,
    pub r: Option<f64>,
}

impl DerivedModel {
    fn of(model: &MediumModel, delta_omega: Option<f64>) -> Result<Self, Error> {
        Ok(DerivedModel {
            vg_over_c: model.group_velocity_center() / SPEED_OF_LIGHT,
            alpha: model.alpha(),
            cutoff_frequency: model.cutoff_frequency(),
            r: delta_omega.map(|dw| boundary_parameter_r(model, dw)).transpose()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDiagnostics {
    pub halfwidth: f64,
    pub count: usize,
    /// Fraction of the Gaussian's spectral energy outside the grid.
    pub truncated_energy_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedRow {
    pub vg_over_c: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub config: ScenarioConfig,
    pub units: Units,
    pub derived: Vec<DerivedModel>,
    pub grid: Option<GridDiagnostics>,
    pub skipped_rows: Vec<SkippedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Units {
    pub frequency: &'static str,
    pub density: &'static str,
    pub wavelength: &'static str,
    pub velocity: &'static str,
}

const UNITS: Units = Units {
    frequency: "rad/s",
    density: "m^-3",
    wavelength: "m",
    velocity: "fraction of c",
};

/// Formats a value with 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

struct Table {
    text: String,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            text: format!("{}\n", header.join(",")),
        }
    }

    fn row(&mut self, values: &[Option<f64>]) {
        let cells: Vec<String> = values
            .iter()
            .map(|v| v.map(format_float).unwrap_or_default())
            .collect();
        let _ = writeln!(self.text, "{}", cells.join(","));
    }
}

fn model_from(config: &ScenarioConfig, steepness: Steepness) -> Result<MediumModel, Error> {
    match steepness {
        Steepness::Alpha(alpha) => MediumModel::new(config.n0, alpha, config.omega0),
        Steepness::VgOverC(v) => {
            MediumModel::with_group_velocity(config.n0, config.omega0, v * SPEED_OF_LIGHT)
        }
    }
}

fn check_detuning(detuning: f64) -> Result<(), Error> {
    if detuning <= -1.0 {
        return Err(Error::Domain {
            parameter: "detuning_range",
            reason: format!("scaled detuning {detuning} gives a non-positive frequency"),
        });
    }
    Ok(())
}

fn reflectance_at(model: &MediumModel, detuning: f64) -> Result<f64, Error> {
    check_detuning(detuning)?;
    Ok(boundary_coefficients(model.epsilon_at_detuning(detuning))?.reflectance)
}

/// Runs one scenario on a pool of `workers` threads.
pub fn run_scenario(
    config: &ScenarioConfig,
    workers: usize,
) -> Result<(String, RunManifest), RunError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| io::Error::new(io::ErrorKind::Other, e.to_string()))?;
    pool.install(|| run_in_pool(config))
}

fn missing(what: &'static str) -> RunError {
    RunError::Config(ConfigError::Missing(what))
}

fn run_in_pool(config: &ScenarioConfig) -> Result<(String, RunManifest), RunError> {
    let mut manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        config: config.clone(),
        units: UNITS,
        derived: Vec::new(),
        grid: None,
        skipped_rows: Vec::new(),
    };

    let table = match config.scenario {
        Scenario::Fig1a => {
            let velocities = config.velocities.as_ref().ok_or_else(|| missing("vg_list"))?;
            let detunings = config
                .detuning_range
                .ok_or_else(|| missing("detuning_range"))?
                .linear();
            let mut table = Table::new(&["vg_over_c", "scaled_detuning", "R"]);
            for v in velocities.values() {
                let model = model_from(config, Steepness::VgOverC(v))?;
                manifest.derived.push(DerivedModel::of(&model, None)?);
                for &x in &detunings {
                    table.row(&[Some(v), Some(x), Some(reflectance_at(&model, x)?)]);
                }
            }
            table
        }
        Scenario::Fig1b => {
            let velocities = config.velocities.as_ref().ok_or_else(|| missing("vg_log_range"))?;
            let tail = config.tail_detuning;
            let mut table = Table::new(&["vg_over_c", "R_low_tail", "R_high_tail"]);
            for v in velocities.values() {
                let model = model_from(config, Steepness::VgOverC(v))?;
                manifest.derived.push(DerivedModel::of(&model, None)?);
                table.row(&[
                    Some(v),
                    Some(reflectance_at(&model, -tail)?),
                    Some(reflectance_at(&model, tail)?),
                ]);
            }
            table
        }
        Scenario::Fig2 | Scenario::CustomSweep => {
            let velocities = config.velocities.as_ref().ok_or_else(|| missing("vg_log_range"))?;
            let packet = PacketShape {
                halfwidth: config.halfwidth,
                count: config.count,
            };
            let vg: Vec<f64> = velocities
                .values()
                .into_iter()
                .map(|v| v * SPEED_OF_LIGHT)
                .collect();
            let sweep =
                sweep_transfer_ratio(config.n0, config.omega0, config.delta_omega, &vg, packet)?;
            manifest.grid = Some(GridDiagnostics {
                halfwidth: config.halfwidth,
                count: config.count,
                truncated_energy_fraction: libm::erfc(
                    config.halfwidth * config.delta_omega / gaussian_sigma(config.delta_omega),
                ),
            });
            let mut table = Table::new(&["vg_over_c", "TE"]);
            for (v, row) in velocities.values().into_iter().zip(&sweep.rows) {
                match &row.transfer_ratio {
                    Ok(te) => {
                        let model = model_from(config, Steepness::VgOverC(v))?;
                        manifest
                            .derived
                            .push(DerivedModel::of(&model, Some(config.delta_omega))?);
                        table.row(&[Some(v), Some(*te)]);
                    }
                    Err(e) => manifest.skipped_rows.push(SkippedRow {
                        vg_over_c: v,
                        reason: e.to_string(),
                    }),
                }
            }
            table
        }
        Scenario::Fig3 => {
            let steepness = config.steepness.ok_or_else(|| missing("vg_over_c"))?;
            let model = model_from(config, steepness)?;
            manifest.derived.push(DerivedModel::of(&model, None)?);
            let omega_p = match config.omega_p {
                Some(wp) => wp,
                None => {
                    let wc = model.cutoff_frequency();
                    if !(wc > 0.0) {
                        return Err(Error::Domain {
                            parameter: "omega_p",
                            reason: "model has no positive cutoff; set `omega_p`".into(),
                        }
                        .into());
                    }
                    wc
                }
            };
            let frequencies = config
                .frequency_range
                .ok_or_else(|| missing("frequency_range"))?
                .linear();
            let mut table = Table::new(&["scaled_frequency", "vg_slow_over_c", "vg_plasma_over_c"]);
            for s in frequencies {
                let omega = s * config.omega0;
                let slow = group_velocity_at(&model, omega)?;
                let plasma = plasma_group_velocity(omega_p, omega)?;
                table.row(&[
                    Some(s),
                    Some(slow / SPEED_OF_LIGHT),
                    Some(plasma / SPEED_OF_LIGHT),
                ]);
            }
            table
        }
        Scenario::CustomReflectance => {
            let steepness = config.steepness.ok_or_else(|| missing("alpha"))?;
            let model = model_from(config, steepness)?;
            manifest
                .derived
                .push(DerivedModel::of(&model, Some(config.delta_omega))?);
            let detunings = config
                .detuning_range
                .ok_or_else(|| missing("detuning_range"))?
                .linear();
            let mut table = Table::new(&["scaled_detuning", "epsilon", "R", "energy_T"]);
            for x in detunings {
                check_detuning(x)?;
                let eps = model.epsilon_at_detuning(x);
                let c = boundary_coefficients(eps)?;
                table.row(&[Some(x), Some(eps), Some(c.reflectance), Some(c.energy_transmittance)]);
            }
            table
        }
        Scenario::EitEstimate => {
            let density = config.density.ok_or_else(|| missing("density"))?;
            let wavelength = config.wavelength.ok_or_else(|| missing("wavelength"))?;
            let (r, delta_omega, vg) = match (config.gamma, config.rabi) {
                (Some(gamma), Some(rabi)) => {
                    let est = eit_boundary_parameter(&EitParameters::new(
                        density, wavelength, gamma, rabi,
                    )?);
                    (est.r, Some(est.delta_omega), Some(est.vg_estimate))
                }
                _ => (eit_r_from_density(density, wavelength)?, None, None),
            };
            let mut table = Table::new(&["N", "lambda", "r", "delta_omega", "vg_estimate"]);
            table.row(&[Some(density), Some(wavelength), Some(r), delta_omega, vg]);
            table
        }
    };
    Ok((table.text, manifest))
}
