//! Energy bookkeeping at the boundary and the transfer ratio `T_E = E_t / E_i`.
//!
//! For a linear boundary and a transversely uniform beam patch, the normal
//! Poynting flux integrated over time equals (Parseval) a spectral integral
//! of `Re sqrt(eps) |A|^2`, and the transverse area cancels in the ratio.
//! Leakage from inside the medium outward is the reciprocal process and has
//! the same ratio.

use rayon::prelude::*;
use serde::Serialize;

use crate::dispersion::{alpha_for_group_velocity, MediumModel, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::fresnel::reflectance;
use crate::quadrature;
use crate::wavepacket::{
    self, apply_boundary, gaussian_spectrum, weighted_integral, Medium, Spectrum, DEFAULT_COUNT,
    DEFAULT_HALFWIDTH,
};

/// Time-integrated fluxes of the three packets and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyReport {
    pub incident_energy: f64,
    pub transmitted_energy: f64,
    pub reflected_energy: f64,
    pub transfer_ratio: f64,
}

impl EnergyReport {
    /// `(E_t + E_r - E_i) / E_i`.
    pub fn balance_error(&self) -> f64 {
        (self.transmitted_energy + self.reflected_energy - self.incident_energy)
            / self.incident_energy
    }
}

/// Flux carried by `spec` through a surface in `medium`.
///
/// Sub-cutoff components contribute nothing.
pub fn energy_flux(spec: &Spectrum, medium: Medium) -> f64 {
    wavepacket::flux(spec, medium)
}

/// Reflected flux in vacuum, `∫ R |A|^2`, with `R` evaluated exactly
/// between the incident samples.
fn reflected_flux(incident: &Spectrum, model: &MediumModel) -> f64 {
    let grid = incident.grid();
    let center = grid.center();
    weighted_integral(
        grid,
        &incident.power(),
        |y| reflectance(model.epsilon_near(center, y)),
        model,
    )
}

/// Incident, transmitted and reflected energies for `incident` meeting the
/// boundary of `model`.
pub fn energy_transfer_ratio(incident: &Spectrum, model: &MediumModel) -> Result<EnergyReport> {
    let incident_energy = energy_flux(incident, Medium::Vacuum);
    if !(incident_energy > 0.0) {
        return Err(Error::domain("incident", "incident packet carries no energy"));
    }
    let (transmitted, _) = apply_boundary(incident, model)?;
    let transmitted_energy = energy_flux(&transmitted, Medium::Dielectric(*model));
    let reflected_energy = reflected_flux(incident, model);
    Ok(EnergyReport {
        incident_energy,
        transmitted_energy,
        reflected_energy,
        transfer_ratio: transmitted_energy / incident_energy,
    })
}

/// `T_E` as a single integral `∫ (1 - R) |A|^2 / ∫ |A|^2`, without building
/// the transmitted spectrum.
pub fn transfer_ratio_direct(incident: &Spectrum, model: &MediumModel) -> Result<f64> {
    let grid = incident.grid();
    let center = grid.center();
    let power = incident.power();
    let total = quadrature::trapezoid(grid.step(), &power);
    if !(total > 0.0) {
        return Err(Error::domain("incident", "incident packet carries no energy"));
    }
    let transmitted = weighted_integral(
        grid,
        &power,
        |y| 1.0 - reflectance(model.epsilon_near(center, y)),
        model,
    );
    Ok(transmitted / total)
}

/// Sampling of the incident Gaussian used by sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PacketShape {
    pub halfwidth: f64,
    pub count: usize,
}

impl Default for PacketShape {
    fn default() -> Self {
        PacketShape {
            halfwidth: DEFAULT_HALFWIDTH,
            count: DEFAULT_COUNT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub vg_over_c: f64,
    /// `T_E`, or the reason this group velocity could not be evaluated.
    pub transfer_ratio: Result<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub n0: f64,
    pub omega0: f64,
    pub delta_omega: f64,
    pub packet: PacketShape,
}

impl SweepResult {
    /// Rows that evaluated successfully, as `(vg/c, T_E)`.
    pub fn values(&self) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter_map(|row| row.transfer_ratio.as_ref().ok().map(|&te| (row.vg_over_c, te)))
            .collect()
    }
}

/// `T_E` as a function of the group velocity at the carrier, for a Gaussian
/// packet of FWHM `delta_omega`.
///
/// Rows run on the current rayon pool and are returned in input order.
pub fn sweep_transfer_ratio(
    n0: f64,
    omega0: f64,
    delta_omega: f64,
    vg_list: &[f64],
    packet: PacketShape,
) -> Result<SweepResult> {
    if vg_list.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Contract(
            "group velocities must be strictly increasing".into(),
        ));
    }
    let incident = gaussian_spectrum(omega0, delta_omega, packet.halfwidth, packet.count)?;
    let rows = vg_list
        .par_iter()
        .map(|&vg| {
            let transfer_ratio = alpha_for_group_velocity(n0, omega0, vg)
                .and_then(|alpha| MediumModel::new(n0, alpha, omega0))
                .and_then(|model| energy_transfer_ratio(&incident, &model))
                .map(|report| report.transfer_ratio);
            SweepRow {
                vg_over_c: vg / SPEED_OF_LIGHT,
                transfer_ratio,
            }
        })
        .collect();
    Ok(SweepResult {
        rows,
        n0,
        omega0,
        delta_omega,
        packet,
    })
}
