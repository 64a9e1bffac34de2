//! Linearized dielectric response of a slow-light medium.
//!
//! A medium is described near the carrier frequency `omega0` by the affine
//! dielectric function
//!
//! ```text
//! eps(w) = n0^2 + (2 alpha / w0) (w - w0)
//! ```
//!
//! Everything else in this module (wavenumber, group velocity, cutoff, the
//! boundary-relevance parameter `r`) follows from that expression. All
//! frequencies are angular frequencies in rad/s.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vacuum speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

fn require_positive(parameter: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(
            parameter,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

/// Linearized dispersive medium `(n0, alpha, omega0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumModel {
    n0: f64,
    alpha: f64,
    omega0: f64,
}

impl MediumModel {
    pub fn new(n0: f64, alpha: f64, omega0: f64) -> Result<Self> {
        require_positive("n0", n0)?;
        require_positive("alpha", alpha)?;
        require_positive("omega0", omega0)?;
        Ok(MediumModel { n0, alpha, omega0 })
    }

    /// Builds the model whose group velocity at `omega0` equals `vg`.
    pub fn with_group_velocity(n0: f64, omega0: f64, vg: f64) -> Result<Self> {
        let alpha = alpha_for_group_velocity(n0, omega0, vg)?;
        MediumModel::new(n0, alpha, omega0)
    }

    /// Refractive index at the expansion point.
    pub fn n0(&self) -> f64 {
        self.n0
    }

    /// Dispersion steepness.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Expansion (carrier) frequency in rad/s.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// `d eps / d omega`, constant for the affine model.
    pub fn epsilon_slope(&self) -> f64 {
        2.0 * self.alpha / self.omega0
    }

    pub(crate) fn epsilon_unchecked(&self, omega: f64) -> f64 {
        self.n0 * self.n0 + self.epsilon_slope() * (omega - self.omega0)
    }

    pub fn epsilon(&self, omega: f64) -> Result<f64> {
        epsilon(self, omega)
    }

    /// `eps(base + offset)` without rounding `base + offset` first.
    pub fn epsilon_near(&self, base: f64, offset: f64) -> f64 {
        self.n0 * self.n0 + self.epsilon_slope() * ((base - self.omega0) + offset)
    }

    /// `w_c - base`, formed without rounding `w_c` to absolute frequency.
    pub fn cutoff_offset(&self, base: f64) -> f64 {
        (self.omega0 - base) - self.passband()
    }

    /// `w0 - w_c = w0 n0^2 / (2 alpha)`.
    fn passband(&self) -> f64 {
        self.omega0 * (self.n0 * self.n0) / (2.0 * self.alpha)
    }

    /// `eps` at scaled detuning `(w - w0) / w0`, without forming `w`.
    pub fn epsilon_at_detuning(&self, detuning: f64) -> f64 {
        self.n0 * self.n0 + 2.0 * self.alpha * detuning
    }

    pub fn cutoff_frequency(&self) -> f64 {
        cutoff_frequency(self)
    }

    pub fn group_velocity_center(&self) -> f64 {
        group_velocity_center(self)
    }

    /// Wavenumber `k(w) = w sqrt(eps(w)) / c` on the propagating branch.
    pub fn wavenumber(&self, omega: f64) -> Result<f64> {
        let eps = self.epsilon(omega)?;
        if eps < 0.0 {
            return Err(Error::domain(
                "omega",
                format!("{omega} rad/s is below cutoff, wavenumber is imaginary"),
            ));
        }
        Ok(omega * eps.sqrt() / SPEED_OF_LIGHT)
    }
}

/// Dielectric function of the linearized model. Negative below cutoff.
pub fn epsilon(model: &MediumModel, omega: f64) -> Result<f64> {
    require_positive("omega", omega)?;
    Ok(model.epsilon_unchecked(omega))
}

/// Frequency where `eps` crosses zero: `w0 (1 - n0^2 / (2 alpha))`.
///
/// Negative when `alpha < n0^2 / 2`, i.e. the medium has no cutoff at
/// positive frequency.
pub fn cutoff_frequency(model: &MediumModel) -> f64 {
    // offset form keeps w0 - w_c exact whenever w0 n0^2 / (2 alpha) is representable
    model.omega0 - model.passband()
}

/// Group velocity at the carrier, `c / (n0 + alpha / n0)`.
pub fn group_velocity_center(model: &MediumModel) -> f64 {
    SPEED_OF_LIGHT / (model.n0 + model.alpha / model.n0)
}

/// Inverse of [`group_velocity_center`]: `alpha = n0 (c / vg - n0)`.
pub fn alpha_for_group_velocity(n0: f64, omega0: f64, vg: f64) -> Result<f64> {
    require_positive("n0", n0)?;
    require_positive("omega0", omega0)?;
    require_positive("vg", vg)?;
    if vg >= SPEED_OF_LIGHT / n0 {
        return Err(Error::domain(
            "vg",
            format!(
                "no positive alpha achieves vg = {vg} m/s, need vg < c/n0 = {} m/s",
                SPEED_OF_LIGHT / n0
            ),
        ));
    }
    Ok(n0 * (SPEED_OF_LIGHT / vg - n0))
}

/// Group velocity `dw/dk` at an arbitrary frequency above cutoff.
///
/// With `k = w sqrt(eps) / c` this is `c sqrt(eps) / (eps + alpha w / w0)`.
pub fn group_velocity_at(model: &MediumModel, omega: f64) -> Result<f64> {
    let eps = epsilon(model, omega)?;
    if eps <= 0.0 {
        return Err(Error::domain(
            "omega",
            format!("{omega} rad/s is in the evanescent region, no group velocity"),
        ));
    }
    // c / (n + alpha (w / w0) / n); reduces to the carrier formula at w0
    let n = eps.sqrt();
    Ok(SPEED_OF_LIGHT / (n + model.alpha * (omega / model.omega0) / n))
}

/// Group velocity of a cold plasma or hollow waveguide, `eps = 1 - wp^2/w^2`.
pub fn plasma_group_velocity(omega_p: f64, omega: f64) -> Result<f64> {
    require_positive("omega_p", omega_p)?;
    require_positive("omega", omega)?;
    if omega <= omega_p {
        return Err(Error::domain(
            "omega",
            format!("{omega} rad/s is at or below the plasma frequency {omega_p} rad/s"),
        ));
    }
    let ratio = omega_p / omega;
    Ok(SPEED_OF_LIGHT * (1.0 - ratio * ratio).sqrt())
}

/// Ratio of the packet half-width to the passband `w0 - w_c`.
///
/// `r > 1` means the cutoff sits inside the packet spectrum.
pub fn boundary_parameter_r(model: &MediumModel, delta_omega: f64) -> Result<f64> {
    require_positive("delta_omega", delta_omega)?;
    Ok(model.alpha / (model.n0 * model.n0) * (delta_omega / model.omega0))
}

/// Parameters of an ideal, radiatively broadened EIT medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EitParameters {
    /// Atomic number density in m^-3.
    pub density: f64,
    /// Optical wavelength in m.
    pub wavelength: f64,
    /// Radiative decay rate in rad/s.
    pub gamma: f64,
    /// Rabi frequency of the coupling field in rad/s.
    pub rabi: f64,
}

impl EitParameters {
    pub fn new(density: f64, wavelength: f64, gamma: f64, rabi: f64) -> Result<Self> {
        require_positive("density", density)?;
        require_positive("wavelength", wavelength)?;
        require_positive("gamma", gamma)?;
        require_positive("rabi", rabi)?;
        Ok(EitParameters {
            density,
            wavelength,
            gamma,
            rabi,
        })
    }

    /// Width of the transparency window, `Omega^2 / gamma`.
    pub fn transparency_window(&self) -> f64 {
        self.rabi * self.rabi / self.gamma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EitEstimate {
    pub r: f64,
    pub delta_omega: f64,
    pub vg_estimate: f64,
}

/// `r = 3 N lambda^3 / (8 pi^2)`: the boundary parameter when the packet
/// fills the transparency window. Needs only density and wavelength.
pub fn eit_r_from_density(density: f64, wavelength: f64) -> Result<f64> {
    require_positive("density", density)?;
    require_positive("wavelength", wavelength)?;
    Ok(3.0 * density * wavelength.powi(3) / (8.0 * PI * PI))
}

/// Boundary parameter, window width and implied group velocity for EIT
/// (with `n0 = 1`).
pub fn eit_boundary_parameter(p: &EitParameters) -> EitEstimate {
    let delta_omega = p.transparency_window();
    // gamma * delta_omega / rabi^2 is 1 for the window width; r keeps only N lambda^3
    let r = 3.0 * p.density * p.wavelength.powi(3) / (8.0 * PI * PI);
    let omega0 = 2.0 * PI * SPEED_OF_LIGHT / p.wavelength;
    let vg_estimate = SPEED_OF_LIGHT * (delta_omega / omega0) / r;
    EitEstimate {
        r,
        delta_omega,
        vg_estimate,
    }
}

/// A layer of width `length` across which the dielectric function changes
/// smoothly from `start` (z = 0) to `end` (z = L).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayerProfile {
    pub start: MediumModel,
    pub end: MediumModel,
    pub length: f64,
}

impl LayerProfile {
    pub fn new(start: MediumModel, end: MediumModel, length: f64) -> Result<Self> {
        if !(length.is_finite() && length >= 0.0) {
            return Err(Error::domain("length", format!("must be >= 0, got {length}")));
        }
        Ok(LayerProfile { start, end, length })
    }
}

/// Reflection off an adiabatic layer only sees the final dielectric
/// function, so the layer acts as a sharp boundary to `end`.
pub fn layer_effective_model(profile: &LayerProfile) -> MediumModel {
    profile.end
}
