//! Normal-incidence boundary coefficients between vacuum and a medium with
//! real dielectric function `eps`.
//!
//! For `eps < 0` the index is taken on the decaying evanescent branch
//! `+i sqrt(|eps|)`, which gives `|r| = 1` and no energy flux into the medium.

use num_complex::Complex64;

use crate::dispersion::MediumModel;
use crate::error::{Error, Result};

/// Field and intensity coefficients for one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCoefficients {
    /// Field reflection coefficient `(1 - n) / (1 + n)`.
    pub r_field: Complex64,
    /// Field transmission coefficient `2 / (1 + n)`.
    pub t_field: Complex64,
    /// `|r|^2`.
    pub reflectance: f64,
    /// `|t|^2`, the intensity ratio of field amplitudes. Not an energy ratio.
    pub transmittance: f64,
    /// `Re(n) |t|^2`, the ratio of normal Poynting fluxes.
    pub energy_transmittance: f64,
}

fn require_finite(eps: f64) -> Result<()> {
    if eps.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("eps", format!("must be finite, got {eps}")))
    }
}

/// `sqrt(eps)` with the branch used throughout the crate.
pub fn complex_refractive_index(eps: f64) -> Result<Complex64> {
    require_finite(eps)?;
    Ok(if eps >= 0.0 {
        Complex64::new(eps.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-eps).sqrt())
    })
}

pub fn boundary_coefficients(eps: f64) -> Result<BoundaryCoefficients> {
    let n = complex_refractive_index(eps)?;
    let denom = Complex64::new(1.0, 0.0) + n;
    // Re(n) >= 0 so |1 + n| >= 1
    debug_assert!(denom.norm() > 0.0);
    let r_field = (Complex64::new(1.0, 0.0) - n) / denom;
    let t_field = Complex64::new(2.0, 0.0) / denom;
    let transmittance = t_field.norm_sqr();

    let (reflectance, energy_transmittance) = if eps > 0.0 {
        let n = n.re;
        let ratio = (1.0 - n) / (1.0 + n);
        (ratio * ratio, n * transmittance)
    } else {
        (1.0, 0.0)
    };

    Ok(BoundaryCoefficients {
        r_field,
        t_field,
        reflectance,
        transmittance,
        energy_transmittance,
    })
}

/// `|r|^2` for real `eps`; exactly 1 when `eps <= 0`.
pub fn reflectance(eps: f64) -> f64 {
    if eps > 0.0 {
        let n = eps.sqrt();
        let ratio = (1.0 - n) / (1.0 + n);
        ratio * ratio
    } else {
        1.0
    }
}

/// `Re(n) |t|^2 = 4 n / (1 + n)^2`; exactly 0 when `eps <= 0`.
pub fn energy_transmittance(eps: f64) -> f64 {
    if eps > 0.0 {
        let n = eps.sqrt();
        4.0 * n / ((1.0 + n) * (1.0 + n))
    } else {
        0.0
    }
}

/// `R(w)` of `model` sampled on `grid`.
///
/// Frequencies at or below the cutoff reflect totally even when rounding
/// leaves `eps(w_c)` a few ulps above zero.
pub fn reflectance_spectrum(model: &MediumModel, grid: &[f64]) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::domain("grid", "frequency grid is empty"));
    }
    let cutoff = model.cutoff_frequency();
    grid.iter()
        .map(|&omega| {
            let eps = model.epsilon(omega)?;
            if omega <= cutoff {
                return Ok(1.0);
            }
            Ok(boundary_coefficients(eps)?.reflectance)
        })
        .collect()
}
