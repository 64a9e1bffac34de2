//! Reflection and transmission of optical wavepackets at the boundary of a
//! medium with ultraslow group velocity.
//!
//! A steeply dispersive medium has a dielectric function that crosses zero
//! just below the carrier frequency. Spectral components below that cutoff
//! are totally reflected, and the remaining ones see a rapidly growing index
//! mismatch, so the slower the light inside, the less of an incident packet
//! gets in. The modules follow that chain:
//!
//! - [`dispersion`]: the linearized medium, cutoff, group velocities and the
//!   boundary parameter `r`.
//! - [`fresnel`]: normal-incidence field and flux coefficients.
//! - [`wavepacket`]: sampled spectra, time envelopes and centroids.
//! - [`energy`]: flux integrals, `T_E` and group-velocity sweeps.
//! - [`cli`]: scenario configuration and deterministic CSV output.
//!
//! ```
//! use slowlight::dispersion::{MediumModel, SPEED_OF_LIGHT};
//! use slowlight::energy::energy_transfer_ratio;
//! use slowlight::wavepacket::gaussian_spectrum;
//!
//! let model = MediumModel::with_group_velocity(1.0, 1e14, 1e-8 * SPEED_OF_LIGHT)?;
//! let packet = gaussian_spectrum(1e14, 1e6, 8.0, 1 << 12)?;
//! let report = energy_transfer_ratio(&packet, &model)?;
//! assert!(report.transfer_ratio > 0.8 && report.transfer_ratio < 0.9);
//! # Ok::<(), slowlight::Error>(())
//! ```

pub mod cli;
pub mod dispersion;
pub mod energy;
mod error;
pub mod fresnel;
pub mod quadrature;
pub mod wavepacket;

pub use error::{Error, Result};

// Book chapters are compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/dispersion.md")]
    mod dispersion {}
    #[doc = include_str!("../../../book/src/boundary.md")]
    mod boundary {}
    #[doc = include_str!("../../../book/src/wavepackets.md")]
    mod wavepackets {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/eit.md")]
    mod eit {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
