//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the library's quadrature: packets are the analytic
//! Gaussian and integrals are plain trapezoids on a finer grid.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const C: f64 = 299_792_458.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Distance from `x` to the next representable value away from zero.
pub fn ulp(x: f64) -> f64 {
    let x = x.abs();
    f64::from_bits(x.to_bits() + 1) - x
}

/// `|A|^2` of the unit-peak Gaussian with intensity FWHM `dw`, at offset `y`.
pub fn gaussian_intensity(y: f64, dw: f64) -> f64 {
    (-4.0 * std::f64::consts::LN_2 * (y / dw).powi(2)).exp()
}

fn trapezoid(n: usize, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let h = (hi - lo) / n as f64;
    let inner: f64 = (1..n).map(|i| f(lo + i as f64 * h)).sum();
    h * (inner + 0.5 * (f(lo) + f(hi)))
}

/// Energies of a Gaussian packet meeting the boundary of the linearized
/// medium `eps = n0^2 + (2 alpha / w0)(w - w0)`, carrier at `w0`.
#[derive(Debug, Clone, Copy)]
pub struct OracleEnergies {
    pub incident: f64,
    pub transmitted: f64,
    /// `∫ (w - w0) (1 - R) |A|^2 dw`.
    pub transmitted_moment: f64,
    pub incident_moment: f64,
}

impl OracleEnergies {
    pub fn transfer_ratio(&self) -> f64 {
        self.transmitted / self.incident
    }

    pub fn blue_shift(&self) -> f64 {
        self.transmitted_moment / self.transmitted - self.incident_moment / self.incident
    }
}

/// Trapezoid with `points` intervals over `w0 ± halfwidth dw`. The
/// transmitted integrals run in `u = sqrt(w - w_c)`, where the integrand is
/// smooth.
pub fn oracle(n0: f64, alpha: f64, omega0: f64, dw: f64, halfwidth: f64, points: usize) -> OracleEnergies {
    let span = halfwidth * dw;
    let slope = 2.0 * alpha / omega0;
    let yc = -n0 * n0 / slope;
    let incident = trapezoid(points, -span, span, |y| gaussian_intensity(y, dw));
    let incident_moment = trapezoid(points, -span, span, |y| y * gaussian_intensity(y, dw));

    let u0 = (-span - yc).max(0.0).sqrt();
    let u1 = (span - yc).max(0.0).sqrt();
    let density = |u: f64| {
        let y = yc + u * u;
        // eps = slope u^2 exactly on this parametrization
        let s = slope.sqrt() * u;
        let weight = 4.0 * s / ((1.0 + s) * (1.0 + s));
        (y, weight * gaussian_intensity(y, dw) * 2.0 * u)
    };
    let transmitted = trapezoid(points, u0, u1, |u| density(u).1);
    let transmitted_moment = trapezoid(points, u0, u1, |u| {
        let (y, d) = density(u);
        y * d
    });
    OracleEnergies {
        incident,
        transmitted,
        transmitted_moment,
        incident_moment,
    }
}

/// Field reflectance straight from the Fresnel formula with the evanescent
/// branch, for real `eps`.
pub fn fresnel_reflectance(eps: f64) -> f64 {
    if eps <= 0.0 {
        // n = i k: |1 - i k| = |1 + i k|
        1.0
    } else {
        let n = eps.sqrt();
        ((1.0 - n) / (1.0 + n)).powi(2)
    }
}

/// Wavenumber of the linearized medium, `w sqrt(eps) / c`.
pub fn wavenumber(n0: f64, alpha: f64, omega0: f64, omega: f64) -> f64 {
    let eps = n0 * n0 + 2.0 * alpha * (omega - omega0) / omega0;
    omega * eps.sqrt() / C
}

/// `dw/dk` by central difference with step `h`.
pub fn finite_difference_group_velocity(n0: f64, alpha: f64, omega0: f64, omega: f64, h: f64) -> f64 {
    let dk = wavenumber(n0, alpha, omega0, omega + h) - wavenumber(n0, alpha, omega0, omega - h);
    2.0 * h / dk
}
