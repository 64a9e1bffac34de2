//! Sampled spectra of incident, reflected and transmitted wavepackets.
//!
//! Spectra are indexed by absolute angular frequency on a uniform grid
//! centred on the carrier. Time-domain envelopes are synthesized with the
//! carrier removed, using the convention
//!
//! ```text
//! E(t) = (1 / 2 pi) ∫ A(w) exp(-i (w - w0) t) dw
//! ```
//!
//! so that `Σ |E|^2 dt = Σ |A|^2 dw / (2 pi)`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::dispersion::MediumModel;
use crate::error::{Error, Result};
use crate::fresnel::{boundary_coefficients, energy_transmittance};
use crate::quadrature;

/// Default grid half-width in units of the spectral FWHM.
pub const DEFAULT_HALFWIDTH: f64 = 8.0;
/// Default number of spectral samples.
pub const DEFAULT_COUNT: usize = 1 << 14;

/// Uniform grid `center + (i - count/2) * step`, `i = 0..count`.
///
/// The carrier sits exactly on sample `count / 2`, which is also the layout
/// the discrete transform expects after a half-length rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    center: f64,
    step: f64,
    count: usize,
    halfwidth: f64,
}

impl FrequencyGrid {
    /// Grid of `count` points covering `center ± halfwidth * width`.
    pub fn new(center: f64, width: f64, halfwidth: f64, count: usize) -> Result<Self> {
        if count < 2 || !count.is_power_of_two() {
            return Err(Error::domain(
                "count",
                format!("must be a power of two >= 2, got {count}"),
            ));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::domain("delta_omega", format!("must be > 0, got {width}")));
        }
        if !(halfwidth.is_finite() && halfwidth > 0.0) {
            return Err(Error::domain("halfwidth", format!("must be > 0, got {halfwidth}")));
        }
        let step = 2.0 * halfwidth * width / count as f64;
        let grid = FrequencyGrid {
            center,
            step,
            count,
            halfwidth,
        };
        if !(grid.first() > 0.0) {
            return Err(Error::domain(
                "delta_omega",
                format!(
                    "grid reaches non-positive frequency {} rad/s; need delta_omega < omega0 / halfwidth",
                    grid.first()
                ),
            ));
        }
        Ok(grid)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Half-width of the covered band in units of the packet width.
    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    /// Offset `w_i - center` of sample `i`.
    pub fn offset(&self, i: usize) -> f64 {
        (i as f64 - (self.count / 2) as f64) * self.step
    }

    pub fn point(&self, i: usize) -> f64 {
        self.center + self.offset(i)
    }

    pub fn first(&self) -> f64 {
        self.point(0)
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Complex spectral amplitude `A(w)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: FrequencyGrid,
    amplitudes: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: FrequencyGrid, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.count() {
            return Err(Error::Contract(format!(
                "{} amplitudes for a grid of {} points",
                amplitudes.len(),
                grid.count()
            )));
        }
        Ok(Spectrum { grid, amplitudes })
    }

    pub fn from_fn(grid: FrequencyGrid, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let amplitudes = (0..grid.count()).map(|i| f(grid.point(i))).collect();
        Spectrum { grid, amplitudes }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `|A(w_i)|^2` at every sample.
    pub fn power(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn same_grid(&self, other: &Spectrum) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::Contract("spectra are sampled on different grids".into()))
        }
    }
}

/// Gaussian packet whose spectral intensity `|A|^2` has FWHM `delta_omega`.
///
/// `A(w) = exp(-2 ln2 ((w - w0) / delta_omega)^2)`, unit peak at `w0`.
pub fn gaussian_spectrum(
    omega0: f64,
    delta_omega: f64,
    halfwidth: f64,
    count: usize,
) -> Result<Spectrum> {
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(Error::domain("omega0", format!("must be > 0, got {omega0}")));
    }
    if count < 64 || !count.is_power_of_two() {
        return Err(Error::domain(
            "count",
            format!("must be a power of two >= 64, got {count}"),
        ));
    }
    if !(halfwidth >= 4.0) {
        return Err(Error::domain("halfwidth", format!("must be >= 4, got {halfwidth}")));
    }
    let grid = FrequencyGrid::new(omega0, delta_omega, halfwidth, count)?;
    let amplitudes = (0..count)
        .map(|i| {
            let x = grid.offset(i) / delta_omega;
            Complex64::new((-2.0 * LN_2 * x * x).exp(), 0.0)
        })
        .collect();
    Ok(Spectrum { grid, amplitudes })
}

/// RMS-style width parameter `sigma` with `|A|^2 = exp(-(w - w0)^2 / sigma^2)`.
pub fn gaussian_sigma(delta_omega: f64) -> f64 {
    delta_omega / (2.0 * LN_2.sqrt())
}

/// Splits an incident spectrum at the boundary of `model` into the
/// transmitted (`t A`) and reflected (`r A`) spectra.
pub fn apply_boundary(incident: &Spectrum, model: &MediumModel) -> Result<(Spectrum, Spectrum)> {
    let grid = incident.grid;
    let mut transmitted = Vec::with_capacity(grid.count());
    let mut reflected = Vec::with_capacity(grid.count());
    for (i, a) in incident.amplitudes.iter().enumerate() {
        let c = boundary_coefficients(model.epsilon_near(grid.center(), grid.offset(i)))?;
        transmitted.push(c.t_field * a);
        reflected.push(c.r_field * a);
    }
    Ok((
        Spectrum {
            grid,
            amplitudes: transmitted,
        },
        Spectrum {
            grid,
            amplitudes: reflected,
        },
    ))
}

/// Complex envelope on a uniform time grid, carrier removed.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub envelope: Vec<Complex64>,
    /// Carrier frequency that was removed, rad/s.
    pub carrier: f64,
}

impl TimeSeries {
    pub fn step(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.envelope.iter().map(|e| e.norm_sqr()).collect()
    }
}

/// Envelope `E(t_j)` at `t_j = (j - N/2) dt`, `dt = 2 pi / (N dw)`.
pub fn time_profile(spec: &Spectrum) -> TimeSeries {
    let grid = spec.grid;
    let n = grid.count();
    let half = n / 2;
    let dt = 2.0 * PI / (n as f64 * grid.step());

    let mut buffer = vec![Complex64::new(0.0, 0.0); n];
    for (k, a) in spec.amplitudes.iter().enumerate() {
        buffer[(k + half) % n] = *a;
    }
    FftPlanner::new().plan_fft_forward(n).process(&mut buffer);

    let scale = grid.step() / (2.0 * PI);
    let times = (0..n).map(|j| (j as f64 - half as f64) * dt).collect();
    let envelope = (0..n).map(|j| buffer[(j + half) % n] * scale).collect();
    TimeSeries {
        times,
        envelope,
        carrier: grid.center(),
    }
}

/// Inverse of [`time_profile`]: recovers the spectrum on `grid`.
pub fn spectrum_from_time(series: &TimeSeries, grid: FrequencyGrid) -> Result<Spectrum> {
    let n = grid.count();
    if series.envelope.len() != n || series.times.len() != n {
        return Err(Error::Contract(format!(
            "time series of {} samples does not match a grid of {n} points",
            series.envelope.len()
        )));
    }
    let half = n / 2;
    let mut buffer = vec![Complex64::new(0.0, 0.0); n];
    for (j, e) in series.envelope.iter().enumerate() {
        buffer[(j + half) % n] = *e;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buffer);
    let dt = 2.0 * PI / (n as f64 * grid.step());
    let amplitudes = (0..n).map(|k| buffer[(k + half) % n] * dt).collect();
    Spectrum::new(grid, amplitudes)
}

/// Where a spectrum propagates; sets the flux density attached to `|A|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Vacuum,
    Dielectric(MediumModel),
}

impl Medium {
    /// `Re sqrt(eps(w))`: 1 in vacuum, 0 below cutoff.
    pub fn flux_factor(&self, omega: f64) -> f64 {
        match self {
            Medium::Vacuum => 1.0,
            Medium::Dielectric(m) => m.epsilon_unchecked(omega).max(0.0).sqrt(),
        }
    }

    /// Frequency at which the flux density has a square-root kink.
    pub fn cutoff(&self) -> Option<f64> {
        match self {
            Medium::Vacuum => None,
            Medium::Dielectric(m) => Some(m.cutoff_frequency()),
        }
    }
}

/// `∫ weight(w - center) smooth(w) dw` with `smooth` sampled on `grid`.
pub(crate) fn weighted_integral(
    grid: &FrequencyGrid,
    smooth: &[f64],
    weight: impl Fn(f64) -> f64,
    model: &MediumModel,
) -> f64 {
    let branch = model.cutoff_offset(grid.center());
    quadrature::product_integral(grid.offset(0), grid.step(), smooth, weight, Some(branch))
}

/// Flux integral and first moment (offset from the grid centre) of `spec`
/// in `medium`.
///
/// In a dielectric the density `Re sqrt(eps) |A|^2` is rewritten as
/// `(1 - R) |A / t|^2`. For a transmitted spectrum `A / t` is the incident
/// amplitude, which is smooth across the cutoff, so only the analytic factor
/// `1 - R` has to be resolved below the grid spacing.
fn flux_moments(spec: &Spectrum, medium: Medium) -> (f64, f64) {
    let grid = &spec.grid;
    match medium {
        Medium::Vacuum => {
            let power = spec.power();
            let moment: Vec<f64> = power
                .iter()
                .enumerate()
                .map(|(i, p)| grid.offset(i) * p)
                .collect();
            (
                quadrature::trapezoid(grid.step(), &power),
                quadrature::trapezoid(grid.step(), &moment),
            )
        }
        Medium::Dielectric(model) => {
            let center = grid.center();
            let referred: Vec<f64> = spec
                .amplitudes
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let eps = model.epsilon_near(center, grid.offset(i));
                    // |1 + n|^2 / 4 = 1 / |t|^2
                    let one_plus_n = if eps >= 0.0 {
                        (1.0 + eps.sqrt()).powi(2)
                    } else {
                        1.0 - eps
                    };
                    a.norm_sqr() * one_plus_n / 4.0
                })
                .collect();
            let weight = |y: f64| energy_transmittance(model.epsilon_near(center, y));
            (
                weighted_integral(grid, &referred, weight, &model),
                weighted_integral(grid, &referred, |y| y * weight(y), &model),
            )
        }
    }
}

/// Time-integrated flux of `spec` through a surface in `medium`, per unit
/// area, in units where the vacuum flux is `∫ |A|^2 dw`.
pub(crate) fn flux(spec: &Spectrum, medium: Medium) -> f64 {
    flux_moments(spec, medium).0
}

fn centroid_offset(spec: &Spectrum, medium: Medium) -> Result<f64> {
    let (total, moment) = flux_moments(spec, medium);
    if !(total > 0.0) {
        return Err(Error::domain("spectrum", "spectrum carries no energy"));
    }
    Ok(moment / total)
}

/// Mean frequency `∫ w |A|^2 dw / ∫ |A|^2 dw`.
pub fn spectral_centroid(spec: &Spectrum) -> Result<f64> {
    Ok(spec.grid.center() + centroid_offset(spec, Medium::Vacuum)?)
}

/// Mean frequency weighted by the Poynting flux density in `medium`,
/// `Re sqrt(eps) |A|^2`.
pub fn spectral_centroid_in(spec: &Spectrum, medium: Medium) -> Result<f64> {
    Ok(spec.grid.center() + centroid_offset(spec, medium)?)
}

/// Shift of the energy centroid of the transmitted packet relative to the
/// incident one, in rad/s. Positive means blue.
///
/// The transmitted spectrum is weighted by its flux in `model`, i.e.
/// `(1 - R) |A|^2`; the bare `|t A|^2` over-weights the red wing because
/// `|t|` grows as the index falls.
pub fn blue_shift(incident: &Spectrum, transmitted: &Spectrum, model: &MediumModel) -> Result<f64> {
    incident.same_grid(transmitted)?;
    let before = centroid_offset(incident, Medium::Vacuum)?;
    let after = centroid_offset(transmitted, Medium::Dielectric(*model))?;
    Ok(after - before)
}

/// Full width at half maximum of a sampled, single-peaked profile.
///
/// The peak and both crossings come from quadratics through three samples
/// of `ln(y)`, which is exact for Gaussians.
pub fn fwhm(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let (peak_idx, &peak) = ys
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if !(peak > 0.0) || ys.len() < 3 || xs.len() != ys.len() {
        return None;
    }
    let peak = if peak_idx > 0 && peak_idx + 1 < ys.len() {
        let (a, b, c) = log_quadratic(xs, ys, peak_idx - 1)?;
        if a < 0.0 {
            (c - b * b / (4.0 * a)).exp().max(peak)
        } else {
            peak
        }
    } else {
        peak
    };
    let half = 0.5 * peak;
    let right = (peak_idx..ys.len() - 1).find(|&i| ys[i + 1] < half)?;
    let left = (1..=peak_idx).rev().find(|&i| ys[i - 1] < half)? - 1;
    Some(log_quadratic_crossing(xs, ys, right, half)? - log_quadratic_crossing(xs, ys, left, half)?)
}

/// `ln(y) ≈ a t^2 + b t + c` through samples `k..k + 3`, `t = x - xs[k]`.
fn log_quadratic(xs: &[f64], ys: &[f64], k: usize) -> Option<(f64, f64, f64)> {
    let (x0, x1, x2) = (xs[k], xs[k + 1], xs[k + 2]);
    let (l0, l1, l2) = (ys[k].ln(), ys[k + 1].ln(), ys[k + 2].ln());
    let d1 = (l1 - l0) / (x1 - x0);
    let d2 = ((l2 - l1) / (x2 - x1) - d1) / (x2 - x0);
    let coeffs = (d2, d1 - d2 * (x1 - x0), l0);
    (coeffs.0.is_finite() && coeffs.1.is_finite() && coeffs.2.is_finite()).then_some(coeffs)
}

/// Crossing of `level` between samples `i` and `i + 1`.
fn log_quadratic_crossing(xs: &[f64], ys: &[f64], i: usize, level: f64) -> Option<f64> {
    let k = if i == 0 { 0 } else { (i - 1).min(ys.len() - 3) };
    let (a, b, c) = log_quadratic(xs, ys, k)?;
    let x0 = xs[k];
    let c = c - level.ln();
    let t = if a.abs() < 1e-300 {
        -c / b
    } else {
        let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
        let roots = [(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)];
        let mid = 0.5 * (xs[i] + xs[i + 1]) - x0;
        *roots
            .iter()
            .min_by(|p, q| (*p - mid).abs().total_cmp(&(*q - mid).abs()))?
    };
    t.is_finite().then_some(x0 + t)
}
