//! Quadrature on sampled spectra.
//!
//! Packet intensities are smooth and well resolved by the frequency grid,
//! but the boundary weights multiplying them (`R`, `1 - R`) are not: they
//! have a square-root branch point at the cutoff and, for steep dispersion,
//! vary on a scale far below the grid spacing. [`product_integral`]
//! therefore interpolates only the sampled factor and integrates it against
//! the analytic weight, in `u = sqrt(|y - b|)` around the branch point `b`.
//!
//! All reductions use pairwise summation so results do not depend on how
//! the work is partitioned.

/// Pairwise (cascade) summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Composite trapezoid on a uniform grid with spacing `step`.
pub fn trapezoid(step: f64, samples: &[f64]) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => {
            let interior = pairwise_sum(&samples[1..n - 1]);
            step * (interior + 0.5 * (samples[0] + samples[n - 1]))
        }
    }
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// 7-point Gauss weights for nodes 1, 3, 5, 7 above
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point
/// Gauss rule.
fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = GK_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += GK_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

/// Adaptive Gauss-Kronrod with bisection until the error estimate is below
/// `tol` or at rounding level.
pub fn adaptive_gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (value, err) = gauss_kronrod(f, a, b);
        // below ~100 ulp of the value the estimate is rounding noise
        if err <= tol || err <= 100.0 * f64::EPSILON * value.abs() || depth == 0 {
            return value;
        }
        let mid = 0.5 * (a + b);
        recurse(f, a, mid, 0.5 * tol, depth - 1) + recurse(f, mid, b, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    recurse(f, a, b, tol, 30)
}

const STENCIL: usize = 6;
const STENCIL_DENOM: [f64; STENCIL] = [-120.0, 24.0, -12.0, 12.0, -24.0, 120.0];

/// Six-point Lagrange interpolant of uniformly spaced samples.
struct Interpolant<'a> {
    start: f64,
    step: f64,
    samples: &'a [f64],
}

impl Interpolant<'_> {
    /// First node of the stencil used on bin `bin`.
    fn stencil_start(&self, bin: usize) -> usize {
        let n = self.samples.len();
        if n < STENCIL {
            return 0;
        }
        bin.saturating_sub(2).min(n - STENCIL)
    }

    fn eval(&self, stencil: usize, y: f64) -> f64 {
        let n = self.samples.len().min(STENCIL);
        let node0 = self.start + stencil as f64 * self.step;
        let tau = (y - node0) / self.step;
        if n < STENCIL {
            // short grids: linear between the two nearest samples
            let i = (tau.floor().max(0.0) as usize).min(self.samples.len() - 2);
            let frac = tau - i as f64;
            return self.samples[i] * (1.0 - frac) + self.samples[i + 1] * frac;
        }
        let d: [f64; STENCIL] = std::array::from_fn(|k| tau - k as f64);
        let mut prefix = [1.0; STENCIL];
        for k in 1..STENCIL {
            prefix[k] = prefix[k - 1] * d[k - 1];
        }
        let mut suffix = 1.0;
        let mut value = 0.0;
        for k in (0..STENCIL).rev() {
            value += self.samples[stencil + k] * prefix[k] * suffix / STENCIL_DENOM[k];
            suffix *= d[k];
        }
        value
    }
}

/// `∫ weight(y) a(y) dy` over the grid `start + i * step`, where `a` is
/// known through `samples` and `weight` is evaluated exactly.
///
/// `branch` marks a point where `weight` behaves like `sqrt(|y - branch|)`;
/// bins on either side are integrated in `u = sqrt(|y - branch|)`.
pub fn product_integral(
    start: f64,
    step: f64,
    samples: &[f64],
    weight: impl Fn(f64) -> f64,
    branch: Option<f64>,
) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let at = |i: usize| start + i as f64 * step;
    let scale = step
        * pairwise_sum(
            &samples
                .iter()
                .enumerate()
                .map(|(i, a)| (a * weight(at(i))).abs().max(a.abs() * 1e-3))
                .collect::<Vec<_>>(),
        );
    if scale == 0.0 {
        return 0.0;
    }
    let tol = 1e-14 * scale / n as f64;
    let interp = Interpolant {
        start,
        step,
        samples,
    };

    let bins: Vec<f64> = (0..n - 1)
        .map(|bin| {
            let stencil = interp.stencil_start(bin);
            let (lo, hi) = (at(bin), at(bin + 1));
            let integrand = |y: f64| weight(y) * interp.eval(stencil, y);
            match branch {
                Some(b) if b < hi && b > lo - 64.0 * step => {
                    let mut total = 0.0;
                    if lo < b {
                        // below: y = b - v^2
                        let f = |v: f64| 2.0 * v * integrand(b - v * v);
                        total += adaptive_gauss_kronrod(&f, (b - hi.min(b)).sqrt(), (b - lo).sqrt(), tol);
                    }
                    // above: y = b + u^2
                    let f = |u: f64| 2.0 * u * integrand(b + u * u);
                    total + adaptive_gauss_kronrod(&f, (lo.max(b) - b).sqrt(), (hi - b).sqrt(), tol)
                }
                Some(b) if b >= hi && b < hi + 64.0 * step => {
                    let f = |v: f64| 2.0 * v * integrand(b - v * v);
                    adaptive_gauss_kronrod(&f, (b - hi).sqrt(), (b - lo).sqrt(), tol)
                }
                _ => adaptive_gauss_kronrod(&integrand, lo, hi, tol),
            }
        })
        .collect();
    pairwise_sum(&bins)
}
