//! FFT plumbing for the grid engine.

use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use super::grid::{catmull_rom_weights, GridSpec, WignerGrid};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest tolerated bound on the kernel mass that can wrap around the
/// zero-padded buffer.
pub const LEAKAGE_LIMIT: f64 = 1e-6;

/// In-place 2-D transform of a row-major `rows × cols` buffer, unnormalized.
pub(crate) fn fft2<T: Real>(buf: &mut [Complex<T>], rows: usize, cols: usize, dir: FftDirection) {
    debug_assert_eq!(buf.len(), rows * cols);
    let mut planner = FftPlanner::<T>::new();
    planner.plan_fft(cols, dir).process(buf);
    let mut transposed = transpose(buf, rows, cols);
    planner.plan_fft(rows, dir).process(&mut transposed);
    let back = transpose(&transposed, cols, rows);
    buf.copy_from_slice(&back);
}

fn transpose<T: Copy + Default>(src: &[T], rows: usize, cols: usize) -> Vec<T> {
    let mut out = vec![T::default(); src.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = src[r * cols + c];
        }
    }
    out
}

/// Angular frequency of FFT bin `k` for `n` samples spaced by `step`.
fn angular_frequency<T: Real>(k: usize, n: usize, step: T) -> T {
    let signed = if k < n / 2 {
        T::from_usize_lossy(k)
    } else {
        -T::from_usize_lossy(n - k)
    };
    T::lit(2.0) * T::PI() * signed / (T::from_usize_lossy(n) * step)
}

/// Upper bound on the probability that a Gaussian displacement of standard
/// deviation `sigma` exceeds `reach` in either axis (Mills-ratio bound).
pub(crate) fn kernel_escape_bound<T: Real>(sigma: T, reach_x: T, reach_p: T) -> f64 {
    let sigma = sigma.to_f64_lossy();
    if sigma == 0.0 {
        return 0.0;
    }
    let tail = |a: f64| {
        let z = a / sigma;
        (2.0 / std::f64::consts::PI).sqrt() * (-0.5 * z * z).exp() / z
    };
    tail(reach_x.to_f64_lossy()) + tail(reach_p.to_f64_lossy())
}

/// Grid zero-padded to twice its size per axis, with the original domain in
/// the centre. Holds the result of a convolution before cropping so that
/// resampling may look beyond the original extents.
#[derive(Debug, Clone)]
pub(crate) struct PaddedField<T> {
    pub spec: GridSpec<T>,
    pub values: Vec<T>,
}

impl<T: Real> PaddedField<T> {
    fn index(&self, i: usize, j: usize) -> usize {
        i * self.spec.n_p + j
    }

    /// Restrict back to the original domain.
    pub fn crop(&self, inner: &GridSpec<T>) -> WignerGrid<T> {
        let (ox, op) = (inner.n_x / 2, inner.n_p / 2);
        let mut values = Vec::with_capacity(inner.len());
        for i in 0..inner.n_x {
            let row = self.index(i + ox, op);
            values.extend_from_slice(&self.values[row..row + inner.n_p]);
        }
        WignerGrid::from_raw(*inner, values)
    }

    /// Catmull-Rom bicubic interpolation; zero outside the padded domain.
    pub fn bicubic(&self, x: T, p: T) -> T {
        let fx = (x - self.spec.x_min) / self.spec.dx();
        let fp = (p - self.spec.p_min) / self.spec.dp();
        let nx = T::from_usize_lossy(self.spec.n_x - 1);
        let np = T::from_usize_lossy(self.spec.n_p - 1);
        if fx < T::zero() || fp < T::zero() || fx > nx || fp > np {
            return T::zero();
        }
        let i0 = fx.floor().to_usize().unwrap_or(0).min(self.spec.n_x - 2);
        let j0 = fp.floor().to_usize().unwrap_or(0).min(self.spec.n_p - 2);
        let wx = catmull_rom_weights(fx - T::from_usize_lossy(i0));
        let wp = catmull_rom_weights(fp - T::from_usize_lossy(j0));
        let mut acc = T::zero();
        for (a, wa) in wx.iter().enumerate() {
            let Some(i) = (i0 + a).checked_sub(1).filter(|&i| i < self.spec.n_x) else {
                continue;
            };
            let mut row = T::zero();
            for (b, wb) in wp.iter().enumerate() {
                if let Some(j) = (j0 + b).checked_sub(1).filter(|&j| j < self.spec.n_p) {
                    row = row + *wb * self.values[self.index(i, j)];
                }
            }
            acc = acc + *wa * row;
        }
        acc
    }
}

pub(crate) fn padded_spec<T: Real>(spec: &GridSpec<T>) -> GridSpec<T> {
    let half_x = (spec.x_max - spec.x_min) / T::lit(2.0);
    let half_p = (spec.p_max - spec.p_min) / T::lit(2.0);
    GridSpec {
        x_min: spec.x_min - half_x,
        x_max: spec.x_max + half_x,
        p_min: spec.p_min - half_p,
        p_max: spec.p_max + half_p,
        n_x: 2 * spec.n_x,
        n_p: 2 * spec.n_p,
    }
}

/// Convolve with per-axis Gaussian kernels of standard deviations
/// `(sigma_x, sigma_p)`, applying the exact Gaussian transfer function on the
/// zero-padded spectrum.
///
/// `reach` is how far beyond the original domain, as a multiple of its
/// half-width, the caller will read the result (1 for a plain crop). The
/// nearest periodic image of the input then lies `3h − reach·h` away, and
/// the kernel mass beyond that distance is what can alias.
pub(crate) fn convolve_padded<T: Real>(
    w: &WignerGrid<T>,
    sigma_x: T,
    sigma_p: T,
    reach: T,
) -> Result<PaddedField<T>> {
    let spec = *w.spec();
    let padded = padded_spec(&spec);
    let reach = reach.max(T::one()).min(T::lit(2.0));
    let half_x = (spec.x_max - spec.x_min) / T::lit(2.0);
    let half_p = (spec.p_max - spec.p_min) / T::lit(2.0);
    let gap = T::lit(3.0) - reach;
    let leakage = kernel_escape_bound(sigma_x.max(sigma_p), gap * half_x, gap * half_p)
        * w.max_abs().to_f64_lossy().max(1.0);
    if leakage > LEAKAGE_LIMIT {
        return Err(Error::Aliasing {
            leakage,
            limit: LEAKAGE_LIMIT,
        });
    }

    let (rows, cols) = (padded.n_x, padded.n_p);
    let (ox, op) = (spec.n_x / 2, spec.n_p / 2);
    let mut buf = vec![Complex::new(T::zero(), T::zero()); rows * cols];
    for i in 0..spec.n_x {
        for j in 0..spec.n_p {
            buf[(i + ox) * cols + j + op] = Complex::new(w.at(i, j), T::zero());
        }
    }
    fft2(&mut buf, rows, cols, FftDirection::Forward);

    let half = T::lit(0.5);
    let damp_p: Vec<T> = (0..cols)
        .map(|j| {
            let k = angular_frequency(j, cols, padded.dp());
            (-half * sigma_p * sigma_p * k * k).exp()
        })
        .collect();
    let scale = T::one() / T::from_usize_lossy(rows * cols);
    for i in 0..rows {
        let k = angular_frequency(i, rows, padded.dx());
        let damp_x = (-half * sigma_x * sigma_x * k * k).exp() * scale;
        for (j, d) in damp_p.iter().enumerate() {
            buf[i * cols + j] = buf[i * cols + j] * (damp_x * *d);
        }
    }
    fft2(&mut buf, rows, cols, FftDirection::Inverse);

    Ok(PaddedField {
        spec: padded,
        values: buf.into_iter().map(|c| c.re).collect(),
    })
}
