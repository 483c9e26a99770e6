//! Characteristic functions and their Fourier pairing with Wigner functions:
//!
//! ```text
//! W(x, p) = 1/(4π²) ∫∫ du dv χ(u, v) e^{i(v·x − u·p)}
//! χ(u, v) = ∫∫ dx dp W(x, p) e^{−i(v·x − u·p)}
//! ```
//!
//! so `v` is conjugate to `x` and `u` is conjugate to `p`. Gaussian channels
//! act on `χ` multiplicatively.

use num_complex::Complex;
use rustfft::FftDirection;

use super::grid::{GridSpec, WignerGrid};
use super::spectral::{fft2, padded_spec};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Conjugate variable selected by [`apply_quadrature_noise_factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugateAxis {
    /// Conjugate to `p`: a factor in `u` broadens the momentum quadrature.
    U,
    /// Conjugate to `x`: a factor in `v` broadens the position quadrature.
    V,
}

/// Sampled characteristic function.
///
/// The source grid is zero-padded to twice its size per axis before
/// transforming, so multiplicative channels do not wrap the state around the
/// periodic domain. Samples are row-major with the `v` index outermost,
/// mirroring the `x` index of the source. Node `k` of the `v` axis sits at
/// `(k − m_x/2)·2π/(m_x·Δx)` with `m_x = 2n_x`, so the origin is node
/// `(m_x/2, m_p/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicGrid<T> {
    source: GridSpec<T>,
    padded: GridSpec<T>,
    values: Vec<Complex<T>>,
}

impl<T: Real> CharacteristicGrid<T> {
    /// Phase-space grid this function transforms back onto.
    pub fn source_spec(&self) -> &GridSpec<T> {
        &self.source
    }

    /// Conjugate-domain sampling: the `x` fields describe `v`, the `p` fields `u`.
    pub fn spec(&self) -> GridSpec<T> {
        let two_pi = T::lit(2.0) * T::PI();
        let (mx, mp) = (self.padded.n_x, self.padded.n_p);
        let dv = two_pi / (T::from_usize_lossy(mx) * self.padded.dx());
        let du = two_pi / (T::from_usize_lossy(mp) * self.padded.dp());
        let hx = T::from_usize_lossy(mx / 2);
        let hp = T::from_usize_lossy(mp / 2);
        GridSpec {
            x_min: -hx * dv,
            x_max: hx * dv,
            p_min: -hp * du,
            p_max: hp * du,
            n_x: mx,
            n_p: mp,
        }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn v(&self, k: usize) -> T {
        self.spec().x(k)
    }

    pub fn u(&self, l: usize) -> T {
        self.spec().p(l)
    }

    /// Sample at conjugate node `(k, l)` = `(v_k, u_l)`.
    pub fn at(&self, k: usize, l: usize) -> Complex<T> {
        self.values[k * self.padded.n_p + l]
    }

    pub fn at_origin(&self) -> Complex<T> {
        self.at(self.padded.n_x / 2, self.padded.n_p / 2)
    }
}

fn alternating<T: Real>(i: usize) -> T {
    if i.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

fn phase<T: Real>(angle: T) -> Complex<T> {
    Complex::new(angle.cos(), angle.sin())
}

/// Discrete transform `W → χ`.
pub fn to_characteristic<T: Real>(w: &WignerGrid<T>) -> CharacteristicGrid<T> {
    let source = *w.spec();
    let padded = padded_spec(&source);
    let (mx, mp) = (padded.n_x, padded.n_p);
    let (ox, op) = (source.n_x / 2, source.n_p / 2);
    let mut buf = vec![Complex::new(T::zero(), T::zero()); padded.len()];
    for i in 0..source.n_x {
        for j in 0..source.n_p {
            let (a, b) = (i + ox, j + op);
            let sign = alternating::<T>(a) * alternating::<T>(b);
            buf[a * mp + b] = Complex::new(w.at(i, j) * sign, T::zero());
        }
    }
    // e^{−i v x} is a forward transform along x, e^{+i u p} an inverse one along p.
    transform_axes(
        &mut buf,
        mx,
        mp,
        FftDirection::Forward,
        FftDirection::Inverse,
    );

    let mut chi = CharacteristicGrid {
        source,
        padded,
        values: Vec::new(),
    };
    let area = padded.dx() * padded.dp();
    for k in 0..mx {
        let vx = phase(-chi.v(k) * padded.x_min);
        for l in 0..mp {
            let up = phase(chi.u(l) * padded.p_min);
            buf[k * mp + l] = buf[k * mp + l] * vx * up * area;
        }
    }
    chi.values = buf;
    chi
}

/// Discrete transform `χ → W`; exact inverse of [`to_characteristic`] up to
/// round-off. The imaginary residue is discarded.
pub fn from_characteristic<T: Real>(chi: &CharacteristicGrid<T>) -> WignerGrid<T> {
    let (source, padded) = (chi.source, chi.padded);
    let (mx, mp) = (padded.n_x, padded.n_p);
    let mut buf = chi.values.clone();
    for k in 0..mx {
        let vx = phase(chi.v(k) * padded.x_min);
        for l in 0..mp {
            let up = phase(-chi.u(l) * padded.p_min);
            buf[k * mp + l] = buf[k * mp + l] * vx * up;
        }
    }
    transform_axes(
        &mut buf,
        mx,
        mp,
        FftDirection::Inverse,
        FftDirection::Forward,
    );
    // du·dv/4π² = 1/(m_x·m_p·Δx·Δp).
    let scale = T::one() / (T::from_usize_lossy(mx * mp) * padded.dx() * padded.dp());
    let (ox, op) = (source.n_x / 2, source.n_p / 2);
    let mut values = Vec::with_capacity(source.len());
    for i in 0..source.n_x {
        for j in 0..source.n_p {
            let (a, b) = (i + ox, j + op);
            let sign = alternating::<T>(a) * alternating::<T>(b);
            values.push(buf[a * mp + b].re * sign * scale);
        }
    }
    WignerGrid::from_raw(source, values)
}

fn transform_axes<T: Real>(
    buf: &mut [Complex<T>],
    rows: usize,
    cols: usize,
    x_dir: FftDirection,
    p_dir: FftDirection,
) {
    if x_dir == p_dir {
        fft2(buf, rows, cols, x_dir);
        return;
    }
    let mut planner = rustfft::FftPlanner::<T>::new();
    planner.plan_fft(cols, p_dir).process(buf);
    let mut cols_major = vec![Complex::new(T::zero(), T::zero()); buf.len()];
    for r in 0..rows {
        for c in 0..cols {
            cols_major[c * rows + r] = buf[r * cols + c];
        }
    }
    planner.plan_fft(rows, x_dir).process(&mut cols_major);
    for r in 0..rows {
        for c in 0..cols {
            buf[r * cols + c] = cols_major[c * rows + r];
        }
    }
}

/// Multiply `χ` by `e^{−γ²u²/2}` (axis `U`) or `e^{−γ²v²/2}` (axis `V`).
///
/// Equivalent to adding Gaussian noise of standard deviation `γ` to `p`
/// (axis `U`) or to `x` (axis `V`). Applying both axes with `γ = e^{−r}`
/// reproduces unity-gain teleportation; adding an independent noise of
/// amplitude `N` corresponds to `γ² = e^{−2r} + N²`.
pub fn apply_quadrature_noise_factor<T: Real>(
    chi: &CharacteristicGrid<T>,
    gamma: T,
    axis: ConjugateAxis,
) -> Result<CharacteristicGrid<T>> {
    if !(gamma >= T::zero() && gamma.is_finite()) {
        return Err(Error::param(
            "gamma",
            format!("must be finite and >= 0, got {gamma}"),
        ));
    }
    let (nx, np) = (chi.padded.n_x, chi.padded.n_p);
    let half = T::lit(0.5);
    let g2 = gamma * gamma;
    let spec = chi.spec();
    let mut values = chi.values.clone();
    for k in 0..nx {
        for l in 0..np {
            let freq = match axis {
                ConjugateAxis::U => spec.p(l),
                ConjugateAxis::V => spec.x(k),
            };
            values[k * np + l] = values[k * np + l] * (-half * g2 * freq * freq).exp();
        }
    }
    Ok(CharacteristicGrid {
        values,
        ..chi.clone()
    })
}
