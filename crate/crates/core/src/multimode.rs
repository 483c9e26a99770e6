//! Reduction of broadband teleportation to a single effective wave-packet
//! mode.
//!
//! All frequencies are sideband offsets `Ω = ω − ω₀` from the carrier. Spectral
//! averages (`effective_epr`, `effective_noise`, `gain_moments`) weight by an
//! l1-normalized mode function, `∫ f dΩ = 1`, so that a flat spectrum averages
//! to itself. The l2 convention `∫ |f|² dΩ = 1` is what preserves the
//! wave-packet commutator and is available as a tag.

use std::io::Read;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance on the normalization integral of a [`ModeFunction`].
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Largest mode-function mass a frequency grid may truncate.
pub const TRUNCATION_LIMIT: f64 = 1e-3;
pub const DEFAULT_MAX_GAIN: f64 = 10.0;

/// Strictly increasing sideband-frequency samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid<T>(Vec<T>);

impl<T: Real> FrequencyGrid<T> {
    pub fn new(omega: Vec<T>) -> Result<Self> {
        if omega.len() < 2 {
            return Err(Error::param("omega", "need at least two samples"));
        }
        if omega.iter().any(|w| !w.is_finite()) {
            return Err(Error::param("omega", "samples must be finite"));
        }
        if let Some(k) = omega.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::param(
                "omega",
                format!("not strictly increasing at index {}", k + 1),
            ));
        }
        Ok(Self(omega))
    }

    /// `n` evenly spaced samples on `[lo, hi]`.
    pub fn uniform(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::param(
                "omega",
                "uniform grid needs n >= 2 and hi > lo",
            ));
        }
        let step = (hi - lo) / T::from_usize_lossy(n - 1);
        Self::new((0..n).map(|k| lo + T::from_usize_lossy(k) * step).collect())
    }

    /// Uniform grid on `[−half_span, half_span]` with spacing close to `step`
    /// and an odd sample count, so `Ω = 0` is a node.
    pub fn symmetric(half_span: T, step: T) -> Result<Self> {
        let half = (half_span / step).ceil().to_usize().unwrap_or(0).max(1);
        Self::uniform(-half_span, half_span, 2 * half + 1)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lo(&self) -> T {
        self.0[0]
    }

    pub fn hi(&self) -> T {
        self.0[self.0.len() - 1]
    }

    /// Grid with every interval split in two.
    pub fn refined(&self) -> Self {
        let mut out = Vec::with_capacity(2 * self.len() - 1);
        for w in self.0.windows(2) {
            out.push(w[0]);
            out.push((w[0] + w[1]) / T::lit(2.0));
        }
        out.push(self.hi());
        Self(out)
    }

    /// Composite trapezoid integral of `values` sampled on this grid.
    pub fn trapezoid<V>(&self, values: &[V]) -> V
    where
        V: Copy + std::ops::Add<Output = V> + std::ops::Mul<T, Output = V>,
    {
        debug_assert_eq!(values.len(), self.len());
        let half = T::lit(0.5);
        let mut acc = (values[0] + values[1]) * ((self.0[1] - self.0[0]) * half);
        for k in 1..self.len() - 1 {
            acc = acc + (values[k] + values[k + 1]) * ((self.0[k + 1] - self.0[k]) * half);
        }
        acc
    }

    /// Fails unless both grids hold identical samples.
    pub fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "frequency grids differ ({} samples on [{}, {}] vs {} on [{}, {}]); resample explicitly",
                self.len(),
                self.lo(),
                self.hi(),
                other.len(),
                other.lo(),
                other.hi()
            )))
        }
    }

    /// Linear interpolation of `values` onto `target`; the target must lie
    /// inside this grid.
    pub fn interpolate<V>(&self, values: &[V], target: &Self) -> Result<Vec<V>>
    where
        V: Copy + std::ops::Add<Output = V> + std::ops::Mul<T, Output = V>,
    {
        if target.lo() < self.lo() || target.hi() > self.hi() {
            return Err(Error::GridMismatch(format!(
                "target [{}, {}] extends beyond source [{}, {}]",
                target.lo(),
                target.hi(),
                self.lo(),
                self.hi()
            )));
        }
        let mut k = 0;
        Ok(target
            .0
            .iter()
            .map(|&w| {
                while k + 2 < self.len() && self.0[k + 1] < w {
                    k += 1;
                }
                let t = (w - self.0[k]) / (self.0[k + 1] - self.0[k]);
                values[k] * (T::one() - t) + values[k + 1] * t
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `∫ f dΩ = 1`.
    L1,
    /// `∫ |f|² dΩ = 1`.
    L2,
    /// No normalization, e.g. the product of a mode with a transfer function.
    Raw,
}

/// Frequency-domain weight `f(Ω)` of a wave-packet mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeFunction<T> {
    omega: FrequencyGrid<T>,
    weights: Vec<Complex<T>>,
    normalization: Normalization,
}

impl<T: Real> ModeFunction<T> {
    /// Normalizes `weights` under `normalization` (a no-op for `Raw`).
    pub fn new(
        omega: FrequencyGrid<T>,
        weights: Vec<Complex<T>>,
        normalization: Normalization,
    ) -> Result<Self> {
        if weights.len() != omega.len() {
            return Err(Error::GridMismatch(format!(
                "{} weights for {} frequencies",
                weights.len(),
                omega.len()
            )));
        }
        if weights
            .iter()
            .any(|w| !(w.re.is_finite() && w.im.is_finite()))
        {
            return Err(Error::param("weights", "samples must be finite"));
        }
        let mut mode = Self {
            omega,
            weights,
            normalization: Normalization::Raw,
        };
        mode.renormalize(normalization)?;
        Ok(mode)
    }

    pub fn from_real(
        omega: FrequencyGrid<T>,
        weights: &[T],
        normalization: Normalization,
    ) -> Result<Self> {
        let weights = weights
            .iter()
            .map(|&w| Complex::new(w, T::zero()))
            .collect();
        Self::new(omega, weights, normalization)
    }

    pub fn renormalize(&mut self, normalization: Normalization) -> Result<()> {
        let factor = match normalization {
            Normalization::Raw => Complex::new(T::one(), T::zero()),
            Normalization::L1 => {
                let total = self.omega.trapezoid(&self.weights);
                if total.norm() <= T::epsilon() {
                    return Err(Error::param("weights", "l1 integral vanishes"));
                }
                total.inv()
            }
            Normalization::L2 => {
                let norm = self.l2_norm();
                if norm <= T::epsilon() {
                    return Err(Error::param("weights", "l2 norm vanishes"));
                }
                Complex::new(norm.recip(), T::zero())
            }
        };
        for w in self.weights.iter_mut() {
            *w = *w * factor;
        }
        self.normalization = normalization;
        Ok(())
    }

    pub fn omega(&self) -> &FrequencyGrid<T> {
        &self.omega
    }

    pub fn weights(&self) -> &[Complex<T>] {
        &self.weights
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// `∫ f dΩ`.
    pub fn l1_integral(&self) -> Complex<T> {
        self.omega.trapezoid(&self.weights)
    }

    /// `√(∫ |f|² dΩ)`.
    pub fn l2_norm(&self) -> T {
        let sq: Vec<T> = self.weights.iter().map(|w| w.norm_sqr()).collect();
        self.omega.trapezoid(&sq).sqrt()
    }

    pub fn has_negative_lobes(&self) -> bool {
        self.weights.iter().any(|w| w.re < T::zero())
    }

    /// Real weights for spectral averaging.
    fn real_weights(&self) -> Result<Vec<T>> {
        if self.normalization != Normalization::L1 {
            return Err(Error::param(
                "mode",
                format!(
                    "spectral averages need an l1-normalized mode, got {:?}",
                    self.normalization
                ),
            ));
        }
        let scale = self.weights.iter().fold(T::zero(), |m, w| m.max(w.norm()));
        let tol = T::lit(1e-12) * scale.max(T::one());
        if self.weights.iter().any(|w| w.im.abs() > tol) {
            return Err(Error::param("mode", "spectral averages need real weights"));
        }
        if self.has_negative_lobes() {
            log::warn!(
                "mode function has negative lobes; spectral average may not be a convex mean"
            );
        }
        Ok(self.weights.iter().map(|w| w.re).collect())
    }

    pub fn resample(&self, target: &FrequencyGrid<T>) -> Result<Self> {
        let weights = self.omega.interpolate(&self.weights, target)?;
        let mut out = Self {
            omega: target.clone(),
            weights,
            normalization: Normalization::Raw,
        };
        out.renormalize(self.normalization)?;
        Ok(out)
    }
}

/// Spectrum of EPR correlations `r(Ω)`; `S₋(Ω) = e^{−r(Ω)}` is the squeezed
/// quadrature noise relative to vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingSpectrum<T> {
    omega: FrequencyGrid<T>,
    r_values: Vec<T>,
}

impl<T: Real> SqueezingSpectrum<T> {
    pub fn from_r(omega: FrequencyGrid<T>, r_values: Vec<T>) -> Result<Self> {
        if r_values.len() != omega.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for {} frequencies",
                r_values.len(),
                omega.len()
            )));
        }
        if r_values.iter().any(|r| !r.is_finite()) {
            return Err(Error::param("r", "spectrum samples must be finite"));
        }
        Ok(Self { omega, r_values })
    }

    pub fn from_s_minus(omega: FrequencyGrid<T>, s_minus: &[T]) -> Result<Self> {
        if let Some(bad) = s_minus.iter().find(|s| !(**s > T::zero())) {
            return Err(Error::param(
                "s_minus",
                format!("must be positive, got {bad}"),
            ));
        }
        Self::from_r(omega, s_minus.iter().map(|s| -s.ln()).collect())
    }

    pub fn flat(omega: FrequencyGrid<T>, r: T) -> Result<Self> {
        let n = omega.len();
        Self::from_r(omega, vec![r; n])
    }

    pub fn omega(&self) -> &FrequencyGrid<T> {
        &self.omega
    }

    pub fn r_values(&self) -> &[T] {
        &self.r_values
    }

    pub fn s_minus(&self) -> Vec<T> {
        self.r_values.iter().map(|r| (-*r).exp()).collect()
    }

    pub fn resample(&self, target: &FrequencyGrid<T>) -> Result<Self> {
        Self::from_r(
            target.clone(),
            self.omega.interpolate(&self.r_values, target)?,
        )
    }
}

/// Classical-channel transfer function `g(Ω)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferFunction<T> {
    omega: FrequencyGrid<T>,
    g_values: Vec<Complex<T>>,
}

impl<T: Real> TransferFunction<T> {
    pub fn new(omega: FrequencyGrid<T>, g_values: Vec<Complex<T>>) -> Result<Self> {
        Self::with_max_gain(omega, g_values, T::lit(DEFAULT_MAX_GAIN))
    }

    pub fn with_max_gain(
        omega: FrequencyGrid<T>,
        g_values: Vec<Complex<T>>,
        max_gain: T,
    ) -> Result<Self> {
        if g_values.len() != omega.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for {} frequencies",
                g_values.len(),
                omega.len()
            )));
        }
        for g in &g_values {
            if !(g.re.is_finite() && g.im.is_finite()) || g.norm() > max_gain {
                return Err(Error::param(
                    "g",
                    format!("|g| = {} exceeds {max_gain}", g.norm()),
                ));
            }
        }
        Ok(Self { omega, g_values })
    }

    pub fn from_fn(omega: FrequencyGrid<T>, g: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let values = omega.as_slice().iter().map(|&w| g(w)).collect();
        Self::new(omega, values)
    }

    pub fn unity(omega: FrequencyGrid<T>) -> Result<Self> {
        Self::from_fn(omega, |_| Complex::new(T::one(), T::zero()))
    }

    /// Pure delay `e^{−iΩΔt}`.
    pub fn delay(omega: FrequencyGrid<T>, dt: T) -> Result<Self> {
        Self::from_fn(omega, |w| Complex::new((w * dt).cos(), -(w * dt).sin()))
    }

    /// First-order low-pass `1/(1 + iΩ/Ω_c)`.
    pub fn low_pass(omega: FrequencyGrid<T>, cutoff: T) -> Result<Self> {
        Self::from_fn(omega, |w| Complex::new(T::one(), w / cutoff).inv())
    }

    pub fn omega(&self) -> &FrequencyGrid<T> {
        &self.omega
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.g_values
    }

    pub fn resample(&self, target: &FrequencyGrid<T>) -> Result<Self> {
        Self::new(
            target.clone(),
            self.omega.interpolate(&self.g_values, target)?,
        )
    }
}

/// `g± = ∫ f g e^{±(r(Ω) − r_eff)} dΩ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainMoments<T> {
    pub g_plus: Complex<T>,
    pub g_minus: Complex<T>,
}

impl<T: Real> GainMoments<T> {
    /// Coefficient `(1 + g₋)/√2 · e^{−r_eff}` of the squeezed auxiliary mode.
    pub fn squeezing_coefficient(&self, r_eff: T) -> Complex<T> {
        (self.g_minus + T::one()) * (T::FRAC_1_SQRT_2() * (-r_eff).exp())
    }

    /// Coefficient `(1 − g₊)/√2 · e^{+r_eff}` of the anti-squeezed auxiliary
    /// mode; vanishes at unity gain with a flat spectrum.
    pub fn antisqueezing_coefficient(&self, r_eff: T) -> Complex<T> {
        (Complex::new(T::one(), T::zero()) - self.g_plus) * (T::FRAC_1_SQRT_2() * r_eff.exp())
    }
}

/// Lorentzian `f(Ω) = (γ/π)/(γ² + Ω²)` of half-width `γ`, normalized on the
/// grid under `normalization`.
pub fn lorentzian_mode<T: Real>(
    gamma: T,
    omega: FrequencyGrid<T>,
    normalization: Normalization,
) -> Result<ModeFunction<T>> {
    if !(gamma > T::zero() && gamma.is_finite()) {
        return Err(Error::param(
            "gamma",
            format!("must be positive, got {gamma}"),
        ));
    }
    let inside = ((omega.hi() / gamma).atan() - (omega.lo() / gamma).atan()) / T::PI();
    let truncated = (T::one() - inside).to_f64_lossy();
    if truncated > TRUNCATION_LIMIT {
        return Err(Error::GridSpan { truncated });
    }
    let weights: Vec<T> = omega
        .as_slice()
        .iter()
        .map(|&w| gamma / (T::PI() * (gamma * gamma + w * w)))
        .collect();
    ModeFunction::from_real(omega, &weights, normalization)
}

/// Below-threshold OPO squeezing spectrum
/// `S₋(Ω) = 1 − 4x/((1+x)² + (Ω/κ)²)` for pump parameter `x ∈ [0, 1)` and
/// cavity decay rate `κ`.
pub fn opo_squeezing_spectrum<T: Real>(
    x_pump: T,
    kappa_cav: T,
    omega: FrequencyGrid<T>,
) -> Result<SqueezingSpectrum<T>> {
    if !(x_pump >= T::zero()) || x_pump >= T::one() {
        return Err(Error::PumpRange(x_pump.to_f64_lossy()));
    }
    if !(kappa_cav > T::zero() && kappa_cav.is_finite()) {
        return Err(Error::param(
            "kappa_cav",
            format!("must be positive, got {kappa_cav}"),
        ));
    }
    let one_x = T::one() + x_pump;
    let s_minus: Vec<T> = omega
        .as_slice()
        .iter()
        .map(|&w| {
            let q = w / kappa_cav;
            T::one() - T::lit(4.0) * x_pump / (one_x * one_x + q * q)
        })
        .collect();
    SqueezingSpectrum::from_s_minus(omega, &s_minus)
}

/// `r_eff = −ln ∫ f(Ω) e^{−r(Ω)} dΩ`.
pub fn effective_epr<T: Real>(f: &ModeFunction<T>, spec: &SqueezingSpectrum<T>) -> Result<T> {
    f.omega.ensure_same(&spec.omega)?;
    let weights = f.real_weights()?;
    let integrand: Vec<T> = weights
        .iter()
        .zip(&spec.r_values)
        .map(|(&w, &r)| w * (-r).exp())
        .collect();
    let mean = f.omega.trapezoid(&integrand);
    if !(mean > T::zero()) {
        return Err(Error::param(
            "mode",
            format!("weighted S₋ average {mean} is not positive"),
        ));
    }
    Ok(-mean.ln())
}

pub fn gain_moments<T: Real>(
    f: &ModeFunction<T>,
    g: &TransferFunction<T>,
    spec: &SqueezingSpectrum<T>,
    r_eff: T,
) -> Result<GainMoments<T>> {
    f.omega.ensure_same(&g.omega)?;
    f.omega.ensure_same(&spec.omega)?;
    let base: Vec<Complex<T>> = f
        .weights
        .iter()
        .zip(&g.g_values)
        .map(|(a, b)| a * b)
        .collect();
    let plus: Vec<Complex<T>> = base
        .iter()
        .zip(&spec.r_values)
        .map(|(b, &r)| b * (r - r_eff).exp())
        .collect();
    let minus: Vec<Complex<T>> = base
        .iter()
        .zip(&spec.r_values)
        .map(|(b, &r)| b * (r_eff - r).exp())
        .collect();
    Ok(GainMoments {
        g_plus: f.omega.trapezoid(&plus),
        g_minus: f.omega.trapezoid(&minus),
    })
}

/// Mode reaching the output: `f·g`, left unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputMode<T> {
    pub mode: ModeFunction<T>,
    /// `‖f·g‖₂`.
    pub l2_norm: T,
    /// `‖f·g‖₂ / ‖f‖₂`.
    pub transmission: T,
}

pub fn output_mode_function<T: Real>(
    f: &ModeFunction<T>,
    g: &TransferFunction<T>,
) -> Result<OutputMode<T>> {
    f.omega.ensure_same(&g.omega)?;
    let weights = f
        .weights
        .iter()
        .zip(&g.g_values)
        .map(|(a, b)| a * b)
        .collect();
    let mode = ModeFunction {
        omega: f.omega.clone(),
        weights,
        normalization: Normalization::Raw,
    };
    let l2_norm = mode.l2_norm();
    Ok(OutputMode {
        transmission: l2_norm / f.l2_norm(),
        l2_norm,
        mode,
    })
}

/// Sampled classical-noise amplitude spectrum `N(Ω) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpectrum<T> {
    omega: FrequencyGrid<T>,
    values: Vec<T>,
}

impl<T: Real> NoiseSpectrum<T> {
    pub fn new(omega: FrequencyGrid<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != omega.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for {} frequencies",
                values.len(),
                omega.len()
            )));
        }
        for (&w, &v) in omega.as_slice().iter().zip(&values) {
            if !(v >= T::zero() && v.is_finite()) {
                return Err(Error::NegativeNoise {
                    omega: w.to_f64_lossy(),
                    value: v.to_f64_lossy(),
                });
            }
        }
        Ok(Self { omega, values })
    }

    pub fn flat(omega: FrequencyGrid<T>, level: T) -> Result<Self> {
        let n = omega.len();
        Self::new(omega, vec![level; n])
    }

    pub fn omega(&self) -> &FrequencyGrid<T> {
        &self.omega
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn resample(&self, target: &FrequencyGrid<T>) -> Result<Self> {
        Self::new(
            target.clone(),
            self.omega.interpolate(&self.values, target)?,
        )
    }
}

/// `N_eff = ∫ f(Ω) N(Ω) dΩ`.
pub fn effective_noise<T: Real>(f: &ModeFunction<T>, n: &NoiseSpectrum<T>) -> Result<T> {
    f.omega.ensure_same(&n.omega)?;
    let weights = f.real_weights()?;
    let integrand: Vec<T> = weights
        .iter()
        .zip(&n.values)
        .map(|(&w, &v)| w * v)
        .collect();
    Ok(f.omega.trapezoid(&integrand))
}

/// Reads `omega,value` rows (header required).
pub fn read_real_samples<T: Real, R: Read>(input: R) -> Result<(FrequencyGrid<T>, Vec<T>)> {
    let mut rdr = csv::Reader::from_reader(input);
    expect_header(&mut rdr, &["omega", "value"])?;
    let mut omega = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.deserialize::<(f64, f64)>() {
        let (w, v) = rec?;
        omega.push(T::lit(w));
        values.push(T::lit(v));
    }
    Ok((FrequencyGrid::new(omega)?, values))
}

/// Reads `omega,re,im` rows, or `omega,value` rows as purely real samples.
pub fn read_complex_samples<T: Real, R: Read>(
    input: R,
) -> Result<(FrequencyGrid<T>, Vec<Complex<T>>)> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let mut omega = Vec::new();
    let mut values = Vec::new();
    match headers
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>()
        .as_slice()
    {
        ["omega", "re", "im"] => {
            for rec in rdr.deserialize::<(f64, f64, f64)>() {
                let (w, re, im) = rec?;
                omega.push(T::lit(w));
                values.push(Complex::new(T::lit(re), T::lit(im)));
            }
        }
        ["omega", "value"] => {
            for rec in rdr.deserialize::<(f64, f64)>() {
                let (w, v) = rec?;
                omega.push(T::lit(w));
                values.push(Complex::new(T::lit(v), T::zero()));
            }
        }
        other => {
            return Err(Error::Io(format!(
                "expected header omega,re,im or omega,value, got {}",
                other.join(",")
            )))
        }
    }
    Ok((FrequencyGrid::new(omega)?, values))
}

fn expect_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let headers = rdr.headers()?;
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Io(format!(
            "expected header {}, got {}",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn wide_grid() -> FrequencyGrid<f64> {
        FrequencyGrid::symmetric(1000.0, 0.01).unwrap()
    }

    #[test]
    fn lorentzian_normalization_and_shape() {
        let grid = wide_grid();
        let f = lorentzian_mode(1.0, grid.clone(), Normalization::L1).unwrap();
        assert_abs_diff_eq!(f.l1_integral().re, 1.0, epsilon = 1e-9);
        let raw = lorentzian_mode(1.0, grid.clone(), Normalization::Raw).unwrap();
        let mid = grid.len() / 2;
        assert_eq!(grid.as_slice()[mid], 0.0);
        assert_abs_diff_eq!(
            raw.weights()[mid].re,
            1.0 / std::f64::consts::PI,
            epsilon = 1e-15
        );
        // half maximum at Ω = γ
        let at_gamma = grid
            .as_slice()
            .iter()
            .position(|&w| (w - 1.0).abs() < 1e-9)
            .unwrap();
        assert_abs_diff_eq!(
            raw.weights()[at_gamma].re,
            0.5 / std::f64::consts::PI,
            epsilon = 1e-12
        );
        let l2 = lorentzian_mode(1.0, grid, Normalization::L2).unwrap();
        assert_abs_diff_eq!(l2.l2_norm(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let grid = FrequencyGrid::symmetric(20.0, 0.01).unwrap();
        assert!(matches!(
            lorentzian_mode(1.0, grid, Normalization::L1),
            Err(Error::GridSpan { .. })
        ));
    }

    #[test]
    fn opo_spectrum_examples() {
        let grid = FrequencyGrid::<f64>::symmetric(50.0, 0.5).unwrap();
        let none = opo_squeezing_spectrum(0.0, 2.0, grid.clone()).unwrap();
        assert!(none.s_minus().iter().all(|&s| (s - 1.0).abs() < 1e-15));
        let half = opo_squeezing_spectrum(0.5, 2.0, grid.clone()).unwrap();
        let s = half.s_minus();
        assert_abs_diff_eq!(s[grid.len() / 2], 1.0 / 9.0, epsilon = 1e-15);
        for k in 0..grid.len() {
            assert_abs_diff_eq!(s[k], s[grid.len() - 1 - k], epsilon = 1e-15);
            assert!(s[k] > 0.0 && s[k] <= 1.0);
        }
        assert!(matches!(
            opo_squeezing_spectrum(1.0, 2.0, grid.clone()),
            Err(Error::PumpRange(_))
        ));
        assert!(opo_squeezing_spectrum(0.3, 0.0, grid).is_err());
    }

    #[test]
    fn flat_spectrum_collapses() {
        let grid = wide_grid();
        let f = lorentzian_mode(1.0, grid.clone(), Normalization::L1).unwrap();
        for &r0 in &[0.0, 0.35, 0.795, 2.0] {
            let spec = SqueezingSpectrum::flat(grid.clone(), r0).unwrap();
            assert_abs_diff_eq!(effective_epr(&f, &spec).unwrap(), r0, epsilon = 1e-12);
        }
        let n = NoiseSpectrum::flat(grid.clone(), 0.3).unwrap();
        assert_abs_diff_eq!(effective_noise(&f, &n).unwrap(), 0.3, epsilon = 1e-12);
        let zero = NoiseSpectrum::flat(grid, 0.0).unwrap();
        assert_eq!(effective_noise(&f, &zero).unwrap(), 0.0);
    }

    #[test]
    fn spectral_averages_require_l1() {
        let grid = wide_grid();
        let f = lorentzian_mode(1.0, grid.clone(), Normalization::L2).unwrap();
        let spec = SqueezingSpectrum::flat(grid, 0.5).unwrap();
        assert!(effective_epr(&f, &spec).is_err());
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let f = lorentzian_mode(1.0, wide_grid(), Normalization::L1).unwrap();
        let other = FrequencyGrid::symmetric(1000.0, 0.02).unwrap();
        let spec = SqueezingSpectrum::flat(other.clone(), 0.5).unwrap();
        assert!(matches!(
            effective_epr(&f, &spec),
            Err(Error::GridMismatch(_))
        ));
        let resampled = spec.resample(f.omega()).unwrap();
        assert_abs_diff_eq!(effective_epr(&f, &resampled).unwrap(), 0.5, epsilon = 1e-12);
        let g = TransferFunction::unity(other).unwrap();
        assert!(output_mode_function(&f, &g).is_err());
    }

    #[test]
    fn unity_gain_flat_moments() {
        let grid = wide_grid();
        let f = lorentzian_mode(1.0, grid.clone(), Normalization::L1).unwrap();
        let spec = SqueezingSpectrum::flat(grid.clone(), 0.795).unwrap();
        let g = TransferFunction::unity(grid.clone()).unwrap();
        let m = gain_moments(&f, &g, &spec, 0.795).unwrap();
        assert_abs_diff_eq!(m.g_plus.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.g_minus.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            m.antisqueezing_coefficient(0.795).norm(),
            0.0,
            epsilon = 1e-11
        );
        let sq = m.squeezing_coefficient(0.795);
        assert_abs_diff_eq!(sq.re, 2.0_f64.sqrt() * (-0.795_f64).exp(), epsilon = 1e-12);

        let zero = TransferFunction::from_fn(grid, |_| Complex::new(0.0, 0.0)).unwrap();
        let m0 = gain_moments(&f, &zero, &spec, 0.795).unwrap();
        assert_eq!(m0.g_plus, Complex::new(0.0, 0.0));
        assert_eq!(m0.g_minus, Complex::new(0.0, 0.0));
    }

    #[test]
    fn delay_preserves_norm() {
        let grid = wide_grid();
        let f = lorentzian_mode(1.0, grid.clone(), Normalization::L2).unwrap();
        let out = output_mode_function(&f, &TransferFunction::delay(grid.clone(), 0.37).unwrap())
            .unwrap();
        assert_abs_diff_eq!(out.l2_norm, f.l2_norm(), epsilon = 1e-12);
        for (a, b) in out.mode.weights().iter().zip(f.weights()) {
            assert_abs_diff_eq!(a.norm(), b.norm(), epsilon = 1e-15);
        }
        let id = output_mode_function(&f, &TransferFunction::unity(grid).unwrap()).unwrap();
        assert_eq!(id.mode.weights(), f.weights());
    }

    #[test]
    fn transfer_gain_bound() {
        let grid = FrequencyGrid::uniform(-1.0, 1.0, 3).unwrap();
        let big = vec![Complex::new(11.0, 0.0); 3];
        assert!(TransferFunction::new(grid.clone(), big.clone()).is_err());
        assert!(TransferFunction::with_max_gain(grid, big, 20.0).is_ok());
    }

    #[test]
    fn negative_noise_rejected() {
        let grid = FrequencyGrid::uniform(-1.0, 1.0, 3).unwrap();
        assert!(matches!(
            NoiseSpectrum::new(grid, vec![0.1, -0.2, 0.1]),
            Err(Error::NegativeNoise { .. })
        ));
    }

    #[test]
    fn frequency_grid_validation() {
        assert!(FrequencyGrid::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(FrequencyGrid::new(vec![0.0]).is_err());
        let g = FrequencyGrid::uniform(0.0, 1.0, 3).unwrap();
        assert_eq!(g.refined().as_slice(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn csv_ingestion() {
        let text = "omega,re,im\n-1,1,0\n0,0.5,0.25\n1,1,0\n";
        let (grid, vals) = read_complex_samples::<f64, _>(text.as_bytes()).unwrap();
        assert_eq!(grid.len(), 3);
        assert_eq!(vals[1], Complex::new(0.5, 0.25));
        let text = "omega,value\n-1,0.2\n1,0.3\n";
        let (grid, vals) = read_real_samples::<f64, _>(text.as_bytes()).unwrap();
        assert_eq!((grid.len(), vals[1]), (2, 0.3));
        assert!(read_real_samples::<f64, _>("w,v\n1,2\n".as_bytes()).is_err());
    }
}
