//! Closed-form Wigner functions involved in unity-gain teleportation of a
//! photon-subtracted squeezed vacuum, their origin values, and the negativity
//! thresholds derived from them.
//!
//! Conventions: ħ = 1, vacuum quadrature variance 1/2, and the teleporter acts
//! as a convolution with an isotropic Gaussian of standard deviation e^(−r).
//! An infinite `r` is the identity channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Three-parameter model of the heralded input state.
///
/// * `s`: squeezing parameter of the source.
/// * `eta`: transmission of the fictitious beam splitter modelling losses.
/// * `epsilon`: fraction of false heralding events, which leave plain squeezed
///   vacuum in the signal mode (`1 − epsilon` is the modal purity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InputStateParams<T> {
    pub s: T,
    pub eta: T,
    pub epsilon: T,
}

impl<T: Real> InputStateParams<T> {
    pub fn new(s: T, eta: T, epsilon: T) -> Result<Self> {
        let params = Self { s, eta, epsilon };
        params.validate()?;
        Ok(params)
    }

    /// Lossless, unmixed reference state.
    pub fn pure(s: T) -> Self {
        Self {
            s,
            eta: T::one(),
            epsilon: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s.is_finite() && self.s >= T::zero()) {
            return Err(Error::param(
                "s",
                format!("must be finite and >= 0, got {}", self.s),
            ));
        }
        if !(self.eta > T::zero() && self.eta <= T::one()) {
            return Err(Error::param(
                "eta",
                format!("must lie in (0, 1], got {}", self.eta),
            ));
        }
        if !(self.epsilon >= T::zero() && self.epsilon <= T::one()) {
            return Err(Error::param(
                "epsilon",
                format!("must lie in [0, 1], got {}", self.epsilon),
            ));
        }
        Ok(())
    }

    pub fn modal_purity(&self) -> T {
        T::one() - self.epsilon
    }
}

/// EPR correlation parameter of a unity-gain teleporter used as a channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarTeleporter<T> {
    r: T,
}

impl<T: Real> ScalarTeleporter<T> {
    /// Accepts `r >= 0`, including `+inf` (perfect teleporter).
    pub fn new(r: T) -> Result<Self> {
        if r.is_nan() || r < T::zero() {
            return Err(Error::param(
                "r",
                format!("channel input must be >= 0, got {r}"),
            ));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> T {
        self.r
    }

    /// Standard deviation of the added Gaussian noise, e^(−r).
    pub fn kernel_sigma(&self) -> T {
        (-self.r).exp()
    }
}

/// Gaussian widths attached to loss followed by teleportation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedWidths<T> {
    /// Loss-channel width √((1−η)/2η).
    pub lambda: T,
    /// Width after teleportation, √(λ² + e^(−2r)/η).
    pub lambda_prime: T,
    /// 1 + 2e^(−2r).
    pub g_r: T,
}

impl<T: Real> DerivedWidths<T> {
    pub fn new(eta: T, r: T) -> Self {
        let two = T::lit(2.0);
        let lambda_sq = (T::one() - eta) / (two * eta);
        let e2r = (-two * r).exp();
        Self {
            lambda: lambda_sq.sqrt(),
            lambda_prime: (lambda_sq + e2r / eta).sqrt(),
            g_r: g_r(r),
        }
    }
}

/// Coefficients of the quadratic `g² + 2bηg − cη² = 0` whose positive root is
/// the output negativity threshold in `g_r` for a mixed input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCoefficients<T> {
    pub b: T,
    pub c: T,
}

impl<T: Real> ThresholdCoefficients<T> {
    pub fn new(epsilon: T, s: T) -> Self {
        let sh2 = s.sinh_sq();
        Self {
            b: epsilon * (T::one() + T::lit(2.0) * sh2) - T::one(),
            c: T::lit(4.0) * epsilon * sh2,
        }
    }

    /// Positive root `η(√(b²+c) − b)` of the quadratic, evaluated without
    /// cancellation for large positive `b`.
    pub fn threshold_g(&self, eta: T) -> T {
        let root = (self.b * self.b + self.c).sqrt();
        let diff = if self.b > T::zero() {
            self.c / (root + self.b)
        } else {
            root - self.b
        };
        eta * diff
    }
}

/// `1 + 2e^(−2r)`; equals 1 for `r = +inf` and 3 in the classical limit.
pub fn g_r<T: Real>(r: T) -> T {
    T::one() + T::lit(2.0) * (-T::lit(2.0) * r).exp()
}

/// Normalized isotropic 2-D Gaussian of per-axis standard deviation `sigma`.
pub fn gaussian_2d<T: Real>(sigma: T, q: T, p: T) -> T {
    let var = sigma * sigma;
    (-(q * q + p * p) / (T::lit(2.0) * var)).exp() / (T::lit(2.0) * T::PI() * var)
}

/// Wigner function of the squeezed single photon S(s)|1⟩ at `(q, p)`.
pub fn ref_wigner_value<T: Real>(s: T, q: T, p: T) -> T {
    let two = T::lit(2.0);
    let es = s.exp();
    let qs = es * q;
    let ps = p / es;
    two * (qs * qs + ps * ps - T::lit(0.5)) * gaussian_2d(T::FRAC_1_SQRT_2(), qs, ps)
}

/// Wigner function of the squeezed vacuum S(s)|0⟩ at `(q, p)`.
pub fn false_wigner_value<T: Real>(s: T, q: T, p: T) -> T {
    let es = s.exp();
    gaussian_2d(T::FRAC_1_SQRT_2(), es * q, p / es)
}

/// Origin value of the teleported pure reference state,
/// `g_r(g_r − 2)/(π(g_r² + 8e^{−2r}sh²s)^{3/2})`.
///
/// The first denominator term is squared; the unsquared form found in print
/// keeps the zero at `ln√2` but misses the direct convolution away from it.
pub fn ref_output_negativity<T: Real>(s: T, r: T) -> T {
    let two = T::lit(2.0);
    let e2r = (-two * r).exp();
    let g = T::one() + two * e2r;
    let den = g * g + T::lit(8.0) * e2r * s.sinh_sq();
    g * (two * e2r - T::one()) / (T::PI() * den.powf(T::lit(1.5)))
}

/// Origin value of the lossy, possibly mixed input state.
pub fn input_negativity<T: Real>(params: &InputStateParams<T>) -> T {
    let InputStateParams { s, eta, epsilon } = *params;
    let two = T::lit(2.0);
    let one = T::one();
    let sh2 = s.sinh_sq();
    let den = T::PI() * (one + T::lit(4.0) * eta * (one - eta) * sh2).powf(T::lit(1.5));
    let pure = (one - two * eta) / den;
    if epsilon == T::zero() {
        return pure;
    }
    pure + two * epsilon * eta * (one + two * (one - eta) * sh2) / den
}

/// Origin value after the lossy, possibly mixed input state has been
/// teleported with EPR parameter `r`.
pub fn output_negativity<T: Real>(params: &InputStateParams<T>, r: T) -> T {
    let InputStateParams { s, eta, epsilon } = *params;
    let two = T::lit(2.0);
    let g = g_r(r);
    let sh2 = s.sinh_sq();
    // The mixing correction shares the (g_r − η) denominator of the pure term:
    // teleporting the squeezed-vacuum component gives 1/(π√(g_r² + 4η(g_r−η)sh²s)).
    // Printed variants with (g_r − 2η) do not reproduce the grid engine.
    let den = T::PI() * (g * g + T::lit(4.0) * eta * (g - eta) * sh2).powf(T::lit(1.5));
    let pure = g * (g - two * eta) / den;
    if epsilon == T::zero() {
        return pure;
    }
    pure + two * epsilon * eta * (g + two * (g - eta) * sh2) / den
}

/// EPR parameter at which [`output_negativity`] vanishes.
///
/// Fails with [`Error::NoThreshold`] when the input can never yield a
/// negative output, e.g. `eta <= 1/2` for an unmixed state.
pub fn threshold_r<T: Real>(eta: T, s: T, epsilon: T) -> Result<T> {
    InputStateParams::new(s, eta, epsilon)?;
    let two = T::lit(2.0);
    let g = if epsilon == T::zero() {
        two * eta
    } else {
        ThresholdCoefficients::new(epsilon, s).threshold_g(eta)
    };
    let excess = g - T::one();
    if !(excess > T::zero()) {
        return Err(Error::NoThreshold(format!(
            "eta = {eta}, s = {s}, epsilon = {epsilon}: threshold g_r = {g} <= 1"
        )));
    }
    Ok((two / excess).ln() / two)
}

/// Mixing fraction at which [`input_negativity`] crosses zero. Nonpositive
/// results mean the input is never negative.
pub fn input_threshold_epsilon<T: Real>(eta: T, s: T) -> T {
    let two = T::lit(2.0);
    let one = T::one();
    (two * eta - one) / (two * eta * (one + two * (one - eta) * s.sinh_sq()))
}

/// Loss at the input reduces the EPR parameter to `r + ln√η`.
pub fn effective_r_after_input_loss<T: Real>(r: T, eta: T) -> T {
    r + eta.ln() / T::lit(2.0)
}

/// Full Wigner function of the model output state at `(x, p)`: mixing, loss
/// and teleportation applied in closed form. Every stage is a Gaussian
/// convolution, so in loss-rescaled coordinates each quadrature picks up the
/// variance `λ² + e^{−2r}/η`. At the origin this equals [`output_negativity`].
pub fn output_wigner_value<T: Real>(params: &InputStateParams<T>, r: T, x: T, p: T) -> T {
    let InputStateParams { s, eta, epsilon } = *params;
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let added = (one - eta) / (two * eta) + (-two * r).exp() / eta;
    let (var_q, var_p) = ((-two * s).exp() * half, (two * s).exp() * half);
    let (tot_q, tot_p) = (var_q + added, var_p + added);
    let root_eta = eta.sqrt();
    let (q, k) = (x / root_eta, p / root_eta);
    let gauss = (-(q * q) / (two * tot_q) - k * k / (two * tot_p)).exp()
        / (two * T::PI() * (tot_q * tot_p).sqrt());
    // E[q'² | q] for q' ~ N(0, var) observed through added noise.
    let cond = |y: T, var: T, tot: T| y * y * var * var / (tot * tot) + var * added / tot;
    let photon = two
        * ((two * s).exp() * cond(q, var_q, tot_q) + (-two * s).exp() * cond(k, var_p, tot_p)
            - half);
    ((one - epsilon) * photon + epsilon) * gauss / eta
}

/// [`output_wigner_value`] without teleportation.
pub fn input_wigner_value<T: Real>(params: &InputStateParams<T>, x: T, p: T) -> T {
    output_wigner_value(params, T::infinity(), x, p)
}
