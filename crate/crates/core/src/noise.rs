//! Renormalization of the EPR parameter by classical noise in the classical
//! channel.
//!
//! The noise is Gaussian, uncorrelated between quadratures and isotropic, so
//! it is indistinguishable from the finite-squeezing noise of the teleporter
//! and the two add in power: `e^{−2r'} = e^{−2r} + N²`. Anisotropic noise is
//! only expressible through
//! [`apply_quadrature_noise_factor`](crate::phase_space::apply_quadrature_noise_factor).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Noise amplitude normalized to vacuum.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct NoiseLevel<T>(T);

impl<T: Real> NoiseLevel<T> {
    pub fn new(amplitude: T) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude >= T::zero()) {
            return Err(Error::param(
                "noise",
                format!("amplitude must be finite and >= 0, got {amplitude}"),
            ));
        }
        Ok(Self(amplitude))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn amplitude(&self) -> T {
        self.0
    }

    /// Independent noises add in power.
    pub fn combine(&self, other: &Self) -> Self {
        Self(self.0.hypot(other.0))
    }
}

/// `r' = r − ln√(1 + N²e^{2r})`. May be negative: the noisy teleporter then
/// performs worse than the classical `r = 0` channel.
pub fn noisy_r<T: Real>(r: T, n: NoiseLevel<T>) -> T {
    let two = T::lit(2.0);
    let n = n.amplitude();
    if n == T::zero() {
        return r;
    }
    if r == T::infinity() {
        return -n.ln();
    }
    r - (n * n * (two * r).exp()).ln_1p() / two
}

/// Amplitude at which the noisy channel degrades to the classical limit,
/// `N* = √(1 − e^{−2r})`.
pub fn break_even_noise<T: Real>(r: T) -> Result<NoiseLevel<T>> {
    if !(r > T::zero()) {
        return Err(Error::param(
            "r",
            format!("break-even noise needs r > 0, got {r}"),
        ));
    }
    NoiseLevel::new((-(-T::lit(2.0) * r).exp_m1()).sqrt())
}

/// [`noisy_r`] applied to broadband effective quantities.
pub fn noisy_r_eff<T: Real>(r_eff: T, n_eff: T) -> Result<T> {
    Ok(noisy_r(r_eff, NoiseLevel::new(n_eff)?))
}

/// The rejected amplitude-additive rule `e^{−r'} = e^{−r} + N`, kept for
/// comparison only.
pub fn amplitude_rule_r<T: Real>(r: T, n: NoiseLevel<T>) -> T {
    -((-r).exp() + n.amplitude()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_noise_is_identity() {
        assert_eq!(noisy_r(0.795, NoiseLevel::zero()), 0.795);
        assert_eq!(noisy_r_eff(0.795, 0.0).unwrap(), 0.795);
    }

    #[test]
    fn three_db_break_even() {
        let r = std::f64::consts::LN_2 / 2.0;
        let n = NoiseLevel::new(0.5_f64.sqrt()).unwrap();
        assert_abs_diff_eq!(noisy_r(r, n), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            break_even_noise(r).unwrap().amplitude(),
            0.5_f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn break_even_limits() {
        assert!(break_even_noise(1e-12).unwrap().amplitude() < 2e-6);
        assert_abs_diff_eq!(
            break_even_noise(40.0).unwrap().amplitude(),
            1.0,
            epsilon = 1e-15
        );
        assert!(break_even_noise(0.0).is_err());
        assert!(break_even_noise(-1.0).is_err());
    }

    #[test]
    fn fixed_point() {
        for &r in &[0.1, 0.35, 0.795, 2.0] {
            let n = break_even_noise(r).unwrap();
            assert_abs_diff_eq!(noisy_r(r, n), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn successive_noises_add_in_power() {
        let (a, b) = (
            NoiseLevel::<f64>::new(0.2).unwrap(),
            NoiseLevel::<f64>::new(0.35).unwrap(),
        );
        let r: f64 = 0.9;
        let e2 = (-2.0 * noisy_r(r, a)).exp() + b.amplitude().powi(2);
        let twice = -e2.ln() / 2.0;
        assert_abs_diff_eq!(twice, noisy_r(r, a.combine(&b)), epsilon = 1e-14);
    }

    #[test]
    fn perfect_entanglement_leaves_only_the_noise() {
        let n = NoiseLevel::new(0.3_f64).unwrap();
        assert_abs_diff_eq!(noisy_r(f64::INFINITY, n), -(0.3_f64).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(noisy_r(40.0, n), -(0.3_f64).ln(), epsilon = 1e-12);
        assert_eq!(noisy_r(f64::INFINITY, NoiseLevel::zero()), f64::INFINITY);
    }

    #[test]
    fn rejects_negative_noise() {
        assert!(NoiseLevel::new(-0.1).is_err());
        assert!(noisy_r_eff(0.5, f64::NAN).is_err());
    }

    #[test]
    fn amplitude_rule_overestimates_degradation() {
        let n = NoiseLevel::new(0.3).unwrap();
        assert!(amplitude_rule_r(0.5, n) < noisy_r(0.5, n) - 1e-2);
    }
}
