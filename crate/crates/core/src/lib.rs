//! Analytic and phase-space models of broadband continuous-variable
//! teleportation of photon-subtracted squeezed vacuum.
//!
//! * [`analytic`]: closed-form origin values, negativity thresholds.
//! * [`phase_space`]: sampled Wigner functions, Gaussian channels, diffusion
//!   and characteristic-function cross-checks.
//! * [`multimode`]: effective single-mode reduction of broadband spectra.
//! * [`noise`]: power-additive classical noise.
//! * [`metrics`]: overlaps, purity, L2 distance, vacuum fidelity.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `f64` aliases
//! below are what most callers want.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod metrics;
pub mod multimode;
pub mod noise;
pub mod phase_space;
pub mod scalar;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use scalar::Real;

pub type InputStateParams = analytic::InputStateParams<f64>;
pub type ScalarTeleporter = analytic::ScalarTeleporter<f64>;
pub type GridSpec = phase_space::GridSpec<f64>;
pub type WignerGrid = phase_space::WignerGrid<f64>;
pub type CharacteristicGrid = phase_space::CharacteristicGrid<f64>;
pub type ModeFunction = multimode::ModeFunction<f64>;
pub type FrequencyGrid = multimode::FrequencyGrid<f64>;
pub type SqueezingSpectrum = multimode::SqueezingSpectrum<f64>;
pub type TransferFunction = multimode::TransferFunction<f64>;
pub type NoiseSpectrum = multimode::NoiseSpectrum<f64>;
pub type NoiseLevel = noise::NoiseLevel<f64>;
pub type ComparisonReport = metrics::ComparisonReport<f64>;
