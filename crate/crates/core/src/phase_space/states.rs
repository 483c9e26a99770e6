use super::grid::{GridSpec, WignerGrid};
use crate::analytic::{false_wigner_value, gaussian_2d, ref_wigner_value};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest clipped probability mass accepted when sampling a state.
pub const CLIP_TOLERANCE: f64 = 1e-3;

fn checked<T: Real>(grid: WignerGrid<T>) -> Result<WignerGrid<T>> {
    let clipped = (T::one() - grid.integral()).abs().to_f64_lossy();
    if clipped > CLIP_TOLERANCE {
        return Err(Error::DomainTooSmall { clipped });
    }
    Ok(grid)
}

/// Squeezed single photon S(s)|1⟩ sampled on `spec`.
pub fn wigner_reference<T: Real>(s: T, spec: GridSpec<T>) -> Result<WignerGrid<T>> {
    checked(WignerGrid::from_fn(spec, |x, p| ref_wigner_value(s, x, p))?)
}

/// Squeezed vacuum S(s)|0⟩, the state left by a false heralding event.
pub fn wigner_squeezed_vacuum<T: Real>(s: T, spec: GridSpec<T>) -> Result<WignerGrid<T>> {
    checked(WignerGrid::from_fn(spec, |x, p| {
        false_wigner_value(s, x, p)
    })?)
}

pub fn wigner_vacuum<T: Real>(spec: GridSpec<T>) -> Result<WignerGrid<T>> {
    wigner_squeezed_vacuum(T::zero(), spec)
}

/// Centered Gaussian with per-axis standard deviations `(sigma_x, sigma_p)`.
pub fn wigner_gaussian<T: Real>(
    sigma_x: T,
    sigma_p: T,
    spec: GridSpec<T>,
) -> Result<WignerGrid<T>> {
    if !(sigma_x > T::zero() && sigma_p > T::zero()) {
        return Err(Error::param("sigma", "Gaussian widths must be positive"));
    }
    let scale = sigma_x / sigma_p;
    // Reuse the isotropic kernel with rescaled momentum.
    checked(WignerGrid::from_fn(spec, |x, p| {
        gaussian_2d(sigma_x, x, p * scale) * scale
    })?)
}
