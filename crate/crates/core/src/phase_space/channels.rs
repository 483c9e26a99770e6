//! Gaussian channels acting on sampled Wigner functions.

use super::grid::WignerGrid;
use super::spectral::convolve_padded;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `W ∘ G_sigma`: convolution with an isotropic normalized Gaussian.
/// `sigma = 0` is the identity.
pub fn convolve_gaussian<T: Real>(w: &WignerGrid<T>, sigma: T) -> Result<WignerGrid<T>> {
    convolve_anisotropic(w, sigma, sigma)
}

/// Convolution with independent Gaussian widths along `x` and `p`.
pub fn convolve_anisotropic<T: Real>(
    w: &WignerGrid<T>,
    sigma_x: T,
    sigma_p: T,
) -> Result<WignerGrid<T>> {
    if !(sigma_x >= T::zero() && sigma_p >= T::zero()) {
        return Err(Error::param("sigma", "kernel width must be >= 0"));
    }
    if sigma_x == T::zero() && sigma_p == T::zero() {
        return Ok(w.clone());
    }
    Ok(convolve_padded(w, sigma_x, sigma_p, T::one())?.crop(w.spec()))
}

/// Beam-splitter loss with transmission `eta`:
/// `W ↦ (1/η)(W ∘ G_λ)(x/√η, p/√η)` with `λ = √((1−η)/2η)`.
///
/// The rescaling is a Catmull-Rom bicubic resample of the padded convolution,
/// followed by a renormalization that restores the input trace. Bilinear
/// resampling leaves an `O(Δx²)` bias that later narrow convolutions pick up
/// as a spurious shift of the origin value.
pub fn apply_loss<T: Real>(w: &WignerGrid<T>, eta: T) -> Result<WignerGrid<T>> {
    if !(eta > T::zero() && eta <= T::one()) {
        return Err(Error::param(
            "eta",
            format!("must lie in (0, 1], got {eta}"),
        ));
    }
    if eta == T::one() {
        return Ok(w.clone());
    }
    let lambda = ((T::one() - eta) / (T::lit(2.0) * eta)).sqrt();
    let shrink = eta.sqrt();
    let field = convolve_padded(w, lambda, lambda, T::one() / shrink)?;
    let spec = *w.spec();
    let inv_eta = T::one() / eta;
    let mut values = Vec::with_capacity(spec.len());
    for i in 0..spec.n_x {
        let x = spec.x(i) / shrink;
        for j in 0..spec.n_p {
            values.push(field.bicubic(x, spec.p(j) / shrink) * inv_eta);
        }
    }
    let out = WignerGrid::from_raw(spec, values);
    let (before, after) = (w.integral(), out.integral());
    if after.abs() <= T::epsilon() {
        return Ok(out);
    }
    Ok(out.scaled(before / after))
}

/// Unity-gain teleportation with EPR parameter `r`: convolution with
/// `G_{e^{−r}}`. `r = +inf` is the identity.
pub fn teleport<T: Real>(w: &WignerGrid<T>, r: T) -> Result<WignerGrid<T>> {
    if r.is_nan() {
        return Err(Error::param("r", "must not be NaN"));
    }
    convolve_gaussian(w, (-r).exp())
}

/// Statistical mixture `(1−ε)·w_a + ε·w_b`.
pub fn mix<T: Real>(w_a: &WignerGrid<T>, w_b: &WignerGrid<T>, epsilon: T) -> Result<WignerGrid<T>> {
    w_a.ensure_compatible(w_b)?;
    if !(epsilon >= T::zero() && epsilon <= T::one()) {
        return Err(Error::param(
            "epsilon",
            format!("must lie in [0, 1], got {epsilon}"),
        ));
    }
    let keep = T::one() - epsilon;
    let values = w_a
        .values()
        .iter()
        .zip(w_b.values())
        .map(|(&a, &b)| keep * a + epsilon * b)
        .collect();
    Ok(WignerGrid::from_raw(*w_a.spec(), values))
}

/// `W(0, 0)` by bicubic interpolation (exact when the origin is a node).
pub fn origin_value<T: Real>(w: &WignerGrid<T>) -> Result<T> {
    w.value_at(T::zero(), T::zero())
}
