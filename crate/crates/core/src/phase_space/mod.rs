//! Discretized Wigner-function engine.
//!
//! States are sampled on a [`GridSpec`], Gaussian channels are applied as
//! spectral convolutions on a zero-padded buffer, and the diffusion and
//! characteristic-function routes exist as independent cross-checks of the
//! convolution route.

mod channels;
mod characteristic;
mod diffusion;
mod grid;
pub mod io;
mod spectral;
mod states;

pub use channels::{
    apply_loss, convolve_anisotropic, convolve_gaussian, mix, origin_value, teleport,
};
pub use characteristic::{
    apply_quadrature_noise_factor, from_characteristic, to_characteristic, CharacteristicGrid,
    ConjugateAxis,
};
pub use diffusion::{evolve_diffusion, STABILITY_FACTOR};
pub use grid::{GridSpec, WignerGrid, DEFAULT_HALF_WIDTH, DEFAULT_POINTS, MIN_POINTS};
pub use spectral::LEAKAGE_LIMIT;
pub use states::{
    wigner_gaussian, wigner_reference, wigner_squeezed_vacuum, wigner_vacuum, CLIP_TOLERANCE,
};

use crate::analytic::InputStateParams;
use crate::error::Result;
use crate::scalar::Real;

/// Input state of the three-parameter model on a grid:
/// mix the squeezed photon with squeezed vacuum, then apply loss.
pub fn input_state<T: Real>(
    params: &InputStateParams<T>,
    spec: GridSpec<T>,
) -> Result<WignerGrid<T>> {
    params.validate()?;
    let reference = wigner_reference(params.s, spec)?;
    let mixed = if params.epsilon > T::zero() {
        mix(
            &reference,
            &wigner_squeezed_vacuum(params.s, spec)?,
            params.epsilon,
        )?
    } else {
        reference
    };
    apply_loss(&mixed, params.eta)
}

/// Full grid pipeline: mix → loss → teleport.
pub fn output_state<T: Real>(
    params: &InputStateParams<T>,
    r: T,
    spec: GridSpec<T>,
) -> Result<WignerGrid<T>> {
    teleport(&input_state(params, spec)?, r)
}
