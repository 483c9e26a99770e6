use super::grid::WignerGrid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Explicit-scheme stability factor: `κ·Δt ≤ STABILITY_FACTOR·min(Δx², Δp²)`.
pub const STABILITY_FACTOR: f64 = 0.25;

/// Integrates `∂W/∂t = κ(∂²_x + ∂²_p)W` over `t` in `steps` forward-Euler
/// steps with five-point central differences and zero far-field boundary.
///
/// The diffusion for duration `t` is the Gaussian convolution of width
/// `√(2κt)`; this integrator exists to check that equivalence.
pub fn evolve_diffusion<T: Real>(
    w: &WignerGrid<T>,
    kappa: T,
    t: T,
    steps: usize,
) -> Result<WignerGrid<T>> {
    if !(kappa >= T::zero() && t >= T::zero()) {
        return Err(Error::param(
            "kappa/t",
            "decay rate and duration must be >= 0",
        ));
    }
    if t == T::zero() || kappa == T::zero() {
        return Ok(w.clone());
    }
    if steps == 0 {
        return Err(Error::param("steps", "need at least one step for t > 0"));
    }
    let spec = *w.spec();
    let dt = t / T::from_usize_lossy(steps);
    let (dx2, dp2) = (spec.dx() * spec.dx(), spec.dp() * spec.dp());
    let bound = T::lit(STABILITY_FACTOR) * dx2.min(dp2);
    let kappa_dt = kappa * dt;
    if kappa_dt > bound * (T::one() + T::lit(1e-12)) {
        return Err(Error::Stability {
            kappa_dt: kappa_dt.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }

    let (nx, np) = (spec.n_x, spec.n_p);
    let cx = kappa_dt / dx2;
    let cp = kappa_dt / dp2;
    let mut cur = w.values().to_vec();
    let mut next = vec![T::zero(); cur.len()];
    for _ in 0..steps {
        for i in 0..nx {
            for j in 0..np {
                let idx = i * np + j;
                let c = cur[idx];
                let left = if i > 0 { cur[idx - np] } else { T::zero() };
                let right = if i + 1 < nx { cur[idx + np] } else { T::zero() };
                let down = if j > 0 { cur[idx - 1] } else { T::zero() };
                let up = if j + 1 < np { cur[idx + 1] } else { T::zero() };
                let two_c = c + c;
                next[idx] = c + cx * (left - two_c + right) + cp * (down - two_c + up);
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(WignerGrid::from_raw(spec, cur))
}
