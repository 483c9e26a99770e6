//! State-comparison figures on sampled Wigner functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::WignerGrid;
use crate::scalar::Real;

/// `O = 2π ∫∫ W_a W_b dx dp`.
pub fn overlap<T: Real>(w_a: &WignerGrid<T>, w_b: &WignerGrid<T>) -> Result<T> {
    w_a.ensure_compatible(w_b)?;
    let spec = w_a.spec();
    let mut acc = T::zero();
    for i in 0..spec.n_x {
        for j in 0..spec.n_p {
            acc = acc + spec.weight(i, j) * (w_a.at(i, j) * w_b.at(i, j));
        }
    }
    Ok(T::lit(2.0) * T::PI() * acc)
}

/// `Tr ρ² = O(W, W)`.
pub fn purity<T: Real>(w: &WignerGrid<T>) -> Result<T> {
    overlap(w, w)
}

/// Overlap divided by the geometric mean of the purities; 1 for identical
/// states whether pure or mixed.
pub fn normalized_overlap<T: Real>(w_a: &WignerGrid<T>, w_b: &WignerGrid<T>) -> Result<T> {
    let o = overlap(w_a, w_b)?;
    let pa = purity(w_a)?;
    let pb = purity(w_b)?;
    for p in [pa, pb] {
        if !(p > T::zero()) {
            return Err(Error::DegeneratePurity(p.to_f64_lossy()));
        }
    }
    Ok(o / (pa * pb).sqrt())
}

/// `√(∫∫ |W_a − W_b|² dx dp)`.
pub fn l2_distance<T: Real>(w_a: &WignerGrid<T>, w_b: &WignerGrid<T>) -> Result<T> {
    w_a.ensure_compatible(w_b)?;
    let spec = w_a.spec();
    let mut acc = T::zero();
    for i in 0..spec.n_x {
        for j in 0..spec.n_p {
            let d = w_a.at(i, j) - w_b.at(i, j);
            acc = acc + spec.weight(i, j) * d * d;
        }
    }
    Ok(acc.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport<T> {
    pub overlap: T,
    pub normalized_overlap: T,
    pub l2_distance: T,
    pub purity_a: T,
    pub purity_b: T,
}

impl<T: Real> ComparisonReport<T> {
    pub fn compare(w_a: &WignerGrid<T>, w_b: &WignerGrid<T>) -> Result<Self> {
        Ok(Self {
            overlap: overlap(w_a, w_b)?,
            normalized_overlap: normalized_overlap(w_a, w_b)?,
            l2_distance: l2_distance(w_a, w_b)?,
            purity_a: purity(w_a)?,
            purity_b: purity(w_b)?,
        })
    }
}

/// How the EPR parameter maps onto vacuum teleportation fidelity.
///
/// `Amplitude` follows from a kernel of standard deviation `e^{−r}` adding
/// variance `e^{−2r}` per quadrature: `F = 1/(1 + e^{−2r})`. `Quoted` is the
/// relation `F = 1/(1 + e^{−r})` used when `r` is quoted from a measured
/// fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FidelityConvention {
    Quoted,
    Amplitude,
}

impl FidelityConvention {
    pub const ALL: [FidelityConvention; 2] =
        [FidelityConvention::Quoted, FidelityConvention::Amplitude];

    fn exponent_scale<T: Real>(self) -> T {
        match self {
            FidelityConvention::Quoted => T::one(),
            FidelityConvention::Amplitude => T::lit(2.0),
        }
    }
}

pub fn vacuum_fidelity<T: Real>(r: T, convention: FidelityConvention) -> T {
    T::one() / (T::one() + (-convention.exponent_scale::<T>() * r).exp())
}

/// Inverse of [`vacuum_fidelity`] for `F ∈ (0, 1)`.
pub fn fidelity_to_r<T: Real>(fidelity: T, convention: FidelityConvention) -> Result<T> {
    if !(fidelity > T::zero() && fidelity < T::one()) {
        return Err(Error::param(
            "fidelity",
            format!("must lie in (0, 1), got {fidelity}"),
        ));
    }
    let odds = fidelity / (T::one() - fidelity);
    Ok(odds.ln() / convention.exponent_scale::<T>())
}
