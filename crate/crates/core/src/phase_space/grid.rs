use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rectangular sampling of phase space.
///
/// Axis `x` has `n_x` nodes at `x_min + i·dx` with `dx = (x_max − x_min)/n_x`,
/// so `x_max` itself is not sampled (periodic convention). On a symmetric
/// domain with an even count the origin is node `n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    pub p_min: T,
    pub p_max: T,
    pub n_x: usize,
    pub n_p: usize,
}

pub const DEFAULT_HALF_WIDTH: f64 = 6.0;
pub const DEFAULT_POINTS: usize = 512;
pub const MIN_POINTS: usize = 64;

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, p_min: T, p_max: T, n_x: usize, n_p: usize) -> Result<Self> {
        let spec = Self {
            x_min,
            x_max,
            p_min,
            p_max,
            n_x,
            n_p,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `[−half_width, half_width)²` with `n` nodes per axis.
    pub fn square(half_width: T, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, -half_width, half_width, n, n)
    }

    /// `[−6, 6)²` with 512² nodes.
    pub fn default_grid() -> Self {
        Self::square(T::lit(DEFAULT_HALF_WIDTH), DEFAULT_POINTS).expect("default grid is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.p_min, self.p_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidGrid("extents must be finite".into()));
        }
        if !(self.x_min < self.x_max && self.p_min < self.p_max) {
            return Err(Error::InvalidGrid(format!(
                "empty domain [{}, {}) x [{}, {})",
                self.x_min, self.x_max, self.p_min, self.p_max
            )));
        }
        for (axis, n) in [("n_x", self.n_x), ("n_p", self.n_p)] {
            if n < MIN_POINTS || !n.is_power_of_two() {
                return Err(Error::InvalidGrid(format!(
                    "{axis} = {n} must be a power of two >= {MIN_POINTS}"
                )));
            }
        }
        Ok(())
    }

    pub fn dx(&self) -> T {
        (self.x_max - self.x_min) / T::from_usize_lossy(self.n_x)
    }

    pub fn dp(&self) -> T {
        (self.p_max - self.p_min) / T::from_usize_lossy(self.n_p)
    }

    pub fn x(&self, i: usize) -> T {
        self.x_min + T::from_usize_lossy(i) * self.dx()
    }

    pub fn p(&self, j: usize) -> T {
        self.p_min + T::from_usize_lossy(j) * self.dp()
    }

    pub fn len(&self) -> usize {
        self.n_x * self.n_p
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n_p + j
    }

    /// Largest sampled coordinates.
    pub fn x_last(&self) -> T {
        self.x(self.n_x - 1)
    }

    pub fn p_last(&self) -> T {
        self.p(self.n_p - 1)
    }

    pub fn contains(&self, x: T, p: T) -> bool {
        x >= self.x_min && x <= self.x_last() && p >= self.p_min && p <= self.p_last()
    }

    /// Trapezoid weight of node `(i, j)` including the cell area.
    #[inline]
    pub(crate) fn weight(&self, i: usize, j: usize) -> T {
        let half = T::lit(0.5);
        let wx = if i == 0 || i + 1 == self.n_x {
            half
        } else {
            T::one()
        };
        let wp = if j == 0 || j + 1 == self.n_p {
            half
        } else {
            T::one()
        };
        wx * wp * self.dx() * self.dp()
    }

    pub fn same_sampling(&self, other: &Self) -> bool {
        self == other
    }
}

/// Real-valued quasi-probability distribution sampled on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid<T> {
    spec: GridSpec<T>,
    values: Vec<T>,
}

impl<T: Real> WignerGrid<T> {
    pub fn from_values(spec: GridSpec<T>, values: Vec<T>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                spec.len(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "non-finite sample at flat index {bad}"
            )));
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn(spec: GridSpec<T>, f: impl Fn(T, T) -> T) -> Result<Self> {
        spec.validate()?;
        let mut values = Vec::with_capacity(spec.len());
        for i in 0..spec.n_x {
            let x = spec.x(i);
            for j in 0..spec.n_p {
                values.push(f(x, spec.p(j)));
            }
        }
        Self::from_values(spec, values)
    }

    pub(crate) fn from_raw(spec: GridSpec<T>, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), spec.len());
        Self { spec, values }
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    /// Row-major samples, `x` index outermost.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.values[self.spec.index(i, j)]
    }

    /// Trapezoid-rule integral over the domain.
    pub fn integral(&self) -> T {
        self.weighted_sum(|v| v)
    }

    pub(crate) fn weighted_sum(&self, f: impl Fn(T) -> T) -> T {
        let mut acc = T::zero();
        for i in 0..self.spec.n_x {
            for j in 0..self.spec.n_p {
                acc = acc + self.spec.weight(i, j) * f(self.at(i, j));
            }
        }
        acc
    }

    /// Trapezoid-rule expectation of `f(x, p)` weighted by the distribution.
    pub fn moment(&self, f: impl Fn(T, T) -> T) -> T {
        let mut acc = T::zero();
        for i in 0..self.spec.n_x {
            let x = self.spec.x(i);
            for j in 0..self.spec.n_p {
                acc = acc + self.spec.weight(i, j) * self.at(i, j) * f(x, self.spec.p(j));
            }
        }
        acc
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::from_raw(self.spec, self.values.iter().map(|&v| v * factor).collect())
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.spec.same_sampling(&other.spec) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.spec, other.spec
            )))
        }
    }

    /// Bicubic (Catmull-Rom) interpolation; exact on grid nodes.
    pub fn value_at(&self, x: T, p: T) -> Result<T> {
        if !self.spec.contains(x, p) {
            return Err(Error::Domain {
                x: x.to_f64_lossy(),
                p: p.to_f64_lossy(),
            });
        }
        let fx = (x - self.spec.x_min) / self.spec.dx();
        let fp = (p - self.spec.p_min) / self.spec.dp();
        let (ix, tx) = split_index(fx, self.spec.n_x);
        let (ip, tp) = split_index(fp, self.spec.n_p);
        if tx == T::zero() && tp == T::zero() {
            return Ok(self.at(ix, ip));
        }
        let wx = catmull_rom_weights(tx);
        let wp = catmull_rom_weights(tp);
        let mut acc = T::zero();
        for (a, wa) in wx.iter().enumerate() {
            let ii = clamp_index(ix as isize + a as isize - 1, self.spec.n_x);
            let mut row = T::zero();
            for (b, wb) in wp.iter().enumerate() {
                let jj = clamp_index(ip as isize + b as isize - 1, self.spec.n_p);
                row = row + *wb * self.at(ii, jj);
            }
            acc = acc + *wa * row;
        }
        Ok(acc)
    }
}

fn split_index<T: Real>(f: T, n: usize) -> (usize, T) {
    let floor = f.floor();
    let mut i = floor.to_usize().unwrap_or(0).min(n - 1);
    let mut t = f - floor;
    // Round-off can land a node coordinate a hair below its index.
    let eps = T::lit(1e-9);
    if t > T::one() - eps {
        i = (i + 1).min(n - 1);
        t = T::zero();
    } else if t < eps {
        t = T::zero();
    }
    (i, t)
}

fn clamp_index(i: isize, n: usize) -> usize {
    i.clamp(0, n as isize - 1) as usize
}

pub(crate) fn catmull_rom_weights<T: Real>(t: T) -> [T; 4] {
    let half = T::lit(0.5);
    let t2 = t * t;
    let t3 = t2 * t;
    [
        half * (-t3 + T::lit(2.0) * t2 - t),
        half * (T::lit(3.0) * t3 - T::lit(5.0) * t2 + T::lit(2.0)),
        half * (-T::lit(3.0) * t3 + T::lit(4.0) * t2 + t),
        half * (t3 - t2),
    ]
}
