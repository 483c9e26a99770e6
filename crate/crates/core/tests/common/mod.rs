//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

/// Integrate over consecutive breakpoints, splitting at each.
pub fn integrate_pieces(f: &dyn Fn(f64) -> f64, breaks: &[f64], tol: f64) -> f64 {
    breaks
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], tol))
        .sum()
}

/// Root of `f` in `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    assert!(f_lo * f(hi) <= 0.0, "bracket does not straddle a root");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Squeezed single photon S(s)|1⟩ in a truncated Fock basis.
pub struct FockSqueezedPhoton {
    coeffs: Vec<(usize, f64)>,
    n_max: usize,
}

impl FockSqueezedPhoton {
    /// Keeps odd Fock numbers up to and including `n_max`.
    pub fn new(s: f64, n_max: usize) -> Self {
        let t = -s.tanh();
        let lead = s.cosh().powf(-1.5);
        let mut coeffs = Vec::new();
        let mut m = 0;
        while 2 * m < n_max {
            let n = 2 * m + 1;
            let log_mag = 0.5 * ln_factorial(n) - (m as f64) * 2f64.ln() - ln_factorial(m);
            coeffs.push((n, lead * t.powi(m as i32) * log_mag.exp()));
            m += 1;
        }
        Self { coeffs, n_max }
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|(_, c)| c * c).sum()
    }

    /// Position wavefunction (real for real squeezing).
    pub fn psi(&self, x: f64) -> f64 {
        let h = hermite_functions(self.n_max, x);
        self.coeffs.iter().map(|&(n, c)| c * h[n]).sum()
    }

    /// Momentum wavefunction up to a global phase: φ̃_n = (−i)^n φ_n and
    /// every n is odd, so the relative sign is (−1)^m.
    pub fn psi_momentum(&self, p: f64) -> f64 {
        let h = hermite_functions(self.n_max, p);
        self.coeffs
            .iter()
            .map(|&(n, c)| {
                if (n / 2) % 2 == 0 {
                    c * h[n]
                } else {
                    -c * h[n]
                }
            })
            .sum()
    }

    /// `W(x, p) = (1/π) ∫ ψ(x+y) ψ(x−y) cos(2py) dy`.
    pub fn wigner(&self, x: f64, p: f64) -> f64 {
        let f = |y: f64| self.psi(x + y) * self.psi(x - y) * (2.0 * p * y).cos();
        integrate_pieces(&f, &[-12.0, -4.0, 0.0, 4.0, 12.0], 1e-13) / PI
    }
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Hermite functions `φ_0..=φ_n` for vacuum variance 1/2.
pub fn hermite_functions(n: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n >= 1 {
        h.push(2f64.sqrt() * x * h[0]);
    }
    for k in 1..n {
        let next = (2.0 / (k as f64 + 1.0)).sqrt() * x * h[k]
            - (k as f64 / (k as f64 + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

/// Closed form of `(1/η)(W_ref ∘ G)(x/√η, p/√η)` where `G` adds variance
/// `extra_var` per quadrature. The conditional-moment identity
/// `∫ q'² N(q'; σ²) N(q − q'; λ²) dq' = N(q; S)(q²σ⁴/S² + σ²λ²/S)` with
/// `S = σ² + λ²` handles the polynomial prefactor.
pub fn reference_through_gaussian(s: f64, eta: f64, extra_var: f64, x: f64, p: f64) -> f64 {
    let (sq, sp) = ((-2.0 * s).exp() / 2.0, (2.0 * s).exp() / 2.0);
    let (big_q, big_p) = (sq + extra_var, sp + extra_var);
    let (q, pp) = (x / eta.sqrt(), p / eta.sqrt());
    let poly = 2.0
        * ((2.0 * s).exp() * (q * q * sq * sq / (big_q * big_q) + sq * extra_var / big_q)
            + (-2.0 * s).exp() * (pp * pp * sp * sp / (big_p * big_p) + sp * extra_var / big_p)
            - 0.5);
    let gauss = (-q * q / (2.0 * big_q) - pp * pp / (2.0 * big_p)).exp()
        / (2.0 * PI * (big_q * big_p).sqrt());
    poly * gauss / eta
}

/// Loss-channel variance `λ² = (1−η)/2η`.
pub fn loss_variance(eta: f64) -> f64 {
    (1.0 - eta) / (2.0 * eta)
}

/// Two-dimensional trapezoid over `[-half, half]²` with `n` intervals per axis.
pub fn trapezoid_2d(f: impl Fn(f64, f64) -> f64, half: f64, n: usize) -> f64 {
    let h = 2.0 * half / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let wx = if i == 0 || i == n { 0.5 } else { 1.0 };
        let x = -half + i as f64 * h;
        for j in 0..=n {
            let wp = if j == 0 || j == n { 0.5 } else { 1.0 };
            acc += wx * wp * f(x, -half + j as f64 * h);
        }
    }
    acc * h * h
}
