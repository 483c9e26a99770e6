mod common;

use approx::assert_abs_diff_eq;
use common::{loss_variance, reference_through_gaussian, FockSqueezedPhoton};
use cvtele::analytic::{input_negativity, output_negativity, InputStateParams};
use cvtele::metrics::l2_distance;
use cvtele::phase_space::*;
use cvtele::Error;
use std::f64::consts::FRAC_1_PI;

fn default_spec() -> GridSpec<f64> {
    GridSpec::default_grid()
}

fn max_abs_diff(a: &WignerGrid<f64>, b: &WignerGrid<f64>) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn reference_state_samples() {
    for &s in &[0.0, 0.28, 0.6] {
        let w = wigner_reference(s, default_spec()).unwrap();
        assert_abs_diff_eq!(origin_value(&w).unwrap(), -FRAC_1_PI, epsilon = 1e-15);
        assert!((w.integral() - 1.0).abs() < 1e-3);
        assert!(w.max_abs() <= FRAC_1_PI + 1e-3);
    }
    assert!((wigner_reference(0.5, default_spec()).unwrap().integral() - 1.0).abs() < 1e-3);
}

#[test]
fn reference_moments_match_fock_oracle() {
    let s = 0.28;
    let fock = FockSqueezedPhoton::new(s, 20);
    let q2 = common::integrate_pieces(&|x| x * x * fock.psi(x).powi(2), &[-12.0, 0.0, 12.0], 1e-12);
    let p2 = common::integrate_pieces(
        &|p| p * p * fock.psi_momentum(p).powi(2),
        &[-12.0, 0.0, 12.0],
        1e-12,
    );
    let w = wigner_reference(s, default_spec()).unwrap();
    assert_abs_diff_eq!(w.moment(|x, _| x * x), q2, epsilon = 1e-3);
    assert_abs_diff_eq!(w.moment(|_, p| p * p), p2, epsilon = 1e-3);
}

#[test]
fn squeezed_vacuum_samples() {
    let vac = wigner_vacuum(default_spec()).unwrap();
    assert_abs_diff_eq!(origin_value(&vac).unwrap(), FRAC_1_PI, epsilon = 1e-15);
    let sq = wigner_squeezed_vacuum(0.28, default_spec()).unwrap();
    assert_abs_diff_eq!(origin_value(&sq).unwrap(), FRAC_1_PI, epsilon = 1e-15);
    assert!(sq.values().iter().all(|&v| v > 0.0));
    // Marginal variance along x.
    let var_x = sq.moment(|x, _| x * x) / sq.integral();
    assert_abs_diff_eq!(var_x, (-0.56f64).exp() / 2.0, epsilon = 1e-9);
}

#[test]
fn clipped_state_is_rejected() {
    let tight = GridSpec::square(2.0, 64).unwrap();
    assert!(matches!(
        wigner_reference(1.5, tight),
        Err(Error::DomainTooSmall { .. })
    ));
}

#[test]
fn convolution_semigroup() {
    // Wide domain: the intermediate grid is cropped, so mass pushed past the
    // edge cannot come back.
    let spec = GridSpec::square(10.0, 512).unwrap();
    let widths = [0.2_f64, 0.5, 1.0];
    for w in [
        wigner_vacuum(spec).unwrap(),
        wigner_reference(0.28, spec).unwrap(),
    ] {
        for &a in &widths {
            let once = convolve_gaussian(&w, a).unwrap();
            for &b in &widths {
                let twice = convolve_gaussian(&once, b).unwrap();
                let direct = convolve_gaussian(&w, a.hypot(b)).unwrap();
                let err = max_abs_diff(&twice, &direct);
                assert!(err < 1e-6, "a={a} b={b}: {err:e}");
            }
        }
    }
}

#[test]
fn semigroup_defect_is_confined_to_the_boundary() {
    let spec = default_spec();
    let w = wigner_reference(0.28, spec).unwrap();
    let twice = convolve_gaussian(&convolve_gaussian(&w, 1.0).unwrap(), 0.5).unwrap();
    let direct = convolve_gaussian(&w, 1.25f64.sqrt()).unwrap();
    let mut interior: f64 = 0.0;
    for i in 0..spec.n_x {
        for j in 0..spec.n_p {
            if spec.x(i).abs() < 3.0 && spec.p(j).abs() < 3.0 {
                interior = interior.max((twice.at(i, j) - direct.at(i, j)).abs());
            }
        }
    }
    assert!(interior < 1e-6, "{interior:e}");
}

#[test]
fn convolution_preserves_norm_when_mass_stays_in_domain() {
    let spec = default_spec();
    for w in [
        wigner_vacuum(spec).unwrap(),
        wigner_reference(0.0, spec).unwrap(),
    ] {
        for &sigma in &[0.1, 0.2, 0.5] {
            let out = convolve_gaussian(&w, sigma).unwrap();
            assert!((out.integral() - w.integral()).abs() < 1e-6);
        }
    }
}

#[test]
fn gaussian_convolved_with_gaussian() {
    let spec = default_spec();
    for &(a, b) in &[(0.2, 0.5), (0.5, 0.5), (0.3, 1.0)] {
        let g = wigner_gaussian(a, a, spec).unwrap();
        let out = convolve_gaussian(&g, b).unwrap();
        let c: f64 = a.hypot(b);
        let exact = WignerGrid::from_fn(spec, |x, p| {
            (-(x * x + p * p) / (2.0 * c * c)).exp() / (2.0 * std::f64::consts::PI * c * c)
        })
        .unwrap();
        assert!(max_abs_diff(&out, &exact) < 1e-6);
    }
}

#[test]
fn zero_width_and_infinite_r_are_identities() {
    let w = wigner_reference(0.28, default_spec()).unwrap();
    assert_eq!(convolve_gaussian(&w, 0.0).unwrap(), w);
    assert_eq!(teleport(&w, f64::INFINITY).unwrap(), w);
    let sharp = teleport(&w, 12.0).unwrap();
    assert!(max_abs_diff(&sharp, &w) < 1e-6);
    assert!(convolve_gaussian(&w, -0.1).is_err());
    assert!(teleport(&w, f64::NAN).is_err());
}

#[test]
fn aliasing_is_reported() {
    let spec = GridSpec::square(3.0, 64).unwrap();
    let w = wigner_vacuum(GridSpec::square(6.0, 64).unwrap()).unwrap();
    assert!(matches!(
        convolve_gaussian(&w, 3.0),
        Err(Error::Aliasing { .. })
    ));
    let narrow = WignerGrid::from_fn(spec, |x: f64, p: f64| (-(x * x + p * p)).exp()).unwrap();
    assert!(convolve_gaussian(&narrow, 0.5).is_ok());
}

#[test]
fn loss_matches_closed_form_pointwise() {
    let spec = default_spec();
    let (s, eta) = (0.28, 0.8);
    let w = apply_loss(&wigner_reference(s, spec).unwrap(), eta).unwrap();
    let exact = WignerGrid::from_fn(spec, |x, p| {
        reference_through_gaussian(s, eta, loss_variance(eta), x, p)
    })
    .unwrap();
    assert!(max_abs_diff(&w, &exact) < 1e-5);
    let params = InputStateParams::new(s, eta, 0.0).unwrap();
    assert_abs_diff_eq!(
        origin_value(&w).unwrap(),
        input_negativity(&params),
        epsilon = 1e-4
    );
    assert!((w.integral() - 1.0).abs() < 1e-3);
}

#[test]
fn loss_fixed_points() {
    let spec = default_spec();
    let w = wigner_reference(0.28, spec).unwrap();
    assert_eq!(apply_loss(&w, 1.0).unwrap(), w);
    let vac = wigner_vacuum(spec).unwrap();
    for &eta in &[0.3, 0.6, 0.9] {
        assert!(max_abs_diff(&apply_loss(&vac, eta).unwrap(), &vac) < 1e-6);
    }
    assert!(apply_loss(&w, 0.0).is_err());
    assert!(apply_loss(&w, 1.2).is_err());
}

#[test]
fn loss_then_teleport_matches_widened_loss() {
    let spec = default_spec();
    let (s, eta, r) = (0.28, 0.8, 0.795);
    let out = teleport(
        &apply_loss(&wigner_reference(s, spec).unwrap(), eta).unwrap(),
        r,
    )
    .unwrap();
    let widened = loss_variance(eta) + (-2.0 * r).exp() / eta;
    let exact = WignerGrid::from_fn(spec, |x, p| {
        reference_through_gaussian(s, eta, widened, x, p)
    })
    .unwrap();
    assert!(max_abs_diff(&out, &exact) < 1e-5);
}

#[test]
fn order_of_loss_and_teleportation_matters() {
    let spec = default_spec();
    let (s, eta, r) = (0.28, 0.8, 0.6);
    let w = wigner_reference(s, spec).unwrap();
    let loss_first = origin_value(&teleport(&apply_loss(&w, eta).unwrap(), r).unwrap()).unwrap();
    let teleport_first =
        origin_value(&apply_loss(&teleport(&w, r).unwrap(), eta).unwrap()).unwrap();
    // Input-side loss hurts more: it also shrinks the effective EPR correlation.
    assert_abs_diff_eq!(loss_first, 0.000263637222, epsilon = 1e-6);
    assert_abs_diff_eq!(teleport_first, -0.015251244996, epsilon = 1e-6);
    assert!(loss_first > teleport_first);
}

#[test]
fn mixture_origin() {
    let spec = default_spec();
    for &s in &[0.0, 0.28] {
        let a = wigner_reference(s, spec).unwrap();
        let b = wigner_squeezed_vacuum(s, spec).unwrap();
        for &eps in &[0.0, 0.013, 0.3, 1.0] {
            let m = mix(&a, &b, eps).unwrap();
            assert_abs_diff_eq!(
                origin_value(&m).unwrap(),
                (2.0 * eps - 1.0) / std::f64::consts::PI,
                epsilon = 1e-15
            );
        }
        assert_eq!(mix(&a, &b, 0.0).unwrap(), a);
        assert_eq!(mix(&a, &b, 1.0).unwrap(), b);
    }
    let other = wigner_vacuum(GridSpec::square(6.0, 256).unwrap()).unwrap();
    let a = wigner_vacuum(spec).unwrap();
    assert!(matches!(mix(&a, &other, 0.5), Err(Error::GridMismatch(_))));
}

#[test]
fn origin_value_of_odd_grid_is_zero() {
    let w = WignerGrid::from_fn(default_spec(), |x: f64, p: f64| {
        x * (-(x * x + p * p)).exp()
    })
    .unwrap();
    assert_eq!(origin_value(&w).unwrap(), 0.0);
    let off = GridSpec::new(1.0, 5.0, -2.0, 2.0, 64, 64).unwrap();
    let shifted = WignerGrid::from_fn(off, |_, _| 0.0).unwrap();
    assert!(matches!(origin_value(&shifted), Err(Error::Domain { .. })));
}

#[test]
fn full_pipeline_matches_closed_form() {
    let spec = default_spec();
    let params = InputStateParams::new(0.28, 0.8, 0.013).unwrap();
    let out = output_state(&params, 0.795, spec).unwrap();
    assert_abs_diff_eq!(
        origin_value(&out).unwrap(),
        output_negativity(&params, 0.795),
        epsilon = 1e-4
    );
    assert!((origin_value(&out).unwrap() + 0.0243).abs() < 5e-4);
}

#[test]
fn diffusion_matches_convolution() {
    let spec = default_spec();
    let kappa = 0.1;
    let dx2 = spec.dx() * spec.dx();
    for w in [
        wigner_vacuum(spec).unwrap(),
        wigner_reference(0.28, spec).unwrap(),
    ] {
        for &kt in &[0.05, 0.1] {
            let t = kt / kappa;
            let steps = (kt / (STABILITY_FACTOR * dx2)).ceil() as usize;
            let diffused = evolve_diffusion(&w, kappa, t, steps).unwrap();
            let convolved = convolve_gaussian(&w, (2.0 * kt).sqrt()).unwrap();
            let d = l2_distance(&diffused, &convolved).unwrap();
            assert!(d <= 1e-3, "kt={kt}: {d:e}");
            assert!((diffused.integral() - w.integral()).abs() < 1e-6);
        }
    }
}

#[test]
fn diffusion_conserves_norm_step_by_step() {
    let spec = GridSpec::square(6.0, 128).unwrap();
    let mut w = wigner_reference(0.28, spec).unwrap();
    let before = w.integral();
    let dt_bound = STABILITY_FACTOR * spec.dx() * spec.dx();
    for _ in 0..20 {
        w = evolve_diffusion(&w, 1.0, dt_bound, 1).unwrap();
        assert!((w.integral() - before).abs() < 1e-6);
    }
}

#[test]
fn diffusion_guards() {
    let spec = GridSpec::square(6.0, 128).unwrap();
    let w = wigner_vacuum(spec).unwrap();
    assert_eq!(evolve_diffusion(&w, 0.1, 0.0, 0).unwrap(), w);
    assert!(matches!(
        evolve_diffusion(&w, 0.1, 1.0, 10),
        Err(Error::Stability { .. })
    ));
    assert!(evolve_diffusion(&w, 0.1, 1.0, 0).is_err());
}
