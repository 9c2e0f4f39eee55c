mod common;

use common::*;
use dyncp::correlations::*;
use dyncp::kernels::{f_apply, ScalarKernel};
use dyncp::oracle::*;
use dyncp::quadrature::QuadratureSpec;
use dyncp::Error;
use num_complex::Complex64;

#[test]
fn box_sum_reproduces_the_continuum_correlation() {
    let s = scene(2.0, 3.0, 2.5);
    let t = 3.5;
    let cont = corr_nonresonant_complex(&s, t, &QuadratureSpec::default(), 1.0).unwrap().value;
    let b = box_corr(&s, t, &BoxSpec::new(20.0, 20.0).with_regulator(1.0)).unwrap();
    let err = (b.nonresonant - cont).norm() / cont.norm();
    assert!(err < 1e-2, "relative error {err:e}");
}

#[test]
fn box_resonant_part_matches_closed_form() {
    let s = scene(2.0, 3.0, 2.5);
    let b = box_corr(&s, 3.5, &BoxSpec::new(20.0, 20.0).with_regulator(1.0)).unwrap();
    let closed = corr_resonant_complex(&s, 3.5);
    assert!((b.resonant - closed).norm() < 1e-12 * closed.norm());
}

#[test]
fn box_sum_respects_the_mode_budget() {
    let s = scene(2.0, 3.0, 2.5);
    let mut spec = BoxSpec::new(40.0, 20.0);
    spec.mode_budget = 1000;
    assert!(matches!(box_corr(&s, 3.5, &spec), Err(Error::ModeBudget { .. })));
}

#[test]
fn correlation_vanishes_before_the_signal_arrives() {
    let s = scene(2.0, 3.0, 2.5);
    let c = correlation(&s, 1.5, &QuadratureSpec::default()).unwrap();
    assert_eq!(frobenius(&c.components), 0.0);
}

#[test]
fn ground_state_reference_is_the_exact_negative() {
    let s = scene(2.0, 3.0, 2.5);
    let spec = QuadratureSpec::default();
    let e = corr_nonresonant(&s, 3.5, &spec).unwrap();
    let g = corr_ground_state_reference(&s, 3.5, &spec).unwrap();
    assert_eq!(g.tensor, e.tensor.map(|row| row.map(|x| -x)));
}

#[test]
fn finite_differences_match_closed_form() {
    let r_vec = [1.2, -0.7, 0.4];
    for kernel in [
        ScalarKernel::ExpComplex(Complex64::new(0.0, 1.3)),
        ScalarKernel::ExpComplex(Complex64::new(-0.8, 0.0)),
        ScalarKernel::SinOverR(0.9),
        ScalarKernel::Static,
    ] {
        let fd = fd_f_apply(&kernel, r_vec, 2e-3);
        let exact = f_apply(&kernel, r_vec).unwrap().components;
        assert!(!fd.step_warning);
        assert!((fd.tensor - exact).norm() < 1e-7 * exact.norm(), "{kernel:?}");
    }
}

#[test]
fn coarse_steps_are_flagged() {
    let fd = fd_f_apply(&ScalarKernel::SinOverR(2.0), [1.0, 0.0, 0.0], 0.1);
    assert!(fd.step_warning);
}

#[test]
fn polarization_basis_is_orthonormal() {
    let k_hat = [0.0, 0.6, 0.8];
    for seed in [[0.3, 0.5, 0.8], [0.0, 0.6, 0.8]] {
        let [e1, e2] = polarization_basis(k_hat, seed);
        let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        for (a, b, want) in [(e1, e1, 1.0), (e2, e2, 1.0), (e1, e2, 0.0), (e1, k_hat, 0.0), (e2, k_hat, 0.0)] {
            assert!((dot(a, b) - want).abs() < 1e-12);
        }
    }
}

#[test]
fn box_sum_does_not_depend_on_the_polarization_seed() {
    let s = scene(2.0, 3.0, 2.5);
    let base = BoxSpec::new(10.0, 8.0).with_regulator(1.0);
    let a = box_corr(&s, 3.5, &base).unwrap().total;
    let b = box_corr(&s, 3.5, &base.with_seed([-0.7, 0.1, 0.2])).unwrap().total;
    assert!((a - b).norm() < 1e-10 * a.norm(), "{a:?} vs {b:?}");
}
