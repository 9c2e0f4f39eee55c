mod common;

use common::*;
use dyncp::oracle::stationary_three_body;
use dyncp::potentials::*;
use dyncp::quadrature::QuadratureSpec;
use dyncp::terms::EvalContext;
use dyncp::Error;

#[test]
fn symmetrized_energy_vanishes_outside_all_light_cones() {
    let spec = QuadratureSpec::default();
    let s = scene(2.0, 3.0, 2.5);
    for t in [0.3, 1.0, 1.9] {
        let e = delta_e_sym_total(&s, t, &spec).unwrap();
        assert_eq!(e.total, 0.0);
        assert!(sym_i_terms(&s, t).is_identically_zero());
        assert!(sym_ii_terms(&s, t).unwrap().is_identically_zero());
    }
}

#[test]
fn pair_energy_vanishes_far_from_the_source() {
    let spec = QuadratureSpec::default();
    // alpha, beta >= gamma + ct
    let s = scene(4.0, 4.4, 1.0);
    for t in [0.5, 2.0, 2.9] {
        assert!(pair_nr_terms(&s, t).unwrap().is_identically_zero());
        assert_eq!(delta_e_pair(&s, t, &spec).unwrap().total, 0.0);
    }
}

#[test]
fn pair_energy_is_nonlocal_in_the_window() {
    let spec = QuadratureSpec::default();
    // alpha = beta in (ct, gamma + ct), gamma < ct
    let s = scene(3.0, 3.0, 1.5);
    let e = delta_e_pair(&s, 2.0, &spec).unwrap();
    assert_eq!(e.de_r, 0.0);
    assert!(e.total.abs() > 100.0 * spec.abs_tol, "{e:?}");
}

#[test]
fn resonant_parts_agree() {
    let mut rng = rng(11);
    for _ in 0..20 {
        let (s, t) = random_generic(&mut rng, 8.0);
        let p = delta_e_pair_r(&s, t).unwrap();
        let y = delta_e_sym_r(&s, t).unwrap();
        assert!(rel_diff(p, y) < 1e-12, "pair {p} sym {y}");
    }
}

#[test]
fn resonant_part_needs_both_atoms_inside_the_cone() {
    let s = scene(2.0, 3.0, 2.5);
    assert_eq!(delta_e_pair_r(&s, 2.5).unwrap(), 0.0);
    assert_ne!(delta_e_pair_r(&s, 3.5).unwrap(), 0.0);
}

#[test]
fn pair_settles_to_the_stationary_value() {
    let spec = QuadratureSpec::default();
    let s = scene(2.0, 3.0, 2.5);
    let stat = delta_e_stationary(&s, &spec).unwrap();
    let near = rel_diff(delta_e_pair(&s, 50.0 * 3.0, &spec).unwrap().total, stat);
    let far = rel_diff(delta_e_pair(&s, 100.0 * 3.0, &spec).unwrap().total, stat);
    assert!(near < 1e-2 && far < near, "near {near:e} far {far:e}");
}

#[test]
fn late_time_three_body_matches_direct_quadrature() {
    let spec = QuadratureSpec::default();
    let s = scene(2.0, 3.0, 2.5);
    let e = delta_e_sym_i(&s, 200.0, &spec).unwrap();
    let o = stationary_three_body(&s, 4000);
    assert!(rel_diff(e, o) < 1e-8, "{e} vs {o}");
}

#[test]
fn sym_i_is_label_symmetric_for_identical_ground_atoms() {
    let spec = QuadratureSpec::default();
    let s = scene_with(2.0, 3.0, 2.5, [1.5, 1.0, 1.5, 1.0, 1.0, 1.2]);
    for t in [2.2, 3.3, 6.1] {
        let e = delta_e_sym_i(&s, t, &spec).unwrap();
        let f = delta_e_sym_i(&s.swapped_ab(), t, &spec).unwrap();
        assert!(rel_diff(e, f) < 1e-10, "{e} vs {f}");
    }
}

#[test]
fn symmetrized_energy_is_real() {
    let spec = QuadratureSpec::default();
    let s = scene(2.0, 3.0, 2.5);
    for t in [2.2, 3.3, 4.7, 6.1] {
        assert!(delta_e_sym_total(&s, t, &spec).unwrap().is_real());
    }
}

#[test]
fn pair_energy_keeps_an_imaginary_part() {
    // R(α, β) + conj R(β, α) is real only for symmetric brackets
    let spec = QuadratureSpec::default();
    let e = delta_e_pair(&scene(3.0, 3.0, 1.5), 2.0, &spec).unwrap();
    assert!(!e.is_real());
}

#[test]
fn spacelike_pair_form_matches_the_general_static_part() {
    let spec = QuadratureSpec::default();
    let s = scene(4.0, 4.3, 1.0);
    let t = 3.5;
    let ctx = EvalContext { geom: &s.geom, ct: t, k0: s.k0(), spec: &spec, regulator: 0.0 };
    let general = pair_nr_terms(&s, t).unwrap().evaluate_terms(&ctx).unwrap();
    let special = pair_spacelike_terms(&s, t).unwrap().evaluate_terms(&ctx).unwrap();
    let (g, p) = (general[0].1.value, special[0].1.value);
    assert!((g - p.conj()).norm() < 1e-12 * g.norm());
    // the transient halves are different expressions
    let gt: f64 = general[1..].iter().map(|(_, r)| r.value.re).sum();
    let pt: f64 = special[1..].iter().map(|(_, r)| r.value.re).sum();
    assert!(rel_diff(gt, pt) > 0.1);
}

#[test]
fn spacelike_pair_form_refuses_other_regions() {
    let spec = QuadratureSpec::default();
    let err = delta_e_pair_spacelike(&scene(2.0, 3.0, 2.5), 3.5, &spec).unwrap_err();
    assert!(matches!(err, Error::Region(_)));
}

#[test]
fn spacelike_a_damped_part_is_sym_i() {
    let spec = QuadratureSpec::default();
    let s = scene(1.0, 4.0, 4.5);
    for t in [1.5, 2.5, 3.5] {
        let off = SpacelikeAOptions { k_terms: false };
        let u = delta_e_sym_spacelike_a_with(&s, t, &spec, off).unwrap();
        let i = delta_e_sym_i(&s, t, &spec).unwrap();
        assert!(rel_diff(u, i) < 1e-12, "{u} vs {i}");
    }
}

#[test]
fn spacelike_a_differs_from_the_general_form() {
    let spec = QuadratureSpec::default();
    let s = scene(1.0, 4.0, 4.5);
    let g = delta_e_sym_total(&s, 1.5, &spec).unwrap().total;
    let a = delta_e_sym_spacelike_a(&s, 1.5, &spec).unwrap();
    assert!(rel_diff(g, a) > 0.5, "{g} vs {a}");
}

#[test]
fn negative_time_is_rejected() {
    let spec = QuadratureSpec::default();
    let s = scene(2.0, 3.0, 2.5);
    assert!(matches!(delta_e_pair(&s, -1.0, &spec), Err(Error::InvalidParameter(_))));
    assert!(matches!(delta_e_sym_total(&s, f64::NAN, &spec), Err(Error::InvalidParameter(_))));
}

#[test]
fn detuned_ground_atom_is_refused() {
    let spec = QuadratureSpec::default();
    let s = scene_with(2.0, 3.0, 2.5, [1.0, 1.0, 2.0, 1.0, 1.0, 1.2]);
    assert!(matches!(delta_e_pair(&s, 3.3, &spec), Err(Error::Detuning { .. })));
}
