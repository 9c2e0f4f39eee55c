//! Symmetrized three-body potential `ΔE(A, B, C) = ΔE_(I) + ΔE_(II) + ΔE_(r)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{EnergyBreakdown, Polarizability};
use crate::error::{Error, Result};
use crate::kernels::{f_apply, triple_contract, ScalarKernel};
use crate::quadrature::{IntegralResult, QuadratureSpec};
use crate::scene::{sgn, CausalityRegion, Scene};
use crate::terms::{Axis, EvalContext, Expr, Phase, Term, TermTable, Triple, Weight, ALPHA, BETA, GAMMA};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

/// Distance variable between two atoms.
fn link(p: usize, q: usize) -> usize {
    match (p.min(q), p.max(q)) {
        (A, B) => GAMMA,
        (A, C) => BETA,
        (B, C) => ALPHA,
        _ => panic!("no link between atom {p} and itself"),
    }
}

fn context<'a>(scene: &'a Scene, t: f64, spec: &'a QuadratureSpec) -> EvalContext<'a> {
    EvalContext { geom: &scene.geom, ct: t, k0: scene.k0(), spec, regulator: 0.0 }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be non-negative and finite, got {t}")));
    }
    Ok(())
}

fn polarizabilities(scene: &Scene) -> [Polarizability; 3] {
    [Polarizability::of(&scene.a), Polarizability::of(&scene.b), Polarizability::of(&scene.c)]
}

/// Polarizabilities at `k0`. For the excited atom only the counter-rotating
/// half is finite there.
fn at_k0(scene: &Scene) -> Result<[f64; 3]> {
    let k0 = scene.k0();
    let [pa, pb, pc] = polarizabilities(scene);
    Ok([pa.at_k0(k0)?, pb.at_k0(k0)?, pc.counter_rotating(k0)])
}

/// `e^{−u·(Σ s_v r_v + s_t ct)}` written as `e^{ikX}` at `k = iu`.
fn damped(slopes: [f64; 3], st: f64) -> Phase {
    Phase { k: slopes, kt: st, ..Default::default() }
}

/// `ΔE_(I)` as a term table.
pub fn sym_i_terms(scene: &Scene, t: f64) -> TermTable<Triple> {
    let r = scene.region(t);
    let six = 6.0
        - r.sgn_alpha_minus_ct
        - r.sgn_beta_minus_ct
        - r.sgn_gamma_minus_ct
        - r.sgn_alpha_plus_beta_minus_ct
        - r.sgn_alpha_plus_gamma_minus_ct
        - r.sgn_beta_plus_gamma_minus_ct;
    let expr = Expr::exp(damped([1.0, 1.0, 1.0], 0.0)) * six
        + Expr::exp(damped([1.0, -1.0, 1.0], 0.0)) * (-r.sgn_beta_minus_ct + r.sgn_alpha_plus_gamma_minus_ct)
        + Expr::exp(damped([1.0, 1.0, -1.0], 0.0)) * (-r.sgn_gamma_minus_ct + r.sgn_alpha_plus_beta_minus_ct)
        + Expr::exp(damped([-1.0, 1.0, 1.0], 0.0)) * (-r.sgn_alpha_minus_ct + r.sgn_beta_plus_gamma_minus_ct);
    let mut table = TermTable::new();
    table.push(Term::new("sym-i", Axis::ImagU, Weight::of(&polarizabilities(scene)), expr * (1.0 / (12.0 * PI))));
    table
}

/// `2α_Y(k0) θ(ct − d_YZ) [cos k0(d_YZ − ct) ∫ α_X α_Z (…) + sin k0(d_YZ − ct)/k0 ∫ u α_X α_Z (…)]`.
fn block_one(region: &CausalityRegion, k0: f64, pol: &[Polarizability; 3], pol0: &[f64; 3], xyz: [usize; 3]) -> Vec<Term> {
    let [x, y, z] = xyz;
    let (yz, xz, xy) = (link(y, z), link(x, z), link(x, y));
    let d = region.distances;
    let ct = region.ct;
    if !region.theta(d[yz]) {
        return Vec::new();
    }
    let pref = 2.0 * pol0[y] / (12.0 * PI);
    let osc = Phase::k0_on(yz, 1.0) + Phase::t(0.0, -1.0);
    let on = |v: usize, s: f64| {
        let mut p = [0.0; 3];
        p[v] = s;
        p
    };
    let sum = |a: [f64; 3], b: [f64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let plus = sum(on(xz, 1.0), on(xy, 1.0));
    let minus = sum(on(xz, 1.0), on(xy, -1.0));
    let scaled = |p: [f64; 3], s: f64| p.map(|v| v * s);

    let e_far = Expr::exp(damped(plus, 1.0));
    let s1 = sgn(d[xz] + d[xy] - ct);
    let e1 = Expr::exp(damped(scaled(plus, s1), -s1));
    let s2 = sgn(d[xz] - d[xy] - ct);
    let e2 = Expr::exp(damped(scaled(minus, s2), -s2));
    let s3 = sgn(d[xz] - d[xy] + ct);
    let e3 = Expr::exp(damped(scaled(minus, s3), s3));

    let cos_part = Expr::cos(osc) * (e_far.clone() + e1.clone() * s1 + e2.clone() * s2 + e3.clone() * s3);
    let sin_part = Expr::sin(osc) * (e_far + e1 + e2 - e3) * (1.0 / k0);
    let weight = Weight::of(&[pol[x], pol[z]]);
    vec![
        Term::new("sym-ii-1-cos", Axis::ImagU, weight.clone(), cos_part * pref),
        Term::new("sym-ii-1-sin", Axis::ImagU, weight.with_power(1), sin_part * pref),
    ]
}

/// `4α_X(k0) θ(ct − d_XZ − d_XY) [cos k0(d_XZ + d_XY − ct) ∫ α_Y α_Z (…) + sin(…)/k0 ∫ u α_Y α_Z (…)]`.
fn block_two(region: &CausalityRegion, k0: f64, pol: &[Polarizability; 3], pol0: &[f64; 3], xyz: [usize; 3]) -> Vec<Term> {
    let [x, y, z] = xyz;
    let (yz, xz, xy) = (link(y, z), link(x, z), link(x, y));
    let d = region.distances;
    let ct = region.ct;
    if !region.theta(d[xz] + d[xy]) {
        return Vec::new();
    }
    let pref = 4.0 * pol0[x] / (12.0 * PI);
    let osc = Phase::k0_on(xz, 1.0) + Phase::k0_on(xy, 1.0) + Phase::t(0.0, -1.0);
    let s = sgn(d[yz] - ct);
    let e_far = Expr::exp(Phase::k_on(yz, 1.0) + Phase::t(1.0, 0.0));
    let e_near = Expr::exp(Phase::k_on(yz, s) + Phase::t(-s, 0.0));

    let cos_part = Expr::cos(osc) * (e_far.clone() + e_near.clone() * s);
    let sin_part = Expr::sin(osc) * (e_far + e_near) * (1.0 / k0);
    let weight = Weight::of(&[pol[y], pol[z]]);
    vec![
        Term::new("sym-ii-2-cos", Axis::ImagU, weight.clone(), cos_part * pref),
        Term::new("sym-ii-2-sin", Axis::ImagU, weight.with_power(1), sin_part * pref),
    ]
}

/// `ΔE_(II)` as a term table: the two blocks for the labelling (A, B, C)
/// plus the images A ⇄ B and A ⇄ C. Inside the first block the roles of the
/// two atoms other than X are also exchanged.
pub fn sym_ii_terms(scene: &Scene, t: f64) -> Result<TermTable<Triple>> {
    let region = scene.region(t);
    let pol = polarizabilities(scene);
    let pol0 = at_k0(scene)?;
    let k0 = scene.k0();
    let mut table = TermTable::new();
    for [x, y, z] in [[A, B, C], [B, A, C], [C, B, A]] {
        for term in block_one(&region, k0, &pol, &pol0, [x, y, z])
            .into_iter()
            .chain(block_one(&region, k0, &pol, &pol0, [x, z, y]))
            .chain(block_two(&region, k0, &pol, &pol0, [x, y, z]))
        {
            table.push(term);
        }
    }
    Ok(table)
}

pub(crate) fn sym_i_complex(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<IntegralResult<Complex64>> {
    check_time(t)?;
    sym_i_terms(scene, t).evaluate(&context(scene, t, spec))
}

pub(crate) fn sym_ii_complex(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<IntegralResult<Complex64>> {
    check_time(t)?;
    sym_ii_terms(scene, t)?.evaluate(&context(scene, t, spec))
}

pub fn delta_e_sym_i(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(sym_i_complex(scene, t, spec)?.value.re)
}

pub fn delta_e_sym_ii(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(sym_ii_complex(scene, t, spec)?.value.re)
}

/// Resonant three-body term
/// `−P α_A(k0) α_B(k0) 2Re[F^β F^α e^{ik0(β−α)}/(αβ)] F^γ(cos k0γ/γ) θ(ct−β) θ(ct−α)`,
/// contracted directly from the kernel tensors.
pub fn delta_e_sym_r(scene: &Scene, t: f64) -> Result<f64> {
    check_time(t)?;
    let k0 = scene.k0();
    let aa0 = Polarizability::of(&scene.a).at_k0(k0)?;
    let ab0 = Polarizability::of(&scene.b).at_k0(k0)?;
    let region = scene.region(t);
    if !(region.th_alpha && region.th_beta) {
        return Ok(0.0);
    }
    let g = &scene.geom;
    let fb = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, k0)), g.separation(BETA))?;
    let fa = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, -k0)), g.separation(ALPHA))?;
    let fg = f_apply(&ScalarKernel::CosOverR(k0), g.separation(GAMMA))?;
    let v = triple_contract(&fg.components, &fb.components, &fa.components);
    Ok(-(scene.c.mu2 / 3.0) * aa0 * ab0 * 2.0 * v.re)
}

/// `ΔE(A, B, C)` with its three parts.
pub fn delta_e_sym_total(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<EnergyBreakdown> {
    let i = sym_i_complex(scene, t, spec)?;
    let ii = sym_ii_complex(scene, t, spec)?;
    let r = delta_e_sym_r(scene, t)?;
    Ok(EnergyBreakdown::symmetrized(i, ii, r, scene.region(t)))
}

/// Switches for [`delta_e_sym_spacelike_a_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpacelikeAOptions {
    /// Include the two real-axis `k` integrals.
    pub k_terms: bool,
}

impl Default for SpacelikeAOptions {
    fn default() -> Self {
        SpacelikeAOptions { k_terms: true }
    }
}

/// `ΔE(A, B, C)` when A is space-like from both B and C while B and C see
/// each other (`β, γ > ct > α`).
///
/// ```text
/// (1/6π) ∫ du α_A α_B α_C (e^{−u(α+β+γ)} + e^{−u(−α+β+γ)}) FFF/(αβγ)
///   − (1/6π) P [α_B(k0) + α_C(k0)] 2Re{e^{−ik0(α−ct)} ∫ dk α_A sin k(β+γ) e^{ikct}/(k0+k)} FFF/(αβγ)
/// ```
pub fn sym_spacelike_a_terms(scene: &Scene, t: f64, options: SpacelikeAOptions) -> Result<TermTable<Triple>> {
    let region = scene.region(t);
    if region.th_beta || region.th_gamma || !region.th_alpha {
        return Err(Error::Region(format!(
            "the space-like-A form needs beta, gamma > ct > alpha; got alpha={}, beta={}, gamma={}, ct={t}",
            scene.geom.alpha, scene.geom.beta, scene.geom.gamma
        )));
    }
    let pol = polarizabilities(scene);
    let pol0 = at_k0(scene)?;
    let mut table = TermTable::new();
    let damped_part = Expr::exp(damped([1.0, 1.0, 1.0], 0.0)) + Expr::exp(damped([-1.0, 1.0, 1.0], 0.0));
    table.push(Term::new("spacelike-a-u", Axis::ImagU, Weight::of(&pol), damped_part * (1.0 / (6.0 * PI))));
    if options.k_terms {
        let one = Expr::exp(Phase::k0(-1.0, 0.0, 0.0) + Phase::t(1.0, 1.0)) * Expr::sin(Phase::k(0.0, 1.0, 1.0));
        let pref = -(scene.c.mu2 / 3.0) * (pol0[B] + pol0[C]) / (6.0 * PI);
        table.push(Term::new(
            "spacelike-a-k",
            Axis::RealK,
            Weight::of(&[pol[A]]).with_resolvent(),
            (one.clone() + one.conj()) * pref,
        ));
    }
    Ok(table)
}

pub fn delta_e_sym_spacelike_a_with(
    scene: &Scene,
    t: f64,
    spec: &QuadratureSpec,
    options: SpacelikeAOptions,
) -> Result<f64> {
    check_time(t)?;
    Ok(sym_spacelike_a_terms(scene, t, options)?.evaluate(&context(scene, t, spec))?.value.re)
}

pub fn delta_e_sym_spacelike_a(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    delta_e_sym_spacelike_a_with(scene, t, spec, SpacelikeAOptions::default())
}
