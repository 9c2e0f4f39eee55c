//! `ΔE_C(A, B)`: the interaction of the ground-state atoms A and B while C
//! decays. Overall factor `P = |μ_C|²/3` from the isotropic dipole average.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{EnergyBreakdown, Polarizability};
use crate::error::{Error, Result};
use crate::quadrature::{IntegralResult, QuadratureSpec};
use crate::scene::{sgn, CausalityRegion, Scene};
use crate::terms::{Axis, EvalContext, Expr, Phase, Term, TermTable, Triple, Weight, ALPHA, BETA, GAMMA};

fn p_c(scene: &Scene) -> f64 {
    scene.c.mu2 / 3.0
}

fn kx(v: usize, s: f64) -> Phase {
    Phase::k_on(v, s)
}

fn k0x(v: usize, s: f64) -> Phase {
    Phase::k0_on(v, s)
}

/// The static-structure bracket with `x` playing α and `y` playing β:
///
/// ```text
/// (sin k(y+γ) + sin k(y−γ)) e^{−ikx} θ(ct−x)
///   + sin ky [e^{−ik(x+γ)} θ(ct−x−γ) + sgn(x−γ) e^{−ik|x−γ|} θ(ct−|x−γ|)]
/// ```
fn retarded_bracket(region: &CausalityRegion, x: usize, y: usize) -> Expr {
    let d = region.distances;
    let (dx, dg) = (d[x], d[GAMMA]);
    let s = sgn(dx - dg);
    let standing = (Expr::sin(kx(y, 1.0) + kx(GAMMA, 1.0)) + Expr::sin(kx(y, 1.0) + kx(GAMMA, -1.0)))
        * Expr::exp(kx(x, -1.0));
    let tail = Expr::exp(kx(x, -1.0) + kx(GAMMA, -1.0)).gated(region.theta(dx + dg))
        + (Expr::exp(kx(x, -s) + kx(GAMMA, s)) * s).gated(region.theta((dx - dg).abs()));
    standing.gated(region.theta(dx)) + Expr::sin(kx(y, 1.0)) * tail
}

/// The transient bracket multiplying `α_y(k0)`, same roles as above:
///
/// ```text
/// e^{−i(k0+k)ct} [e^{−ik0x} θ(ct−x)(sin k(y+γ) + sin k(y−γ))
///   + (e^{−ik0(x+γ)} θ(ct−x−γ) + sgn(x−γ) e^{−ik0|x−γ|} θ(ct−|x−γ|)) sin ky]
/// ```
fn transient_bracket(region: &CausalityRegion, x: usize, y: usize) -> Expr {
    let d = region.distances;
    let (dx, dg) = (d[x], d[GAMMA]);
    let s = sgn(dx - dg);
    let standing = (Expr::sin(kx(y, 1.0) + kx(GAMMA, 1.0)) + Expr::sin(kx(y, 1.0) + kx(GAMMA, -1.0)))
        * Expr::exp(k0x(x, -1.0));
    let tail = Expr::exp(k0x(x, -1.0) + k0x(GAMMA, -1.0)).gated(region.theta(dx + dg))
        + (Expr::exp(k0x(x, -s) + k0x(GAMMA, s)) * s).gated(region.theta((dx - dg).abs()));
    Expr::exp(Phase::t(-1.0, -1.0)) * (standing.gated(region.theta(dx)) + Expr::sin(kx(y, 1.0)) * tail)
}

/// Non-resonant pair energy as a term table (complex; the energy is its real part).
pub fn pair_nr_terms(scene: &Scene, t: f64) -> Result<TermTable<Triple>> {
    let region = scene.region(t);
    let k0 = scene.k0();
    let (pa, pb) = (Polarizability::of(&scene.a), Polarizability::of(&scene.b));
    let (aa0, ab0) = (pa.at_k0(k0)?, pb.at_k0(k0)?);
    let pref = p_c(scene) / (2.0 * PI);

    let mut table = TermTable::new();
    let both = retarded_bracket(&region, ALPHA, BETA) + retarded_bracket(&region, BETA, ALPHA).conj();
    table.push(Term::new("pair-nr-static", Axis::RealK, Weight::of(&[pa, pb]).with_resolvent(), both * pref));
    table.push(Term::new(
        "pair-nr-transient-a",
        Axis::RealK,
        Weight::of(&[pa]).with_resolvent(),
        transient_bracket(&region, ALPHA, BETA) * (pref * ab0),
    ));
    table.push(Term::new(
        "pair-nr-transient-b",
        Axis::RealK,
        Weight::of(&[pb]).with_resolvent(),
        transient_bracket(&region, BETA, ALPHA).conj() * (pref * aa0),
    ));
    Ok(table)
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

pub(crate) fn pair_nr_complex(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<IntegralResult<Complex64>> {
    check_time(t)?;
    pair_nr_terms(scene, t)?.evaluate(&context(scene, t, spec))
}

/// Non-resonant pair energy `ΔE_C(A, B)^{nr}`.
pub fn delta_e_pair_nr(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(pair_nr_complex(scene, t, spec)?.value.re)
}

/// Resonant pair energy
/// `P α_A(k0) α_B(k0) 2Re[F^β F^α e^{ik0(β−α)}/(αβ)] F^γ(−cos k0γ/γ) θ(ct−β) θ(ct−α)`.
pub fn delta_e_pair_r(scene: &Scene, t: f64) -> Result<f64> {
    check_time(t)?;
    let region = scene.region(t);
    let k0 = scene.k0();
    let aa0 = Polarizability::of(&scene.a).at_k0(k0)?;
    let ab0 = Polarizability::of(&scene.b).at_k0(k0)?;
    if !(region.th_alpha && region.th_beta) {
        return Ok(0.0);
    }
    let one = Expr::exp(Phase::k0(-1.0, 1.0, 0.0)) * -Expr::cos(Phase::k0(0.0, 0.0, 1.0));
    let expr = (one.clone() + one.conj()) * (p_c(scene) * aa0 * ab0);
    let mut table = TermTable::<Triple>::new();
    table.push(Term::new("pair-r", Axis::Closed, Weight::default(), expr));
    let spec = QuadratureSpec::default();
    Ok(table.evaluate(&context(scene, t, &spec))?.value.re)
}

/// `ΔE_C(A, B) = ΔE^{nr} + ΔE^{r}`.
pub fn delta_e_pair(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<EnergyBreakdown> {
    let nr = pair_nr_complex(scene, t, spec)?;
    let r = delta_e_pair_r(scene, t)?;
    Ok(EnergyBreakdown::pair(nr, r, scene.region(t)))
}

/// Time-independent pair energy reached once A and B are deep inside C's
/// light cone.
///
/// ```text
/// (P/2π) F^γ F^β F^α (1/αβγ) ∫ dk α_A α_B/(k0+k) [cos kα (sin k(β+γ) + sin k(β−γ))
///     + sin kβ (cos k(α+γ) + sgn(α−γ) cos k(α−γ)) + (α ⇄ β)]
///   − P α_A(k0) α_B(k0) F^γ F^β F^α (cos k0(α−β+γ) + cos k0(α−β−γ))/(αβγ)
/// ```
pub fn delta_e_stationary(scene: &Scene, spec: &QuadratureSpec) -> Result<f64> {
    let k0 = scene.k0();
    let (pa, pb) = (Polarizability::of(&scene.a), Polarizability::of(&scene.b));
    let (aa0, ab0) = (pa.at_k0(k0)?, pb.at_k0(k0)?);
    let d = scene.geom.distances();
    let half = |x: usize, y: usize| {
        let s = sgn(d[x] - d[GAMMA]);
        Expr::cos(kx(x, 1.0))
            * (Expr::sin(kx(y, 1.0) + kx(GAMMA, 1.0)) + Expr::sin(kx(y, 1.0) + kx(GAMMA, -1.0)))
            + Expr::sin(kx(y, 1.0))
                * (Expr::cos(kx(x, 1.0) + kx(GAMMA, 1.0)) + Expr::cos(kx(x, 1.0) + kx(GAMMA, -1.0)) * s)
    };
    let bracket = half(ALPHA, BETA) + half(BETA, ALPHA).conj();
    let resonant =
        Expr::cos(Phase::k0(1.0, -1.0, 1.0)) + Expr::cos(Phase::k0(1.0, -1.0, -1.0));

    let mut table = TermTable::<Triple>::new();
    table.push(Term::new(
        "stationary-nr",
        Axis::RealK,
        Weight::of(&[pa, pb]).with_resolvent(),
        bracket * (p_c(scene) / (2.0 * PI)),
    ));
    table.push(Term::new("stationary-r", Axis::Closed, Weight::default(), resonant * (-p_c(scene) * aa0 * ab0)));
    Ok(table.evaluate(&context(scene, 0.0, spec))?.value.re)
}

/// Pair energy in the configuration `α, β > ct > γ`, evaluated from its own
/// closed bracket structure.
///
/// ```text
/// Re (P/2π) { ∫ α_A α_B sin kα/(k0+k) [cos k(β−γ) − ½ sgn(β−γ−ct) e^{−ik(β−γ)} − ½ e^{ik(β−γ)}]
///   − α_B(k0) ∫ α_A sin kα/(k0+k) e^{−i(k+k0)ct} [cos k0(β−γ) − ½ e^{−ik0(β−γ)} − ½ sgn(β−γ−ct) e^{ik0(β−γ)}]
///   + c.c.(A ⇄ B, α ⇄ β) }
/// ```
pub fn pair_spacelike_terms(scene: &Scene, t: f64) -> Result<TermTable<Triple>> {
    let region = scene.region(t);
    if region.th_alpha || region.th_beta || !region.th_gamma {
        return Err(Error::Region(format!(
            "the space-like pair form needs alpha, beta > ct > gamma; got alpha={}, beta={}, gamma={}, ct={t}",
            scene.geom.alpha, scene.geom.beta, scene.geom.gamma
        )));
    }
    let k0 = scene.k0();
    let (pa, pb) = (Polarizability::of(&scene.a), Polarizability::of(&scene.b));
    let (aa0, ab0) = (pa.at_k0(k0)?, pb.at_k0(k0)?);
    let d = scene.geom.distances();
    let pref = p_c(scene) / (2.0 * PI);

    // x carries the sine, y the (y − γ) brackets
    let static_half = |x: usize, y: usize| {
        let s = sgn(d[y] - d[GAMMA] - t);
        let arg = kx(y, 1.0) + kx(GAMMA, -1.0);
        Expr::sin(kx(x, 1.0)) * (Expr::cos(arg) - Expr::exp(-arg) * (0.5 * s) - Expr::exp(arg) * 0.5)
    };
    let transient_half = |x: usize, y: usize| {
        let s = sgn(d[y] - d[GAMMA] - t);
        let arg = k0x(y, 1.0) + k0x(GAMMA, -1.0);
        Expr::sin(kx(x, 1.0))
            * Expr::exp(Phase::t(-1.0, -1.0))
            * (Expr::cos(arg) - Expr::exp(-arg) * 0.5 - Expr::exp(arg) * (0.5 * s))
            * -1.0
    };

    let mut table = TermTable::new();
    let both = static_half(ALPHA, BETA) + static_half(BETA, ALPHA).conj();
    table.push(Term::new("spacelike-static", Axis::RealK, Weight::of(&[pa, pb]).with_resolvent(), both * pref));
    table.push(Term::new(
        "spacelike-transient-a",
        Axis::RealK,
        Weight::of(&[pa]).with_resolvent(),
        transient_half(ALPHA, BETA) * (pref * ab0),
    ));
    table.push(Term::new(
        "spacelike-transient-b",
        Axis::RealK,
        Weight::of(&[pb]).with_resolvent(),
        transient_half(BETA, ALPHA).conj() * (pref * aa0),
    ));
    Ok(table)
}

pub fn delta_e_pair_spacelike(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_time(t)?;
    Ok(pair_spacelike_terms(scene, t)?.evaluate(&context(scene, t, spec))?.value.re)
}
