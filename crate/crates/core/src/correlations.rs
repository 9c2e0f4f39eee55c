//! Source-dependent equal-time field correlation `⟨E_ℓ(r_A, t) E_m(r_B, t)⟩`.
//!
//! With `P = |μ_C|²/3`, the non-resonant part is
//!
//! ```text
//! −(P/π) ∫₀^∞ dk/(k0+k) · F^β[sin kβ/β] · F^α[(e^{−ikα} − e^{ik0α} e^{−i(k0+k)ct})/α]ᵀ · θ(ct−β)
//! + the image with A ⇄ B, α ⇄ β, (ℓ, m) exchanged and conjugated
//! ```
//!
//! which follows from the mode sum once the polarization sum and the angular
//! integral turn `Σ_j ê ê e^{−ik·R}` into `(4π/k³) F[sin kR/R]`. The resonant
//! part is `2P F^β F^α cos k0(α−β)/(αβ)` inside both light cones.


use crate::error::Result;
use crate::quadrature::{IntegralResult, QuadratureSpec};
use crate::scene::{CausalityRegion, Scene};
use crate::tensor::Tensor3;
use crate::terms::{Axis, EvalContext, Expr, Pair, Phase, Term, TermTable, Weight};

pub type Matrix3 = [[f64; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationPart {
    pub tensor: Matrix3,
    /// Frobenius norm of the discarded imaginary part.
    pub imag_residual: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor {
    pub components: Matrix3,
    pub nonresonant: CorrelationPart,
    pub resonant: Matrix3,
    pub region: CausalityRegion,
}

fn p_c(scene: &Scene) -> f64 {
    scene.c.mu2 / 3.0
}

/// Non-resonant correlation as a term table.
pub fn nonresonant_terms(scene: &Scene, t: f64) -> TermTable<Pair> {
    let region = scene.region(t);
    let pref = -p_c(scene) / std::f64::consts::PI;
    let weight = Weight::default().with_resolvent();
    let transient = Phase::t(-1.0, -1.0);

    let direct = Expr::sin(Phase::k(0.0, 1.0, 0.0))
        * (Expr::exp(Phase::k(-1.0, 0.0, 0.0)) - Expr::exp(Phase::k0(1.0, 0.0, 0.0) + transient))
        * pref;
    let image = Expr::sin(Phase::k(1.0, 0.0, 0.0))
        * (Expr::exp(Phase::k(0.0, 1.0, 0.0)) - Expr::exp(Phase::k0(0.0, -1.0, 0.0) - transient))
        * pref;

    let mut table = TermTable::new();
    table.push(Term::new("corr-nr", Axis::RealK, weight.clone(), direct.gated(region.th_beta)));
    table.push(Term::new("corr-nr-image", Axis::RealK, weight, image.gated(region.th_alpha)));
    table
}

/// Complex non-resonant tensor, optionally with an Abel factor `e^{−εk}`.
pub fn corr_nonresonant_complex(
    scene: &Scene,
    t: f64,
    spec: &QuadratureSpec,
    regulator: f64,
) -> Result<IntegralResult<Tensor3>> {
    let ctx = EvalContext { geom: &scene.geom, ct: t, k0: scene.k0(), spec, regulator };
    nonresonant_terms(scene, t).evaluate(&ctx)
}

pub fn corr_nonresonant(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<CorrelationPart> {
    let r = corr_nonresonant_complex(scene, t, spec, 0.0)?;
    Ok(CorrelationPart {
        tensor: r.value.re(),
        imag_residual: frobenius(&r.value.im()),
        error_estimate: r.error_estimate,
        converged: r.converged,
    })
}

/// Non-resonant correlation for a ground-state source, `−corr_nonresonant`.
pub fn corr_ground_state_reference(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<CorrelationPart> {
    let mut part = corr_nonresonant(scene, t, spec)?;
    part.tensor = part.tensor.map(|row| row.map(|x| -x));
    Ok(part)
}

pub fn corr_resonant_complex(scene: &Scene, t: f64) -> Tensor3 {
    let region = scene.region(t);
    let expr = (Expr::cos(Phase::k0(1.0, -1.0, 0.0)) * (2.0 * p_c(scene))).gated(region.th_alpha && region.th_beta);
    let mut table = TermTable::<Pair>::new();
    table.push(Term::new("corr-r", Axis::Closed, Weight::default(), expr));
    let spec = QuadratureSpec::default();
    let ctx = EvalContext { geom: &scene.geom, ct: t, k0: scene.k0(), spec: &spec, regulator: 0.0 };
    table.evaluate(&ctx).map(|r| r.value).unwrap_or_default()
}

pub fn corr_resonant(scene: &Scene, t: f64) -> Matrix3 {
    corr_resonant_complex(scene, t).re()
}

pub fn correlation(scene: &Scene, t: f64, spec: &QuadratureSpec) -> Result<CorrelationTensor> {
    let nonresonant = corr_nonresonant(scene, t, spec)?;
    let resonant = corr_resonant(scene, t);
    let mut components = [[0.0; 3]; 3];
    for l in 0..3 {
        for m in 0..3 {
            components[l][m] = nonresonant.tensor[l][m] + resonant[l][m];
        }
    }
    Ok(CorrelationTensor { components, nonresonant, resonant, region: scene.region(t) })
}

pub fn frobenius(m: &Matrix3) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}
