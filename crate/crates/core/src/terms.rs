//! Term tables.
//!
//! Every energy and correlation is reduced to a list of terms of the form
//!
//! ```text
//! ∫ dk  W(k) · Σ_j c_j · Π_v F^v[ e^{i(k x_jv + k0 y_jv) r_v} / r_v ] · e^{i(k x_jt + k0 y_jt) ct}
//! ```
//!
//! contracted over the dipole indices. A monomial carries one exponential per
//! distance `r_v ∈ {α, β, γ}` so that each `F` acts on a single closed-form
//! kernel. Step and sign factors are applied while a table is built, and
//! monomials with identical phases are merged exactly, so a term whose gates
//! are all closed or whose sign brackets cancel contributes an empty sum.
//!
//! On the real axis each monomial group with a common sign of the total
//! oscillation slope `X = Σ x_v r_v + x_t ct` is rotated onto the imaginary
//! axis in the direction where it decays.

use num_complex::Complex64;
use std::collections::HashMap;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::kernels::{exp_kernel_scaled_coefficients, triple_contract_coefficients};
use crate::potentials::Polarizability;
use crate::quadrature::{
    integrate_decaying, integrate_rotated, ComplexValue, IntegralResult, PolePrescription, PoleSet, QuadratureSpec,
};
use crate::scene::{SceneGeometry, Vec3, EPS_CONE};
use crate::tensor::Tensor3;

/// A term's label with its evaluated integral.
pub type LabelledValue<V> = (&'static str, IntegralResult<V>);

pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Exponent `i[Σ_v (k·k_v + k0·k0_v) r_v + (k·kt + k0·k0t) ct]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phase {
    pub k: [f64; 3],
    pub k0: [f64; 3],
    pub kt: f64,
    pub k0t: f64,
}

impl Phase {
    /// `k`-slopes on (α, β, γ).
    pub fn k(a: f64, b: f64, g: f64) -> Self {
        Phase { k: [a, b, g], ..Default::default() }
    }

    /// `k0`-slopes on (α, β, γ).
    pub fn k0(a: f64, b: f64, g: f64) -> Self {
        Phase { k0: [a, b, g], ..Default::default() }
    }

    /// `k`-slope `s` on variable `v` only.
    pub fn k_on(v: usize, s: f64) -> Self {
        let mut p = Phase::default();
        p.k[v] = s;
        p
    }

    /// `k0`-slope `s` on variable `v` only.
    pub fn k0_on(v: usize, s: f64) -> Self {
        let mut p = Phase::default();
        p.k0[v] = s;
        p
    }

    /// Time slopes: `e^{i(k·kt + k0·k0t) ct}`.
    pub fn t(kt: f64, k0t: f64) -> Self {
        Phase { kt, k0t, ..Default::default() }
    }

    /// Oscillation slope in `k` at the given distances.
    pub fn slope(&self, r: &[f64; 3], ct: f64) -> f64 {
        self.k[0] * r[0] + self.k[1] * r[1] + self.k[2] * r[2] + self.kt * ct
    }

    /// Moves the slopes of variable `v` to variable `perm[v]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let mut out = Phase { kt: self.kt, k0t: self.k0t, ..Default::default() };
        for v in 0..3 {
            out.k[perm[v]] = self.k[v];
            out.k0[perm[v]] = self.k0[v];
        }
        out
    }

    fn key(&self) -> [u64; 8] {
        let b = |x: f64| (x + 0.0).to_bits();
        [
            b(self.k[0]),
            b(self.k[1]),
            b(self.k[2]),
            b(self.k0[0]),
            b(self.k0[1]),
            b(self.k0[2]),
            b(self.kt),
            b(self.k0t),
        ]
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        Phase {
            k: [self.k[0] + o.k[0], self.k[1] + o.k[1], self.k[2] + o.k[2]],
            k0: [self.k0[0] + o.k0[0], self.k0[1] + o.k0[1], self.k0[2] + o.k0[2]],
            kt: self.kt + o.kt,
            k0t: self.k0t + o.k0t,
        }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase {
            k: self.k.map(|x| -x),
            k0: self.k0.map(|x| -x),
            kt: -self.kt,
            k0t: -self.k0t,
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        self + (-o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mono {
    pub coef: Complex64,
    pub phase: Phase,
}

/// A sum of monomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expr {
    pub monos: Vec<Mono>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::exp(Phase::default()) * c.into()
    }

    pub fn exp(phase: Phase) -> Self {
        Expr { monos: vec![Mono { coef: Complex64::new(1.0, 0.0), phase }] }
    }

    pub fn sin(phase: Phase) -> Self {
        (Self::exp(phase) - Self::exp(-phase)) * Complex64::new(0.0, -0.5)
    }

    pub fn cos(phase: Phase) -> Self {
        (Self::exp(phase) + Self::exp(-phase)) * 0.5
    }

    /// `self` if the gate is open, otherwise nothing.
    pub fn gated(self, open: bool) -> Self {
        if open {
            self
        } else {
            Expr::zero()
        }
    }

    /// Complex conjugate of every monomial, valid for real `k`.
    pub fn conj(&self) -> Self {
        Expr { monos: self.monos.iter().map(|m| Mono { coef: m.coef.conj(), phase: -m.phase }).collect() }
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Expr { monos: self.monos.iter().map(|m| Mono { coef: m.coef, phase: m.phase.permuted(perm) }).collect() }
    }

    /// Merges identical phases and drops exact zeros.
    pub fn merged(&self) -> Self {
        let mut index: HashMap<[u64; 8], usize> = HashMap::new();
        let mut out: Vec<Mono> = Vec::new();
        for m in &self.monos {
            match index.get(&m.phase.key()) {
                Some(&i) => out[i].coef += m.coef,
                None => {
                    index.insert(m.phase.key(), out.len());
                    out.push(*m);
                }
            }
        }
        out.retain(|m| m.coef != ZERO);
        Expr { monos: out }
    }

    pub fn is_zero(&self) -> bool {
        self.merged().monos.is_empty()
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, o: Expr) -> Expr {
        self.monos.extend(o.monos);
        self
    }
}

impl AddAssign for Expr {
    fn add_assign(&mut self, o: Expr) {
        self.monos.extend(o.monos);
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        self + (-o)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self * -1.0
    }
}

impl Mul<Complex64> for Expr {
    type Output = Expr;
    fn mul(mut self, c: Complex64) -> Expr {
        for m in &mut self.monos {
            m.coef *= c;
        }
        self
    }
}

impl Mul<f64> for Expr {
    type Output = Expr;
    fn mul(self, c: f64) -> Expr {
        self * Complex64::new(c, 0.0)
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        let mut monos = Vec::with_capacity(self.monos.len() * o.monos.len());
        for a in &self.monos {
            for b in &o.monos {
                monos.push(Mono { coef: a.coef * b.coef, phase: a.phase + b.phase });
            }
        }
        Expr { monos }
    }
}

/// Integration variable of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `∫₀^∞ dk` along the real axis.
    RealK,
    /// `∫₀^∞ du` with `k = iu`.
    ImagU,
    /// No integral; monomials are evaluated at `k = 0`.
    Closed,
}

/// `Π α_X(k) · [1/(k0 + k)] · u^power`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Weight {
    pub polarizabilities: Vec<Polarizability>,
    pub resolvent: bool,
    pub power: i32,
}

impl Weight {
    pub fn of(polarizabilities: &[Polarizability]) -> Self {
        Weight { polarizabilities: polarizabilities.to_vec(), ..Default::default() }
    }

    pub fn with_resolvent(mut self) -> Self {
        self.resolvent = true;
        self
    }

    pub fn with_power(mut self, power: i32) -> Self {
        self.power = power;
        self
    }

    fn at(&self, k: Complex64, k0: f64, linewidth: f64) -> Complex64 {
        let mut w = Complex64::new(1.0, 0.0);
        for p in &self.polarizabilities {
            w *= p.at(k, linewidth);
        }
        if self.resolvent {
            w /= k0 + k;
        }
        w
    }

    fn poles(&self, k0: f64, linewidth: f64) -> PoleSet {
        let mut poles: Vec<Complex64> = self.polarizabilities.iter().flat_map(|p| p.poles(linewidth)).collect();
        if self.resolvent {
            poles.push(Complex64::new(-k0, 0.0));
        }
        PoleSet::new(poles)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: &'static str,
    pub axis: Axis,
    pub weight: Weight,
    pub expr: Expr,
}

impl Term {
    pub fn new(label: &'static str, axis: Axis, weight: Weight, expr: Expr) -> Self {
        Term { label, axis, weight, expr }
    }
}

/// How the three `F` tensors of a monomial are combined.
pub trait Contraction {
    type Value: ComplexValue;
    /// Variables that carry a kernel.
    const VARS: &'static [usize];
    /// `coeffs[v] = (a, b)` of `a δ + b r̂r̂` for variable `v`.
    fn contract(coeffs: &[(Complex64, Complex64); 3], hats: &[Vec3; 3]) -> Self::Value;
}

/// `Σ F^γ_{ℓm} F^β_{ℓn} F^α_{mn}`.
#[derive(Debug, Clone, Copy)]
pub struct Triple;

impl Contraction for Triple {
    type Value = Complex64;
    const VARS: &'static [usize] = &[ALPHA, BETA, GAMMA];
    fn contract(c: &[(Complex64, Complex64); 3], n: &[Vec3; 3]) -> Complex64 {
        triple_contract_coefficients(
            (c[GAMMA].0, c[GAMMA].1, n[GAMMA]),
            (c[BETA].0, c[BETA].1, n[BETA]),
            (c[ALPHA].0, c[ALPHA].1, n[ALPHA]),
        )
    }
}

/// `(F^β F^αᵀ)_{ℓm}`; the γ variable is absent.
#[derive(Debug, Clone, Copy)]
pub struct Pair;

impl Contraction for Pair {
    type Value = Tensor3;
    const VARS: &'static [usize] = &[ALPHA, BETA];
    fn contract(c: &[(Complex64, Complex64); 3], n: &[Vec3; 3]) -> Tensor3 {
        let tb = Tensor3::isotropic_plus_dyad(c[BETA].0, c[BETA].1, n[BETA]);
        let ta = Tensor3::isotropic_plus_dyad(c[ALPHA].0, c[ALPHA].1, n[ALPHA]);
        tb.matmul(&ta.transpose())
    }
}

/// Everything a table needs besides its terms.
#[derive(Debug, Clone, Copy)]
pub struct EvalContext<'a> {
    pub geom: &'a SceneGeometry,
    pub ct: f64,
    pub k0: f64,
    pub spec: &'a QuadratureSpec,
    /// Abel factor `e^{−εk}` on real-axis terms; zero disables it.
    pub regulator: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermTable<C> {
    pub terms: Vec<Term>,
    _contraction: PhantomData<C>,
}

impl<C> Default for TermTable<C> {
    fn default() -> Self {
        TermTable { terms: Vec::new(), _contraction: PhantomData }
    }
}

impl<C: Contraction> TermTable<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Term) {
        self.terms.push(term);
    }

    pub fn extend(&mut self, other: TermTable<C>) {
        self.terms.extend(other.terms);
    }

    /// True when every term has an empty merged monomial list.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.iter().all(|t| t.expr.is_zero())
    }

    pub fn evaluate(&self, ctx: &EvalContext) -> Result<IntegralResult<C::Value>> {
        let mut acc = IntegralResult::zero();
        for term in &self.terms {
            acc = acc.combine(evaluate_term::<C>(term, ctx)?);
        }
        Ok(acc)
    }

    /// Per-term values, for diagnostics and tests.
    pub fn evaluate_terms(&self, ctx: &EvalContext) -> Result<Vec<LabelledValue<C::Value>>> {
        self.terms.iter().map(|t| Ok((t.label, evaluate_term::<C>(t, ctx)?))).collect()
    }
}

struct Frame {
    r: [f64; 3],
    hats: [Vec3; 3],
    ct: f64,
    k0: f64,
}

impl Frame {
    fn new(ctx: &EvalContext) -> Self {
        let g = ctx.geom;
        Frame {
            r: [g.alpha, g.beta, g.gamma],
            hats: [g.alpha_hat, g.beta_hat, g.gamma_hat],
            ct: ctx.ct,
            k0: ctx.k0,
        }
    }

    #[inline]
    fn mono<C: Contraction>(&self, m: &Mono, k: Complex64) -> C::Value {
        let mut coeffs = [(ZERO, ZERO); 3];
        let p = &m.phase;
        let mut exponent = I * (k * p.kt + self.k0 * p.k0t) * self.ct;
        for &v in C::VARS {
            let z = I * (k * p.k[v] + self.k0 * p.k0[v]);
            coeffs[v] = exp_kernel_scaled_coefficients(z, self.r[v]);
            exponent += z * self.r[v];
        }
        C::contract(&coeffs, &self.hats) * (m.coef * exponent.exp())
    }

    fn sum<C: Contraction>(&self, monos: &[Mono], k: Complex64) -> C::Value {
        monos.iter().fold(C::Value::default(), |acc, m| acc + self.mono::<C>(m, k))
    }
}

fn checked_slope(m: &Mono, frame: &Frame) -> Result<f64> {
    let x = m.phase.slope(&frame.r, frame.ct);
    if x.abs() < EPS_CONE {
        return Err(Error::OnLightCone { argument: x });
    }
    Ok(x)
}

fn evaluate_term<C: Contraction>(term: &Term, ctx: &EvalContext) -> Result<IntegralResult<C::Value>> {
    let expr = term.expr.merged();
    if expr.monos.is_empty() {
        return Ok(IntegralResult::zero());
    }
    debug_assert!(
        C::VARS.len() == 3 || expr.monos.iter().all(|m| m.phase.k[GAMMA] == 0.0 && m.phase.k0[GAMMA] == 0.0),
        "pair terms must not depend on gamma"
    );
    let frame = Frame::new(ctx);
    let spec = ctx.spec;
    match term.axis {
        Axis::Closed => {
            debug_assert!(term.weight.polarizabilities.is_empty() && !term.weight.resolvent);
            let value = frame.sum::<C>(&expr.monos, ZERO);
            Ok(IntegralResult { value, error_estimate: 0.0, evaluations: 1, converged: true })
        }
        Axis::ImagU => {
            let mut decay = f64::INFINITY;
            for m in &expr.monos {
                let x = checked_slope(m, &frame)?;
                if x < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "imaginary-axis term '{}' grows like e^{{{}u}}",
                        term.label, -x
                    )));
                }
                decay = decay.min(x);
            }
            let w = &term.weight;
            let f = |u: f64| {
                let k = Complex64::new(0.0, u);
                let scale = w.at(k, ctx.k0, 0.0) * u.powi(w.power);
                frame.sum::<C>(&expr.monos, k) * scale
            };
            let r = integrate_decaying(f, decay, spec);
            Ok(r)
        }
        Axis::RealK => {
            let linewidth = match spec.prescription {
                PolePrescription::Linewidth(g) => g,
                _ => 0.0,
            };
            let poles = term.weight.poles(ctx.k0, linewidth);
            let mut acc = IntegralResult::zero();
            for sign in [1.0, -1.0] {
                let mut group = Vec::new();
                let mut decay = f64::INFINITY;
                for m in &expr.monos {
                    let x = checked_slope(m, &frame)?;
                    if x * sign > 0.0 {
                        group.push(*m);
                        decay = decay.min(x.abs());
                    }
                }
                if group.is_empty() {
                    continue;
                }
                let w = &term.weight;
                let g = |k: Complex64| {
                    let mut scale = w.at(k, ctx.k0, linewidth);
                    if ctx.regulator > 0.0 {
                        scale *= (-ctx.regulator * k).exp();
                    }
                    frame.sum::<C>(&group, k) * scale
                };
                acc = acc.combine(integrate_rotated(g, sign, decay, &poles, spec)?);
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{f_apply, triple_contract, ScalarKernel};
    use crate::scene::triangle_positions;

    fn geom() -> SceneGeometry {
        let (a, b, c) = triangle_positions(1.3, 1.1, 0.9);
        SceneGeometry::from_positions(a, b, c).unwrap()
    }

    #[test]
    fn trig_identities_merge_exactly() {
        // sin(x+y) − sin x cos y − cos x sin y = 0
        let (x, y) = (Phase::k(1.0, 0.0, 0.0), Phase::k(0.0, 1.0, 0.0));
        let e = Expr::sin(x + y) - Expr::sin(x) * Expr::cos(y) - Expr::cos(x) * Expr::sin(y);
        assert!(e.is_zero());
        let e = Expr::sin(x) * 2.0 - Expr::sin(x) - Expr::sin(x);
        assert!(e.is_zero());
    }

    #[test]
    fn closed_term_matches_direct_contraction() {
        let g = geom();
        let k0 = 1.4;
        let expr = Expr::exp(Phase::k0(1.0, -1.0, 0.0)) * Expr::cos(Phase::k0(0.0, 0.0, 1.0));
        let mut table = TermTable::<Triple>::new();
        table.push(Term::new("closed", Axis::Closed, Weight::default(), expr));
        let spec = QuadratureSpec::default();
        let ctx = EvalContext { geom: &g, ct: 0.0, k0, spec: &spec, regulator: 0.0 };
        let v = table.evaluate(&ctx).unwrap().value;

        let ta = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, k0)), g.separation(ALPHA)).unwrap();
        let tb = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, -k0)), g.separation(BETA)).unwrap();
        let tg = f_apply(&ScalarKernel::CosOverR(k0), g.separation(GAMMA)).unwrap();
        let direct = triple_contract(&tg.components, &tb.components, &ta.components);
        assert!((v - direct).norm() < 1e-12 * direct.norm(), "{v} vs {direct}");
    }

    #[test]
    fn damped_term_matches_quadrature_of_direct_contraction() {
        // ∫ du α(iu)² F[e^{−uα}/α] F[e^{−uβ}/β] F[e^{−uγ}/γ]
        let g = geom();
        let p = Polarizability::new(1.2, 0.7);
        let expr = Expr::exp(Phase::k(1.0, 1.0, 1.0));
        let mut table = TermTable::<Triple>::new();
        table.push(Term::new("u", Axis::ImagU, Weight::of(&[p, p]), expr));
        let spec = QuadratureSpec::default();
        let ctx = EvalContext { geom: &g, ct: 0.0, k0: 1.0, spec: &spec, regulator: 0.0 };
        let v = table.evaluate(&ctx).unwrap().value;

        let n = 40_000;
        let h = 60.0 / n as f64;
        let f = |u: f64| {
            let z = Complex64::new(-u, 0.0);
            let t = |v: usize| f_apply(&ScalarKernel::ExpComplex(z), g.separation(v)).unwrap().components;
            triple_contract(&t(GAMMA), &t(BETA), &t(ALPHA)) * p.imag_axis(u).powi(2)
        };
        let mut simpson = f(0.0) + f(60.0);
        for i in 1..n {
            simpson += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        simpson *= h / 3.0;
        assert!((v - simpson).norm() < 1e-8 * simpson.norm(), "{v} vs {simpson}");
    }

    #[test]
    fn light_cone_is_refused() {
        let g = geom();
        let expr = Expr::exp(Phase::k(1.0, 0.0, 0.0) + Phase::t(-1.0, 0.0));
        let mut table = TermTable::<Triple>::new();
        table.push(Term::new("cone", Axis::RealK, Weight::of(&[Polarizability::new(1.0, 1.0)]), expr));
        let spec = QuadratureSpec::default();
        let ctx = EvalContext { geom: &g, ct: g.alpha, k0: 1.0, spec: &spec, regulator: 0.0 };
        assert!(matches!(table.evaluate(&ctx), Err(Error::OnLightCone { .. })));
    }

    #[test]
    fn permutation_moves_slopes() {
        let p = Phase::k(1.0, 2.0, 3.0).permuted([1, 0, 2]);
        assert_eq!(p.k, [2.0, 1.0, 3.0]);
    }
}
