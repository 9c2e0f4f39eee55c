use num_complex::Complex64;

use super::damped::integrate_decaying;
use super::{ComplexValue, IntegralResult, PolePrescription, QuadError, QuadratureSpec};

const RESIDUE_NODES: usize = 128;
/// Poles with `|Im| ≤ ON_AXIS` are treated as lying on the real axis.
const ON_AXIS: f64 = 1e-12;

/// Simple poles of an integrand, located in the complex `k` plane.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleSet {
    pub poles: Vec<Complex64>,
}

impl PoleSet {
    pub fn new(poles: impl IntoIterator<Item = Complex64>) -> Self {
        PoleSet { poles: poles.into_iter().collect() }
    }

    pub fn real(poles: impl IntoIterator<Item = f64>) -> Self {
        Self::new(poles.into_iter().map(|p| Complex64::new(p, 0.0)))
    }
}

/// Sum of the residues of `f` inside the circle `|z − center| = radius`,
/// by the trapezoid rule on the circle.
pub fn cluster_residue<V: ComplexValue, F: Fn(Complex64) -> V>(f: &F, center: Complex64, radius: f64) -> V {
    let n = RESIDUE_NODES;
    let mut acc = V::default();
    for j in 0..n {
        let e = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
        acc = acc + f(center + e * radius) * e;
    }
    acc * (radius / n as f64)
}

/// `∫₀^∞ g(k) dk` for `g` analytic in the closed quadrant between the positive
/// real axis and `sign · i∞`, apart from the listed poles, and decaying like
/// `e^{−|k| decay}` along the rotated ray `k = sign · i u`.
///
/// `sign = +1` rotates into the upper half plane, `−1` into the lower. Pole
/// terms are added according to `spec.prescription`:
///
/// * `Rotation`: none.
/// * `PrincipalValue`: `sign · πi · Res` for poles on the positive real axis.
/// * `Linewidth`: `sign · 2πi · Res` for poles strictly inside the quadrant.
pub fn integrate_rotated<V: ComplexValue, G: Fn(Complex64) -> V>(
    g: G,
    sign: f64,
    decay: f64,
    poles: &PoleSet,
    spec: &QuadratureSpec,
) -> Result<IntegralResult<V>, QuadError> {
    spec.validate()?;
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(QuadError::InvalidSpec(format!("rotated integral needs a positive decay, got {decay}")));
    }
    let s = if sign >= 0.0 { 1.0 } else { -1.0 };
    let jac = Complex64::new(0.0, s);
    let ray = integrate_decaying(|u| g(jac * u) * jac, decay, spec);
    let poles_term = pole_terms(&g, s, poles, spec.prescription);
    Ok(IntegralResult { value: ray.value + poles_term, ..ray })
}

fn pole_terms<V: ComplexValue, G: Fn(Complex64) -> V>(g: &G, s: f64, poles: &PoleSet, p: PolePrescription) -> V {
    let weight = match p {
        PolePrescription::Rotation => return V::default(),
        PolePrescription::PrincipalValue => std::f64::consts::PI,
        PolePrescription::Linewidth(_) => 2.0 * std::f64::consts::PI,
    };
    let picked: Vec<Complex64> = poles
        .poles
        .iter()
        .copied()
        .filter(|z| match p {
            PolePrescription::PrincipalValue => z.im.abs() <= ON_AXIS && z.re > 0.0,
            _ => z.re > 0.0 && z.im * s > ON_AXIS,
        })
        .collect();
    let mut acc = V::default();
    for (center, radius) in clusters(&picked, &poles.poles) {
        acc = acc + cluster_residue(g, center, radius);
    }
    acc * Complex64::new(0.0, s * weight)
}

/// Groups nearby poles and assigns each group a circle that keeps a clear
/// margin from every other pole and from the origin.
fn clusters(picked: &[Complex64], all: &[Complex64]) -> Vec<(Complex64, f64)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in picked {
        match groups.iter_mut().find(|g| g.iter().any(|w| (w - z).norm() < 1e-6 * (1.0 + z.norm()))) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let center = g.iter().sum::<Complex64>() / g.len() as f64;
            let spread = g.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
            let clearance = all
                .iter()
                .filter(|z| !g.contains(z))
                .map(|z| (z - center).norm())
                .fold(center.norm(), f64::min);
            (center, (0.5 * clearance).max(2.0 * spread).max(1e-9))
        })
        .collect()
}
