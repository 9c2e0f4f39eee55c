use num_complex::Complex64;

use crate::quadrature::IntegralResult;
use crate::scene::CausalityRegion;

/// Which energy a breakdown describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyKind {
    /// `ΔE_C(A, B)`: `total = de_nr + de_r`.
    Pair,
    /// `ΔE(A, B, C)`: `total = de_i + de_ii + de_r_sym`.
    Symmetrized,
}

/// Parts of one energy evaluation. Parts that do not belong to `kind` are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub kind: EnergyKind,
    pub de_nr: f64,
    pub de_r: f64,
    pub de_i: f64,
    pub de_ii: f64,
    pub de_r_sym: f64,
    pub total: f64,
    /// Magnitude of the imaginary part dropped when taking the real part.
    pub imag_residual: f64,
    pub region: CausalityRegion,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl EnergyBreakdown {
    pub(crate) fn pair(nr: IntegralResult<Complex64>, r: f64, region: CausalityRegion) -> Self {
        let de_nr = nr.value.re;
        EnergyBreakdown {
            kind: EnergyKind::Pair,
            de_nr,
            de_r: r,
            de_i: 0.0,
            de_ii: 0.0,
            de_r_sym: 0.0,
            total: de_nr + r,
            imag_residual: nr.value.im.abs(),
            region,
            error_estimate: nr.error_estimate,
            evaluations: nr.evaluations,
            converged: nr.converged,
        }
    }

    pub(crate) fn symmetrized(
        i: IntegralResult<Complex64>,
        ii: IntegralResult<Complex64>,
        r: f64,
        region: CausalityRegion,
    ) -> Self {
        let (de_i, de_ii) = (i.value.re, ii.value.re);
        EnergyBreakdown {
            kind: EnergyKind::Symmetrized,
            de_nr: 0.0,
            de_r: 0.0,
            de_i,
            de_ii,
            de_r_sym: r,
            total: de_i + de_ii + r,
            imag_residual: (i.value.im + ii.value.im).abs(),
            region,
            error_estimate: i.error_estimate + ii.error_estimate,
            evaluations: i.evaluations + ii.evaluations,
            converged: i.converged && ii.converged,
        }
    }

    /// `imag_residual ≤ 1e−6 · max(1, |total|)`.
    pub fn is_real(&self) -> bool {
        self.imag_residual <= 1e-6 * self.total.abs().max(1.0)
    }
}
