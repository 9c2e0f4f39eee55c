//! One-dimensional integral engines.
//!
//! * [`integrate_damped`]: `∫₀^∞ g(u) e^{−us} du` for smooth, polynomially
//!   bounded `g`.
//! * [`integrate_oscillatory_pv`]: semi-infinite oscillatory integrals on the
//!   real axis, with Cauchy principal values at simple real poles.
//! * [`integrate_rotated`]: the same real-axis integrals for analytic
//!   integrands `Q(k) e^{ikX}`, evaluated by turning the contour onto the
//!   imaginary axis. This is the only route that makes sense for the
//!   polynomially growing integrands produced by the dipole operators, whose
//!   real-axis integrals exist only as Abel limits.

mod contour;
mod damped;
pub(crate) mod gk;
mod oscillatory;

pub use contour::{cluster_residue, integrate_rotated, PoleSet};
pub use damped::integrate_damped;
pub(crate) use damped::integrate_decaying;
pub use oscillatory::{integrate_oscillatory_pv, OscillatoryIntegrand};

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

use crate::tensor::Tensor3;

/// Values the adaptive integrators can accumulate.
pub trait QuadValue: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

/// Complex-valued [`QuadValue`]s, needed wherever contours leave the real axis.
pub trait ComplexValue: QuadValue + Mul<Complex64, Output = Self> {}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
impl ComplexValue for Complex64 {}

impl QuadValue for Tensor3 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}
impl ComplexValue for Tensor3 {}

/// How simple real-axis poles of polarizabilities are treated.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PolePrescription {
    /// Each exponential piece `e^{ikX}` is continued into the half plane where
    /// it decays, with poles displaced to the opposite side; no pole terms.
    #[default]
    Rotation,
    /// Cauchy principal value on the real axis.
    PrincipalValue,
    /// Finite linewidth: `k_t² − k²` becomes `k_t² − k² − iΓk`.
    Linewidth(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Number of iterated averagings applied to oscillatory partial sums.
    pub acceleration_order: usize,
    /// Half-width of the symmetric excision around each principal-value pole.
    pub pv_window: f64,
    /// The damped engine integrates adaptively up to `u_cutoff_factor / s`.
    pub u_cutoff_factor: f64,
    pub prescription: PolePrescription,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 400,
            acceleration_order: 8,
            pv_window: 1e-4,
            u_cutoff_factor: 40.0,
            prescription: PolePrescription::Rotation,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), QuadError> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.max_subdivisions > 0
            && self.pv_window > 0.0
            && self.u_cutoff_factor > 0.0;
        if !ok {
            return Err(QuadError::InvalidSpec(format!("{self:?}")));
        }
        if let PolePrescription::Linewidth(g) = self.prescription {
            if !(g > 0.0) {
                return Err(QuadError::InvalidSpec(format!("linewidth must be positive, got {g}")));
            }
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_prescription(mut self, p: PolePrescription) -> Self {
        self.prescription = p;
        self
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult<V = Complex64> {
    pub value: V,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<V: QuadValue> IntegralResult<V> {
    pub fn zero() -> Self {
        IntegralResult { value: V::default(), error_estimate: 0.0, evaluations: 0, converged: true }
    }

    /// Sum of two independent results.
    pub fn combine(self, other: Self) -> Self {
        IntegralResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> IntegralResult<W> {
        IntegralResult {
            value: f(self.value),
            error_estimate: self.error_estimate,
            evaluations: self.evaluations,
            converged: self.converged,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("pole at {pole} is not strictly inside the integration range")]
    PoleOnBoundary { pole: f64 },
    #[error("poles at {first} and {second} are closer than twice the excision window")]
    OverlappingPoles { first: f64, second: f64 },
    #[error("no convergence: best estimate {value} with error {error:e}")]
    NotConverged { value: Complex64, error: f64 },
    #[error("non-finite integrand value at {at}")]
    NonFinite { at: f64 },
}
