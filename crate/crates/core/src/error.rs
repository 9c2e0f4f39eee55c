use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("atom roles: {0}")]
    Role(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("kernel evaluated at zero separation")]
    SingularKernel,
    #[error("ground-state transition k={k_trans} is within {delta_min} of the excited transition k0={k0}")]
    Detuning { k_trans: f64, k0: f64, delta_min: f64 },
    #[error("evaluation on a light cone: oscillation argument {argument:e} is below the cone tolerance")]
    OnLightCone { argument: f64 },
    #[error("outside the validity region: {0}")]
    Region(String),
    #[error(transparent)]
    Quadrature(#[from] crate::quadrature::QuadError),
    #[error("mode budget exceeded: {required} modes needed, budget is {budget}")]
    ModeBudget { required: u64, budget: u64 },
}
