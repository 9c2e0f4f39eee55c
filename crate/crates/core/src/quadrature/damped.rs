use super::gk::adaptive;
use super::{IntegralResult, QuadValue, QuadratureSpec};

/// `∫₀^∞ g(u) e^{−u s} du`.
///
/// Adaptive panels cover `[0, u_cutoff_factor / s]`; beyond that, panels of
/// doubling width are added until one contributes less than a tenth of the
/// tolerance. If the subdivision budget runs out, the best estimate is
/// returned with `converged = false`.
pub fn integrate_damped<V: QuadValue, G: Fn(f64) -> V>(g: G, s: f64, spec: &QuadratureSpec) -> IntegralResult<V> {
    assert!(s > 0.0 && s.is_finite(), "decay scale must be positive, got {s}");
    integrate_decaying(|u| g(u) * (-u * s).exp(), s, spec)
}

/// `∫₀^∞ f(u) du` for an integrand that already carries its decay `e^{−us}`.
pub(crate) fn integrate_decaying<V: QuadValue, F: Fn(f64) -> V>(f: F, s: f64, spec: &QuadratureSpec) -> IntegralResult<V> {
    let cutoff = spec.u_cutoff_factor / s;
    let breaks: Vec<f64> = [0.0, 0.025, 0.1, 0.25, 0.5, 1.0].iter().map(|x| x * cutoff).collect();
    let head = adaptive(&f, &breaks, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
    let mut value = head.value;
    let mut error = head.error;
    let mut evaluations = head.evaluations;
    let mut converged = head.converged;

    let mut lo = cutoff;
    for _ in 0..64 {
        let hi = 2.0 * lo;
        let panel = adaptive(&f, &[lo, hi], spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
        value = value + panel.value;
        error += panel.error;
        evaluations += panel.evaluations;
        converged &= panel.converged;
        let target = spec.target(value.magnitude());
        if panel.value.magnitude() + panel.error < 0.1 * target {
            return IntegralResult { value, error_estimate: error, evaluations, converged };
        }
        lo = hi;
    }
    IntegralResult { value, error_estimate: error, evaluations, converged: false }
}
