use super::gk::{adaptive, gk15};
use super::{IntegralResult, QuadError, QuadValue, QuadratureSpec};

const MAX_TAIL_PANELS: usize = 20_000;

/// Description of a semi-infinite oscillatory integrand on `[lower, ∞)`.
#[derive(Debug, Clone, Default)]
pub struct OscillatoryIntegrand {
    pub lower: f64,
    /// Frequencies `x` of the `e^{±ikx}` factors present in the integrand.
    pub frequencies: Vec<f64>,
    /// Simple real poles, taken as principal values.
    pub poles: Vec<f64>,
}

/// `PV ∫_lower^∞ f(k) dk`.
///
/// The range beyond the last pole is cut into half periods of the fastest
/// frequency and the partial sums are accelerated by repeated averaging.
/// Each pole is excised symmetrically with half-width `spec.pv_window` and the
/// excised piece is integrated as `∫₀^w [f(p+s) + f(p−s)] ds`. When every
/// frequency vanishes the tail is mapped onto `(0, 1]` by `k = K/t` and the
/// integrand must then decay faster than `1/k`.
pub fn integrate_oscillatory_pv<V: QuadValue, F: Fn(f64) -> V>(
    f: F,
    shape: &OscillatoryIntegrand,
    spec: &QuadratureSpec,
) -> Result<IntegralResult<V>, QuadError> {
    spec.validate()?;
    let w = spec.pv_window;
    let mut poles = shape.poles.clone();
    poles.sort_by(f64::total_cmp);
    for &p in &poles {
        if !(p - w > shape.lower) {
            return Err(QuadError::PoleOnBoundary { pole: p });
        }
    }
    for pair in poles.windows(2) {
        if pair[1] - pair[0] <= 2.0 * w {
            return Err(QuadError::OverlappingPoles { first: pair[0], second: pair[1] });
        }
    }

    let xmax = shape.frequencies.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let half_period = if xmax > 0.0 { std::f64::consts::PI / xmax } else { 1.0 };
    let last = poles.last().map_or(shape.lower, |p| p + w);
    let steps = ((last - shape.lower) / half_period).floor() + 1.0;
    let head_end = shape.lower + steps * half_period;

    let mut out = IntegralResult::<V>::zero();
    let mut push = |r: super::gk::Adaptive<V>| {
        out = out.combine(IntegralResult {
            value: r.value,
            error_estimate: r.error,
            evaluations: r.evaluations,
            converged: r.converged,
        })
    };

    // regular pieces between excisions
    let mut edges = vec![shape.lower];
    for &p in &poles {
        edges.push(p - w);
        edges.push(p + w);
    }
    edges.push(head_end);
    for seg in edges.chunks(2) {
        let (a, b) = (seg[0], seg[1]);
        let n = (((b - a) / half_period).ceil() as usize).clamp(1, 4096);
        let breaks: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        push(adaptive(&f, &breaks, spec.abs_tol, spec.rel_tol, spec.max_subdivisions.max(2 * n)));
    }
    for &p in &poles {
        let folded = |s: f64| f(p + s) + f(p - s);
        // the folded integrand is smooth; refining towards s = 0 only
        // amplifies cancellation, so a single panel is used
        let (value, error) = gk15(&folded, 0.0, w);
        push(super::gk::Adaptive { value, error, evaluations: 30, converged: value.magnitude().is_finite() });
    }

    if xmax == 0.0 {
        let k = head_end.max(1.0);
        let mapped = |t: f64| if t == 0.0 { V::default() } else { f(k / t) * (k / (t * t)) };
        push(adaptive(&mapped, &[0.0, 0.5, 1.0], spec.abs_tol, spec.rel_tol, spec.max_subdivisions));
        return Ok(out);
    }

    let tail = accelerated_tail(&f, head_end, half_period, spec);
    Ok(out.combine(tail))
}

fn accelerated_tail<V: QuadValue, F: Fn(f64) -> V>(
    f: &F,
    start: f64,
    h: f64,
    spec: &QuadratureSpec,
) -> IntegralResult<V> {
    let m = spec.acceleration_order;
    let weights = binomial_weights(m);
    let mut partial: Vec<V> = Vec::new();
    let mut sum = V::default();
    let mut quad_err = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    let mut previous: Option<V> = None;
    for j in 0..MAX_TAIL_PANELS {
        let a = start + j as f64 * h;
        let r = adaptive(f, &[a, a + h], 0.1 * spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
        sum = sum + r.value;
        quad_err += r.error;
        evaluations += r.evaluations;
        converged &= r.converged;
        partial.push(sum);
        if partial.len() <= m {
            continue;
        }
        let n = partial.len() - 1;
        let avg = weights.iter().enumerate().fold(V::default(), |acc, (i, &c)| acc + partial[n - i] * c);
        if let Some(prev) = previous {
            let diff = (avg - prev).magnitude();
            if j >= 2 * m + 4 && diff <= spec.target(avg.magnitude()) {
                return IntegralResult { value: avg, error_estimate: diff + quad_err, evaluations, converged };
            }
        }
        previous = Some(avg);
    }
    let value = previous.unwrap_or(sum);
    IntegralResult { value, error_estimate: f64::INFINITY, evaluations, converged: false }
}

fn binomial_weights(m: usize) -> Vec<f64> {
    let mut w = vec![1.0];
    for _ in 0..m {
        let mut next = vec![0.0; w.len() + 1];
        for (i, c) in w.iter().enumerate() {
            next[i] += 0.5 * c;
            next[i + 1] += 0.5 * c;
        }
        w = next;
    }
    w
}
