//! Globally adaptive Gauss–Kronrod (7/15) quadrature over vector-like values.

// Nodes and weights as tabulated, digits beyond f64 included.
#![allow(clippy::excessive_precision)]

use super::QuadValue;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 15-point Kronrod panel: `(kronrod, |kronrod − gauss|)`.
pub(crate) fn gk15<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron = kron + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let kron = kron * h;
    let gauss = gauss * h;
    let err = (kron - gauss).magnitude();
    (kron, err)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Adaptive<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Adaptive integration over `[a, b]` starting from the given breakpoints.
///
/// `breaks` must be sorted and include both ends.
pub(crate) fn adaptive<V: QuadValue, F: Fn(f64) -> V>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Adaptive<V> {
    struct Panel<V> {
        a: f64,
        b: f64,
        value: V,
        err: f64,
    }
    let mut panels: Vec<Panel<V>> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (value, err) = gk15(f, w[0], w[1]);
            Panel { a: w[0], b: w[1], value, err }
        })
        .collect();
    let mut evaluations = 15 * panels.len();
    let total = |ps: &[Panel<V>]| -> (V, f64) {
        ps.iter().fold((V::default(), 0.0), |(v, e), p| (v + p.value, e + p.err))
    };
    loop {
        let (value, err) = total(&panels);
        let target = abs_tol.max(rel_tol * value.magnitude());
        if err <= target {
            return Adaptive { value, error: err, evaluations, converged: true };
        }
        if panels.len() >= max_subdivisions {
            return Adaptive { value, error: err, evaluations, converged: false };
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, p)| if p.err > best.1 { (i, p.err) } else { best });
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            // panel below floating-point resolution
            panels.push(p);
            let (value, err) = total(&panels);
            return Adaptive { value, error: err, evaluations, converged: false };
        }
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        evaluations += 30;
        panels.push(Panel { a: p.a, b: mid, value: v1, err: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r: Adaptive<f64> = adaptive(&|x: f64| x.powi(9) - 3.0 * x * x, &[0.0, 2.0], 1e-14, 1e-14, 50);
        assert!((r.value - (102.4 - 8.0)).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn sqrt_singularity_converges() {
        let r: Adaptive<f64> = adaptive(&|x: f64| x.sqrt(), &[0.0, 1.0], 1e-12, 1e-12, 200);
        assert!(r.converged);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11);
    }
}
