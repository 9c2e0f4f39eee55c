//! Brute-force references: a periodic-box mode sum for the correlation, a
//! finite-difference `F` operator and a direct stationary three-body
//! quadrature. None of them calls into the production evaluation paths.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::ScalarKernel;
use crate::scene::{Scene, Vec3};
use crate::tensor::Tensor3;

/// Periodic box of side `l` with modes `|k| ≤ k_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSpec {
    pub l: f64,
    pub k_max: f64,
    /// Abel factor `e^{−εk}` on every mode.
    pub regulator: f64,
    /// Largest number of wavevectors the sum may visit.
    pub mode_budget: u64,
    /// Gram–Schmidt seed for the polarization basis.
    pub seed: Vec3,
}

impl BoxSpec {
    pub fn new(l: f64, k_max: f64) -> Self {
        BoxSpec { l, k_max, regulator: 0.0, mode_budget: 50_000_000, seed: [0.3, 0.5, 0.8] }
    }

    pub fn with_regulator(mut self, eps: f64) -> Self {
        self.regulator = eps;
        self
    }

    pub fn with_seed(mut self, seed: Vec3) -> Self {
        self.seed = seed;
        self
    }

    /// Wavevectors inside the cutoff sphere, counted exactly.
    pub fn mode_count(&self) -> u64 {
        let n = self.n_max();
        let r2 = (self.k_max * self.l / (2.0 * std::f64::consts::PI)).powi(2);
        let mut count = 0u64;
        for x in -n..=n {
            for y in -n..=n {
                let rest = r2 - (x * x + y * y) as f64;
                if rest >= 0.0 {
                    count += 2 * rest.sqrt().floor() as u64 + 1;
                }
            }
        }
        count
    }

    fn n_max(&self) -> i64 {
        (self.k_max * self.l / (2.0 * std::f64::consts::PI)).floor() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxCorrelation {
    pub nonresonant: Tensor3,
    pub resonant: Tensor3,
    pub total: Tensor3,
    pub modes: u64,
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: Vec3) -> Vec3 {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Two unit polarizations orthogonal to `k_hat` and to each other.
pub fn polarization_basis(k_hat: Vec3, seed: Vec3) -> [Vec3; 2] {
    let project = |s: Vec3| {
        let d = dot(s, k_hat);
        [s[0] - d * k_hat[0], s[1] - d * k_hat[1], s[2] - d * k_hat[2]]
    };
    let mut e1 = project(seed);
    if dot(e1, e1) < 1e-16 * dot(seed, seed) {
        e1 = project([seed[1] + 1.0, seed[2] - 1.0, seed[0] + 0.5]);
    }
    let e1 = unit(e1);
    [e1, cross(k_hat, e1)]
}

/// `F[e^{zr}/r]` written out independently of the production kernels.
fn f_exp(z: Complex64, r_vec: Vec3) -> Tensor3 {
    let r = dot(r_vec, r_vec).sqrt();
    let n = [r_vec[0] / r, r_vec[1] / r, r_vec[2] / r];
    let e = (z * r).exp() / r;
    let iso = e * (-z * z + z / r - 1.0 / (r * r));
    let dyad = e * (z * z - 3.0 * z / r + 3.0 / (r * r));
    let mut t = Tensor3::zero();
    for l in 0..3 {
        for m in 0..3 {
            t.0[l][m] = dyad * (n[l] * n[m]);
        }
        t.0[l][l] += iso;
    }
    t
}

/// `−(2π/V) P Σ_{k,j} k ê ê e^{−ik·R_src} /(k0+k) · F^{far}[…]ᵀ θ(ct − |R_src|)`
/// for one orientation of the mixed term, as a function of the two atoms.
fn mixed_term(r_src: Vec3, r_far: Vec3, k0: f64, ct: f64, pc: f64, spec: &BoxSpec) -> Tensor3 {
    if ct < dot(r_src, r_src).sqrt() {
        return Tensor3::zero();
    }
    let n = spec.n_max();
    let dk = 2.0 * std::f64::consts::PI / spec.l;
    let volume = spec.l.powi(3);
    let i = Complex64::new(0.0, 1.0);
    let static_far = f_exp(i * k0, r_far);
    let kmax2 = spec.k_max * spec.k_max;

    let slices: Vec<Tensor3> = (-n..=n)
        .into_par_iter()
        .map(|nx| {
            let mut acc = Tensor3::zero();
            for ny in -n..=n {
                for nz in -n..=n {
                    let kv = [nx as f64 * dk, ny as f64 * dk, nz as f64 * dk];
                    let k2 = dot(kv, kv);
                    if k2 > kmax2 || k2 == 0.0 {
                        continue;
                    }
                    let k = k2.sqrt();
                    let k_hat = [kv[0] / k, kv[1] / k, kv[2] / k];
                    let [e1, e2] = polarization_basis(k_hat, spec.seed);
                    let mut proj = [[0.0; 3]; 3];
                    for l in 0..3 {
                        for m in 0..3 {
                            proj[l][m] = e1[l] * e1[m] + e2[l] * e2[m];
                        }
                    }
                    let far = f_exp(-i * k, r_far) - static_far * (-i * (k0 + k) * ct).exp();
                    let w = k * (-i * dot(kv, r_src)).exp() * (-spec.regulator * k).exp() / (k0 + k);
                    let mut t = Tensor3::zero();
                    for l in 0..3 {
                        for m in 0..3 {
                            let mut s = Complex64::new(0.0, 0.0);
                            for q in 0..3 {
                                s += proj[l][q] * far.0[m][q];
                            }
                            t.0[l][m] = s * w;
                        }
                    }
                    acc += t;
                }
            }
            acc
        })
        .collect();
    let mut total = Tensor3::zero();
    for s in slices {
        total += s;
    }
    total * (-2.0 * std::f64::consts::PI / volume * pc)
}

/// Mode-sum correlation `⟨E_ℓ(r_A, t) E_m(r_B, t)⟩` without the free-field part.
pub fn box_corr(scene: &Scene, t: f64, spec: &BoxSpec) -> Result<BoxCorrelation> {
    if !(spec.l > 0.0 && spec.k_max > 0.0) {
        return Err(Error::InvalidParameter(format!("box side and cutoff must be positive: {spec:?}")));
    }
    let modes = spec.mode_count();
    if modes > spec.mode_budget {
        return Err(Error::ModeBudget { required: modes, budget: spec.mode_budget });
    }
    let ct = t;
    let k0 = scene.k0();
    let pc = scene.c.mu2 / 3.0;
    let sub = |a: Vec3, b: Vec3| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let r_ac = sub(scene.a.position, scene.c.position);
    let r_bc = sub(scene.b.position, scene.c.position);

    let direct = mixed_term(r_ac, r_bc, k0, ct, pc, spec);
    let swapped = mixed_term(r_bc, r_ac, k0, ct, pc, spec);
    let nonresonant = direct + swapped.conj().transpose();

    let i = Complex64::new(0.0, 1.0);
    let inside = ct >= dot(r_ac, r_ac).sqrt() && ct >= dot(r_bc, r_bc).sqrt();
    let resonant = if inside {
        let out = f_exp(-i * k0, r_ac).matmul(&f_exp(i * k0, r_bc).transpose());
        let back = f_exp(i * k0, r_ac).matmul(&f_exp(-i * k0, r_bc).transpose());
        (out + back) * pc
    } else {
        Tensor3::zero()
    };
    Ok(BoxCorrelation { nonresonant, resonant, total: nonresonant + resonant, modes })
}

/// Finite-difference `F` with its accuracy flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResult {
    pub tensor: Tensor3,
    /// Set when the step is not small against the distance or wavelength.
    pub step_warning: bool,
}

fn kernel_wavenumber(kernel: &ScalarKernel) -> f64 {
    match kernel {
        ScalarKernel::ExpComplex(z) => z.norm(),
        ScalarKernel::SinOverR(k) | ScalarKernel::CosOverR(k) => k.abs(),
        ScalarKernel::Static => 0.0,
        ScalarKernel::Combination(parts) => parts.iter().map(|(_, k)| kernel_wavenumber(k)).fold(0.0, f64::max),
    }
}

/// Central-difference `(−∇²δ + ∇∇) f` at `r_vec`, Richardson-extrapolated
/// from steps `h` and `h/2`.
pub fn fd_f_apply(kernel: &ScalarKernel, r_vec: Vec3, step: f64) -> FdResult {
    let f = |p: Vec3| kernel.value(dot(p, p).sqrt());
    let hessian = |h: f64| {
        let mut hm = [[Complex64::new(0.0, 0.0); 3]; 3];
        let at = |d: [f64; 3]| f([r_vec[0] + d[0], r_vec[1] + d[1], r_vec[2] + d[2]]);
        let f0 = f(r_vec);
        for l in 0..3 {
            let mut e = [0.0; 3];
            e[l] = h;
            hm[l][l] = (at(e) - f0 * 2.0 + at(e.map(|x| -x))) / (h * h);
            for m in (l + 1)..3 {
                let mut pp = [0.0; 3];
                pp[l] = h;
                pp[m] = h;
                let mut pm = pp;
                pm[m] = -h;
                let v = (at(pp) - at(pm) - at(pm.map(|x| -x)) + at(pp.map(|x| -x))) / (4.0 * h * h);
                hm[l][m] = v;
                hm[m][l] = v;
            }
        }
        hm
    };
    let (h1, h2) = (hessian(step), hessian(0.5 * step));
    let mut t = Tensor3::zero();
    for l in 0..3 {
        for m in 0..3 {
            t.0[l][m] = (h2[l][m] * 4.0 - h1[l][m]) / 3.0;
        }
    }
    let lap = t.0[0][0] + t.0[1][1] + t.0[2][2];
    for l in 0..3 {
        t.0[l][l] -= lap;
    }
    let r = dot(r_vec, r_vec).sqrt();
    let step_warning = step > 1e-2 * r || step * kernel_wavenumber(kernel) > 0.1;
    FdResult { tensor: t, step_warning }
}

/// Stationary three-body potential of three ground-state-like polarizabilities,
/// `(1/π) ∫₀^∞ du α_A α_B α_C(iu) F^α F^β F^γ e^{−u(α+β+γ)}/(αβγ)`, by a
/// composite Simpson rule on `u = x/(1−x)`.
pub fn stationary_three_body(scene: &Scene, panels: usize) -> f64 {
    let pol = |k_t: f64, mu2: f64, u: f64| (2.0 / 3.0) * mu2 * k_t / (k_t * k_t + u * u);
    let g = scene.geom;
    let seps = [g.alpha_hat, g.beta_hat, g.gamma_hat];
    let dists = [g.alpha, g.beta, g.gamma];
    let tensor = |v: usize, u: f64| {
        let r = dists[v];
        let e = (-u * r).exp() / r;
        let z = -u;
        let iso = e * (-z * z + z / r - 1.0 / (r * r));
        let dyad = e * (z * z - 3.0 * z / r + 3.0 / (r * r));
        let n = seps[v];
        let mut t = [[0.0; 3]; 3];
        for l in 0..3 {
            for m in 0..3 {
                t[l][m] = dyad * n[l] * n[m];
            }
            t[l][l] += iso;
        }
        t
    };
    let integrand = |u: f64| {
        let (ta, tb, tg) = (tensor(0, u), tensor(1, u), tensor(2, u));
        let mut s = 0.0;
        for l in 0..3 {
            for m in 0..3 {
                for n in 0..3 {
                    s += tg[l][m] * tb[l][n] * ta[m][n];
                }
            }
        }
        s * pol(scene.a.k_trans, scene.a.mu2, u) * pol(scene.b.k_trans, scene.b.mu2, u) * pol(scene.c.k_trans, scene.c.mu2, u)
    };
    let mapped = |x: f64| {
        if x >= 1.0 {
            return 0.0;
        }
        let u = x / (1.0 - x);
        integrand(u) / ((1.0 - x) * (1.0 - x))
    };
    let n = panels + panels % 2;
    let h = 1.0 / n as f64;
    let mut s = mapped(0.0) + mapped(1.0);
    for i in 1..n {
        s += mapped(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 / std::f64::consts::PI
}
