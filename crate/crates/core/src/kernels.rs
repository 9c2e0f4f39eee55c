//! The dyadic operator `F = −∇²δ + ∇∇` applied to spherical kernels.
//!
//! For a radial function `f(r)`,
//!
//! ```text
//! ∇_l ∇_n f = r̂_l r̂_n f'' + (δ_ln − r̂_l r̂_n) f'/r
//! F_ln f    = δ_ln (−f'' − 2f'/r) + (δ_ln − r̂_l r̂_n) f'/r + r̂_l r̂_n f''
//!           = a(r) δ_ln + b(r) r̂_l r̂_n
//! a = −f'' − f'/r,   b = f'' − f'/r.
//! ```
//!
//! Every kernel here has closed-form first and second derivatives, so the
//! result is exact up to rounding.

use num_complex::Complex64;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::scene::{norm, scale, Vec3};
use crate::tensor::Tensor3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spherical kernels the F operator acts on.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarKernel {
    /// `e^{z r} / r` for complex `z`; real positive `z` gives a growing kernel.
    ExpComplex(Complex64),
    /// `sin(k r) / r`.
    SinOverR(f64),
    /// `cos(k r) / r`.
    CosOverR(f64),
    /// `1 / r`.
    Static,
    /// Linear combination of other kernels.
    Combination(Vec<(Complex64, ScalarKernel)>),
}

impl ScalarKernel {
    /// `(f, f', f'')` at radius `r`.
    pub fn derivatives(&self, r: f64) -> (Complex64, Complex64, Complex64) {
        match self {
            ScalarKernel::ExpComplex(z) => {
                let e = (z * r).exp();
                let (f, d1, d2) = exp_kernel_scaled_derivatives(*z, r);
                (e * f, e * d1, e * d2)
            }
            ScalarKernel::SinOverR(k) => {
                let (s, c) = (k * r).sin_cos();
                let f = s / r;
                let d1 = k * c / r - s / (r * r);
                let d2 = -k * k * s / r - 2.0 * k * c / (r * r) + 2.0 * s / (r * r * r);
                (f.into(), d1.into(), d2.into())
            }
            ScalarKernel::CosOverR(k) => {
                let (s, c) = (k * r).sin_cos();
                let f = c / r;
                let d1 = -k * s / r - c / (r * r);
                let d2 = -k * k * c / r + 2.0 * k * s / (r * r) + 2.0 * c / (r * r * r);
                (f.into(), d1.into(), d2.into())
            }
            ScalarKernel::Static => {
                let f = 1.0 / r;
                (f.into(), (-f / r).into(), (2.0 * f / (r * r)).into())
            }
            ScalarKernel::Combination(terms) => {
                let zero = Complex64::new(0.0, 0.0);
                terms.iter().fold((zero, zero, zero), |acc, (w, k)| {
                    let (f, d1, d2) = k.derivatives(r);
                    (acc.0 + w * f, acc.1 + w * d1, acc.2 + w * d2)
                })
            }
        }
    }

    /// Kernel value at radius `r`.
    pub fn value(&self, r: f64) -> Complex64 {
        self.derivatives(r).0
    }
}

impl Add for ScalarKernel {
    type Output = ScalarKernel;
    fn add(self, rhs: ScalarKernel) -> ScalarKernel {
        let one = Complex64::new(1.0, 0.0);
        ScalarKernel::Combination(vec![(one, self), (one, rhs)])
    }
}

impl Mul<ScalarKernel> for Complex64 {
    type Output = ScalarKernel;
    fn mul(self, rhs: ScalarKernel) -> ScalarKernel {
        ScalarKernel::Combination(vec![(self, rhs)])
    }
}

/// `(f, f', f'')` of `e^{zr}/r` with the factor `e^{zr}` removed.
#[inline]
fn exp_kernel_scaled_derivatives(z: Complex64, r: f64) -> (Complex64, Complex64, Complex64) {
    let inv = 1.0 / r;
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    let f = Complex64::new(inv, 0.0);
    let d1 = z * inv - inv2;
    let d2 = z * z * inv - 2.0 * z * inv2 + 2.0 * inv3;
    (f, d1, d2)
}

/// Coefficients `(a, b)` of `F[e^{zr}/r] = e^{zr} (a δ + b r̂r̂)`, exponential removed.
#[inline]
pub(crate) fn exp_kernel_scaled_coefficients(z: Complex64, r: f64) -> (Complex64, Complex64) {
    let inv = 1.0 / r;
    let inv2 = inv * inv;
    let inv3 = inv2 * inv;
    let zz = z * z;
    let a = -zz * inv + z * inv2 - inv3;
    let b = zz * inv - 3.0 * z * inv2 + 3.0 * inv3;
    (a, b)
}

/// `F` applied to a kernel at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTensor {
    pub components: Tensor3,
    /// Coefficient of `δ`.
    pub isotropic: Complex64,
    /// Coefficient of `r̂ r̂`.
    pub dyadic: Complex64,
    pub r_hat: Vec3,
    pub r: f64,
}

impl KernelTensor {
    pub fn from_coefficients(a: Complex64, b: Complex64, r_hat: Vec3, r: f64) -> Self {
        KernelTensor {
            components: Tensor3::isotropic_plus_dyad(a, b, r_hat),
            isotropic: a,
            dyadic: b,
            r_hat,
            r,
        }
    }

    /// `r̂ · T · r̂`.
    pub fn longitudinal(&self) -> Complex64 {
        self.isotropic + self.dyadic
    }

    /// Component along any direction perpendicular to `r̂`.
    pub fn transverse(&self) -> Complex64 {
        self.isotropic
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::from_coefficients(self.isotropic * s, self.dyadic * s, self.r_hat, self.r)
    }

    /// Sum of two tensors evaluated at the same separation.
    pub fn plus(&self, other: &Self) -> Self {
        debug_assert!((self.r - other.r).abs() <= 1e-12 * self.r);
        Self::from_coefficients(self.isotropic + other.isotropic, self.dyadic + other.dyadic, self.r_hat, self.r)
    }
}

/// `F_ln f(r)` for the kernel evaluated at separation `r_vec`.
pub fn f_apply(kernel: &ScalarKernel, r_vec: Vec3) -> Result<KernelTensor> {
    let r = norm(r_vec);
    if !(r > 0.0) {
        return Err(Error::SingularKernel);
    }
    let r_hat = scale(r_vec, 1.0 / r);
    let (a, b) = match kernel {
        ScalarKernel::ExpComplex(z) => {
            let (a, b) = exp_kernel_scaled_coefficients(*z, r);
            let e = (z * r).exp();
            (a * e, b * e)
        }
        _ => {
            let (_, d1, d2) = kernel.derivatives(r);
            (-d2 - d1 / r, d2 - d1 / r)
        }
    };
    Ok(KernelTensor::from_coefficients(a, b, r_hat, r))
}

/// `Σ_{lmn} Tg_lm Tb_ln Ta_mn`.
pub fn triple_contract(tg: &Tensor3, tb: &Tensor3, ta: &Tensor3) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..3 {
        for m in 0..3 {
            let mut inner = Complex64::new(0.0, 0.0);
            for n in 0..3 {
                inner += tb.0[l][n] * ta.0[m][n];
            }
            acc += tg.0[l][m] * inner;
        }
    }
    acc
}

/// `Σ_n Tb_ln Ta_mn`, free indices `(l, m)`.
pub fn pair_contract(tb: &Tensor3, ta: &Tensor3) -> Tensor3 {
    tb.matmul(&ta.transpose())
}

/// Correlation-mode pair contraction: `(|μ|²/3) Σ_n Tb_ln Ta_mn`.
pub fn pair_contract_isotropic(tb: &Tensor3, ta: &Tensor3, mu2: f64) -> Tensor3 {
    pair_contract(tb, ta) * (mu2 / 3.0)
}

/// Triple contraction of three `a δ + b n̂n̂` tensors from their coefficients.
#[inline]
pub(crate) fn triple_contract_coefficients(
    (ag, bg, ng): (Complex64, Complex64, Vec3),
    (ab, bb, nb): (Complex64, Complex64, Vec3),
    (aa, ba, na): (Complex64, Complex64, Vec3),
) -> Complex64 {
    use crate::scene::dot;
    let gb = dot(ng, nb);
    let ga = dot(ng, na);
    let ba_ = dot(nb, na);
    3.0 * ag * ab * aa
        + bg * ab * aa
        + ag * bb * aa
        + ag * ab * ba
        + bg * bb * aa * (gb * gb)
        + bg * ab * ba * (ga * ga)
        + ag * bb * ba * (ba_ * ba_)
        + bg * bb * ba * (gb * ba_ * ga)
}

/// `exp_complex(ik)` expressed through the sine and cosine kernels.
pub fn outgoing_from_standing(k: f64) -> ScalarKernel {
    ScalarKernel::Combination(vec![
        (Complex64::new(1.0, 0.0), ScalarKernel::CosOverR(k)),
        (I, ScalarKernel::SinOverR(k)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn static_dipole_tensor() {
        let t = f_apply(&ScalarKernel::Static, [0.0, 0.0, 1.0]).unwrap();
        let want = [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(t.components.0[i][j], want[i][j].into(), 1e-15));
            }
        }
    }

    #[test]
    fn exp_static_limit_matches_static() {
        let r = [0.3, -1.2, 0.8];
        let a = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, 0.0)), r).unwrap();
        let b = f_apply(&ScalarKernel::Static, r).unwrap();
        assert!((a.components - b.components).norm() < 1e-14);
    }

    #[test]
    fn helmholtz_identity_on_delta_part() {
        for &k in &[0.3, 1.0, 4.2] {
            let kern = ScalarKernel::ExpComplex(Complex64::new(0.0, k));
            for &r in &[0.5, 2.0, 7.5] {
                let (f, d1, d2) = kern.derivatives(r);
                assert!(close(-(d2 + 2.0 * d1 / r), k * k * f, 1e-12));
            }
        }
    }

    #[test]
    fn outgoing_equals_cos_plus_i_sin() {
        let r = [1.1, 0.4, -0.3];
        for &k in &[0.2, 1.3, 3.7] {
            let e = f_apply(&ScalarKernel::ExpComplex(Complex64::new(0.0, k)), r).unwrap();
            let cs = f_apply(&outgoing_from_standing(k), r).unwrap();
            assert!((e.components - cs.components).norm() < 1e-12 * e.components.norm());
        }
    }

    #[test]
    fn zero_separation_is_an_error() {
        assert_eq!(f_apply(&ScalarKernel::Static, [0.0; 3]), Err(Error::SingularKernel));
    }

    #[test]
    fn identity_contractions() {
        let id = Tensor3::identity();
        assert!(close(triple_contract(&id, &id, &id), 3.0.into(), 1e-15));
        let p = pair_contract_isotropic(&id, &id, 3.0);
        assert!((p - id).norm() < 1e-15);
    }

    #[test]
    fn transversality_at_large_distance() {
        let kern = ScalarKernel::ExpComplex(Complex64::new(0.0, 1.0));
        let ratio = |r: f64| {
            let t = f_apply(&kern, [0.0, 0.0, r]).unwrap();
            t.longitudinal().norm() / t.transverse().norm()
        };
        let (r3, r4) = (ratio(1e3), ratio(1e4));
        assert!(r3 < 3e-3 && r4 < 3e-4);
        assert!((r3 / r4 - 10.0).abs() < 0.1);
    }

    #[test]
    fn coefficient_contraction_matches_matrix_loop() {
        let z = [Complex64::new(-0.3, 1.1), Complex64::new(0.2, -0.7), Complex64::new(0.0, 2.0)];
        let vecs = [[1.0, 0.5, -0.2], [-0.3, 0.9, 1.4], [0.7, -0.7, 0.1]];
        let ts: Vec<KernelTensor> =
            (0..3).map(|i| f_apply(&ScalarKernel::ExpComplex(z[i]), vecs[i]).unwrap()).collect();
        let want = triple_contract(&ts[0].components, &ts[1].components, &ts[2].components);
        let got = triple_contract_coefficients(
            (ts[0].isotropic, ts[0].dyadic, ts[0].r_hat),
            (ts[1].isotropic, ts[1].dyadic, ts[1].r_hat),
            (ts[2].isotropic, ts[2].dyadic, ts[2].r_hat),
        );
        assert!(close(got, want, 1e-12));
    }
}
