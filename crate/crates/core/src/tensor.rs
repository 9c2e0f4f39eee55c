//! Small fixed-size complex 3×3 tensors.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::scene::Vec3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor3(pub [[Complex64; 3]; 3]);

impl Default for Tensor3 {
    fn default() -> Self {
        Tensor3::zero()
    }
}

impl Tensor3 {
    pub fn zero() -> Self {
        Tensor3([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            t.0[i][i] = Complex64::new(1.0, 0.0);
        }
        t
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = Complex64::new(m[i][j], 0.0);
            }
        }
        t
    }

    /// `a δ + b n n`.
    pub fn isotropic_plus_dyad(a: Complex64, b: Complex64, n: Vec3) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = b * (n[i] * n[j]);
            }
            t.0[i][i] += a;
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut t = *self;
        for row in t.0.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        t
    }

    pub fn re(&self) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.0[i][j].re;
            }
        }
        m
    }

    pub fn im(&self) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.0[i][j].im;
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = ZERO;
                for k in 0..3 {
                    s += self.0[i][k] * other.0[k][j];
                }
                t.0[i][j] = s;
            }
        }
        t
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> [Complex64; 9] {
        let mut out = [ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = self.0[i][j];
            }
        }
        out
    }

    /// Rotated tensor `R T Rᵀ`.
    pub fn rotated(&self, rot: &[[f64; 3]; 3]) -> Self {
        let r = Tensor3::from_real(*rot);
        r.matmul(self).matmul(&r.transpose())
    }
}

impl Add for Tensor3 {
    type Output = Tensor3;
    fn add(mut self, rhs: Tensor3) -> Tensor3 {
        self += rhs;
        self
    }
}

impl AddAssign for Tensor3 {
    fn add_assign(&mut self, rhs: Tensor3) {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl Sub for Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: Tensor3) -> Tensor3 {
        self + (-rhs)
    }
}

impl Neg for Tensor3 {
    type Output = Tensor3;
    fn neg(self) -> Tensor3 {
        self.map(|z| -z)
    }
}

impl Mul<Complex64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: Complex64) -> Tensor3 {
        self.map(|z| z * s)
    }
}

impl Mul<f64> for Tensor3 {
    type Output = Tensor3;
    fn mul(self, s: f64) -> Tensor3 {
        self.map(|z| z * s)
    }
}

/// Apply a real 3×3 matrix to a vector.
pub fn rotate_vec(rot: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = rot[i][0] * v[0] + rot[i][1] * v[1] + rot[i][2] * v[2];
    }
    out
}
