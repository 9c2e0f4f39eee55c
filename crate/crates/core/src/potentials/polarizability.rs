use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scene::Atom;

/// Detuning guard as a fraction of `k0`.
pub const DETUNING_FRACTION: f64 = 1e-3;

/// Isotropic two-level polarizability
/// `α(k) = (2/3) μ² k_t / (k_t² − k²) = (μ²/3) [1/(k_t − k) + 1/(k_t + k)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarizability {
    pub k_trans: f64,
    pub mu2: f64,
}

impl Polarizability {
    pub fn new(k_trans: f64, mu2: f64) -> Self {
        Polarizability { k_trans, mu2 }
    }

    pub fn of(atom: &Atom) -> Self {
        Self::new(atom.k_trans, atom.mu2)
    }

    /// Continuation to complex `k`. A positive `linewidth` moves both poles
    /// to `±k_t − iΓ/2`.
    pub fn at(&self, k: Complex64, linewidth: f64) -> Complex64 {
        let p = Complex64::new(self.k_trans, -0.5 * linewidth);
        let m = Complex64::new(self.k_trans, 0.5 * linewidth);
        (self.mu2 / 3.0) * (1.0 / (p - k) + 1.0 / (m + k))
    }

    pub fn real_axis(&self, k: f64) -> f64 {
        (2.0 / 3.0) * self.mu2 * self.k_trans / (self.k_trans * self.k_trans - k * k)
    }

    pub fn imag_axis(&self, u: f64) -> f64 {
        (2.0 / 3.0) * self.mu2 * self.k_trans / (self.k_trans * self.k_trans + u * u)
    }

    /// The non-resonant half `(μ²/3)/(k_t + k)`, finite at `k = k_t`.
    pub fn counter_rotating(&self, k: f64) -> f64 {
        (self.mu2 / 3.0) / (self.k_trans + k)
    }

    pub fn poles(&self, linewidth: f64) -> [Complex64; 2] {
        [Complex64::new(self.k_trans, -0.5 * linewidth), Complex64::new(-self.k_trans, -0.5 * linewidth)]
    }

    /// Value at the excited atom's wavenumber, refusing near-resonant atoms.
    pub fn at_k0(&self, k0: f64) -> Result<f64> {
        check_detuning(self.k_trans, k0)?;
        Ok(self.real_axis(k0))
    }
}

/// `|k_trans − k0| ≥ 1e−3·k0`.
pub fn check_detuning(k_trans: f64, k0: f64) -> Result<()> {
    let delta_min = DETUNING_FRACTION * k0;
    if (k_trans - k0).abs() < delta_min {
        return Err(Error::Detuning { k_trans, k0, delta_min });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_limit_and_monotone_decrease() {
        let p = Polarizability::new(1.7, 0.4);
        assert_eq!(p.real_axis(0.0), p.imag_axis(0.0));
        let mut last = p.imag_axis(0.0);
        for i in 1..50 {
            let v = p.imag_axis(0.3 * i as f64);
            assert!(v > 0.0 && v < last);
            last = v;
        }
    }

    #[test]
    fn complex_continuation() {
        let p = Polarizability::new(1.7, 0.4);
        let u = 0.8;
        let v = p.at(Complex64::new(0.0, u), 0.0);
        assert!((v.re - p.imag_axis(u)).abs() < 1e-15 && v.im.abs() < 1e-15);
        let v = p.at(Complex64::new(0.9, 0.0), 0.0);
        assert!((v.re - p.real_axis(0.9)).abs() < 1e-14);
    }

    #[test]
    fn detuning_guard() {
        let p = Polarizability::new(1.0005, 1.0);
        assert!(matches!(p.at_k0(1.0), Err(Error::Detuning { .. })));
        assert!(Polarizability::new(2.0, 1.0).at_k0(1.0).is_ok());
    }

    #[test]
    fn counter_rotating_half() {
        let p = Polarizability::new(1.0, 0.6);
        assert!((p.counter_rotating(1.0) - 0.1).abs() < 1e-16);
    }
}
