//! Scene generators shared by the integration tests.
#![allow(dead_code)]

use dyncp::scene::{triangle_positions, Atom, Scene};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Atom parameters `(k_A, μ_A², k_B, μ_B², k_C, μ_C²)` with `k_C = 1`.
pub type Atoms = [f64; 6];

pub const DEFAULT_ATOMS: Atoms = [1.5, 1.0, 2.0, 1.0, 1.0, 1.2];

pub fn scene_with(alpha: f64, beta: f64, gamma: f64, atoms: Atoms) -> Scene {
    let (ra, rb, rc) = triangle_positions(alpha, beta, gamma);
    Scene::build(
        Atom::ground(ra, atoms[0], atoms[1]).unwrap(),
        Atom::ground(rb, atoms[2], atoms[3]).unwrap(),
        Atom::excited(rc, atoms[4], atoms[5]).unwrap(),
    )
    .unwrap()
}

pub fn scene(alpha: f64, beta: f64, gamma: f64) -> Scene {
    scene_with(alpha, beta, gamma, DEFAULT_ATOMS)
}

/// Ground-state transitions kept at least 0.1 away from `k0 = 1`.
pub fn random_atoms(rng: &mut impl Rng) -> Atoms {
    let mut k = || loop {
        let k: f64 = rng.gen_range(0.3..3.0);
        if (k - 1.0).abs() > 0.1 {
            return k;
        }
    };
    let (ka, kb) = (k(), k());
    [ka, rng.gen_range(0.5..2.0), kb, rng.gen_range(0.5..2.0), 1.0, rng.gen_range(0.5..2.0)]
}

/// Every combination `±α ± β ± γ ± ct` with a nonzero coefficient stays at
/// least `margin` away from zero, so no evaluation sits near a light cone.
pub fn clear_of_cones(d: [f64; 3], ct: f64, margin: f64) -> bool {
    let vals = [d[0], d[1], d[2], ct];
    for code in 0..81 {
        if code == 40 {
            // all coefficients zero
            continue;
        }
        let mut c = code;
        let mut x = 0.0;
        for v in vals {
            x += v * ((c % 3) as f64 - 1.0);
            c /= 3;
        }
        if x.abs() < margin {
            return false;
        }
    }
    true
}

/// Triangle sides in `[lo, hi]` with every triangle inequality satisfied by
/// at least `margin`.
pub fn random_triangle(rng: &mut impl Rng, lo: f64, hi: f64, margin: f64) -> [f64; 3] {
    loop {
        let d = [rng.gen_range(lo..hi), rng.gen_range(lo..hi), rng.gen_range(lo..hi)];
        if d[0] + d[1] - d[2] > margin && d[0] + d[2] - d[1] > margin && d[1] + d[2] - d[0] > margin {
            return d;
        }
    }
}

/// A generic scene and time, clear of every light cone.
pub fn random_generic(rng: &mut impl Rng, t_max: f64) -> (Scene, f64) {
    loop {
        let d = random_triangle(rng, 0.5, 4.0, 0.05);
        let t = rng.gen_range(0.05..t_max);
        if clear_of_cones(d, t, 0.02) {
            return (scene_with(d[0], d[1], d[2], random_atoms(rng)), t);
        }
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
