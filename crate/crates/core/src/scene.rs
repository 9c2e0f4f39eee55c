//! Atoms, triangle geometry and the light-cone classifier.
//!
//! Units: ħ = c = 1, and the excited atom's transition wavenumber `k0` is the
//! natural inverse length. Lengths are in `1/k0`, times in `1/(c k0)` and
//! energies in `ħ c k0`. Because `c = 1`, the dimensionless time `t` and the
//! light-cone radius `ct` coincide numerically.
//!
//! The three atoms are labelled A, B (ground state) and C (excited). Their
//! separations are
//!
//! * `alpha = |r_B - r_C|`
//! * `beta  = |r_A - r_C|`
//! * `gamma = |r_A - r_B|`

use crate::error::{Error, Result};

/// Cartesian 3-vector.
pub type Vec3 = [f64; 3];

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Half-width of the band around a light cone inside which evaluations are
/// flagged rather than trusted.
pub const EPS_CONE: f64 = 1e-9;

/// Marker for the natural-unit convention used throughout the crate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UnitsConvention;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Excited,
    Ground,
}

/// A two-level, isotropic atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: Vec3,
    /// Transition wavenumber.
    pub k_trans: f64,
    /// Squared dipole matrix element `|μ|²`.
    pub mu2: f64,
    pub role: Role,
}

impl Atom {
    pub fn new(position: Vec3, k_trans: f64, mu2: f64, role: Role) -> Result<Self> {
        if !(k_trans > 0.0 && k_trans.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "transition wavenumber must be positive, got {k_trans}"
            )));
        }
        if !(mu2 > 0.0 && mu2.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "squared dipole moment must be positive, got {mu2}"
            )));
        }
        if position.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite atom position".into()));
        }
        Ok(Atom { position, k_trans, mu2, role })
    }

    pub fn ground(position: Vec3, k_trans: f64, mu2: f64) -> Result<Self> {
        Self::new(position, k_trans, mu2, Role::Ground)
    }

    pub fn excited(position: Vec3, k_trans: f64, mu2: f64) -> Result<Self> {
        Self::new(position, k_trans, mu2, Role::Excited)
    }
}

/// Distances and unit separation vectors of the A, B, C triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneGeometry {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Direction of `r_B - r_C`.
    pub alpha_hat: Vec3,
    /// Direction of `r_A - r_C`.
    pub beta_hat: Vec3,
    /// Direction of `r_A - r_B`.
    pub gamma_hat: Vec3,
}

impl SceneGeometry {
    /// Geometry from the three atom positions.
    pub fn from_positions(ra: Vec3, rb: Vec3, rc: Vec3) -> Result<Self> {
        let a = sub(rb, rc);
        let b = sub(ra, rc);
        let g = sub(ra, rb);
        let (alpha, beta, gamma) = (norm(a), norm(b), norm(g));
        let scale_len = alpha.max(beta).max(gamma);
        let tiny = 1e-12 * scale_len.max(1.0);
        if alpha <= tiny || beta <= tiny || gamma <= tiny {
            return Err(Error::DegenerateGeometry(format!(
                "coincident atoms (alpha={alpha}, beta={beta}, gamma={gamma})"
            )));
        }
        Ok(SceneGeometry {
            alpha,
            beta,
            gamma,
            alpha_hat: scale(a, 1.0 / alpha),
            beta_hat: scale(b, 1.0 / beta),
            gamma_hat: scale(g, 1.0 / gamma),
        })
    }

    /// Geometry from raw distances. The triangle is placed with C at the
    /// origin, A on the x axis and B in the xy plane.
    pub fn from_distances(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, d) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::DegenerateGeometry(format!("{name} must be positive, got {d}")));
            }
        }
        let slack = 1e-12 * (alpha + beta + gamma);
        if alpha > beta + gamma + slack || beta > alpha + gamma + slack || gamma > alpha + beta + slack {
            return Err(Error::DegenerateGeometry(format!(
                "triangle inequality violated by ({alpha}, {beta}, {gamma})"
            )));
        }
        let (ra, rb, rc) = triangle_positions(alpha, beta, gamma);
        Self::from_positions(ra, rb, rc)
    }

    /// Separation vector (unnormalized) for distance index 0 = alpha, 1 = beta, 2 = gamma.
    pub fn separation(&self, which: usize) -> Vec3 {
        match which {
            0 => scale(self.alpha_hat, self.alpha),
            1 => scale(self.beta_hat, self.beta),
            2 => scale(self.gamma_hat, self.gamma),
            _ => panic!("distance index out of range: {which}"),
        }
    }

    pub fn distances(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn max_distance(&self) -> f64 {
        self.alpha.max(self.beta).max(self.gamma)
    }
}

/// Positions (A, B, C) realizing the given distances, C at the origin.
pub fn triangle_positions(alpha: f64, beta: f64, gamma: f64) -> (Vec3, Vec3, Vec3) {
    let rc = [0.0, 0.0, 0.0];
    let ra = [beta, 0.0, 0.0];
    // |rb| = alpha, |ra - rb| = gamma
    let x = (alpha * alpha + beta * beta - gamma * gamma) / (2.0 * beta);
    let y = (alpha * alpha - x * x).max(0.0).sqrt();
    (ra, [x, y, 0.0], rc)
}

/// Three atoms with their derived geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    pub a: Atom,
    pub b: Atom,
    pub c: Atom,
    pub geom: SceneGeometry,
}

impl Scene {
    /// Builds a scene. Exactly one atom must be excited; it becomes atom C and
    /// the two ground-state atoms keep their relative order as A then B.
    pub fn build(atom_a: Atom, atom_b: Atom, atom_c: Atom) -> Result<Self> {
        let atoms = [atom_a, atom_b, atom_c];
        let excited: Vec<usize> = (0..3).filter(|&i| atoms[i].role == Role::Excited).collect();
        if excited.len() != 1 {
            return Err(Error::Role(format!(
                "expected exactly one excited atom, found {}",
                excited.len()
            )));
        }
        let c = atoms[excited[0]];
        let mut ground = atoms.iter().filter(|a| a.role == Role::Ground);
        let a = *ground.next().expect("two ground atoms");
        let b = *ground.next().expect("two ground atoms");
        let geom = SceneGeometry::from_positions(a.position, b.position, c.position)?;
        Ok(Scene { a, b, c, geom })
    }

    /// The excited atom's transition wavenumber.
    pub fn k0(&self) -> f64 {
        self.c.k_trans
    }

    /// Atom by index 0 = A, 1 = B, 2 = C.
    pub fn atom(&self, idx: usize) -> &Atom {
        match idx {
            0 => &self.a,
            1 => &self.b,
            2 => &self.c,
            _ => panic!("atom index out of range: {idx}"),
        }
    }

    /// Relabels A ⇄ B (and therefore alpha ⇄ beta).
    pub fn swapped_ab(&self) -> Self {
        let geom = SceneGeometry::from_positions(self.b.position, self.a.position, self.c.position)
            .expect("swap preserves a valid geometry");
        Scene { a: self.b, b: self.a, c: self.c, geom }
    }

    pub fn region(&self, t: f64) -> CausalityRegion {
        classify_region(&self.geom, t)
    }
}

/// `build_scene` in free-function form.
pub fn build_scene(atom_a: Atom, atom_b: Atom, atom_c: Atom) -> Result<SceneGeometry> {
    Scene::build(atom_a, atom_b, atom_c).map(|s| s.geom)
}

/// Heaviside step with θ(0) = 1.
#[inline]
pub fn theta(x: f64) -> bool {
    x >= 0.0
}

/// Sign with sgn(0) = +1.
#[inline]
pub fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// Every atom is outside the light cone of the other two.
    AllSpacelike,
    /// A and B are both inside the light cone of C.
    CSeesBoth,
    /// Exactly one of A, B is inside C's light cone and A, B are spacelike.
    CSeesOne,
    /// A and B see each other, neither is inside C's light cone.
    PairOnly,
    /// Exactly one of A, B is inside C's light cone and A, B see each other.
    Mixed,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::AllSpacelike => "all-spacelike",
            RegionLabel::CSeesBoth => "C-sees-both",
            RegionLabel::CSeesOne => "C-sees-one",
            RegionLabel::PairOnly => "pair-only",
            RegionLabel::Mixed => "mixed",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Step and sign factors for one (geometry, time) pair.
///
/// Named flags cover the factors that appear in the energy formulas; the
/// generic [`CausalityRegion::theta`] and [`CausalityRegion::sgn`] evaluate
/// any other combination with the same conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausalityRegion {
    pub ct: f64,
    pub distances: [f64; 3],
    pub th_alpha: bool,
    pub th_beta: bool,
    pub th_gamma: bool,
    pub th_alpha_plus_beta: bool,
    pub th_alpha_plus_gamma: bool,
    pub th_abs_alpha_minus_gamma: bool,
    pub th_beta_plus_gamma: bool,
    pub th_abs_beta_minus_gamma: bool,
    pub sgn_alpha_minus_ct: f64,
    pub sgn_beta_minus_ct: f64,
    pub sgn_gamma_minus_ct: f64,
    pub sgn_alpha_plus_beta_minus_ct: f64,
    pub sgn_alpha_plus_gamma_minus_ct: f64,
    pub sgn_beta_plus_gamma_minus_ct: f64,
    pub sgn_alpha_minus_gamma: f64,
    pub sgn_beta_minus_gamma: f64,
    pub sgn_alpha_minus_gamma_minus_ct: f64,
    pub sgn_beta_minus_gamma_minus_ct: f64,
    pub sgn_alpha_minus_gamma_plus_ct: f64,
    pub sgn_beta_minus_gamma_plus_ct: f64,
    /// Some light-cone argument lies within [`EPS_CONE`] of zero.
    pub near_cone: bool,
    pub label: RegionLabel,
}

impl CausalityRegion {
    /// θ(ct − x).
    pub fn theta(&self, x: f64) -> bool {
        theta(self.ct - x)
    }

    pub fn sgn(&self, x: f64) -> f64 {
        sgn(x)
    }
}

/// Computes every step/sign factor for the geometry at time `t`.
pub fn classify_region(geom: &SceneGeometry, t: f64) -> CausalityRegion {
    assert!(t >= 0.0 && t.is_finite(), "time must be non-negative and finite, got {t}");
    let ct = t;
    let (a, b, g) = (geom.alpha, geom.beta, geom.gamma);
    let th_alpha = theta(ct - a);
    let th_beta = theta(ct - b);
    let th_gamma = theta(ct - g);

    let cone_args = [
        a - ct,
        b - ct,
        g - ct,
        a + b - ct,
        a + g - ct,
        b + g - ct,
        (a - g).abs() - ct,
        (b - g).abs() - ct,
        (a - b).abs() - ct,
        a - g + ct,
        b - g + ct,
        a - b + ct,
        b - a + ct,
    ];
    let near_cone = cone_args.iter().any(|x| x.abs() < EPS_CONE);

    let label = match (th_alpha, th_beta, th_gamma) {
        (false, false, false) => RegionLabel::AllSpacelike,
        (true, true, _) => RegionLabel::CSeesBoth,
        (false, false, true) => RegionLabel::PairOnly,
        (_, _, false) => RegionLabel::CSeesOne,
        (_, _, true) => RegionLabel::Mixed,
    };

    CausalityRegion {
        ct,
        distances: [a, b, g],
        th_alpha,
        th_beta,
        th_gamma,
        th_alpha_plus_beta: theta(ct - (a + b)),
        th_alpha_plus_gamma: theta(ct - (a + g)),
        th_abs_alpha_minus_gamma: theta(ct - (a - g).abs()),
        th_beta_plus_gamma: theta(ct - (b + g)),
        th_abs_beta_minus_gamma: theta(ct - (b - g).abs()),
        sgn_alpha_minus_ct: sgn(a - ct),
        sgn_beta_minus_ct: sgn(b - ct),
        sgn_gamma_minus_ct: sgn(g - ct),
        sgn_alpha_plus_beta_minus_ct: sgn(a + b - ct),
        sgn_alpha_plus_gamma_minus_ct: sgn(a + g - ct),
        sgn_beta_plus_gamma_minus_ct: sgn(b + g - ct),
        sgn_alpha_minus_gamma: sgn(a - g),
        sgn_beta_minus_gamma: sgn(b - g),
        sgn_alpha_minus_gamma_minus_ct: sgn(a - g - ct),
        sgn_beta_minus_gamma_minus_ct: sgn(b - g - ct),
        sgn_alpha_minus_gamma_plus_ct: sgn(a - g + ct),
        sgn_beta_minus_gamma_plus_ct: sgn(b - g + ct),
        near_cone,
        label,
    }
}
