//! The five families of compact two-point homogeneous spaces.
//!
//! Every space is described by its real dimension `d` and the auxiliary
//! dimension `d₀` (the real dimension of the base field for projective
//! spaces; `d₀ = d` for spheres). All radial formulas are driven by the
//! Jacobi parameters
//!
//! ```text
//! a = (d − 2)/2,    b = (d₀ − 2)/2,
//! ```
//!
//! the radial density `A(r) = c(a,b) sin^{2a+1}(r/2) cos^{2b+1}(r/2)` of the
//! normalized invariant measure, and the geodesic distance normalized so that
//! the diameter is π.

use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;
use statrs::function::gamma::ln_gamma;
use std::sync::Arc;
use thiserror::Error;

/// Unit-vector norm tolerance for point validation.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("invalid index n={n} for {family}: {reason}")]
    InvalidIndex {
        family: &'static str,
        n: u32,
        reason: &'static str,
    },
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("point norm {norm} is not 1 within {UNIT_NORM_TOL:e}")]
    NonUnit { norm: f64 },
    #[error("mixed point representations: {x} vs {y}")]
    MixedRepresentations { x: &'static str, y: &'static str },
    #[error("point representation {repr} is not valid for this space")]
    WrongRepresentation { repr: &'static str },
    #[error("radius {r} outside [0, π]")]
    RadiusOutOfRange { r: f64 },
    #[error("matrix index {index} out of bounds for {size}x{size} distance matrix")]
    IndexOutOfBounds { index: usize, size: usize },
    #[error("space has no distance matrix attached; MatrixIndex points unsupported")]
    NoDistanceMatrix,
    #[error("invalid distance matrix: {0}")]
    BadDistanceMatrix(String),
}

/// One of the compact rank-1 symmetric spaces, or an abstract space known
/// only through its dimension parameters and a user-supplied distance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SpaceKind {
    /// Euclidean sphere S^n, n ≥ 1.
    Sphere { n: u32 },
    /// Real projective space P^n(ℝ), n ≥ 2.
    #[serde(rename = "projreal")]
    ProjReal { n: u32 },
    /// Complex projective space P^n(ℂ), n ≥ 2.
    #[serde(rename = "projcomplex")]
    ProjComplex { n: u32 },
    /// Quaternionic projective space P^n(ℍ), n ≥ 2.
    #[serde(rename = "projquaternion")]
    ProjQuaternion { n: u32 },
    /// The octonionic projective plane P²(𝕆). No linear model; points are
    /// supported through distance matrices only.
    #[serde(rename = "projoctonion")]
    ProjOctonion,
    /// A space given directly by (d, d₀); points through distance matrices only.
    Abstract { d: u32, d0: u32 },
}

impl SpaceKind {
    pub fn family_name(&self) -> &'static str {
        match self {
            SpaceKind::Sphere { .. } => "sphere",
            SpaceKind::ProjReal { .. } => "projreal",
            SpaceKind::ProjComplex { .. } => "projcomplex",
            SpaceKind::ProjQuaternion { .. } => "projquaternion",
            SpaceKind::ProjOctonion => "projoctonion",
            SpaceKind::Abstract { .. } => "abstract",
        }
    }

    fn validate(&self) -> Result<(), SpaceError> {
        let bad = |family, n, reason| Err(SpaceError::InvalidIndex { family, n, reason });
        match *self {
            SpaceKind::Sphere { n } if n < 1 => bad("sphere", n, "need n >= 1"),
            SpaceKind::ProjReal { n } if n < 2 => bad("projreal", n, "need n >= 2"),
            SpaceKind::ProjComplex { n } if n < 2 => bad("projcomplex", n, "need n >= 2"),
            SpaceKind::ProjQuaternion { n } if n < 2 => bad("projquaternion", n, "need n >= 2"),
            SpaceKind::Abstract { d, d0 } if d < 1 || d0 < 1 => {
                bad("abstract", d.min(d0), "need d >= 1 and d0 >= 1")
            }
            _ => Ok(()),
        }
    }

    /// Real dimension `d` and field parameter `d₀`.
    pub fn dimensions(&self) -> (u32, u32) {
        match *self {
            SpaceKind::Sphere { n } => (n, n),
            SpaceKind::ProjReal { n } => (n, 1),
            SpaceKind::ProjComplex { n } => (2 * n, 2),
            SpaceKind::ProjQuaternion { n } => (4 * n, 4),
            SpaceKind::ProjOctonion => (16, 8),
            SpaceKind::Abstract { d, d0 } => (d, d0),
        }
    }

    /// Number of real coordinates of the vector model, if one exists.
    pub fn vector_len(&self) -> Option<usize> {
        match *self {
            SpaceKind::Sphere { n } => Some(n as usize + 1),
            SpaceKind::ProjReal { n } => Some(n as usize + 1),
            SpaceKind::ProjComplex { n } => Some(2 * (n as usize + 1)),
            SpaceKind::ProjQuaternion { n } => Some(4 * (n as usize + 1)),
            SpaceKind::ProjOctonion | SpaceKind::Abstract { .. } => None,
        }
    }
}

/// Dimension and Jacobi data of a space: everything the spectral side needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    /// Real dimension.
    pub d: u32,
    /// Field dimension parameter (d₀ = d for spheres).
    pub d0: u32,
    /// Jacobi parameter a = (d − 2)/2.
    pub a: f64,
    /// Jacobi parameter b = (d₀ − 2)/2.
    pub b: f64,
    /// Density normalization c(a,b) = Γ(a+b+2) / (Γ(a+1)Γ(b+1)).
    pub c_ab: f64,
}

impl SpaceParams {
    fn from_dimensions(d: u32, d0: u32) -> Self {
        let a = (d as f64 - 2.0) / 2.0;
        let b = (d0 as f64 - 2.0) / 2.0;
        let c_ab = (ln_gamma(a + b + 2.0) - ln_gamma(a + 1.0) - ln_gamma(b + 1.0)).exp();
        SpaceParams { d, d0, a, b, c_ab }
    }
}

/// Space parameters (d, d₀, a, b, c(a,b)) for a valid space kind.
pub fn space_params(kind: SpaceKind) -> Result<SpaceParams, SpaceError> {
    kind.validate()?;
    let (d, d0) = kind.dimensions();
    Ok(SpaceParams::from_dimensions(d, d0))
}

/// A point in one of the concrete models.
///
/// Vector coordinates are flat `f64` slices: a sphere point is a unit vector
/// in ℝ^{d+1}; a projective point is a unit vector in F^{n+1} with each field
/// component stored as 1 (ℝ), 2 (ℂ) or 4 (ℍ) consecutive reals. Projective
/// points are representatives modulo a unit scalar of F.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PointRepr {
    SphereVec(Vec<f64>),
    ProjVec(Vec<f64>),
    MatrixIndex(usize),
}

impl PointRepr {
    pub fn repr_name(&self) -> &'static str {
        match self {
            PointRepr::SphereVec(_) => "SphereVec",
            PointRepr::ProjVec(_) => "ProjVec",
            PointRepr::MatrixIndex(_) => "MatrixIndex",
        }
    }

    fn coords(&self) -> Option<&[f64]> {
        match self {
            PointRepr::SphereVec(v) | PointRepr::ProjVec(v) => Some(v),
            PointRepr::MatrixIndex(_) => None,
        }
    }
}

/// Symmetric pairwise geodesic-distance table for point sets given by index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<f64>, // row-major size*size
}

impl DistanceMatrix {
    /// Validates symmetry (1e-12), zero diagonal, and entries in [0, π].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        let size = rows.len();
        if size == 0 {
            return Err(SpaceError::BadDistanceMatrix("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(SpaceError::BadDistanceMatrix(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        for i in 0..size {
            if entries[i * size + i] != 0.0 {
                return Err(SpaceError::BadDistanceMatrix(format!(
                    "nonzero diagonal at {i}"
                )));
            }
            for j in 0..size {
                let v = entries[i * size + j];
                if !(0.0..=std::f64::consts::PI).contains(&v) {
                    return Err(SpaceError::BadDistanceMatrix(format!(
                        "entry ({i},{j}) = {v} outside [0, π]"
                    )));
                }
                if (v - entries[j * size + i]).abs() > 1e-12 {
                    return Err(SpaceError::BadDistanceMatrix(format!(
                        "asymmetry at ({i},{j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { size, entries })
    }

    /// Parses either a JSON array-of-arrays or whitespace-separated rows.
    pub fn parse(text: &str) -> Result<Self, SpaceError> {
        let trimmed = text.trim_start();
        let rows: Vec<Vec<f64>> = if trimmed.starts_with('[') {
            serde_json::from_str(text)
                .map_err(|e| SpaceError::BadDistanceMatrix(format!("bad JSON: {e}")))?
        } else {
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| {
                            t.parse::<f64>().map_err(|e| {
                                SpaceError::BadDistanceMatrix(format!("bad number {t:?}: {e}"))
                            })
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?
        };
        DistanceMatrix::new(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }
}

/// A two-point homogeneous space bound to its parameters and, optionally, a
/// distance matrix for index-represented points.
///
/// All operations are pure; the value is immutable after construction and
/// cheap to clone (the matrix is shared).
#[derive(Debug, Clone)]
pub struct Space {
    kind: SpaceKind,
    params: SpaceParams,
    matrix: Option<Arc<DistanceMatrix>>,
}

impl Space {
    pub fn new(kind: SpaceKind) -> Result<Self, SpaceError> {
        let params = space_params(kind)?;
        Ok(Space {
            kind,
            params,
            matrix: None,
        })
    }

    pub fn with_distance_matrix(
        kind: SpaceKind,
        matrix: DistanceMatrix,
    ) -> Result<Self, SpaceError> {
        let params = space_params(kind)?;
        Ok(Space {
            kind,
            params,
            matrix: Some(Arc::new(matrix)),
        })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn params(&self) -> &SpaceParams {
        &self.params
    }

    pub fn distance_matrix(&self) -> Option<&DistanceMatrix> {
        self.matrix.as_deref()
    }

    /// True if the space carries a concrete vector model (needed for sampling
    /// and Monte Carlo integration).
    pub fn has_vector_model(&self) -> bool {
        self.kind.vector_len().is_some()
    }

    /// Checks that a point is a valid representative for this space.
    pub fn validate_point(&self, p: &PointRepr) -> Result<(), SpaceError> {
        match (self.kind, p) {
            (SpaceKind::Sphere { .. }, PointRepr::SphereVec(v)) => {
                self.check_unit(v)?;
                Ok(())
            }
            (
                SpaceKind::ProjReal { .. }
                | SpaceKind::ProjComplex { .. }
                | SpaceKind::ProjQuaternion { .. },
                PointRepr::ProjVec(v),
            ) => {
                self.check_unit(v)?;
                Ok(())
            }
            (_, PointRepr::MatrixIndex(i)) => {
                let m = self.matrix.as_ref().ok_or(SpaceError::NoDistanceMatrix)?;
                if *i >= m.size() {
                    return Err(SpaceError::IndexOutOfBounds {
                        index: *i,
                        size: m.size(),
                    });
                }
                Ok(())
            }
            (_, p) => Err(SpaceError::WrongRepresentation {
                repr: p.repr_name(),
            }),
        }
    }

    fn check_unit(&self, v: &[f64]) -> Result<(), SpaceError> {
        let expected = self.kind.vector_len().expect("vector model");
        if v.len() != expected {
            return Err(SpaceError::PointDimension {
                expected,
                got: v.len(),
            });
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(SpaceError::NonUnit { norm });
        }
        Ok(())
    }

    /// Geodesic distance in radians, in [0, π].
    ///
    /// Spheres use arccos⟨x,y⟩; projective spaces use
    /// arccos(2|⟨x,y⟩_F|² − 1) with the inner product of the base field, so
    /// that the diameter is π and the measure density matches (a, b).
    pub fn distance(&self, x: &PointRepr, y: &PointRepr) -> Result<f64, SpaceError> {
        if x.repr_name() != y.repr_name() {
            return Err(SpaceError::MixedRepresentations {
                x: x.repr_name(),
                y: y.repr_name(),
            });
        }
        self.validate_point(x)?;
        self.validate_point(y)?;
        match (x, y) {
            (PointRepr::MatrixIndex(i), PointRepr::MatrixIndex(j)) => {
                Ok(self.matrix.as_ref().unwrap().get(*i, *j))
            }
            _ => {
                let xv = x.coords().unwrap();
                let yv = y.coords().unwrap();
                Ok(self.cos_distance_unchecked(xv, yv).acos())
            }
        }
    }

    /// cos of the geodesic distance between two coordinate slices, without
    /// validation. Hot-loop primitive: no trig round trip for vector models.
    pub(crate) fn cos_distance_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let c = match self.kind {
            SpaceKind::Sphere { .. } => dot(x, y),
            SpaceKind::ProjReal { .. } => {
                let ip = dot(x, y);
                2.0 * ip * ip - 1.0
            }
            SpaceKind::ProjComplex { .. } => {
                // ⟨x,y⟩ = Σ conj(x_i) y_i over ℂ
                let (mut re, mut im) = (0.0, 0.0);
                for (xc, yc) in x.chunks_exact(2).zip(y.chunks_exact(2)) {
                    re += xc[0] * yc[0] + xc[1] * yc[1];
                    im += xc[0] * yc[1] - xc[1] * yc[0];
                }
                2.0 * (re * re + im * im) - 1.0
            }
            SpaceKind::ProjQuaternion { .. } => {
                // ⟨x,y⟩ = Σ conj(x_i) y_i over ℍ
                let mut q = [0.0; 4];
                for (xq, yq) in x.chunks_exact(4).zip(y.chunks_exact(4)) {
                    let p = quat_mul(quat_conj(xq), [yq[0], yq[1], yq[2], yq[3]]);
                    for k in 0..4 {
                        q[k] += p[k];
                    }
                }
                let norm2 = q.iter().map(|v| v * v).sum::<f64>();
                2.0 * norm2 - 1.0
            }
            SpaceKind::ProjOctonion | SpaceKind::Abstract { .. } => {
                unreachable!("no vector model")
            }
        };
        c.clamp(-1.0, 1.0)
    }

    /// Radial density A(r) of the normalized measure: the distance from a
    /// fixed point of a uniform random point has density A on [0, π].
    pub fn radial_density(&self, r: f64) -> Result<f64, SpaceError> {
        check_radius(r)?;
        let p = &self.params;
        let h = 0.5 * r;
        Ok(p.c_ab * h.sin().powf(2.0 * p.a + 1.0) * h.cos().powf(2.0 * p.b + 1.0))
    }

    /// Normalized volume μ(B_r) of a geodesic ball, via the regularized
    /// incomplete beta function I_{sin²(r/2)}(a+1, b+1).
    pub fn ball_volume(&self, r: f64) -> Result<f64, SpaceError> {
        check_radius(r)?;
        Ok(ball_volume_params(&self.params, r))
    }
}

/// Ball volume from parameters alone (no point model needed).
pub fn ball_volume_params(p: &SpaceParams, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r >= std::f64::consts::PI {
        return 1.0;
    }
    let s = (0.5 * r).sin();
    beta_reg(p.a + 1.0, p.b + 1.0, s * s)
}

fn check_radius(r: f64) -> Result<(), SpaceError> {
    if !(0.0..=std::f64::consts::PI).contains(&r) {
        return Err(SpaceError::RadiusOutOfRange { r });
    }
    Ok(())
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn quat_conj(q: &[f64]) -> [f64; 4] {
    [q[0], -q[1], -q[2], -q[3]]
}

fn quat_mul(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sphere(n: u32) -> Space {
        Space::new(SpaceKind::Sphere { n }).unwrap()
    }

    #[test]
    fn params_table() {
        let p = space_params(SpaceKind::Sphere { n: 2 }).unwrap();
        assert_eq!((p.d, p.d0), (2, 2));
        assert_eq!((p.a, p.b), (0.0, 0.0));
        assert!((p.c_ab - 1.0).abs() < 1e-14);

        let p = space_params(SpaceKind::ProjComplex { n: 2 }).unwrap();
        assert_eq!((p.d, p.d0), (4, 2));
        assert_eq!((p.a, p.b), (1.0, 0.0));
        assert!((p.c_ab - 2.0).abs() < 1e-13);

        let p = space_params(SpaceKind::ProjOctonion).unwrap();
        assert_eq!((p.d, p.d0), (16, 8));
        assert_eq!((p.a, p.b), (7.0, 3.0));
        // c(7,3) = Γ(12)/(Γ(8)Γ(4)) = 11!/(7!·3!)
        assert!((p.c_ab - 1320.0).abs() / 1320.0 < 1e-13);
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(space_params(SpaceKind::Sphere { n: 0 }).is_err());
        assert!(space_params(SpaceKind::ProjReal { n: 1 }).is_err());
        assert!(space_params(SpaceKind::ProjComplex { n: 1 }).is_err());
        assert!(space_params(SpaceKind::ProjQuaternion { n: 0 }).is_err());
        assert!(space_params(SpaceKind::Abstract { d: 0, d0: 1 }).is_err());
    }

    #[test]
    fn sphere_distance_antipodal_and_self() {
        let s2 = sphere(2);
        let north = PointRepr::SphereVec(vec![0.0, 0.0, 1.0]);
        let south = PointRepr::SphereVec(vec![0.0, 0.0, -1.0]);
        assert!((s2.distance(&north, &south).unwrap() - PI).abs() < 1e-15);
        assert_eq!(s2.distance(&north, &north).unwrap(), 0.0);
    }

    #[test]
    fn projective_orthogonal_lines_are_antipodal() {
        let cp2 = Space::new(SpaceKind::ProjComplex { n: 2 }).unwrap();
        let e1 = PointRepr::ProjVec(vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let e2 = PointRepr::ProjVec(vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!((cp2.distance(&e1, &e2).unwrap() - PI).abs() < 1e-15);
        // same line under a unit scalar: distance 0
        let e1_rot = PointRepr::ProjVec(vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0]); // i·e1
        assert!(cp2.distance(&e1, &e1_rot).unwrap() < 1e-7);
    }

    #[test]
    fn quaternionic_distance_scalar_invariance() {
        let hp2 = Space::new(SpaceKind::ProjQuaternion { n: 2 }).unwrap();
        // e1 and e1·q for a unit quaternion q represent the same line
        let q = [0.5f64, -0.5, 0.5, 0.5];
        let mut x = vec![0.0; 12];
        x[0] = 1.0;
        let mut y = vec![0.0; 12];
        y[..4].copy_from_slice(&q);
        let (x, y) = (PointRepr::ProjVec(x), PointRepr::ProjVec(y));
        assert!(hp2.distance(&x, &y).unwrap() < 1e-7);
        let mut z = vec![0.0; 12];
        z[4] = 1.0; // e2: orthogonal line
        let z = PointRepr::ProjVec(z);
        assert!((hp2.distance(&x, &z).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn distance_rejects_mixed_and_nonunit() {
        let s2 = sphere(2);
        let ok = PointRepr::SphereVec(vec![1.0, 0.0, 0.0]);
        let long = PointRepr::SphereVec(vec![1.0, 1.0, 0.0]);
        let proj = PointRepr::ProjVec(vec![1.0, 0.0, 0.0]);
        assert!(matches!(
            s2.distance(&ok, &long),
            Err(SpaceError::NonUnit { .. })
        ));
        assert!(matches!(
            s2.distance(&ok, &proj),
            Err(SpaceError::MixedRepresentations { .. })
        ));
    }

    #[test]
    fn radial_density_values() {
        let s2 = sphere(2);
        assert!((s2.radial_density(PI / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(s2.radial_density(0.0).unwrap(), 0.0);
        let cp2 = Space::new(SpaceKind::ProjComplex { n: 2 }).unwrap();
        // cos(π/2) rounds to ~6e-17 rather than 0, so "zero" means ~1e-16
        assert!(cp2.radial_density(PI).unwrap().abs() < 1e-15);
        assert!(s2.radial_density(3.5).is_err());
        assert!(s2.radial_density(-0.1).is_err());
    }

    #[test]
    fn ball_volume_closed_form_on_s2() {
        let s2 = sphere(2);
        // μ(B_r) = sin²(r/2) on S²
        assert!((s2.ball_volume(PI / 2.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((s2.ball_volume(PI / 3.0).unwrap() - 0.25).abs() < 1e-14);
        assert_eq!(s2.ball_volume(PI).unwrap(), 1.0);
        assert_eq!(s2.ball_volume(0.0).unwrap(), 0.0);
    }

    #[test]
    fn ball_volume_monotone_all_families() {
        for kind in [
            SpaceKind::Sphere { n: 3 },
            SpaceKind::ProjReal { n: 2 },
            SpaceKind::ProjComplex { n: 2 },
            SpaceKind::ProjQuaternion { n: 2 },
            SpaceKind::ProjOctonion,
        ] {
            let sp = Space::new(kind).unwrap();
            let mut prev = 0.0;
            for i in 0..=100 {
                let r = PI * i as f64 / 100.0;
                let v = sp.ball_volume(r).unwrap();
                assert!(v >= prev - 1e-15, "{kind:?} not monotone at r={r}");
                prev = v;
            }
            assert!((prev - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn distance_matrix_validation() {
        let m = DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(m.size(), 2);
        assert!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![0.9, 0.0]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.1]]).is_err());
        assert!(DistanceMatrix::new(vec![vec![0.0, 4.0], vec![4.0, 0.0]]).is_err());
    }

    #[test]
    fn distance_matrix_parse_text_and_json() {
        let t = DistanceMatrix::parse("0 1.5\n1.5 0\n").unwrap();
        assert_eq!(t.get(0, 1), 1.5);
        let j = DistanceMatrix::parse("[[0, 1.5], [1.5, 0]]").unwrap();
        assert_eq!(j, t);
        assert!(DistanceMatrix::parse("0 x\nx 0").is_err());
    }

    #[test]
    fn matrix_index_distance() {
        let m = DistanceMatrix::parse("0 1 2\n1 0 1\n2 1 0").unwrap();
        let sp = Space::with_distance_matrix(SpaceKind::ProjOctonion, m).unwrap();
        let (p0, p2) = (PointRepr::MatrixIndex(0), PointRepr::MatrixIndex(2));
        assert_eq!(sp.distance(&p0, &p2).unwrap(), 2.0);
        let oob = PointRepr::MatrixIndex(3);
        assert!(matches!(
            sp.distance(&p0, &oob),
            Err(SpaceError::IndexOutOfBounds { .. })
        ));
        // octonionic space without a matrix cannot host points at all
        let bare = Space::new(SpaceKind::ProjOctonion).unwrap();
        assert!(matches!(
            bare.validate_point(&p0),
            Err(SpaceError::NoDistanceMatrix)
        ));
    }
}
