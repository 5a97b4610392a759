//! Weighted point sets: validated containers, generators, and file formats.
//!
//! Randomness is reproducible across platforms and thread counts: everything
//! is drawn from ChaCha8 streams keyed by an explicit 64-bit seed, one stream
//! per point (stream id = point index), with Gaussians produced by Box–Muller
//! from consecutive uniform doubles (two uniforms per pair of coordinates,
//! coordinates filled in order).

use crate::spaces::{PointRepr, Space, SpaceError, SpaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use thiserror::Error;

/// Tolerance on Σ weights = 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PointSetError {
    #[error("point set must contain at least one point")]
    Empty,
    #[error("{points} points but {weights} weights")]
    LengthMismatch { points: usize, weights: usize },
    #[error("weight {value} at index {index} is not positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error(
        "weights sum to {sum}, not 1 (off by {excess:e}); weights are never renormalized \
         silently — divide each weight by {sum} if rescaling is intended"
    )]
    WeightSum { sum: f64, excess: f64 },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{op} is not supported on {family}: no vector model / sampler")]
    Unsupported { op: &'static str, family: String },
    #[error("generator {generator} requires {space}")]
    GeneratorSpaceMismatch {
        generator: &'static str,
        space: &'static str,
    },
    #[error("file {path}: {reason}")]
    Format { path: String, reason: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// N points with positive weights summing to one, bound to their space.
#[derive(Debug, Clone)]
pub struct WeightedPointSet {
    space: Space,
    points: Vec<PointRepr>,
    weights: Vec<f64>,
}

impl WeightedPointSet {
    /// Validates lengths, point membership, weight positivity and the weight
    /// sum, then takes ownership.
    pub fn new(
        space: Space,
        points: Vec<PointRepr>,
        weights: Vec<f64>,
    ) -> Result<Self, PointSetError> {
        if points.is_empty() {
            return Err(PointSetError::Empty);
        }
        if points.len() != weights.len() {
            return Err(PointSetError::LengthMismatch {
                points: points.len(),
                weights: weights.len(),
            });
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(PointSetError::NonPositiveWeight { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(PointSetError::WeightSum {
                sum,
                excess: sum - 1.0,
            });
        }
        for p in &points {
            space.validate_point(p)?;
        }
        Ok(WeightedPointSet {
            space,
            points,
            weights,
        })
    }

    pub fn equal_weights(space: Space, points: Vec<PointRepr>) -> Result<Self, PointSetError> {
        let n = points.len();
        Self::new(space, points, vec![1.0 / n as f64; n.max(1)])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PointRepr] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Replicates the last point with its weight split evenly until the set
    /// has `n_target` entries. The associated discrepancy is unchanged.
    pub fn duplicate_pad(&self, n_target: usize) -> Result<Self, PointSetError> {
        let n = self.len();
        if n_target <= n {
            return Ok(self.clone());
        }
        let copies = n_target - n + 1;
        let mut points = self.points.clone();
        let mut weights = self.weights[..n - 1].to_vec();
        let split = self.weights[n - 1] / copies as f64;
        for _ in 0..copies - 1 {
            points.push(self.points[n - 1].clone());
        }
        weights.extend(std::iter::repeat(split).take(copies));
        Self::new(self.space.clone(), points, weights)
    }
}

/// Point-set generators understood by the experiment harness and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// i.i.d. uniform points (Gaussian projection), equal weights.
    #[serde(rename = "uniform")]
    UniformIid,
    /// Golden-angle spiral on S², equal weights.
    Fibonacci,
    /// Equal-weight design loaded from a text file.
    #[serde(rename = "tdesign")]
    TDesignFile,
    /// All rows of an attached distance matrix, equal weights.
    Matrix,
}

/// A generator request: kind, point count, seed, and (for file-backed kinds)
/// the path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub path: Option<String>,
}

/// Runs a generator against a space.
pub fn generate(space: &Space, spec: &GeneratorSpec) -> Result<WeightedPointSet, PointSetError> {
    match spec.kind {
        GeneratorKind::UniformIid => sample_uniform(space, spec.n, spec.seed),
        GeneratorKind::Fibonacci => {
            if space.kind() != (SpaceKind::Sphere { n: 2 }) {
                return Err(PointSetError::GeneratorSpaceMismatch {
                    generator: "fibonacci",
                    space: "the sphere S²",
                });
            }
            fibonacci_sphere(spec.n)
        }
        GeneratorKind::TDesignFile => {
            let path = spec.path.as_deref().ok_or_else(|| PointSetError::Format {
                path: "<missing>".into(),
                reason: "tdesign generator needs a path".into(),
            })?;
            load_tdesign(Path::new(path), space.clone())
        }
        GeneratorKind::Matrix => {
            let m = space
                .distance_matrix()
                .ok_or(PointSetError::Unsupported {
                    op: "matrix generator",
                    family: space.kind().family_name().into(),
                })?;
            let points = (0..m.size()).map(PointRepr::MatrixIndex).collect();
            WeightedPointSet::equal_weights(space.clone(), points)
        }
    }
}

/// N i.i.d. uniform points with equal weights, deterministic per seed.
///
/// Spheres: normalized standard Gaussian vectors in ℝ^{d+1}. Projective
/// models: normalized Gaussian vectors over the field (every real coordinate
/// i.i.d. Gaussian), whose projection is the invariant measure.
pub fn sample_uniform(space: &Space, n: usize, seed: u64) -> Result<WeightedPointSet, PointSetError> {
    let len = space.kind().vector_len().ok_or(PointSetError::Unsupported {
        op: "uniform sampling",
        family: space.kind().family_name().into(),
    })?;
    if n == 0 {
        return Err(PointSetError::Empty);
    }
    let sphere = matches!(space.kind(), SpaceKind::Sphere { .. });
    let points = (0..n)
        .map(|j| {
            let mut rng = point_stream(seed, j as u64);
            let v = gaussian_unit_vector(&mut rng, len);
            if sphere {
                PointRepr::SphereVec(v)
            } else {
                PointRepr::ProjVec(v)
            }
        })
        .collect();
    WeightedPointSet::equal_weights(space.clone(), points)
}

/// One ChaCha8 stream per point: base seed selects the key, the stream id is
/// the point index.
pub(crate) fn point_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard normal pair by Box–Muller from two consecutive uniforms.
fn box_muller<R: Rng>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
    let u2: f64 = rng.random();
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = TAU * u2;
    (radius * angle.cos(), radius * angle.sin())
}

pub(crate) fn gaussian_unit_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let mut v = Vec::with_capacity(len);
        while v.len() < len {
            let (z0, z1) = box_muller(rng);
            v.push(z0);
            if v.len() < len {
                v.push(z1);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for x in &mut v {
                *x /= norm;
            }
            return v;
        }
        // astronomically unlikely near-zero draw: redraw from the same stream
    }
}

/// Golden-angle spiral on S²: z_j = 1 − (2j+1)/N, azimuth 2πj·φ⁻¹ (mod 2π),
/// equal weights.
pub fn fibonacci_sphere(n: usize) -> Result<WeightedPointSet, PointSetError> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9; // 1/φ = φ - 1
    if n == 0 {
        return Err(PointSetError::Empty);
    }
    let space = Space::new(SpaceKind::Sphere { n: 2 }).expect("S²");
    let points = (0..n)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / n as f64;
            let az = TAU * (j as f64 * INV_PHI).fract();
            let rho = (1.0 - z * z).max(0.0).sqrt();
            PointRepr::SphereVec(vec![rho * az.cos(), rho * az.sin(), z])
        })
        .collect();
    WeightedPointSet::equal_weights(space, points)
}

// ── file formats ────────────────────────────────────────────────────────

#[derive(Serialize, Deserialize)]
struct PointSetFile {
    space: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<f64>>>,
    weights: Vec<f64>,
}

/// Serializes to the native JSON format
/// `{space: {family, ...}, points | matrix, weights}`, full float precision.
pub fn to_json(ps: &WeightedPointSet) -> String {
    let (points, matrix) = match ps.space().distance_matrix() {
        Some(m) if ps.points.iter().all(|p| matches!(p, PointRepr::MatrixIndex(_))) => {
            let rows = (0..m.size())
                .map(|i| (0..m.size()).map(|j| m.get(i, j)).collect())
                .collect();
            (None, Some(rows))
        }
        _ => (
            Some(
                ps.points
                    .iter()
                    .map(|p| match p {
                        PointRepr::SphereVec(v) | PointRepr::ProjVec(v) => v.clone(),
                        PointRepr::MatrixIndex(_) => unreachable!("matrix handled above"),
                    })
                    .collect(),
            ),
            None,
        ),
    };
    serde_json::to_string_pretty(&PointSetFile {
        space: ps.space.kind(),
        points,
        matrix,
        weights: ps.weights.clone(),
    })
    .expect("pointset serialization")
}

/// Parses the native JSON format; weight-sum violations are rejected, never
/// repaired.
pub fn from_json(text: &str, origin: &str) -> Result<WeightedPointSet, PointSetError> {
    let file: PointSetFile = serde_json::from_str(text).map_err(|e| PointSetError::Format {
        path: origin.into(),
        reason: e.to_string(),
    })?;
    let sphere = matches!(file.space, SpaceKind::Sphere { .. });
    match (file.points, file.matrix) {
        (Some(points), None) => {
            let space = Space::new(file.space)?;
            let points = points
                .into_iter()
                .map(|v| {
                    if sphere {
                        PointRepr::SphereVec(v)
                    } else {
                        PointRepr::ProjVec(v)
                    }
                })
                .collect();
            WeightedPointSet::new(space, points, file.weights)
        }
        (None, Some(rows)) => {
            let matrix = crate::spaces::DistanceMatrix::new(rows)?;
            let n = matrix.size();
            let space = Space::with_distance_matrix(file.space, matrix)?;
            let points = (0..n).map(PointRepr::MatrixIndex).collect();
            WeightedPointSet::new(space, points, file.weights)
        }
        (Some(_), Some(_)) => Err(PointSetError::Format {
            path: origin.into(),
            reason: "both points and matrix present".into(),
        }),
        (None, None) => Err(PointSetError::Format {
            path: origin.into(),
            reason: "neither points nor matrix present".into(),
        }),
    }
}

pub fn save_pointset(ps: &WeightedPointSet, path: &Path) -> Result<(), PointSetError> {
    fs::write(path, to_json(ps)).map_err(|source| PointSetError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_pointset(path: &Path) -> Result<WeightedPointSet, PointSetError> {
    let text = fs::read_to_string(path).map_err(|source| PointSetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text, &path.display().to_string())
}

/// Loads a design file: d+1 whitespace-separated floats per line, unit
/// vectors on S^d, equal weights.
pub fn load_tdesign(path: &Path, space: Space) -> Result<WeightedPointSet, PointSetError> {
    let SpaceKind::Sphere { .. } = space.kind() else {
        return Err(PointSetError::GeneratorSpaceMismatch {
            generator: "tdesign",
            space: "a sphere S^d",
        });
    };
    let text = fs::read_to_string(path).map_err(|source| PointSetError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tdesign(&text, space, &path.display().to_string())
}

pub fn parse_tdesign(
    text: &str,
    space: Space,
    origin: &str,
) -> Result<WeightedPointSet, PointSetError> {
    let dim = space.kind().vector_len().expect("sphere");
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Vec<f64> = line
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|e| PointSetError::Format {
                    path: origin.into(),
                    reason: format!("line {}: bad number {t:?}: {e}", lineno + 1),
                })
            })
            .collect::<Result<_, _>>()?;
        if coords.len() != dim {
            return Err(PointSetError::Format {
                path: origin.into(),
                reason: format!(
                    "line {}: {} coordinates, expected {dim}",
                    lineno + 1,
                    coords.len()
                ),
            });
        }
        points.push(PointRepr::SphereVec(coords));
    }
    if points.is_empty() {
        return Err(PointSetError::Format {
            path: origin.into(),
            reason: "no points".into(),
        });
    }
    WeightedPointSet::equal_weights(space, points)
}

/// Writes the design text format (only meaningful for equal-weight sphere sets).
pub fn write_tdesign(ps: &WeightedPointSet, path: &Path) -> Result<(), PointSetError> {
    let mut out = String::new();
    for p in ps.points() {
        let PointRepr::SphereVec(v) = p else {
            return Err(PointSetError::Unsupported {
                op: "design text export",
                family: ps.space().kind().family_name().into(),
            });
        };
        let line: Vec<String> = v.iter().map(|x| format!("{x:.17e}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| PointSetError::Io {
        path: path.display().to_string(),
        source,
    })
}
