//! Desk-scale experiment harness: scaling studies over N, radius sweeps, and
//! bad-radius scans.
//!
//! Studies stay within documented caps (N ≤ 10⁴, truncation degree ≤ 10⁵,
//! ≤ 64 seeds per N) so the full acceptance battery runs in minutes. Every
//! cell is keyed deterministically: the point-set seed of cell (N, i) is a
//! splitmix64 chain over (base_seed, N, i), so reruns and resumed runs agree
//! bit for bit.

use crate::discrepancy::{gram_spectrum, value_from_gram, DiscrepancyError};
use crate::pointsets::{generate, GeneratorKind, GeneratorSpec, PointSetError, WeightedPointSet};
use crate::spaces::{Space, SpaceError, SpaceKind, SpaceParams};
use crate::spectral::{bad_radius_score_from, BallCoefficientTable, DEFAULT_BAD_RADIUS_M0};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

pub const DESK_N_CAP: usize = 10_000;
pub const DESK_DEGREE_CAP: usize = 100_000;
pub const DESK_SEEDS_CAP: u32 = 64;

/// Default exclusion width at the π end for radius sweeps.
pub const DEFAULT_SWEEP_EPS: f64 = 0.3;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("bad study spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    PointSet(#[from] PointSetError),
    #[error(transparent)]
    Discrepancy(#[from] DiscrepancyError),
}

/// Least-squares line through (ln x, ln y).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

/// OLS fit of log y against log x; `slope_stderr` is the usual residual-based
/// standard error (NaN with fewer than 3 points).
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> FitResult {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points to fit");
    let lx: Vec<f64> = xs.iter().map(|&x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(&x, &y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let slope_stderr = if lx.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    FitResult {
        slope,
        intercept,
        slope_stderr,
    }
}

/// Specification of a scaling study: discrepancy (one radius, or the sum over
/// two) of generated point sets over an increasing N grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingStudySpec {
    pub space: SpaceKind,
    pub generator: GeneratorKind,
    pub n_grid: Vec<usize>,
    /// One radius, or two whose discrepancies are summed (the lower-bound
    /// quantity uses (r, 2r) with r < π/2).
    pub radii: Vec<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: u32,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_study_degree")]
    pub max_degree: usize,
    /// Optional design-file path for the tdesign generator.
    #[serde(default)]
    pub path: Option<String>,
}

fn default_seeds() -> u32 {
    8
}

fn default_study_degree() -> usize {
    2048
}

/// One computed cell of a study.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CellResult {
    pub n: usize,
    pub seed_index: u32,
    pub cell_seed: u64,
    /// Per-radius discrepancy values, same order as the spec radii.
    pub values: [f64; 2],
    /// Sum over the study radii.
    pub total: f64,
    pub tail_bound: f64,
}

/// Study output: cells, per-N means, log-log fits (full grid and upper half),
/// and the lower-bound constant N^{1+1/d}·mean.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingStudy {
    pub spec: ScalingStudySpec,
    pub results: Vec<CellResult>,
    pub n_values: Vec<usize>,
    pub means: Vec<f64>,
    pub fit: FitResult,
    pub fit_upper: FitResult,
    pub bound_constant: Vec<f64>,
    pub bound_constant_min: f64,
    /// Log-log slope of the bound constant against N (flat or positive when
    /// the lower bound is sharp).
    pub bound_trend_slope: f64,
}

fn validate_study(spec: &ScalingStudySpec) -> Result<(), ExperimentError> {
    if spec.n_grid.len() < 3 || spec.n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::BadSpec(
            "n_grid must be strictly increasing with at least 3 values".into(),
        ));
    }
    if spec.n_grid.last().copied().unwrap_or(0) > DESK_N_CAP {
        return Err(ExperimentError::BadSpec(format!(
            "N exceeds desk-scale cap {DESK_N_CAP}"
        )));
    }
    if spec.max_degree == 0 || spec.max_degree > DESK_DEGREE_CAP {
        return Err(ExperimentError::BadSpec(format!(
            "max_degree must be in 1..={DESK_DEGREE_CAP}"
        )));
    }
    if spec.seeds == 0 || spec.seeds > DESK_SEEDS_CAP {
        return Err(ExperimentError::BadSpec(format!(
            "seeds must be in 1..={DESK_SEEDS_CAP}"
        )));
    }
    match spec.radii.len() {
        1 => {
            if !(0.0..=PI).contains(&spec.radii[0]) {
                return Err(ExperimentError::BadSpec("radius outside [0, π]".into()));
            }
        }
        2 => {
            for &r in &spec.radii {
                if !(0.0 < r && r <= PI) {
                    return Err(ExperimentError::BadSpec(
                        "two-radius mode needs radii in (0, π]".into(),
                    ));
                }
            }
            if spec.radii[0] > PI / 2.0 {
                return Err(ExperimentError::BadSpec(
                    "two-radius mode needs the base radius in (0, π/2]".into(),
                ));
            }
        }
        _ => {
            return Err(ExperimentError::BadSpec(
                "radii must hold one or two values".into(),
            ));
        }
    }
    Ok(())
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Deterministic seed of study cell (N, i).
pub fn cell_seed(base_seed: u64, n: usize, seed_index: u32) -> u64 {
    splitmix64(splitmix64(base_seed ^ splitmix64(n as u64)) ^ seed_index as u64)
}

fn generator_is_deterministic(kind: GeneratorKind) -> bool {
    !matches!(kind, GeneratorKind::UniformIid)
}

/// Runs a scaling study: spectral discrepancies over the (N, seed) grid, the
/// log-log fit of the per-N means, and the bound-constant track.
pub fn run_scaling(spec: &ScalingStudySpec) -> Result<ScalingStudy, ExperimentError> {
    validate_study(spec)?;
    let space = Space::new(spec.space)?;
    let effective_seeds = if generator_is_deterministic(spec.generator) {
        1
    } else {
        spec.seeds
    };

    let mut results = Vec::new();
    for &n in &spec.n_grid {
        for seed_index in 0..effective_seeds {
            let seed = cell_seed(spec.base_seed, n, seed_index);
            let ps = generate(
                &space,
                &GeneratorSpec {
                    kind: spec.generator,
                    n,
                    seed,
                    path: spec.path.clone(),
                },
            )?;
            results.push(study_cell(&ps, spec, n, seed_index, seed));
        }
    }

    let n_values = spec.n_grid.clone();
    let means: Vec<f64> = n_values
        .iter()
        .map(|&n| {
            let cells: Vec<f64> = results
                .iter()
                .filter(|c| c.n == n)
                .map(|c| c.total)
                .collect();
            cells.iter().sum::<f64>() / cells.len() as f64
        })
        .collect();
    let ns_f: Vec<f64> = n_values.iter().map(|&n| n as f64).collect();
    let fit = fit_loglog(&ns_f, &means);
    let upper_from = n_values.len() / 2;
    let fit_upper = if n_values.len() - upper_from >= 2 {
        fit_loglog(&ns_f[upper_from..], &means[upper_from..])
    } else {
        fit
    };

    let exponent = 1.0 + 1.0 / space.params().d as f64;
    let bound_constant: Vec<f64> = ns_f
        .iter()
        .zip(&means)
        .map(|(&n, &mean)| n.powf(exponent) * mean)
        .collect();
    let bound_constant_min = bound_constant.iter().copied().fold(f64::INFINITY, f64::min);
    let bound_trend_slope = fit_loglog(&ns_f, &bound_constant).slope;

    Ok(ScalingStudy {
        spec: spec.clone(),
        results,
        n_values,
        means,
        fit,
        fit_upper,
        bound_constant,
        bound_constant_min,
        bound_trend_slope,
    })
}

// One (N, seed) cell: the Gram spectrum is computed once and reused by every
// radius of the study.
fn study_cell(
    ps: &WeightedPointSet,
    spec: &ScalingStudySpec,
    n: usize,
    seed_index: u32,
    seed: u64,
) -> CellResult {
    let params = ps.space().params();
    let gram = gram_spectrum(ps, spec.max_degree);
    let mut values = [0.0f64; 2];
    let mut tail_bound = 0.0;
    for (i, &r) in spec.radii.iter().enumerate() {
        let table = BallCoefficientTable::build(params, r, spec.max_degree);
        values[i] = value_from_gram(&gram, &table, spec.max_degree, None);
        tail_bound += table.parseval_remainder(spec.max_degree);
    }
    CellResult {
        n,
        seed_index,
        cell_seed: seed,
        values,
        total: values[0] + values[1],
        tail_bound,
    }
}

/// One row of a radius sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub value: f64,
    pub tail_bound: f64,
}

/// Radius sweep output with the sup over the grid and its N^{1+1/d} scaling.
#[derive(Debug, Clone, Serialize)]
pub struct RadiusSweep {
    pub n: usize,
    pub rows: Vec<SweepRow>,
    pub sup: f64,
    /// N^{1+1/d} · sup.
    pub scaled_sup: f64,
}

/// ‖D_r‖² of one point set over a radius grid ⊂ [0, π − eps]; the Gram
/// spectrum is shared across the whole grid.
pub fn run_radius_sweep(
    ps: &WeightedPointSet,
    r_grid: &[f64],
    max_degree: usize,
    eps: f64,
) -> Result<RadiusSweep, ExperimentError> {
    if r_grid.is_empty() {
        return Err(ExperimentError::BadSpec("empty radius grid".into()));
    }
    if max_degree == 0 || max_degree > DESK_DEGREE_CAP {
        return Err(ExperimentError::BadSpec(format!(
            "max_degree must be in 1..={DESK_DEGREE_CAP}"
        )));
    }
    for &r in r_grid {
        if !(0.0..=PI - eps).contains(&r) {
            return Err(ExperimentError::BadSpec(format!(
                "sweep radius {r} outside [0, π - {eps}]"
            )));
        }
    }
    let params = ps.space().params();
    let gram = gram_spectrum(ps, max_degree);
    let rows: Vec<SweepRow> = r_grid
        .iter()
        .map(|&r| {
            let table = BallCoefficientTable::build(params, r, max_degree);
            SweepRow {
                r,
                value: value_from_gram(&gram, &table, max_degree, None),
                tail_bound: table.parseval_remainder(max_degree),
            }
        })
        .collect();
    let sup = rows.iter().map(|row| row.value).fold(0.0, f64::max);
    let exponent = 1.0 + 1.0 / params.d as f64;
    Ok(RadiusSweep {
        n: ps.len(),
        rows,
        sup,
        scaled_sup: (ps.len() as f64).powf(exponent) * sup,
    })
}

/// One row of a bad-radius scan.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BadRadiusRow {
    pub r: f64,
    pub score: f64,
    pub flagged: bool,
}

/// Scores min_{m₀≤m≤M} m^{3/2+δ}|𝒫_{m-1}^{a+1,b+1}(r)| over a radius grid,
/// flagging radii whose score falls below `threshold` (candidates for the
/// exceptional set of the single-radius bound).
pub fn run_bad_radius_scan(
    params: &SpaceParams,
    r_grid: &[f64],
    m_max: u32,
    delta: f64,
    threshold: f64,
) -> Result<Vec<BadRadiusRow>, ExperimentError> {
    if r_grid.iter().any(|&r| !(0.0 < r && r < PI)) {
        return Err(ExperimentError::BadSpec(
            "bad-radius grid must lie in (0, π)".into(),
        ));
    }
    if delta <= 0.0 {
        return Err(ExperimentError::BadSpec("delta must be positive".into()));
    }
    Ok(r_grid
        .iter()
        .map(|&r| {
            let score = bad_radius_score_from(params, r, DEFAULT_BAD_RADIUS_M0, m_max, delta);
            BadRadiusRow {
                r,
                score,
                flagged: score < threshold,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_exact_power_law() {
        let xs = [32.0f64, 64.0, 128.0, 256.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-1.5)).collect();
        let fit = fit_loglog(&xs, &ys);
        assert!((fit.slope + 1.5).abs() < 1e-12);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-12);
    }

    #[test]
    fn study_spec_validation() {
        let base = ScalingStudySpec {
            space: SpaceKind::Sphere { n: 2 },
            generator: GeneratorKind::UniformIid,
            n_grid: vec![8, 16, 32],
            radii: vec![1.0],
            seeds: 2,
            base_seed: 0,
            max_degree: 64,
            path: None,
        };
        assert!(validate_study(&base).is_ok());
        let mut bad = base.clone();
        bad.n_grid = vec![8, 8, 16];
        assert!(validate_study(&bad).is_err());
        let mut bad = base.clone();
        bad.radii = vec![];
        assert!(validate_study(&bad).is_err());
        let mut bad = base.clone();
        bad.radii = vec![2.0, 4.0]; // base radius beyond π/2
        assert!(validate_study(&bad).is_err());
        let mut bad = base;
        bad.n_grid = vec![8, 16, 20_000];
        assert!(validate_study(&bad).is_err());
    }

    #[test]
    fn cell_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for n in [32usize, 64, 128] {
            for i in 0..16u32 {
                assert!(seen.insert(cell_seed(7, n, i)));
            }
        }
    }

    #[test]
    fn tiny_iid_study_runs() {
        let spec = ScalingStudySpec {
            space: SpaceKind::Sphere { n: 2 },
            generator: GeneratorKind::UniformIid,
            n_grid: vec![8, 16, 32, 64],
            radii: vec![1.0],
            seeds: 4,
            base_seed: 1,
            max_degree: 256,
            path: None,
        };
        let study = run_scaling(&spec).unwrap();
        assert_eq!(study.results.len(), 16);
        assert!(study.bound_constant_min > 0.0);
        // i.i.d. means decay like 1/N
        assert!((study.fit.slope + 1.0).abs() < 0.35, "slope {}", study.fit.slope);
        // two-radius value dominates single-radius at the same base r
        let spec2 = ScalingStudySpec {
            radii: vec![1.0, 2.0],
            ..spec
        };
        let study2 = run_scaling(&spec2).unwrap();
        for (a, c) in study2.results.iter().zip(&study.results) {
            assert_eq!(a.cell_seed, c.cell_seed);
            assert!(a.total >= c.total);
        }
    }

    #[test]
    fn sweep_rejects_bad_grid() {
        let ps = crate::pointsets::fibonacci_sphere(16).unwrap();
        assert!(run_radius_sweep(&ps, &[3.1], 64, DEFAULT_SWEEP_EPS).is_err());
        assert!(run_radius_sweep(&ps, &[], 64, DEFAULT_SWEEP_EPS).is_err());
        let sweep = run_radius_sweep(&ps, &[0.5, 1.0, 2.0], 128, DEFAULT_SWEEP_EPS).unwrap();
        assert_eq!(sweep.rows.len(), 3);
        assert!(sweep.sup >= sweep.rows[0].value);
    }

    #[test]
    fn bad_radius_scan_shapes() {
        let params = crate::spaces::space_params(SpaceKind::Sphere { n: 2 }).unwrap();
        let rows =
            run_bad_radius_scan(&params, &[0.5, 1.0, 1.5], 200, 0.1, 1e-8).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|row| row.score > 0.0));
        assert!(run_bad_radius_scan(&params, &[0.0], 200, 0.1, 1e-8).is_err());
    }
}
