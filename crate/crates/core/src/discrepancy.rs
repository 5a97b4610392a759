//! The discrepancy engine: Gram spectra, the spectral L² ball discrepancy
//! with rigorous truncation control, a Monte Carlo oracle,
//! Cassels–Montgomery sums, and cubature-strength certification.
//!
//! The spectral value of a weighted point set at radius r is
//!
//! ```text
//! ‖D_r‖² = Σ_{m≥1} S_m c_m(r)² / d_m²,
//! S_m = Σ_{j,k} a_j a_k Z^m(ρ(x_j, x_k)) ≥ 0,
//! ```
//!
//! truncated at degree M with the omitted mass bounded by S_m ≤ d_m and the
//! Parseval identity: tail ≤ V(1−V) − Σ_{m≤M} c_m²/d_m, an exactly
//! computable quantity.
//!
//! The Gram spectrum is the expensive part: O(N²·M). Pairs are swept in
//! fixed-size blocks, each block runs the Jacobi recurrence incrementally
//! across m for its pairs (constant memory per pair), and block results are
//! reduced in block order, so output is identical regardless of thread count.

use crate::pointsets::{gaussian_unit_vector, WeightedPointSet};
use crate::spaces::{PointRepr, SpaceError, SpaceParams};
use crate::specfun::{jacobi_p1, jacobi_recurrence_coefficients};
use crate::spectral::{eigen_dim, zonal_norm_ratio, BallCoefficientTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::{self, Write};
use thiserror::Error;

/// Pairs per recurrence block in the Gram kernel. Part of the determinism
/// contract: results are bit-stable for a fixed block size.
pub const GRAM_BLOCK_PAIRS: usize = 1024;

/// Samples per Monte Carlo block (one RNG stream per block).
pub const MC_BLOCK_SAMPLES: usize = 16384;

/// Monte Carlo center streams live above point-generation streams.
const MC_STREAM_BASE: u64 = 1 << 32;

#[derive(Debug, Error)]
pub enum DiscrepancyError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(
        "tolerance {tol:e} unreachable within degree cap {cap}: best tail bound {best:e}",
        tol = .0.tol, cap = .0.cap, best = .0.report.tail_bound
    )]
    TolUnreachable(Box<TolUnreachable>),
    #[error("Monte Carlo needs at least 1000 samples, got {samples}")]
    TooFewSamples { samples: usize },
    #[error("no sampler for {family}: Monte Carlo unsupported")]
    NoSampler { family: String },
}

/// Carried by [`DiscrepancyError::TolUnreachable`]: the best report the cap
/// allowed, never silently discarded.
#[derive(Debug)]
pub struct TolUnreachable {
    pub tol: f64,
    pub cap: usize,
    pub report: DiscrepancyReport,
}

/// The nonnegative sequence S_m = Σ_ℓ |Σ_j a_j Y_m^ℓ(x_j)|², m = 1..=M,
/// computed through zonal kernels.
#[derive(Debug, Clone, Serialize)]
pub struct GramSpectrum {
    s: Vec<f64>,
}

impl GramSpectrum {
    /// S_m for m in 1..=max_degree.
    pub fn values(&self) -> &[f64] {
        &self.s
    }

    pub fn max_degree(&self) -> usize {
        self.s.len()
    }

    /// S_m (1-based level index).
    pub fn s(&self, m: usize) -> f64 {
        self.s[m - 1]
    }

    /// CSV rows (m, S_m, d_m).
    pub fn write_csv<W: Write>(&self, params: &SpaceParams, mut out: W) -> io::Result<()> {
        writeln!(out, "m,S_m,d_m")?;
        for (i, &s) in self.s.iter().enumerate() {
            let m = (i + 1) as u32;
            writeln!(out, "{m},{s:.17e},{:.17e}", eigen_dim(params, m))?;
        }
        Ok(())
    }
}

/// Spectral discrepancy value with its truncation certificate: the true
/// value lies in [value, value + tail_bound].
#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyReport {
    pub value: f64,
    #[serde(rename = "M_used")]
    pub m_used: usize,
    pub tail_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_m: Option<Vec<f64>>,
}

/// Knobs of the adaptive spectral evaluation.
#[derive(Debug, Clone, Copy)]
pub struct DiscrepancyConfig {
    /// Target for the rigorous tail bound (absolute).
    pub tol: f64,
    /// Hard cap on the truncation degree.
    pub max_degree: usize,
    /// Record per-level contributions S_m c_m²/d_m² in the report.
    pub keep_per_m: bool,
}

impl Default for DiscrepancyConfig {
    fn default() -> Self {
        DiscrepancyConfig {
            tol: 1e-9,
            max_degree: 100_000,
            keep_per_m: false,
        }
    }
}

// ── Gram spectrum ───────────────────────────────────────────────────────

// Pair sweep state: either flat coordinates or a distance matrix.
enum PairSource<'a> {
    Coords {
        ps: &'a WeightedPointSet,
        flat: Vec<f64>,
        stride: usize,
    },
    Matrix(&'a WeightedPointSet),
}

impl PairSource<'_> {
    fn new(ps: &WeightedPointSet) -> PairSource<'_> {
        let vectors = ps
            .points()
            .iter()
            .all(|p| !matches!(p, PointRepr::MatrixIndex(_)));
        if vectors {
            let stride = ps.space().kind().vector_len().expect("vector model");
            let mut flat = Vec::with_capacity(stride * ps.len());
            for p in ps.points() {
                match p {
                    PointRepr::SphereVec(v) | PointRepr::ProjVec(v) => flat.extend_from_slice(v),
                    PointRepr::MatrixIndex(_) => unreachable!(),
                }
            }
            PairSource::Coords { ps, flat, stride }
        } else {
            PairSource::Matrix(ps)
        }
    }

    // cos ρ(x_j, x_k) and the symmetrized weight a_j a_k (doubled off the
    // diagonal), for the pairs with linear index in [start, start+xs.len()).
    // Unused tail entries are zero-weight padding.
    fn fill_block(&self, n: usize, start: usize, xs: &mut [f64], ws: &mut [f64]) {
        let n_pairs = n * (n + 1) / 2;
        let (mut j, mut k) = pair_at(n, start.min(n_pairs.saturating_sub(1)));
        for i in 0..xs.len() {
            let l = start + i;
            if l >= n_pairs {
                xs[i] = 0.0;
                ws[i] = 0.0;
                continue;
            }
            let (w, x) = match self {
                PairSource::Coords { ps, flat, stride } => {
                    let a = &flat[j * stride..(j + 1) * stride];
                    let b = &flat[k * stride..(k + 1) * stride];
                    (
                        ps.weights()[j] * ps.weights()[k],
                        ps.space().cos_distance_unchecked(a, b),
                    )
                }
                PairSource::Matrix(ps) => {
                    let (PointRepr::MatrixIndex(pj), PointRepr::MatrixIndex(pk)) =
                        (&ps.points()[j], &ps.points()[k])
                    else {
                        unreachable!("mixed point representations")
                    };
                    let matrix = ps.space().distance_matrix().expect("validated");
                    (
                        ps.weights()[j] * ps.weights()[k],
                        matrix.get(*pj, *pk).cos(),
                    )
                }
            };
            xs[i] = x;
            ws[i] = if j == k { w } else { 2.0 * w };
            k += 1;
            if k == n {
                j += 1;
                k = j;
            }
        }
    }
}

// (j, k) of the l-th pair in the row-major upper-triangular sweep
// (0,0), (0,1), ..., (0,n-1), (1,1), ...
fn pair_at(n: usize, l: usize) -> (usize, usize) {
    let row_start = |j: usize| j * (2 * n - j + 1) / 2;
    let nf = n as f64;
    let mut j = ((2.0 * nf + 1.0 - ((2.0 * nf + 1.0).powi(2) - 8.0 * l as f64).sqrt()) / 2.0)
        .max(0.0) as usize;
    while j + 1 <= n && row_start(j + 1) <= l {
        j += 1;
    }
    while row_start(j) > l {
        j -= 1;
    }
    (j, j + (l - row_start(j)))
}

// Accumulates acc[m] += Σ_i ws[i] P_m^{a,b}(xs[i]) for m = 0..=max_degree.
// Two recurrence steps per memory sweep, four independent accumulator lanes
// per level, lanes summed in a fixed order.
fn gram_block(
    xs: &[f64],
    ws: &[f64],
    a: f64,
    b: f64,
    rec: &[(f64, f64, f64)],
    acc: &mut [f64],
) {
    const LANES: usize = 8;
    let len = xs.len();
    debug_assert!(len % LANES == 0);
    let max_degree = acc.len() - 1;
    let mut prev = vec![1.0f64; len];
    let mut cur: Vec<f64> = xs.iter().map(|&x| jacobi_p1(a, b, x)).collect();
    acc[0] += lane_fold(&mut [0.0; LANES], ws.chunks_exact(LANES), |s, c| {
        for l in 0..LANES {
            s[l] += c[l];
        }
    });
    acc[1] += lane_fold(
        &mut [0.0; LANES],
        ws.chunks_exact(LANES).zip(cur.chunks_exact(LANES)),
        |s, (w, p)| {
            for l in 0..LANES {
                s[l] += w[l] * p[l];
            }
        },
    );
    let fold8 = |s: &[f64; LANES]| {
        (((s[0] + s[1]) + (s[2] + s[3])) + ((s[4] + s[5]) + (s[6] + s[7])))
    };
    let mut m = 2;
    // paired steps: (prev, cur) = (P_{m-2}, P_{m-1}) -> (P_m, P_{m+1})
    while m + 1 <= max_degree {
        let (am, bm, cm) = rec[m];
        let (an, bn, cn) = rec[m + 1];
        let mut s0 = [0.0f64; LANES];
        let mut s1 = [0.0f64; LANES];
        let iter = xs
            .chunks_exact(LANES)
            .zip(ws.chunks_exact(LANES))
            .zip(cur.chunks_exact_mut(LANES).zip(prev.chunks_exact_mut(LANES)));
        for ((x, w), (c, pv)) in iter {
            for l in 0..LANES {
                let p = (am * x[l] + bm) * c[l] + cm * pv[l];
                let q = (an * x[l] + bn) * p + cn * c[l];
                pv[l] = p;
                c[l] = q;
                s0[l] += w[l] * p;
                s1[l] += w[l] * q;
            }
        }
        acc[m] += fold8(&s0);
        acc[m + 1] += fold8(&s1);
        m += 2;
    }
    if m <= max_degree {
        let (am, bm, cm) = rec[m];
        let mut s = [0.0f64; LANES];
        let iter = xs
            .chunks_exact(LANES)
            .zip(ws.chunks_exact(LANES))
            .zip(cur.chunks_exact(LANES).zip(prev.chunks_exact(LANES)));
        for ((x, w), (c, pv)) in iter {
            for l in 0..LANES {
                let p = (am * x[l] + bm) * c[l] + cm * pv[l];
                s[l] += w[l] * p;
            }
        }
        acc[m] += fold8(&s);
    }
}

fn lane_fold<I: Iterator, F: FnMut(&mut [f64; 8], I::Item)>(
    s: &mut [f64; 8],
    iter: I,
    mut f: F,
) -> f64 {
    for item in iter {
        f(s, item);
    }
    ((s[0] + s[1]) + (s[2] + s[3])) + ((s[4] + s[5]) + (s[6] + s[7]))
}

/// Gram spectrum S_1..S_{max_degree} of a weighted point set.
///
/// Cost O(N² + N²·M/2); deterministic for a fixed block size regardless of
/// thread count. Small negative rounding residues are clamped to zero (with
/// a warning below -1e-9, which would indicate a real defect).
pub fn gram_spectrum(ps: &WeightedPointSet, max_degree: usize) -> GramSpectrum {
    assert!(max_degree >= 1);
    let params = *ps.space().params();
    let (a, b) = (params.a, params.b);
    let n = ps.len();
    let n_pairs = n * (n + 1) / 2;
    let n_blocks = n_pairs.div_ceil(GRAM_BLOCK_PAIRS);

    let mut rec = vec![(0.0, 0.0, 0.0); max_degree + 1];
    for (m, slot) in rec.iter_mut().enumerate().skip(2) {
        *slot = jacobi_recurrence_coefficients(a, b, m as u32);
    }

    let source = PairSource::new(ps);
    let mut acc = vec![0.0f64; max_degree + 1];
    // bound scratch memory at ~64 MiB per group while keeping the reduction
    // order fixed: parallel within a group, sequential across groups
    let group = (64 << 20) / ((max_degree + 1) * 8);
    let group = group.clamp(1, 256);
    for g in (0..n_blocks).step_by(group) {
        let hi = (g + group).min(n_blocks);
        let parts: Vec<Vec<f64>> = (g..hi)
            .into_par_iter()
            .map(|blk| {
                let start = blk * GRAM_BLOCK_PAIRS;
                let len = GRAM_BLOCK_PAIRS.min(n_pairs - start).div_ceil(8) * 8;
                let mut xs = vec![0.0f64; len];
                let mut ws = vec![0.0f64; len];
                source.fill_block(n, start, &mut xs, &mut ws);
                let mut part = vec![0.0f64; max_degree + 1];
                gram_block(&xs, &ws, a, b, &rec, &mut part);
                part
            })
            .collect();
        for part in parts {
            for (t, v) in acc.iter_mut().zip(part) {
                *t += v;
            }
        }
    }

    // S_m = (d_m / P_m(1)) Σ w P_m; the ratio follows its own recurrence
    let mut ratio = zonal_norm_ratio(&params, 1);
    let mut s = Vec::with_capacity(max_degree);
    let mut clamped_below = 0usize;
    for (m, &raw) in acc.iter().enumerate().skip(1) {
        let mf = m as f64;
        let val = ratio * raw;
        if val < -1e-9 {
            clamped_below += 1;
        }
        s.push(val.max(0.0));
        ratio *= (2.0 * mf + a + b + 3.0) / (2.0 * mf + a + b + 1.0) * (mf + a + b + 1.0)
            / (mf + b + 1.0);
    }
    if clamped_below > 0 {
        log::warn!(
            "gram spectrum: {clamped_below} levels below -1e-9 clamped to 0 \
             (rounding beyond the expected scale)"
        );
    }
    GramSpectrum { s }
}

// ── spectral discrepancy ────────────────────────────────────────────────

pub(crate) fn value_from_gram(
    gram: &GramSpectrum,
    table: &BallCoefficientTable,
    m_used: usize,
    per_m_out: Option<&mut Vec<f64>>,
) -> f64 {
    let contributions = gram.values()[..m_used]
        .iter()
        .zip(&table.coeffs[..m_used])
        .zip(&table.dims[..m_used])
        .map(|((&s, &c), &d)| s * (c / d) * (c / d));
    match per_m_out {
        Some(out) => {
            out.clear();
            let mut total = 0.0;
            for t in contributions {
                out.push(t);
                total += t;
            }
            total
        }
        None => contributions.sum(),
    }
}

/// Spectral L² discrepancy at radius r with the truncation degree chosen
/// adaptively so that the rigorous tail bound is at most `cfg.tol`.
///
/// If the cap `cfg.max_degree` cannot reach the tolerance, the best report is
/// returned inside [`DiscrepancyError::TolUnreachable`].
pub fn l2_discrepancy_spectral(
    ps: &WeightedPointSet,
    r: f64,
    cfg: &DiscrepancyConfig,
) -> Result<DiscrepancyReport, DiscrepancyError> {
    check_radius(r)?;
    assert!(cfg.tol > 0.0, "tolerance must be positive");
    let params = ps.space().params();
    let table = BallCoefficientTable::build(params, r, cfg.max_degree);
    // the remainder is nonincreasing in m: take the first degree that meets tol
    let m_needed = (0..=cfg.max_degree).find(|&m| table.parseval_remainder(m) <= cfg.tol);
    let m_used = m_needed.unwrap_or(cfg.max_degree);
    let report = spectral_report(ps, &table, m_used, cfg.keep_per_m);
    match m_needed {
        Some(_) => Ok(report),
        None => Err(DiscrepancyError::TolUnreachable(Box::new(TolUnreachable {
            tol: cfg.tol,
            cap: cfg.max_degree,
            report,
        }))),
    }
}

/// Spectral discrepancy truncated at a fixed degree, with the honest tail
/// bound for that degree. The workhorse of the experiment harness, where the
/// degree is budgeted rather than derived from a tolerance.
pub fn l2_discrepancy_fixed_degree(
    ps: &WeightedPointSet,
    r: f64,
    max_degree: usize,
) -> Result<DiscrepancyReport, DiscrepancyError> {
    check_radius(r)?;
    let table = BallCoefficientTable::build(ps.space().params(), r, max_degree);
    Ok(spectral_report(ps, &table, max_degree, false))
}

fn spectral_report(
    ps: &WeightedPointSet,
    table: &BallCoefficientTable,
    m_used: usize,
    keep_per_m: bool,
) -> DiscrepancyReport {
    let tail_bound = table.parseval_remainder(m_used);
    if m_used == 0 {
        return DiscrepancyReport {
            value: 0.0,
            m_used: 0,
            tail_bound,
            per_m: keep_per_m.then(Vec::new),
        };
    }
    let gram = gram_spectrum(ps, m_used);
    let mut per_m = keep_per_m.then(Vec::new);
    let value = value_from_gram(&gram, table, m_used, per_m.as_mut());
    DiscrepancyReport {
        value,
        m_used,
        tail_bound,
        per_m,
    }
}

fn check_radius(r: f64) -> Result<(), SpaceError> {
    if !(0.0..=PI).contains(&r) {
        return Err(SpaceError::RadiusOutOfRange { r });
    }
    Ok(())
}

// ── Monte Carlo oracle ──────────────────────────────────────────────────

/// Direct Monte Carlo estimate of ∫|D_r(x)|²dμ(x) from uniformly drawn ball
/// centers: returns (estimate, standard error of the mean). Deterministic
/// for a fixed seed, independent of thread count.
pub fn l2_discrepancy_montecarlo(
    ps: &WeightedPointSet,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), DiscrepancyError> {
    check_radius(r)?;
    if samples < 1000 {
        return Err(DiscrepancyError::TooFewSamples { samples });
    }
    let space = ps.space();
    let Some(stride) = space.kind().vector_len() else {
        return Err(DiscrepancyError::NoSampler {
            family: space.kind().family_name().into(),
        });
    };
    let volume = space.ball_volume(r)?;
    let cos_r = r.cos();
    let mut flat = Vec::with_capacity(stride * ps.len());
    for p in ps.points() {
        match p {
            PointRepr::SphereVec(v) | PointRepr::ProjVec(v) => flat.extend_from_slice(v),
            PointRepr::MatrixIndex(_) => unreachable!("vector model checked"),
        }
    }
    let weights = ps.weights();

    let n_blocks = samples.div_ceil(MC_BLOCK_SAMPLES);
    let partials: Vec<(f64, f64)> = (0..n_blocks)
        .into_par_iter()
        .map(|blk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(MC_STREAM_BASE + blk as u64);
            let count = MC_BLOCK_SAMPLES.min(samples - blk * MC_BLOCK_SAMPLES);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let center = gaussian_unit_vector(&mut rng, stride);
                let mut hit = 0.0;
                for (chunk, &w) in flat.chunks_exact(stride).zip(weights) {
                    if space.cos_distance_unchecked(chunk, &center) > cos_r {
                        hit += w;
                    }
                }
                let d = hit - volume;
                let d2 = d * d;
                sum += d2;
                sum_sq += d2 * d2;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((0.0, 0.0), |(s, q), (ps, pq)| (s + ps, q + pq));
    let nf = samples as f64;
    let mean = sum / nf;
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    Ok((mean, (var / nf).sqrt()))
}

// ── derived quantities ──────────────────────────────────────────────────

/// Cassels–Montgomery sum Σ_{m=1..X} S_m.
pub fn cassels_sum(ps: &WeightedPointSet, x: u32) -> f64 {
    assert!(x >= 1);
    gram_spectrum(ps, x as usize).values().iter().sum()
}

/// Largest X with S_m ≤ tol for all 1 ≤ m ≤ X (0 if S_1 already fails),
/// searched up to `max_degree`. S_m = 0 is exactness on the level-m
/// eigenspace, so X is the cubature strength.
pub fn cubature_strength(ps: &WeightedPointSet, tol: f64, max_degree: usize) -> usize {
    assert!(tol > 0.0);
    let mut m = 32.min(max_degree).max(1);
    loop {
        let gram = gram_spectrum(ps, m);
        if let Some(pos) = gram.values().iter().position(|&s| s > tol) {
            return pos;
        }
        if m >= max_degree {
            return max_degree;
        }
        m = (2 * m).min(max_degree);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointsets::{fibonacci_sphere, sample_uniform, WeightedPointSet};
    use crate::spaces::{Space, SpaceKind};
    use crate::spectral::eigen_dim;

    fn s2() -> Space {
        Space::new(SpaceKind::Sphere { n: 2 }).unwrap()
    }

    fn single_point() -> WeightedPointSet {
        WeightedPointSet::new(
            s2(),
            vec![PointRepr::SphereVec(vec![0.0, 0.0, 1.0])],
            vec![1.0],
        )
        .unwrap()
    }

    fn antipodal_pair() -> WeightedPointSet {
        WeightedPointSet::new(
            s2(),
            vec![
                PointRepr::SphereVec(vec![0.0, 0.0, 1.0]),
                PointRepr::SphereVec(vec![0.0, 0.0, -1.0]),
            ],
            vec![0.5, 0.5],
        )
        .unwrap()
    }

    #[test]
    fn pair_indexing_is_consistent() {
        for n in [1usize, 2, 3, 7, 50] {
            let mut l = 0;
            for j in 0..n {
                for k in j..n {
                    assert_eq!(pair_at(n, l), (j, k), "n={n} l={l}");
                    l += 1;
                }
            }
            assert_eq!(l, n * (n + 1) / 2);
        }
    }

    #[test]
    fn single_point_gram_is_dimension_sequence() {
        let gram = gram_spectrum(&single_point(), 64);
        let params = *single_point().space().params();
        for m in 1..=64u32 {
            let d = eigen_dim(&params, m);
            assert!(
                (gram.s(m as usize) - d).abs() / d < 1e-10,
                "m={m}: {} vs {d}",
                gram.s(m as usize)
            );
        }
    }

    #[test]
    fn antipodal_gram_alternates() {
        let gram = gram_spectrum(&antipodal_pair(), 16);
        assert!(gram.s(1).abs() < 1e-12);
        assert!((gram.s(2) - 5.0).abs() < 1e-11);
        for m in 1..=16usize {
            let expected = if m % 2 == 0 { (2 * m + 1) as f64 } else { 0.0 };
            assert!((gram.s(m) - expected).abs() < 1e-10, "m={m}");
        }
    }

    #[test]
    fn single_point_discrepancy_closed_form() {
        // ‖D_r‖² = V(1-V) for one point; r = π/3 on S² gives 3/16
        let cfg = DiscrepancyConfig {
            tol: 1e-4,
            max_degree: 20_000,
            keep_per_m: false,
        };
        let report = l2_discrepancy_spectral(&single_point(), PI / 3.0, &cfg).unwrap();
        assert!(report.tail_bound <= 1e-4);
        assert!((report.value - 0.1875).abs() <= report.tail_bound + 1e-12);
    }

    #[test]
    fn full_radius_annihilates() {
        let ps = sample_uniform(&s2(), 5, 3).unwrap();
        let report =
            l2_discrepancy_spectral(&ps, PI, &DiscrepancyConfig::default()).unwrap();
        assert_eq!(report.value, 0.0);
        assert_eq!(report.tail_bound, 0.0);
        let report = l2_discrepancy_spectral(&ps, 0.0, &DiscrepancyConfig::default()).unwrap();
        assert_eq!(report.value, 0.0);
    }

    #[test]
    fn tol_unreachable_carries_best_report() {
        let cfg = DiscrepancyConfig {
            tol: 1e-12,
            max_degree: 256,
            keep_per_m: false,
        };
        let err = l2_discrepancy_spectral(&single_point(), 1.0, &cfg).unwrap_err();
        let DiscrepancyError::TolUnreachable(inner) = err else {
            panic!("expected TolUnreachable")
        };
        assert_eq!(inner.report.m_used, 256);
        assert!(inner.report.tail_bound > 1e-12);
        assert!(inner.report.value > 0.0);
    }

    #[test]
    fn padding_leaves_value_unchanged() {
        let ps = sample_uniform(&s2(), 6, 11).unwrap();
        let padded = ps.duplicate_pad(17).unwrap();
        let r = 0.9;
        let a = l2_discrepancy_fixed_degree(&ps, r, 512).unwrap();
        let b = l2_discrepancy_fixed_degree(&padded, r, 512).unwrap();
        assert!((a.value - b.value).abs() < 1e-12, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn montecarlo_single_point_matches_closed_form() {
        let (est, stderr) =
            l2_discrepancy_montecarlo(&single_point(), PI / 3.0, 200_000, 7).unwrap();
        assert!(
            (est - 0.1875).abs() < 4.0 * stderr,
            "est {est} stderr {stderr}"
        );
        assert!(stderr < 2e-3);
    }

    #[test]
    fn montecarlo_zero_at_full_radius() {
        let ps = sample_uniform(&s2(), 3, 5).unwrap();
        let (est, stderr) = l2_discrepancy_montecarlo(&ps, PI, 1000, 1).unwrap();
        assert_eq!(est, 0.0);
        assert_eq!(stderr, 0.0);
    }

    #[test]
    fn montecarlo_guards() {
        assert!(matches!(
            l2_discrepancy_montecarlo(&single_point(), 1.0, 10, 0),
            Err(DiscrepancyError::TooFewSamples { .. })
        ));
        let m = crate::spaces::DistanceMatrix::parse("0 1\n1 0").unwrap();
        let space = Space::with_distance_matrix(SpaceKind::ProjOctonion, m).unwrap();
        let ps = WeightedPointSet::equal_weights(
            space,
            vec![PointRepr::MatrixIndex(0), PointRepr::MatrixIndex(1)],
        )
        .unwrap();
        assert!(matches!(
            l2_discrepancy_montecarlo(&ps, 1.0, 2000, 0),
            Err(DiscrepancyError::NoSampler { .. })
        ));
    }

    #[test]
    fn montecarlo_deterministic_per_seed() {
        let ps = sample_uniform(&s2(), 4, 2).unwrap();
        let a = l2_discrepancy_montecarlo(&ps, 1.1, 50_000, 9).unwrap();
        let b = l2_discrepancy_montecarlo(&ps, 1.1, 50_000, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cassels_sum_single_point() {
        let params = *single_point().space().params();
        let total: f64 = (1..=10u32).map(|m| eigen_dim(&params, m)).sum();
        assert!((cassels_sum(&single_point(), 10) - total).abs() / total < 1e-10);
    }

    #[test]
    fn cubature_strength_small_cases() {
        assert_eq!(cubature_strength(&single_point(), 1e-10, 100), 0);
        assert_eq!(cubature_strength(&antipodal_pair(), 1e-10, 100), 1);
    }

    #[test]
    fn fibonacci_spectral_runs() {
        let ps = fibonacci_sphere(64).unwrap();
        let report = l2_discrepancy_fixed_degree(&ps, 0.8, 1024).unwrap();
        assert!(report.value > 0.0);
        assert!(report.tail_bound > 0.0);
    }

    #[test]
    fn gram_block_size_does_not_change_small_case() {
        // N small enough to fit in one block: compare against a direct
        // double-loop evaluation through zonal_eval
        let ps = sample_uniform(&s2(), 9, 31).unwrap();
        let gram = gram_spectrum(&ps, 24);
        let params = *ps.space().params();
        for m in 1..=24u32 {
            let mut direct = 0.0;
            for j in 0..ps.len() {
                for k in 0..ps.len() {
                    let rho = ps
                        .space()
                        .distance(&ps.points()[j], &ps.points()[k])
                        .unwrap();
                    direct += ps.weights()[j]
                        * ps.weights()[k]
                        * crate::spectral::zonal_eval(&params, m, rho);
                }
            }
            assert!(
                (gram.s(m as usize) - direct).abs() < 1e-9,
                "m={m}: {} vs {direct}",
                gram.s(m as usize)
            );
        }
    }
}
