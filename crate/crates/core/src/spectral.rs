//! Spectral data of the Laplace–Beltrami operator: eigenvalues, eigenspace
//! dimensions, zonal kernels, and the Fourier coefficients of geodesic balls.
//!
//! The chain used everywhere downstream:
//!
//! ```text
//! Z^m(ρ)  = d_m P_m^{a,b}(cos ρ) / P_m^{a,b}(1)            (zonal kernel)
//! c_m(r)  = ∫_{B_r} Z^m dμ
//!         = c(a,b) d_m / (m P_m^{a,b}(1)) · 𝒫_{m-1}^{a+1,b+1}(r)
//! Σ_{m≥1} c_m(r)²/d_m = V(1-V),  V = μ(B_r)               (Parseval)
//! ```
//!
//! The eigenspace dimension is not taken from a table; it is derived from the
//! L² norm of the Jacobi system, which keeps every family (including the
//! half-integer ones) on the same code path and is cross-validated by the
//! Parseval identity.

use crate::spaces::{ball_volume_params, SpaceParams};
use crate::specfun::{
    bessel_j, jacobi_eval, jacobi_p1, jacobi_recurrence_coefficients, shifted_degree,
    weighted_jacobi, JacobiParams,
};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;
use std::io::{self, Write};
use thiserror::Error;

/// Radii closer to π than this are rejected by the asymptotic form.
pub const DEFAULT_ASYMPTOTIC_EPS: f64 = 0.3;

/// Default lower degree cutoff of [`bad_radius_score`].
pub const DEFAULT_BAD_RADIUS_M0: u32 = 2;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("radius {r} too close to π for the asymptotic form (needs r <= π - {eps})")]
    RadiusTooCloseToPi { r: f64, eps: f64 },
}

/// One eigenvalue level of -Δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenLevel {
    pub m: u32,
    /// λ_m = m(m + a + b + 1).
    pub lambda: f64,
    /// Eigenspace dimension d_m (analytically integer-valued).
    pub dim: f64,
}

/// Eigenvalue and eigenspace dimension of level m.
pub fn eigen_level(params: &SpaceParams, m: u32) -> EigenLevel {
    let mf = m as f64;
    EigenLevel {
        m,
        lambda: mf * (mf + params.a + params.b + 1.0),
        dim: eigen_dim(params, m),
    }
}

/// d_m = (2m+a+b+1) Γ(b+1) Γ(m+a+1) Γ(m+a+b+1) / (Γ(a+b+2) Γ(a+1) Γ(m+1) Γ(m+b+1)).
pub fn eigen_dim(params: &SpaceParams, m: u32) -> f64 {
    let (a, b) = (params.a, params.b);
    let mf = m as f64;
    let ln = (2.0 * mf + a + b + 1.0).ln() + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)
        - ln_gamma(a + 1.0)
        + ln_gamma(mf + a + 1.0)
        + ln_gamma(mf + a + b + 1.0)
        - ln_gamma(mf + 1.0)
        - ln_gamma(mf + b + 1.0);
    ln.exp()
}

/// d_m / P_m^{a,b}(1), the factor that turns plain Jacobi values into zonal
/// kernel values.
pub(crate) fn zonal_norm_ratio(params: &SpaceParams, m: u32) -> f64 {
    let (a, b) = (params.a, params.b);
    let mf = m as f64;
    let ln = (2.0 * mf + a + b + 1.0).ln() + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)
        + ln_gamma(mf + a + b + 1.0)
        - ln_gamma(mf + b + 1.0);
    ln.exp()
}

/// Zonal kernel Z^m at geodesic distance ρ from its pole; Z^m(0) = d_m and
/// |Z^m| ≤ d_m everywhere.
pub fn zonal_eval(params: &SpaceParams, m: u32, rho: f64) -> f64 {
    debug_assert!((0.0..=PI + 1e-12).contains(&rho));
    if m == 0 {
        return 1.0;
    }
    zonal_norm_ratio(params, m) * jacobi_eval(JacobiParams::new(params.a, params.b, m), rho.cos())
}

/// Ball Fourier coefficient c_m(r) = ∫_{B_r} Z^m dμ for m ≥ 1, in closed form.
pub fn ball_coefficient(params: &SpaceParams, m: u32, r: f64) -> f64 {
    assert!(m >= 1, "ball coefficient defined for m >= 1");
    let (a, b) = (params.a, params.b);
    params.c_ab * zonal_norm_ratio(params, m) / m as f64 * weighted_jacobi(a, b, m, r)
}

/// Bessel main term of c_m(r) and the scale d_m·m^{-5/2-a} of its error,
/// valid away from r = π.
pub fn ball_coefficient_asymptotic(
    params: &SpaceParams,
    m: u32,
    r: f64,
) -> Result<(f64, f64), SpectralError> {
    ball_coefficient_asymptotic_eps(params, m, r, DEFAULT_ASYMPTOTIC_EPS)
}

pub fn ball_coefficient_asymptotic_eps(
    params: &SpaceParams,
    m: u32,
    r: f64,
    eps: f64,
) -> Result<(f64, f64), SpectralError> {
    assert!(m >= 1);
    if r > PI - eps {
        return Err(SpectralError::RadiusTooCloseToPi { r, eps });
    }
    let (a, b) = (params.a, params.b);
    let dm = eigen_dim(params, m);
    let big_m = shifted_degree(a, b, m);
    let h = 0.5 * r;
    let ratio = if r < 1e-12 { 1.0 } else { r / r.sin() };
    let main = params.c_ab
        * dm
        * ln_gamma(a + 1.0).exp()
        * h.sin().powf(a + 1.0)
        * h.cos().powf(b + 1.0)
        * big_m.powf(-a - 1.0)
        * ratio.sqrt()
        * bessel_j(a + 1.0, big_m * r);
    let scale = dm * (m as f64).powf(-2.5 - a);
    Ok((main, scale))
}

/// |J_{a+1}(Mr)|² + |J_{a+1}(2Mr)|², the two-radius quantity whose positivity
/// floor drives the d ≢ 1 (mod 4) lower bound.
pub fn two_radius_floor(params: &SpaceParams, r: f64, m: u32) -> f64 {
    debug_assert!(r > 0.0 && r < PI / 2.0);
    let nu = params.a + 1.0;
    let big_m = shifted_degree(params.a, params.b, m);
    let j1 = bessel_j(nu, big_m * r);
    let j2 = bessel_j(nu, 2.0 * big_m * r);
    j1 * j1 + j2 * j2
}

/// min over ω of cos²ω + cos²(2ω + (a+1)π/2 + π/4) for real dimension d.
///
/// Strictly positive exactly when (d-1)/4 is not an integer; located by a
/// coarse grid followed by golden-section refinement.
pub fn two_radius_trig_floor(d: u32) -> f64 {
    let a = (d as f64 - 2.0) / 2.0;
    let phase = (a + 1.0) * PI / 2.0 + PI / 4.0;
    let f = |w: f64| {
        let c1 = w.cos();
        let c2 = (2.0 * w + phase).cos();
        c1 * c1 + c2 * c2
    };
    // the expression has period π
    let n = 512;
    let mut best_w = 0.0;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let w = PI * i as f64 / n as f64;
        let v = f(w);
        if v < best {
            best = v;
            best_w = w;
        }
    }
    let step = PI / n as f64;
    golden_section_min(&f, best_w - step, best_w + step, 1e-10)
}

fn golden_section_min<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// min_{m₀ ≤ m ≤ m_max} m^{3/2+δ} |𝒫_{m-1}^{a+1,b+1}(r)|: a diagnostic for
/// radii where the single-radius coefficients degenerate (near zero at the
/// Jacobi zeros, bounded away from zero for generic r).
pub fn bad_radius_score(params: &SpaceParams, r: f64, m_max: u32, delta: f64) -> f64 {
    bad_radius_score_from(params, r, DEFAULT_BAD_RADIUS_M0, m_max, delta)
}

pub fn bad_radius_score_from(
    params: &SpaceParams,
    r: f64,
    m0: u32,
    m_max: u32,
    delta: f64,
) -> f64 {
    assert!(r > 0.0 && r < PI, "bad_radius_score needs r in (0, π)");
    assert!(delta > 0.0 && m_max >= m0 && m0 >= 1);
    let (ap, bp) = (params.a + 1.0, params.b + 1.0);
    let x = r.cos();
    let h = 0.5 * r;
    let weight = h.sin().powf(2.0 * params.a + 2.0) * h.cos().powf(2.0 * params.b + 2.0);
    // single recurrence pass over P_{m-1}^{a+1,b+1}(cos r)
    let mut prev = 1.0;
    let mut cur = jacobi_p1(ap, bp, x);
    let mut score = f64::INFINITY;
    for m in 1..=m_max {
        let poly = if m == 1 { prev } else { cur };
        if m >= m0 {
            let term = (m as f64).powf(1.5 + delta) * (weight * poly).abs();
            score = score.min(term);
        }
        if m >= 2 {
            let (am, bm, cm) = jacobi_recurrence_coefficients(ap, bp, m);
            let next = (am * x + bm) * cur + cm * prev;
            prev = cur;
            cur = next;
        }
    }
    score
}

/// Ball Fourier coefficients c_m(r) for m = 1..=M with the running Parseval
/// sum Σ c_m²/d_m, built in one O(M) recurrence pass.
#[derive(Debug, Clone, Serialize)]
pub struct BallCoefficientTable {
    pub space: SpaceParams,
    pub r: f64,
    /// μ(B_r), the m = 0 coefficient.
    pub volume: f64,
    /// c_m(r) for m = 1..=M.
    pub coeffs: Vec<f64>,
    /// Eigenspace dimensions d_m for m = 1..=M.
    pub dims: Vec<f64>,
    /// Running Σ_{k<=m} c_k²/d_k; nondecreasing and bounded by V(1-V).
    pub parseval_partial: Vec<f64>,
}

impl BallCoefficientTable {
    pub fn build(params: &SpaceParams, r: f64, m_max: usize) -> Self {
        let (a, b) = (params.a, params.b);
        let (ap, bp) = (a + 1.0, b + 1.0);
        let volume = ball_volume_params(params, r);
        let x = r.cos();
        let h = 0.5 * r;
        let weight = h.sin().powf(2.0 * a + 2.0) * h.cos().powf(2.0 * b + 2.0);

        let mut coeffs = Vec::with_capacity(m_max);
        let mut dims = Vec::with_capacity(m_max);
        let mut parseval_partial = Vec::with_capacity(m_max);
        // running quantities: P_{m-1}^{a+1,b+1}(x), P_m^{a,b}(1), d_m/P_m(1)
        let mut poly_prev = 1.0; // P_0^{a+1,b+1}
        let mut poly_cur = jacobi_p1(ap, bp, x);
        let mut at_one = 1.0 + a; // P_1^{a,b}(1)
        let mut ratio = zonal_norm_ratio(params, 1);
        let mut partial = 0.0;
        for m in 1..=m_max {
            let mf = m as f64;
            let poly = if m == 1 { poly_prev } else { poly_cur };
            let c = params.c_ab * ratio / mf * weight * poly;
            let dm = ratio * at_one;
            partial += c * c / dm;
            coeffs.push(c);
            dims.push(dm);
            parseval_partial.push(partial);
            // advance to m+1
            let (am, bm, cm) = jacobi_recurrence_coefficients(ap, bp, m.max(2) as u32);
            if m >= 2 {
                let next = (am * x + bm) * poly_cur + cm * poly_prev;
                poly_prev = poly_cur;
                poly_cur = next;
            }
            at_one *= (mf + 1.0 + a) / (mf + 1.0);
            ratio *= (2.0 * mf + a + b + 3.0) / (2.0 * mf + a + b + 1.0) * (mf + a + b + 1.0)
                / (mf + b + 1.0);
        }
        BallCoefficientTable {
            space: *params,
            r,
            volume,
            coeffs,
            dims,
            parseval_partial,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len()
    }

    /// V(1-V) minus the partial Parseval sum up to m: the exact mass of the
    /// omitted tail Σ_{k>m} c_k²/d_k, hence a rigorous truncation bound for
    /// any point set.
    pub fn parseval_remainder(&self, m: usize) -> f64 {
        let v = self.volume;
        let partial = if m == 0 {
            0.0
        } else {
            self.parseval_partial[m - 1]
        };
        (v * (1.0 - v) - partial).max(0.0)
    }

    /// CSV rows (m, c_m, c_m²/d_m, partial Parseval).
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "m,c_m,c_m_sq_over_d_m,parseval_partial")?;
        let mut prev = 0.0;
        for (i, (&c, &p)) in self.coeffs.iter().zip(&self.parseval_partial).enumerate() {
            writeln!(out, "{},{:.17e},{:.17e},{:.17e}", i + 1, c, p - prev, p)?;
            prev = p;
        }
        Ok(())
    }
}
