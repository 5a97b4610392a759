//! Zeros of Bessel functions and of the weighted Jacobi forms.
//!
//! Bessel zeros start from McMahon's expansion and are polished by a
//! bracketed Newton iteration on J_ν. Jacobi zeros (of
//! P_{m-1}^{a+1,b+1}(cos θ), equivalently of the weighted form 𝒫 on (0, π))
//! start from the Frenzen–Wong two-term estimate and are polished the same
//! way, with the derivative supplied by the Rodrigues identity.

use super::bessel::{bessel_j, bessel_j_derivative};
use super::jacobi::{weighted_jacobi, weighted_jacobi_derivative};
use super::shifted_degree;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use thiserror::Error;

const MAX_NEWTON_ITER: usize = 50;
const RESIDUAL_LIMIT: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ZeroError {
    #[error("zero index ell={ell} outside 1..={max}")]
    IndexOutOfRange { ell: u32, max: u32 },
    #[error("Frenzen-Wong hypotheses violated: need a >= -3/2 and a+b >= -3, got a={a}, b={b}")]
    HypothesesViolated { a: f64, b: f64 },
    #[error("could not bracket zero {ell} near {guess}")]
    NoBracket { ell: u32, guess: f64 },
    #[error("refinement did not converge for zero {ell}: residual {residual:e} after {iters} iterations")]
    NoConvergence {
        ell: u32,
        residual: f64,
        iters: usize,
    },
}

/// A located zero with its refinement residual and the asymptotic error
/// scale of the initial estimate it was refined from (1/ℓ for McMahon,
/// t²/m³ for Frenzen–Wong).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroEstimate {
    pub location: f64,
    pub residual: f64,
    pub order_term: f64,
}

/// Leading McMahon term for the ℓ-th positive zero of J_ν:
/// ℓπ + νπ/2 − π/4, accurate to O(1/ℓ).
pub fn mcmahon_estimate(nu: f64, ell: u32) -> f64 {
    ell as f64 * PI + nu * FRAC_PI_2 - FRAC_PI_4
}

// Three-term McMahon expansion; only used to seed the bracket, so that the
// first zeros of high orders start close enough to not capture a neighbor.
fn mcmahon_refined(nu: f64, ell: u32) -> f64 {
    let beta = mcmahon_estimate(nu, ell);
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// The ℓ-th positive zero of J_ν, ℓ ≥ 1.
pub fn bessel_zero(nu: f64, ell: u32) -> Result<ZeroEstimate, ZeroError> {
    if ell < 1 {
        return Err(ZeroError::IndexOutOfRange { ell, max: u32::MAX });
    }
    let guess = mcmahon_refined(nu, ell).max(nu.max(0.0) + 1e-3);
    let f = |x: f64| bessel_j(nu, x);
    let df = |x: f64| bessel_j_derivative(nu, x);
    // zeros of J_ν are separated by more than π, so a π/2-wide window around
    // a good guess isolates one
    let (lo, hi) = bracket(&f, guess, FRAC_PI_4, nu.max(0.0) + 1e-6, f64::INFINITY)
        .ok_or(ZeroError::NoBracket { ell, guess })?;
    let location = newton_bracketed(&f, &df, lo, hi).ok_or(ZeroError::NoConvergence {
        ell,
        residual: f64::NAN,
        iters: MAX_NEWTON_ITER,
    })?;
    let residual = f(location).abs();
    if residual > RESIDUAL_LIMIT {
        return Err(ZeroError::NoConvergence {
            ell,
            residual,
            iters: MAX_NEWTON_ITER,
        });
    }
    Ok(ZeroEstimate {
        location,
        residual,
        order_term: 1.0 / ell as f64,
    })
}

/// Frenzen–Wong estimate of the ℓ-th zero θ_{m-1,ℓ} of P_{m-1}^{a+1,b+1}(cos θ):
///
/// ```text
/// θ ≈ j/M + M⁻² [ ((a+1)² − 1/4)(1 − t·cot t)/(2t) − ((a+1)² − (b+1)²)/4 · tan(t/2) ]
/// ```
///
/// with M = m + (a+b+1)/2, j the ℓ-th zero of J_{a+1}, and t = j/M.
pub fn frenzen_wong_estimate(a: f64, b: f64, m: u32, ell: u32) -> Result<f64, ZeroError> {
    check_fw_hypotheses(a, b)?;
    let big_m = shifted_degree(a, b, m);
    let j = bessel_zero(a + 1.0, ell)?.location;
    let t = j / big_m;
    let ap = a + 1.0;
    let bp = b + 1.0;
    let corr = (ap * ap - 0.25) * (1.0 - t / t.tan()) / (2.0 * t)
        - (ap * ap - bp * bp) / 4.0 * (t / 2.0).tan();
    Ok(t + corr / (big_m * big_m))
}

fn check_fw_hypotheses(a: f64, b: f64) -> Result<(), ZeroError> {
    if a < -1.5 || a + b < -3.0 {
        return Err(ZeroError::HypothesesViolated { a, b });
    }
    Ok(())
}

/// The ℓ-th zero in (0, π) of P_{m-1}^{a+1,b+1}(cos θ), 1 ≤ ℓ ≤ m−1.
///
/// Zeros in the upper half of the range are located through the reflection
/// P_n^{α,β}(−x) = (−1)ⁿ P_n^{β,α}(x), which keeps the Frenzen–Wong seed in
/// its region of validity at both endpoints.
pub fn jacobi_zero(a: f64, b: f64, m: u32, ell: u32) -> Result<ZeroEstimate, ZeroError> {
    check_fw_hypotheses(a, b)?;
    if ell < 1 || ell > m.saturating_sub(1) {
        return Err(ZeroError::IndexOutOfRange {
            ell,
            max: m.saturating_sub(1),
        });
    }
    if 2 * ell > m {
        let reflected = jacobi_zero_lower(b, a, m, m - ell)?;
        return Ok(ZeroEstimate {
            location: PI - reflected.location,
            residual: zero_residual(a, b, m, PI - reflected.location),
            order_term: reflected.order_term,
        });
    }
    jacobi_zero_lower(a, b, m, ell)
}

fn zero_residual(a: f64, b: f64, m: u32, theta: f64) -> f64 {
    weighted_jacobi(a, b, m, theta).abs()
}

fn jacobi_zero_lower(a: f64, b: f64, m: u32, ell: u32) -> Result<ZeroEstimate, ZeroError> {
    let big_m = shifted_degree(a, b, m);
    let guess = frenzen_wong_estimate(a, b, m, ell)?.clamp(1e-6, PI - 1e-6);
    let f = |x: f64| weighted_jacobi(a, b, m, x);
    let df = |x: f64| weighted_jacobi_derivative(a, b, m, x);
    // consecutive zeros are ~π/M apart
    let window = 0.55 * PI / big_m;
    let (lo, hi) =
        bracket(&f, guess, window, 1e-9, PI - 1e-9).ok_or(ZeroError::NoBracket { ell, guess })?;
    let location = newton_bracketed(&f, &df, lo, hi).ok_or(ZeroError::NoConvergence {
        ell,
        residual: f64::NAN,
        iters: MAX_NEWTON_ITER,
    })?;
    let residual = f(location).abs();
    if residual > RESIDUAL_LIMIT {
        return Err(ZeroError::NoConvergence {
            ell,
            residual,
            iters: MAX_NEWTON_ITER,
        });
    }
    let t = bessel_zero(a + 1.0, ell)?.location / big_m;
    Ok(ZeroEstimate {
        location,
        residual,
        order_term: t * t / (m as f64).powi(3),
    })
}

// Expands [guess-w, guess+w] in steps of w until a sign change appears.
fn bracket<F: Fn(f64) -> f64>(
    f: &F,
    guess: f64,
    w: f64,
    min: f64,
    max: f64,
) -> Option<(f64, f64)> {
    let mut lo = (guess - w).max(min);
    let mut hi = (guess + w).min(max);
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for _ in 0..24 {
        if flo == 0.0 {
            return Some((lo, lo));
        }
        if fhi == 0.0 {
            return Some((hi, hi));
        }
        if flo * fhi < 0.0 {
            return Some((lo, hi));
        }
        let new_lo = (lo - w).max(min);
        let new_hi = (hi + w).min(max);
        if new_lo == lo && new_hi == hi {
            return None;
        }
        lo = new_lo;
        hi = new_hi;
        flo = f(lo);
        fhi = f(hi);
    }
    None
}

// Newton iteration that falls back to bisection whenever a step leaves the
// bracket; the bracket invariant f(lo)·f(hi) <= 0 is maintained throughout.
fn newton_bracketed<F: Fn(f64) -> f64, G: Fn(f64) -> f64>(
    f: &F,
    df: &G,
    mut lo: f64,
    mut hi: f64,
) -> Option<f64> {
    if lo == hi {
        return Some(lo);
    }
    let mut flo = f(lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON_ITER {
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if flo * fx < 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
        let d = df(x);
        let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * x.abs().max(1.0) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        for ell in 1..=8u32 {
            let z = bessel_zero(0.5, ell).unwrap();
            assert!(
                (z.location - ell as f64 * PI).abs() < 1e-12,
                "ell={ell}: {}",
                z.location
            );
            assert!(z.residual < 1e-12);
        }
    }

    #[test]
    fn first_zero_of_j1() {
        let z = bessel_zero(1.0, 1).unwrap();
        assert!((z.location - 3.831_705_970_207_512).abs() < 1e-10);
    }

    #[test]
    fn zeros_strictly_increasing() {
        for nu in [0.5, 1.0, 1.5, 2.5, 4.0, 8.0] {
            let mut prev = 0.0;
            for ell in 1..=30 {
                let z = bessel_zero(nu, ell).unwrap().location;
                assert!(z > prev, "nu={nu} ell={ell}: {z} <= {prev}");
                assert!(bessel_j(nu, z).abs() < 1e-10);
                prev = z;
            }
        }
    }

    #[test]
    fn jacobi_zero_degree_one() {
        // P_1^{1,1}(cos θ) = 2 cos θ vanishes at θ = π/2
        let z = jacobi_zero(0.0, 0.0, 2, 1).unwrap();
        assert!((z.location - FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn jacobi_zeros_interlace_and_fill_range() {
        for (a, b) in [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0), (3.0, 1.0), (7.0, 3.0)] {
            let m = 25u32;
            let mut prev = 0.0;
            for ell in 1..=(m - 1) {
                let z = jacobi_zero(a, b, m, ell).unwrap();
                assert!(
                    z.location > prev && z.location < PI,
                    "a={a} b={b} ell={ell}"
                );
                assert!(z.residual < 1e-10);
                prev = z.location;
            }
        }
    }

    #[test]
    fn jacobi_zero_range_checks() {
        assert!(matches!(
            jacobi_zero(0.0, 0.0, 5, 5),
            Err(ZeroError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            jacobi_zero(0.0, 0.0, 5, 0),
            Err(ZeroError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            jacobi_zero(-1.6, 0.0, 5, 1),
            Err(ZeroError::HypothesesViolated { .. })
        ));
    }

    #[test]
    fn frenzen_wong_close_to_refined() {
        for (a, b) in [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5)] {
            let m = 60u32;
            for ell in [1u32, 5, 15, 30] {
                let est = frenzen_wong_estimate(a, b, m, ell).unwrap();
                let refined = jacobi_zero(a, b, m, ell).unwrap().location;
                assert!(
                    (est - refined).abs() < 5e-4,
                    "a={a} b={b} ell={ell}: {est} vs {refined}"
                );
            }
        }
    }
}
