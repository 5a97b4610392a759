//! Jacobi polynomials P_m^{a,b} by three-term recurrence, values at 1, and
//! the weighted form sin^{2a+2}(r/2) cos^{2b+2}(r/2) P_{m-1}^{a+1,b+1}(cos r)
//! that carries the ball coefficients.

use statrs::function::gamma::ln_gamma;

/// Degree and weight parameters of a Jacobi polynomial; a, b > -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub a: f64,
    pub b: f64,
    pub m: u32,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64, m: u32) -> Self {
        assert!(a > -1.0 && b > -1.0, "Jacobi parameters must exceed -1");
        JacobiParams { a, b, m }
    }
}

/// Coefficients (A_m, B_m, C_m) of P_m = (A_m x + B_m) P_{m-1} + C_m P_{m-2},
/// for m >= 2. Shared by every recurrence in the crate so that scalar
/// evaluation and the blocked Gram kernel agree term by term.
pub fn jacobi_recurrence_coefficients(a: f64, b: f64, m: u32) -> (f64, f64, f64) {
    debug_assert!(m >= 2);
    let mf = m as f64;
    let s = 2.0 * mf + a + b; // 2m + a + b
    let denom = 2.0 * mf * (mf + a + b) * (s - 2.0);
    let am = (s - 1.0) * s * (s - 2.0) / denom;
    let bm = (s - 1.0) * (a * a - b * b) / denom;
    let cm = -2.0 * (mf + a - 1.0) * (mf + b - 1.0) * s / denom;
    (am, bm, cm)
}

/// P_1^{a,b}(x) = (a+1) + (a+b+2)(x-1)/2.
pub fn jacobi_p1(a: f64, b: f64, x: f64) -> f64 {
    (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
}

/// Evaluates P_m^{a,b}(x) for |x| <= 1 by the three-term recurrence in m.
pub fn jacobi_eval(params: JacobiParams, x: f64) -> f64 {
    debug_assert!(x.abs() <= 1.0 + 1e-12, "jacobi_eval domain |x| <= 1");
    let JacobiParams { a, b, m } = params;
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = jacobi_p1(a, b, x);
    for k in 2..=m {
        let (am, bm, cm) = jacobi_recurrence_coefficients(a, b, k);
        let next = (am * x + bm) * cur + cm * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// P_m^{a,b}(1) = Γ(m+a+1) / (Γ(m+1)Γ(a+1)), via log-gamma differences.
pub fn jacobi_at_one(params: JacobiParams) -> f64 {
    let JacobiParams { a, m, .. } = params;
    let mf = m as f64;
    (ln_gamma(mf + a + 1.0) - ln_gamma(mf + 1.0) - ln_gamma(a + 1.0)).exp()
}

/// The weighted Jacobi form
/// 𝒫_{m-1}^{a+1,b+1}(r) = sin^{2a+2}(r/2) cos^{2b+2}(r/2) P_{m-1}^{a+1,b+1}(cos r),
/// with (a, b) the space parameters and m >= 1.
pub fn weighted_jacobi(a: f64, b: f64, m: u32, r: f64) -> f64 {
    assert!(m >= 1, "weighted_jacobi needs m >= 1");
    let h = 0.5 * r;
    let poly = jacobi_eval(JacobiParams::new(a + 1.0, b + 1.0, m - 1), r.cos());
    h.sin().powf(2.0 * a + 2.0) * h.cos().powf(2.0 * b + 2.0) * poly
}

/// d/dr 𝒫_{m-1}^{a+1,b+1}(r) = m sin^{2a+1}(r/2) cos^{2b+1}(r/2) P_m^{a,b}(cos r),
/// the Rodrigues-type derivative identity used by the Newton zero refinements.
pub fn weighted_jacobi_derivative(a: f64, b: f64, m: u32, r: f64) -> f64 {
    assert!(m >= 1);
    let h = 0.5 * r;
    let poly = jacobi_eval(JacobiParams::new(a, b, m), r.cos());
    m as f64 * h.sin().powf(2.0 * a + 1.0) * h.cos().powf(2.0 * b + 1.0) * poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_degree_one() {
        for x in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            assert_eq!(jacobi_eval(JacobiParams::new(0.0, 0.0, 0), x), 1.0);
        }
        // P_1^{1,1}(x) = 2x
        assert_eq!(jacobi_eval(JacobiParams::new(1.0, 1.0, 1), 0.0), 0.0);
        assert!((jacobi_eval(JacobiParams::new(1.0, 1.0, 1), 0.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_at_one() {
        // (a=0,b=0): Legendre, P_m(1) = 1
        assert!((jacobi_eval(JacobiParams::new(0.0, 0.0, 2), 1.0) - 1.0).abs() < 1e-14);
        assert!((jacobi_at_one(JacobiParams::new(0.0, 0.0, 7)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn at_one_gamma_ratios() {
        assert!((jacobi_at_one(JacobiParams::new(1.0, 0.0, 3)) - 4.0).abs() < 1e-13);
        assert!((jacobi_at_one(JacobiParams::new(7.0, 3.0, 1)) - 8.0).abs() < 1e-12);
        // stays finite and accurate at large degree
        let p = jacobi_at_one(JacobiParams::new(0.5, -0.5, 100_000));
        assert!(p.is_finite() && p > 0.0);
    }

    #[test]
    fn recurrence_matches_at_one() {
        // x = 1 through the recurrence must agree with the Γ-ratio closed form
        for (a, b) in [(0.0, 0.0), (0.0, -0.5), (1.0, 0.0), (3.0, 1.0), (7.0, 3.0)] {
            for m in [1u32, 5, 20, 100, 500, 2000] {
                let p = JacobiParams::new(a, b, m);
                let rec = jacobi_eval(p, 1.0);
                let exact = jacobi_at_one(p);
                assert!(
                    (rec - exact).abs() / exact <= 1e-9,
                    "a={a} b={b} m={m}: {rec} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn legendre_known_values() {
        // P_2(x) = (3x² - 1)/2, P_3(x) = (5x³ - 3x)/2
        let x = 0.3;
        let p2 = jacobi_eval(JacobiParams::new(0.0, 0.0, 2), x);
        assert!((p2 - (3.0 * x * x - 1.0) / 2.0).abs() < 1e-15);
        let p3 = jacobi_eval(JacobiParams::new(0.0, 0.0, 3), x);
        assert!((p3 - (5.0 * x.powi(3) - 3.0 * x) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn weighted_form_values() {
        // any params: r = 0 kills the sine factor
        assert_eq!(weighted_jacobi(0.0, 0.0, 3, 0.0), 0.0);
        // S² params, m=1, r=π/2: sin²(π/4)cos²(π/4)·P_0^{1,1} = 1/4
        assert!((weighted_jacobi(0.0, 0.0, 1, PI / 2.0) - 0.25).abs() < 1e-15);
        // S² params, m=2, r=π/2: P_1^{1,1}(0) = 0
        assert!(weighted_jacobi(0.0, 0.0, 2, PI / 2.0).abs() < 1e-16);
    }

    #[test]
    fn derivative_identity_by_finite_differences() {
        let h = 1e-6;
        for (a, b) in [(0.0, 0.0), (0.5, 0.5), (1.0, 0.0), (3.0, 1.0)] {
            for m in [1u32, 2, 5, 12] {
                for r in [0.4, 1.1, 2.0, 2.8] {
                    let num =
                        (weighted_jacobi(a, b, m, r + h) - weighted_jacobi(a, b, m, r - h))
                            / (2.0 * h);
                    let exact = weighted_jacobi_derivative(a, b, m, r);
                    let scale = exact.abs().max(1e-3);
                    assert!(
                        (num - exact).abs() / scale < 1e-6,
                        "a={a} b={b} m={m} r={r}: {num} vs {exact}"
                    );
                }
            }
        }
    }
}
