//! Jacobi polynomials, Bessel functions of the first kind, and their zeros.
//!
//! Everything here works with real parameters; the half-integer (a, b) of the
//! odd-dimensional families go through the same code paths as the integer
//! ones. All Γ-ratios are evaluated through log-gamma differences so that
//! degrees up to 10⁵ stay in range.

mod bessel;
mod jacobi;
mod zeros;

pub use bessel::{bessel_j, bessel_j_derivative, BESSEL_SWITCH_MIN};
pub use jacobi::{
    jacobi_at_one, jacobi_eval, jacobi_p1, jacobi_recurrence_coefficients, weighted_jacobi,
    weighted_jacobi_derivative, JacobiParams,
};
pub use zeros::{
    bessel_zero, frenzen_wong_estimate, jacobi_zero, mcmahon_estimate, ZeroEstimate, ZeroError,
};

/// Shifted degree M = m + (a+b+1)/2 that drives all Bessel-regime asymptotics.
pub fn shifted_degree(a: f64, b: f64, m: u32) -> f64 {
    m as f64 + (a + b + 1.0) / 2.0
}
