//! L² geodesic-ball discrepancy on compact two-point homogeneous spaces.
//!
//! The library covers the five families of compact rank-1 symmetric spaces
//! (spheres and the projective spaces over ℝ, ℂ, ℍ, 𝕆), their Jacobi-type
//! spectral data, and the spectral decomposition of the ball discrepancy
//!
//! ```text
//! ∫ |D_r(x)|² dμ(x) = Σ_{m≥1} S_m · c_m(r)² / d_m²
//! ```
//!
//! where `S_m` is the Gram spectrum of a weighted point set, `c_m(r)` the
//! Fourier coefficient of the geodesic ball of radius `r`, and `d_m` the
//! eigenspace dimension. Truncation is controlled by the exactly computable
//! Parseval remainder, so every reported value carries a rigorous tail bound.
//!
//! Modules:
//! - [`spaces`]: space parameters, geodesic distance, radial measure, ball volume
//! - [`specfun`]: Jacobi polynomials, Bessel functions, and their zeros
//! - [`spectral`]: eigenvalues, zonal kernels, ball coefficients
//! - [`pointsets`]: weighted point sets, generators, file formats
//! - [`discrepancy`]: Gram spectra, spectral/Monte Carlo discrepancy, cubature checks
//! - [`experiments`]: scaling studies, radius sweeps, bad-radius scans

pub mod discrepancy;
pub mod experiments;
pub mod pointsets;
pub mod spaces;
pub mod specfun;
pub mod spectral;

pub use discrepancy::{
    cassels_sum, cubature_strength, gram_spectrum, l2_discrepancy_fixed_degree,
    l2_discrepancy_montecarlo, l2_discrepancy_spectral, DiscrepancyConfig, DiscrepancyError,
    DiscrepancyReport, GramSpectrum,
};
pub use pointsets::{PointSetError, WeightedPointSet};
pub use spaces::{PointRepr, Space, SpaceError, SpaceKind, SpaceParams};
pub use spectral::{BallCoefficientTable, EigenLevel};
