//! Numerical tolerances shared across the crate.
//!
//! Dimensions stay below ~16x16, so double precision leaves several orders of
//! magnitude between rounding noise and every decision threshold below.

/// Entrywise Hermiticity check.
pub const EPS_HERM: f64 = 1e-10;
/// Trace normalization of states and trace-1 witnesses.
pub const EPS_TRACE: f64 = 1e-10;
/// Unit-norm check of pure vectors.
pub const EPS_UNIT: f64 = 1e-10;
/// Orthonormality of subspace bases and eigenvector matrices.
pub const EPS_ORTH: f64 = 1e-10;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const EPS_PSD: f64 = 1e-9;
/// Generic agreement between two computations of the same quantity.
pub const EPS_NUM: f64 = 1e-8;
/// Schmidt coefficients below `SR_TOL * s_1` do not count toward the rank.
pub const SR_TOL: f64 = 1e-10;

/// Sign decisions for k-blockpositivity sit on top of the seesaw optimizer.
pub const EPS_BP: f64 = 1e-7;
/// `tau_k < 1 - EPS_ENT` certifies that a subspace avoids Schmidt rank <= k.
pub const EPS_ENT: f64 = 1e-7;
/// Relative threshold (times the largest eigenvalue) for range extraction.
pub const RANK_TOL: f64 = 1e-8;
/// Largest minimum eigenvalue accepted for a state on the boundary.
pub const EPS_FACE: f64 = 1e-8;
/// Eigenvalues within this distance are treated as one eigenspace.
pub const EIG_CLUSTER: f64 = 1e-9;

/// Target width of the bisection bracket along plane rays.
pub const RAY_TOL: f64 = 1e-8;
/// Hard cap on bisection steps per ray.
pub const RAY_MAX_STEPS: usize = 64;
