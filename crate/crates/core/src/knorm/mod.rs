//! Operator k-norms.
//!
//! `‖ρ‖_S(k)` is the supremum of `⟨ξ|ρ|ξ⟩` over unit vectors of Schmidt rank
//! at most `k`, and `|X|_S(k)` the corresponding infimum. For `k = m∧n` both
//! are eigenvalues. Below that the supremum is found by a multistart seesaw
//! (see [`seesaw`]), whose value is always realized by the returned
//! certificate and is therefore a certified lower bound of the true supremum.
//!
//! Levels are computed as a ladder `k = 1, 2, …`, each warm-started from the
//! previous level's certificate, which makes the computed values monotone in
//! `k` exactly, not just up to optimizer noise.

mod seesaw;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::VectorJson;
use crate::linalg::{
    reshape, sorted_svd, tau_k, vectorize, BipartiteDim, CMatrix, CVector, HermitianOp, PureVector, State,
    Subspace, C64,
};

pub(crate) use seesaw::restart_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSpectral,
    ClosedForm,
    Seesaw,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub rel_tol: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { restarts: 64, max_iters: 500, rel_tol: 1e-12, seed: 0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidConfig(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        Ok(())
    }
}

/// Value of a k-norm computation together with the vector realizing it.
#[derive(Clone, Debug, Serialize)]
pub struct KNormResult {
    pub value: f64,
    /// Unit vector with Schmidt rank `≤ k` and `⟨c|X|c⟩ = value`.
    ///
    /// For [`subspace_max_tau`] this is instead the maximizing unit vector of
    /// `E`, and `value = τ_k(certificate)`.
    #[serde(serialize_with = "serialize_vector")]
    pub certificate: PureVector,
    pub k: usize,
    pub method: Method,
    pub restarts_used: usize,
    pub converged: bool,
}

fn serialize_vector<S: serde::Serializer>(v: &PureVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    VectorJson::from(v.clone()).serialize(s)
}

/// `τ_k(s) = σ_1² + … + σ_k²` together with the rank-`k` unit matrix
/// `t₀ = sQ / ‖sQ‖` attaining `|⟨s, t₀⟩|² = τ_k(s)`, where `Q` projects onto
/// the top-`k` right singular subspace of `s`.
///
/// The returned value is the realized overlap `|tr(s^H t₀)|²`.
pub fn rank_k_overlap(s: &CMatrix, k: usize) -> Result<(f64, CMatrix)> {
    let max = s.nrows().min(s.ncols());
    if k == 0 || k > max {
        return Err(Error::LevelOutOfRange { k, max });
    }
    let (_, _, v) = sorted_svd(s);
    let vk = v.columns(0, k);
    let q = &vk * vk.adjoint();
    let sq = s * q;
    let norm = sq.norm();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let t0 = sq.unscale(norm);
    let overlap: C64 = s.iter().zip(t0.iter()).map(|(a, b)| a.conj() * b).sum();
    Ok((overlap.norm_sqr(), t0))
}

/// Nearest Schmidt-rank-`k` unit vector to `v` in the overlap sense.
fn truncate_to_rank(dim: BipartiteDim, v: &CVector, k: usize) -> Option<CVector> {
    let mat = reshape(dim, v).ok()?;
    rank_k_overlap(&mat, k).ok().map(|(_, t0)| vectorize(&t0))
}

fn spectral_result(op: &HermitianOp, k: usize, top: bool) -> KNormResult {
    let spec = op.spectrum();
    let idx = if top { spec.values.len() - 1 } else { 0 };
    let certificate = PureVector::normalized(op.dim(), spec.vectors.column(idx).into_owned())
        .expect("eigenvectors are nonzero");
    KNormResult {
        value: spec.values[idx],
        certificate,
        k,
        method: Method::ExactSpectral,
        restarts_used: 0,
        converged: true,
    }
}

fn multistart(op: &HermitianOp, k: usize, cfg: &SolverConfig, warm: &[CVector]) -> (seesaw::Ascent, usize) {
    let dim = op.dim();
    let h = op.matrix();
    let total = warm.len() + cfg.restarts;
    let runs: Vec<seesaw::Ascent> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let start = if idx < warm.len() {
                seesaw::right_frame_of(dim, &warm[idx], k)
            } else {
                let mut rng = restart_rng(cfg.seed, (idx - warm.len()) as u64);
                seesaw::haar_frame(&mut rng, dim.n(), k)
            };
            seesaw::ascend(h, dim, start, cfg.max_iters, cfg.rel_tol)
        })
        .collect();
    let mut best = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.value.is_finite() && !(run.value <= runs[best].value) {
            best = i;
        }
    }
    (runs.into_iter().nth(best).expect("at least one restart"), total)
}

/// Suprema of `⟨ξ|X|ξ⟩` over unit `ξ` with Schmidt rank `≤ k`, for
/// `k = 1..=k_max`. `X` may be any Hermitian operator.
pub fn max_expectation_ladder(op: &HermitianOp, k_max: usize, cfg: &SolverConfig) -> Result<Vec<KNormResult>> {
    let dim = op.dim();
    dim.check_level(k_max)?;
    cfg.validate()?;
    let r = dim.min_dim();
    let top = spectral_result(op, r, true);
    let lambda_max = top.value;
    let spectral_warm = top.certificate.amplitudes().clone();

    let mut ladder: Vec<KNormResult> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k == r {
            ladder.push(top.clone());
            break;
        }
        let mut warm = Vec::with_capacity(2);
        if let Some(v) = truncate_to_rank(dim, &spectral_warm, k) {
            warm.push(v);
        }
        if let Some(prev) = ladder.last() {
            warm.push(prev.certificate.amplitudes().clone());
        }
        let (run, restarts_used) = multistart(op, k, cfg, &warm);
        let mut result = KNormResult {
            value: run.value.min(lambda_max),
            certificate: PureVector::normalized(dim, run.vector).expect("seesaw vectors are unit"),
            k,
            method: Method::Seesaw,
            restarts_used,
            converged: run.converged,
        };
        if let Some(prev) = ladder.last() {
            if prev.value >= result.value {
                result.value = prev.value;
                result.certificate = prev.certificate.clone();
                result.converged = prev.converged;
            }
        }
        ladder.push(result);
    }
    Ok(ladder)
}

/// `sup ⟨ξ|X|ξ⟩` over unit `ξ` with Schmidt rank `≤ k`.
pub fn max_expectation(op: &HermitianOp, k: usize, cfg: &SolverConfig) -> Result<KNormResult> {
    op.dim().check_level(k)?;
    if k == op.dim().min_dim() {
        cfg.validate()?;
        return Ok(spectral_result(op, k, true));
    }
    Ok(max_expectation_ladder(op, k, cfg)?.pop().expect("nonempty ladder"))
}

/// `‖ρ‖_S(k)`.
pub fn knorm(rho: &State, k: usize, cfg: &SolverConfig) -> Result<KNormResult> {
    max_expectation(rho, k, cfg)
}

/// `|X|_S(k)` for `k = 1..=k_max`, via `λ_max(X) − ‖λ_max(X)·I − X‖_S(k)`.
pub fn min_knorm_ladder(x: &HermitianOp, k_max: usize, cfg: &SolverConfig) -> Result<Vec<KNormResult>> {
    let dim = x.dim();
    dim.check_level(k_max)?;
    let r = dim.min_dim();
    let lambda_max = x.max_eigenvalue();
    let shifted = &HermitianOp::identity(dim).scaled(lambda_max) - x;
    let bottom = spectral_result(x, r, false);
    let upper = max_expectation_ladder(&shifted, k_max.min(r.saturating_sub(1)).max(1), cfg)?;
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k == r {
            out.push(bottom.clone());
            break;
        }
        let mut res = upper[k - 1].clone();
        res.value = (lambda_max - res.value).max(bottom.value);
        out.push(res);
    }
    Ok(out)
}

/// `|X|_S(k) = inf ⟨ξ|X|ξ⟩` over unit `ξ` with Schmidt rank `≤ k`. With the
/// seesaw this is an upper bound on the true infimum, realized by the
/// certificate.
pub fn min_knorm(x: &HermitianOp, k: usize, cfg: &SolverConfig) -> Result<KNormResult> {
    x.dim().check_level(k)?;
    if k == x.dim().min_dim() {
        cfg.validate()?;
        return Ok(spectral_result(x, k, false));
    }
    Ok(min_knorm_ladder(x, k, cfg)?.pop().expect("nonempty ladder"))
}

/// Maximum of `τ_k` over unit vectors of `E`, equal to `dim E · ‖ρ_E‖_S(k)`.
pub fn subspace_max_tau(e: &Subspace, k: usize, cfg: &SolverConfig) -> Result<KNormResult> {
    let dim = e.ambient();
    dim.check_level(k)?;
    cfg.validate()?;
    if e.dim() == 1 {
        let v = PureVector::normalized(dim, e.basis().column(0).into_owned())?;
        return Ok(KNormResult {
            value: tau_k(dim, v.amplitudes(), k)?,
            certificate: v,
            k,
            method: Method::ClosedForm,
            restarts_used: 0,
            converged: true,
        });
    }
    let overlap = max_expectation(&e.projector(), k, cfg)?;
    let inside = e.project(overlap.certificate.amplitudes());
    let certificate = PureVector::normalized(dim, inside)?;
    Ok(KNormResult {
        value: tau_k(dim, certificate.amplitudes(), k)?,
        certificate,
        k,
        method: overlap.method,
        restarts_used: overlap.restarts_used,
        converged: overlap.converged,
    })
}

/// Best `⟨ξ|ρ|ξ⟩` over `samples` Haar-random vectors truncated to Schmidt
/// rank `≤ k`. Always a lower bound of `‖ρ‖_S(k)`; used only as a cross-check.
pub fn brute_force_knorm(rho: &HermitianOp, k: usize, samples: usize, seed: u64) -> Result<f64> {
    let dim = rho.dim();
    dim.check_level(k)?;
    let mut rng = restart_rng(seed, u64::MAX);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let g = seesaw::haar_frame(&mut rng, dim.total(), 1).column(0).into_owned();
        if let Some(xi) = truncate_to_rank(dim, &g, k) {
            best = best.max(rho.expectation(&xi));
        }
    }
    Ok(best)
}
