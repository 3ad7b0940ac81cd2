//! Where Schmidt number witnesses sit relative to the state space.
//!
//! Along `X_λ = (1−λ)ρ* + λρ`, `X_λ` is k-blockpositive exactly on
//! `[β⁻_k, β⁺_k]` with
//!
//! ```text
//! β⁻_k = −1 / (mn·‖ρ‖_S(k) − 1),    β⁺_k = −1 / (mn·|ρ|_S(k) − 1).
//! ```
//!
//! A nonpositive trace-1 `X` lies outside exactly one face `F_E` of the state
//! space: the one whose interior the segment from `X` to `ρ*` crosses. Schmidt
//! number `k+1` witnesses exist outside `F_E` iff `E^⊥` is k-entangled.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{BasisJson, MatrixJson};
use crate::knorm::{max_expectation_ladder, min_knorm, min_knorm_ladder, subspace_max_tau, SolverConfig};
use crate::linalg::{BipartiteDim, HermitianOp, State, Subspace};
use crate::tol;

/// `(1−λ)ρ* + λρ`.
pub fn x_lambda(rho: &State, lambda: f64) -> HermitianOp {
    let star = State::maximally_mixed(rho.dim());
    &star.scaled(1.0 - lambda) + &rho.scaled(lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaThresholds {
    #[serde(skip)]
    pub dim: BipartiteDim,
    /// Index `k − 1` holds `β⁻_k`; ascending, all negative.
    pub beta_minus: Vec<f64>,
    /// Index `k − 1` holds `β⁺_k`; descending, all `≥ 1`.
    pub beta_plus: Vec<f64>,
    pub delta_minus: f64,
    pub delta_plus: f64,
    /// Every optimizer run behind the thresholds met its tolerance.
    pub converged: bool,
}

impl BetaThresholds {
    pub fn minus(&self, k: usize) -> f64 {
        self.beta_minus[k - 1]
    }

    pub fn plus(&self, k: usize) -> f64 {
        self.beta_plus[k - 1]
    }

    /// Whether `X_λ` is k-blockpositive according to the thresholds.
    pub fn contains(&self, k: usize, lambda: f64) -> bool {
        self.minus(k) <= lambda && lambda <= self.plus(k)
    }
}

fn threshold(total: usize, norm: f64) -> f64 {
    -1.0 / (total as f64 * norm - 1.0)
}

fn is_maximally_mixed(op: &HermitianOp) -> bool {
    let spec = op.spectrum();
    spec.values[spec.values.len() - 1] - spec.values[0] < tol::EPS_NUM
}

pub fn beta_thresholds(rho: &State, cfg: &SolverConfig) -> Result<BetaThresholds> {
    if is_maximally_mixed(rho) {
        return Err(Error::DegenerateFamily);
    }
    let dim = rho.dim();
    let r = dim.min_dim();
    let total = dim.total();
    let upper = max_expectation_ladder(rho, r, cfg)?;
    let lower = min_knorm_ladder(rho, r, cfg)?;
    let beta_minus: Vec<f64> = upper.iter().map(|res| threshold(total, res.value)).collect();
    let beta_plus: Vec<f64> = lower.iter().map(|res| threshold(total, res.value)).collect();
    let converged = upper.iter().chain(&lower).all(|res| res.converged);
    Ok(BetaThresholds {
        dim,
        converged,
        delta_minus: beta_minus[r - 1],
        delta_plus: beta_plus[r - 1],
        beta_minus,
        beta_plus,
    })
}

pub fn is_k_blockpositive(x: &HermitianOp, k: usize, cfg: &SolverConfig) -> Result<bool> {
    Ok(min_knorm(x, k, cfg)?.value >= -tol::EPS_BP)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessClass {
    /// Largest `k` with `X` k-blockpositive; 0 if not even 1-blockpositive.
    pub max_bp_level: usize,
    pub is_state: bool,
    /// `max_bp_level + 1` when `X` is a Schmidt number witness.
    pub witnessed_schmidt_number: Option<usize>,
}

impl WitnessClass {
    pub fn describe(&self) -> String {
        match (self.is_state, self.witnessed_schmidt_number) {
            (true, _) => "state".to_string(),
            (false, Some(s)) => format!("Schmidt number {s} witness"),
            (false, None) => "not blockpositive at any level".to_string(),
        }
    }
}

fn check_unit_trace(x: &HermitianOp) -> Result<()> {
    let trace = x.trace();
    if (trace - 1.0).abs() > tol::EPS_TRACE {
        return Err(Error::NotUnitTrace { trace });
    }
    Ok(())
}

/// Position of a trace-1 Hermitian matrix in the chain `BP_1 ⊃ BP_2 ⊃ … ⊃ D`.
pub fn classify_witness(x: &HermitianOp, cfg: &SolverConfig) -> Result<WitnessClass> {
    check_unit_trace(x)?;
    let r = x.dim().min_dim();
    let ladder = min_knorm_ladder(x, r, cfg)?;
    let max_bp_level = ladder.iter().take_while(|res| res.value >= -tol::EPS_BP).count();
    let witnessed_schmidt_number = (1..r).contains(&max_bp_level).then_some(max_bp_level + 1);
    Ok(WitnessClass { max_bp_level, is_state: max_bp_level == r, witnessed_schmidt_number })
}

/// `(α·I − ρ)` normalized to trace 1, with `α = ‖ρ‖_S(k)`.
///
/// The result is k-blockpositive with `|W|_S(k) = 0`; it is a Schmidt number
/// `k+1` witness when `‖ρ‖_S(k) < ‖ρ‖_S(k+1)`, which is required.
pub fn witness_from_state(rho: &State, k: usize, cfg: &SolverConfig) -> Result<HermitianOp> {
    let dim = rho.dim();
    dim.check_level(k)?;
    if k == dim.min_dim() {
        return Err(Error::Precondition(format!(
            "no Schmidt number {} witness exists in {dim}",
            k + 1
        )));
    }
    let ladder = max_expectation_ladder(rho, k + 1, cfg)?;
    let (alpha, next) = (ladder[k - 1].value, ladder[k].value);
    if next - alpha <= tol::EPS_NUM {
        return Err(Error::Precondition(format!(
            "‖ρ‖_S({}) = {next} does not exceed ‖ρ‖_S({k}) = {alpha}",
            k + 1
        )));
    }
    let raw = &HermitianOp::identity(dim).scaled(alpha) - rho.as_op();
    raw.trace_normalized()
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceLocation {
    /// `s*` with `(1−s*)ρ* + s*X` on the boundary of the state space.
    pub crossing: f64,
    #[serde(serialize_with = "serialize_state")]
    pub boundary_state: State,
    /// Range of the boundary state; `X` is outside `F_E` for this `E`.
    #[serde(serialize_with = "serialize_subspace")]
    pub range_subspace: Subspace,
    pub corank: usize,
}

fn serialize_state<S: serde::Serializer>(s: &State, ser: S) -> std::result::Result<S::Ok, S::Error> {
    MatrixJson::from(s.as_op().clone()).serialize(ser)
}

fn serialize_subspace<S: serde::Serializer>(e: &Subspace, ser: S) -> std::result::Result<S::Ok, S::Error> {
    BasisJson::from(e).serialize(ser)
}

/// Face of the state space that a nonpositive trace-1 `X` lies outside of.
///
/// Since `ρ*` is scalar, the minimum eigenvalue of `(1−s)ρ* + sX` is
/// `(1−s)/mn + s·λ_min(X)`, which vanishes at `s* = 1/(1 − mn·λ_min(X))`.
pub fn face_outside(x: &HermitianOp) -> Result<FaceLocation> {
    check_unit_trace(x)?;
    let dim = x.dim();
    let total = dim.total() as f64;
    let lambda_min = x.min_eigenvalue();
    if lambda_min >= -tol::EPS_PSD {
        return Err(Error::InsideStateSpace);
    }
    let crossing = 1.0 / (1.0 - total * lambda_min);
    let boundary = x_lambda_op(x, crossing);
    let spec = boundary.spectrum();
    let top = spec.values[spec.values.len() - 1];
    let floor = spec.values[0];
    if floor < -tol::EPS_PSD || floor > tol::EPS_FACE {
        return Err(Error::Precondition(format!("boundary state has minimum eigenvalue {floor:.3e}")));
    }
    let range_subspace = spec.eigenspace(dim, top, top - tol::RANK_TOL * top)?;
    let corank = dim.total() - range_subspace.dim();
    Ok(FaceLocation { crossing, boundary_state: State::new(boundary)?, range_subspace, corank })
}

fn x_lambda_op(x: &HermitianOp, s: f64) -> HermitianOp {
    let star = State::maximally_mixed(x.dim());
    &star.scaled(1.0 - s) + &x.scaled(s)
}

/// Dimensions above `(m−k)(n−k)` always contain a vector of Schmidt rank `≤ k`.
pub fn generic_rank_bound(dim: BipartiteDim, k: usize) -> usize {
    (dim.m() - k.min(dim.m())) * (dim.n() - k.min(dim.n()))
}

/// Whether every nonzero vector of `E` has Schmidt rank `> k`.
pub fn is_k_entangled(e: &Subspace, k: usize, cfg: &SolverConfig) -> Result<bool> {
    let dim = e.ambient();
    dim.check_level(k)?;
    if e.dim() > generic_rank_bound(dim, k) {
        return Ok(false);
    }
    Ok(subspace_max_tau(e, k, cfg)?.value < 1.0 - tol::EPS_ENT)
}

/// Largest `k` with `E` k-entangled; 0 when `E` contains a product vector.
pub fn entanglement_order(e: &Subspace, cfg: &SolverConfig) -> Result<usize> {
    let r = e.ambient().min_dim();
    let mut order = 0;
    for k in 1..r {
        if !is_k_entangled(e, k, cfg)? {
            break;
        }
        order = k;
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWitnessReport {
    pub dim_e: usize,
    /// Exact entanglement order of `E^⊥`.
    pub max_witness_level: usize,
    /// Schmidt numbers `ℓ` of witnesses that exist outside `F_E`.
    pub admissible_levels: Vec<usize>,
    /// `k(m+n−k)` for `k = max_witness_level`.
    pub dimension_bound: usize,
    /// `dim E ≥ k(m+n−k)`, necessary whenever `k ≥ 1`.
    pub dimension_bound_holds: bool,
}

fn check_proper(e: &Subspace) -> Result<()> {
    let total = e.ambient().total();
    if e.dim() == 0 || e.dim() >= total {
        return Err(Error::TrivialSubspace { dim: e.dim(), total });
    }
    Ok(())
}

/// Which Schmidt number witnesses lie outside the face `F_E`.
pub fn witnesses_outside_face(e: &Subspace, cfg: &SolverConfig) -> Result<FaceWitnessReport> {
    check_proper(e)?;
    let dim = e.ambient();
    let level = entanglement_order(&e.complement()?, cfg)?;
    let admissible_levels = if level >= 1 { (2..=level + 1).collect() } else { Vec::new() };
    let dimension_bound = level * (dim.m() + dim.n() - level);
    Ok(FaceWitnessReport {
        dim_e: e.dim(),
        max_witness_level: level,
        admissible_levels,
        dimension_bound,
        dimension_bound_holds: e.dim() >= dimension_bound,
    })
}

#[derive(Clone, Debug)]
pub struct OppositeFace {
    pub proj_state_e: State,
    pub proj_state_eperp: State,
}

/// Projection states of `F_E` and of the opposite face `F_{E^⊥}`.
pub fn opposite_face_data(e: &Subspace) -> Result<OppositeFace> {
    check_proper(e)?;
    Ok(OppositeFace { proj_state_e: e.projection_state(), proj_state_eperp: e.complement()?.projection_state() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryInteriorCheck {
    /// `‖ρ‖_S(k) < λ_max(ρ)`.
    pub interior_minus: bool,
    /// `|ρ|_S(k) > λ_min(ρ)`.
    pub interior_plus: bool,
    /// Top eigenspace of `ρ` is k-entangled.
    pub entangled_top: bool,
    /// Bottom eigenspace of `ρ` is k-entangled.
    pub entangled_bottom: bool,
}

impl BoundaryInteriorCheck {
    pub fn equivalences_hold(&self) -> bool {
        self.interior_minus == self.entangled_top && self.interior_plus == self.entangled_bottom
    }
}

/// Evaluates both sides of: `X_{δ∓}` is interior to `BP_k` iff the top
/// (bottom) eigenspace of `ρ` is k-entangled.
pub fn boundary_interior_check(rho: &State, k: usize, cfg: &SolverConfig) -> Result<BoundaryInteriorCheck> {
    let dim = rho.dim();
    dim.check_level(k)?;
    let spec = rho.spectrum();
    let lambda_min = spec.values[0];
    let lambda_max = spec.values[spec.values.len() - 1];
    let upper = max_expectation_ladder(rho, k, cfg)?.pop().expect("nonempty ladder");
    let lower = min_knorm(rho, k, cfg)?;
    let top = spec.eigenspace(dim, lambda_max, tol::EIG_CLUSTER)?;
    let bottom = spec.eigenspace(dim, lambda_min, tol::EIG_CLUSTER)?;
    Ok(BoundaryInteriorCheck {
        interior_minus: upper.value < lambda_max - tol::EPS_NUM,
        interior_plus: lower.value > lambda_min + tol::EPS_NUM,
        entangled_top: is_k_entangled(&top, k, cfg)?,
        entangled_bottom: is_k_entangled(&bottom, k, cfg)?,
    })
}
