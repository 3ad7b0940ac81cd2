//! Dense complex linear algebra on `C^m ⊗ C^n`.
//!
//! Basis ordering: `|i⟩⊗|j⟩` is flat index `i*n + j`, so a vector's `m x n`
//! reshaping is a row-major view of its amplitudes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{MatrixJson, VectorJson};
use crate::tol;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Local dimensions `(m, n)` of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDim")]
pub struct BipartiteDim {
    m: usize,
    n: usize,
}

#[derive(Deserialize)]
struct RawDim {
    m: usize,
    n: usize,
}

impl TryFrom<RawDim> for BipartiteDim {
    type Error = Error;
    fn try_from(raw: RawDim) -> Result<Self> {
        BipartiteDim::new(raw.m, raw.n)
    }
}

impl BipartiteDim {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::DegenerateDim { m, n });
        }
        Ok(Self { m, n })
    }

    /// Square system `n ⊗ n`.
    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total dimension `mn`.
    pub fn total(&self) -> usize {
        self.m * self.n
    }

    /// `m ∧ n`, the largest possible Schmidt rank.
    pub fn min_dim(&self) -> usize {
        self.m.min(self.n)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub(crate) fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.min_dim() {
            return Err(Error::LevelOutOfRange { k, max: self.min_dim() });
        }
        Ok(())
    }
}

impl fmt::Display for BipartiteDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.m, self.n)
    }
}

/// Hermitian operator on `C^m ⊗ C^n`.
///
/// Construction checks Hermiticity within [`tol::EPS_HERM`] and then
/// symmetrizes, so every stored matrix is exactly Hermitian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct HermitianOp {
    dim: BipartiteDim,
    mat: CMatrix,
}

impl HermitianOp {
    pub fn new(dim: BipartiteDim, mat: CMatrix) -> Result<Self> {
        let total = dim.total();
        if mat.nrows() != total || mat.ncols() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: mat.nrows().max(mat.ncols()),
            });
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut deviation = 0.0f64;
        for i in 0..total {
            for j in i..total {
                deviation = deviation.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if deviation > tol::EPS_HERM {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_matrix_unchecked(dim, mat))
    }

    /// Symmetrizes `mat` without validation. Shapes must already agree.
    pub(crate) fn from_matrix_unchecked(dim: BipartiteDim, mat: CMatrix) -> Self {
        let sym = (&mat + mat.adjoint()) * re(0.5);
        Self { dim, mat: sym }
    }

    /// Builds a real symmetric operator from `num / den` entries.
    ///
    /// Each entry is a single correctly rounded division, so operators with
    /// rational entries are reproduced to the last bit.
    pub fn from_rational(dim: BipartiteDim, numerators: &[i64], den: i64) -> Result<Self> {
        let total = dim.total();
        if numerators.len() != total * total {
            return Err(Error::DimensionMismatch {
                expected: total * total,
                found: numerators.len(),
            });
        }
        let mat = CMatrix::from_fn(total, total, |i, j| re(numerators[i * total + j] as f64 / den as f64));
        Self::new(dim, mat)
    }

    pub fn zeros(dim: BipartiteDim) -> Self {
        let t = dim.total();
        Self { dim, mat: CMatrix::zeros(t, t) }
    }

    pub fn identity(dim: BipartiteDim) -> Self {
        let t = dim.total();
        Self { dim, mat: CMatrix::identity(t, t) }
    }

    /// `|v⟩⟨v|` for an arbitrary (not necessarily unit) vector.
    pub fn outer(dim: BipartiteDim, v: &CVector) -> Result<Self> {
        if v.len() != dim.total() {
            return Err(Error::DimensionMismatch { expected: dim.total(), found: v.len() });
        }
        Ok(Self::from_matrix_unchecked(dim, v * v.adjoint()))
    }

    pub fn dim(&self) -> BipartiteDim {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re).sum()
    }

    /// `⟨v|H|v⟩` (not normalized by `‖v‖²`).
    pub fn expectation(&self, v: &CVector) -> f64 {
        v.dotc(&(&self.mat * v)).re
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { dim: self.dim, mat: &self.mat * re(factor) }
    }

    /// Normalizes to unit trace. Fails on (numerically) traceless operators.
    pub fn trace_normalized(&self) -> Result<Self> {
        let t = self.trace();
        if t.abs() < tol::EPS_TRACE {
            return Err(Error::NotUnitTrace { trace: t });
        }
        Ok(self.scaled(1.0 / t))
    }

    pub fn spectrum(&self) -> Spectrum {
        hermitian_spectrum(self)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.spectrum().values.last().expect("nonempty spectrum")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum().values[0]
    }

    pub fn max_abs_diff(&self, other: &HermitianOp) -> f64 {
        (&self.mat - &other.mat).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_same_dim(&self, other: &HermitianOp) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.total(),
                found: other.dim.total(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HermitianOp) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self { dim: self.dim, mat: &self.mat + &other.mat })
    }
}

impl Add for &HermitianOp {
    type Output = HermitianOp;
    /// Panics on mismatched dimensions; use [`HermitianOp::try_add`] otherwise.
    fn add(self, rhs: &HermitianOp) -> HermitianOp {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &HermitianOp {
    type Output = HermitianOp;
    fn sub(self, rhs: &HermitianOp) -> HermitianOp {
        assert_eq!(self.dim, rhs.dim, "operator dimensions differ");
        HermitianOp { dim: self.dim, mat: &self.mat - &rhs.mat }
    }
}

impl Mul<&HermitianOp> for f64 {
    type Output = HermitianOp;
    fn mul(self, rhs: &HermitianOp) -> HermitianOp {
        rhs.scaled(self)
    }
}

impl Neg for &HermitianOp {
    type Output = HermitianOp;
    fn neg(self) -> HermitianOp {
        self.scaled(-1.0)
    }
}

/// Positive semidefinite, unit-trace operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "MatrixJson")]
pub struct State(HermitianOp);

impl State {
    pub fn new(op: HermitianOp) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > tol::EPS_TRACE {
            return Err(Error::NotUnitTrace { trace });
        }
        let min_eigenvalue = op.min_eigenvalue();
        if min_eigenvalue < -tol::EPS_PSD {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(State(op))
    }

    /// The maximally mixed state `I / mn`.
    pub fn maximally_mixed(dim: BipartiteDim) -> Self {
        State(HermitianOp::identity(dim).scaled(1.0 / dim.total() as f64))
    }

    pub fn pure(v: &PureVector) -> Self {
        State(HermitianOp::from_matrix_unchecked(v.dim(), v.amplitudes() * v.amplitudes().adjoint()))
    }

    pub fn as_op(&self) -> &HermitianOp {
        &self.0
    }

    pub fn into_op(self) -> HermitianOp {
        self.0
    }
}

impl std::ops::Deref for State {
    type Target = HermitianOp;
    fn deref(&self) -> &HermitianOp {
        &self.0
    }
}

impl TryFrom<HermitianOp> for State {
    type Error = Error;
    fn try_from(op: HermitianOp) -> Result<Self> {
        State::new(op)
    }
}

impl From<State> for MatrixJson {
    fn from(s: State) -> Self {
        s.0.into()
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let op = HermitianOp::deserialize(d)?;
        State::new(op).map_err(serde::de::Error::custom)
    }
}

/// Unit vector in `C^m ⊗ C^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorJson", into = "VectorJson")]
pub struct PureVector {
    dim: BipartiteDim,
    amps: CVector,
}

impl PureVector {
    pub fn new(dim: BipartiteDim, amps: CVector) -> Result<Self> {
        if amps.len() != dim.total() {
            return Err(Error::DimensionMismatch { expected: dim.total(), found: amps.len() });
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > tol::EPS_UNIT {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self { dim, amps })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(dim: BipartiteDim, amps: CVector) -> Result<Self> {
        if amps.len() != dim.total() {
            return Err(Error::DimensionMismatch { expected: dim.total(), found: amps.len() });
        }
        let norm = amps.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { dim, amps: amps.unscale(norm) })
    }

    /// Normalized `x ⊗ y`.
    pub fn product(x: &[C64], y: &[C64]) -> Result<Self> {
        let dim = BipartiteDim::new(x.len(), y.len())?;
        let amps = CVector::from_fn(dim.total(), |idx, _| x[idx / dim.n()] * y[idx % dim.n()]);
        Self::normalized(dim, amps)
    }

    /// `|i⟩⊗|j⟩`.
    pub fn basis(dim: BipartiteDim, i: usize, j: usize) -> Self {
        let mut amps = CVector::zeros(dim.total());
        amps[dim.index(i, j)] = ONE;
        Self { dim, amps }
    }

    pub fn dim(&self) -> BipartiteDim {
        self.dim
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amps
    }

    pub fn schmidt_rank(&self) -> usize {
        schmidt_decompose(self).schmidt_rank
    }
}

/// Singular-value data of a vector's `m x n` reshaping.
///
/// The source vector equals `Σ_l s_l |left_l⟩ ⊗ |right_l⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtData {
    /// `s_1 ≥ … ≥ s_{m∧n} ≥ 0`.
    pub coefficients: Vec<f64>,
    /// `m x (m∧n)`, orthonormal columns.
    pub left_vectors: CMatrix,
    /// `n x (m∧n)`, orthonormal columns.
    pub right_vectors: CMatrix,
    pub schmidt_rank: usize,
}

impl SchmidtData {
    pub fn reconstruct(&self) -> CVector {
        let m = self.left_vectors.nrows();
        let n = self.right_vectors.nrows();
        CVector::from_fn(m * n, |idx, _| {
            let (i, j) = (idx / n, idx % n);
            self.coefficients
                .iter()
                .enumerate()
                .map(|(l, &s)| self.left_vectors[(i, l)] * self.right_vectors[(j, l)] * s)
                .sum()
        })
    }
}

/// Orthonormal basis of a subspace `E ⊆ C^m ⊗ C^n`, stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient: BipartiteDim,
    basis: CMatrix,
}

impl Subspace {
    /// Validates orthonormality of the supplied columns.
    pub fn new(ambient: BipartiteDim, basis: CMatrix) -> Result<Self> {
        if basis.nrows() != ambient.total() {
            return Err(Error::DimensionMismatch { expected: ambient.total(), found: basis.nrows() });
        }
        if basis.ncols() == 0 || basis.ncols() > ambient.total() {
            return Err(Error::TrivialSubspace { dim: basis.ncols(), total: ambient.total() });
        }
        let gram = basis.adjoint() * &basis;
        let deviation = (&gram - CMatrix::identity(basis.ncols(), basis.ncols()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > tol::EPS_ORTH {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(Self { ambient, basis })
    }

    /// Orthonormal basis of the span of arbitrary vectors.
    pub fn span(ambient: BipartiteDim, vectors: &[CVector]) -> Result<Self> {
        let total = ambient.total();
        if vectors.is_empty() {
            return Err(Error::TrivialSubspace { dim: 0, total });
        }
        for v in vectors {
            if v.len() != total {
                return Err(Error::DimensionMismatch { expected: total, found: v.len() });
            }
        }
        let stacked = CMatrix::from_columns(vectors);
        let svd = stacked.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if smax == 0.0 {
            return Err(Error::TrivialSubspace { dim: 0, total });
        }
        let mut keep: Vec<(f64, usize)> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > tol::SR_TOL * smax)
            .map(|(i, &s)| (s, i))
            .collect();
        keep.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let cols: Vec<CVector> = keep.iter().map(|&(_, i)| u.column(i).into_owned()).collect();
        Self::new(ambient, CMatrix::from_columns(&cols))
    }

    pub fn full(ambient: BipartiteDim) -> Self {
        let t = ambient.total();
        Self { ambient, basis: CMatrix::identity(t, t) }
    }

    pub fn ambient(&self) -> BipartiteDim {
        self.ambient
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> HermitianOp {
        HermitianOp::from_matrix_unchecked(self.ambient, &self.basis * self.basis.adjoint())
    }

    /// `P_E / dim E`.
    pub fn projection_state(&self) -> State {
        State(self.projector().scaled(1.0 / self.dim() as f64))
    }

    pub fn project(&self, v: &CVector) -> CVector {
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Distance from `v` to the subspace.
    pub fn distance(&self, v: &CVector) -> f64 {
        (v - self.project(v)).norm()
    }

    /// `E^⊥`. Fails when `E` is the whole space.
    pub fn complement(&self) -> Result<Subspace> {
        let total = self.ambient.total();
        if self.dim() >= total {
            return Err(Error::TrivialSubspace { dim: self.dim(), total });
        }
        let residual = CMatrix::identity(total, total) - &self.basis * self.basis.adjoint();
        let spec = hermitian_spectrum(&HermitianOp::from_matrix_unchecked(self.ambient, residual));
        let cols: Vec<CVector> = spec
            .values
            .iter()
            .enumerate()
            .rev()
            .take(total - self.dim())
            .map(|(i, _)| spec.vectors.column(i).into_owned())
            .collect();
        Subspace::new(self.ambient, CMatrix::from_columns(&cols))
    }
}

/// Eigen-decomposition of a Hermitian operator.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is the eigenvector of `values[i]`.
    pub vectors: CMatrix,
}

impl Spectrum {
    /// Eigenvectors whose eigenvalues lie within `tol` of `target`.
    pub fn eigenspace(&self, dim: BipartiteDim, target: f64, tol: f64) -> Result<Subspace> {
        let cols: Vec<CVector> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| (v - target).abs() <= tol)
            .map(|(i, _)| self.vectors.column(i).into_owned())
            .collect();
        if cols.is_empty() {
            return Err(Error::TrivialSubspace { dim: 0, total: dim.total() });
        }
        Subspace::new(dim, CMatrix::from_columns(&cols))
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub(crate) fn eigh(mat: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(mat.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(mat.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_spectrum(h: &HermitianOp) -> Spectrum {
    let (values, vectors) = eigh(h.matrix());
    Spectrum { values, vectors }
}

/// Entry `(i, j)` is the amplitude of `|i⟩⊗|j⟩`.
pub fn reshape_to_matrix(v: &PureVector) -> CMatrix {
    reshape(v.dim(), v.amplitudes()).expect("pure vector has consistent length")
}

pub fn reshape(dim: BipartiteDim, v: &CVector) -> Result<CMatrix> {
    if v.len() != dim.total() {
        return Err(Error::DimensionMismatch { expected: dim.total(), found: v.len() });
    }
    Ok(CMatrix::from_fn(dim.m(), dim.n(), |i, j| v[dim.index(i, j)]))
}

/// Inverse of [`reshape`].
pub fn vectorize(mat: &CMatrix) -> CVector {
    let n = mat.ncols();
    CVector::from_fn(mat.nrows() * n, |idx, _| mat[(idx / n, idx % n)])
}

/// Singular values (descending) with left and right singular vectors.
pub(crate) fn sorted_svd(mat: &CMatrix) -> (Vec<f64>, CMatrix, CMatrix) {
    let svd = mat.clone().svd(true, true);
    let u = svd.u.expect("requested u");
    let v = svd.v_t.expect("requested v_t").adjoint();
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let s = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u = CMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v = CMatrix::from_fn(v.nrows(), order.len(), |r, c| v[(r, order[c])]);
    (s, u, v)
}

fn schmidt_of(dim: BipartiteDim, v: &CVector) -> Result<SchmidtData> {
    let mat = reshape(dim, v)?;
    let (s, u, w) = sorted_svd(&mat);
    // mat = U S W^H, so v = Σ s_l u_l ⊗ conj(w_l)
    let right = w.map(|z| z.conj());
    let rank = match s.first() {
        Some(&s1) if s1 > 0.0 => s.iter().filter(|&&x| x > tol::SR_TOL * s1).count(),
        _ => 0,
    };
    Ok(SchmidtData { coefficients: s, left_vectors: u, right_vectors: right, schmidt_rank: rank })
}

pub fn schmidt_decompose(v: &PureVector) -> SchmidtData {
    schmidt_of(v.dim(), v.amplitudes()).expect("pure vector has consistent length")
}

/// Schmidt rank of an arbitrary vector (0 for the zero vector).
pub fn schmidt_rank(dim: BipartiteDim, v: &CVector) -> Result<usize> {
    Ok(schmidt_of(dim, v)?.schmidt_rank)
}

/// Sum of the `k` largest squared Schmidt coefficients of `v`.
pub fn tau_k(dim: BipartiteDim, v: &CVector, k: usize) -> Result<f64> {
    dim.check_level(k)?;
    let data = schmidt_of(dim, v)?;
    Ok(data.coefficients.iter().take(k).map(|s| s * s).sum())
}

/// Positive square root; eigenvalues in `[-EPS_PSD, 0)` are clamped to zero.
pub fn psd_sqrt(h: &HermitianOp) -> Result<HermitianOp> {
    let spec = h.spectrum();
    if spec.values[0] < -tol::EPS_PSD {
        return Err(Error::NotPositive { min_eigenvalue: spec.values[0] });
    }
    let roots = CVector::from_iterator(spec.values.len(), spec.values.iter().map(|&x| re(x.max(0.0).sqrt())));
    let scaled = CMatrix::from_fn(spec.vectors.nrows(), spec.vectors.ncols(), |r, c| spec.vectors[(r, c)] * roots[c]);
    Ok(HermitianOp::from_matrix_unchecked(h.dim(), scaled * spec.vectors.adjoint()))
}

/// Transposes every `n x n` block of the `M_m(M_n)` block structure.
pub fn partial_transpose(h: &HermitianOp) -> HermitianOp {
    let dim = h.dim();
    let n = dim.n();
    let src = h.matrix();
    let mat = CMatrix::from_fn(dim.total(), dim.total(), |r, c| {
        let (i, a) = (r / n, r % n);
        let (j, b) = (c / n, c % n);
        src[(i * n + b, j * n + a)]
    });
    HermitianOp { dim, mat }
}

/// Hilbert-Schmidt inner product `tr(A^H B)`.
pub fn hs_inner(a: &HermitianOp, b: &HermitianOp) -> Result<f64> {
    a.check_same_dim(b)?;
    Ok(a.matrix().iter().zip(b.matrix().iter()).map(|(x, y)| (x.conj() * y).re).sum())
}
