//! JSON interchange for matrices, vectors and subspace bases.
//!
//! Matrices: `{"m": 3, "n": 3, "entries": [[[re, im], ...], ...]}` with
//! `mn x mn` row-major entries. Vectors: `{"m", "n", "amplitudes": [[re, im], ...]}`.
//! Subspace bases: `{"m", "n", "vectors": [[[re, im], ...], ...]}`, not
//! necessarily orthonormal.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{BipartiteDim, CMatrix, CVector, HermitianOp, PureVector, Subspace, C64};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorJson {
    pub m: usize,
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub m: usize,
    pub n: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

fn pair(z: &C64) -> [f64; 2] {
    [z.re, z.im]
}

fn complex(p: &[f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn to_vector(dim: BipartiteDim, amps: &[[f64; 2]]) -> Result<CVector> {
    if amps.len() != dim.total() {
        return Err(Error::DimensionMismatch { expected: dim.total(), found: amps.len() });
    }
    Ok(CVector::from_iterator(amps.len(), amps.iter().map(complex)))
}

impl From<HermitianOp> for MatrixJson {
    fn from(op: HermitianOp) -> Self {
        let dim = op.dim();
        let mat = op.matrix();
        let entries = (0..mat.nrows()).map(|r| (0..mat.ncols()).map(|c| pair(&mat[(r, c)])).collect()).collect();
        MatrixJson { m: dim.m(), n: dim.n(), entries }
    }
}

impl TryFrom<MatrixJson> for HermitianOp {
    type Error = Error;
    fn try_from(json: MatrixJson) -> Result<Self> {
        let dim = BipartiteDim::new(json.m, json.n)?;
        let total = dim.total();
        if json.entries.len() != total {
            return Err(Error::DimensionMismatch { expected: total, found: json.entries.len() });
        }
        if let Some(row) = json.entries.iter().find(|row| row.len() != total) {
            return Err(Error::DimensionMismatch { expected: total, found: row.len() });
        }
        let mat = CMatrix::from_fn(total, total, |r, c| complex(&json.entries[r][c]));
        HermitianOp::new(dim, mat)
    }
}

impl From<PureVector> for VectorJson {
    fn from(v: PureVector) -> Self {
        let dim = v.dim();
        VectorJson { m: dim.m(), n: dim.n(), amplitudes: v.amplitudes().iter().map(pair).collect() }
    }
}

impl TryFrom<VectorJson> for PureVector {
    type Error = Error;
    fn try_from(json: VectorJson) -> Result<Self> {
        let dim = BipartiteDim::new(json.m, json.n)?;
        PureVector::new(dim, to_vector(dim, &json.amplitudes)?)
    }
}

impl From<&Subspace> for BasisJson {
    fn from(e: &Subspace) -> Self {
        let dim = e.ambient();
        let vectors = e.basis().column_iter().map(|c| c.iter().map(pair).collect()).collect();
        BasisJson { m: dim.m(), n: dim.n(), vectors }
    }
}

impl TryFrom<BasisJson> for Subspace {
    type Error = Error;
    fn try_from(json: BasisJson) -> Result<Self> {
        let dim = BipartiteDim::new(json.m, json.n)?;
        let vectors = json.vectors.iter().map(|v| to_vector(dim, v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(dim, &vectors)
    }
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<HermitianOp> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_basis(path: impl AsRef<Path>) -> Result<Subspace> {
    let text = std::fs::read_to_string(path)?;
    let json: BasisJson = serde_json::from_str(&text)?;
    json.try_into()
}
