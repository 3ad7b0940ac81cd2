//! Alternating maximization of `⟨ξ|H|ξ⟩` over `ξ = vec(A Bᵀ)`, `A: m x k`, `B: n x k`.
//!
//! With one factor held at orthonormal columns the map from the other factor
//! to `ξ` is an isometry, so each half-step is an exact top-eigenvector solve
//! of a `(mk) x (mk)` or `(nk) x (nk)` Hermitian matrix and the objective
//! never decreases.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{eigh, reshape, sorted_svd, BipartiteDim, CMatrix, CVector, C64, ZERO};

#[derive(Clone, Debug)]
pub(crate) struct Ascent {
    pub value: f64,
    pub vector: CVector,
    pub converged: bool,
}

/// `ξ = L_B a` with `a` the row-major flattening of `A`.
fn right_embedding(dim: BipartiteDim, b: &CMatrix) -> CMatrix {
    let (m, n, k) = (dim.m(), dim.n(), b.ncols());
    let mut l = CMatrix::zeros(m * n, m * k);
    for i in 0..m {
        for j in 0..n {
            for c in 0..k {
                l[(i * n + j, i * k + c)] = b[(j, c)];
            }
        }
    }
    l
}

/// `ξ = L_A b` with `b` the row-major flattening of `B`.
fn left_embedding(dim: BipartiteDim, a: &CMatrix) -> CMatrix {
    let (m, n, k) = (dim.m(), dim.n(), a.ncols());
    let mut l = CMatrix::zeros(m * n, n * k);
    for i in 0..m {
        for j in 0..n {
            for c in 0..k {
                l[(i * n + j, j * k + c)] = a[(i, c)];
            }
        }
    }
    l
}

fn top_eigenpair(reduced: &CMatrix) -> (f64, CVector) {
    let (values, vectors) = eigh(reduced);
    let last = values.len() - 1;
    (values[last], vectors.column(last).into_owned())
}

fn unflatten(v: &CVector, rows: usize, k: usize) -> CMatrix {
    CMatrix::from_fn(rows, k, |r, c| v[r * k + c])
}

/// Orthonormal columns spanning (at least) the column space of `x`.
///
/// Modified Gram-Schmidt, run twice per column. Columns that are (nearly)
/// dependent on earlier ones are replaced by standard basis vectors, so the
/// result always has full column rank even when `x` does not.
pub(crate) fn orthonormalize(x: &CMatrix) -> CMatrix {
    let (rows, k) = x.shape();
    let scale = Some(x.norm()).filter(|s| s.is_finite()).unwrap_or(1.0).max(f64::MIN_POSITIVE);
    let mut q = CMatrix::zeros(rows, k);
    let mut spare = 0;
    for c in 0..k {
        let mut v = x.column(c).into_owned();
        loop {
            for _ in 0..2 {
                for p in 0..c {
                    let qp = q.column(p);
                    let proj = qp.dotc(&v);
                    v -= qp * proj;
                }
            }
            let norm = v.norm();
            if norm > 1e-10 * scale && norm.is_finite() {
                q.set_column(c, &v.unscale(norm));
                break;
            }
            v = CVector::from_fn(rows, |r, _| if r == spare { C64::new(1.0, 0.0) } else { ZERO });
            spare += 1;
        }
    }
    q
}

/// Haar-random `rows x k` matrix with orthonormal columns.
pub(crate) fn haar_frame(rng: &mut ChaCha8Rng, rows: usize, k: usize) -> CMatrix {
    let g = CMatrix::from_fn(rows, k, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    orthonormalize(&g)
}

pub(crate) fn restart_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Right factor `B` (`n x k`, orthonormal) whose span contains the rows of
/// the reshaping of `xi`.
pub(crate) fn right_frame_of(dim: BipartiteDim, xi: &CVector, k: usize) -> CMatrix {
    let mat = reshape(dim, xi).expect("vector matches dimension");
    let (_, _, v) = sorted_svd(&mat);
    // mat = U S V^H = A B^T with B = conj(V)
    let b = CMatrix::from_fn(dim.n(), k, |r, c| v[(r, c)].conj());
    orthonormalize(&b)
}

pub(crate) fn ascend(h: &CMatrix, dim: BipartiteDim, start: CMatrix, max_iters: usize, rel_tol: f64) -> Ascent {
    let k = start.ncols();
    let mut b = start;
    let mut prev = f64::NEG_INFINITY;
    let mut vector = CVector::from_element(dim.total(), ZERO);
    let mut converged = false;
    for _ in 0..max_iters {
        let lb = right_embedding(dim, &b);
        let (_, a_flat) = top_eigenpair(&(lb.adjoint() * h * &lb));
        let a = orthonormalize(&unflatten(&a_flat, dim.m(), k));

        let la = left_embedding(dim, &a);
        let (value, b_flat) = top_eigenpair(&(la.adjoint() * h * &la));
        vector = &la * &b_flat;
        b = unflatten(&b_flat, dim.n(), k);

        if (value - prev).abs() <= rel_tol * value.abs().max(f64::MIN_POSITIVE) {
            converged = true;
            break;
        }
        prev = value;
        b = orthonormalize(&b);
    }
    let norm = vector.norm();
    if norm > 0.0 {
        vector.unscale_mut(norm);
    }
    let value = vector.dotc(&(h * &vector)).re;
    Ascent { value, vector, converged }
}

/// Identity-free shape check used by tests.
#[allow(dead_code)]
pub(crate) fn is_isometry(l: &DMatrix<C64>) -> bool {
    let g = l.adjoint() * l;
    (g - CMatrix::identity(l.ncols(), l.ncols())).norm() < 1e-12
}
