#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use schmidt_witness::linalg::{BipartiteDim, CMatrix, HermitianOp, State, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    })
}

/// `G G^H / tr`, with `G` an `mn x rank` complex Gaussian matrix.
pub fn random_state(rng: &mut ChaCha8Rng, dim: BipartiteDim, rank: usize) -> State {
    let g = gaussian(rng, dim.total(), rank);
    let op = HermitianOp::new(dim, &g * g.adjoint()).unwrap().trace_normalized().unwrap();
    State::new(op).unwrap()
}
