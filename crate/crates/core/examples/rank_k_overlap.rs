//! Best overlap of a matrix with unit matrices of rank at most k.
//!
//!     cargo run --release --example rank_k_overlap

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schmidt_witness::knorm::rank_k_overlap;
use schmidt_witness::linalg::{CMatrix, C64};

fn main() -> schmidt_witness::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = CMatrix::from_fn(3, 4, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let s = s.unscale(s.norm());
    let sv = s.singular_values();
    let mut squares: Vec<f64> = sv.iter().map(|x| x * x).collect();
    squares.sort_by(|a, b| b.total_cmp(a));
    for k in 1..=3 {
        let (value, t0) = rank_k_overlap(&s, k)?;
        let tau: f64 = squares[..k].iter().sum();
        println!("k={k}: overlap {value:.12}  sum of top-{k} σ² {tau:.12}  rank(t₀) = {}", t0.rank(1e-10));
    }
    Ok(())
}
