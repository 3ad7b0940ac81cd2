//! Building a witness from a state, and locating the face a witness lies
//! outside of.
//!
//!     cargo run --release --example witness

use schmidt_witness::families::{omega, rho, xi};
use schmidt_witness::geometry::{classify_witness, face_outside, witness_from_state};
use schmidt_witness::knorm::{min_knorm, SolverConfig};

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();

    let w = witness_from_state(&rho(2)?, 1, &cfg)?;
    let target = omega(2, 1)?;
    println!("witness from rho2 at k=1 differs from ω(2,1) by {:.2e}", w.max_abs_diff(&target));
    println!("  class: {}", classify_witness(&w, &cfg)?.describe());
    println!("  |W|_S(1) = {:.2e}", min_knorm(&w, 1, &cfg)?.value);

    for (i, k) in [(3, 1), (3, 2), (2, 1)] {
        let x = omega(i, k)?;
        let face = face_outside(&x)?;
        let perp = face.range_subspace.complement()?;
        let v = perp.basis().column(0).into_owned();
        let named = (1..=3).find(|&j| xi(j).map(|u| u.amplitudes().dotc(&v).norm() > 1.0 - 1e-9).unwrap_or(false));
        println!(
            "ω({i},{k}): {}; crosses the boundary at s* = {:.6}, face of corank {} (complement ξ{})",
            classify_witness(&x, &cfg)?.describe(),
            face.crossing,
            face.corank,
            named.map_or("?".to_string(), |j| j.to_string()),
        );
    }
    Ok(())
}
