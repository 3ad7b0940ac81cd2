//! Operator k-norms of a few named states, with the certificate vectors.
//!
//!     cargo run --release --example knorm

use schmidt_witness::families::{antisymmetric, max_entangled, rho};
use schmidt_witness::knorm::{brute_force_knorm, knorm, min_knorm, SolverConfig};
use schmidt_witness::linalg::State;

fn report(name: &str, state: &State, cfg: &SolverConfig) -> schmidt_witness::Result<()> {
    let r = state.dim().min_dim();
    for k in 1..=r {
        let res = knorm(state, k, cfg)?;
        let low = min_knorm(state, k, cfg)?;
        println!(
            "{name:>16}  k={k}  ‖ρ‖ = {:.10}  |ρ| = {:.10}  certificate rank {}  ({:?})",
            res.value,
            low.value,
            res.certificate.schmidt_rank(),
            res.method
        );
    }
    Ok(())
}

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();
    for n in 2..=4 {
        report(&format!("max-entangled {n}"), &max_entangled(n)?, &cfg)?;
    }
    report("antisymmetric 3", &antisymmetric(3)?, &cfg)?;
    for i in 1..=3 {
        report(&format!("rho{i}"), &rho(i)?, &cfg)?;
    }

    // Random sampling only ever gives lower bounds, and converges slowly.
    let target = max_entangled(3)?;
    let sampled = brute_force_knorm(&target, 1, 20_000, 1)?;
    println!("max-entangled 3, k=1: seesaw {:.8}, best of 20000 samples {sampled:.8}", knorm(&target, 1, &cfg)?.value);
    Ok(())
}
