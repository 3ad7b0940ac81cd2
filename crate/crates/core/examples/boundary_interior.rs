//! Whether the extreme points of a threshold interval are interior to BP_k,
//! against whether the top or bottom eigenspace is k-entangled.
//!
//!     cargo run --release --example boundary_interior

use schmidt_witness::families::rho_lambda;
use schmidt_witness::geometry::boundary_interior_check;
use schmidt_witness::knorm::SolverConfig;

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();
    for i in [1, 2] {
        for lambda in [0.6, 0.8, 1.0] {
            for k in [1, 2] {
                let c = boundary_interior_check(&rho_lambda(i, lambda)?, k, &cfg)?;
                println!(
                    "ρ{i}^{lambda} k={k}: interior⁻ {:5} top entangled {:5} | interior⁺ {:5} bottom entangled {:5} | {}",
                    c.interior_minus,
                    c.entangled_top,
                    c.interior_plus,
                    c.entangled_bottom,
                    if c.equivalences_hold() { "consistent" } else { "MISMATCH" }
                );
            }
        }
    }
    Ok(())
}
