//! Optimizer against the closed-form k-norms of ρ₁^λ and ρ₂^λ.
//!
//!     cargo run --release --example closed_forms

use schmidt_witness::knorm::SolverConfig;
use schmidt_witness::repro::{sweep_family_levels, uniform_grid};

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();
    let grid = uniform_grid(11);
    for family in [1, 2] {
        let points = sweep_family_levels(family, &grid, &cfg)?;
        println!("ρ{family}^λ");
        println!("{:>6} {:>14} {:>14} {:>14}", "λ", "S(1)", "S(2)", "S(3)");
        for row in points.chunks(3) {
            let vals: Vec<String> = row.iter().map(|p| format!("{:14.10}", p.optimizer)).collect();
            println!("{:>6.2} {}", row[0].lambda, vals.join(" "));
        }
        let worst = points.iter().map(|p| p.abs_gap).fold(0.0, f64::max);
        println!("largest gap to the closed forms: {worst:.2e}\n");
    }
    Ok(())
}
