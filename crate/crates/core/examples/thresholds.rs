//! Blockpositivity thresholds along the line through ρ* and a state, and the
//! classification of points on that line.
//!
//!     cargo run --release --example thresholds

use schmidt_witness::families::{antisymmetric, max_entangled, rho};
use schmidt_witness::geometry::{beta_thresholds, classify_witness, x_lambda};
use schmidt_witness::knorm::SolverConfig;

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();
    for (name, state) in [("rho3", rho(3)?), ("max-entangled 3", max_entangled(3)?), ("antisymmetric 3", antisymmetric(3)?)] {
        let b = beta_thresholds(&state, &cfg)?;
        println!("{name}: β⁻ = {:?}", b.beta_minus);
        println!("{:>w$}  β⁺ = {:?}", "", b.beta_plus, w = name.len());
    }

    let r3 = rho(3)?;
    println!("\nX_λ = (1−λ)ρ* + λρ₃");
    for lambda in [-0.6, -0.35, -0.21, -0.1625, -0.1, 0.5, 1.0] {
        let class = classify_witness(&x_lambda(&r3, lambda), &cfg)?;
        println!("  λ = {lambda:>7}: {}", class.describe());
    }
    Ok(())
}
