//! Entangled subspaces and which witnesses exist outside a face.
//!
//!     cargo run --release --example subspaces

use schmidt_witness::families::{antisymmetric, d33_dim, sigma, xi};
use schmidt_witness::geometry::{entanglement_order, opposite_face_data, witnesses_outside_face};
use schmidt_witness::knorm::{subspace_max_tau, SolverConfig};
use schmidt_witness::linalg::{Subspace, CVector};

fn span(ids: &[usize]) -> schmidt_witness::Result<Subspace> {
    let vs: Vec<CVector> = ids.iter().map(|&i| xi(i).map(|v| v.into_amplitudes())).collect::<Result<_, _>>()?;
    Subspace::span(d33_dim(), &vs)
}

fn main() -> schmidt_witness::Result<()> {
    let cfg = SolverConfig::default();
    for i in 1..=3 {
        println!("span{{ξ{i}}} is exactly {}-entangled", entanglement_order(&span(&[i])?, &cfg)?);
    }
    let anti = antisymmetric(3)?;
    let e = anti.spectrum().eigenspace(anti.dim(), 1.0 / 3.0, 1e-9)?;
    println!("antisymmetric subspace: max τ₁ = {:.8}", subspace_max_tau(&e, 1, &cfg)?.value);

    // Edges of the state triangle in the plane through ρ₃, ρᵢ, ρ*.
    let edges: [(&str, Subspace); 4] = [
        ("ρ3–ρ1", span(&[3, 1])?),
        ("ρ3–σ1", span(&[1])?.complement()?),
        ("ρ1–σ1", span(&[3])?.complement()?),
        ("ρ3–σ2", span(&[2])?.complement()?),
    ];
    for (name, face) in &edges {
        let report = witnesses_outside_face(face, &cfg)?;
        println!(
            "edge {name}: face of dim {}, Schmidt numbers of witnesses outside: {:?}",
            report.dim_e, report.admissible_levels
        );
    }

    let faces = opposite_face_data(&span(&[3, 1])?)?;
    println!(
        "opposite projection state of span{{ξ3, ξ1}} equals σ1 to {:.1e}",
        faces.proj_state_eperp.max_abs_diff(sigma(1)?.as_op())
    );
    Ok(())
}
