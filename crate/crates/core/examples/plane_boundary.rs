//! Traces the boundaries of BP₁, BP₂ and the state space in a plane through
//! ρ₃, ρᵢ and ρ*, writing CSV and SVG next to the target directory.
//!
//!     cargo run --release --example plane_boundary -- [H1|H2] [rays]

use schmidt_witness::knorm::SolverConfig;
use schmidt_witness::repro::{bp_boundary_on_plane, plane_csv, plane_svg, Plane, PlaneFrame};

fn main() -> schmidt_witness::Result<()> {
    let mut args = std::env::args().skip(1);
    let plane: Plane = args.next().as_deref().unwrap_or("H2").parse()?;
    let rays: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(24);
    let cfg = SolverConfig::default();

    let frame = PlaneFrame::new(plane)?;
    let levels = (1..=3).map(|k| bp_boundary_on_plane(plane, k, rays, &cfg)).collect::<Result<Vec<_>, _>>()?;
    for curve in &levels {
        let far = curve.iter().map(|p| p.t).fold(0.0, f64::max);
        println!("k={}: farthest boundary point at distance {far:.6} from ρ*", curve[0].k);
    }
    let dir = std::env::temp_dir();
    let flat: Vec<_> = levels.iter().flatten().copied().collect();
    std::fs::write(dir.join(format!("plane_{plane}.csv")), plane_csv(&flat))?;
    std::fs::write(dir.join(format!("plane_{plane}.svg")), plane_svg(&frame, &levels))?;
    println!("wrote {}/plane_{plane}.{{csv,svg}}", dir.display());
    Ok(())
}
