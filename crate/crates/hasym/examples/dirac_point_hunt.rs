//! Hunt band-touching points of the hexagonal-lattice model: tabulate the
//! gap over a grid of reduced reciprocal coordinates, refine each grid
//! candidate by simplex descent, fold out periodic duplicates, and verify
//! the antiunitary symmetry at every surviving point.
//!
//! Run with `cargo run --example dirac_point_hunt`.

use hasym::scanner::models::{honeycomb, honeycomb_cartesian};
use hasym::{analyze_point, dedup_points, grid_scan, refine, RefineOptions, Result};

fn main() -> Result<()> {
    let model = honeycomb()?;
    let field = grid_scan(&model, &[128, 128])?;
    let candidates = field.local_minima(0.5);
    println!("grid candidates below threshold 0.5:");
    for c in &candidates {
        println!("  u = ({:.6}, {:.6}), gap {:.3e}", c.alpha[0], c.alpha[1], c.gap);
    }

    let mut points = Vec::new();
    for c in &candidates {
        points.push(refine(&model, &c.alpha, &RefineOptions::default())?);
    }
    let points = dedup_points(&model, points, 1e-4);

    println!("\n{} inequivalent band-touching point(s):", points.len());
    for p in &points {
        let k = honeycomb_cartesian(&[p.alpha[0], p.alpha[1]]);
        println!(
            "  u = ({:.9}, {:.9})  k = ({:+.6}, {:+.6})  gap {:.3e}",
            p.alpha[0], p.alpha[1], k[0], k[1], p.gap_value
        );
        println!(
            "    symmetry residuals: square {:.3e}, commutator {:.3e}",
            p.has_report.square_residual, p.has_report.commutator_residual
        );

        let analysis = analyze_point(&model, &p.alpha, 1e-8)?;
        println!(
            "    analyze_point: degenerate = {}, eigenvalues {:?}",
            analysis.degenerate, analysis.eigenvalues
        );
    }

    Ok(())
}
