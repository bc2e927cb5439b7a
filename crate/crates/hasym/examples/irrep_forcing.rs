//! When does a symmetry group force a two-level degeneracy? Exactly when
//! its representation matrices do not commute. Each special-unitary matrix
//! commuting with the Hamiltonian imposes three linear constraints on
//! (hx, hy, hz); a non-commuting pair stacks a rank-3 system whose only
//! solution is the fully degenerate point.
//!
//! Run with `cargo run --example irrep_forcing`.

use hasym::{IrrepPair, Result};

fn report(label: &str, pair: &IrrepPair) -> Result<()> {
    let system = pair.constraint_system()?;
    let decision = pair.forces_degeneracy()?;

    println!("{label}:");
    println!(
        "  lambda = ({:+.3}, {:+.3}, {:+.3}), max |lambda| = {:.3}",
        decision.lambda.l1,
        decision.lambda.l2,
        decision.lambda.l3,
        decision.lambda.max_abs()
    );
    println!("  constraint rows (coefficients of hx, hy, hz):");
    for row in &system.rows {
        println!("    [{:+.3}, {:+.3}, {:+.3}]", row[0], row[1], row[2]);
    }
    println!("  rank {} -> degeneracy forced: {}", decision.rank, decision.forced);
    if !system.null_basis.is_empty() {
        println!("  surviving directions:");
        for v in &system.null_basis {
            println!("    [{:+.3}, {:+.3}, {:+.3}]", v[0], v[1], v[2]);
        }
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    // i sigma_x and i sigma_y: the quaternion pair, maximally non-commuting
    let noncommuting = IrrepPair::from_coefficients([0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 1.0, 0.0])?;
    report("non-abelian pair (i sigma_x, i sigma_y)", &noncommuting)?;

    // a commuting pair leaves a whole axis of Hamiltonians untouched
    let commuting = IrrepPair::from_coefficients([0.0, 1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0])?;
    report("abelian pair (i sigma_z, i sigma_z)", &commuting)?;

    Ok(())
}
