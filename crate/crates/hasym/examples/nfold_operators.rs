//! An n-fold degenerate level carries n-1 independent pair operators, one
//! per partner of the first basis vector. Each squares to minus the
//! projector on its own 2-plane and commutes with the Hamiltonian, and all
//! of this survives an arbitrary unitary re-mixing of the degenerate basis.
//!
//! Run with `cargo run --example nfold_operators`.

use hasym::{
    construct_nfold_operators, detect_degenerate_subspaces, random_unitary, DegenerateSubspace,
    HermitianMatrix, Result,
};

fn main() -> Result<()> {
    // plant a three-fold level at energy 2 in a 7-dimensional space
    let u = random_unitary(7, 5)?;
    let d = HermitianMatrix::from_diagonal(&[2.0, 2.0, 2.0, -1.0, 0.0, 1.0, 3.0])?;
    let h = HermitianMatrix::new(u.as_matrix() * d.matrix() * u.as_matrix().adjoint())?;

    let subspaces = detect_degenerate_subspaces(&h, 1e-8)?;
    let sub = &subspaces[0];
    println!(
        "found a multiplicity-{} subspace at energy {:+.9}",
        sub.multiplicity(),
        sub.energy()
    );

    verify_all("detected basis", sub, &h)?;

    // remix the degenerate basis with a random unitary and do it again
    let mix = random_unitary(sub.multiplicity(), 91)?;
    let basis = sub.basis();
    let mixed: Vec<_> = (0..basis.len())
        .map(|j| {
            let mut v = basis[0].clone() * mix.as_matrix()[(0, j)];
            for (i, b) in basis.iter().enumerate().skip(1) {
                v += b * mix.as_matrix()[(i, j)];
            }
            v
        })
        .collect();
    let remixed = DegenerateSubspace::new(sub.energy(), mixed, &h)?;
    verify_all("remixed basis", &remixed, &h)?;

    Ok(())
}

fn verify_all(label: &str, sub: &DegenerateSubspace, h: &HermitianMatrix) -> Result<()> {
    println!("\noperators from the {label}:");
    for (j, op) in construct_nfold_operators(sub)?.iter().enumerate() {
        let report = op.verify_has(h)?;
        println!(
            "  pair (1, {}): square residual {:.3e}, commutator residual {:.3e}",
            j + 2,
            report.square_residual,
            report.commutator_residual
        );
    }
    Ok(())
}
