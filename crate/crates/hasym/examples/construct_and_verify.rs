//! Plant a degeneracy in a dense Hermitian matrix, detect it, build the
//! antiunitary operator from the degenerate pair, and verify both defining
//! properties: square equals minus the support projector, and commutation
//! with the Hamiltonian.
//!
//! Run with `cargo run --example construct_and_verify`.

use hasym::{
    construct_nfold_operators, detect_degenerate_subspaces, eigh, random_unitary,
    HermitianMatrix, Result,
};

fn main() -> Result<()> {
    // U diag(3, 3, -1, 0.5, 2, 4) U^dagger: a two-fold level at 3 hidden
    // inside an otherwise non-degenerate 6-level spectrum
    let u = random_unitary(6, 42)?;
    let d = HermitianMatrix::from_diagonal(&[3.0, 3.0, -1.0, 0.5, 2.0, 4.0])?;
    let h = HermitianMatrix::new(u.as_matrix() * d.matrix() * u.as_matrix().adjoint())?;

    let sys = eigh(&h)?;
    println!("spectrum:");
    for v in sys.values() {
        println!("  {v:+.12}");
    }

    let subspaces = detect_degenerate_subspaces(&h, 1e-8)?;
    println!("\ndetected {} degenerate subspace(s)", subspaces.len());

    for sub in &subspaces {
        println!(
            "\nsubspace at energy {:+.12} (multiplicity {}, eigen-residual {:.3e})",
            sub.energy(),
            sub.multiplicity(),
            sub.residual()
        );
        for op in construct_nfold_operators(sub)? {
            let report = op.verify_has(&h)?;
            println!("  operator on the degenerate pair:");
            println!(
                "    square residual     |M conj(M) + P|  = {:.3e}",
                report.square_residual
            );
            println!(
                "    commutator residual |M conj(H) - HM| = {:.3e}",
                report.commutator_residual
            );
        }
    }

    Ok(())
}
