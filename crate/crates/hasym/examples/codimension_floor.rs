//! The von Neumann-Wigner parameter count, demonstrated by failure: a
//! two-level crossing needs three real conditions satisfied, so a family
//! with all three traceless components tunable reaches gap zero, while the
//! same family with one component frozen bottoms out at a positive floor.
//!
//! Run with `cargo run --example codimension_floor`.

use hasym::scanner::models::linear2;
use hasym::{refine, Error, RefineOptions, Result};

fn main() -> Result<()> {
    let model = linear2()?;
    let start3 = [0.5, -0.3, 0.2];

    println!("three tunable parameters:");
    let point = refine(&model, &start3, &RefineOptions::default())?;
    println!(
        "  converged to alpha = ({:+.2e}, {:+.2e}, {:+.2e}), gap {:.3e}",
        point.alpha[0], point.alpha[1], point.alpha[2], point.gap_value
    );

    // freeze alpha3 = 0.1: the best reachable gap is 2 * 0.1 = 0.2
    println!("\nsame family with the third parameter frozen at 0.1:");
    let frozen = model.with_frozen_axis(2, 0.1)?;
    match refine(&frozen, &[0.5, -0.3], &RefineOptions::default()) {
        Ok(p) => println!("  unexpectedly closed the gap: {:?}", p.alpha),
        Err(Error::RefineFailed {
            best_alpha,
            best_gap,
            evaluations,
        }) => {
            println!(
                "  refinement stalled after {evaluations} evaluations at alpha = ({:+.2e}, {:+.2e})",
                best_alpha[0], best_alpha[1]
            );
            println!("  best gap {best_gap:.9} against the analytic floor 0.2");
        }
        Err(e) => return Err(e),
    }

    Ok(())
}
