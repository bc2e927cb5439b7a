//! Non-abelian two-dimensional representations and the linear constraints
//! they impose on a two-level Hamiltonian.
//!
//! Any 2x2 unitary is a global phase times a special unitary
//! `[[a1 + i a2, a3 + i a4], [-a3 + i a4, a1 - i a2]]` with a real unit
//! 4-tuple `(a1..a4)`. Commuting such a matrix with
//! `H = h0 I + hx sigma_x + hy sigma_y + hz sigma_z` yields three linear
//! equations on `(hx, hy, hz)`; a second representation matrix adds three
//! more. When the stacked 6x3 system has rank 3 the only solution is
//! `h = 0`: the representation pair forces the two levels to stay
//! degenerate. Rank 3 occurs exactly when the pair fails to commute, which
//! the bilinears `lambda` measure.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd_rank, unitarity_deviation, ComplexMatrix, C64, UNITARITY_TOL};
use crate::twolevel::pauli_matrices;

/// Relative singular-value cutoff used for the 6x3 constraint rank.
pub const IRREP_RANK_TOL: f64 = 1e-10;

/// Components smaller than this count as exact zeros in the sign rule that
/// fixes the overall sign of a stripped coefficient tuple.
const SIGN_TIE_TOL: f64 = 1e-12;

/// Special-unitary coefficient tuples of two representation matrices.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IrrepPair {
    a: [f64; 4],
    b: [f64; 4],
}

/// Commutator bilinears of a pair: `[A, B]` vanishes iff all three do.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LambdaVector {
    /// `a3 b4 - a4 b3`
    pub l1: f64,
    /// `a2 b4 - a4 b2`
    pub l2: f64,
    /// `a2 b3 - a3 b2`
    pub l3: f64,
}

impl LambdaVector {
    pub fn max_abs(&self) -> f64 {
        self.l1.abs().max(self.l2.abs()).max(self.l3.abs())
    }
}

/// The stacked linear system on `(hx, hy, hz)` imposed by a pair of
/// representation matrices commuting with the Hamiltonian.
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintSystem {
    /// Six coefficient rows: three from the first matrix, three from the
    /// second.
    pub rows: [[f64; 3]; 6],
    /// Numerical rank at relative tolerance `IRREP_RANK_TOL`.
    pub rank: usize,
    /// Orthonormal real basis of the solution space.
    pub null_basis: Vec<[f64; 3]>,
}

/// Outcome of the rank test: does the symmetry pin `(hx, hy, hz)` to zero?
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DegeneracyDecision {
    /// True iff the constraint rank is 3, leaving only `h = 0`.
    pub forced: bool,
    pub rank: usize,
    pub lambda: LambdaVector,
}

/// Rebuild the special-unitary matrix of a coefficient tuple.
pub fn special_unitary(t: &[f64; 4]) -> DMatrix<C64> {
    DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(t[0], t[1]),
            C64::new(t[2], t[3]),
            C64::new(-t[2], t[3]),
            C64::new(t[0], -t[1]),
        ],
    )
}

/// Divide out the global phase of a 2x2 unitary and read off its
/// special-unitary coefficients. The square root of the determinant is
/// sign-ambiguous; the representative whose first non-tie component is
/// positive wins.
fn strip_phase(m: &DMatrix<C64>) -> Result<[f64; 4]> {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let s = det.sqrt();
    if s.norm() < 0.5 {
        return Err(Error::InvalidInput(
            "matrix determinant is too small for phase stripping".into(),
        ));
    }
    let g = m.map(|z| z / s);
    let mut t = [
        (g[(0, 0)].re + g[(1, 1)].re) / 2.0,
        (g[(0, 0)].im - g[(1, 1)].im) / 2.0,
        (g[(0, 1)].re - g[(1, 0)].re) / 2.0,
        (g[(0, 1)].im + g[(1, 0)].im) / 2.0,
    ];
    if let Some(lead) = t.iter().find(|v| v.abs() > SIGN_TIE_TOL) {
        if *lead < 0.0 {
            for v in &mut t {
                *v = -*v;
            }
        }
    }
    let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut t {
        *v /= norm;
    }
    Ok(t)
}

fn check_2x2_unitary(m: &ComplexMatrix, which: &str) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::WrongMatrixDim {
            expected: 2,
            found: m.rows().max(m.cols()),
        });
    }
    let dev = unitarity_deviation(m.as_matrix());
    if dev > UNITARITY_TOL {
        return Err(Error::InvalidInput(format!(
            "representation matrix {which} is not unitary: deviation {dev:.3e} \
             exceeds {UNITARITY_TOL:.1e}"
        )));
    }
    Ok(())
}

fn tuple_rows(t: &[f64; 4]) -> [[f64; 3]; 3] {
    let (a2, a3, a4) = (t[1], t[2], t[3]);
    [[a3, -a4, 0.0], [0.0, a2, -a3], [a2, 0.0, -a4]]
}

impl IrrepPair {
    /// Strip global phases from two 2x2 unitaries and extract their
    /// coefficient tuples.
    pub fn from_unitary(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        check_2x2_unitary(a, "A")?;
        check_2x2_unitary(b, "B")?;
        Ok(Self {
            a: strip_phase(a.as_matrix())?,
            b: strip_phase(b.as_matrix())?,
        })
    }

    /// Build from explicit unit-norm coefficient tuples.
    pub fn from_coefficients(a: [f64; 4], b: [f64; 4]) -> Result<Self> {
        for (t, which) in [(&a, "a"), (&b, "b")] {
            if !t.iter().all(|v| v.is_finite()) {
                return Err(Error::NonFinite { context: "IrrepPair" });
            }
            let norm2: f64 = t.iter().map(|v| v * v).sum();
            if (norm2 - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!(
                    "coefficient tuple {which} has squared norm {norm2}, expected 1"
                )));
            }
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> [f64; 4] {
        self.a
    }

    pub fn b(&self) -> [f64; 4] {
        self.b
    }

    /// Commutator bilinears; all zero iff the two matrices commute.
    pub fn lambda_vector(&self) -> LambdaVector {
        let (a, b) = (&self.a, &self.b);
        LambdaVector {
            l1: a[2] * b[3] - a[3] * b[2],
            l2: a[1] * b[3] - a[3] * b[1],
            l3: a[1] * b[2] - a[2] * b[1],
        }
    }

    /// Stack the six constraint rows and measure their rank and solution
    /// space.
    pub fn constraint_system(&self) -> Result<ConstraintSystem> {
        let ra = tuple_rows(&self.a);
        let rb = tuple_rows(&self.b);
        let mut rows = [[0.0; 3]; 6];
        rows[..3].copy_from_slice(&ra);
        rows[3..].copy_from_slice(&rb);

        let entries: Vec<C64> = rows
            .iter()
            .flatten()
            .map(|&v| C64::new(v, 0.0))
            .collect();
        let m = ComplexMatrix::new(6, 3, &entries)?;
        let svd = svd_rank(&m, IRREP_RANK_TOL)?;
        let null_basis = real_null_basis(&svd.null_basis, 3 - svd.rank);
        Ok(ConstraintSystem {
            rows,
            rank: svd.rank,
            null_basis,
        })
    }

    /// Decide whether the pair forces `(hx, hy, hz) = 0`.
    pub fn forces_degeneracy(&self) -> Result<DegeneracyDecision> {
        let system = self.constraint_system()?;
        Ok(DegeneracyDecision {
            forced: system.rank == 3,
            rank: system.rank,
            lambda: self.lambda_vector(),
        })
    }
}

/// Extract an orthonormal real basis from a complex null basis of a real
/// matrix. Real and imaginary parts of the complex vectors together span
/// the real null space, so Gram-Schmidt over them recovers exactly
/// `expected` directions.
fn real_null_basis(complex_basis: &[nalgebra::DVector<C64>], expected: usize) -> Vec<[f64; 3]> {
    let mut accepted: Vec<[f64; 3]> = Vec::with_capacity(expected);
    let mut candidates: Vec<[f64; 3]> = Vec::with_capacity(2 * complex_basis.len());
    for v in complex_basis {
        candidates.push([v[0].re, v[1].re, v[2].re]);
        candidates.push([v[0].im, v[1].im, v[2].im]);
    }
    for mut cand in candidates {
        for prev in &accepted {
            let dot: f64 = cand.iter().zip(prev).map(|(x, y)| x * y).sum();
            for (c, p) in cand.iter_mut().zip(prev) {
                *c -= dot * p;
            }
        }
        let norm = cand.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for c in &mut cand {
                *c /= norm;
            }
            accepted.push(cand);
            if accepted.len() == expected {
                break;
            }
        }
    }
    assert_eq!(
        accepted.len(),
        expected,
        "real and imaginary parts must span the null space"
    );
    accepted
}

/// Constraint rows measured directly from commutators: for each Pauli basis
/// matrix `sigma_k`, the entries of `[M, sigma_k]` give the k-th column of
/// the three rows (scaled by 2). This is the numerical ground truth the
/// symbolic rows must match.
pub fn commutator_constraint_rows(m: &DMatrix<C64>) -> [[f64; 3]; 3] {
    let paulis = pauli_matrices();
    let mut rows = [[0.0; 3]; 3];
    for (k, sigma) in paulis.iter().enumerate() {
        let c = m * sigma - sigma * m;
        rows[0][k] = c[(0, 0)].re / 2.0;
        rows[1][k] = c[(1, 0)].re / 2.0;
        rows[2][k] = -c[(1, 0)].im / 2.0;
    }
    rows
}
