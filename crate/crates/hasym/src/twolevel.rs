//! Two-level systems: Pauli decomposition, gap formula, degeneracy
//! constraints, and the canonical antiunitary invariance check.
//!
//! Conventions: `sigma_x = [[0,1],[1,0]]`, `sigma_y = [[0,-i],[i,0]]`,
//! `sigma_z = [[1,0],[0,-1]]`. A 2x2 Hermitian matrix decomposes uniquely as
//! `h0 I + hx sigma_x + hy sigma_y + hz sigma_z` with real coefficients.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{max_norm, HermitianMatrix, C64};

/// The Pauli basis `(sigma_x, sigma_y, sigma_z)` in the convention above.
pub fn pauli_matrices() -> [DMatrix<C64>; 3] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

/// Real Pauli coefficients of a 2x2 Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PauliVector {
    pub h0: f64,
    pub hx: f64,
    pub hy: f64,
    pub hz: f64,
}

impl PauliVector {
    pub fn new(h0: f64, hx: f64, hy: f64, hz: f64) -> Result<Self> {
        if ![h0, hx, hy, hz].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "PauliVector",
            });
        }
        Ok(Self { h0, hx, hy, hz })
    }

    /// `h0 I + hx sigma_x + hy sigma_y + hz sigma_z`, exactly Hermitian.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(self.h0 + self.hz, 0.0),
                C64::new(self.hx, -self.hy),
                C64::new(self.hx, self.hy),
                C64::new(self.h0 - self.hz, 0.0),
            ],
        );
        HermitianMatrix::new(m).expect("reconstruction is Hermitian by form")
    }

    /// Energy splitting `E_+ - E_- = 2 sqrt(hx^2 + hy^2 + hz^2)`;
    /// independent of `h0`.
    pub fn gap(&self) -> f64 {
        2.0 * (self.hx * self.hx + self.hy * self.hy + self.hz * self.hz).sqrt()
    }

    /// The three coefficients that must vanish simultaneously for the two
    /// levels to cross: `(hx, hy, hz)`. Zero iff `gap() == 0`.
    pub fn constraint_residual(&self) -> [f64; 3] {
        [self.hx, self.hy, self.hz]
    }
}

/// Pauli coefficients of a 2x2 Hermitian matrix:
/// `h0 = (H11 + H22)/2`, `hz = (H11 - H22)/2`, `hx = Re H21`, `hy = Im H21`.
pub fn pauli_decompose(h: &HermitianMatrix) -> Result<PauliVector> {
    if h.dim() != 2 {
        return Err(Error::WrongMatrixDim {
            expected: 2,
            found: h.dim(),
        });
    }
    let h11 = h[(0, 0)].re;
    let h22 = h[(1, 1)].re;
    let h21 = h[(1, 0)];
    PauliVector::new((h11 + h22) / 2.0, h21.re, h21.im, (h11 - h22) / 2.0)
}

/// Result of conjugating a two-level Hamiltonian by the canonical
/// antiunitary operator.
#[derive(Debug, Clone)]
pub struct CanonicalCheck {
    /// `M conj(H) M^{-1}` with `M = [[0,-1],[1,0]]`. Its Pauli coefficients
    /// are `(h0, -hx, -hy, -hz)`.
    pub transformed: HermitianMatrix,
    /// `max |transformed - H|`; zero iff `(hx, hy, hz) = 0`.
    pub residual: f64,
}

/// Conjugate `H` by the canonical antiunitary operator `v -> M conj(v)`
/// with `M = [[0,-1],[1,0]]` and measure the invariance defect.
///
/// The transform flips the sign of `(hx, hy, hz)` and keeps `h0`, so the
/// residual vanishes exactly when the degeneracy constraints hold.
pub fn canonical_upsilon_check(h: &HermitianMatrix) -> Result<CanonicalCheck> {
    if h.dim() != 2 {
        return Err(Error::WrongMatrixDim {
            expected: 2,
            found: h.dim(),
        });
    }
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    );
    let m_inv = -&m;
    let conj_h = h.matrix().map(|z| z.conj());
    let transformed_raw = &m * conj_h * m_inv;
    let residual = max_norm(&(&transformed_raw - h.matrix()));
    let transformed = HermitianMatrix::new(transformed_raw)
        .expect("conjugation of a Hermitian matrix stays Hermitian");
    Ok(CanonicalCheck {
        transformed,
        residual,
    })
}
