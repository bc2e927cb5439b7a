//! Dense complex linear algebra: validated matrix types, Hermitian
//! eigendecomposition, SVD-based rank/null-space, and seeded random matrices.
//!
//! Everything here is deterministic: fixed inputs (seeds included) produce
//! bit-identical outputs. Eigenvalues come back sorted ascending; eigenvector
//! phases and the ordering inside a degenerate cluster are solver artifacts
//! that callers must not rely on.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::ops::Deref;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Relative Hermiticity tolerance enforced at `HermitianMatrix` construction.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Relative unitarity tolerance for operators claiming to be unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Orthonormality tolerance for eigenbases and state pairs.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// Entrywise max-modulus norm.
pub fn max_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max modulus over a vector.
pub fn vec_max_norm(v: &DVector<C64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |m - m_dagger|` over all entries.
pub fn hermiticity_deviation(m: &DMatrix<C64>) -> f64 {
    max_norm(&(m - m.adjoint()))
}

/// `max |m_dagger m - I|` over all entries.
pub fn unitarity_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.ncols();
    max_norm(&(m.adjoint() * m - DMatrix::<C64>::identity(n, n)))
}

fn all_finite(m: &DMatrix<C64>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Dense complex matrix with finite entries and nonzero dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                context: "ComplexMatrix",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::ZeroDimension);
        }
        if !all_finite(&m) {
            return Err(Error::NonFinite {
                context: "ComplexMatrix",
            });
        }
        Ok(Self { inner: m })
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.inner
    }

    /// Entries in row-major order, as they would appear in a matrix file.
    pub fn row_major_entries(&self) -> Vec<C64> {
        let (r, c) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }
}

impl Deref for ComplexMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &Self::Target {
        &self.inner
    }
}

/// Square complex matrix certified Hermitian at construction:
/// `max|H - H_dagger| <= 1e-12 * max(1, max|H|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<C64>,
}

impl HermitianMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if !all_finite(&m) {
            return Err(Error::NonFinite {
                context: "HermitianMatrix",
            });
        }
        let dev = hermiticity_deviation(&m);
        let tol = HERMITICITY_TOL * max_norm(&m).max(1.0);
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(Self { inner: m })
    }

    /// Build from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                context: "HermitianMatrix",
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(values: &[f64]) -> Result<Self> {
        let diag: Vec<C64> = values.iter().map(|&v| C64::new(v, 0.0)).collect();
        Self::new(DMatrix::from_diagonal(&DVector::from_vec(diag)))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.inner
    }

    /// Exactly Hermitian copy `(H + H_dagger) / 2`,
    /// used to feed the eigensolver.
    pub fn symmetrized(&self) -> DMatrix<C64> {
        (&self.inner + self.inner.adjoint()).scale(0.5)
    }
}

impl Deref for HermitianMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &Self::Target {
        &self.inner
    }
}

/// Full eigendecomposition of a Hermitian matrix: real eigenvalues sorted
/// ascending, matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl EigenSystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<C64> {
        &self.vectors
    }

    /// Owned copy of the i-th eigenvector.
    pub fn vector(&self, i: usize) -> DVector<C64> {
        self.vectors.column(i).into_owned()
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Smallest gap between adjacent eigenvalues together with the index of
    /// the pair that attains it. Needs dim >= 2.
    pub fn min_adjacent_gap(&self) -> Option<(f64, usize)> {
        if self.values.len() < 2 {
            return None;
        }
        let mut best = (f64::INFINITY, 0);
        for i in 0..self.values.len() - 1 {
            let g = self.values[i + 1] - self.values[i];
            if g < best.0 {
                best = (g, i);
            }
        }
        Some(best)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues ascending; ties keep the solver's output order. Eigenvector
/// phases are unconstrained gauge.
pub fn eigh(h: &HermitianMatrix) -> Result<EigenSystem> {
    let dim = h.dim();
    let iterations = 60 * dim + 200;
    let eig = h
        .symmetrized()
        .try_symmetric_eigen(f64::EPSILON, iterations)
        .ok_or_else(|| Error::EigenNonConvergence {
            dim,
            max_abs: max_norm(h.matrix()),
            iterations,
        })?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<C64>::zeros(dim, dim);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }

    // Contract checks: orthonormal basis, small eigen-residuals.
    let ortho_dev = unitarity_deviation(&vectors);
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let mut resid = 0.0f64;
    for i in 0..dim {
        let v = vectors.column(i);
        let r = h.matrix() * v - v.scale(values[i]);
        resid = resid.max(r.norm());
    }
    if ortho_dev > ORTHONORMALITY_TOL || resid > 1e-10 * scale {
        return Err(Error::EigenNonConvergence {
            dim,
            max_abs: max_norm(h.matrix()),
            iterations,
        });
    }

    Ok(EigenSystem { values, vectors })
}

/// Numerical rank and null space of a complex matrix.
#[derive(Debug, Clone)]
pub struct SvdRank {
    /// Count of singular values above `tol * sigma_max`.
    pub rank: usize,
    /// Orthonormal basis of the (right) null space.
    pub null_basis: Vec<DVector<C64>>,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
}

/// Rank and null-space basis via SVD. `rank` counts singular values above
/// `tol * sigma_max` (so the zero matrix has rank 0 and a full null space).
pub fn svd_rank(m: &ComplexMatrix, tol: f64) -> Result<SvdRank> {
    if tol <= 0.0 {
        return Err(Error::NonPositiveTolerance { value: tol });
    }
    let (rows, cols) = (m.rows(), m.cols());
    // The thin SVD of a wide matrix drops null-space columns of V; padding
    // with zero rows makes V square without touching the singular values.
    let work = if rows >= cols {
        m.as_matrix().clone()
    } else {
        let mut padded = DMatrix::<C64>::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m.as_matrix());
        padded
    };
    let svd = work
        .try_svd(false, true, f64::EPSILON, 10_000)
        .ok_or(Error::SvdNonConvergence { rows, cols })?;
    let v_t = svd.v_t.expect("v_t requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .expect("singular values are finite")
    });
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold = tol * sigma_max;
    let rank = singular_values.iter().filter(|&&s| s > threshold).count();

    let null_basis: Vec<DVector<C64>> = order[rank..]
        .iter()
        .map(|&i| v_t.row(i).adjoint())
        .collect();

    Ok(SvdRank {
        rank,
        null_basis,
        singular_values,
    })
}

/// Haar-like random unitary, deterministic per `(dim, seed)`: QR of a complex
/// Gaussian draw with the phase correction `Q <- Q diag(r_jj / |r_jj|)`.
pub fn random_unitary(dim: usize, seed: u64) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_gaussian_matrix(dim, dim, &mut rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    let dev = unitarity_deviation(&q);
    if dev > UNITARITY_TOL {
        return Err(Error::NotUnitary {
            deviation: dev,
            tolerance: UNITARITY_TOL,
        });
    }
    ComplexMatrix::from_dmatrix(q)
}

/// Random Hermitian matrix with Gaussian entries, deterministic per
/// `(dim, seed)`. Test-fixture quality, entries O(1).
pub fn random_hermitian(dim: usize, seed: u64) -> Result<HermitianMatrix> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_gaussian_matrix(dim, dim, &mut rng);
    HermitianMatrix::new((&g + g.adjoint()).scale(0.5))
}

/// Complex Gaussian matrix drawn row-major from `rng`.
pub(crate) fn random_gaussian_matrix(
    rows: usize,
    cols: usize,
    rng: &mut ChaCha8Rng,
) -> DMatrix<C64> {
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        entries.push(C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2);
    }
    DMatrix::from_row_slice(rows, cols, &entries)
}
