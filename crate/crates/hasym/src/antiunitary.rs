//! Antiunitary operators behind energy degeneracies.
//!
//! An antiunitary operator is represented as `v -> M * conj(v)` with a stored
//! unitary part `M`. Two flavors exist: FULL operators whose unitary part is
//! unitary on the whole space, and PARTIAL operators supported on a 2-plane
//! `span{psi1, psi2}` (the complement is annihilated).
//!
//! The forward direction builds, from any orthonormal degenerate pair, the
//! partial operator `M = psi2 psi1^T - psi1 psi2^T` which commutes with the
//! Hamiltonian and squares to minus the support projector. The converse
//! certifies that a FULL operator with square -1 commuting with `H` pairs
//! every eigenvector with an orthogonal partner at the same energy, so every
//! eigenvalue has even multiplicity.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eigh, max_norm, random_unitary, HermitianMatrix, C64, ORTHONORMALITY_TOL};

/// Residual ceiling accepted when certifying degeneracy from a symmetry.
pub const CERTIFY_TOL: f64 = 1e-8;

fn conj_m(m: &DMatrix<C64>) -> DMatrix<C64> {
    m.map(|z| z.conj())
}

fn conj_v(v: &DVector<C64>) -> DVector<C64> {
    v.map(|z| z.conj())
}

/// Where an antiunitary operator acts.
#[derive(Debug, Clone)]
pub enum OperatorSupport {
    /// The whole space; the unitary part is unitary.
    Full,
    /// The span of the stored orthonormal vectors; the orthogonal
    /// complement is annihilated.
    Partial { basis: Vec<DVector<C64>> },
}

/// Antiunitary operator `v -> unitary_part * conj(v)`.
#[derive(Debug, Clone)]
pub struct AntiunitaryOperator {
    unitary_part: DMatrix<C64>,
    support: OperatorSupport,
}

/// Residuals of the two defining relations of a hidden antiunitary symmetry:
/// square `-1` on its support, commutation with the Hamiltonian.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SymmetryReport {
    /// `max |M conj(M) + P|`; zero when the operator squares to `-P`.
    pub square_residual: f64,
    /// `max |M conj(H) - H M| / max(1, max|H|)`; zero when the operator
    /// commutes with `H`.
    pub commutator_residual: f64,
}

/// One eigenvector paired with its orthogonal symmetry partner.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CertifiedPair {
    /// Index of the source eigenvector in ascending-eigenvalue order.
    pub index: usize,
    pub energy: f64,
    /// `|<psi, partner>|`; certified `<= 1e-8`.
    pub overlap: f64,
    /// `||H partner - E partner||`; certified `<= 1e-8 * max(1, max|H|)`.
    pub eigen_residual: f64,
}

impl AntiunitaryOperator {
    /// FULL operator from a unitary matrix.
    pub fn full(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 {
            return Err(Error::ZeroDimension);
        }
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let dev = crate::linalg::unitarity_deviation(&m);
        if dev > ORTHONORMALITY_TOL {
            return Err(Error::NotUnitary {
                deviation: dev,
                tolerance: ORTHONORMALITY_TOL,
            });
        }
        Ok(Self {
            unitary_part: m,
            support: OperatorSupport::Full,
        })
    }

    pub fn dim(&self) -> usize {
        self.unitary_part.nrows()
    }

    pub fn unitary_part(&self) -> &DMatrix<C64> {
        &self.unitary_part
    }

    pub fn support(&self) -> &OperatorSupport {
        &self.support
    }

    pub fn is_full(&self) -> bool {
        matches!(self.support, OperatorSupport::Full)
    }

    /// Orthogonal projector onto the support (identity for FULL operators).
    pub fn support_projector(&self) -> DMatrix<C64> {
        let d = self.dim();
        match &self.support {
            OperatorSupport::Full => DMatrix::identity(d, d),
            OperatorSupport::Partial { basis } => {
                let mut p = DMatrix::zeros(d, d);
                for v in basis {
                    p += v * v.adjoint();
                }
                p
            }
        }
    }

    /// Apply the operator: `M * conj(v)`.
    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(&self.unitary_part * conj_v(v))
    }

    /// Measure the two defining residuals against a Hamiltonian.
    ///
    /// `square_residual = max |M conj(M) + P|` with `P` the support
    /// projector; `commutator_residual = max |M conj(H) - H M|` normalized
    /// by `max(1, max|H|)`. Both are zero for an exact hidden antiunitary
    /// symmetry; nothing is thresholded here.
    pub fn verify_has(&self, h: &HermitianMatrix) -> Result<SymmetryReport> {
        if h.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: h.dim(),
            });
        }
        let m = &self.unitary_part;
        let square_residual = max_norm(&(m * conj_m(m) + self.support_projector()));
        let comm = m * conj_m(h.matrix()) - h.matrix() * m;
        let commutator_residual = max_norm(&comm) / max_norm(h.matrix()).max(1.0);
        Ok(SymmetryReport {
            square_residual,
            commutator_residual,
        })
    }
}

fn pair_deviation(psi1: &DVector<C64>, psi2: &DVector<C64>) -> f64 {
    let n1 = (psi1.dotc(psi1).re - 1.0).abs();
    let n2 = (psi2.dotc(psi2).re - 1.0).abs();
    let cross = psi1.dotc(psi2).norm();
    n1.max(n2).max(cross)
}

/// PARTIAL antiunitary operator from an orthonormal degenerate pair:
/// `M = psi2 psi1^T - psi1 psi2^T` (plain transpose), supported on
/// `span{psi1, psi2}`.
///
/// The construction guarantees `M conj(M) = -P` and `M M^dagger = P` with
/// `P` the projector onto the pair span. (`M^dagger M` equals `conj(P)`,
/// which differs from `P` whenever the pair is not real.)
pub fn construct_pair_operator(
    psi1: &DVector<C64>,
    psi2: &DVector<C64>,
) -> Result<AntiunitaryOperator> {
    if psi1.len() != psi2.len() {
        return Err(Error::DimensionMismatch {
            expected: psi1.len(),
            found: psi2.len(),
        });
    }
    if psi1.is_empty() {
        return Err(Error::ZeroDimension);
    }
    let dev = pair_deviation(psi1, psi2);
    if dev > ORTHONORMALITY_TOL {
        return Err(Error::NotOrthonormal {
            deviation: dev,
            tolerance: ORTHONORMALITY_TOL,
        });
    }
    let m = psi2 * psi1.transpose() - psi1 * psi2.transpose();
    Ok(AntiunitaryOperator {
        unitary_part: m,
        support: OperatorSupport::Partial {
            basis: vec![psi1.clone(), psi2.clone()],
        },
    })
}

/// Eigenspace of dimension >= 2: energy, orthonormal basis, and the largest
/// eigen-residual `||H psi - E psi||` over the basis.
#[derive(Debug, Clone)]
pub struct DegenerateSubspace {
    energy: f64,
    basis: Vec<DVector<C64>>,
    residual: f64,
}

impl DegenerateSubspace {
    /// Validate a basis against a Hamiltonian. The basis must hold at least
    /// two orthonormal vectors; the residual is measured, not assumed.
    pub fn new(energy: f64, basis: Vec<DVector<C64>>, h: &HermitianMatrix) -> Result<Self> {
        if basis.len() < 2 {
            return Err(Error::SubspaceTooSmall { dim: basis.len() });
        }
        for v in &basis {
            if v.len() != h.dim() {
                return Err(Error::DimensionMismatch {
                    expected: h.dim(),
                    found: v.len(),
                });
            }
        }
        let mut dev = 0.0f64;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let g = a.dotc(b);
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((g - C64::new(target, 0.0)).norm());
            }
        }
        if dev > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal {
                deviation: dev,
                tolerance: ORTHONORMALITY_TOL,
            });
        }
        let residual = basis
            .iter()
            .map(|v| (h.matrix() * v - v.scale(energy)).norm())
            .fold(0.0, f64::max);
        Ok(Self {
            energy,
            basis,
            residual,
        })
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn basis(&self) -> &[DVector<C64>] {
        &self.basis
    }

    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Modified Gram-Schmidt. Inputs are assumed independent (eigenvectors of
/// distinct solver columns), so renormalization cannot hit zero.
fn orthonormalize(vectors: &mut [DVector<C64>]) {
    for i in 0..vectors.len() {
        for j in 0..i {
            let proj = vectors[j].dotc(&vectors[i]);
            let correction = &vectors[j] * proj;
            vectors[i] -= correction;
        }
        let norm = vectors[i].norm();
        vectors[i] = vectors[i].unscale(norm);
    }
}

/// Find all eigenspaces of multiplicity >= 2.
///
/// Eigenvalues are clustered by single linkage on the sorted sequence:
/// consecutive values closer than `rel_tol * max(1, max|H|)` share a
/// cluster. Each returned subspace carries the cluster-mean energy and a
/// re-orthonormalized basis. Clusters of size 1 are dropped; the list is
/// empty when the spectrum is simple.
pub fn detect_degenerate_subspaces(
    h: &HermitianMatrix,
    rel_tol: f64,
) -> Result<Vec<DegenerateSubspace>> {
    if rel_tol <= 0.0 {
        return Err(Error::NonPositiveTolerance { value: rel_tol });
    }
    let sys = eigh(h)?;
    let threshold = rel_tol * max_norm(h.matrix()).max(1.0);
    let values = sys.values();

    let mut out = Vec::new();
    let mut start = 0;
    for end in 1..=values.len() {
        let linked = end < values.len() && values[end] - values[end - 1] <= threshold;
        if linked {
            continue;
        }
        let size = end - start;
        if size >= 2 {
            let energy = values[start..end].iter().sum::<f64>() / size as f64;
            let mut basis: Vec<DVector<C64>> = (start..end).map(|i| sys.vector(i)).collect();
            orthonormalize(&mut basis);
            out.push(DegenerateSubspace::new(energy, basis, h)?);
        }
        start = end;
    }
    Ok(out)
}

/// Certify that a FULL antiunitary symmetry with square `-1` forces every
/// eigenvalue of `H` to even multiplicity.
///
/// Preconditions (rejected with measured residuals): the operator is FULL,
/// `max |M conj(M) + I| <= 1e-8`, and the normalized commutator residual
/// against `H` is `<= 1e-8`. Each eigenvector `psi` is then paired with its
/// image under the symmetry; the pair is orthogonal and shares the energy
/// within the stated bounds.
pub fn certify_from_symmetry(
    op: &AntiunitaryOperator,
    h: &HermitianMatrix,
) -> Result<Vec<CertifiedPair>> {
    certify_with_tolerance(op, h, CERTIFY_TOL)
}

/// [`certify_from_symmetry`] with a caller-chosen tolerance in place of the
/// default; the same bound gates the preconditions, the pair overlaps, and
/// the scale-anchored eigen-residuals.
pub fn certify_with_tolerance(
    op: &AntiunitaryOperator,
    h: &HermitianMatrix,
    tol: f64,
) -> Result<Vec<CertifiedPair>> {
    if tol <= 0.0 {
        return Err(Error::NonPositiveTolerance { value: tol });
    }
    if !op.is_full() {
        return Err(Error::InvalidInput(
            "certification requires a FULL antiunitary operator".into(),
        ));
    }
    let report = op.verify_has(h)?;
    if report.square_residual > tol || report.commutator_residual > tol {
        return Err(Error::SymmetryPrecondition {
            square_residual: report.square_residual,
            commutator_residual: report.commutator_residual,
            tolerance: tol,
        });
    }

    let sys = eigh(h)?;
    let scale = max_norm(h.matrix()).max(1.0);
    let mut pairs = Vec::with_capacity(sys.dim());
    for i in 0..sys.dim() {
        let psi = sys.vector(i);
        let partner = op.apply(&psi)?;
        let energy = sys.values()[i];
        let overlap = psi.dotc(&partner).norm();
        let eigen_residual = (h.matrix() * &partner - partner.scale(energy)).norm();
        if overlap > tol || eigen_residual > tol * scale {
            return Err(Error::InvalidInput(format!(
                "pairing failed at eigenvector {i}: overlap {overlap:.3e}, \
                 eigen-residual {eigen_residual:.3e}"
            )));
        }
        pairs.push(CertifiedPair {
            index: i,
            energy,
            overlap,
            eigen_residual,
        });
    }
    Ok(pairs)
}

/// The n-1 pair operators of an n-fold degenerate subspace, pairing the
/// first basis vector with each of the others.
pub fn construct_nfold_operators(
    subspace: &DegenerateSubspace,
) -> Result<Vec<AntiunitaryOperator>> {
    let basis = subspace.basis();
    let mut ops = Vec::with_capacity(basis.len() - 1);
    for j in 1..basis.len() {
        ops.push(construct_pair_operator(&basis[0], &basis[j])?);
    }
    Ok(ops)
}

/// Seeded unitary antisymmetric matrix with `M conj(M) = -I`: a random
/// rotation `W J W^T` of the canonical block `J = [[0, -I], [I, 0]]`.
/// The plain transpose on the right (not the adjoint) is what preserves
/// antisymmetry, making the resulting antiunitary square to `-1`.
pub fn kramers_unitary(half_dim: usize, seed: u64) -> Result<DMatrix<C64>> {
    if half_dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = 2 * half_dim;
    let w = random_unitary(n, seed)?;
    let mut j = DMatrix::<C64>::zeros(n, n);
    for i in 0..half_dim {
        j[(i, half_dim + i)] = C64::new(-1.0, 0.0);
        j[(half_dim + i, i)] = C64::new(1.0, 0.0);
    }
    Ok(w.as_matrix() * j * w.as_matrix().transpose())
}

/// Project a Hamiltonian onto the commutant of a FULL square `-1`
/// antiunitary symmetry: `H <- (H + M conj(H) M^dagger) / 2`.
///
/// The projection commutes with the symmetry up to rounding (this needs
/// the antisymmetry of `M`, which square `-1` guarantees for a unitary),
/// so every eigenvalue of the result is forced to even multiplicity.
pub fn symmetrize_hamiltonian(
    h: &HermitianMatrix,
    op: &AntiunitaryOperator,
) -> Result<HermitianMatrix> {
    if !op.is_full() {
        return Err(Error::InvalidInput(
            "symmetrization requires a FULL antiunitary operator".into(),
        ));
    }
    if op.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: op.dim(),
        });
    }
    let m = op.unitary_part();
    let n = h.dim();
    let square_residual = max_norm(&(m * conj_m(m) + DMatrix::<C64>::identity(n, n)));
    if square_residual > CERTIFY_TOL {
        return Err(Error::InvalidInput(format!(
            "symmetrization requires square -1: residual {square_residual:.3e}"
        )));
    }
    let twisted = m * conj_m(h.matrix()) * m.adjoint();
    let sum = (h.matrix() + twisted).scale(0.5);
    HermitianMatrix::new((&sum + sum.adjoint()).scale(0.5))
}
