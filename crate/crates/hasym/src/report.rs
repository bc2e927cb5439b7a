//! JSON matrix files and machine-readable reports.
//!
//! Matrices travel as `{"format": 1, "dim": n, "entries": [[re, im], ...]}`
//! with row-major entries. Reports carry a digest of the input bytes rather
//! than its path, every tolerance that shaped a decision, and only numbers
//! recomputable from the input, so identical inputs yield byte-identical
//! reports. Floats serialize in shortest round-trip decimal form.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::antiunitary::{CertifiedPair, SymmetryReport};
use crate::error::{Error, Result};
use crate::irrep::{ConstraintSystem, LambdaVector};
use crate::linalg::{hermiticity_deviation, max_norm, ComplexMatrix, HermitianMatrix, C64};
use crate::scanner::{DegeneracyPoint, GridMinimum};
use crate::twolevel::PauliVector;

/// Schema version stamped on every file and report.
pub const FORMAT_VERSION: u32 = 1;

/// Hermiticity gate for user-supplied Hamiltonians; inputs passing it are
/// symmetrized exactly before analysis.
pub const INPUT_HERMITICITY_TOL: f64 = 1e-10;

/// `sha256:<hex>` of a byte string; reports identify inputs by digest.
pub fn sha256_digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// A complex matrix in wire form: row-major `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixData {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixData {
    pub fn from_complex(m: &DMatrix<C64>) -> Self {
        let dim = m.nrows();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        Self { dim, entries }
    }

    pub fn to_complex(&self) -> Result<ComplexMatrix> {
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::EntryCount {
                context: "matrix file",
                expected: self.dim * self.dim,
                found: self.entries.len(),
            });
        }
        let entries: Vec<C64> = self.entries.iter().map(|e| C64::new(e[0], e[1])).collect();
        ComplexMatrix::new(self.dim, self.dim, &entries)
    }

    /// Parse as a Hamiltonian: Hermitian within [`INPUT_HERMITICITY_TOL`]
    /// relative to `max(1, max |entry|)`, then symmetrized exactly so all
    /// downstream residuals measure the analysis, not the input rounding.
    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        let m = self.to_complex()?.into_inner();
        let scale = max_norm(&m).max(1.0);
        let deviation = hermiticity_deviation(&m);
        if deviation > INPUT_HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: INPUT_HERMITICITY_TOL * scale,
            });
        }
        HermitianMatrix::new((&m + m.adjoint()).scale(0.5))
    }
}

/// On-disk matrix document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub format: u32,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn new(data: MatrixData) -> Self {
        Self {
            format: FORMAT_VERSION,
            dim: data.dim,
            entries: data.entries,
        }
    }

    pub fn data(&self) -> MatrixData {
        MatrixData {
            dim: self.dim,
            entries: self.entries.clone(),
        }
    }

    fn check_format(&self) -> Result<()> {
        check_format_version(self.format)
    }

    pub fn to_complex(&self) -> Result<ComplexMatrix> {
        self.check_format()?;
        self.data().to_complex()
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix> {
        self.check_format()?;
        self.data().to_hermitian()
    }
}

/// On-disk document holding the two representation matrices of a pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepFile {
    pub format: u32,
    #[serde(rename = "A")]
    pub a: MatrixData,
    #[serde(rename = "B")]
    pub b: MatrixData,
}

fn check_format_version(found: u32) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported format version {found}, this tool reads version {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

/// Read and parse a matrix document, returning it with the digest of the
/// raw bytes.
pub fn read_matrix_file(path: &Path) -> Result<(MatrixFile, String)> {
    let bytes = fs::read(path)?;
    let file: MatrixFile = serde_json::from_slice(&bytes)?;
    file.check_format()?;
    Ok((file, sha256_digest(&bytes)))
}

/// Read and parse a two-matrix document, returning it with the digest of
/// the raw bytes.
pub fn read_irrep_file(path: &Path) -> Result<(IrrepFile, String)> {
    let bytes = fs::read(path)?;
    let file: IrrepFile = serde_json::from_slice(&bytes)?;
    check_format_version(file.format)?;
    Ok((file, sha256_digest(&bytes)))
}

/// Pretty JSON with a trailing newline; the single serialization used for
/// both stdout and files so the bytes never depend on the destination.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Write JSON atomically: temp file in the target directory, then rename.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = to_json_string(value)?;
    write_bytes_atomic(path, text.as_bytes())
}

/// Write bytes atomically: temp file in the target directory, then rename.
pub fn write_bytes_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, bytes)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// One constructed antiunitary in wire form with its verification residuals.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorReport {
    pub unitary_part: MatrixData,
    pub square_residual: f64,
    pub commutator_residual: f64,
}

/// One detected degenerate cluster with the operators built from it.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterReport {
    pub energy: f64,
    pub dimension: usize,
    pub residual: f64,
    pub operators: Vec<OperatorReport>,
}

/// Two-level diagnostics attached when the input is 2x2.
#[derive(Debug, Clone, Serialize)]
pub struct TwoLevelReport {
    pub pauli: PauliVector,
    pub constraint_residual: [f64; 3],
    pub canonical_residual: f64,
}

/// Full output of the analyze command.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub format: u32,
    pub command: &'static str,
    pub input_digest: String,
    pub tolerance: f64,
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub degenerate: bool,
    /// True when every cluster's operators pass both residual checks at
    /// `tolerance`.
    pub within_tolerance: bool,
    pub clusters: Vec<ClusterReport>,
    pub two_level: Option<TwoLevelReport>,
}

/// A candidate whose gap minimization exhausted its budget above tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct RefineFailure {
    pub start: Vec<f64>,
    pub best_alpha: Vec<f64>,
    pub best_gap: f64,
    pub evaluations: usize,
}

/// Full output of the scan command.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub format: u32,
    pub command: &'static str,
    pub model: String,
    pub resolution: Vec<usize>,
    pub threshold: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub node_count: usize,
    pub failed_nodes: usize,
    /// Smallest gap over the whole grid.
    pub minimum: Option<GridMinimum>,
    /// Grid-local minima at or below `threshold`.
    pub candidates: Vec<GridMinimum>,
    pub refined: bool,
    /// Refined, deduplicated degeneracy points (when refinement ran).
    pub points: Vec<DegeneracyPoint>,
    /// Candidates that stalled above tolerance (when refinement ran).
    pub refine_failures: Vec<RefineFailure>,
}

/// Full output of the irrep command.
#[derive(Debug, Clone, Serialize)]
pub struct IrrepReport {
    pub format: u32,
    pub command: &'static str,
    pub input_digest: String,
    pub a_coefficients: [f64; 4],
    pub b_coefficients: [f64; 4],
    pub lambda: LambdaVector,
    pub lambda_max_abs: f64,
    pub rank: usize,
    pub forced: bool,
    pub constraints: ConstraintSystem,
}

/// Full output of the certify command.
#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub format: u32,
    pub command: &'static str,
    pub input_digest: String,
    pub operator_digest: String,
    pub tolerance: f64,
    pub dim: usize,
    pub symmetry: SymmetryReport,
    pub certified: bool,
    pub pairs: Vec<CertifiedPair>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_file(dim: usize) -> MatrixFile {
        let mut entries = vec![[0.0, 0.0]; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = [1.0, 0.0];
        }
        MatrixFile {
            format: 1,
            dim,
            entries,
        }
    }

    #[test]
    fn matrix_file_round_trips() {
        let file = identity_file(3);
        let text = to_json_string(&file).unwrap();
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.dim, 3);
        let h = back.to_hermitian().unwrap();
        assert_eq!(h.dim(), 3);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn rejects_wrong_entry_count() {
        let mut file = identity_file(2);
        file.entries.pop();
        assert!(matches!(
            file.to_complex(),
            Err(Error::EntryCount {
                expected: 4,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn rejects_unknown_format_version() {
        let mut file = identity_file(2);
        file.format = 2;
        let err = file.to_complex().unwrap_err();
        assert!(err.to_string().contains("version 2"));
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut file = identity_file(2);
        file.entries[1] = [0.0, 1.0]; // upper entry i, lower stays 0
        assert!(matches!(
            file.to_hermitian(),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn symmetrizes_rounding_level_asymmetry() {
        let mut file = identity_file(2);
        file.entries[1] = [0.5, 0.0];
        file.entries[2] = [0.5 + 1e-13, 0.0];
        let h = file.to_hermitian().unwrap();
        assert_eq!(h.matrix()[(0, 1)], h.matrix()[(1, 0)].conj());
    }

    #[test]
    fn digest_is_prefixed_hex() {
        let d = sha256_digest(b"abc");
        assert!(d.starts_with("sha256:"));
        assert_eq!(d.len(), 7 + 64);
        assert_eq!(d, sha256_digest(b"abc"));
        assert_ne!(d, sha256_digest(b"abd"));
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_json_atomic(&path, &identity_file(2)).unwrap();
        write_json_atomic(&path, &identity_file(3)).unwrap();
        let (file, digest) = read_matrix_file(&path).unwrap();
        assert_eq!(file.dim, 3);
        let raw = fs::read(&path).unwrap();
        assert_eq!(digest, sha256_digest(&raw));
    }

    #[test]
    fn malformed_json_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, "{\"format\": 1,\n  \"dim\": oops}").unwrap();
        match read_matrix_file(&path).unwrap_err() {
            Error::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wire_form_round_trips_complex_entries() {
        let m = crate::linalg::random_unitary(4, 9).unwrap();
        let data = MatrixData::from_complex(m.as_matrix());
        let back = data.to_complex().unwrap();
        assert!(max_norm(&(back.as_matrix() - m.as_matrix())) == 0.0);
    }
}
