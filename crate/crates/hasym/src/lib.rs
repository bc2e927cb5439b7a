//! Construction and verification of antiunitary symmetries behind energy
//! degeneracies of finite Hermitian Hamiltonians.

pub mod antiunitary;
pub mod cli;
pub mod error;
pub mod irrep;
pub mod linalg;
pub mod report;
pub mod scanner;
pub mod twolevel;

pub use antiunitary::{
    certify_from_symmetry, certify_with_tolerance, construct_nfold_operators,
    construct_pair_operator, detect_degenerate_subspaces, kramers_unitary,
    symmetrize_hamiltonian, AntiunitaryOperator, CertifiedPair, DegenerateSubspace,
    OperatorSupport, SymmetryReport,
};
pub use error::{Error, Result};
pub use irrep::{
    commutator_constraint_rows, special_unitary, ConstraintSystem, DegeneracyDecision, IrrepPair,
    LambdaVector,
};
pub use linalg::{
    eigh, max_norm, random_hermitian, random_unitary, svd_rank, ComplexMatrix, EigenSystem,
    HermitianMatrix, SvdRank, C64,
};
pub use scanner::models::{builtin_models, model_by_name};
pub use scanner::{
    analyze_point, dedup_points, grid_scan, refine, DegeneracyPoint, GapField, GridMinimum,
    ParametricModel, PointAnalysis, RefineOptions,
};
pub use twolevel::{canonical_upsilon_check, pauli_decompose, CanonicalCheck, PauliVector};
