//! Degeneracy hunting in parameterized Hamiltonian families.
//!
//! A [`ParametricModel`] maps a point of an axis-aligned parameter box to a
//! Hermitian matrix. [`grid_scan`] tabulates the smallest adjacent gap over
//! a lattice of nodes, [`refine`] drives that gap to zero with a simplex
//! search, and [`analyze_point`] runs the full symmetry pipeline at a
//! candidate point. Everything is deterministic: grids traverse nodes in
//! lexicographic order and all search randomness stems from one seed.

pub mod models;
mod neldermead;

pub use neldermead::{minimize, SimplexOptions, SimplexResult};

use std::fmt;
use std::io::Write as IoWrite;
use std::sync::Arc;

use serde::Serialize;

use crate::antiunitary::{
    construct_nfold_operators, construct_pair_operator, detect_degenerate_subspaces,
    SymmetryReport,
};
use crate::error::{Error, Result};
use crate::linalg::{eigh, HermitianMatrix};
use crate::twolevel::{canonical_upsilon_check, pauli_decompose, PauliVector};

/// Default relative tolerance for degeneracy detection at analyzed points.
pub const DETECT_REL_TOL: f64 = 1e-8;

/// Folded parameter distance below which two found points count as one.
pub const DEDUP_TOL: f64 = 1e-4;

pub type Evaluator = Arc<dyn Fn(&[f64]) -> Result<HermitianMatrix> + Send + Sync>;

/// A family of Hermitian matrices over an axis-aligned parameter box.
#[derive(Clone)]
pub struct ParametricModel {
    name: String,
    param_box: Vec<[f64; 2]>,
    periodicity: Vec<Option<f64>>,
    matrix_dim: usize,
    evaluator: Evaluator,
}

impl fmt::Debug for ParametricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricModel")
            .field("name", &self.name)
            .field("param_box", &self.param_box)
            .field("periodicity", &self.periodicity)
            .field("matrix_dim", &self.matrix_dim)
            .finish_non_exhaustive()
    }
}

impl ParametricModel {
    /// `periodicity` declares, per axis, the period under which parameter
    /// points are identified (used when deduplicating found minima), or
    /// `None` for a non-periodic axis.
    pub fn new(
        name: impl Into<String>,
        param_box: Vec<[f64; 2]>,
        periodicity: Vec<Option<f64>>,
        matrix_dim: usize,
        evaluator: Evaluator,
    ) -> Result<Self> {
        if param_box.is_empty() {
            return Err(Error::InvalidInput("parameter box must not be empty".into()));
        }
        for (axis, b) in param_box.iter().enumerate() {
            if !b[0].is_finite() || !b[1].is_finite() || b[0] >= b[1] {
                return Err(Error::InvalidInput(format!(
                    "axis {axis} has invalid interval [{}, {}]",
                    b[0], b[1]
                )));
            }
        }
        if periodicity.len() != param_box.len() {
            return Err(Error::ParamDimension {
                expected: param_box.len(),
                found: periodicity.len(),
            });
        }
        if matrix_dim < 2 {
            return Err(Error::InvalidInput(
                "model matrices must have dimension at least 2".into(),
            ));
        }
        Ok(Self {
            name: name.into(),
            param_box,
            periodicity,
            matrix_dim,
            evaluator,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param_dim(&self) -> usize {
        self.param_box.len()
    }

    pub fn param_box(&self) -> &[[f64; 2]] {
        &self.param_box
    }

    pub fn periodicity(&self) -> &[Option<f64>] {
        &self.periodicity
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    /// Evaluate the family at a point of the box.
    pub fn evaluate(&self, alpha: &[f64]) -> Result<HermitianMatrix> {
        if alpha.len() != self.param_dim() {
            return Err(Error::ParamDimension {
                expected: self.param_dim(),
                found: alpha.len(),
            });
        }
        for (axis, (&v, b)) in alpha.iter().zip(&self.param_box).enumerate() {
            if !(b[0]..=b[1]).contains(&v) {
                return Err(Error::OutsideParamBox {
                    axis,
                    value: v,
                    lo: b[0],
                    hi: b[1],
                });
            }
        }
        let h = (self.evaluator)(alpha)?;
        if h.dim() != self.matrix_dim {
            return Err(Error::DimensionMismatch {
                expected: self.matrix_dim,
                found: h.dim(),
            });
        }
        Ok(h)
    }

    /// Smallest adjacent gap at a point, with the index of the closing pair.
    pub fn gap_at(&self, alpha: &[f64]) -> Result<(f64, usize)> {
        let h = self.evaluate(alpha)?;
        let sys = eigh(&h)?;
        Ok(sys
            .min_adjacent_gap()
            .expect("model dimension is at least 2"))
    }

    /// Restrict the family by pinning one parameter, producing a model with
    /// one fewer axis. Used to probe how many independent parameters the
    /// degeneracy search actually needs.
    pub fn with_frozen_axis(&self, axis: usize, value: f64) -> Result<ParametricModel> {
        if axis >= self.param_dim() {
            return Err(Error::FrozenAxis {
                axis,
                dim: self.param_dim(),
            });
        }
        let b = self.param_box[axis];
        if !(b[0]..=b[1]).contains(&value) {
            return Err(Error::OutsideParamBox {
                axis,
                value,
                lo: b[0],
                hi: b[1],
            });
        }
        let mut param_box = self.param_box.clone();
        param_box.remove(axis);
        let mut periodicity = self.periodicity.clone();
        periodicity.remove(axis);
        let inner = self.evaluator.clone();
        let evaluator: Evaluator = Arc::new(move |alpha: &[f64]| {
            let mut full = Vec::with_capacity(alpha.len() + 1);
            full.extend_from_slice(&alpha[..axis]);
            full.push(value);
            full.extend_from_slice(&alpha[axis..]);
            inner(&full)
        });
        ParametricModel::new(
            format!("{}[axis{}={}]", self.name, axis, value),
            param_box,
            periodicity,
            self.matrix_dim,
            evaluator,
        )
    }
}

/// Distance between two parameter points after folding each coordinate
/// difference by the model's declared period on that axis.
pub fn folded_distance(model: &ParametricModel, a: &[f64], b: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..model.param_dim() {
        let mut d = a[i] - b[i];
        if let Some(period) = model.periodicity()[i] {
            d -= period * (d / period).round();
        }
        sum += d * d;
    }
    sum.sqrt()
}

/// A node of the scan lattice that beats all of its axis neighbors.
#[derive(Debug, Clone, Serialize)]
pub struct GridMinimum {
    pub index: Vec<usize>,
    pub alpha: Vec<f64>,
    pub gap: f64,
}

/// A node whose evaluation failed; the scan continues past it.
#[derive(Debug, Clone, Serialize)]
pub struct NodeFailure {
    pub index: Vec<usize>,
    pub message: String,
}

/// Gap values tabulated over a lattice of parameter-box nodes, in
/// lexicographic node order with the last axis varying fastest.
#[derive(Debug, Clone)]
pub struct GapField {
    model: String,
    resolution: Vec<usize>,
    axes: Vec<Vec<f64>>,
    gaps: Vec<f64>,
    failures: Vec<NodeFailure>,
}

fn flat_index(resolution: &[usize], index: &[usize]) -> usize {
    let mut flat = 0;
    for (i, &r) in index.iter().zip(resolution) {
        flat = flat * r + i;
    }
    flat
}

impl GapField {
    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn resolution(&self) -> &[usize] {
        &self.resolution
    }

    pub fn node_count(&self) -> usize {
        self.gaps.len()
    }

    pub fn failures(&self) -> &[NodeFailure] {
        &self.failures
    }

    /// Gap at a lattice node; NaN marks a failed evaluation.
    pub fn gap(&self, index: &[usize]) -> f64 {
        self.gaps[flat_index(&self.resolution, index)]
    }

    pub fn node_alpha(&self, index: &[usize]) -> Vec<f64> {
        index
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis[i])
            .collect()
    }

    /// The node with the smallest gap (first in lexicographic order on ties).
    pub fn min_node(&self) -> Option<GridMinimum> {
        let mut best: Option<(usize, f64)> = None;
        for (flat, &g) in self.gaps.iter().enumerate() {
            if !g.is_finite() {
                continue;
            }
            if best.map_or(true, |(_, bg)| g < bg) {
                best = Some((flat, g));
            }
        }
        best.map(|(flat, gap)| {
            let index = self.unflatten(flat);
            GridMinimum {
                alpha: self.node_alpha(&index),
                index,
                gap,
            }
        })
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.resolution.len()];
        for axis in (0..self.resolution.len()).rev() {
            index[axis] = flat % self.resolution[axis];
            flat /= self.resolution[axis];
        }
        index
    }

    /// Local minima with gap at or below `threshold`, in lexicographic node
    /// order. A node qualifies when every axis neighbor has a strictly
    /// larger gap, or an equal gap at a larger lexicographic index (ties
    /// keep exactly one representative). Failed neighbors never disqualify.
    pub fn local_minima(&self, threshold: f64) -> Vec<GridMinimum> {
        let dim = self.resolution.len();
        let mut out = Vec::new();
        for (flat, &g) in self.gaps.iter().enumerate() {
            if !g.is_finite() || g > threshold {
                continue;
            }
            let index = self.unflatten(flat);
            let mut is_min = true;
            'axes: for axis in 0..dim {
                for dir in [-1isize, 1] {
                    let i = index[axis] as isize + dir;
                    if i < 0 || i as usize >= self.resolution[axis] {
                        continue;
                    }
                    let mut neighbor = index.clone();
                    neighbor[axis] = i as usize;
                    let nflat = flat_index(&self.resolution, &neighbor);
                    let ng = self.gaps[nflat];
                    if !ng.is_finite() {
                        continue;
                    }
                    if ng < g || (ng == g && nflat < flat) {
                        is_min = false;
                        break 'axes;
                    }
                }
            }
            if is_min {
                out.push(GridMinimum {
                    alpha: self.node_alpha(&index),
                    index,
                    gap: g,
                });
            }
        }
        out
    }

    /// Write the field as CSV: one row per node in lexicographic order,
    /// parameter columns before the gap, header row, LF line endings.
    /// Floats use the shortest decimal form that round-trips.
    pub fn to_csv<W: IoWrite>(&self, mut w: W) -> std::io::Result<()> {
        for i in 1..=self.resolution.len() {
            write!(w, "alpha{i},")?;
        }
        writeln!(w, "gap")?;
        let mut index = vec![0usize; self.resolution.len()];
        for flat in 0..self.gaps.len() {
            let alpha = self.node_alpha(&index);
            for v in &alpha {
                write!(w, "{v},")?;
            }
            writeln!(w, "{}", self.gaps[flat])?;
            for axis in (0..index.len()).rev() {
                index[axis] += 1;
                if index[axis] < self.resolution[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
        Ok(())
    }
}

/// Tabulate the minimal adjacent gap over a lattice of box nodes.
///
/// `resolution` gives the node count per axis (at least 2; endpoints are
/// included). Evaluation failures are recorded and skipped. At most three
/// axes are supported for grids.
pub fn grid_scan(model: &ParametricModel, resolution: &[usize]) -> Result<GapField> {
    let dim = model.param_dim();
    if dim > 3 {
        return Err(Error::GridDimension { dim });
    }
    if resolution.len() != dim {
        return Err(Error::ParamDimension {
            expected: dim,
            found: resolution.len(),
        });
    }
    for (axis, &r) in resolution.iter().enumerate() {
        if r < 2 {
            return Err(Error::ResolutionTooCoarse { axis, value: r });
        }
    }

    let axes: Vec<Vec<f64>> = model
        .param_box()
        .iter()
        .zip(resolution)
        .map(|(b, &r)| {
            let step = (b[1] - b[0]) / (r - 1) as f64;
            (0..r).map(|i| b[0] + i as f64 * step).collect()
        })
        .collect();

    let total: usize = resolution.iter().product();
    let mut gaps = Vec::with_capacity(total);
    let mut failures = Vec::new();
    let mut index = vec![0usize; dim];
    for _ in 0..total {
        let alpha: Vec<f64> = index.iter().zip(&axes).map(|(&i, ax)| ax[i]).collect();
        match model.gap_at(&alpha) {
            Ok((gap, _)) => gaps.push(gap),
            Err(e) => {
                failures.push(NodeFailure {
                    index: index.clone(),
                    message: e.to_string(),
                });
                gaps.push(f64::NAN);
            }
        }
        for axis in (0..dim).rev() {
            index[axis] += 1;
            if index[axis] < resolution[axis] {
                break;
            }
            index[axis] = 0;
        }
    }

    Ok(GapField {
        model: model.name().to_string(),
        resolution: resolution.to_vec(),
        axes,
        gaps,
        failures,
    })
}

/// A located degeneracy: parameter point, residual gap, the adjacent level
/// pair that closed, and the symmetry residuals of the operator built from
/// that pair.
#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyPoint {
    pub alpha: Vec<f64>,
    pub gap_value: f64,
    pub level_index: usize,
    pub has_report: SymmetryReport,
}

/// Settings for [`refine`].
#[derive(Debug, Clone, Copy)]
pub struct RefineOptions {
    /// Success means the final gap is at most `max(gap_tol, 1e-12)`.
    pub gap_tol: f64,
    /// Total objective-evaluation budget including restarts.
    pub max_evaluations: usize,
    /// Seed for restart placement.
    pub seed: u64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self {
            gap_tol: 1e-10,
            max_evaluations: 2000,
            seed: 0,
        }
    }
}

/// Minimize the adjacent-gap objective from `alpha0` and, on success, build
/// and verify the antiunitary operator of the closing pair.
///
/// Failure (budget spent with the gap above tolerance) reports the best
/// point found; a strictly positive floor signals an avoided crossing or
/// too few effective parameters.
pub fn refine(
    model: &ParametricModel,
    alpha0: &[f64],
    options: &RefineOptions,
) -> Result<DegeneracyPoint> {
    if options.gap_tol <= 0.0 {
        return Err(Error::NonPositiveTolerance {
            value: options.gap_tol,
        });
    }
    model.evaluate(alpha0)?;

    let mut objective = |x: &[f64]| match model.gap_at(x) {
        Ok((gap, _)) => gap,
        Err(_) => f64::INFINITY,
    };
    let target = options.gap_tol.max(1e-12);
    let result = minimize(
        &mut objective,
        alpha0,
        model.param_box(),
        &SimplexOptions {
            max_evaluations: options.max_evaluations,
            target,
            seed: options.seed,
            initial_step: 0.05,
        },
    );
    if !result.converged {
        return Err(Error::RefineFailed {
            best_alpha: result.x,
            best_gap: result.value,
            evaluations: result.evaluations,
        });
    }

    let h = model.evaluate(&result.x)?;
    let sys = eigh(&h)?;
    let (gap_value, level_index) = sys
        .min_adjacent_gap()
        .expect("model dimension is at least 2");
    let op = construct_pair_operator(&sys.vector(level_index), &sys.vector(level_index + 1))?;
    let has_report = op.verify_has(&h)?;
    Ok(DegeneracyPoint {
        alpha: result.x,
        gap_value,
        level_index,
        has_report,
    })
}

/// Merge points that coincide up to `tol` after periodic folding, keeping
/// the representative with the smallest gap. Order of first appearance is
/// preserved.
pub fn dedup_points(
    model: &ParametricModel,
    points: Vec<DegeneracyPoint>,
    tol: f64,
) -> Vec<DegeneracyPoint> {
    let mut reps: Vec<DegeneracyPoint> = Vec::new();
    for p in points {
        match reps
            .iter_mut()
            .find(|r| folded_distance(model, &r.alpha, &p.alpha) <= tol)
        {
            Some(r) => {
                if p.gap_value < r.gap_value {
                    *r = p;
                }
            }
            None => reps.push(p),
        }
    }
    reps
}

/// Per-eigenspace verification results at an analyzed point.
#[derive(Debug, Clone, Serialize)]
pub struct SubspaceAnalysis {
    pub energy: f64,
    pub multiplicity: usize,
    /// Largest `||H psi - E psi||` over the subspace basis.
    pub residual: f64,
    /// Residuals of the `multiplicity - 1` pair operators.
    pub operators: Vec<SymmetryReport>,
}

/// Extra diagnostics available for two-level models.
#[derive(Debug, Clone, Serialize)]
pub struct TwoLevelAnalysis {
    pub pauli: PauliVector,
    /// `(hx, hy, hz)`; all three vanish exactly at a crossing.
    pub constraint_residual: [f64; 3],
    /// Invariance defect under the canonical antiunitary conjugation.
    pub canonical_residual: f64,
}

/// Everything the pipeline can say about one parameter point.
#[derive(Debug, Clone, Serialize)]
pub struct PointAnalysis {
    pub alpha: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub min_gap: f64,
    /// Index of the adjacent pair attaining `min_gap`.
    pub level_index: usize,
    pub degenerate: bool,
    pub subspaces: Vec<SubspaceAnalysis>,
    /// When no subspace clears the detection tolerance: residuals of the
    /// operator built from the closest adjacent pair, quantifying how near
    /// the point is to hosting the symmetry.
    pub near_pair: Option<SymmetryReport>,
    pub two_level: Option<TwoLevelAnalysis>,
}

/// Run the full pipeline at one parameter point: spectrum, degenerate
/// subspace detection at `rel_tol`, operator construction and verification,
/// and two-level diagnostics where applicable.
pub fn analyze_point(
    model: &ParametricModel,
    alpha: &[f64],
    rel_tol: f64,
) -> Result<PointAnalysis> {
    let h = model.evaluate(alpha)?;
    let sys = eigh(&h)?;
    let (min_gap, level_index) = sys
        .min_adjacent_gap()
        .expect("model dimension is at least 2");

    let subs = detect_degenerate_subspaces(&h, rel_tol)?;
    let mut subspaces = Vec::with_capacity(subs.len());
    for sub in &subs {
        let ops = construct_nfold_operators(sub)?;
        let mut operators = Vec::with_capacity(ops.len());
        for op in &ops {
            operators.push(op.verify_has(&h)?);
        }
        subspaces.push(SubspaceAnalysis {
            energy: sub.energy(),
            multiplicity: sub.multiplicity(),
            residual: sub.residual(),
            operators,
        });
    }

    let degenerate = !subspaces.is_empty();
    let near_pair = if degenerate {
        None
    } else {
        let op = construct_pair_operator(&sys.vector(level_index), &sys.vector(level_index + 1))?;
        Some(op.verify_has(&h)?)
    };

    let two_level = if h.dim() == 2 {
        let pauli = pauli_decompose(&h)?;
        let canonical = canonical_upsilon_check(&h)?;
        Some(TwoLevelAnalysis {
            pauli,
            constraint_residual: pauli.constraint_residual(),
            canonical_residual: canonical.residual,
        })
    } else {
        None
    };

    Ok(PointAnalysis {
        alpha: alpha.to_vec(),
        eigenvalues: sys.values().to_vec(),
        min_gap,
        level_index,
        degenerate,
        subspaces,
        near_pair,
        two_level,
    })
}
