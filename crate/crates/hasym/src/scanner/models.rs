//! Built-in two-level model families for the degeneracy scanner.
//!
//! Each family is a fixture with a known answer, useful for validating the
//! scan/refine pipeline before pointing it at a custom evaluator:
//!
//! * `linear2`: all three traceless components are independent parameters,
//!   so the spectrum closes only at the origin and the gap grows linearly
//!   in every direction. Three tuned parameters are both necessary and
//!   sufficient here; freezing any axis leaves a positive gap floor.
//! * `honeycomb`: nearest-neighbor hopping on the two-site hexagonal
//!   lattice, parameterized by reduced reciprocal coordinates, with two
//!   inequivalent conical contact points.
//! * `piflux`: a square-lattice half-flux model whose two bands touch at
//!   the four quarter-period points.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scanner::{Evaluator, ParametricModel};
use crate::twolevel::PauliVector;

fn two_level(h0: f64, hx: f64, hy: f64, hz: f64) -> Result<crate::linalg::HermitianMatrix> {
    Ok(PauliVector::new(h0, hx, hy, hz)?.reconstruct())
}

/// `H(alpha) = alpha1 sigma_x + alpha2 sigma_y + alpha3 sigma_z` on the box
/// `[-2, 2]^3`. Gap `2 |alpha|`, a single isolated zero at the origin.
pub fn linear2() -> Result<ParametricModel> {
    let evaluator: Evaluator = Arc::new(|a: &[f64]| two_level(0.0, a[0], a[1], a[2]));
    ParametricModel::new(
        "linear2",
        vec![[-2.0, 2.0]; 3],
        vec![None; 3],
        2,
        evaluator,
    )
}

/// Hexagonal-lattice hopping in reduced reciprocal coordinates `u` on
/// `[0, 1]^2` (both axes periodic with period 1):
/// `f(u) = 1 + exp(2 pi i u1) + exp(2 pi i u2)`,
/// `H = Re f sigma_x + Im f sigma_y`.
/// The two bands `+-|f|` touch exactly at `(1/3, 2/3)` and `(2/3, 1/3)`.
pub fn honeycomb() -> Result<ParametricModel> {
    let evaluator: Evaluator = Arc::new(|u: &[f64]| {
        let re = 1.0 + (TAU * u[0]).cos() + (TAU * u[1]).cos();
        let im = (TAU * u[0]).sin() + (TAU * u[1]).sin();
        two_level(0.0, re, im, 0.0)
    });
    ParametricModel::new(
        "honeycomb",
        vec![[0.0, 1.0]; 2],
        vec![Some(1.0); 2],
        2,
        evaluator,
    )
}

/// Cartesian momentum for a reduced honeycomb coordinate, using the
/// reciprocal basis `b1 = (2 pi / 3)(1, sqrt 3)`, `b2 = (2 pi / 3)(1, -sqrt 3)`.
pub fn honeycomb_cartesian(u: &[f64; 2]) -> [f64; 2] {
    let s = 2.0 * PI / 3.0;
    [
        s * (u[0] + u[1]),
        s * 3f64.sqrt() * (u[0] - u[1]),
    ]
}

/// Half-flux square-lattice model `H(k) = 2 cos(k1) sigma_x + 2 cos(k2) sigma_y`
/// on `[-pi, pi]^2` (periodic, period `2 pi` per axis). Four band-touching
/// points at `(+-pi/2, +-pi/2)`.
pub fn piflux() -> Result<ParametricModel> {
    let evaluator: Evaluator =
        Arc::new(|k: &[f64]| two_level(0.0, 2.0 * k[0].cos(), 2.0 * k[1].cos(), 0.0));
    ParametricModel::new(
        "piflux",
        vec![[-PI, PI]; 2],
        vec![Some(TAU); 2],
        2,
        evaluator,
    )
}

/// All built-in families, in registry order.
pub fn builtin_models() -> Vec<ParametricModel> {
    vec![
        linear2().expect("builtin model is valid"),
        honeycomb().expect("builtin model is valid"),
        piflux().expect("builtin model is valid"),
    ]
}

/// Look up a built-in family by name.
pub fn model_by_name(name: &str) -> Result<ParametricModel> {
    let registry = builtin_models();
    registry
        .iter()
        .find(|m| m.name() == name)
        .cloned()
        .ok_or_else(|| Error::UnknownModel {
            name: name.to_string(),
            known: registry
                .iter()
                .map(|m| m.name().to_string())
                .collect::<Vec<_>>()
                .join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_norm;

    #[test]
    fn registry_names_are_stable() {
        let names: Vec<String> = builtin_models()
            .iter()
            .map(|m| m.name().to_string())
            .collect();
        assert_eq!(names, ["linear2", "honeycomb", "piflux"]);
        for name in &names {
            assert_eq!(model_by_name(name).unwrap().name(), name);
        }
    }

    #[test]
    fn honeycomb_is_periodic_in_both_axes() {
        let model = honeycomb().unwrap();
        let a = model.evaluate(&[0.0, 0.25]).unwrap();
        let b = model.evaluate(&[1.0, 0.25]).unwrap();
        assert!(max_norm(&(a.matrix() - b.matrix())) <= 1e-12);
        let c = model.evaluate(&[0.25, 0.0]).unwrap();
        let d = model.evaluate(&[0.25, 1.0]).unwrap();
        assert!(max_norm(&(c.matrix() - d.matrix())) <= 1e-12);
    }

    #[test]
    fn honeycomb_cartesian_maps_corners() {
        // u = (1, 0) maps to b1 itself
        let k = honeycomb_cartesian(&[1.0, 0.0]);
        let s = 2.0 * PI / 3.0;
        assert!((k[0] - s).abs() <= 1e-12);
        assert!((k[1] - s * 3f64.sqrt()).abs() <= 1e-12);
        // the two contact points map to opposite transverse momenta
        let kp = honeycomb_cartesian(&[1.0 / 3.0, 2.0 / 3.0]);
        let km = honeycomb_cartesian(&[2.0 / 3.0, 1.0 / 3.0]);
        assert!((kp[0] - km[0]).abs() <= 1e-12);
        assert!((kp[1] + km[1]).abs() <= 1e-12);
    }

    #[test]
    fn piflux_matches_closed_form_gap() {
        let model = piflux().unwrap();
        for k in [[0.0, 0.0], [1.0, -2.0], [PI, -PI]] {
            let (gap, _) = model.gap_at(&k).unwrap();
            let expected = 2.0 * (4.0 * k[0].cos().powi(2) + 4.0 * k[1].cos().powi(2)).sqrt();
            assert!((gap - expected).abs() <= 1e-12);
        }
    }
}
