//! Box-constrained Nelder-Mead with seeded restarts.
//!
//! The gap objective is continuous but has conical kinks at crossings, so a
//! derivative-free simplex search is used. A single simplex can stall on
//! such objectives; restarts around the incumbent with a radius tied to the
//! current best value recover progress. All randomness comes from one seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Total evaluation budget across all restarts.
    pub max_evaluations: usize,
    /// Stop as soon as the best value drops to this level.
    pub target: f64,
    /// Seed for restart placement.
    pub seed: u64,
    /// Edge length of the first simplex, as a fraction of each box width.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_evaluations: 2000,
            target: 1e-12,
            seed: 0,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// True when `value <= target`.
    pub converged: bool,
}

fn clamp_into(x: &mut [f64], bounds: &[[f64; 2]]) {
    for (v, b) in x.iter_mut().zip(bounds) {
        *v = v.clamp(b[0], b[1]);
    }
}

struct Budget<'a, F> {
    f: &'a mut F,
    used: usize,
    limit: usize,
}

impl<F: FnMut(&[f64]) -> f64> Budget<'_, F> {
    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.limit {
            return None;
        }
        self.used += 1;
        Some((self.f)(x))
    }
}

/// One Nelder-Mead descent from a given simplex. Returns when the budget or
/// the per-descent cap runs out, the target is reached, or the simplex has
/// collapsed. The cap matters: clamping can flatten the simplex onto a box
/// face, where a descent would otherwise grind out the whole budget; capped
/// descents hand control back so a restart can rebuild a full-dimensional
/// simplex.
fn descend<F: FnMut(&[f64]) -> f64>(
    budget: &mut Budget<'_, F>,
    bounds: &[[f64; 2]],
    target: f64,
    cap: usize,
    mut simplex: Vec<(Vec<f64>, f64)>,
) -> (Vec<f64>, f64) {
    let dim = bounds.len();
    let start = budget.used;
    loop {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are finite"));
        let best = simplex[0].1;
        if best <= target || budget.used - start >= cap {
            break;
        }

        // collapse test: x-diameter and value spread both negligible
        let spread = simplex[dim].1 - best;
        let mut diameter = 0.0f64;
        for k in 1..=dim {
            for i in 0..dim {
                diameter = diameter.max((simplex[k].0[i] - simplex[0].0[i]).abs());
            }
        }
        let scale: f64 = bounds.iter().map(|b| b[1] - b[0]).fold(0.0, f64::max);
        if diameter <= 1e-14 * scale.max(1.0) && spread <= 1e-15 * best.abs().max(1.0) {
            break;
        }

        let mut centroid = vec![0.0; dim];
        for v in simplex.iter().take(dim) {
            for i in 0..dim {
                centroid[i] += v.0[i] / dim as f64;
            }
        }
        let worst = simplex[dim].clone();

        let shifted = |coef: f64| -> Vec<f64> {
            let mut x: Vec<f64> = (0..dim)
                .map(|i| centroid[i] + coef * (centroid[i] - worst.0[i]))
                .collect();
            clamp_into(&mut x, bounds);
            x
        };

        let xr = shifted(1.0);
        let fr = match budget.eval(&xr) {
            Some(v) => v,
            None => break,
        };

        if fr < simplex[0].1 {
            // expand
            let xe = shifted(2.0);
            match budget.eval(&xe) {
                Some(fe) if fe < fr => simplex[dim] = (xe, fe),
                Some(_) => simplex[dim] = (xr, fr),
                None => {
                    simplex[dim] = (xr, fr);
                    break;
                }
            }
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }

        // contract (outside when the reflection helped, inside otherwise)
        let (xc, against) = if fr < worst.1 {
            (shifted(0.5), fr)
        } else {
            (shifted(-0.5), worst.1)
        };
        match budget.eval(&xc) {
            Some(fc) if fc <= against => {
                simplex[dim] = (xc, fc);
                continue;
            }
            Some(_) => {}
            None => break,
        }

        // shrink toward the best vertex
        for k in 1..=dim {
            let mut x: Vec<f64> = (0..dim)
                .map(|i| 0.5 * (simplex[0].0[i] + simplex[k].0[i]))
                .collect();
            clamp_into(&mut x, bounds);
            match budget.eval(&x) {
                Some(v) => simplex[k] = (x, v),
                None => break,
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are finite"));
    let (x, value) = simplex.swap_remove(0);
    (x, value)
}

/// Build a simplex around `center` with per-axis steps `h`, stepping inward
/// when the outward vertex would leave the box.
fn simplex_around<F: FnMut(&[f64]) -> f64>(
    budget: &mut Budget<'_, F>,
    bounds: &[[f64; 2]],
    center: &[f64],
    h: &[f64],
) -> Option<Vec<(Vec<f64>, f64)>> {
    let dim = bounds.len();
    let mut vertices = Vec::with_capacity(dim + 1);
    let f0 = budget.eval(center)?;
    vertices.push((center.to_vec(), f0));
    for i in 0..dim {
        let mut x = center.to_vec();
        let step = if x[i] + h[i] <= bounds[i][1] { h[i] } else { -h[i] };
        x[i] += step;
        clamp_into(&mut x, bounds);
        let fx = budget.eval(&x)?;
        vertices.push((x, fx));
    }
    Some(vertices)
}

/// Minimize `f` over an axis-aligned box, restarting around the incumbent
/// until the target value is reached or the budget is spent.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    bounds: &[[f64; 2]],
    options: &SimplexOptions,
) -> SimplexResult {
    let dim = bounds.len();
    assert_eq!(x0.len(), dim, "start point must match the box dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let widths: Vec<f64> = bounds.iter().map(|b| b[1] - b[0]).collect();

    let mut budget = Budget {
        f,
        used: 0,
        limit: options.max_evaluations,
    };

    let mut start = x0.to_vec();
    clamp_into(&mut start, bounds);
    let mut best_x = start.clone();
    let mut best_f = f64::INFINITY;

    // generous for one full quadratic endgame, small next to the budget
    let cap = 200 * dim + 100;
    let mut restart = 0usize;
    while budget.used < budget.limit {
        // restart radius tracks the incumbent value: conical objectives have
        // distance-to-minimum comparable to the value itself
        let frac = if restart == 0 {
            options.initial_step
        } else {
            best_f.clamp(1e-9, 0.25)
        };
        let mut h: Vec<f64> = widths.iter().map(|w| frac * w).collect();
        if restart > 0 {
            for hi in &mut h {
                *hi *= rng.gen_range(0.5..1.5);
            }
        }

        let simplex = match simplex_around(&mut budget, bounds, &best_x, &h) {
            Some(s) => s,
            None => break,
        };
        let (x, value) = descend(&mut budget, bounds, options.target, cap, simplex);
        if value < best_f {
            best_f = value;
            best_x = x;
        }
        if best_f <= options.target {
            break;
        }
        restart += 1;
    }

    SimplexResult {
        converged: best_f <= options.target,
        x: best_x,
        value: best_f,
        evaluations: budget.used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_smooth_quadratic() {
        let mut f = |x: &[f64]| (x[0] - 0.3).powi(2) + (x[1] + 0.7).powi(2) + 1.0;
        let out = minimize(
            &mut f,
            &[0.9, 0.9],
            &[[-1.0, 1.0], [-1.0, 1.0]],
            &SimplexOptions {
                target: 1.0 + 1e-14,
                ..Default::default()
            },
        );
        assert!(out.converged, "value {}", out.value);
        assert!((out.x[0] - 0.3).abs() <= 1e-6);
        assert!((out.x[1] + 0.7).abs() <= 1e-6);
    }

    #[test]
    fn minimizes_cone_to_target() {
        // conical kink at the minimum, like a spectral gap at a crossing
        let mut f = |x: &[f64]| 2.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let out = minimize(
            &mut f,
            &[0.5, -0.3, 0.2],
            &[[-2.0, 2.0], [-2.0, 2.0], [-2.0, 2.0]],
            &SimplexOptions::default(),
        );
        assert!(out.converged, "value {} after {} evals", out.value, out.evaluations);
        assert!(out.value <= 1e-10);
    }

    #[test]
    fn respects_bounds() {
        // unconstrained minimum at (-3, 0) lies outside the box
        let mut f = |x: &[f64]| (x[0] + 3.0).powi(2) + x[1] * x[1];
        let out = minimize(
            &mut f,
            &[0.0, 0.5],
            &[[-1.0, 1.0], [-1.0, 1.0]],
            &SimplexOptions {
                target: 0.0,
                max_evaluations: 500,
                ..Default::default()
            },
        );
        assert!(out.x[0] >= -1.0 - 1e-15);
        assert!((out.x[0] + 1.0).abs() <= 1e-6);
        assert!(out.x[1].abs() <= 1e-6);
    }

    #[test]
    fn positive_floor_reported() {
        let mut f = |x: &[f64]| 2.0 * (x[0] * x[0] + x[1] * x[1] + 0.01).sqrt();
        let out = minimize(
            &mut f,
            &[0.5, -0.3],
            &[[-2.0, 2.0], [-2.0, 2.0]],
            &SimplexOptions::default(),
        );
        assert!(!out.converged);
        assert!((out.value - 0.2).abs() <= 1e-6, "value {}", out.value);
        assert_eq!(out.evaluations, 2000);
    }

    #[test]
    fn deterministic_per_seed() {
        let run = || {
            let mut f = |x: &[f64]| (x[0].sin() + 1.1).abs() + x[1] * x[1];
            minimize(
                &mut f,
                &[0.3, 0.4],
                &[[-3.0, 3.0], [-3.0, 3.0]],
                &SimplexOptions {
                    seed: 7,
                    ..Default::default()
                },
            )
        };
        let a = run();
        let b = run();
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
