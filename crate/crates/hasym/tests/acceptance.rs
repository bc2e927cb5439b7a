//! Acceptance gate: one test per criterion, each ending in a
//! "criterion N: PASS" line. Oracles are closed forms (gap = 2|alpha|,
//! analytic band-touching points), planted constructions (known spectra
//! conjugated by random unitaries), and direct recomputation (commutator
//! entries measured from matrix products).

use std::process::Command;
use std::time::Instant;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hasym::scanner::models::{honeycomb, linear2, piflux};
use hasym::twolevel::pauli_matrices;
use hasym::{
    analyze_point, canonical_upsilon_check, certify_from_symmetry, commutator_constraint_rows,
    construct_nfold_operators, dedup_points, detect_degenerate_subspaces, eigh, grid_scan,
    kramers_unitary, random_hermitian, random_unitary, refine, special_unitary,
    symmetrize_hamiltonian, AntiunitaryOperator, DegenerateSubspace, Error, HermitianMatrix,
    IrrepPair, PauliVector, RefineOptions, C64,
};

const RESIDUAL_TOL: f64 = 1e-10;

/// U diag(...) U^dagger with `mult` copies of `energy` planted up front.
fn planted(dim: usize, mult: usize, energy: f64, seed: u64) -> HermitianMatrix {
    let mut diag = vec![energy; mult];
    for i in 0..dim - mult {
        diag.push(energy + 1.5 + 0.7 * i as f64);
    }
    let d = HermitianMatrix::from_diagonal(&diag).unwrap();
    let u = random_unitary(dim, seed).unwrap();
    HermitianMatrix::new(u.as_matrix() * d.matrix() * u.as_matrix().adjoint()).unwrap()
}

/// Re-mix a degenerate basis by a random unitary; the operators built from
/// any gauge must verify identically.
fn remix(sub: &DegenerateSubspace, h: &HermitianMatrix, seed: u64) -> DegenerateSubspace {
    let k = sub.multiplicity();
    let mix = random_unitary(k, seed).unwrap();
    let basis = sub.basis();
    let mixed: Vec<DVector<C64>> = (0..k)
        .map(|j| {
            let mut v = DVector::<C64>::zeros(basis[0].len());
            for (i, b) in basis.iter().enumerate() {
                v += b * mix.as_matrix()[(i, j)];
            }
            v
        })
        .collect();
    DegenerateSubspace::new(sub.energy(), mixed, h).unwrap()
}

#[test]
fn criterion_1_forward_construction() {
    let started = Instant::now();
    for seed in 0..200u64 {
        let dim = 2 + (seed as usize) % 11; // 2..=12
        let mult = if dim >= 3 && seed % 2 == 1 { 3 } else { 2 };
        let h = planted(dim, mult, 1.0, seed * 31 + 7);

        let subs = detect_degenerate_subspaces(&h, 1e-8).unwrap();
        assert_eq!(subs.len(), 1, "seed {seed}: expected one cluster");
        assert_eq!(subs[0].multiplicity(), mult, "seed {seed}");
        assert!((subs[0].energy() - 1.0).abs() <= 1e-9, "seed {seed}");

        for sub in [subs[0].clone(), remix(&subs[0], &h, seed * 13 + 5)] {
            for op in construct_nfold_operators(&sub).unwrap() {
                let rep = op.verify_has(&h).unwrap();
                assert!(
                    rep.square_residual <= RESIDUAL_TOL,
                    "seed {seed}: square residual {}",
                    rep.square_residual
                );
                assert!(
                    rep.commutator_residual <= RESIDUAL_TOL,
                    "seed {seed}: commutator residual {}",
                    rep.commutator_residual
                );
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 10.0,
        "forward suite took {elapsed:?}, budget is 10 s"
    );
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_kramers_converse() {
    for seed in 0..200u64 {
        let dim = if seed % 2 == 0 { 4 } else { 8 };
        let m = kramers_unitary(dim / 2, seed + 1000).unwrap();
        let op = AntiunitaryOperator::full(m).unwrap();
        let h0 = random_hermitian(dim, seed * 7 + 3).unwrap();
        let h = symmetrize_hamiltonian(&h0, &op).unwrap();

        let sys = eigh(&h).unwrap();
        for i in (0..dim).step_by(2) {
            let split = (sys.values()[i + 1] - sys.values()[i]).abs();
            assert!(split <= 1e-9, "seed {seed}: splitting {split} at {i}");
        }

        let pairs = certify_from_symmetry(&op, &h).unwrap();
        assert_eq!(pairs.len(), dim);
        for p in &pairs {
            assert!(p.overlap <= 1e-10, "seed {seed}: overlap {}", p.overlap);
        }
    }
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_two_level_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for draw in 0..1000 {
        let pv = PauliVector::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
        .unwrap();
        let h = pv.reconstruct();

        let sys = eigh(&h).unwrap();
        let splitting = sys.values()[1] - sys.values()[0];
        assert!(
            (pv.gap() - splitting).abs() <= 1e-10,
            "draw {draw}: gap {} vs splitting {}",
            pv.gap(),
            splitting
        );

        // random draws never land on the crossing, so the canonical
        // conjugation must visibly move them
        let traceless = pv.hx.abs().max(pv.hy.abs()).max(pv.hz.abs());
        let residual = canonical_upsilon_check(&h).unwrap().residual;
        if traceless > 1e-10 {
            assert!(residual > 1e-10, "draw {draw}");
        }

        // the crossing with the same trace part is exactly invariant
        let crossing = PauliVector::new(pv.h0, 0.0, 0.0, 0.0).unwrap().reconstruct();
        let zero_residual = canonical_upsilon_check(&crossing).unwrap().residual;
        assert!(zero_residual <= 1e-10, "draw {draw}: residual {zero_residual}");
    }
    println!("criterion 3: PASS");
}

fn random_pair(rng: &mut ChaCha8Rng) -> IrrepPair {
    let mut tuple = || {
        let mut t = [0.0f64; 4];
        loop {
            for v in &mut t {
                *v = rng.gen_range(-1.0..1.0);
            }
            let n = t.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n > 1e-3 {
                for v in &mut t {
                    *v /= n;
                }
                return t;
            }
        }
    };
    let a = tuple();
    let b = tuple();
    IrrepPair::from_coefficients(a, b).unwrap()
}

#[test]
fn criterion_4_lambda_rank_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for draw in 0..10_000 {
        let pair = random_pair(&mut rng);
        let decision = pair.forces_degeneracy().unwrap();
        if decision.lambda.max_abs() > 1e-8 {
            assert_eq!(decision.rank, 3, "draw {draw}");
            assert!(decision.forced, "draw {draw}");
        }
    }

    let xy = IrrepPair::from_coefficients([0.0, 0.0, 0.0, 1.0], [0.0, 0.0, 1.0, 0.0]).unwrap();
    let lambda = xy.lambda_vector();
    assert_eq!((lambda.l1, lambda.l2, lambda.l3), (-1.0, 0.0, 0.0));
    assert!(xy.forces_degeneracy().unwrap().forced);

    let zz = IrrepPair::from_coefficients([0.0, 1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]).unwrap();
    let decision = zz.forces_degeneracy().unwrap();
    assert_eq!(decision.rank, 2);
    assert!(!decision.forced);

    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_coefficient_faithfulness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let paulis = pauli_matrices();
    for draw in 0..1000 {
        let pair = random_pair(&mut rng);
        let system = pair.constraint_system().unwrap();

        // symbolic rows against entries measured from [M, sigma_k]
        for (tuple, offset) in [(pair.a(), 0), (pair.b(), 3)] {
            let m = special_unitary(&tuple);
            let direct = commutator_constraint_rows(&m);
            for r in 0..3 {
                for k in 0..3 {
                    let diff = (system.rows[offset + r][k] - direct[r][k]).abs();
                    assert!(diff <= 1e-12, "draw {draw}: row {r} col {k} off by {diff}");
                }
            }
            // the contested third row reads (a2, 0, -a4): no factor 2
            assert_eq!(system.rows[offset + 2], [tuple[1], 0.0, -tuple[3]]);
        }

        // and against a full commutator with a random Pauli-basis Hamiltonian
        let hvec = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let h = &paulis[0] * C64::new(hvec[0], 0.0)
            + &paulis[1] * C64::new(hvec[1], 0.0)
            + &paulis[2] * C64::new(hvec[2], 0.0);
        for (tuple, offset) in [(pair.a(), 0), (pair.b(), 3)] {
            let m = special_unitary(&tuple);
            let c = &m * &h - &h * &m;
            let measured = [c[(0, 0)].re / 2.0, c[(1, 0)].re / 2.0, -c[(1, 0)].im / 2.0];
            for r in 0..3 {
                let symbolic: f64 = (0..3).map(|k| system.rows[offset + r][k] * hvec[k]).sum();
                assert!(
                    (symbolic - measured[r]).abs() <= 1e-12,
                    "draw {draw}: row {r} symbolic {symbolic} vs measured {}",
                    measured[r]
                );
            }
        }
    }
    println!("criterion 5: PASS");
}

/// Criterion-1 residuals at a refined point: a detected cluster whose
/// operators verify at 1e-10.
fn assert_clean_degeneracy(model: &hasym::ParametricModel, alpha: &[f64]) {
    let analysis = analyze_point(model, alpha, 1e-8).unwrap();
    assert!(analysis.degenerate, "no cluster at {alpha:?}");
    for sub in &analysis.subspaces {
        for op in &sub.operators {
            assert!(op.square_residual <= RESIDUAL_TOL);
            assert!(op.commutator_residual <= RESIDUAL_TOL);
        }
    }
}

#[test]
fn criterion_6_scanner_suite() {
    let started = Instant::now();

    // linear2: closed-form gap 2|alpha| pulls every start to the origin
    let model = linear2().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for start in 0..20u64 {
        let alpha0: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let point = refine(
            &model,
            &alpha0,
            &RefineOptions {
                seed: start,
                ..Default::default()
            },
        )
        .unwrap();
        let norm = point.alpha.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(norm <= 1e-6, "start {start}: |alpha| = {norm}");
        assert!(point.gap_value <= 1e-10, "start {start}");
        assert_clean_degeneracy(&model, &point.alpha);
    }

    // piflux: the four analytic zeros at (+-pi/2, +-pi/2)
    let model = piflux().unwrap();
    let field = grid_scan(&model, &[64, 64]).unwrap();
    let candidates = field.local_minima(0.5);
    assert_eq!(candidates.len(), 4);
    let mut points = Vec::new();
    for c in &candidates {
        points.push(refine(&model, &c.alpha, &RefineOptions::default()).unwrap());
    }
    let points = dedup_points(&model, points, 1e-4);
    assert_eq!(points.len(), 4);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut hit = [false; 4];
    for p in &points {
        for (t, target) in [
            [half_pi, half_pi],
            [half_pi, -half_pi],
            [-half_pi, half_pi],
            [-half_pi, -half_pi],
        ]
        .iter()
        .enumerate()
        {
            if (p.alpha[0] - target[0]).abs() <= 1e-6 && (p.alpha[1] - target[1]).abs() <= 1e-6 {
                hit[t] = true;
            }
        }
        assert_clean_degeneracy(&model, &p.alpha);
    }
    assert_eq!(hit, [true; 4], "not all four zeros were found");

    // honeycomb: a grid whose nodes miss the Dirac points, so refinement
    // has to close the remaining gap; dedup folds the periodic images
    let model = honeycomb().unwrap();
    let field = grid_scan(&model, &[512, 512]).unwrap();
    let candidates = field.local_minima(0.5);
    let mut points = Vec::new();
    for c in &candidates {
        points.push(refine(&model, &c.alpha, &RefineOptions::default()).unwrap());
    }
    let points = dedup_points(&model, points, 1e-4);
    assert_eq!(points.len(), 2, "expected exactly two inequivalent points");
    let targets = [[1.0 / 3.0, 2.0 / 3.0], [2.0 / 3.0, 1.0 / 3.0]];
    for target in &targets {
        assert!(
            points.iter().any(|p| (p.alpha[0] - target[0]).abs() <= 1e-6
                && (p.alpha[1] - target[1]).abs() <= 1e-6),
            "missing Dirac point near {target:?}"
        );
    }
    for p in &points {
        assert!(p.gap_value <= 1e-8, "gap {}", p.gap_value);
        assert_clean_degeneracy(&model, &p.alpha);
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() <= 60.0,
        "scanner suite took {elapsed:?}, budget is 60 s"
    );
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_codimension_floor() {
    let model = linear2().unwrap().with_frozen_axis(2, 0.1).unwrap();
    match refine(&model, &[0.5, -0.3], &RefineOptions::default()) {
        Err(Error::RefineFailed { best_gap, .. }) => {
            assert!(
                (best_gap - 0.2).abs() <= 1e-6,
                "floor came out {best_gap}, expected 0.2"
            );
        }
        other => panic!("expected refinement failure, got {other:?}"),
    }
    println!("criterion 7: PASS");
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_hasym"))
        .args(args)
        .output()
        .expect("binary runs");
    (output.status.code().expect("exit code"), output.stdout)
}

fn data(file: &str) -> String {
    format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), file)
}

#[test]
fn criterion_8_cli_golden_runs() {
    let analyze = ["analyze", &data("diag_1_1_2.json")];
    let irrep = ["irrep", &data("irrep_sigma_xy.json")];
    let scan = ["scan", "piflux", "--resolution", "64", "--refine"];

    let (code, first) = run_cli(&analyze);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let m = &report["clusters"][0]["operators"][0]["unitary_part"];
    assert_eq!(m["dim"], 3);
    let expected = serde_json::json!([
        [0.0, 0.0], [-1.0, 0.0], [0.0, 0.0],
        [1.0, 0.0], [0.0, 0.0], [0.0, 0.0],
        [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]
    ]);
    assert_eq!(m["entries"], expected, "documented operator for diag(1,1,2)");
    let (code, second) = run_cli(&analyze);
    assert_eq!(code, 0);
    assert_eq!(first, second, "analyze report not byte-stable");

    let (code, first) = run_cli(&irrep);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["forced"], true);
    assert_eq!(report["lambda"]["l1"], -1.0);
    let (code, second) = run_cli(&irrep);
    assert_eq!(code, 0);
    assert_eq!(first, second, "irrep report not byte-stable");

    let (code, first) = run_cli(&scan);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["points"].as_array().unwrap().len(), 4);
    let (code, second) = run_cli(&scan);
    assert_eq!(code, 0);
    assert_eq!(first, second, "scan report not byte-stable");

    // the documented non-zero exit codes on their golden inputs
    let (code, _) = run_cli(&["analyze", &data("diag_1_2_3.json")]);
    assert_eq!(code, 2, "no degeneracy exits 2");
    let (code, _) = run_cli(&["irrep", &data("irrep_sigma_zz.json")]);
    assert_eq!(code, 3, "not forced exits 3");
    let (code, _) = run_cli(&[
        "certify",
        &data("h_diag_1_2.json"),
        "--operator",
        &data("op_symplectic.json"),
    ]);
    assert_eq!(code, 4, "precondition failure exits 4");

    println!("criterion 8: PASS");
}
