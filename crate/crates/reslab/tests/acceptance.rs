//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Expected values come from closed forms (constant wells, rectangular
//! barriers, orthonormalized step pairs) that are worked out independently
//! inside this file.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use reslab::convergence::{converge_potential_family, converge_rank_two_family, discrimination_gap, Schedule};
use reslab::eps_family::{scatter_potential_family, PotentialFamilySpec};
use reslab::halfbound::{gamma_map, half_bound_state, Lambda};
use reslab::profile::{gauge_phase, Profile};
use reslab::rank_two::{
    coupling_system_matrix, half_bound_omega, hbs_equation_residual, interaction_coefficients,
    limit_matrix_rank_two, resonance_circle, smallest_singular_value, InteractionCoefficients,
};
use std::f64::consts::PI;

fn square_well() -> Profile {
    Profile::constant(1.0, -1.0, 1.0).unwrap()
}

fn square_bump() -> Profile {
    Profile::constant(1.0, -1.0, 1.0).unwrap()
}

// step pair with orthogonal first antiderivatives (norms sqrt(2/3), sqrt(1/6))
fn raw_pair() -> (Profile, Profile) {
    let f1 = Profile::piecewise_real(vec![(-1.0, 0.0, vec![1.0]), (0.0, 1.0, vec![-1.0])])
        .unwrap();
    let f2 = Profile::piecewise_real(vec![
        (-1.0, -0.5, vec![1.0]),
        (-0.5, 0.5, vec![-1.0]),
        (0.5, 1.0, vec![1.0]),
    ])
    .unwrap();
    (f1, f2)
}

// the same pair scaled so the antiderivatives are orthonormal
fn orthonormal_pair() -> (Profile, Profile) {
    let (f1, f2) = raw_pair();
    (
        f1.scaled(Complex64::from((1.5f64).sqrt())),
        f2.scaled(Complex64::from(6.0f64.sqrt())),
    )
}

#[test]
fn criterion_1_resonance_finder() {
    let started = std::time::Instant::now();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_reslab"))
        .args([
            "resonances",
            "--spec",
            concat!(env!("CARGO_MANIFEST_DIR"), "/assets/square_well.json"),
            "--range=-12:1",
        ])
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let records: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json output");
    let roots: Vec<f64> = records
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["alpha"].as_f64().unwrap())
        .collect();
    let expected = [-PI * PI, -PI * PI / 4.0, 0.0];
    assert_eq!(roots.len(), 3, "roots {roots:?}");
    for (r, e) in roots.iter().zip(expected.iter()) {
        assert!((r - e).abs() <= 1e-8, "root {r} vs {e}");
    }
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("acceptance 1 (resonance finder, square well): PASS ({elapsed:?})");
}

#[test]
fn criterion_2_half_bound_states() {
    let v = square_well();
    let alphas = [0.0, -PI * PI / 4.0, -PI * PI];
    for (n, &alpha) in alphas.iter().enumerate() {
        let hbs = half_bound_state(&v, alpha).unwrap();
        let expected = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert!(
            (hbs.theta - expected).abs() <= 1e-8,
            "theta({alpha}) = {} vs {expected}",
            hbs.theta
        );
    }
    // homogeneity under v -> 3v
    let u = square_bump();
    let hbs = half_bound_state(&v, -PI * PI).unwrap();
    let scaled = hbs.rescaled(3.0);
    assert!((hbs.theta - scaled.theta).abs() <= 1e-12);
    for lambda in [Lambda::Zero, Lambda::Finite(1.0), Lambda::Infinity] {
        let g0 = gamma_map(&hbs, &u, lambda);
        let g1 = gamma_map(&scaled, &u, lambda);
        assert!(
            (g0 - g1).abs() <= 1e-12 * g0.abs().max(1.0),
            "gamma changed under rescaling at {lambda:?}: {g0} vs {g1}"
        );
    }
    println!("acceptance 2 (theta signs and scale invariance): PASS");
}

#[test]
fn criterion_3_gamma_branch_consistency() {
    let v = square_well();
    let u = square_bump();
    let hbs = half_bound_state(&v, -PI * PI).unwrap();
    let g0 = gamma_map(&hbs, &u, Lambda::Zero);
    let g_small = gamma_map(&hbs, &u, Lambda::Finite(1e-3));
    assert!(
        (g_small - g0).abs() <= 1e-3 * g0.abs(),
        "lambda -> 0: {g_small} vs {g0}"
    );
    let ginf = gamma_map(&hbs, &u, Lambda::Infinity);
    let g_large = gamma_map(&hbs, &u, Lambda::Finite(1e3));
    assert!(
        (g_large - ginf).abs() <= 1e-3 * ginf.abs(),
        "lambda -> inf: {g_large} vs {ginf}"
    );
    println!("acceptance 3 (gamma branch consistency): PASS");
}

#[test]
fn criterion_4_double_resonance_circle() {
    let (g1, g2) = orthonormal_pair();
    let circle = resonance_circle(&g1, &g2).unwrap();
    assert!(circle.beta0.norm() <= 1e-10, "beta0 = {}", circle.beta0);
    assert!((circle.rho - 1.0).abs() <= 1e-10, "rho = {}", circle.rho);
    // orthogonal (unnormalized) pair: rho = 1 / (m1 m2)
    let (f1, f2) = raw_pair();
    let c2 = resonance_circle(&f1, &f2).unwrap();
    assert!(c2.beta0.norm() <= 1e-10);
    assert!(
        (c2.rho - 1.0 / (c2.m1 * c2.m2)).abs() <= 1e-10,
        "rho = {} vs {}",
        c2.rho,
        1.0 / (c2.m1 * c2.m2)
    );
    // 16 sampled couplings on the circle make the solvability system singular
    for j in 0..16 {
        let beta = circle.point(2.0 * PI * j as f64 / 16.0);
        let sigma = smallest_singular_value(&coupling_system_matrix(&circle, beta));
        assert!(sigma <= 1e-8, "sample {j}: sigma = {sigma}");
    }
    println!("acceptance 4 (double-resonance circle): PASS");
}

#[test]
fn criterion_5_half_bound_residual() {
    let (g1, g2) = orthonormal_pair();
    let circle = resonance_circle(&g1, &g2).unwrap();
    for phi in [0.0, 1.1, 2.7, 4.9] {
        let beta = circle.point(phi);
        let rd = half_bound_omega(&g1, &g2, beta).unwrap();
        let window = rd.omega.as_profile_on(-1.0, 1.0);
        let (res, norm) = hbs_equation_residual(&g1, &g2, beta, &window);
        assert!(res <= 1e-8 * norm, "phi {phi}: residual {res} vs norm {norm}");
        // the constant function is the other half-bound state
        let one = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let (res_c, norm_c) = hbs_equation_residual(&g1, &g2, beta, &one);
        assert!(res_c <= 1e-8 * norm_c, "constant state residual {res_c}");
    }
    println!("acceptance 5 (half-bound equation residual): PASS");
}

#[test]
fn criterion_6_rank_two_limit_matrix() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 100 {
        let coeffs = InteractionCoefficients {
            a0: rng.gen_range(-3.0..3.0),
            a1: Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            a2: rng.gen_range(-3.0..3.0),
        };
        let kappa = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if (coeffs.a2 - (kappa.conj() * coeffs.a1)).norm() < 1e-3 {
            continue;
        }
        let pi = limit_matrix_rank_two(&coeffs, kappa, rng.gen_range(-3.0..3.0)).unwrap();
        // entries are real by construction (f64 fields); determinant is 1
        assert!((pi.det() - 1.0).abs() <= 1e-10, "det = {}", pi.det());
        done += 1;
    }
    // kappa = 0 collapses the first row: unit diagonal up to a common sign
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let coeffs = InteractionCoefficients {
            a0: rng.gen_range(-3.0..3.0),
            a1: Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            a2: rng.gen_range(-3.0..3.0),
        };
        if coeffs.a2.abs() < 1e-3 {
            continue;
        }
        let pi = limit_matrix_rank_two(&coeffs, Complex64::from(0.0), 0.0).unwrap();
        assert!(pi.c12.abs() <= 1e-12);
        assert!((pi.c11 - pi.c22).abs() <= 1e-12);
        assert!((pi.c11.abs() - 1.0).abs() <= 1e-12);
    }
    println!("acceptance 6 (rank-two limit matrix, 100 randomized): PASS");
}

#[test]
fn criterion_7_scattering_engine() {
    // rectangular barrier: alpha = 0, U = 2 on (0,1) at eps = nu = 1
    let height = 2.0;
    let u = Profile::constant(height, 0.0, 1.0).unwrap();
    let spec = PotentialFamilySpec::new(
        Profile::zero(),
        Profile::zero(),
        u.clone(),
        Profile::zero(),
        0.0,
        1.0,
        1.0,
    )
    .unwrap();
    for &k in &[0.6, 1.0, 1.4, 2.5] {
        let s = scatter_potential_family(&spec, k).unwrap();
        let (r, t) = barrier_closed_form(height, 1.0, k);
        assert!((s.r_left - r).norm() <= 1e-8, "k = {k}: r {} vs {r}", s.r_left);
        assert!((s.t_left - t).norm() <= 1e-8, "k = {k}: t {} vs {t}", s.t_left);
        assert!(s.unitarity_defect() <= 1e-8, "k = {k}");
    }
    // gauge: flux pi/2 leaves moduli alone and advances arg t by pi/2
    let a = Profile::constant(PI / 4.0, -1.0, 1.0).unwrap();
    assert!((gauge_phase(&a).unwrap().mu() - PI / 2.0).abs() < 1e-12);
    let with_field = PotentialFamilySpec::new(
        Profile::zero(),
        Profile::zero(),
        u,
        a,
        0.0,
        1.0,
        1.0,
    )
    .unwrap();
    for &k in &[0.6, 1.0, 2.5] {
        let s0 = scatter_potential_family(&spec, k).unwrap();
        let sa = scatter_potential_family(&with_field, k).unwrap();
        assert!((sa.r_left.norm() - s0.r_left.norm()).abs() <= 1e-10);
        assert!((sa.t_left.norm() - s0.t_left.norm()).abs() <= 1e-10);
        let shift = (sa.t_left / s0.t_left).arg();
        assert!((shift - PI / 2.0).abs() <= 1e-8, "k = {k}: shift {shift}");
    }
    println!("acceptance 7 (scattering engine vs barrier closed form, gauge phase): PASS");
}

// plane-wave matching across a barrier of height v on (0, l)
fn barrier_closed_form(v: f64, l: f64, k: f64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let q = Complex64::from(k * k - v).sqrt();
    let kk = Complex64::from(k);
    let e_iql = (i * q * l).exp();
    let e_miql = (-i * q * l).exp();
    let denom = (q + kk) * (q + kk) * e_miql - (q - kk) * (q - kk) * e_iql;
    let t = 4.0 * kk * q * (-i * kk * l).exp() / denom;
    let a_coef = t * (i * kk * l).exp() * (q + kk) * e_miql / (2.0 * q);
    let b_coef = t * (i * kk * l).exp() * (q - kk) * e_iql / (2.0 * q);
    (a_coef + b_coef - 1.0, t)
}

#[test]
fn criterion_8_potential_family_convergence() {
    let started = std::time::Instant::now();
    let v = square_well();
    let u = square_bump();
    let a = Profile::zero();
    let schedule =
        Schedule::new(Lambda::Finite(1.0), vec![0.2, 0.1, 0.05, 0.025]).unwrap();
    let (_, report) = converge_potential_family(&v, &u, &a, -PI * PI, &schedule, 1.0).unwrap();
    assert!(report.failures.is_empty());
    let errs: Vec<f64> = report.rows.iter().map(|r| r.err).collect();
    assert!(
        errs.windows(2).all(|w| w[1] < w[0]),
        "errors not strictly decreasing: {errs:?}"
    );
    assert!(
        errs[3] <= errs[0] / 5.0,
        "err(0.025) = {} vs err(0.2)/5 = {}",
        errs[3],
        errs[0] / 5.0
    );
    // non-resonant coupling decouples: transmission dies
    let (_, report) = converge_potential_family(&v, &u, &a, -1.0, &schedule, 1.0).unwrap();
    let ts: Vec<f64> = report.rows.iter().map(|r| r.abs_t).collect();
    assert!(ts.windows(2).all(|w| w[1] < w[0]), "|t| not decreasing: {ts:?}");
    assert!(ts[3] <= 0.2, "|t(0.025)| = {}", ts[3]);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("acceptance 8 (potential-family convergence + Dirichlet decoupling): PASS ({elapsed:?})");
}

#[test]
fn criterion_9_rank_two_convergence() {
    let (g1, g2) = orthonormal_pair();
    let u = square_bump();
    let (pi, report) = converge_rank_two_family(
        &g1,
        &g2,
        &u,
        &Profile::zero(),
        Complex64::from(1.0),
        &[0.2, 0.1, 0.05],
        1.0,
    )
    .unwrap();
    // this pair's limit matrix is exactly [[35, 24], [16, 11]] with phase -pi:
    // kappa = sqrt(6)/2, a0 = 2, a1 = sqrt(6)/4, a2 = 11/16
    assert!((pi.c11 - 35.0).abs() <= 1e-9 && (pi.c12 - 24.0).abs() <= 1e-9);
    assert!((pi.c21 - 16.0).abs() <= 1e-9 && (pi.c22 - 11.0).abs() <= 1e-9);
    assert!((pi.phase + PI).abs() <= 1e-12);
    let rd = half_bound_omega(&g1, &g2, Complex64::from(1.0)).unwrap();
    assert!((rd.kappa - Complex64::from(6.0f64.sqrt() / 2.0)).norm() <= 1e-12);
    let coeffs = interaction_coefficients(&u, &rd).unwrap();
    assert!((coeffs.a0 - 2.0).abs() <= 1e-12);
    assert!((coeffs.a1 - Complex64::from(6.0f64.sqrt() / 4.0)).norm() <= 1e-12);
    assert!((coeffs.a2 - 11.0 / 16.0).abs() <= 1e-12);

    assert!(report.failures.is_empty());
    let errs: Vec<f64> = report.rows.iter().map(|r| r.err).collect();
    assert!(
        errs.windows(2).all(|w| w[1] <= w[0]),
        "errors not non-increasing: {errs:?}"
    );
    assert!(
        errs[2] <= errs[0] / 3.0,
        "err(0.05) = {} vs err(0.2)/3 = {}",
        errs[2],
        errs[0] / 3.0
    );
    // the harness distinguishes a wrong limit model
    let schedule = Schedule::new(Lambda::Finite(1.0), vec![0.2, 0.1, 0.05]).unwrap();
    let gap = discrimination_gap(
        &square_well(),
        &square_bump(),
        &Profile::zero(),
        -PI * PI,
        &schedule,
        1.0,
    )
    .unwrap();
    assert!(gap >= 0.1, "discrimination gap = {gap}");
    println!("acceptance 9 (rank-two convergence + discrimination): PASS");
}

#[test]
fn criterion_10_deterministic_csv() {
    let run = |path: &std::path::Path, threads: Option<&str>| {
        let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_reslab"));
        cmd.args([
            "converge",
            "--family",
            "pot",
            "--spec",
            concat!(env!("CARGO_MANIFEST_DIR"), "/assets/pot_family.json"),
            "--lambda",
            "1",
            "--eps-list",
            "0.2,0.1,0.05",
            "--k",
            "1",
            "--out",
        ])
        .arg(path);
        if let Some(n) = threads {
            cmd.env("RESLAB_THREADS", n);
        }
        let out = cmd.output().expect("binary runs");
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        std::fs::read(path).unwrap()
    };
    let dir = std::env::temp_dir();
    let a = run(&dir.join("reslab_determinism_a.csv"), None);
    let b = run(&dir.join("reslab_determinism_b.csv"), None);
    let c = run(&dir.join("reslab_determinism_c.csv"), Some("1"));
    assert_eq!(a, b, "repeated runs differ");
    assert_eq!(a, c, "thread cap changed the bytes");
    assert!(!a.is_empty());
    println!("acceptance 10 (bit-identical converge CSV): PASS");
}
