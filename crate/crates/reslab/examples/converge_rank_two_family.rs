//! Convergence of the rank-two family to its point-interaction limit.
//!
//! The bundled zero-mean pair has orthonormal first antiderivatives, so the
//! double-resonance circle is the unit circle and beta = 1 sits on it. The
//! resulting limit matrix for U = 1 on (-1, 1) is [[35, 24], [16, 11]] with
//! phase -pi.

use num_complex::Complex64;
use reslab::convergence::converge_rank_two_family;
use reslab::profile::Profile;

fn main() {
    let f1 = Profile::piecewise_real(vec![(-1.0, 0.0, vec![1.0]), (0.0, 1.0, vec![-1.0])])
        .unwrap()
        .scaled(Complex64::from((1.5f64).sqrt()));
    let f2 = Profile::piecewise_real(vec![
        (-1.0, -0.5, vec![1.0]),
        (-0.5, 0.5, vec![-1.0]),
        (0.5, 1.0, vec![1.0]),
    ])
    .unwrap()
    .scaled(Complex64::from(6.0f64.sqrt()));
    let u = Profile::constant(1.0, -1.0, 1.0).unwrap();

    let (pi, report) = converge_rank_two_family(
        &f1,
        &f2,
        &u,
        &Profile::zero(),
        Complex64::from(1.0),
        &[0.4, 0.2, 0.1, 0.05],
        1.0,
    )
    .unwrap();
    println!(
        "# limit: phase = {:+.6}, matrix [[{:.2}, {:.2}], [{:.2}, {:.2}]], det = {:.10}",
        pi.phase, pi.c11, pi.c12, pi.c21, pi.c22, pi.det()
    );
    print!("{}", report.to_csv());
    println!(
        "# monotone tail: {}, final err: {:.3e}",
        report.monotone_tail, report.final_err
    );
}
