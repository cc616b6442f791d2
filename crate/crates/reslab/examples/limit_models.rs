//! Point-interaction limit models of both shrinking families.
//!
//! The potential family converges to phase e^{i mu} with matrix
//! [[theta, 0], [gamma, 1/theta]] at resonant couplings and decouples into
//! Dirichlet half-lines otherwise. The rank-two family's limit matrix is
//! built from the quadratures (a0, a1, a2) and the tail kappa.

use num_complex::Complex64;
use reslab::halfbound::{limit_model_potential, Lambda, LimitModel};
use reslab::profile::Profile;
use reslab::rank_two::limit_model_rank_two;
use std::f64::consts::PI;

fn print_pi(label: &str, pi: &reslab::point_interaction::PointInteraction) {
    println!(
        "{label}\n  phase = {:+.8}\n  [[{:+.8}, {:+.8}],\n   [{:+.8}, {:+.8}]]   det = {:.12}",
        pi.phase, pi.c11, pi.c12, pi.c21, pi.c22, pi.det()
    );
}

fn main() {
    let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let a = Profile::constant(PI / 4.0, -1.0, 1.0).unwrap(); // flux pi/2

    for (alpha, label) in [
        (-PI * PI, "potential family, resonant alpha = -pi^2, lambda = 1:"),
        (-PI * PI / 4.0, "potential family, resonant alpha = -pi^2/4, lambda = 0:"),
    ] {
        let lambda = if alpha == -PI * PI { Lambda::Finite(1.0) } else { Lambda::Zero };
        match limit_model_potential(&v, &u, &a, alpha, lambda).unwrap() {
            LimitModel::PointInteraction(pi) => print_pi(label, &pi),
            LimitModel::DirichletDecoupled => println!("{label} Dirichlet decoupling"),
        }
    }
    match limit_model_potential(&v, &u, &a, -1.0, Lambda::Finite(1.0)).unwrap() {
        LimitModel::PointInteraction(_) => unreachable!("alpha = -1 is not resonant"),
        LimitModel::DirichletDecoupled => {
            println!("potential family, alpha = -1: Dirichlet decoupling (no transmission)")
        }
    }

    // rank-two family with the bundled orthonormalized pair
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
    let pi = limit_model_rank_two(&f1, &f2, &u, &Profile::zero(), Complex64::from(1.0)).unwrap();
    print_pi("\nrank-two family, beta = 1 on the unit circle:", &pi);
    let canonical = pi.canonicalized();
    print_pi("same interaction with the phase reduced into (-pi/2, pi/2]:", &canonical);
}
