//! Scattering of the finite-width families, approaching their limits.
//!
//! Both solvers work on the gauge-reduced non-magnetic problem: the
//! potential family through one transfer matrix, the rank-two family
//! through outgoing source responses closed by a 2x2 system.

use num_complex::Complex64;
use reslab::eps_family::{
    scatter_potential_family, scatter_rank_two_family, PotentialFamilySpec, RankTwoFamilySpec,
};
use reslab::halfbound::{limit_model_potential, Lambda};
use reslab::point_interaction::scatter_pi;
use reslab::profile::Profile;
use std::f64::consts::PI;

fn main() {
    let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let k = 1.0;

    println!("potential family at the resonant coupling alpha = -pi^2 (lambda = 1):");
    println!("{:>8} {:>12} {:>12} {:>14}", "eps", "|r|", "|t|", "unitarity");
    for eps in [0.4, 0.2, 0.1, 0.05] {
        let spec = PotentialFamilySpec::new(
            Profile::zero(),
            v.clone(),
            u.clone(),
            Profile::zero(),
            -PI * PI,
            eps,
            eps,
        )
        .unwrap();
        let s = scatter_potential_family(&spec, k).unwrap();
        println!(
            "{eps:>8} {:>12.8} {:>12.8} {:>14.2e}",
            s.r_left.norm(),
            s.t_left.norm(),
            s.unitarity_defect()
        );
    }
    let model = limit_model_potential(&v, &u, &Profile::zero(), -PI * PI, Lambda::Finite(1.0))
        .unwrap();
    let target = scatter_pi(model.as_point_interaction().unwrap(), k).unwrap();
    println!(
        "{:>8} {:>12.8} {:>12.8}   (limit model)",
        "0",
        target.r_left.norm(),
        target.t_left.norm()
    );

    // rank-two family on the double-resonance circle
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
    println!("\nrank-two family at beta = 1 on the circle:");
    println!("{:>8} {:>12} {:>12} {:>14}", "eps", "|r|", "|t|", "unitarity");
    for eps in [0.4, 0.2, 0.1, 0.05] {
        let spec = RankTwoFamilySpec::new(
            Profile::zero(),
            f1.clone(),
            f2.clone(),
            u.clone(),
            Profile::zero(),
            Complex64::from(1.0),
            eps,
        )
        .unwrap();
        let s = scatter_rank_two_family(&spec, k).unwrap();
        println!(
            "{eps:>8} {:>12.8} {:>12.8} {:>14.2e}",
            s.r_left.norm(),
            s.t_left.norm(),
            s.unitarity_defect()
        );
    }
}
