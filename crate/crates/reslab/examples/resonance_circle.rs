//! The circle of double zero-energy resonances of a rank-two perturbation.
//!
//! A zero-mean pair (g1, g2) admits two independent bounded zero-energy
//! states exactly when the coupling beta lies on a circle determined by the
//! first antiderivatives. On the circle the 2x2 solvability system becomes
//! singular and the non-constant state omega has a constant tail kappa.

use num_complex::Complex64;
use reslab::profile::Profile;
use reslab::rank_two::{
    coupling_system_matrix, half_bound_omega, hbs_equation_residual, resonance_circle,
    smallest_singular_value,
};

fn main() {
    // steps scaled so the first antiderivatives are orthonormal
    let g1 = Profile::piecewise_real(vec![(-1.0, 0.0, vec![1.0]), (0.0, 1.0, vec![-1.0])])
        .unwrap()
        .scaled(Complex64::from((1.5f64).sqrt()));
    let g2 = Profile::piecewise_real(vec![
        (-1.0, -0.5, vec![1.0]),
        (-0.5, 0.5, vec![-1.0]),
        (0.5, 1.0, vec![1.0]),
    ])
    .unwrap()
    .scaled(Complex64::from(6.0f64.sqrt()));

    let circle = resonance_circle(&g1, &g2).unwrap();
    println!(
        "circle: center = {:+.6} {:+.6}i, radius = {:.6} (m1 = {:.6}, m2 = {:.6}, tau = {:+.2e})",
        circle.beta0.re, circle.beta0.im, circle.rho, circle.m1, circle.m2, circle.tau.norm()
    );

    println!("\nsmallest singular value of the solvability system:");
    for j in 0..8 {
        let phi = std::f64::consts::TAU * j as f64 / 8.0;
        let on = circle.point(phi);
        let off = circle.beta0 + (on - circle.beta0) * 1.15;
        let s_on = smallest_singular_value(&coupling_system_matrix(&circle, on));
        let s_off = smallest_singular_value(&coupling_system_matrix(&circle, off));
        println!("  phi = {phi:>8.4}: on-circle {s_on:.2e}   15% off {s_off:.2e}");
    }

    let beta = circle.point(0.0);
    let rd = half_bound_omega(&g1, &g2, beta).unwrap();
    println!("\nbeta = {:+.4} {:+.4}i:", beta.re, beta.im);
    println!("  kappa = {:+.10} {:+.10}i", rd.kappa.re, rd.kappa.im);
    for x in [-2.0, -0.5, 0.0, 0.5, 2.0] {
        let w = rd.omega.eval(x);
        println!("  omega({x:>4.1}) = {:+.6} {:+.6}i", w.re, w.im);
    }
    let window = rd.omega.as_profile_on(-1.0, 1.0);
    let (res, norm) = hbs_equation_residual(&g1, &g2, beta, &window);
    println!("  equation residual = {:.2e} (state norm {norm:.4})", res);
}
