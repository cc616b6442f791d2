//! The magnetic potential's only scattering trace is the flux phase.
//!
//! Switching on a localized vector potential with total flux mu leaves all
//! scattering probabilities untouched and advances the transmitted phase by
//! exactly mu (left incidence; -mu from the right).

use reslab::eps_family::{scatter_potential_family, PotentialFamilySpec};
use reslab::profile::{gauge_phase, gauge_twist, Profile};
use std::f64::consts::PI;

fn main() {
    let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let a = Profile::constant(PI / 4.0, -1.0, 1.0).unwrap();
    let gauge = gauge_phase(&a).unwrap();
    println!("total flux mu = {:.10} (pi/2 = {:.10})", gauge.mu(), PI / 2.0);

    let make = |a: Profile| {
        PotentialFamilySpec::new(
            Profile::zero(),
            v.clone(),
            u.clone(),
            a,
            -PI * PI,
            0.1,
            0.1,
        )
        .unwrap()
    };
    let s0 = scatter_potential_family(&make(Profile::zero()), 1.0).unwrap();
    let sa = scatter_potential_family(&make(a.clone()), 1.0).unwrap();
    println!("\nwithout field: r = {:+.8}{:+.8}i, t = {:+.8}{:+.8}i",
        s0.r_left.re, s0.r_left.im, s0.t_left.re, s0.t_left.im);
    println!("with field:    r = {:+.8}{:+.8}i, t = {:+.8}{:+.8}i",
        sa.r_left.re, sa.r_left.im, sa.t_left.re, sa.t_left.im);
    println!("|t| difference      = {:.2e}", (sa.t_left.norm() - s0.t_left.norm()).abs());
    println!("|r| difference      = {:.2e}", (sa.r_left.norm() - s0.r_left.norm()).abs());
    let shift = (sa.t_left / s0.t_left).arg();
    println!("transmitted phase shift = {:+.10} (mu = {:+.10})", shift, gauge.mu());

    // the twist itself is unimodular: |e^{-ia} f| = |f| pointwise
    let f = Profile::constant(1.0, 0.0, 1.0).unwrap();
    let g = gauge_twist(&f, &gauge);
    let x = 0.3;
    println!(
        "\ntwisted profile at x = {x}: |g| = {:.12}, |f| = {:.12}",
        g.eval(x).norm(),
        f.eval(x).norm()
    );
}
