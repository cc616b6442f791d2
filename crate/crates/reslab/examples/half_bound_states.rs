//! Half-bound states and the interaction strength gamma(alpha, lambda).
//!
//! gamma weighs a delta-scale potential U against the squared half-bound
//! state; its three branches (lambda = 0, finite, infinity) meet
//! continuously at the endpoints.

use reslab::halfbound::{gamma_map, half_bound_state, Lambda};
use reslab::profile::Profile;
use std::f64::consts::PI;

fn main() {
    let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let u = Profile::constant(1.0, -1.0, 1.0).unwrap();

    for alpha in [0.0, -PI * PI / 4.0, -PI * PI] {
        let hbs = half_bound_state(&v, alpha).unwrap();
        println!(
            "alpha = {alpha:>13.8}: v(-1) = {}, v(1) = {:+.6}, theta = {:+.6}",
            hbs.v_minus, hbs.v_plus, hbs.theta
        );
        for lambda in [
            Lambda::Zero,
            Lambda::Finite(1e-3),
            Lambda::Finite(1.0),
            Lambda::Finite(1e3),
            Lambda::Infinity,
        ] {
            println!("    gamma(alpha, {lambda:>6}) = {:+.8}", gamma_map(&hbs, &u, lambda));
        }
    }

    // the maps are scale-free in the state
    let hbs = half_bound_state(&v, -PI * PI).unwrap();
    let scaled = hbs.rescaled(3.0);
    println!(
        "\nrescaling v -> 3v: theta {:+.12} -> {:+.12}, gamma(.,1) {:+.12} -> {:+.12}",
        hbs.theta,
        scaled.theta,
        gamma_map(&hbs, &u, Lambda::Finite(1.0)),
        gamma_map(&scaled, &u, Lambda::Finite(1.0)),
    );
}
