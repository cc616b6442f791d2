//! Exact scattering off point interactions.
//!
//! Amplitudes follow from the interface conditions alone: a delta-type
//! coupling [[1,0],[g,1]] gives t = 2ik/(2ik - g), while a diagonal
//! [[theta,0],[0,1/theta]] scatters k-independently.

use reslab::point_interaction::{scatter_dirichlet, scatter_pi, PointInteraction};

fn main() {
    let delta = PointInteraction::new(0.0, 1.0, 0.0, 2.0, 1.0).unwrap();
    println!("delta interaction, strength 2:");
    println!("{:>6} {:>22} {:>22} {:>10}", "k", "r", "t", "|r|^2+|t|^2");
    for k in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let s = scatter_pi(&delta, k).unwrap();
        println!(
            "{k:>6.2} {:>+10.6}{:+.6}i {:>+10.6}{:+.6}i {:>10.6}",
            s.r_left.re,
            s.r_left.im,
            s.t_left.re,
            s.t_left.im,
            s.r_left.norm_sqr() + s.t_left.norm_sqr()
        );
    }

    let diagonal = PointInteraction::new(0.0, -2.0, 0.0, 0.0, -0.5).unwrap();
    println!("\ndiagonal coupling theta = -2 (k-independent):");
    for k in [0.5, 1.0, 5.0] {
        let s = scatter_pi(&diagonal, k).unwrap();
        println!(
            "  k = {k}: r = {:+.6}, t = {:+.6}",
            s.r_left.re, s.t_left.re
        );
    }

    let s = scatter_dirichlet(1.0).unwrap();
    println!(
        "\nDirichlet wall: r = {:+.1}, t = {:+.1} (total reflection)",
        s.r_left.re, s.t_left.re
    );
}
