//! Scan a coupling range for zero-energy resonances of a square well.
//!
//! For V = 1 on (-1, 1) the resonant couplings are alpha = -(n pi / 2)^2;
//! the scan finds them by bisection on the Neumann miss function.

use reslab::halfbound::{find_resonances, half_bound_state};
use reslab::profile::Profile;

fn main() {
    let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
    let scan = find_resonances(&v, (-30.0, 1.0), 600, 1e-10).unwrap();
    for w in &scan.warnings {
        eprintln!("warning: {w}");
    }
    println!("resonant couplings of the unit square well on (-30, 1):");
    println!("{:>16} {:>16} {:>12}", "alpha", "-(n pi/2)^2", "theta");
    for (n, &alpha) in scan.roots.iter().rev().enumerate() {
        let exact = -(n as f64 * std::f64::consts::FRAC_PI_2).powi(2);
        let hbs = half_bound_state(&v, alpha).unwrap();
        println!("{alpha:>16.10} {exact:>16.10} {:>12.8}", hbs.theta);
    }
}
