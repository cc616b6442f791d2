//! Exact scattering of the shrinking-potential families at finite ε.
//!
//! The magnetic term is removed by the gauge reduction: the family with
//! vector potential `ε⁻¹A(x/ε)` is unitarily equivalent to the same family
//! without it, and the equivalence leaves `|r|, |t|` untouched while
//! shifting the transmitted phase by the total flux `μ`. The solvers here
//! therefore integrate real, non-magnetic problems and apply
//! `t ← e^{±iμ} t` afterwards. A direct integrator for the first-order
//! magnetic system is deliberately out of scope.

use num_complex::Complex64;
use thiserror::Error;

use crate::ode::{self, OdeError, SolutionPath, SolverOptions, TransferMatrix};
use crate::point_interaction::{solve2, ScatteringData};
use crate::profile::{gauge_phase, gauge_twist, GaugeData, Profile, ProfileError};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Smallest ε accepted by the family solvers; the `ε⁻²` and `ε⁻³` scalings
/// make smaller values numerically meaningless here.
pub const MIN_EPS: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("eps must lie in [{MIN_EPS}, ∞), got {eps}")]
    EpsTooSmall { eps: f64 },
    #[error("nu must be positive, got {nu}")]
    BadNu { nu: f64 },
    #[error("wavenumber must be positive")]
    BadWavenumber,
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("integrator failure: {0}; reduce eps^-1 couplings or refine steps")]
    Ode(#[from] OdeError),
    #[error("scattering boundary system is singular at k = {k}")]
    SingularBoundary { k: f64 },
    #[error("rank-two self-consistency system is singular at k = {k} (resonant coupling)")]
    SingularConsistency { k: f64 },
}

/// Shrinking family with a δ'-scaled potential `α ε⁻² V(x/ε)`, a δ-scaled
/// potential `ν⁻¹ U(x/ν)` and a magnetic potential `ε⁻¹ A(x/ε)` on top of a
/// compactly supported background `V0`.
#[derive(Debug, Clone)]
pub struct PotentialFamilySpec {
    pub v0: Profile,
    pub v: Profile,
    pub u: Profile,
    pub a: Profile,
    pub alpha: f64,
    pub eps: f64,
    pub nu: f64,
}

impl PotentialFamilySpec {
    pub fn new(
        v0: Profile,
        v: Profile,
        u: Profile,
        a: Profile,
        alpha: f64,
        eps: f64,
        nu: f64,
    ) -> Result<Self, FamilyError> {
        if eps < MIN_EPS || !eps.is_finite() {
            return Err(FamilyError::EpsTooSmall { eps });
        }
        if nu <= 0.0 || !nu.is_finite() {
            return Err(FamilyError::BadNu { nu });
        }
        for p in [&v0, &v, &u, &a] {
            p.require_real(1e-12)?;
        }
        Ok(PotentialFamilySpec {
            v0,
            v,
            u,
            a,
            alpha,
            eps,
            nu,
        })
    }

    pub fn with_rates(&self, eps: f64, nu: f64) -> Result<Self, FamilyError> {
        Self::new(
            self.v0.clone(),
            self.v.clone(),
            self.u.clone(),
            self.a.clone(),
            self.alpha,
            eps,
            nu,
        )
    }

    /// The combined non-magnetic potential at the current rates.
    pub fn scaled_potential(&self) -> Profile {
        let v_term = self
            .v
            .scale_arg(self.eps)
            .scaled(Complex64::from(self.alpha / (self.eps * self.eps)));
        let u_term = self.u.scale_arg(self.nu).scaled(Complex64::from(1.0 / self.nu));
        self.v0.add(&v_term).add(&u_term)
    }
}

/// Shrinking family with a rank-two perturbation `ε⁻³ F_ε` built from the
/// pair `(f₁, f₂)` with complex coupling β, a δ-scaled `ε⁻¹ U(x/ε)` and a
/// magnetic potential `ε⁻¹ A(x/ε)`.
#[derive(Debug, Clone)]
pub struct RankTwoFamilySpec {
    pub v0: Profile,
    pub f1: Profile,
    pub f2: Profile,
    pub u: Profile,
    pub a: Profile,
    pub beta: Complex64,
    pub eps: f64,
}

impl RankTwoFamilySpec {
    pub fn new(
        v0: Profile,
        f1: Profile,
        f2: Profile,
        u: Profile,
        a: Profile,
        beta: Complex64,
        eps: f64,
    ) -> Result<Self, FamilyError> {
        if eps < MIN_EPS || !eps.is_finite() {
            return Err(FamilyError::EpsTooSmall { eps });
        }
        for p in [&v0, &u, &a] {
            p.require_real(1e-12)?;
        }
        Ok(RankTwoFamilySpec {
            v0,
            f1,
            f2,
            u,
            a,
            beta,
            eps,
        })
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self, FamilyError> {
        Self::new(
            self.v0.clone(),
            self.f1.clone(),
            self.f2.clone(),
            self.u.clone(),
            self.a.clone(),
            self.beta,
            eps,
        )
    }
}

/// Solver options tuned for the family solves: the source quadratures ask
/// for denser nodes than plain propagation.
pub fn family_solver_options() -> SolverOptions {
    SolverOptions {
        max_step: 0.0025,
        min_nodes_per_piece: 32,
        wave_frac: 0.01,
        rk_substeps: 2,
    }
}

/// Converts a transfer matrix across `[x_lo, x_hi]` (potential zero outside)
/// into scattering amplitudes for both incidence sides.
pub fn scattering_from_transfer(
    m: &TransferMatrix,
    k: f64,
) -> Result<ScatteringData, FamilyError> {
    if k <= 0.0 || !k.is_finite() {
        return Err(FamilyError::BadWavenumber);
    }
    let (x_lo, x_hi) = m.interval;
    let ik = I * k;
    let e_lo_p = Complex64::from_polar(1.0, k * x_lo); // e^{+ik x_lo}
    let e_lo_m = e_lo_p.conj();
    let e_hi_p = Complex64::from_polar(1.0, k * x_hi);
    let e_hi_m = e_hi_p.conj();
    let (m11, m12, m21, m22) = (m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1]);
    // left incidence: psi = e^{ikx} + r e^{-ikx} (x<lo), t e^{ikx} (x>hi)
    let a = [
        [e_lo_m * (m11 - ik * m12), -e_hi_p],
        [e_lo_m * (m21 - ik * m22), -ik * e_hi_p],
    ];
    let b = [
        -(e_lo_p * (m11 + ik * m12)),
        -(e_lo_p * (m21 + ik * m22)),
    ];
    let (r_left, t_left) = solve2(a, b).ok_or(FamilyError::SingularBoundary { k })?;
    // right incidence: psi = t' e^{-ikx} (x<lo), e^{-ikx} + r' e^{ikx} (x>hi)
    let a = [
        [-e_hi_p, e_lo_m * (m11 - ik * m12)],
        [-ik * e_hi_p, e_lo_m * (m21 - ik * m22)],
    ];
    let b = [e_hi_m, -ik * e_hi_m];
    let (r_right, t_right) = solve2(a, b).ok_or(FamilyError::SingularBoundary { k })?;
    Ok(ScatteringData {
        k,
        r_left,
        t_left,
        r_right,
        t_right,
    })
}

fn apply_gauge(mut s: ScatteringData, mu: f64) -> ScatteringData {
    let phase = Complex64::from_polar(1.0, mu);
    s.t_left *= phase;
    s.t_right *= phase.conj();
    s
}

/// Scattering data of the potential family at wavenumber `k`.
///
/// Builds the scaled non-magnetic potential, solves it exactly through the
/// transfer matrix at `E = k²`, and applies the flux phase to the
/// transmitted amplitudes.
pub fn scatter_potential_family(
    spec: &PotentialFamilySpec,
    k: f64,
) -> Result<ScatteringData, FamilyError> {
    scatter_potential_family_with(spec, k, &family_solver_options())
}

pub fn scatter_potential_family_with(
    spec: &PotentialFamilySpec,
    k: f64,
    opts: &SolverOptions,
) -> Result<ScatteringData, FamilyError> {
    if k <= 0.0 || !k.is_finite() {
        return Err(FamilyError::BadWavenumber);
    }
    let mu = gauge_phase(&spec.a)?.mu();
    let q = spec.scaled_potential();
    let s = if q.is_empty() {
        ScatteringData {
            k,
            r_left: Complex64::new(0.0, 0.0),
            t_left: Complex64::new(1.0, 0.0),
            r_right: Complex64::new(0.0, 0.0),
            t_right: Complex64::new(1.0, 0.0),
        }
    } else {
        let m = ode::transfer_matrix(&q, k * k, q.support(), opts)?;
        scattering_from_transfer(&m, k)?
    };
    Ok(apply_gauge(s, mu))
}

// Integrates samples f(i) against the path nodes, using composite Simpson on
// each run of uniform spacing. Runs start at piece boundaries and every
// piece carries an even interval count, so pairs never straddle a kink.
fn integrate_on_nodes<F: Fn(usize) -> Complex64>(xs: &[f64], f: F) -> Complex64 {
    let n = xs.len();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut start = 0;
    while start + 1 < n {
        let h = xs[start + 1] - xs[start];
        let mut end = start + 1;
        while end + 1 < n && (xs[end + 1] - xs[end] - h).abs() <= 1e-12 * h.max(1e-300) {
            end += 1;
        }
        let count = end - start;
        let mut i = start;
        while i + 2 <= end {
            acc += (f(i) + f(i + 1) * 4.0 + f(i + 2)) * (h / 3.0);
            i += 2;
        }
        if !count.is_multiple_of(2) {
            // single leftover interval (first/last runs of odd length)
            acc += (f(end - 1) + f(end)) * (0.5 * h);
        }
        start = end;
    }
    acc
}

// ⟨g, u⟩ = ∫ conj(g) u over the path, split at the breakpoints of g so the
// integrand stays smooth on every quadrature cell. Boundary nodes take the
// one-sided value of the piece being integrated; sampling a jump node with
// the wrong side costs a first-order quadrature error otherwise.
fn path_inner_product(g: &Profile, xs: &[f64], values: &[Complex64]) -> Complex64 {
    let n = xs.len();
    let (lo, hi) = (xs[0], xs[n - 1]);
    let mut cuts: Vec<f64> = g
        .breakpoints()
        .into_iter()
        .filter(|&b| b > lo && b < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let node_index = |target: f64| -> usize {
        let i = xs.partition_point(|&x| x < target);
        // the cut positions were handed to the propagator, so a node sits
        // exactly on each of them; tolerate last-bit drift anyway
        if i < n && (xs[i] - target).abs() <= 1e-12 * target.abs().max(1.0) {
            i
        } else if i > 0 && (xs[i - 1] - target).abs() <= 1e-12 * target.abs().max(1.0) {
            i - 1
        } else {
            i.min(n - 1)
        }
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let (ia, ib) = (node_index(a), node_index(b));
        if ib <= ia {
            continue;
        }
        acc += integrate_on_nodes(&xs[ia..=ib], |j| {
            g.eval_in_piece(xs[ia + j], mid).conj() * values[ia + j]
        });
    }
    acc
}

struct OutgoingResponse {
    // coefficient of e^{-ikx} on the left and e^{+ikx} on the right
    left_amp: Complex64,
    right_amp: Complex64,
    path: SolutionPath,
}

/// Scattering data of the rank-two family at wavenumber `k`.
///
/// Works on the gauge-reduced operator: `u = u₀ + c₁w₁ + c₂w₂` with the
/// incident-wave solution `u₀` of the plain potential part and outgoing
/// responses `w_j` to the sources `g_j(x/ε)`; the coefficients close a 2×2
/// linear system from the rank-two self-consistency. Amplitudes are read
/// off the free tails and the flux phase is applied at the end.
pub fn scatter_rank_two_family(
    spec: &RankTwoFamilySpec,
    k: f64,
) -> Result<ScatteringData, FamilyError> {
    scatter_rank_two_family_with(spec, k, &family_solver_options())
}

pub fn scatter_rank_two_family_with(
    spec: &RankTwoFamilySpec,
    k: f64,
    opts: &SolverOptions,
) -> Result<ScatteringData, FamilyError> {
    if k <= 0.0 || !k.is_finite() {
        return Err(FamilyError::BadWavenumber);
    }
    let gauge: GaugeData = gauge_phase(&spec.a)?;
    let mu = gauge.mu();
    let eps = spec.eps;
    let energy = k * k;

    let g1 = gauge_twist(&spec.f1, &gauge).scale_arg(eps);
    let g2 = gauge_twist(&spec.f2, &gauge).scale_arg(eps);
    let q = spec
        .v0
        .add(&spec.u.scale_arg(eps).scaled(Complex64::from(1.0 / eps)));

    // joint window with free exterior
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in [&q, &g1, &g2] {
        if !p.is_empty() {
            let (a, b) = p.support();
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if !lo.is_finite() {
        // everything vanishes: free line
        return Ok(apply_gauge(
            ScatteringData {
                k,
                r_left: Complex64::new(0.0, 0.0),
                t_left: Complex64::new(1.0, 0.0),
                r_right: Complex64::new(0.0, 0.0),
                t_right: Complex64::new(1.0, 0.0),
            },
            mu,
        ));
    }
    let window = (lo, hi);

    // shared node cuts so all four dense solves live on identical grids
    let mut cuts = g1.breakpoints();
    cuts.extend(g2.breakpoints());

    let m = ode::transfer_matrix(&q, energy, window, opts)?;
    let bare = scattering_from_transfer(&m, k)?;

    // incident-wave solution of the potential part, left incidence
    let e_lo_p = Complex64::from_polar(1.0, k * lo);
    let e_lo_m = e_lo_p.conj();
    let ik = I * k;
    let u0_init = (
        e_lo_p + bare.r_left * e_lo_m,
        ik * (e_lo_p - bare.r_left * e_lo_m),
    );
    let u0 = ode::propagate_with_cuts(&q, energy, u0_init, window, opts, &cuts)?;
    // homogeneous solution that is purely e^{-ikx} on the left
    let hl = ode::propagate_with_cuts(&q, energy, (e_lo_m, -ik * e_lo_m), window, opts, &cuts)?;
    let w1 = outgoing_response(&q, energy, &g1, window, opts, &cuts, &hl, k)?;
    let w2 = outgoing_response(&q, energy, &g2, window, opts, &cuts, &hl, k)?;

    let xs = u0.nodes();
    let ip = |g: &Profile, path: &SolutionPath| path_inner_product(g, xs, path.values());

    let b1 = spec.beta.conj() / (eps * eps * eps);
    let b2 = spec.beta / (eps * eps * eps);
    let closure = [
        [
            Complex64::from(1.0) - b1 * ip(&g2, &w1.path),
            -b1 * ip(&g2, &w2.path),
        ],
        [
            -b2 * ip(&g1, &w1.path),
            Complex64::from(1.0) - b2 * ip(&g1, &w2.path),
        ],
    ];

    // left incidence
    let rhs = [b1 * ip(&g2, &u0), b2 * ip(&g1, &u0)];
    let (c1, c2) = solve2(closure, rhs).ok_or(FamilyError::SingularConsistency { k })?;
    let r_left = bare.r_left + c1 * w1.left_amp + c2 * w2.left_amp;
    let t_left = bare.t_left + c1 * w1.right_amp + c2 * w2.right_amp;

    // right incidence reuses the responses; u0 for it is t_right * hl
    let ip_g1_hl = ip(&g1, &hl);
    let ip_g2_hl = ip(&g2, &hl);
    let rhs = [
        b1 * bare.t_right * ip_g2_hl,
        b2 * bare.t_right * ip_g1_hl,
    ];
    let (c1r, c2r) = solve2(closure, rhs).ok_or(FamilyError::SingularConsistency { k })?;
    let r_right = bare.r_right + c1r * w1.right_amp + c2r * w2.right_amp;
    let t_right = bare.t_right + c1r * w1.left_amp + c2r * w2.left_amp;

    Ok(apply_gauge(
        ScatteringData {
            k,
            r_left,
            t_left,
            r_right,
            t_right,
        },
        mu,
    ))
}

// Outgoing solution of -w'' + q w - E w = -g: particular response with zero
// left data plus the multiple of the left-outgoing homogeneous solution that
// kills the incoming component on the right.
#[allow(clippy::too_many_arguments)]
fn outgoing_response(
    q: &Profile,
    energy: f64,
    source: &Profile,
    window: (f64, f64),
    opts: &SolverOptions,
    cuts: &[f64],
    hl: &SolutionPath,
    k: f64,
) -> Result<OutgoingResponse, FamilyError> {
    let ik = I * k;
    let wp = ode::source_response_with_cuts(q, energy, source, window, opts, cuts)?;
    let (wp_hi, dwp_hi) = wp.terminal();
    let (hl_hi, dhl_hi) = hl.terminal();
    let denom = dhl_hi - ik * hl_hi;
    if denom.norm() < 1e-14 {
        return Err(FamilyError::SingularBoundary { k });
    }
    let amp = -(dwp_hi - ik * wp_hi) / denom;
    let path = SolutionPath::linear_combination(&[(Complex64::from(1.0), &wp), (amp, hl)]);
    let (w_hi, _) = path.terminal();
    let right_amp = w_hi * Complex64::from_polar(1.0, -k * window.1);
    Ok(OutgoingResponse {
        left_amp: amp,
        right_amp,
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zeros() -> (Profile, Profile, Profile, Profile) {
        (
            Profile::zero(),
            Profile::zero(),
            Profile::zero(),
            Profile::zero(),
        )
    }

    #[test]
    fn free_family_is_transparent() {
        let (v0, v, u, a) = zeros();
        let spec = PotentialFamilySpec::new(v0, v, u, a, -1.0, 0.5, 0.25).unwrap();
        let s = scatter_potential_family(&spec, 1.0).unwrap();
        assert!(s.r_left.norm() < 1e-14);
        assert!((s.t_left - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pure_gauge_gives_flux_phase() {
        let (v0, v, u, _) = zeros();
        let a = Profile::constant(0.55, -1.0, 1.0).unwrap(); // mu = 1.1
        let spec = PotentialFamilySpec::new(v0, v, u, a, 0.0, 0.3, 0.3).unwrap();
        let s = scatter_potential_family(&spec, 2.0).unwrap();
        assert!(s.r_left.norm() < 1e-14);
        assert!((s.t_left - Complex64::from_polar(1.0, 1.1)).norm() < 1e-13);
        assert!((s.t_right - Complex64::from_polar(1.0, -1.1)).norm() < 1e-13);
        assert!((s.t_left.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rectangular_barrier_closed_form() {
        // alpha = 0, U = 2 on (0,1) at nu = 1: plain barrier of height 2
        let (v0, v, _, a) = zeros();
        let height = 2.0;
        let u = Profile::constant(height, 0.0, 1.0).unwrap();
        let spec = PotentialFamilySpec::new(v0, v, u, a, 0.0, 1.0, 1.0).unwrap();
        for &k in &[0.8, 1.0, 2.3] {
            let s = scatter_potential_family(&spec, k).unwrap();
            let (r, t) = barrier_oracle(height, 1.0, k);
            assert!((s.r_left - r).norm() < 1e-10, "k = {k}");
            assert!((s.t_left - t).norm() < 1e-10, "k = {k}");
            assert!(s.unitarity_defect() < 1e-12);
        }
    }

    // textbook barrier of height v on (0, L): matching plane waves at the
    // two edges by hand
    fn barrier_oracle(v: f64, l: f64, k: f64) -> (Complex64, Complex64) {
        let q = Complex64::from(k * k - v).sqrt();
        let kk = Complex64::from(k);
        let e_iql = (I * q * l).exp();
        let e_miql = (-I * q * l).exp();
        let e_mikl = (-I * kk * l).exp();
        let denom = (q + kk) * (q + kk) * e_miql - (q - kk) * (q - kk) * e_iql;
        let t = 4.0 * kk * q * e_mikl / denom;
        let a_coef = t * (I * kk * l).exp() * (q + kk) * e_miql / (2.0 * q);
        let b_coef = t * (I * kk * l).exp() * (q - kk) * e_iql / (2.0 * q);
        let r = a_coef + b_coef - 1.0;
        (r, t)
    }

    #[test]
    fn gauge_leaves_probabilities_invariant() {
        let (v0, _, _, _) = zeros();
        let v = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let a = Profile::constant(std::f64::consts::FRAC_PI_4, -1.0, 1.0).unwrap(); // mu = pi/2
        let spec_a = PotentialFamilySpec::new(
            v0.clone(),
            v.clone(),
            u.clone(),
            a,
            -2.0,
            0.2,
            0.2,
        )
        .unwrap();
        let spec_0 =
            PotentialFamilySpec::new(v0, v, u, Profile::zero(), -2.0, 0.2, 0.2).unwrap();
        let sa = scatter_potential_family(&spec_a, 1.0).unwrap();
        let s0 = scatter_potential_family(&spec_0, 1.0).unwrap();
        assert!((sa.r_left - s0.r_left).norm() < 1e-12);
        assert!((sa.t_left.norm() - s0.t_left.norm()).abs() < 1e-12);
        let shift = sa.t_left / s0.t_left;
        assert!(
            (shift - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2)).norm() < 1e-12
        );
    }

    #[test]
    fn eps_guard() {
        let (v0, v, u, a) = zeros();
        assert!(matches!(
            PotentialFamilySpec::new(v0, v, u, a, 0.0, 1e-5, 1.0),
            Err(FamilyError::EpsTooSmall { .. })
        ));
    }

    fn step_pair() -> (Profile, Profile) {
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
        (f1, f2)
    }

    #[test]
    fn rank_two_all_zero_is_transparent() {
        let spec = RankTwoFamilySpec::new(
            Profile::zero(),
            Profile::zero(),
            Profile::zero(),
            Profile::zero(),
            Profile::zero(),
            c(1.0, 0.0),
            0.5,
        )
        .unwrap();
        let s = scatter_rank_two_family(&spec, 1.0).unwrap();
        assert!(s.r_left.norm() < 1e-14);
        assert!((s.t_left - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rank_two_beta_zero_reduces_to_potential_family() {
        let (f1, f2) = step_pair();
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let eps = 0.4;
        let spec = RankTwoFamilySpec::new(
            Profile::zero(),
            f1,
            f2,
            u.clone(),
            Profile::zero(),
            c(0.0, 0.0),
            eps,
        )
        .unwrap();
        let s = scatter_rank_two_family(&spec, 1.3).unwrap();
        // same U term through the potential-family path (alpha = 0, nu = eps)
        let pot = PotentialFamilySpec::new(
            Profile::zero(),
            Profile::zero(),
            u,
            Profile::zero(),
            0.0,
            eps,
            eps,
        )
        .unwrap();
        let s0 = scatter_potential_family(&pot, 1.3).unwrap();
        assert!(s.distance(&s0) < 1e-10);
    }

    #[test]
    fn rank_two_unitarity_and_symmetry() {
        let (f1, f2) = step_pair();
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        for &eps in &[0.5, 0.2, 0.1] {
            let spec = RankTwoFamilySpec::new(
                Profile::zero(),
                f1.clone(),
                f2.clone(),
                u.clone(),
                Profile::zero(),
                c(1.0, 0.0),
                eps,
            )
            .unwrap();
            for &k in &[0.5, 1.0, 2.0] {
                let s = scatter_rank_two_family(&spec, k).unwrap();
                assert!(
                    s.unitarity_defect() < 1e-8,
                    "eps = {eps}, k = {k}: defect {}",
                    s.unitarity_defect()
                );
                assert!(s.transmission_asymmetry() < 1e-8);
            }
        }
    }

    #[test]
    fn rank_two_gauge_equivalence() {
        // A supported left of the pair twists both by the same constant
        // phase, which cancels; amplitude moduli match the field-free case
        // and the transmitted phase shifts by mu
        let (f1, f2) = step_pair();
        let u = Profile::constant(0.5, -1.0, 1.0).unwrap();
        let a = Profile::constant(0.7, -3.0, -2.0).unwrap(); // mu = 0.7
        let eps = 0.25;
        let with_field = RankTwoFamilySpec::new(
            Profile::zero(),
            f1.clone(),
            f2.clone(),
            u.clone(),
            a,
            c(1.0, 0.0),
            eps,
        )
        .unwrap();
        let without = RankTwoFamilySpec::new(
            Profile::zero(),
            f1,
            f2,
            u,
            Profile::zero(),
            c(1.0, 0.0),
            eps,
        )
        .unwrap();
        let sa = scatter_rank_two_family(&with_field, 1.0).unwrap();
        let s0 = scatter_rank_two_family(&without, 1.0).unwrap();
        assert!((sa.r_left - s0.r_left).norm() < 1e-10);
        assert!((sa.r_right - s0.r_right).norm() < 1e-10);
        assert!((sa.t_left.norm() - s0.t_left.norm()).abs() < 1e-10);
        let shift = sa.t_left / s0.t_left;
        assert!((shift - Complex64::from_polar(1.0, 0.7)).norm() < 1e-10);
    }

    #[test]
    fn rank_two_swap_symmetry() {
        // the coupling is invariant under (f1, f2, beta) -> (f2, f1, conj beta)
        let (f1, f2) = step_pair();
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let beta = c(0.6, 0.8);
        let a = RankTwoFamilySpec::new(
            Profile::zero(),
            f1.clone(),
            f2.clone(),
            u.clone(),
            Profile::zero(),
            beta,
            0.3,
        )
        .unwrap();
        let b = RankTwoFamilySpec::new(
            Profile::zero(),
            f2,
            f1,
            u,
            Profile::zero(),
            beta.conj(),
            0.3,
        )
        .unwrap();
        let sa = scatter_rank_two_family(&a, 1.1).unwrap();
        let sb = scatter_rank_two_family(&b, 1.1).unwrap();
        assert!(sa.distance(&sb) < 1e-12, "distance {}", sa.distance(&sb));
    }

    #[test]
    fn refinement_stability() {
        let (f1, f2) = step_pair();
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let spec = RankTwoFamilySpec::new(
            Profile::zero(),
            f1,
            f2,
            u,
            Profile::zero(),
            c(1.0, 0.0),
            0.2,
        )
        .unwrap();
        let opts = family_solver_options();
        let s1 = scatter_rank_two_family_with(&spec, 1.0, &opts).unwrap();
        let s2 = scatter_rank_two_family_with(&spec, 1.0, &opts.refined(2.0)).unwrap();
        assert!(s1.distance(&s2) < 1e-8, "distance {}", s1.distance(&s2));
    }
}

