//! Double zero-energy resonances of rank-two perturbations.
//!
//! For the operator `-d²/dx² + β̄⟨g₂,·⟩g₁ + β⟨g₁,·⟩g₂` with zero-mean,
//! linearly independent `g₁`, `g₂` of compact support, the couplings β that
//! admit two independent bounded zero-energy solutions form a circle in the
//! complex plane. On that circle the second half-bound state (besides the
//! constant) is an explicit combination of second antiderivatives, and its
//! tail value κ together with three quadratures against a δ-scale potential
//! `U` determines the point-interaction limit of the shrinking family.

use num_complex::Complex64;
use thiserror::Error;

use crate::point_interaction::PointInteraction;
use crate::profile::{gauge_phase, gauge_twist, Profile, ProfileError, TailedProfile};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative tolerance for the circle-membership test.
pub const CIRCLE_TOL: f64 = 1e-8;
/// Gram-determinant threshold for linear independence, relative to `m₁²m₂²`.
pub const INDEPENDENCE_TOL: f64 = 1e-12;
/// Zero-mean tolerance on the inputs.
pub const MEAN_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RankTwoError {
    #[error("input profiles must have zero mean (|∫g| = {mean:.3e})")]
    NonZeroMean { mean: f64 },
    #[error("input profiles are linearly dependent (relative Gram determinant {gram:.3e})")]
    DependentInputs { gram: f64 },
    #[error("beta = {beta} is off the double-resonance circle (relative distance {distance:.3e})")]
    OffCircle { beta: Complex64, distance: f64 },
    #[error("degenerate interaction: |a2 - conj(kappa) a1| = {value:.3e} is below tolerance")]
    DegenerateCase { value: f64 },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// The circle of couplings with a double zero-energy resonance, together
/// with the antiderivative data that determines it.
#[derive(Debug, Clone)]
pub struct ResonanceCircle {
    pub beta0: Complex64,
    pub rho: f64,
    pub m1: f64,
    pub m2: f64,
    pub tau: Complex64,
}

impl ResonanceCircle {
    /// Point on the circle at angle `phi`.
    pub fn point(&self, phi: f64) -> Complex64 {
        self.beta0 + Complex64::from_polar(self.rho, phi)
    }

    /// Relative distance of `beta` from the circle.
    pub fn distance(&self, beta: Complex64) -> f64 {
        ((beta - self.beta0).norm() - self.rho).abs() / self.rho
    }

    pub fn contains(&self, beta: Complex64, tol: f64) -> bool {
        self.distance(beta) <= tol
    }
}

/// The non-constant half-bound state on the circle and its right tail κ.
#[derive(Debug, Clone)]
pub struct ResonanceData {
    pub omega: TailedProfile,
    pub kappa: Complex64,
}

/// Quadratures of a δ-scale potential against the half-bound state:
/// `a0 = ∫U`, `a1 = ∫U ω`, `a2 = ∫U |ω|²`.
#[derive(Debug, Clone, Copy)]
pub struct InteractionCoefficients {
    pub a0: f64,
    pub a1: Complex64,
    pub a2: f64,
}

fn check_pair(
    g1: &Profile,
    g2: &Profile,
) -> Result<(TailedProfile, TailedProfile), RankTwoError> {
    for g in [g1, g2] {
        let mean = g.integral().norm();
        if mean > MEAN_TOL {
            return Err(RankTwoError::NonZeroMean { mean });
        }
    }
    Ok((g1.antiderivative(1), g2.antiderivative(1)))
}

/// Computes the double-resonance circle of a zero-mean pair.
///
/// `beta0 = conj(τ) / (m₁²m₂² - |τ|²)` and `rho = m₁m₂ / (m₁²m₂² - |τ|²)`,
/// where `m_k` are the norms of the first antiderivatives and τ their inner
/// product. Fails when the means are nonzero or the antiderivatives are
/// (numerically) linearly dependent.
pub fn resonance_circle(g1: &Profile, g2: &Profile) -> Result<ResonanceCircle, RankTwoError> {
    let (a1, a2) = check_pair(g1, g2)?;
    let (lo, hi) = hull(g1, g2);
    let p1 = a1.as_profile_on(lo, hi);
    let p2 = a2.as_profile_on(lo, hi);
    let m1 = p1.norm_l2();
    let m2 = p2.norm_l2();
    let tau = p1.inner_product(&p2);
    let denom = m1 * m1 * m2 * m2 - tau.norm_sqr();
    if denom <= INDEPENDENCE_TOL * m1 * m1 * m2 * m2 {
        return Err(RankTwoError::DependentInputs {
            gram: denom / (m1 * m1 * m2 * m2),
        });
    }
    Ok(ResonanceCircle {
        beta0: tau.conj() / denom,
        rho: m1 * m2 / denom,
        m1,
        m2,
        tau,
    })
}

fn hull(g1: &Profile, g2: &Profile) -> (f64, f64) {
    let (a, b) = g1.support();
    let (c, d) = g2.support();
    (a.min(c), b.max(d))
}

/// Coefficient matrix of the two-by-two solvability system for the
/// half-bound-state ansatz `c₁ g₁^{(-2)} + c₂ g₂^{(-2)}`.
pub fn coupling_system_matrix(circle: &ResonanceCircle, beta: Complex64) -> [[Complex64; 2]; 2] {
    [
        [
            beta * circle.m1 * circle.m1,
            beta * circle.tau + 1.0,
        ],
        [
            (beta * circle.tau).conj() + 1.0,
            beta.conj() * circle.m2 * circle.m2,
        ],
    ]
}

/// Smallest singular value of a 2×2 complex matrix, from the eigenvalues of
/// `MᴴM` in closed form.
pub fn smallest_singular_value(m: &[[Complex64; 2]; 2]) -> f64 {
    let frob2 = m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>();
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (frob2 * frob2 - 4.0 * det.norm_sqr()).max(0.0).sqrt();
    (0.5 * (frob2 - disc)).max(0.0).sqrt()
}

/// Builds the non-constant half-bound state for a coupling on the circle:
/// `ω = e^{i arg(β^{-1} + τ)} m₂ g₁^{(-2)} - m₁ g₂^{(-2)}`, zero far left and
/// constant κ far right.
pub fn half_bound_omega(
    g1: &Profile,
    g2: &Profile,
    beta: Complex64,
) -> Result<ResonanceData, RankTwoError> {
    let circle = resonance_circle(g1, g2)?;
    half_bound_omega_on(&circle, g1, g2, beta)
}

/// As [`half_bound_omega`] with a precomputed circle.
pub fn half_bound_omega_on(
    circle: &ResonanceCircle,
    g1: &Profile,
    g2: &Profile,
    beta: Complex64,
) -> Result<ResonanceData, RankTwoError> {
    if beta == ZERO || !circle.contains(beta, CIRCLE_TOL) {
        return Err(RankTwoError::OffCircle {
            beta,
            distance: if beta == ZERO {
                1.0
            } else {
                circle.distance(beta)
            },
        });
    }
    let phase = Complex64::from_polar(1.0, (1.0 / beta + circle.tau).arg());
    let c1 = phase * circle.m2;
    let c2 = Complex64::from(-circle.m1);
    let s1 = g1.antiderivative(2);
    let s2 = g2.antiderivative(2);
    let omega = TailedProfile::linear_combination(&[(c1, &s1), (c2, &s2)]);
    let kappa = omega.tail_value();
    Ok(ResonanceData { omega, kappa })
}

/// Residual of the half-bound-state equation
/// `-ω'' + β̄⟨g₂,ω⟩g₁ + β⟨g₁,ω⟩g₂ = 0` for a candidate `ω` given on the
/// joint support window, measured in L² against the window norm of `ω`.
pub fn hbs_equation_residual(
    g1: &Profile,
    g2: &Profile,
    beta: Complex64,
    omega_window: &Profile,
) -> (f64, f64) {
    let ip2 = g2.inner_product(omega_window);
    let ip1 = g1.inner_product(omega_window);
    let second = omega_window.derivative().derivative();
    let residual = second
        .scaled(Complex64::from(-1.0))
        .add(&g1.scaled(beta.conj() * ip2))
        .add(&g2.scaled(beta * ip1));
    (residual.norm_l2(), omega_window.norm_l2())
}

/// `a0 = ∫U`, `a1 = ∫U ω`, `a2 = ∫U |ω|²`; `a0` and `a2` are real by
/// construction (`U` real).
pub fn interaction_coefficients(
    u_potential: &Profile,
    rd: &ResonanceData,
) -> Result<InteractionCoefficients, RankTwoError> {
    u_potential.require_real(1e-12)?;
    let a0 = u_potential.integral().re;
    let (u_lo, u_hi) = u_potential.support();
    let (w_lo, w_hi) = rd.omega.window().support();
    let lo = u_lo.min(w_lo);
    let hi = u_hi.max(w_hi);
    let omega = rd.omega.as_profile_on(lo, hi);
    let a1 = u_potential.product(&omega).integral();
    let a2 = u_potential.product(&omega.conj().product(&omega)).integral().re;
    Ok(InteractionCoefficients { a0, a1, a2 })
}

/// The point-interaction limit of the rank-two family.
///
/// Phase `μ - arg(a₂ - κ̄a₁)` and the real matrix
/// `[[ (a₀|κ|² - 2Re(κ̄a₁) + a₂)/d, |κ|²/d ], [ (a₀a₂ - |a₁|²)/d, a₂/d ]]`
/// with `d = |a₂ - κ̄a₁|`; its determinant is 1 identically. Requires the
/// non-degeneracy `a₂ ≠ κ̄a₁`.
pub fn limit_matrix_rank_two(
    coeffs: &InteractionCoefficients,
    kappa: Complex64,
    mu: f64,
) -> Result<PointInteraction, RankTwoError> {
    let z = coeffs.a2 - (kappa.conj() * coeffs.a1);
    let scale = coeffs.a2.abs() + (kappa.conj() * coeffs.a1).norm();
    if z.norm() <= 1e-10 * scale.max(1.0) {
        return Err(RankTwoError::DegenerateCase { value: z.norm() });
    }
    let d = z.norm();
    let k2 = kappa.norm_sqr();
    let c11 = (coeffs.a0 * k2 - 2.0 * (kappa.conj() * coeffs.a1).re + coeffs.a2) / d;
    let c12 = k2 / d;
    let c21 = (coeffs.a0 * coeffs.a2 - coeffs.a1.norm_sqr()) / d;
    let c22 = coeffs.a2 / d;
    let phase = mu - z.arg();
    Ok(PointInteraction::new(phase, c11, c12, c21, c22)
        .expect("unit determinant by construction"))
}

/// Same matrix with the phase written through the conjugate argument,
/// `μ + arg(a₂ - κ ā₁)`. Since `a₂` is real the two expressions are equal;
/// this entry point exists so both conventions stay exercised.
pub fn limit_matrix_rank_two_conjugate_phase(
    coeffs: &InteractionCoefficients,
    kappa: Complex64,
    mu: f64,
) -> Result<PointInteraction, RankTwoError> {
    let pi = limit_matrix_rank_two(coeffs, kappa, mu)?;
    let z_conj = Complex64::from(coeffs.a2) - kappa * coeffs.a1.conj();
    Ok(PointInteraction::new_unchecked(
        mu + z_conj.arg(),
        pi.c11,
        pi.c12,
        pi.c21,
        pi.c22,
    ))
}

/// Full pipeline from the raw pair and the magnetic potential to the limit
/// point interaction: twists the pair by the gauge phase, validates the
/// double-resonance hypotheses, and assembles the matrix.
pub fn limit_model_rank_two(
    f1: &Profile,
    f2: &Profile,
    u_potential: &Profile,
    a_potential: &Profile,
    beta: Complex64,
) -> Result<PointInteraction, RankTwoError> {
    let gauge = gauge_phase(a_potential)?;
    let g1 = gauge_twist(f1, &gauge);
    let g2 = gauge_twist(f2, &gauge);
    let circle = resonance_circle(&g1, &g2)?;
    let rd = half_bound_omega_on(&circle, &g1, &g2, beta)?;
    let coeffs = interaction_coefficients(u_potential, &rd)?;
    limit_matrix_rank_two(&coeffs, rd.kappa, gauge.mu())
}
