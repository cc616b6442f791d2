//! Zero-energy resonances and half-bound states of `-v'' + α V v = 0`.
//!
//! A coupling constant α is resonant when the equation has a bounded
//! nontrivial solution on the whole line. For a potential supported in
//! `[x_lo, x_hi]` that is equivalent to the Neumann shooting problem
//! `v'(x_lo) = v'(x_hi) = 0`, which this module scans and refines by
//! bisection. The half-bound state, its boundary values and the derived
//! maps θ(α) and γ(α, λ) feed the point-interaction limit model; a
//! non-resonant coupling decouples the line into two Dirichlet half-lines.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::ode::{self, OdeError, SolutionPath, SolverOptions};
use crate::point_interaction::PointInteraction;
use crate::profile::{gauge_phase, Profile, ProfileError};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default miss-value tolerance for accepting a coupling as resonant,
/// relative to `max(1, sup |v|)`.
pub const RESONANCE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum HalfBoundError {
    #[error("coupling alpha = {alpha} is not resonant: |v'(x_hi)| = {miss:.3e} exceeds {tol:.3e}")]
    NotResonant { alpha: f64, miss: f64, tol: f64 },
    #[error("potential must be real-valued")]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("scan range must be finite with lo < hi and grid >= 1")]
    BadRange,
}

/// Scale parameter λ of the electric-potential shrinking rate, including
/// the infinite endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda {
    Zero,
    Finite(f64),
    Infinity,
}

impl Lambda {
    pub fn is_valid(&self) -> bool {
        match self {
            Lambda::Finite(l) => *l > 0.0 && l.is_finite(),
            _ => true,
        }
    }
}

impl std::str::FromStr for Lambda {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "0" => Ok(Lambda::Zero),
            "inf" | "infinity" | "+inf" => Ok(Lambda::Infinity),
            other => {
                let v: f64 = other
                    .parse()
                    .map_err(|_| format!("invalid lambda value `{other}`"))?;
                if v == 0.0 {
                    Ok(Lambda::Zero)
                } else if v > 0.0 && v.is_finite() {
                    Ok(Lambda::Finite(v))
                } else {
                    Err(format!("lambda must be in [0, inf], got {other}"))
                }
            }
        }
    }
}

impl std::fmt::Display for Lambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lambda::Zero => write!(f, "0"),
            Lambda::Finite(l) => write!(f, "{l}"),
            Lambda::Infinity => write!(f, "inf"),
        }
    }
}

/// Boundary data of one Neumann shot: `v` starts at `(1, 0)` on the left
/// edge of the support and the miss value is `v'` at the right edge.
#[derive(Debug, Clone, Copy)]
pub struct ShootResult {
    pub alpha: f64,
    pub miss: f64,
    pub v_lo: f64,
    pub v_hi: f64,
}

/// Half-bound state normalized to `v(x_lo) = 1`.
#[derive(Debug, Clone)]
pub struct HalfBoundState {
    pub alpha: f64,
    path: SolutionPath,
    support: (f64, f64),
    pub v_minus: f64,
    pub v_plus: f64,
    pub theta: f64,
}

impl HalfBoundState {
    /// Value of the half-bound state anywhere on the line (constant
    /// outside the support).
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.support.0 {
            self.v_minus
        } else if x >= self.support.1 {
            self.v_plus
        } else {
            self.path.eval(x).re
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn samples(&self) -> (&[f64], Vec<f64>) {
        let xs = self.path.nodes();
        let vs = self.path.values().iter().map(|c| c.re).collect();
        (xs, vs)
    }

    /// The same state multiplied by a nonzero scalar. θ and γ are
    /// homogeneous of degree zero in the state, so downstream values must
    /// not change; tests rely on this.
    pub fn rescaled(&self, c: f64) -> HalfBoundState {
        assert!(c != 0.0 && c.is_finite());
        let path = SolutionPath::linear_combination(&[(Complex64::from(c), &self.path)]);
        HalfBoundState {
            alpha: self.alpha,
            path,
            support: self.support,
            v_minus: c * self.v_minus,
            v_plus: c * self.v_plus,
            theta: (c * self.v_plus) / (c * self.v_minus),
        }
    }
}

/// Result of a resonance scan.
#[derive(Debug, Clone)]
pub struct ResonanceScan {
    /// Resonant couplings in ascending order.
    pub roots: Vec<f64>,
    pub warnings: Vec<ScanWarning>,
}

#[derive(Debug, Clone)]
pub enum ScanWarning {
    /// Two sign changes were detected inside one scan cell; the grid may be
    /// too coarse to separate nearby roots.
    CrowdedCell { lo: f64, hi: f64 },
}

impl std::fmt::Display for ScanWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScanWarning::CrowdedCell { lo, hi } => write!(
                f,
                "two roots share the scan cell [{lo}, {hi}]; consider a finer grid"
            ),
        }
    }
}

fn shoot_opts() -> SolverOptions {
    SolverOptions::default()
}

/// Propagates `-v'' + α V v = 0` from `(1, 0)` at the left support edge and
/// reports `v'` at the right edge together with the boundary values.
pub fn shoot_neumann(v_potential: &Profile, alpha: f64) -> Result<ShootResult, HalfBoundError> {
    v_potential.require_real(1e-12)?;
    if alpha == 0.0 {
        // -v'' = 0 with v = 1: always resonant, exactly
        return Ok(ShootResult {
            alpha,
            miss: 0.0,
            v_lo: 1.0,
            v_hi: 1.0,
        });
    }
    let (lo, hi) = v_potential.support();
    let q = v_potential.scaled(Complex64::from(alpha));
    let m = ode::transfer_matrix(&q, 0.0, (lo, hi), &shoot_opts())?;
    Ok(ShootResult {
        alpha,
        miss: m.m[1][0].re,
        v_lo: 1.0,
        v_hi: m.m[0][0].re,
    })
}

/// Scans `[lo, hi]` on `grid` cells for sign changes of the miss value and
/// refines each bracket by bisection until `|miss| <= tol`. The coupling
/// α = 0 is always resonant and is included whenever it lies in the range.
pub fn find_resonances(
    v_potential: &Profile,
    alpha_range: (f64, f64),
    grid: usize,
    tol: f64,
) -> Result<ResonanceScan, HalfBoundError> {
    let (lo, hi) = alpha_range;
    if lo >= hi || !lo.is_finite() || !hi.is_finite() || grid == 0 {
        return Err(HalfBoundError::BadRange);
    }
    v_potential.require_real(1e-12)?;
    let nodes: Vec<f64> = (0..=grid)
        .map(|i| lo + (hi - lo) * i as f64 / grid as f64)
        .collect();
    let misses: Vec<f64> = nodes
        .par_iter()
        .map(|&a| shoot_neumann(v_potential, a).map(|s| s.miss))
        .collect::<Result<_, _>>()?;
    let mut roots = Vec::new();
    let mut warnings = Vec::new();
    let miss_fn = |a: f64| shoot_neumann(v_potential, a).map(|s| s.miss);
    for i in 0..grid {
        let (a, b) = (nodes[i], nodes[i + 1]);
        let (fa, fb) = (misses[i], misses[i + 1]);
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if i == grid - 1 && fb == 0.0 {
            roots.push(b);
            continue;
        }
        if fa * fb < 0.0 {
            roots.push(bisect(&miss_fn, a, b, fa, tol)?);
        } else {
            // same-sign cell: probe the midpoint for a hidden double crossing
            let mid = 0.5 * (a + b);
            let fm = miss_fn(mid)?;
            if fm != 0.0 && fa * fm < 0.0 {
                warnings.push(ScanWarning::CrowdedCell { lo: a, hi: b });
                roots.push(bisect(&miss_fn, a, mid, fa, tol)?);
                roots.push(bisect(&miss_fn, mid, b, fm, tol)?);
            }
        }
    }
    // snap near-zero roots onto the exact root at alpha = 0
    let zero_in_range = lo <= 0.0 && hi >= 0.0;
    if zero_in_range {
        let snap = ((hi - lo) / grid as f64) * 1e-6;
        for r in roots.iter_mut() {
            if r.abs() <= snap {
                *r = 0.0;
            }
        }
        if !roots.contains(&0.0) {
            roots.push(0.0);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * a.abs().max(1.0));
    Ok(ResonanceScan { roots, warnings })
}

fn bisect<F>(f: &F, mut a: f64, mut b: f64, fa_in: f64, tol: f64) -> Result<f64, HalfBoundError>
where
    F: Fn(f64) -> Result<f64, HalfBoundError>,
{
    let mut fa = fa_in;
    let mut mid = 0.5 * (a + b);
    for _ in 0..200 {
        mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm.abs() <= tol || (b - a) <= f64::EPSILON * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(mid)
}

/// Computes the half-bound state at a resonant coupling, normalized to
/// `v(x_lo) = 1`. Fails with [`HalfBoundError::NotResonant`] when the miss
/// value exceeds `RESONANCE_TOL * max(1, sup |v|)`.
pub fn half_bound_state(
    v_potential: &Profile,
    alpha: f64,
) -> Result<HalfBoundState, HalfBoundError> {
    v_potential.require_real(1e-12)?;
    let (lo, hi) = v_potential.support();
    let q = v_potential.scaled(Complex64::from(alpha));
    let path = ode::propagate(&q, 0.0, (ONE, ZERO), (lo, hi), &shoot_opts())?;
    let (v_hi, dv_hi) = path.terminal();
    let sup = path.sup_abs();
    let tol = RESONANCE_TOL * sup.max(1.0);
    if dv_hi.norm() > tol {
        return Err(HalfBoundError::NotResonant {
            alpha,
            miss: dv_hi.norm(),
            tol,
        });
    }
    let v_minus = 1.0;
    let v_plus = v_hi.re;
    Ok(HalfBoundState {
        alpha,
        path,
        support: (lo, hi),
        v_minus,
        v_plus,
        theta: v_plus / v_minus,
    })
}

/// The resonance interaction strength γ(α, λ) between the δ'-scale
/// potential that owns the half-bound state and the δ-scale potential `U`.
///
/// At λ = 0 it reduces to `v(0)^2 / (v⁻ v⁺) ∫U`; for finite λ it is
/// `(v⁻ v⁺)^{-1} ∫ U(t) v(λ t)^2 dt` with `v` extended by its constant
/// limits; at λ = ∞ it becomes `θ ∫_{0}^{∞} U + θ^{-1} ∫_{-∞}^{0} U`.
pub fn gamma_map(hbs: &HalfBoundState, u_potential: &Profile, lambda: Lambda) -> f64 {
    let norm = hbs.v_minus * hbs.v_plus;
    match lambda {
        Lambda::Zero => {
            let v0 = hbs.eval(0.0);
            v0 * v0 / norm * u_potential.integral().re
        }
        Lambda::Infinity => {
            let (u_lo, u_hi) = u_potential.support();
            let plus = u_potential.integral_over(0.0, u_hi.max(0.0)).re;
            let minus = u_potential.integral_over(u_lo.min(0.0), 0.0).re;
            hbs.theta * plus + minus / hbs.theta
        }
        Lambda::Finite(l) => {
            let (u_lo, u_hi) = u_potential.support();
            // cut where the scaled argument crosses the support or any
            // breakpoint of the state's potential
            let mut cuts = vec![u_lo, u_hi];
            for b in [hbs.support.0, hbs.support.1] {
                let t = b / l;
                if t > u_lo && t < u_hi {
                    cuts.push(t);
                }
            }
            for b in u_potential.breakpoints() {
                if b > u_lo && b < u_hi {
                    cuts.push(b);
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut acc = 0.0;
            for w in cuts.windows(2) {
                acc += simpson_real(
                    |t| u_potential.eval(t).re * hbs.eval(l * t).powi(2),
                    w[0],
                    w[1],
                    256,
                );
            }
            acc / norm
        }
    }
}

fn simpson_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = if n.is_multiple_of(2) { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Limit model of the shrinking family: a point interaction when the
/// coupling is resonant, Dirichlet decoupling otherwise.
#[derive(Debug, Clone)]
pub enum LimitModel {
    PointInteraction(PointInteraction),
    DirichletDecoupled,
}

impl LimitModel {
    pub fn as_point_interaction(&self) -> Option<&PointInteraction> {
        match self {
            LimitModel::PointInteraction(pi) => Some(pi),
            LimitModel::DirichletDecoupled => None,
        }
    }
}

/// Assembles the limit model of the family with δ'-scaled `αV`, δ-scaled
/// `U` and magnetic potential `A`: phase `μ = ∫A` and coupling matrix
/// `[[θ, 0], [γ, 1/θ]]` at a resonant α, Dirichlet decoupling otherwise.
pub fn limit_model_potential(
    v_potential: &Profile,
    u_potential: &Profile,
    a_potential: &Profile,
    alpha: f64,
    lambda: Lambda,
) -> Result<LimitModel, HalfBoundError> {
    let mu = gauge_phase(a_potential)?.mu();
    match half_bound_state(v_potential, alpha) {
        Ok(hbs) => {
            let theta = hbs.theta;
            let gamma = gamma_map(&hbs, u_potential, lambda);
            let pi = PointInteraction::new(mu, theta, 0.0, gamma, 1.0 / theta)
                .expect("theta * 1/theta = 1 by construction");
            Ok(LimitModel::PointInteraction(pi))
        }
        Err(HalfBoundError::NotResonant { .. }) => Ok(LimitModel::DirichletDecoupled),
        Err(e) => Err(e),
    }
}
