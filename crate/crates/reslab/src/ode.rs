//! Propagation of the stationary equation `-u'' + q(x) u = E u`.
//!
//! Pieces on which the coefficient is constant are advanced with the exact
//! constant-coefficient propagator; everything else falls back to classical
//! RK4 with steps tied to the piece structure and the local wavenumber.
//! Determinants of transfer matrices stay at 1 by Wronskian conservation,
//! which the tests use as a global consistency check.

use num_complex::Complex64;
use thiserror::Error;

use crate::profile::Profile;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error)]
pub enum OdeError {
    #[error("propagation produced a non-finite value near x = {at}")]
    NonFinite { at: f64 },
    #[error("interval is too stiff near x = {at}: growth exponent {exponent:.1} exceeds the overflow budget; reduce the interval or the coupling")]
    Stiff { at: f64, exponent: f64 },
    #[error("invalid interval")]
    BadInterval,
}

/// Map of `(u, u')` across an interval at fixed energy.
#[derive(Debug, Clone, Copy)]
pub struct TransferMatrix {
    pub m: [[Complex64; 2]; 2],
    pub energy: f64,
    pub interval: (f64, f64),
}

impl TransferMatrix {
    pub fn identity(energy: f64, x: f64) -> Self {
        TransferMatrix {
            m: [[ONE, ZERO], [ZERO, ONE]],
            energy,
            interval: (x, x),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, u: Complex64, du: Complex64) -> (Complex64, Complex64) {
        (
            self.m[0][0] * u + self.m[0][1] * du,
            self.m[1][0] * u + self.m[1][1] * du,
        )
    }

    /// `other ∘ self`: first cross `self`, then `other`.
    pub fn then(&self, other: &TransferMatrix) -> TransferMatrix {
        let a = &other.m;
        let b = &self.m;
        TransferMatrix {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
            energy: self.energy,
            interval: (self.interval.0, other.interval.1),
        }
    }
}

/// Dense solution samples with values and derivatives at the nodes.
///
/// Node intervals are cubic-Hermite interpolated, giving fourth-order
/// pointwise evaluation between nodes.
#[derive(Debug, Clone)]
pub struct SolutionPath {
    xs: Vec<f64>,
    u: Vec<Complex64>,
    du: Vec<Complex64>,
}

impl SolutionPath {
    pub fn nodes(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[Complex64] {
        &self.u
    }

    pub fn derivatives(&self) -> &[Complex64] {
        &self.du
    }

    pub fn initial(&self) -> (Complex64, Complex64) {
        (self.u[0], self.du[0])
    }

    pub fn terminal(&self) -> (Complex64, Complex64) {
        (*self.u.last().unwrap(), *self.du.last().unwrap())
    }

    pub fn sup_abs(&self) -> f64 {
        self.u.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.u[0];
        }
        if x >= self.xs[n - 1] {
            return self.u[n - 1];
        }
        let i = self.xs.partition_point(|&p| p <= x) - 1;
        let i = i.min(n - 2);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        self.u[i] * h00 + self.du[i] * (h10 * h) + self.u[i + 1] * h01 + self.du[i + 1] * (h11 * h)
    }

    /// Linear combination of paths sharing the same nodes.
    pub fn linear_combination(terms: &[(Complex64, &SolutionPath)]) -> SolutionPath {
        let xs = terms[0].1.xs.clone();
        let n = xs.len();
        let mut u = vec![ZERO; n];
        let mut du = vec![ZERO; n];
        for &(c, p) in terms {
            debug_assert_eq!(p.xs.len(), n);
            for i in 0..n {
                u[i] += c * p.u[i];
                du[i] += c * p.du[i];
            }
        }
        SolutionPath { xs, u, du }
    }
}

/// Step-size control for the propagators.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Upper bound on the node spacing.
    pub max_step: f64,
    /// Minimum number of node intervals per smooth piece (made even).
    pub min_nodes_per_piece: usize,
    /// Target phase advance per node in radians, `h <= wave_frac / sqrt|q - E|`.
    pub wave_frac: f64,
    /// RK4 substeps per node interval on non-constant pieces.
    pub rk_substeps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_step: 0.01,
            min_nodes_per_piece: 8,
            wave_frac: 0.02,
            rk_substeps: 2,
        }
    }
}

impl SolverOptions {
    pub fn refined(&self, factor: f64) -> SolverOptions {
        SolverOptions {
            max_step: self.max_step / factor,
            min_nodes_per_piece: (self.min_nodes_per_piece as f64 * factor).ceil() as usize,
            wave_frac: self.wave_frac / factor,
            rk_substeps: self.rk_substeps,
        }
    }
}

// A smooth piece of the coefficient between breakpoints.
struct Piece {
    lo: f64,
    hi: f64,
    constant: Option<Complex64>,
    nodes: usize, // even
}

fn build_pieces(
    q: &Profile,
    energy: f64,
    interval: (f64, f64),
    opts: &SolverOptions,
    extra_cuts: &[f64],
) -> Result<Vec<Piece>, OdeError> {
    let (a, b) = interval;
    if b < a || !a.is_finite() || !b.is_finite() {
        return Err(OdeError::BadInterval);
    }
    let mut cuts: Vec<f64> = q
        .breakpoints()
        .into_iter()
        .chain(extra_cuts.iter().copied())
        .filter(|&x| x > a && x < b)
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut pieces = Vec::with_capacity(cuts.len());
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo < 1e-15 {
            continue;
        }
        let constant = q.constant_on(lo, hi).map(|c| c - energy);
        let wmax = match constant {
            Some(c) => c.norm(),
            None => {
                let m = q.max_abs_on(lo, hi);
                m + energy.abs()
            }
        };
        let len = hi - lo;
        let s = wmax.sqrt().max(1e-9);
        let h = (opts.wave_frac / s).min(opts.max_step);
        let mut nodes = ((len / h).ceil() as usize).max(opts.min_nodes_per_piece).max(2);
        if nodes % 2 == 1 {
            nodes += 1;
        }
        // guard against overflow of the hyperbolic propagator
        let growth = s * len;
        if growth > 600.0 {
            return Err(OdeError::Stiff {
                at: lo,
                exponent: growth,
            });
        }
        pieces.push(Piece {
            lo,
            hi,
            constant,
            nodes,
        });
    }
    Ok(pieces)
}

/// Exact one-step propagator for `u'' = w u` over a step of width `h`:
/// `[[cosh(s h), sinh(s h)/s], [s sinh(s h), cosh(s h)]]` with `s = sqrt(w)`.
fn constant_step(w: Complex64, h: f64) -> [[Complex64; 2]; 2] {
    let s = w.sqrt();
    let z = s * h;
    if z.norm() < 1e-6 {
        // series for cosh z and sinh(z)/z, then s sinh(sh) = w h sinh(z)/z
        let z2 = z * z;
        let cosh = ONE + z2 * 0.5 + z2 * z2 / 24.0;
        let sinhc = ONE + z2 / 6.0 + z2 * z2 / 120.0;
        [[cosh, sinhc * h], [w * h * sinhc, cosh]]
    } else {
        let cosh = z.cosh();
        let sinh = z.sinh();
        [[cosh, sinh / s], [s * sinh, cosh]]
    }
}

fn apply2(m: &[[Complex64; 2]; 2], v: (Complex64, Complex64)) -> (Complex64, Complex64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

// One RK4 step for y = (u, u') with u'' = (q - E) u + s(x). Stage values at
// the piece edges take the one-sided limit of the current piece.
fn rk4_step(
    q: &Profile,
    energy: f64,
    source: Option<&Profile>,
    piece_mid: f64,
    x: f64,
    h: f64,
    y: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    let f = |x: f64, y: (Complex64, Complex64)| -> (Complex64, Complex64) {
        let w = q.eval_in_piece(x, piece_mid) - energy;
        let s = source.map_or(ZERO, |s| s.eval_in_piece(x, piece_mid));
        (y.1, w * y.0 + s)
    };
    let k1 = f(x, y);
    let k2 = f(x + 0.5 * h, (y.0 + k1.0 * (0.5 * h), y.1 + k1.1 * (0.5 * h)));
    let k3 = f(x + 0.5 * h, (y.0 + k2.0 * (0.5 * h), y.1 + k2.1 * (0.5 * h)));
    let k4 = f(x + h, (y.0 + k3.0 * h, y.1 + k3.1 * h));
    (
        y.0 + (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0),
        y.1 + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0),
    )
}

/// Propagates `-u'' + q u = E u` from initial data at the left end of the
/// interval, recording dense samples.
pub fn propagate(
    q: &Profile,
    energy: f64,
    init: (Complex64, Complex64),
    interval: (f64, f64),
    opts: &SolverOptions,
) -> Result<SolutionPath, OdeError> {
    propagate_with_source(q, energy, None, init, interval, opts, &[])
}

/// Particular solution with zero initial data of `-u'' + q u - E u = -s`.
pub fn source_response(
    q: &Profile,
    energy: f64,
    source: &Profile,
    interval: (f64, f64),
    opts: &SolverOptions,
) -> Result<SolutionPath, OdeError> {
    let cuts = source.breakpoints();
    propagate_with_source(q, energy, Some(source), (ZERO, ZERO), interval, opts, &cuts)
}

/// As [`propagate`], with extra node cuts (used to align quadrature grids).
pub fn propagate_with_cuts(
    q: &Profile,
    energy: f64,
    init: (Complex64, Complex64),
    interval: (f64, f64),
    opts: &SolverOptions,
    extra_cuts: &[f64],
) -> Result<SolutionPath, OdeError> {
    propagate_with_source(q, energy, None, init, interval, opts, extra_cuts)
}

/// As [`source_response`], with extra node cuts.
pub fn source_response_with_cuts(
    q: &Profile,
    energy: f64,
    source: &Profile,
    interval: (f64, f64),
    opts: &SolverOptions,
    extra_cuts: &[f64],
) -> Result<SolutionPath, OdeError> {
    let mut cuts = source.breakpoints();
    cuts.extend_from_slice(extra_cuts);
    propagate_with_source(q, energy, Some(source), (ZERO, ZERO), interval, opts, &cuts)
}

fn propagate_with_source(
    q: &Profile,
    energy: f64,
    source: Option<&Profile>,
    init: (Complex64, Complex64),
    interval: (f64, f64),
    opts: &SolverOptions,
    extra_cuts: &[f64],
) -> Result<SolutionPath, OdeError> {
    let pieces = build_pieces(q, energy, interval, opts, extra_cuts)?;
    let mut xs = vec![interval.0];
    let mut u = vec![init.0];
    let mut du = vec![init.1];
    let mut y = init;
    for p in &pieces {
        let h = (p.hi - p.lo) / p.nodes as f64;
        let exact = match (p.constant, source) {
            (Some(w), None) => Some(w),
            (Some(w), Some(s)) if s.constant_on(p.lo, p.hi) == Some(ZERO) => Some(w),
            _ => None,
        };
        match exact {
            Some(w) => {
                let step = constant_step(w, h);
                for i in 0..p.nodes {
                    y = apply2(&step, y);
                    let x = if i + 1 == p.nodes {
                        p.hi
                    } else {
                        p.lo + h * (i + 1) as f64
                    };
                    xs.push(x);
                    u.push(y.0);
                    du.push(y.1);
                }
            }
            None => {
                let sub = opts.rk_substeps.max(1);
                let hs = h / sub as f64;
                let mid = 0.5 * (p.lo + p.hi);
                for i in 0..p.nodes {
                    let x0 = p.lo + h * i as f64;
                    for j in 0..sub {
                        y = rk4_step(q, energy, source, mid, x0 + hs * j as f64, hs, y);
                    }
                    let x = if i + 1 == p.nodes {
                        p.hi
                    } else {
                        p.lo + h * (i + 1) as f64
                    };
                    xs.push(x);
                    u.push(y.0);
                    du.push(y.1);
                }
            }
        }
        if !y.0.re.is_finite() || !y.1.re.is_finite() || !y.0.im.is_finite() || !y.1.im.is_finite()
        {
            return Err(OdeError::NonFinite { at: p.hi });
        }
    }
    Ok(SolutionPath { xs, u, du })
}

/// Transfer matrix of `-u'' + q u = E u` across the interval.
///
/// Columns are the propagations of `(1, 0)` and `(0, 1)`. Piecewise-constant
/// coefficients use per-piece closed-form propagators without node stepping.
pub fn transfer_matrix(
    q: &Profile,
    energy: f64,
    interval: (f64, f64),
    opts: &SolverOptions,
) -> Result<TransferMatrix, OdeError> {
    if interval.1 < interval.0 {
        return Err(OdeError::BadInterval);
    }
    if interval.1 == interval.0 {
        return Ok(TransferMatrix::identity(energy, interval.0));
    }
    let pieces = build_pieces(q, energy, interval, opts, &[])?;
    let all_const = pieces.iter().all(|p| p.constant.is_some());
    if all_const {
        let mut m = TransferMatrix::identity(energy, interval.0);
        for p in &pieces {
            let step = constant_step(p.constant.unwrap(), p.hi - p.lo);
            let next = TransferMatrix {
                m: step,
                energy,
                interval: (p.lo, p.hi),
            };
            m = m.then(&next);
        }
        if !m.det().re.is_finite() {
            return Err(OdeError::NonFinite { at: interval.1 });
        }
        Ok(m)
    } else {
        let col0 = propagate(q, energy, (ONE, ZERO), interval, opts)?;
        let col1 = propagate(q, energy, (ZERO, ONE), interval, opts)?;
        let (u0, du0) = col0.terminal();
        let (u1, du1) = col1.terminal();
        Ok(TransferMatrix {
            m: [[u0, u1], [du0, du1]],
            energy,
            interval,
        })
    }
}
