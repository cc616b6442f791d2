//! Compactly supported potential profiles.
//!
//! A [`Profile`] is a function that vanishes outside a closed interval. Two
//! representations are supported: piecewise polynomials, for which
//! quadrature, products and antiderivatives are exact, and uniform grid
//! samples for arbitrary user data, handled with fourth-order composite
//! rules. Every operation is a pure function; profiles are immutable after
//! construction and safe to share across sweep workers.

use num_complex::Complex64;
use thiserror::Error;

/// Default relative quadrature tolerance surfaced to callers.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("segment breakpoints must be finite and strictly increasing")]
    BadBreakpoints,
    #[error("grid profiles need at least two samples and a positive step")]
    BadGrid,
    #[error("real-tagged profile has a nonzero imaginary part")]
    NotReal,
    #[error("declared support must contain all segments")]
    SupportTooSmall,
    #[error("operation requires a real-valued profile")]
    RealRequired,
    #[error("values must be finite")]
    NonFinite,
}

/// Codomain tag carried by every profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Codomain {
    Real,
    Complex,
}

/// One polynomial piece on `[lo, hi)`, coefficients in the local variable
/// `t = x - lo`.
#[derive(Debug, Clone)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub coeffs: Vec<Complex64>,
}

impl Segment {
    fn eval(&self, x: f64) -> Complex64 {
        poly_eval(&self.coeffs, x - self.lo)
    }

    fn integral(&self) -> Complex64 {
        let len = self.hi - self.lo;
        let mut acc = ZERO;
        let mut pow = len;
        for (j, &c) in self.coeffs.iter().enumerate() {
            acc += c * pow / (j as f64 + 1.0);
            pow *= len;
        }
        acc
    }
}

#[derive(Debug, Clone)]
enum Data {
    /// Sorted, non-overlapping segments; gaps between segments are zero.
    Piecewise(Vec<Segment>),
    /// Uniform samples on `support`, step `(hi - lo) / (n - 1)`.
    Grid { step: f64, samples: Vec<Complex64> },
}

/// A compactly supported real- or complex-valued function.
#[derive(Debug, Clone)]
pub struct Profile {
    support: (f64, f64),
    codomain: Codomain,
    data: Data,
}

impl Profile {
    /// Empty profile, identically zero.
    pub fn zero() -> Self {
        Profile {
            support: (0.0, 0.0),
            codomain: Codomain::Real,
            data: Data::Piecewise(Vec::new()),
        }
    }

    pub fn piecewise_real(segments: Vec<(f64, f64, Vec<f64>)>) -> Result<Self, ProfileError> {
        let segs = segments
            .into_iter()
            .map(|(lo, hi, cs)| Segment {
                lo,
                hi,
                coeffs: cs.into_iter().map(|c| Complex64::new(c, 0.0)).collect(),
            })
            .collect();
        Self::from_segments(segs, Codomain::Real)
    }

    pub fn piecewise_complex(
        segments: Vec<(f64, f64, Vec<Complex64>)>,
    ) -> Result<Self, ProfileError> {
        let segs = segments
            .into_iter()
            .map(|(lo, hi, coeffs)| Segment { lo, hi, coeffs })
            .collect();
        Self::from_segments(segs, Codomain::Complex)
    }

    pub(crate) fn from_segments(
        mut segs: Vec<Segment>,
        codomain: Codomain,
    ) -> Result<Self, ProfileError> {
        segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        for s in &segs {
            if !s.lo.is_finite() || !s.hi.is_finite() || s.lo >= s.hi {
                return Err(ProfileError::BadBreakpoints);
            }
            if s.coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(ProfileError::NonFinite);
            }
            if codomain == Codomain::Real && s.coeffs.iter().any(|c| c.im != 0.0) {
                return Err(ProfileError::NotReal);
            }
        }
        for w in segs.windows(2) {
            if w[0].hi > w[1].lo {
                return Err(ProfileError::BadBreakpoints);
            }
        }
        let support = match (segs.first(), segs.last()) {
            (Some(f), Some(l)) => (f.lo, l.hi),
            _ => (0.0, 0.0),
        };
        Ok(Profile {
            support,
            codomain,
            data: Data::Piecewise(segs),
        })
    }

    /// Constant value on one interval.
    pub fn constant(value: f64, lo: f64, hi: f64) -> Result<Self, ProfileError> {
        Self::piecewise_real(vec![(lo, hi, vec![value])])
    }

    pub fn grid_real(lo: f64, hi: f64, samples: Vec<f64>) -> Result<Self, ProfileError> {
        Self::grid(
            lo,
            hi,
            samples.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
            Codomain::Real,
        )
    }

    pub fn grid_complex(lo: f64, hi: f64, samples: Vec<Complex64>) -> Result<Self, ProfileError> {
        Self::grid(lo, hi, samples, Codomain::Complex)
    }

    fn grid(lo: f64, hi: f64, samples: Vec<Complex64>, codomain: Codomain) -> Result<Self, ProfileError> {
        if samples.len() < 2 || !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(ProfileError::BadGrid);
        }
        if samples.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(ProfileError::NonFinite);
        }
        if codomain == Codomain::Real && samples.iter().any(|c| c.im != 0.0) {
            return Err(ProfileError::NotReal);
        }
        let step = (hi - lo) / (samples.len() - 1) as f64;
        Ok(Profile {
            support: (lo, hi),
            codomain,
            data: Data::Grid { step, samples },
        })
    }

    /// Widens the declared support; values stay unchanged (zero on the
    /// added margin).
    pub fn with_support(mut self, lo: f64, hi: f64) -> Result<Self, ProfileError> {
        if lo > self.support.0 || hi < self.support.1 {
            return Err(ProfileError::SupportTooSmall);
        }
        match self.data {
            Data::Piecewise(_) => {
                self.support = (lo, hi);
                Ok(self)
            }
            // Resample so the grid covers the declared interval.
            Data::Grid { .. } => Ok(self.resample(lo, hi, self.grid_len().max(64))),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn is_empty(&self) -> bool {
        match &self.data {
            Data::Piecewise(s) => s.is_empty(),
            Data::Grid { samples, .. } => samples.iter().all(|c| *c == ZERO),
        }
    }

    pub fn is_piecewise(&self) -> bool {
        matches!(self.data, Data::Piecewise(_))
    }

    fn grid_len(&self) -> usize {
        match &self.data {
            Data::Grid { samples, .. } => samples.len(),
            Data::Piecewise(_) => 0,
        }
    }

    /// Pointwise value; zero outside the support.
    pub fn eval(&self, x: f64) -> Complex64 {
        if x < self.support.0 || x > self.support.1 {
            return ZERO;
        }
        match &self.data {
            Data::Piecewise(segs) => {
                let idx = segs.partition_point(|s| s.lo <= x);
                if idx == 0 {
                    return ZERO;
                }
                let s = &segs[idx - 1];
                if x < s.hi || (x == s.hi && idx == segs.len()) {
                    s.eval(x)
                } else {
                    ZERO
                }
            }
            Data::Grid { step, samples } => {
                grid_eval(samples, self.support.0, *step, x)
            }
        }
    }

    pub fn eval_re(&self, x: f64) -> f64 {
        self.eval(x).re
    }

    /// All breakpoints (segment edges or support ends), sorted and deduped.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = match &self.data {
            Data::Piecewise(segs) => {
                let mut v = Vec::with_capacity(2 * segs.len());
                for s in segs {
                    v.push(s.lo);
                    v.push(s.hi);
                }
                v
            }
            Data::Grid { .. } => vec![self.support.0, self.support.1],
        };
        pts.push(self.support.0);
        pts.push(self.support.1);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Returns the constant value if the profile is constant on the whole
    /// open interval `(lo, hi)`, `None` otherwise. Gaps count as zero.
    pub fn constant_on(&self, lo: f64, hi: f64) -> Option<Complex64> {
        if hi <= self.support.0 || lo >= self.support.1 {
            return Some(ZERO);
        }
        match &self.data {
            Data::Piecewise(segs) => {
                if segs.is_empty() {
                    return Some(ZERO);
                }
                let mid = 0.5 * (lo + hi);
                let idx = segs.partition_point(|s| s.lo <= mid);
                if idx == 0 {
                    // mid lies before the first segment
                    return if hi <= segs[0].lo { Some(ZERO) } else { None };
                }
                let s = &segs[idx - 1];
                if mid < s.hi {
                    // interval must sit inside this segment
                    if lo >= s.lo - 1e-14 && hi <= s.hi + 1e-14 {
                        let deg = s.coeffs.iter().rposition(|c| *c != ZERO);
                        match deg {
                            None => Some(ZERO),
                            Some(0) => Some(s.coeffs[0]),
                            Some(_) => None,
                        }
                    } else {
                        None
                    }
                } else {
                    // mid lies in a gap after segment idx-1
                    let next_lo = segs.get(idx).map_or(f64::INFINITY, |s| s.lo);
                    if lo >= s.hi - 1e-14 && hi <= next_lo + 1e-14 {
                        Some(ZERO)
                    } else {
                        None
                    }
                }
            }
            Data::Grid { .. } => None,
        }
    }

    /// Value at `x` as seen from the piece containing `piece_interior`:
    /// at a breakpoint this returns the one-sided limit of that piece's
    /// polynomial instead of the right-segment value `eval` would pick.
    pub(crate) fn eval_in_piece(&self, x: f64, piece_interior: f64) -> Complex64 {
        match &self.data {
            Data::Piecewise(segs) => {
                if piece_interior < self.support.0 || piece_interior > self.support.1 {
                    return ZERO;
                }
                let idx = segs.partition_point(|s| s.lo <= piece_interior);
                if idx == 0 {
                    return ZERO;
                }
                let s = &segs[idx - 1];
                if piece_interior < s.hi || (piece_interior == s.hi && idx == segs.len()) {
                    s.eval(x)
                } else {
                    ZERO
                }
            }
            Data::Grid { .. } => self.eval(x),
        }
    }

    /// Crude upper estimate of `sup |f|` on `[lo, hi]` by probing.
    pub fn max_abs_on(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return self.eval(lo).norm();
        }
        let n = 64;
        let mut m: f64 = 0.0;
        for i in 0..=n {
            let x = lo + (hi - lo) * i as f64 / n as f64;
            m = m.max(self.eval(x).norm());
        }
        m
    }

    /// Exact integral for piecewise data, composite fourth-order rule for
    /// grids.
    pub fn integral(&self) -> Complex64 {
        match &self.data {
            Data::Piecewise(segs) => segs.iter().map(Segment::integral).sum(),
            Data::Grid { step, samples } => simpson(samples, *step),
        }
    }

    /// Integral restricted to `[a, b]`.
    pub fn integral_over(&self, a: f64, b: f64) -> Complex64 {
        if b <= a {
            return ZERO;
        }
        let a = a.max(self.support.0);
        let b = b.min(self.support.1);
        if b <= a {
            return ZERO;
        }
        match &self.data {
            Data::Piecewise(segs) => {
                let mut acc = ZERO;
                for s in segs {
                    let lo = s.lo.max(a);
                    let hi = s.hi.min(b);
                    if hi <= lo {
                        continue;
                    }
                    // integrate the shifted polynomial over [lo, hi]
                    let shifted = Segment {
                        lo,
                        hi,
                        coeffs: poly_shift(&s.coeffs, lo - s.lo),
                    };
                    acc += shifted.integral();
                }
                acc
            }
            Data::Grid { .. } => {
                // resample the clipped window and integrate
                let n = (self.grid_len().max(256)).next_power_of_two();
                let clipped = self.resample(a, b, n + 1);
                clipped.integral()
            }
        }
    }

    /// `∫ conj(self) · other`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Profile) -> Complex64 {
        self.conj().product(other).integral()
    }

    pub fn norm_l2(&self) -> f64 {
        self.inner_product(self).re.max(0.0).sqrt()
    }

    pub fn has_zero_mean(&self, tol: f64) -> bool {
        self.integral().norm() <= tol
    }

    pub fn conj(&self) -> Profile {
        let data = match &self.data {
            Data::Piecewise(segs) => Data::Piecewise(
                segs.iter()
                    .map(|s| Segment {
                        lo: s.lo,
                        hi: s.hi,
                        coeffs: s.coeffs.iter().map(|c| c.conj()).collect(),
                    })
                    .collect(),
            ),
            Data::Grid { step, samples } => Data::Grid {
                step: *step,
                samples: samples.iter().map(|c| c.conj()).collect(),
            },
        };
        Profile {
            support: self.support,
            codomain: self.codomain,
            data,
        }
    }

    /// Multiplies values by a complex scalar.
    pub fn scaled(&self, c: Complex64) -> Profile {
        let codomain = if self.codomain == Codomain::Real && c.im == 0.0 {
            Codomain::Real
        } else {
            Codomain::Complex
        };
        let data = match &self.data {
            Data::Piecewise(segs) => Data::Piecewise(
                segs.iter()
                    .map(|s| Segment {
                        lo: s.lo,
                        hi: s.hi,
                        coeffs: s.coeffs.iter().map(|&a| a * c).collect(),
                    })
                    .collect(),
            ),
            Data::Grid { step, samples } => Data::Grid {
                step: *step,
                samples: samples.iter().map(|&a| a * c).collect(),
            },
        };
        Profile {
            support: self.support,
            codomain,
            data,
        }
    }

    /// Argument substitution `x ↦ f((x - shift) / scale)`, `scale > 0`.
    /// The support maps to `scale * [lo, hi] + shift`.
    pub fn affine_arg(&self, scale: f64, shift: f64) -> Profile {
        assert!(scale > 0.0 && scale.is_finite() && shift.is_finite());
        let map = |x: f64| x * scale + shift;
        let data = match &self.data {
            Data::Piecewise(segs) => Data::Piecewise(
                segs.iter()
                    .map(|s| {
                        // p(t/scale) in the new local variable
                        let mut coeffs = s.coeffs.clone();
                        let mut inv = 1.0;
                        for c in coeffs.iter_mut() {
                            *c *= inv;
                            inv /= scale;
                        }
                        Segment {
                            lo: map(s.lo),
                            hi: map(s.hi),
                            coeffs,
                        }
                    })
                    .collect(),
            ),
            Data::Grid { step, samples } => Data::Grid {
                step: step * scale,
                samples: samples.clone(),
            },
        };
        Profile {
            support: (map(self.support.0), map(self.support.1)),
            codomain: self.codomain,
            data,
        }
    }

    /// `x ↦ f(x / eps)`; support scales by `eps`.
    pub fn scale_arg(&self, eps: f64) -> Profile {
        self.affine_arg(eps, 0.0)
    }

    /// Affine rescaling of the support onto `[lo, hi]`.
    pub fn rescaled_to(&self, lo: f64, hi: f64) -> Result<Profile, ProfileError> {
        if hi <= lo || self.support.1 <= self.support.0 {
            return Err(ProfileError::BadBreakpoints);
        }
        let scale = (hi - lo) / (self.support.1 - self.support.0);
        let shift = lo - self.support.0 * scale;
        Ok(self.affine_arg(scale, shift))
    }

    /// Pointwise sum. Exact when both operands are piecewise; otherwise the
    /// result is sampled on a merged grid.
    pub fn add(&self, other: &Profile) -> Profile {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.support.0.min(other.support.0);
        let hi = self.support.1.max(other.support.1);
        match (&self.data, &other.data) {
            (Data::Piecewise(_), Data::Piecewise(_)) => {
                let cuts = merged_breakpoints(self, other, lo, hi);
                let mut segs = Vec::with_capacity(cuts.len());
                for w in cuts.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let pa = self.local_poly(a, b);
                    let pb = other.local_poly(a, b);
                    let coeffs = poly_add(&pa, &pb);
                    if coeffs.iter().any(|c| *c != ZERO) {
                        segs.push(Segment { lo: a, hi: b, coeffs });
                    }
                }
                let codomain = join_codomain(self.codomain, other.codomain);
                let mut p = Profile::from_segments(segs, codomain).expect("valid merge");
                if p.support.0 > lo || p.support.1 < hi {
                    p = p.with_support(lo, hi).expect("hull contains segments");
                }
                p
            }
            _ => {
                let n = self.merge_grid_nodes(other);
                let mut samples = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let x = lo + (hi - lo) * i as f64 / n as f64;
                    samples.push(self.eval(x) + other.eval(x));
                }
                Profile {
                    support: (lo, hi),
                    codomain: join_codomain(self.codomain, other.codomain),
                    data: Data::Grid {
                        step: (hi - lo) / n as f64,
                        samples,
                    },
                }
            }
        }
    }

    /// Pointwise product; supported on the overlap of supports.
    pub fn product(&self, other: &Profile) -> Profile {
        let lo = self.support.0.max(other.support.0);
        let hi = self.support.1.min(other.support.1);
        if hi <= lo || self.is_empty() || other.is_empty() {
            return Profile::zero();
        }
        match (&self.data, &other.data) {
            (Data::Piecewise(_), Data::Piecewise(_)) => {
                let cuts = merged_breakpoints(self, other, lo, hi);
                let mut segs = Vec::new();
                for w in cuts.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let pa = self.local_poly(a, b);
                    let pb = other.local_poly(a, b);
                    if pa.is_empty() || pb.is_empty() {
                        continue;
                    }
                    let coeffs = poly_mul(&pa, &pb);
                    if coeffs.iter().any(|c| *c != ZERO) {
                        segs.push(Segment { lo: a, hi: b, coeffs });
                    }
                }
                let codomain = join_codomain(self.codomain, other.codomain);
                Profile::from_segments(segs, codomain).expect("valid merge")
            }
            _ => {
                let n = self.merge_grid_nodes(other);
                let mut samples = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let x = lo + (hi - lo) * i as f64 / n as f64;
                    samples.push(self.eval(x) * other.eval(x));
                }
                Profile {
                    support: (lo, hi),
                    codomain: join_codomain(self.codomain, other.codomain),
                    data: Data::Grid {
                        step: (hi - lo) / n as f64,
                        samples,
                    },
                }
            }
        }
    }

    /// Exact derivative for piecewise data (defined away from breakpoints),
    /// fourth-order finite differences for grids.
    pub fn derivative(&self) -> Profile {
        match &self.data {
            Data::Piecewise(segs) => {
                let dsegs = segs
                    .iter()
                    .map(|s| {
                        let coeffs = if s.coeffs.len() <= 1 {
                            vec![ZERO]
                        } else {
                            s.coeffs[1..]
                                .iter()
                                .enumerate()
                                .map(|(j, &c)| c * (j as f64 + 1.0))
                                .collect()
                        };
                        Segment {
                            lo: s.lo,
                            hi: s.hi,
                            coeffs,
                        }
                    })
                    .collect();
                Profile {
                    support: self.support,
                    codomain: self.codomain,
                    data: Data::Piecewise(dsegs),
                }
            }
            Data::Grid { step, samples } => {
                let d = fd_derivative(samples, *step);
                Profile {
                    support: self.support,
                    codomain: self.codomain,
                    data: Data::Grid {
                        step: *step,
                        samples: d,
                    },
                }
            }
        }
    }

    /// First or second antiderivative, integrating from the far left.
    ///
    /// The first antiderivative is constant right of the support (the total
    /// integral); the second grows affinely there unless the profile has
    /// zero mean.
    pub fn antiderivative(&self, order: u8) -> TailedProfile {
        assert!(order == 1 || order == 2, "order must be 1 or 2");
        let first = self.antiderivative_once();
        if order == 1 {
            return first;
        }
        let window = first.window.antiderivative_once();
        TailedProfile {
            tail_slope: first.tail_value,
            tail_value: window.tail_value,
            window: window.window,
        }
    }

    fn antiderivative_once(&self) -> TailedProfile {
        match &self.data {
            Data::Piecewise(segs) => {
                let mut out = Vec::new();
                let mut acc = ZERO;
                let mut cursor = self.support.0;
                for s in segs {
                    if s.lo > cursor {
                        // constant plateau across the gap
                        if acc != ZERO {
                            out.push(Segment {
                                lo: cursor,
                                hi: s.lo,
                                coeffs: vec![acc],
                            });
                        } else {
                            out.push(Segment {
                                lo: cursor,
                                hi: s.lo,
                                coeffs: vec![ZERO],
                            });
                        }
                    }
                    let mut coeffs = vec![acc];
                    for (j, &c) in s.coeffs.iter().enumerate() {
                        coeffs.push(c / (j as f64 + 1.0));
                    }
                    acc = poly_eval(&coeffs, s.hi - s.lo);
                    out.push(Segment {
                        lo: s.lo,
                        hi: s.hi,
                        coeffs,
                    });
                    cursor = s.hi;
                }
                if cursor < self.support.1 {
                    out.push(Segment {
                        lo: cursor,
                        hi: self.support.1,
                        coeffs: vec![acc],
                    });
                }
                let window = Profile {
                    support: self.support,
                    codomain: self.codomain,
                    data: Data::Piecewise(out),
                };
                TailedProfile {
                    window,
                    tail_value: acc,
                    tail_slope: ZERO,
                }
            }
            Data::Grid { step, samples } => {
                let cum = cumulative_integral(samples, *step);
                let tail = *cum.last().unwrap();
                let window = Profile {
                    support: self.support,
                    codomain: self.codomain,
                    data: Data::Grid {
                        step: *step,
                        samples: cum,
                    },
                };
                TailedProfile {
                    window,
                    tail_value: tail,
                    tail_slope: ZERO,
                }
            }
        }
    }

    /// Resamples onto `n` uniform nodes over `[lo, hi]`.
    pub fn resample(&self, lo: f64, hi: f64, n: usize) -> Profile {
        let n = n.max(2);
        let step = (hi - lo) / (n - 1) as f64;
        let samples = (0..n).map(|i| self.eval(lo + step * i as f64)).collect();
        Profile {
            support: (lo, hi),
            codomain: self.codomain,
            data: Data::Grid { step, samples },
        }
    }

    pub fn require_real(&self, tol: f64) -> Result<(), ProfileError> {
        if self.codomain == Codomain::Real {
            return Ok(());
        }
        let ok = match &self.data {
            Data::Piecewise(segs) => segs
                .iter()
                .all(|s| s.coeffs.iter().all(|c| c.im.abs() <= tol)),
            Data::Grid { samples, .. } => samples.iter().all(|c| c.im.abs() <= tol),
        };
        if ok {
            Ok(())
        } else {
            Err(ProfileError::RealRequired)
        }
    }

    // Polynomial of this profile on [a, b] in the local variable t = x - a.
    // Returns an empty vec when the profile vanishes there. Panics if [a, b]
    // straddles a breakpoint, so callers must cut first.
    fn local_poly(&self, a: f64, b: f64) -> Vec<Complex64> {
        let mid = 0.5 * (a + b);
        if mid < self.support.0 || mid > self.support.1 {
            return Vec::new();
        }
        match &self.data {
            Data::Piecewise(segs) => {
                let idx = segs.partition_point(|s| s.lo <= mid);
                if idx == 0 {
                    return Vec::new();
                }
                let s = &segs[idx - 1];
                if mid < s.hi {
                    poly_shift(&s.coeffs, a - s.lo)
                } else {
                    Vec::new()
                }
            }
            Data::Grid { .. } => unreachable!("local_poly is piecewise-only"),
        }
    }

    fn merge_grid_nodes(&self, other: &Profile) -> usize {
        let mut n = 0usize;
        if let Data::Grid { samples, .. } = &self.data {
            n = n.max(samples.len() - 1);
        }
        if let Data::Grid { samples, .. } = &other.data {
            n = n.max(samples.len() - 1);
        }
        (2 * n.max(512)).min(1 << 20)
    }
}

fn join_codomain(a: Codomain, b: Codomain) -> Codomain {
    if a == Codomain::Real && b == Codomain::Real {
        Codomain::Real
    } else {
        Codomain::Complex
    }
}

fn merged_breakpoints(a: &Profile, b: &Profile, lo: f64, hi: f64) -> Vec<f64> {
    let mut cuts: Vec<f64> = a
        .breakpoints()
        .into_iter()
        .chain(b.breakpoints())
        .filter(|&x| x > lo && x < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    // drop zero-width cells produced by nearly identical breakpoints
    let mut out = vec![cuts[0]];
    for &c in &cuts[1..] {
        if c - out.last().unwrap() > 1e-15 {
            out.push(c);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// polynomial helpers (local coordinates)

fn poly_eval(coeffs: &[Complex64], t: f64) -> Complex64 {
    let mut acc = ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Re-expresses `p(t)` as a polynomial in `t' = t - d`: returns `q` with
/// `q(t') = p(t' + d)`.
fn poly_shift(coeffs: &[Complex64], d: f64) -> Vec<Complex64> {
    if d == 0.0 {
        return coeffs.to_vec();
    }
    let n = coeffs.len();
    let mut out = vec![ZERO; n];
    for (j, &c) in coeffs.iter().enumerate() {
        // c * (t' + d)^j expanded by the binomial theorem
        let mut binom = 1.0f64;
        let mut dpow = 1.0f64;
        for i in (0..=j).rev() {
            out[i] += c * binom * dpow;
            if i > 0 {
                binom *= i as f64 / (j - i + 1) as f64;
                dpow *= d;
            }
        }
    }
    out
}

fn poly_add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().max(b.len()).max(1);
    let mut out = vec![ZERO; n];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// uniform-grid helpers

/// Composite Simpson; falls back to a 3/8 block when the interval count is
/// odd. Exact for cubics.
pub(crate) fn simpson(samples: &[Complex64], step: f64) -> Complex64 {
    let n = samples.len() - 1;
    if n == 0 {
        return ZERO;
    }
    if n == 1 {
        return (samples[0] + samples[1]) * 0.5 * step;
    }
    let (even_part, tail) = if n.is_multiple_of(2) {
        (n, ZERO)
    } else {
        // 3/8 rule on the last three intervals
        let m = n - 3;
        let t = (samples[m]
            + samples[m + 1] * 3.0
            + samples[m + 2] * 3.0
            + samples[m + 3])
            * (3.0 * step / 8.0);
        (m, t)
    };
    let mut acc = ZERO;
    let mut i = 0;
    while i + 2 <= even_part {
        acc += (samples[i] + samples[i + 1] * 4.0 + samples[i + 2]) * (step / 3.0);
        i += 2;
    }
    acc + tail
}

/// Cumulative integral with fourth-order per-interval Newton–Cotes weights.
pub(crate) fn cumulative_integral(samples: &[Complex64], step: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut out = vec![ZERO; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + (samples[i - 1] + samples[i]) * 0.5 * step;
        }
        return out;
    }
    let h24 = step / 24.0;
    for i in 0..n - 1 {
        let inc = if i == 0 {
            (samples[0] * 9.0 + samples[1] * 19.0 - samples[2] * 5.0 + samples[3]) * h24
        } else if i == n - 2 {
            (samples[n - 1] * 9.0 + samples[n - 2] * 19.0 - samples[n - 3] * 5.0
                + samples[n - 4])
                * h24
        } else {
            (-samples[i - 1] + samples[i] * 13.0 + samples[i + 1] * 13.0 - samples[i + 2]) * h24
        };
        out[i + 1] = out[i] + inc;
    }
    out
}

/// Cubic Lagrange interpolation on a clamped four-point stencil.
fn grid_eval(samples: &[Complex64], lo: f64, step: f64, x: f64) -> Complex64 {
    let n = samples.len();
    let pos = (x - lo) / step;
    if n < 4 {
        // linear fallback for tiny grids
        let i = (pos.floor() as usize).min(n - 2);
        let t = pos - i as f64;
        return samples[i] * (1.0 - t) + samples[i + 1] * t;
    }
    let i = (pos.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
    let t = pos - i as f64; // in [0, 3] over the stencil
    let mut acc = ZERO;
    for (j, &s) in samples[i..i + 4].iter().enumerate() {
        let mut w = 1.0;
        for m in 0..4 {
            if m != j {
                w *= (t - m as f64) / (j as f64 - m as f64);
            }
        }
        acc += s * w;
    }
    acc
}

/// Fourth-order finite differences on uniform samples.
fn fd_derivative(samples: &[Complex64], step: f64) -> Vec<Complex64> {
    let n = samples.len();
    let mut out = vec![ZERO; n];
    if n < 5 {
        for (i, slot) in out.iter_mut().enumerate() {
            let (a, b) = if i == 0 {
                (0, 1)
            } else if i == n - 1 {
                (n - 2, n - 1)
            } else {
                (i - 1, i + 1)
            };
            *slot = (samples[b] - samples[a]) / ((b - a) as f64 * step);
        }
        return out;
    }
    let inv12h = 1.0 / (12.0 * step);
    for i in 2..n - 2 {
        out[i] = (samples[i - 2] - samples[i - 1] * 8.0 + samples[i + 1] * 8.0
            - samples[i + 2])
            * inv12h;
    }
    // one-sided fourth-order stencils at the edges
    let s = samples;
    out[0] = (s[0] * -25.0 + s[1] * 48.0 - s[2] * 36.0 + s[3] * 16.0 - s[4] * 3.0) * inv12h;
    out[1] = (s[0] * -3.0 - s[1] * 10.0 + s[2] * 18.0 - s[3] * 6.0 + s[4]) * inv12h;
    out[n - 2] =
        (s[n - 1] * 3.0 + s[n - 2] * 10.0 - s[n - 3] * 18.0 + s[n - 4] * 6.0 - s[n - 5]) * inv12h;
    out[n - 1] = (s[n - 1] * 25.0 - s[n - 2] * 48.0 + s[n - 3] * 36.0 - s[n - 4] * 16.0
        + s[n - 5] * 3.0)
        * inv12h;
    out
}

// ---------------------------------------------------------------------------
// tailed profiles

/// A function that vanishes far left, agrees with `window` on the support
/// interval, and continues affinely to the right: antiderivatives of
/// compactly supported profiles and the half-bound states built from them.
#[derive(Debug, Clone)]
pub struct TailedProfile {
    window: Profile,
    tail_value: Complex64,
    tail_slope: Complex64,
}

impl TailedProfile {
    pub fn window(&self) -> &Profile {
        &self.window
    }

    /// Value at the right end of the window; the constant tail for
    /// zero-slope tails.
    pub fn tail_value(&self) -> Complex64 {
        self.tail_value
    }

    pub fn tail_slope(&self) -> Complex64 {
        self.tail_slope
    }

    /// The constant tail value, if the tail really is constant.
    pub fn tail_constant(&self, tol: f64) -> Option<Complex64> {
        if self.tail_slope.norm() <= tol {
            Some(self.tail_value)
        } else {
            None
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let (lo, hi) = self.window.support();
        if x < lo {
            ZERO
        } else if x <= hi {
            self.window.eval(x)
        } else {
            self.tail_value + self.tail_slope * (x - hi)
        }
    }

    /// Materializes the function on `[a, b]` as an ordinary profile,
    /// including the zero region and the affine tail.
    pub fn as_profile_on(&self, a: f64, b: f64) -> Profile {
        let (_lo, hi) = self.window.support();
        match &self.window.data {
            Data::Piecewise(segs) => {
                let mut out: Vec<Segment> = Vec::with_capacity(segs.len() + 1);
                for s in segs {
                    let slo = s.lo.max(a);
                    let shi = s.hi.min(b);
                    if shi <= slo {
                        continue;
                    }
                    out.push(Segment {
                        lo: slo,
                        hi: shi,
                        coeffs: poly_shift(&s.coeffs, slo - s.lo),
                    });
                }
                if b > hi {
                    let start = hi.max(a);
                    let base = self.tail_value + self.tail_slope * (start - hi);
                    out.push(Segment {
                        lo: start,
                        hi: b,
                        coeffs: vec![base, self.tail_slope],
                    });
                }
                let codomain = if self.window.codomain == Codomain::Real
                    && self.tail_value.im == 0.0
                    && self.tail_slope.im == 0.0
                {
                    Codomain::Real
                } else {
                    Codomain::Complex
                };
                let p = Profile::from_segments(out, codomain).expect("valid tail profile");
                let (plo, phi) = p.support;
                p.with_support(a.min(plo), b.max(phi)).expect("hull")
            }
            Data::Grid { step, .. } => {
                let n = (((b - a) / step).ceil() as usize).clamp(64, 1 << 20);
                let step = (b - a) / n as f64;
                let samples = (0..=n).map(|i| self.eval(a + step * i as f64)).collect();
                Profile {
                    support: (a, b),
                    codomain: Codomain::Complex,
                    data: Data::Grid { step, samples },
                }
            }
        }
    }

    /// Weighted sum of tailed profiles (same representation kind).
    pub fn linear_combination(terms: &[(Complex64, &TailedProfile)]) -> TailedProfile {
        assert!(!terms.is_empty());
        let lo = terms
            .iter()
            .map(|(_, t)| t.window.support().0)
            .fold(f64::INFINITY, f64::min);
        let hi = terms
            .iter()
            .map(|(_, t)| t.window.support().1)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut window = Profile::zero();
        let mut tail_value = ZERO;
        let mut tail_slope = ZERO;
        for &(c, t) in terms {
            window = window.add(&t.as_profile_on(lo, hi).scaled(c));
            // tail measured at the combined right edge
            tail_value += (t.tail_value + t.tail_slope * (hi - t.window.support().1)) * c;
            tail_slope += t.tail_slope * c;
        }
        TailedProfile {
            window,
            tail_value,
            tail_slope,
        }
    }

    pub fn norm_l2_window(&self) -> f64 {
        self.window.norm_l2()
    }
}

// ---------------------------------------------------------------------------
// gauge utilities

/// Cumulative phase of a magnetic potential: `a(x) = ∫_{-∞}^x A` and the
/// total flux `mu = ∫ A`.
#[derive(Debug, Clone)]
pub struct GaugeData {
    a: TailedProfile,
    mu: f64,
}

impl GaugeData {
    /// Identity gauge (zero magnetic potential).
    pub fn trivial() -> Self {
        GaugeData {
            a: Profile::zero().antiderivative(1),
            mu: 0.0,
        }
    }

    pub fn phase(&self) -> &TailedProfile {
        &self.a
    }

    pub fn phase_at(&self, x: f64) -> f64 {
        self.a.eval(x).re
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Integrates a real magnetic potential into its cumulative phase and flux.
pub fn gauge_phase(a_potential: &Profile) -> Result<GaugeData, ProfileError> {
    a_potential.require_real(1e-12)?;
    let a = a_potential.antiderivative(1);
    let mu = a.tail_value().re;
    Ok(GaugeData { a, mu })
}

/// Multiplies a profile by the unimodular factor `exp(-i a(x))`.
///
/// Where the cumulative phase is constant across a whole piece the factor is
/// applied exactly and piecewise data stays piecewise; otherwise the result
/// is sampled. The pointwise modulus and the support are preserved either
/// way.
pub fn gauge_twist(f: &Profile, gauge: &GaugeData) -> Profile {
    gauge_twist_sampled(f, gauge, 8192)
}

pub fn gauge_twist_sampled(f: &Profile, gauge: &GaugeData, samples: usize) -> Profile {
    if f.is_empty() {
        return f.clone();
    }
    let (a_lo, a_hi) = gauge.a.window().support();
    if let Data::Piecewise(segs) = &f.data {
        // exact path: every piece lies where a(x) is constant
        let phase_const_everywhere = segs.iter().all(|s| {
            s.hi <= a_lo || s.lo >= a_hi || gauge.a.window().constant_on(s.lo, s.hi).is_some()
        });
        if phase_const_everywhere {
            let out = segs
                .iter()
                .map(|s| {
                    let phase = gauge.phase_at(0.5 * (s.lo + s.hi));
                    let factor = Complex64::from_polar(1.0, -phase);
                    Segment {
                        lo: s.lo,
                        hi: s.hi,
                        coeffs: s.coeffs.iter().map(|&c| c * factor).collect(),
                    }
                })
                .collect();
            let mut p = Profile::from_segments(out, Codomain::Complex).expect("same breakpoints");
            p.support = f.support;
            return p;
        }
    }
    let (lo, hi) = f.support;
    let n = samples.max(16);
    let step = (hi - lo) / n as f64;
    let samples = (0..=n)
        .map(|i| {
            let x = lo + step * i as f64;
            f.eval(x) * Complex64::from_polar(1.0, -gauge.phase_at(x))
        })
        .collect();
    Profile {
        support: (lo, hi),
        codomain: Codomain::Complex,
        data: Data::Grid { step, samples },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_segment_integral() {
        let u = Profile::constant(1.0, -1.0, 1.0).unwrap();
        assert!((u.integral() - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn odd_profile_integrates_to_zero() {
        // x on (-1, 1)
        let p = Profile::piecewise_real(vec![(-1.0, 1.0, vec![-1.0, 1.0])]).unwrap();
        assert!(p.integral().norm() < 1e-15);
    }

    #[test]
    fn quadratic_integral_exact() {
        // x^2 on (0, 1): local coeffs are already in t = x
        let p = Profile::piecewise_real(vec![(0.0, 1.0, vec![0.0, 0.0, 1.0])]).unwrap();
        assert!((p.integral().re - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn integral_is_linear() {
        let f = Profile::piecewise_real(vec![(0.0, 1.0, vec![0.5, 1.0])]).unwrap();
        let g = Profile::piecewise_real(vec![(0.5, 2.0, vec![1.0, 0.0, -0.3])]).unwrap();
        let lhs = f.scaled(c(2.0, 0.0)).add(&g.scaled(c(-3.0, 0.0))).integral();
        let rhs = f.integral() * 2.0 - g.integral() * 3.0;
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn inner_product_examples() {
        let f = Profile::constant(1.0, 0.0, 1.0).unwrap();
        let g = Profile::piecewise_real(vec![(0.0, 1.0, vec![0.0, 1.0])]).unwrap();
        assert!((f.inner_product(&g).re - 0.5).abs() < 1e-15);
        // disjoint supports
        let h = Profile::constant(1.0, 2.0, 3.0).unwrap();
        assert!(f.inner_product(&h).norm() < 1e-15);
        // conjugate symmetry
        let fc = f.scaled(c(0.3, 0.7));
        let ip = fc.inner_product(&g);
        let pi = g.inner_product(&fc);
        assert!((ip - pi.conj()).norm() < 1e-14);
        // norm is real and nonnegative
        let n2 = fc.inner_product(&fc);
        assert!(n2.im.abs() < 1e-15 && n2.re >= 0.0);
    }

    #[test]
    fn antiderivative_of_unit_step() {
        let h = Profile::constant(1.0, 0.0, 1.0).unwrap();
        let a = h.antiderivative(1);
        assert!((a.tail_value() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((a.eval(0.5) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((a.eval(2.0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(a.eval(-0.5).norm() < 1e-15);
    }

    #[test]
    fn zero_mean_first_antiderivative_is_compact() {
        // +1 on (-1,0), -1 on (0,1)
        let h = Profile::piecewise_real(vec![(-1.0, 0.0, vec![1.0]), (0.0, 1.0, vec![-1.0])])
            .unwrap();
        assert!(h.has_zero_mean(1e-14));
        let a = h.antiderivative(1);
        assert!(a.tail_value().norm() < 1e-15);
        assert!(a.tail_slope().norm() < 1e-15);
    }

    #[test]
    fn second_antiderivative_tail_matches_moment() {
        let h = Profile::piecewise_real(vec![(-1.0, 0.0, vec![1.0]), (0.0, 1.0, vec![-1.0])])
            .unwrap();
        let a2 = h.antiderivative(2);
        // tail of h^(-2) is -∫ s h(s) ds = 1 for this step pair
        let moment = Profile::piecewise_real(vec![(-1.0, 1.0, vec![-1.0, 1.0])])
            .unwrap()
            .product(&h)
            .integral();
        assert!((a2.tail_value() + moment).norm() < 1e-14);
        assert!((a2.tail_value() - c(1.0, 0.0)).norm() < 1e-14);
        assert!(a2.tail_slope().norm() < 1e-14);
        // and h^(-2)'' = h pointwise away from breakpoints
        let w = a2.as_profile_on(-1.5, 1.5);
        let dd = w.derivative().derivative();
        for &x in &[-0.7, -0.2, 0.3, 0.9] {
            assert!((dd.eval(x) - h.eval(x)).norm() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn non_zero_mean_second_antiderivative_has_affine_tail() {
        let h = Profile::constant(2.0, 0.0, 1.0).unwrap();
        let a2 = h.antiderivative(2);
        assert!((a2.tail_slope() - c(2.0, 0.0)).norm() < 1e-14);
        // h^(-2)(x) = ∫ (x - s) h ds = 2x - 1 for x >= 1
        assert!((a2.eval(3.0) - c(5.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn gauge_phase_examples() {
        let a = Profile::constant(1.0, -1.0, 1.0).unwrap();
        let g = gauge_phase(&a).unwrap();
        assert!((g.mu() - 2.0).abs() < 1e-15);
        assert!((g.phase_at(0.0) - 1.0).abs() < 1e-15);
        assert!((g.phase_at(5.0) - 2.0).abs() < 1e-15);
        // odd A has zero flux
        let a_odd = Profile::piecewise_real(vec![(-1.0, 1.0, vec![-1.0, 1.0])]).unwrap();
        assert!(gauge_phase(&a_odd).unwrap().mu().abs() < 1e-15);
        let a_half_pi =
            Profile::constant(std::f64::consts::FRAC_PI_2, 0.0, 1.0).unwrap();
        assert!((gauge_phase(&a_half_pi).unwrap().mu() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn gauge_twist_identity_and_modulus() {
        let f = Profile::piecewise_real(vec![(0.0, 1.0, vec![1.0, 2.0])]).unwrap();
        let trivial = GaugeData::trivial();
        let g = gauge_twist(&f, &trivial);
        for &x in &[0.1, 0.5, 0.9] {
            assert!((g.eval(x) - f.eval(x)).norm() < 1e-15);
        }
        let a = Profile::constant(0.7, -2.0, 2.0).unwrap();
        let gd = gauge_phase(&a).unwrap();
        let tw = gauge_twist_sampled(&f, &gd, 512);
        for &x in &[0.0, 0.25, 0.5, 1.0] {
            assert!((tw.eval(x).norm() - f.eval(x).norm()).abs() < 1e-12);
        }
        assert_eq!(tw.support(), f.support());
    }

    #[test]
    fn gauge_twist_constant_phase_is_exact() {
        // A supported left of f: the factor on supp f is exp(-i pi) = -1
        let a = Profile::constant(std::f64::consts::PI, -1.0, 0.0).unwrap();
        let f = Profile::constant(1.0, 0.0, 1.0).unwrap();
        let gd = gauge_phase(&a).unwrap();
        let g = gauge_twist(&f, &gd);
        assert!(g.is_piecewise());
        assert!((g.eval(0.5) + c(1.0, 0.0)).norm() < 1e-15);
        assert!(!g.has_zero_mean(1e-12));
    }

    #[test]
    fn grid_quadrature_accuracy() {
        let n = 512;
        let samples: Vec<f64> = (0..=n)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / n as f64;
                (std::f64::consts::PI * x).cos()
            })
            .collect();
        let p = Profile::grid_real(-1.0, 1.0, samples).unwrap();
        // ∫ cos(pi x) dx over (-1,1) = 0; ∫ cos^2 = 1
        assert!(p.integral().norm() < 1e-10);
        assert!((p.inner_product(&p).re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn grid_cumulative_integral_accuracy() {
        let n = 512;
        let samples: Vec<f64> = (0..=n)
            .map(|i| {
                let x = 2.0 * i as f64 / n as f64;
                x.exp()
            })
            .collect();
        let p = Profile::grid_real(0.0, 2.0, samples).unwrap();
        let a = p.antiderivative(1);
        assert!((a.eval(1.0).re - (1f64.exp() - 1.0)).abs() < 1e-9);
        assert!((a.tail_value().re - (2f64.exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn rescaled_support() {
        let p = Profile::constant(1.0, 0.0, 1.0).unwrap();
        let q = p.rescaled_to(-1.0, 1.0).unwrap();
        assert_eq!(q.support(), (-1.0, 1.0));
        assert!((q.integral().re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn scale_arg_shrinks_support() {
        let p = Profile::piecewise_real(vec![(-1.0, 1.0, vec![0.0, 0.0, 1.0])]).unwrap();
        let q = p.scale_arg(0.5);
        assert_eq!(q.support(), (-0.5, 0.5));
        // values are f(x / eps)
        assert!((q.eval(0.25) - p.eval(0.5)).norm() < 1e-14);
        // ∫ f(x/eps) dx = eps ∫ f
        assert!((q.integral() - p.integral() * 0.5).norm() < 1e-14);
    }

    #[test]
    fn product_with_gaps() {
        let f = Profile::piecewise_real(vec![(-1.0, -0.5, vec![1.0]), (0.5, 1.0, vec![1.0])])
            .unwrap();
        let g = Profile::constant(3.0, -2.0, 0.0).unwrap();
        let p = f.product(&g);
        assert!((p.integral().re - 1.5).abs() < 1e-14);
        assert!(p.eval(0.7).norm() < 1e-15);
    }

    #[test]
    fn zero_mean_check() {
        let p = Profile::constant(1.0, 0.0, 1.0).unwrap();
        assert!(!p.has_zero_mean(1e-12));
        let q = Profile::piecewise_real(vec![(-1.0, 1.0, vec![-1.0, 1.0])]).unwrap();
        assert!(q.has_zero_mean(1e-12));
    }

    #[test]
    fn construction_errors() {
        assert!(Profile::piecewise_real(vec![(1.0, 0.0, vec![1.0])]).is_err());
        assert!(Profile::piecewise_real(vec![
            (0.0, 2.0, vec![1.0]),
            (1.0, 3.0, vec![1.0])
        ])
        .is_err());
        assert!(Profile::grid_real(0.0, 1.0, vec![1.0]).is_err());
        assert!(Profile::piecewise_complex(vec![(0.0, 1.0, vec![c(0.0, 1.0)])]).is_ok());
    }
}
