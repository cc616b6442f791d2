//! Point interactions and their exact scattering data.
//!
//! A point interaction couples the boundary values of a wave function at one
//! point through a phase factor and a real matrix of unit determinant:
//! `(ψ(0+), ψ'(0+)) = e^{iφ} C (ψ(0-), ψ'(0-))`. These zero-range models are
//! the comparison targets for every convergence experiment in this crate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Error)]
pub enum PiError {
    #[error("coupling matrix must be real with unit determinant (|det - 1| = {defect:.3e})")]
    NotUnimodular { defect: f64 },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("wavenumber must be positive")]
    BadWavenumber,
    #[error("interface system is singular at k = {k}")]
    SingularSystem { k: f64 },
}

/// Phase and real unit-determinant coupling matrix of a point interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointInteraction {
    pub phase: f64,
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
}

/// Outcome of [`PointInteraction::validate`].
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    pub det_deviation: f64,
    pub finite: bool,
    pub ok: bool,
}

impl PointInteraction {
    /// Checked constructor: entries finite, `det C = 1` within 1e-12 scaled
    /// by the entry size.
    pub fn new(phase: f64, c11: f64, c12: f64, c21: f64, c22: f64) -> Result<Self, PiError> {
        let pi = PointInteraction {
            phase,
            c11,
            c12,
            c21,
            c22,
        };
        let report = pi.validate(1e-12);
        if !report.finite {
            return Err(PiError::NonFinite);
        }
        if !report.ok {
            return Err(PiError::NotUnimodular {
                defect: report.det_deviation,
            });
        }
        Ok(pi)
    }

    /// Unchecked constructor for validation of defective inputs.
    pub fn new_unchecked(phase: f64, c11: f64, c12: f64, c21: f64, c22: f64) -> Self {
        PointInteraction {
            phase,
            c11,
            c12,
            c21,
            c22,
        }
    }

    pub fn identity() -> Self {
        PointInteraction {
            phase: 0.0,
            c11: 1.0,
            c12: 0.0,
            c21: 0.0,
            c22: 1.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.c11 * self.c22 - self.c12 * self.c21
    }

    /// Reports the determinant deviation against the given tolerance,
    /// scaled by the matrix magnitude.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let entries = [self.phase, self.c11, self.c12, self.c21, self.c22];
        let finite = entries.iter().all(|e| e.is_finite());
        let scale = self
            .c11
            .abs()
            .max(self.c12.abs())
            .max(self.c21.abs())
            .max(self.c22.abs())
            .max(1.0);
        let det_deviation = (self.det() - 1.0).abs();
        ValidationReport {
            det_deviation,
            finite,
            ok: finite && det_deviation <= tol * scale * scale,
        }
    }

    /// Reduces the phase into `(-pi/2, pi/2]` with a compensating sign flip
    /// of the matrix (`e^{iφ} C = e^{i(φ-π)} (-C)`). Opt-in: the raw
    /// limit-model output keeps whatever phase the limit produces.
    pub fn canonicalized(&self) -> PointInteraction {
        let mut phase = self.phase.rem_euclid(2.0 * std::f64::consts::PI);
        // bring into (-pi/2, pi/2] by pi-steps, tracking the sign
        let mut sign = 1.0;
        while phase > std::f64::consts::FRAC_PI_2 {
            phase -= std::f64::consts::PI;
            sign = -sign;
        }
        while phase <= -std::f64::consts::FRAC_PI_2 {
            phase += std::f64::consts::PI;
            sign = -sign;
        }
        PointInteraction {
            phase,
            c11: sign * self.c11,
            c12: sign * self.c12,
            c21: sign * self.c21,
            c22: sign * self.c22,
        }
    }
}

/// Reflection and transmission amplitudes at one wavenumber, for incidence
/// from either side.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringData {
    pub k: f64,
    pub r_left: Complex64,
    pub t_left: Complex64,
    pub r_right: Complex64,
    pub t_right: Complex64,
}

impl ScatteringData {
    /// Largest deviation of `|r|^2 + |t|^2` from 1 over the two sides.
    pub fn unitarity_defect(&self) -> f64 {
        let left = (self.r_left.norm_sqr() + self.t_left.norm_sqr() - 1.0).abs();
        let right = (self.r_right.norm_sqr() + self.t_right.norm_sqr() - 1.0).abs();
        left.max(right)
    }

    /// `||t_left| - |t_right||`; zero for unit-determinant couplings.
    pub fn transmission_asymmetry(&self) -> f64 {
        (self.t_left.norm() - self.t_right.norm()).abs()
    }

    /// Euclidean distance over the four amplitudes.
    pub fn distance(&self, other: &ScatteringData) -> f64 {
        ((self.r_left - other.r_left).norm_sqr()
            + (self.t_left - other.t_left).norm_sqr()
            + (self.r_right - other.r_right).norm_sqr()
            + (self.t_right - other.t_right).norm_sqr())
        .sqrt()
    }
}

pub(crate) fn solve2(
    a: [[Complex64; 2]; 2],
    b: [Complex64; 2],
) -> Option<(Complex64, Complex64)> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale = a[0][0].norm() * a[1][1].norm() + a[0][1].norm() * a[1][0].norm();
    if det.norm() <= 1e-14 * scale.max(1e-300) {
        return None;
    }
    let x = (b[0] * a[1][1] - b[1] * a[0][1]) / det;
    let y = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
    Some((x, y))
}

/// Exact scattering amplitudes of a point interaction at wavenumber `k`.
///
/// Left incidence solves `(t, ikt) = e^{iφ} C (1 + r, ik(1 - r))`; right
/// incidence mirrors it. Reflection amplitudes do not depend on the phase;
/// transmitted amplitudes pick up `e^{±iφ}`.
pub fn scatter_pi(pi: &PointInteraction, k: f64) -> Result<ScatteringData, PiError> {
    if k <= 0.0 || !k.is_finite() {
        return Err(PiError::BadWavenumber);
    }
    let phase = Complex64::from_polar(1.0, pi.phase);
    let ik = I * k;
    let (c11, c12, c21, c22) = (
        Complex64::from(pi.c11),
        Complex64::from(pi.c12),
        Complex64::from(pi.c21),
        Complex64::from(pi.c22),
    );
    // left incidence, unknowns (r, t):
    //   e^{iφ}[C11 (1+r) + C12 ik(1-r)] - t        = 0
    //   e^{iφ}[C21 (1+r) + C22 ik(1-r)] - ik t     = 0
    let a = [
        [phase * (c11 - ik * c12), -Complex64::from(1.0)],
        [phase * (c21 - ik * c22), -ik],
    ];
    let b = [
        -(phase * (c11 + ik * c12)),
        -(phase * (c21 + ik * c22)),
    ];
    let (r_left, t_left) = solve2(a, b).ok_or(PiError::SingularSystem { k })?;
    // right incidence: psi = e^{-ikx} + r' e^{ikx} (x>0), t' e^{-ikx} (x<0):
    //   (1 + r', ik(r' - 1)) = e^{iφ} C (t', -ik t')
    let a = [
        [Complex64::from(-1.0), phase * (c11 - ik * c12)],
        [-ik, phase * (c21 - ik * c22)],
    ];
    let b = [Complex64::from(1.0), -ik];
    let (r_right, t_right) = solve2(a, b).ok_or(PiError::SingularSystem { k })?;
    Ok(ScatteringData {
        k,
        r_left,
        t_left,
        r_right,
        t_right,
    })
}

/// Scattering data of the decoupled limit: a Dirichlet wall at the origin,
/// total reflection with `r = -1` on both sides.
pub fn scatter_dirichlet(k: f64) -> Result<ScatteringData, PiError> {
    if k <= 0.0 || !k.is_finite() {
        return Err(PiError::BadWavenumber);
    }
    let minus_one = Complex64::new(-1.0, 0.0);
    Ok(ScatteringData {
        k,
        r_left: minus_one,
        t_left: Complex64::new(0.0, 0.0),
        r_right: minus_one,
        t_right: Complex64::new(0.0, 0.0),
    })
}
