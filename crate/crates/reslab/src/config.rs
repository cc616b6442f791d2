//! JSON spec files for profiles, families and point interactions.
//!
//! Profiles are `{kind, support, codomain, segments|samples}`; values are
//! plain numbers for real data and `[re, im]` pairs for complex data.
//! Family files reference profiles inline. See the bundled files under
//! `assets/` for working examples.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::point_interaction::PointInteraction;
use crate::profile::{Profile, ProfileError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed spec {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("invalid profile in {path}: {source}")]
    Profile {
        path: String,
        source: ProfileError,
    },
    #[error("invalid spec {path}: {message}")]
    Invalid { path: String, message: String },
}

/// A real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Real(f64),
    Complex([f64; 2]),
}

impl From<ValueSpec> for Complex64 {
    fn from(v: ValueSpec) -> Complex64 {
        match v {
            ValueSpec::Real(re) => Complex64::new(re, 0.0),
            ValueSpec::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub range: [f64; 2],
    /// Polynomial coefficients in the local variable `x - range[0]`.
    pub coeffs: Vec<ValueSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodomainSpec {
    Real,
    Complex,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileSpec {
    Piecewise {
        support: [f64; 2],
        codomain: CodomainSpec,
        segments: Vec<SegmentSpec>,
    },
    Grid {
        support: [f64; 2],
        codomain: CodomainSpec,
        samples: Vec<ValueSpec>,
    },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<Profile, ProfileError> {
        match self {
            ProfileSpec::Piecewise {
                support,
                codomain,
                segments,
            } => {
                let segs: Vec<(f64, f64, Vec<Complex64>)> = segments
                    .iter()
                    .map(|s| {
                        (
                            s.range[0],
                            s.range[1],
                            s.coeffs.iter().map(|&c| c.into()).collect(),
                        )
                    })
                    .collect();
                let p = Profile::piecewise_complex(segs)?;
                let (plo, phi) = p.support();
                let p = p.with_support(support[0].min(plo), support[1].max(phi))?;
                match codomain {
                    CodomainSpec::Real => {
                        p.require_real(0.0)?;
                        Ok(p)
                    }
                    CodomainSpec::Complex => Ok(p),
                }
            }
            ProfileSpec::Grid {
                support,
                codomain,
                samples,
            } => {
                let vals: Vec<Complex64> = samples.iter().map(|&c| c.into()).collect();
                match codomain {
                    CodomainSpec::Real => {
                        if vals.iter().any(|v| v.im != 0.0) {
                            return Err(ProfileError::NotReal);
                        }
                        Profile::grid_real(
                            support[0],
                            support[1],
                            vals.into_iter().map(|v| v.re).collect(),
                        )
                    }
                    CodomainSpec::Complex => {
                        Profile::grid_complex(support[0], support[1], vals)
                    }
                }
            }
        }
    }

    /// Piecewise spec of an existing real profile support, for writing
    /// example assets; not a general exporter.
    pub fn constant(value: f64, lo: f64, hi: f64) -> ProfileSpec {
        ProfileSpec::Piecewise {
            support: [lo, hi],
            codomain: CodomainSpec::Real,
            segments: vec![SegmentSpec {
                range: [lo, hi],
                coeffs: vec![ValueSpec::Real(value)],
            }],
        }
    }
}

/// File schema of the potential family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialFamilyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<ProfileSpec>,
    pub v: ProfileSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ProfileSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ProfileSpec>,
    pub alpha: f64,
}

/// File schema of the rank-two family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankTwoFamilyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<ProfileSpec>,
    pub f1: ProfileSpec,
    pub f2: ProfileSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<ProfileSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ProfileSpec>,
    /// `[re, im]`.
    pub beta: [f64; 2],
}

/// Built profiles of a potential family file.
#[derive(Debug, Clone)]
pub struct PotentialFamilyInput {
    pub v0: Profile,
    pub v: Profile,
    pub u: Profile,
    pub a: Profile,
    pub alpha: f64,
}

/// Built profiles of a rank-two family file.
#[derive(Debug, Clone)]
pub struct RankTwoFamilyInput {
    pub v0: Profile,
    pub f1: Profile,
    pub f2: Profile,
    pub u: Profile,
    pub a: Profile,
    pub beta: Complex64,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn build_profile(spec: &ProfileSpec, path: &Path) -> Result<Profile, ConfigError> {
    spec.build().map_err(|source| ConfigError::Profile {
        path: path.display().to_string(),
        source,
    })
}

fn build_optional(spec: &Option<ProfileSpec>, path: &Path) -> Result<Profile, ConfigError> {
    match spec {
        Some(s) => build_profile(s, path),
        None => Ok(Profile::zero()),
    }
}

/// Loads one profile spec file.
pub fn load_profile(path: &Path) -> Result<Profile, ConfigError> {
    let spec: ProfileSpec = read_json(path)?;
    build_profile(&spec, path)
}

pub fn load_potential_family(path: &Path) -> Result<PotentialFamilyInput, ConfigError> {
    let file: PotentialFamilyFile = read_json(path)?;
    Ok(PotentialFamilyInput {
        v0: build_optional(&file.v0, path)?,
        v: build_profile(&file.v, path)?,
        u: build_optional(&file.u, path)?,
        a: build_optional(&file.a, path)?,
        alpha: file.alpha,
    })
}

pub fn load_rank_two_family(path: &Path) -> Result<RankTwoFamilyInput, ConfigError> {
    let file: RankTwoFamilyFile = read_json(path)?;
    Ok(RankTwoFamilyInput {
        v0: build_optional(&file.v0, path)?,
        f1: build_profile(&file.f1, path)?,
        f2: build_profile(&file.f2, path)?,
        u: build_optional(&file.u, path)?,
        a: build_optional(&file.a, path)?,
        beta: Complex64::new(file.beta[0], file.beta[1]),
    })
}

pub fn load_point_interaction(path: &Path) -> Result<PointInteraction, ConfigError> {
    let pi: PointInteraction = read_json(path)?;
    let report = pi.validate(1e-9);
    if !report.ok {
        return Err(ConfigError::Invalid {
            path: path.display().to_string(),
            message: format!(
                "coupling matrix must be real with det = 1 (deviation {:.3e})",
                report.det_deviation
            ),
        });
    }
    Ok(pi)
}
