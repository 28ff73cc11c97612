//! GL₂ parameters on the automorphic side and the three-level comparison
//! with a Galois-side Weil–Deligne representation.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::functor::wd_of;
use crate::matrix::Matrix;
use crate::phin::FilteredPhiNModule;
use crate::wd::{is_isomorphic, monodromy_dominates, segments, semisimplify, frobenius_semisimplify, sp, Segment, WdRep};

/// Local automorphic data, with parameters already normalised (the
/// |det|^{−1/2} twist is applied by the caller).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalType {
    /// Unramified principal series with Satake parameters α, β.
    UnramifiedPs { alpha: Elem, beta: Elem },
    /// Unramified twist of Steinberg; c is the character value at geometric Frobenius.
    SteinbergTwist { c: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAutomorphicDatum {
    pub q: u64,
    pub field: Field,
    pub kind: LocalType,
}

impl LocalAutomorphicDatum {
    pub fn new(q: u64, field: &Field, kind: LocalType) -> Result<Self> {
        if field.is_finite() {
            return Err(Error::InvalidField("automorphic parameters need a characteristic-0 field".into()));
        }
        Ok(LocalAutomorphicDatum { q, field: field.clone(), kind })
    }

    pub fn parameter(&self) -> Result<WdRep> {
        match &self.kind {
            LocalType::UnramifiedPs { alpha, beta } => rec_unramified_ps(alpha, beta, self.q, &self.field),
            LocalType::SteinbergTwist { c } => rec_steinberg_twist(c, self.q, &self.field),
        }
    }

    pub fn is_steinberg(&self) -> bool {
        matches!(self.kind, LocalType::SteinbergTwist { .. })
    }
}

/// F = diag(α, β), N = 0.
pub fn rec_unramified_ps(alpha: &Elem, beta: &Elem, q: u64, field: &Field) -> Result<WdRep> {
    if field.is_zero(alpha) || field.is_zero(beta) {
        return Err(Error::ZeroParameter);
    }
    WdRep::new(q, field, Matrix::diag(field, &[alpha.clone(), beta.clone()]), Matrix::zeros(field, 2, 2))
}

/// sp(2, c, q).
pub fn rec_steinberg_twist(c: &Elem, q: u64, field: &Field) -> Result<WdRep> {
    sp(2, c, q, field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompatLevel {
    Ss,
    Fss,
    Monodromy,
}

impl CompatLevel {
    pub fn name(self) -> &'static str {
        match self {
            CompatLevel::Ss => "ss",
            CompatLevel::Fss => "fss",
            CompatLevel::Monodromy => "monodromy",
        }
    }
}

pub const REASON_MATCH: &str = "Frobenius-semisimplifications agree";
pub const REASON_CONTRADICTION: &str = "crystalline vs special: contradiction locus of the main theorem";
pub const REASON_MONODROMY_DIFFERS: &str = "semisimplifications agree; monodromy differs";
pub const REASON_SS_DIFFERS: &str = "semisimplifications differ";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub level: CompatLevel,
    pub ss_match: bool,
    pub fss_match: bool,
    pub monodromy_ok: bool,
    pub galois_segments: Vec<Segment>,
    pub automorphic_segments: Vec<Segment>,
    pub reason: &'static str,
}

impl CompatReport {
    /// The predicate at the requested level.
    pub fn verdict(&self) -> bool {
        match self.level {
            CompatLevel::Ss => self.ss_match,
            CompatLevel::Fss => self.fss_match,
            CompatLevel::Monodromy => self.monodromy_ok,
        }
    }
}

pub fn compat_check(galois: &WdRep, automorphic: &LocalAutomorphicDatum, level: CompatLevel) -> Result<CompatReport> {
    if galois.q() != automorphic.q {
        return Err(Error::MixedParameters(format!("q = {} and q = {}", galois.q(), automorphic.q)));
    }
    if automorphic.field.is_finite() {
        return Err(Error::InvalidField("automorphic parameters need a characteristic-0 field".into()));
    }
    if *galois.field() != automorphic.field {
        return Err(Error::MixedParameters("coefficient fields differ".into()));
    }
    let auto = automorphic.parameter()?;
    if galois.dim() != auto.dim() {
        return Err(Error::MixedParameters(format!("dimensions {} and {}", galois.dim(), auto.dim())));
    }
    let ss_match = is_isomorphic(&semisimplify(galois)?, &semisimplify(&auto)?, false)?;
    let fss_match = is_isomorphic(galois, &auto, false)?;
    let monodromy_ok = monodromy_dominates(galois, &auto)?;
    if fss_match && !(ss_match && monodromy_ok) {
        return Err(Error::Invariant("F-ss agreement without ss agreement or monodromy dominance".into()));
    }
    let reason = if fss_match {
        REASON_MATCH
    } else if ss_match && automorphic.is_steinberg() && galois.n().is_zero() {
        REASON_CONTRADICTION
    } else if ss_match {
        REASON_MONODROMY_DIFFERS
    } else {
        REASON_SS_DIFFERS
    };
    Ok(CompatReport {
        level,
        ss_match,
        fss_match,
        monodromy_ok,
        galois_segments: segments(&frobenius_semisimplify(galois)?)?,
        automorphic_segments: segments(&auto)?,
        reason,
    })
}

/// compat_check with the Galois side given as wd_of(D, τ).
pub fn compat_check_module(d: &FilteredPhiNModule, tau: usize, automorphic: &LocalAutomorphicDatum, level: CompatLevel) -> Result<CompatReport> {
    compat_check(&wd_of(d.module(), tau)?, automorphic, level)
}
