//! Strong elements of reality (SERs): a value predicted with certainty for
//! a quantity on one region from a measurement actually performed on a
//! disjoint region of the same system.
//!
//! Regions are sets of particle indices. A claim is certified when
//!
//! 1. the inferring and target regions are disjoint,
//! 2. every conditioning observable acts only on the inferring region,
//! 3. the target observable acts only on the target region, and
//! 4. the conditional probability of the predicted value is 1.

mod sampling;
mod scenarios;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::hilbert::{acts_only_on, Observable, StateVector};
use crate::measurement::{conditional_probability, OutcomeAssignment};

pub use sampling::{
    sample_scenario, Experiment, FrequencyRow, SamplingReport, RANDOM_SCAN_STATES, Z_LIMIT,
};
pub use scenarios::{
    run_bell_ghz, run_bell_hardy, run_epr_ghz, run_epr_psi, run_scenario, Check, CheckValue,
    ClaimResult, PostSelection, Scenario, ScenarioOptions, ScenarioReport,
};

/// Default certainty threshold: `|P − 1| < 1e-10`.
pub const CERTAINTY_TOL: f64 = 1e-10;
/// Tolerance for "acts only on a region".
pub const LOCALITY_TOL: f64 = 1e-10;

/// Set of particles (1-based, at most 8).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Region(u8);

impl Region {
    pub fn of(particles: &[usize]) -> Self {
        Region(particles.iter().fold(0u8, |m, &p| {
            assert!((1..=8).contains(&p), "particle index {p} outside 1..=8");
            m | 1 << (p - 1)
        }))
    }

    pub fn empty() -> Self {
        Region(0)
    }

    pub fn particles(self) -> Vec<usize> {
        (1..=8).filter(|p| self.0 & (1 << (p - 1)) != 0).collect()
    }

    pub fn is_disjoint(self, other: Region) -> bool {
        self.0 & other.0 == 0
    }

    pub fn contains(self, particle: usize) -> bool {
        (1..=8).contains(&particle) && self.0 & (1 << (particle - 1)) != 0
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.particles().iter().map(|p| format!("{p}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A predicted value for `target`, inferred from `conditioning` outcomes
/// measured on `inferring_region`.
#[derive(Clone, Debug)]
pub struct SerClaim {
    pub target: Observable,
    pub predicted_value: f64,
    pub conditioning: OutcomeAssignment,
    pub inferring_region: Region,
    pub target_region: Region,
}

impl SerClaim {
    pub fn new(
        target: Observable,
        predicted_value: f64,
        conditioning: OutcomeAssignment,
        inferring_region: Region,
        target_region: Region,
    ) -> Self {
        SerClaim {
            target,
            predicted_value,
            conditioning,
            inferring_region,
            target_region,
        }
    }

    /// Same claim predicting the other eigenvalue of a two-valued target.
    pub fn flipped(&self) -> Self {
        let other = self
            .target
            .eigenvalues()
            .iter()
            .copied()
            .max_by(|a, b| {
                (a - self.predicted_value)
                    .abs()
                    .total_cmp(&(b - self.predicted_value).abs())
            })
            .unwrap_or(self.predicted_value);
        SerClaim {
            predicted_value: other,
            ..self.clone()
        }
    }

    /// `sx(2) = -1 | sz(1) = +1`.
    pub fn describe(&self) -> String {
        let given: Vec<String> = self
            .conditioning
            .describe()
            .iter()
            .map(|(l, v)| format!("{l} = {}", signed(*v)))
            .collect();
        let given = if given.is_empty() {
            String::from("preparation")
        } else {
            given.join(", ")
        };
        format!(
            "{} = {} | {}",
            self.target.label(),
            signed(self.predicted_value),
            given
        )
    }
}

pub(crate) fn signed(v: f64) -> String {
    format!("{v:+}")
}

/// Outcome of [`certify_ser`]; anything but `Certified` names the failed condition.
#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certified { probability: f64 },
    NotCertain { probability: f64 },
    RegionsOverlap,
    ConditioningOutsideRegion { label: String },
    TargetOutsideRegion { label: String },
    Undefined(Error),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }

    pub fn probability(&self) -> Option<f64> {
        match self {
            Certification::Certified { probability }
            | Certification::NotCertain { probability } => Some(*probability),
            _ => None,
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Certified { probability } => write!(f, "certified (P = {probability})"),
            Certification::NotCertain { probability } => {
                write!(f, "not certain (P = {probability})")
            }
            Certification::RegionsOverlap => f.write_str("inferring and target regions overlap"),
            Certification::ConditioningOutsideRegion { label } => {
                write!(
                    f,
                    "conditioning observable {label} acts outside the inferring region"
                )
            }
            Certification::TargetOutsideRegion { label } => {
                write!(f, "target {label} acts outside the target region")
            }
            Certification::Undefined(e) => write!(f, "undefined: {e}"),
        }
    }
}

/// [`certify_ser_with`] at the default tolerance.
pub fn certify_ser(state: &StateVector, claim: &SerClaim) -> Certification {
    certify_ser_with(state, claim, CERTAINTY_TOL)
}

pub fn certify_ser_with(state: &StateVector, claim: &SerClaim, tolerance: f64) -> Certification {
    if !claim.inferring_region.is_disjoint(claim.target_region) {
        return Certification::RegionsOverlap;
    }
    let count = state.particles();
    let inferring = claim.inferring_region.particles();
    for op in claim.conditioning.observables() {
        match acts_only_on(op.operator(), &inferring, count, LOCALITY_TOL) {
            Ok(true) => {}
            Ok(false) => {
                return Certification::ConditioningOutsideRegion {
                    label: op.label().into(),
                }
            }
            Err(e) => return Certification::Undefined(e),
        }
    }
    match acts_only_on(
        claim.target.operator(),
        &claim.target_region.particles(),
        count,
        LOCALITY_TOL,
    ) {
        Ok(true) => {}
        Ok(false) => {
            return Certification::TargetOutsideRegion {
                label: claim.target.label().into(),
            }
        }
        Err(e) => return Certification::Undefined(e),
    }
    match conditional_probability(
        state,
        (&claim.target, claim.predicted_value),
        &claim.conditioning,
    ) {
        Ok(p) if (p - 1.0).abs() < tolerance => Certification::Certified { probability: p },
        Ok(p) => Certification::NotCertain { probability: p },
        Err(e) => Certification::Undefined(e),
    }
}
