//! The entangled states the scenarios are built on.

use alloc::vec::Vec;

// f64 math in no_std; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, ParamViolation, Result};
use crate::hilbert::{StateVector, C64};

/// Tolerance on `3|a|² + |b|² = 1` and on the moduli of `a`, `b`.
pub const PARAM_TOL: f64 = 1e-12;

/// Amplitudes of `a(|+++⟩ − |+−+⟩ − |−++⟩) + b|−−−⟩`.
///
/// Admissible when `3|a|² + |b|² = 1` and neither amplitude vanishes.
/// Complex values are allowed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiParams {
    a: C64,
    b: C64,
}

impl PsiParams {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let constraint = 3.0 * a.norm_sqr() + b.norm_sqr();
        if constraint.is_nan() || (constraint - 1.0).abs() > PARAM_TOL {
            return Err(Error::InvalidParams(ParamViolation::Normalization(
                constraint,
            )));
        }
        if a.norm() <= PARAM_TOL || b.norm() <= PARAM_TOL {
            return Err(Error::InvalidParams(ParamViolation::ZeroAmplitude));
        }
        Ok(PsiParams { a, b })
    }

    pub fn real(a: f64, b: f64) -> Result<Self> {
        Self::new(C64::new(a, 0.0), C64::new(b, 0.0))
    }

    /// From `|a|²` and the two phases; `|b|²` is fixed by the constraint.
    pub fn from_polar(a_sq: f64, phase_a: f64, phase_b: f64) -> Result<Self> {
        let b_sq = 1.0 - 3.0 * a_sq;
        if a_sq < 0.0 || b_sq < 0.0 {
            return Err(Error::InvalidParams(ParamViolation::Normalization(
                3.0 * a_sq,
            )));
        }
        Self::new(
            C64::from_polar(a_sq.sqrt(), phase_a),
            C64::from_polar(b_sq.sqrt(), phase_b),
        )
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }
}

impl Default for PsiParams {
    /// `a = b = 1/2`.
    fn default() -> Self {
        PsiParams {
            a: C64::new(0.5, 0.0),
            b: C64::new(0.5, 0.0),
        }
    }
}

/// Product-basis ket from a string of `+`/`-`, one character per particle.
pub fn ket(spins: &str) -> Result<StateVector> {
    let n = spins.chars().count();
    let mut index = 0usize;
    for ch in spins.chars() {
        index = (index << 1)
            | match ch {
                '+' => 0,
                '-' => 1,
                other => return Err(Error::InvalidKet(other)),
            };
    }
    StateVector::basis(1 << n, index)
}

fn index_of(spins: &str) -> usize {
    spins
        .chars()
        .fold(0, |acc, ch| (acc << 1) | usize::from(ch == '-'))
}

/// `a(|+++⟩ − |+−+⟩ − |−++⟩) + b|−−−⟩`.
pub fn psi_state(params: &PsiParams) -> StateVector {
    let (a, b) = (params.a(), params.b());
    let mut amps = Vec::from([C64::new(0.0, 0.0); 8]);
    amps[index_of("+++")] = a;
    amps[index_of("+-+")] = -a;
    amps[index_of("-++")] = -a;
    amps[index_of("---")] = b;
    StateVector::new(amps).expect("dim 8")
}

/// `(|++⟩ − |+−⟩ − |−+⟩)/√3`.
pub fn hardy_state() -> StateVector {
    let s = 1.0 / 3.0f64.sqrt();
    let mut amps = Vec::from([C64::new(0.0, 0.0); 4]);
    amps[index_of("++")] = C64::new(s, 0.0);
    amps[index_of("+-")] = C64::new(-s, 0.0);
    amps[index_of("-+")] = C64::new(-s, 0.0);
    StateVector::new(amps).expect("dim 4")
}

/// `(|+++⟩ − |−−−⟩)/√2`.
pub fn ghz_mermin_state() -> StateVector {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let mut amps = Vec::from([C64::new(0.0, 0.0); 8]);
    amps[index_of("+++")] = C64::new(s, 0.0);
    amps[index_of("---")] = C64::new(-s, 0.0);
    StateVector::new(amps).expect("dim 8")
}
