//! Random draws used by the scenario sampling and the test suites.
//!
//! Everything takes a caller-provided [`RngCore`], so results are fixed by
//! the caller's seed.

use alloc::vec::Vec;
use core::f64::consts::PI;

// f64 math in no_std; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand_core::RngCore;

use crate::hilbert::{Operator, StateVector, C64};
use crate::states::PsiParams;

/// Uniform draw in `[0, 1)` with 53 random bits.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal draw (Box–Muller).
pub fn normal(rng: &mut impl RngCore) -> f64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn complex_normal(rng: &mut impl RngCore) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Haar-random unit vector of dimension `dim`.
pub fn state(rng: &mut impl RngCore, dim: usize) -> StateVector {
    let amps: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
    StateVector::normalized(amps).expect("gaussian vector is nonzero with probability one")
}

/// Random Hermitian matrix with entries of order one.
pub fn hermitian(rng: &mut impl RngCore, dim: usize) -> Operator {
    let g: Vec<C64> = (0..dim * dim).map(|_| complex_normal(rng)).collect();
    let g = Operator::new(dim, g).expect("valid dimension");
    (&g + &g.adjoint()).scale(C64::new(0.5, 0.0))
}

/// Random unitary from Gram–Schmidt on a Gaussian matrix; columns are the basis.
pub fn unitary(rng: &mut impl RngCore, dim: usize) -> Operator {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
        for u in &cols {
            let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|c| c / norm).collect());
        }
    }
    Operator::from_fn(dim, |i, j| cols[j][i]).expect("valid dimension")
}

/// Admissible `(a, b)`: `|a|²` uniform in `(0.01, 0.32)`, both phases
/// uniform in `[0, 2π)`, and `|b|² = 1 − 3|a|²`.
pub fn psi_params(rng: &mut impl RngCore) -> PsiParams {
    let a_sq = 0.01 + 0.31 * uniform(rng);
    let phase_a = 2.0 * PI * uniform(rng);
    let phase_b = 2.0 * PI * uniform(rng);
    PsiParams::from_polar(a_sq, phase_a, phase_b).expect("draw stays inside the admissible region")
}
