//! Amplitude-level oracles that never touch the operator or spectral code.
//!
//! Each oracle manipulates the raw amplitude array of a product-basis state
//! directly: conditioning on a `σz` value keeps the matching basis indices,
//! and a `σx` / `σy` probability on one particle is computed by rotating
//! that particle's two amplitudes into the corresponding eigenbasis.

use jser_core::measurement::{conditional_probability, outcome_probability, OutcomeAssignment};
use jser_core::spin::{hardy_projector_3, mermin_a, pauli_on, Axis};
use jser_core::states::{ghz_mermin_state, psi_state, PsiParams};
use jser_core::{StateVector, C64};

const N: usize = 3;

fn bit(index: usize, particle: usize) -> usize {
    (index >> (N - particle)) & 1
}

/// Amplitudes of `state` restricted to `σz(particle) = value`.
fn keep_z(amps: &[C64], particle: usize, value: f64) -> Vec<C64> {
    let want = if value > 0.0 { 0 } else { 1 };
    amps.iter()
        .enumerate()
        .map(|(i, &a)| {
            if bit(i, particle) == want {
                a
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn weight(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// `|⟨axis=value|` on `particle`, applied coordinate-wise: returns the
/// amplitudes after projecting that particle on the eigenvector.
fn project_axis(amps: &[C64], particle: usize, axis: Axis, value: f64) -> Vec<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // eigenvector components (c_plus, c_minus) in the σz basis
    let (cp, cm) = match (axis, value > 0.0) {
        (Axis::Z, true) => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        (Axis::Z, false) => (C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        (Axis::X, true) => (C64::new(s, 0.0), C64::new(s, 0.0)),
        (Axis::X, false) => (C64::new(s, 0.0), C64::new(-s, 0.0)),
        (Axis::Y, true) => (C64::new(s, 0.0), C64::new(0.0, s)),
        (Axis::Y, false) => (C64::new(s, 0.0), C64::new(0.0, -s)),
    };
    let shift = N - particle;
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for i in 0..amps.len() {
        if bit(i, particle) == 1 {
            continue;
        }
        let j = i | (1 << shift);
        let overlap = cp.conj() * amps[i] + cm.conj() * amps[j];
        out[i] = cp * overlap;
        out[j] = cm * overlap;
    }
    out
}

fn prob_after(amps: &[C64], steps: &[(usize, Axis, f64)]) -> f64 {
    let mut v = amps.to_vec();
    for &(p, axis, value) in steps {
        v = project_axis(&v, p, axis, value);
    }
    weight(&v)
}

fn cond(amps: &[C64], target: (usize, Axis, f64), given: &[(usize, Axis, f64)]) -> f64 {
    let mut all = given.to_vec();
    all.push(target);
    prob_after(amps, &all) / prob_after(amps, given)
}

#[test]
fn oracle_sanity_against_keep_z() {
    let psi = psi_state(&PsiParams::default());
    let a = psi.amplitudes();
    assert!((weight(&keep_z(a, 1, 1.0)) - prob_after(a, &[(1, Axis::Z, 1.0)])).abs() < 1e-15);
}

#[test]
fn conditional_on_sz1_minus_is_one_half() {
    // Frozen from the amplitude oracle.
    let psi = psi_state(&PsiParams::default());
    let oracle = cond(psi.amplitudes(), (2, Axis::X, -1.0), &[(1, Axis::Z, -1.0)]);
    assert!((oracle - 0.5).abs() < 1e-15);
    let computed = conditional_probability(
        &psi,
        (&pauli_on(Axis::X, 2, 3).unwrap(), -1.0),
        &OutcomeAssignment::single(pauli_on(Axis::Z, 1, 3).unwrap(), -1.0).unwrap(),
    )
    .unwrap();
    assert!((computed - 0.5).abs() < 1e-12);
}

#[test]
fn psi_certainties_match_oracle() {
    for params in [
        PsiParams::default(),
        PsiParams::from_polar(0.05, 1.0, -2.0).unwrap(),
        PsiParams::from_polar(0.3, 4.0, 0.3).unwrap(),
    ] {
        let psi = psi_state(&params);
        let a = psi.amplitudes();
        let a_sq = params.a().norm_sqr();
        let cases = [
            ((2, Axis::X, -1.0), (1, Axis::Z, 1.0)),
            ((1, Axis::X, -1.0), (2, Axis::Z, 1.0)),
            ((2, Axis::Z, -1.0), (1, Axis::X, 1.0)),
            ((1, Axis::Z, -1.0), (2, Axis::X, 1.0)),
        ];
        for (target, given) in cases {
            let oracle = cond(a, target, &[given]);
            assert!(
                (oracle - 1.0).abs() < 1e-12,
                "{target:?} | {given:?}: {oracle}"
            );
            let computed = conditional_probability(
                &psi,
                (&pauli_on(target.1, target.0, 3).unwrap(), target.2),
                &OutcomeAssignment::single(pauli_on(given.1, given.0, 3).unwrap(), given.2)
                    .unwrap(),
            )
            .unwrap();
            assert!((computed - oracle).abs() < 1e-12);
        }
        // pi(1+2) = 1 given sz3 = +1: weight outside |−−⟩ on particles 1, 2
        let given = keep_z(a, 3, 1.0);
        let outside: f64 = given
            .iter()
            .enumerate()
            .filter(|(i, _)| bit(*i, 1) == 1 && bit(*i, 2) == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        let oracle = 1.0 - outside / weight(&given);
        assert!((oracle - 1.0).abs() < 1e-12);
        let computed = conditional_probability(
            &psi,
            (&hardy_projector_3(), 1.0),
            &OutcomeAssignment::single(pauli_on(Axis::Z, 3, 3).unwrap(), 1.0).unwrap(),
        )
        .unwrap();
        assert!((computed - 1.0).abs() < 1e-12);

        let post = prob_after(
            a,
            &[(1, Axis::Z, 1.0), (2, Axis::Z, 1.0), (3, Axis::Z, 1.0)],
        );
        assert!((post - a_sq).abs() < 1e-12);
        let post = prob_after(
            a,
            &[(1, Axis::X, 1.0), (2, Axis::X, 1.0), (3, Axis::Z, 1.0)],
        );
        assert!((post - a_sq / 4.0).abs() < 1e-12);
        let computed = outcome_probability(
            &psi,
            &OutcomeAssignment::new(vec![
                (pauli_on(Axis::X, 1, 3).unwrap(), 1.0),
                (pauli_on(Axis::X, 2, 3).unwrap(), 1.0),
                (pauli_on(Axis::Z, 3, 3).unwrap(), 1.0),
            ])
            .unwrap(),
        )
        .unwrap();
        assert!((computed - post).abs() < 1e-12);
    }
}

#[test]
fn ghz_sigma_z_expectation_vanishes() {
    let mu = ghz_mermin_state();
    let a = mu.amplitudes();
    let oracle = weight(&keep_z(a, 1, 1.0)) - weight(&keep_z(a, 1, -1.0));
    assert!(oracle.abs() < 1e-15);
    let computed = mu
        .expectation(pauli_on(Axis::Z, 1, 3).unwrap().operator())
        .unwrap();
    assert!((computed - oracle).abs() < 1e-12);
}

#[test]
fn ghz_sy_branches_have_probability_one_eighth() {
    let mu = ghz_mermin_state();
    for k in 0..8usize {
        let eps = [0, 1, 2].map(|i| if (k >> (2 - i)) & 1 == 0 { 1.0 } else { -1.0 });
        let steps: Vec<_> = (0..3).map(|i| (i + 1, Axis::Y, eps[i])).collect();
        let oracle = prob_after(mu.amplitudes(), &steps);
        assert!((oracle - 0.125).abs() < 1e-15);
    }
}

#[test]
fn mermin_a_value_matches_sy_outcome() {
    // Oracle for A1 = sx(2) sy(3): after conditioning on sy(1) = e, the state
    // is an eigenvector of A1 with eigenvalue e, so P(A1 = e) is the weight of
    // the two product-basis branches (sx(2), sy(3)) whose eigenvalues multiply to e.
    let mu = ghz_mermin_state();
    for e in [1.0, -1.0] {
        let given = project_axis(mu.amplitudes(), 1, Axis::Y, e);
        let total = weight(&given);
        let mut agree = 0.0;
        for (x, y) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            if x * y == e {
                agree += prob_after(&given, &[(2, Axis::X, x), (3, Axis::Y, y)]);
            }
        }
        assert!((agree / total - 1.0).abs() < 1e-12);
        let computed = conditional_probability(
            &mu,
            (&mermin_a(1).unwrap(), e),
            &OutcomeAssignment::single(pauli_on(Axis::Y, 1, 3).unwrap(), e).unwrap(),
        )
        .unwrap();
        assert!((computed - 1.0).abs() < 1e-12);
    }
}

#[test]
fn state_vector_rejects_non_power_of_two() {
    assert!(StateVector::new(vec![C64::new(1.0, 0.0); 6]).is_err());
}
