//! Projective measurement: Born-rule probabilities, conditioning, Lüders
//! collapse and seeded joint sampling.
//!
//! Joint quantities are only defined on pairwise commuting observables, so
//! every probability here is independent of measurement order.

use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::hilbert::{Observable, StateVector};
use crate::random::uniform;

/// Max-entry norm below which a commutator counts as zero.
pub const COMMUTE_TOL: f64 = 1e-10;
/// Conditions or outcomes with probability at or below this are null.
pub const NULL_PROBABILITY: f64 = 1e-12;
/// Name of the per-trial generator used by [`JointSampler`].
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9), key = seed_from_u64(seed), stream = trial index";

/// `‖ab − ba‖_max < 1e-10`.
pub fn commutes(a: &Observable, b: &Observable) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.operator().commutator(b.operator())?.max_abs() < COMMUTE_TOL)
}

fn require_pairwise_commuting(observables: &[&Observable]) -> Result<()> {
    for (i, a) in observables.iter().enumerate() {
        for b in &observables[i + 1..] {
            if !commutes(a, b)? {
                return Err(Error::NonCommuting {
                    left: a.label().into(),
                    right: b.label().into(),
                });
            }
        }
    }
    Ok(())
}

/// Values assigned to a set of mutually commuting observables.
///
/// May be empty, in which case it imposes no condition.
#[derive(Clone, Debug, Default)]
pub struct OutcomeAssignment {
    pairs: Vec<(Observable, f64)>,
}

impl OutcomeAssignment {
    pub fn new(pairs: Vec<(Observable, f64)>) -> Result<Self> {
        if let Some((first, _)) = pairs.first() {
            for (op, _) in &pairs {
                if op.dim() != first.dim() {
                    return Err(Error::DimensionMismatch {
                        left: first.dim(),
                        right: op.dim(),
                    });
                }
            }
        }
        for (op, value) in &pairs {
            if !op.in_spectrum(*value) {
                return Err(Error::ValueNotInSpectrum {
                    label: op.label().into(),
                    value: *value,
                });
            }
        }
        let refs: Vec<&Observable> = pairs.iter().map(|(op, _)| op).collect();
        require_pairwise_commuting(&refs)?;
        Ok(OutcomeAssignment { pairs })
    }

    pub fn single(observable: Observable, value: f64) -> Result<Self> {
        Self::new(Vec::from([(observable, value)]))
    }

    pub fn empty() -> Self {
        OutcomeAssignment { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(Observable, f64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn observables(&self) -> impl Iterator<Item = &Observable> {
        self.pairs.iter().map(|(op, _)| op)
    }

    /// Same assignment with one more pair, re-validated.
    pub fn with(&self, observable: Observable, value: f64) -> Result<Self> {
        let mut pairs = self.pairs.clone();
        pairs.push((observable, value));
        Self::new(pairs)
    }

    /// `Πₖ…Π₁|state⟩`, unnormalized.
    pub fn project(&self, state: &StateVector) -> Result<StateVector> {
        let mut current = state.clone();
        for (op, value) in &self.pairs {
            let proj = op.projector_for(*value).expect("validated on construction");
            current = proj.apply(&current)?;
        }
        Ok(current)
    }

    /// `label=value` pairs, for reports.
    pub fn describe(&self) -> Vec<(String, f64)> {
        self.pairs
            .iter()
            .map(|(op, v)| (op.label().into(), *v))
            .collect()
    }
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// `⟨ψ|Π₁⋯Πₖ|ψ⟩` for the eigenprojectors of a commuting assignment.
pub fn outcome_probability(state: &StateVector, assignment: &OutcomeAssignment) -> Result<f64> {
    Ok(clamp_probability(assignment.project(state)?.norm_sqr()))
}

/// `P(target | given)` for a target compatible with every conditioning observable.
pub fn conditional_probability(
    state: &StateVector,
    target: (&Observable, f64),
    given: &OutcomeAssignment,
) -> Result<f64> {
    let given_p = outcome_probability(state, given)?;
    let joint = given.with(target.0.clone(), target.1)?;
    if given_p <= NULL_PROBABILITY {
        return Err(Error::UndefinedConditional(given_p));
    }
    let joint_p = outcome_probability(state, &joint)?;
    Ok(clamp_probability(joint_p / given_p))
}

/// Lüders update `Π|ψ⟩ / ‖Π|ψ⟩‖`.
pub fn collapse(state: &StateVector, observable: &Observable, value: f64) -> Result<StateVector> {
    let proj = observable
        .projector_for(value)
        .ok_or_else(|| Error::ValueNotInSpectrum {
            label: observable.label().into(),
            value,
        })?;
    let projected = proj.apply(state)?;
    let p = projected.norm_sqr();
    if p <= NULL_PROBABILITY {
        return Err(Error::CollapseOnNull(p));
    }
    projected.normalize()
}

/// One measured value.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub label: String,
    pub value: f64,
}

/// Result of one trial of a joint measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub trial: u64,
    pub outcomes: Vec<Outcome>,
    pub post_state: StateVector,
}

impl MeasurementRecord {
    pub fn values(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.value).collect()
    }

    /// Product of all outcome values.
    pub fn product(&self) -> f64 {
        self.outcomes.iter().map(|o| o.value).product()
    }
}

/// Sequential Born-rule sampler over a commuting list of observables.
///
/// Trial `t` draws from its own ChaCha8 stream `t` under a key derived
/// from the seed, so any trial can be reproduced on its own and trials can
/// be evaluated in any order.
#[derive(Clone, Debug)]
pub struct JointSampler {
    state: StateVector,
    observables: Vec<Observable>,
    seed: u64,
}

impl JointSampler {
    pub fn new(state: &StateVector, observables: &[Observable], seed: u64) -> Result<Self> {
        for op in observables {
            if op.dim() != state.dim() {
                return Err(Error::DimensionMismatch {
                    left: state.dim(),
                    right: op.dim(),
                });
            }
        }
        let refs: Vec<&Observable> = observables.iter().collect();
        require_pairwise_commuting(&refs)?;
        Ok(JointSampler {
            state: state.clone(),
            observables: observables.to_vec(),
            seed,
        })
    }

    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    /// Eigenvalue indices drawn in trial `trial`, with the post-measurement state.
    pub fn draw(&self, trial: u64) -> (Vec<usize>, StateVector) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        let mut current = self.state.clone();
        let mut picks = Vec::with_capacity(self.observables.len());
        for op in &self.observables {
            let branches: Vec<StateVector> = op
                .spectrum()
                .projectors()
                .iter()
                .map(|p| p.apply(&current).expect("dimension checked"))
                .collect();
            let weights: Vec<f64> = branches.iter().map(StateVector::norm_sqr).collect();
            let total: f64 = weights.iter().sum();
            let u = uniform(&mut rng) * total;
            let mut acc = 0.0;
            // Fall back to the last branch with weight, for round-off at the top end.
            let mut pick = weights.iter().rposition(|&w| w > 0.0).unwrap_or(0);
            for (k, w) in weights.iter().enumerate() {
                acc += w;
                if u < acc && *w > 0.0 {
                    pick = k;
                    break;
                }
            }
            current = branches[pick]
                .normalize()
                .expect("sampled branch has weight");
            picks.push(pick);
        }
        (picks, current)
    }

    pub fn trial(&self, trial: u64) -> MeasurementRecord {
        let (picks, post_state) = self.draw(trial);
        let outcomes = self
            .observables
            .iter()
            .zip(picks)
            .map(|(op, k)| Outcome {
                label: op.label().into(),
                value: op.eigenvalues()[k],
            })
            .collect();
        MeasurementRecord {
            trial,
            outcomes,
            post_state,
        }
    }

    pub fn records(&self, trials: u64) -> impl Iterator<Item = MeasurementRecord> + '_ {
        (0..trials).map(move |t| self.trial(t))
    }
}

/// Runs `trials` joint measurements; records are returned in trial order.
pub fn sample_joint(
    state: &StateVector,
    observables: &[Observable],
    seed: u64,
    trials: u64,
) -> Result<Vec<MeasurementRecord>> {
    let sampler = JointSampler::new(state, observables, seed)?;
    Ok(sampler.records(trials).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Tensor;
    use crate::spin::{hardy_projector_3, mermin_a, pauli_on, pauli_product, Axis};
    use crate::states::{ghz_mermin_state, hardy_state, ket, psi_state, PsiParams};

    fn z(p: usize) -> Observable {
        pauli_on(Axis::Z, p, 3).unwrap()
    }
    fn x(p: usize) -> Observable {
        pauli_on(Axis::X, p, 3).unwrap()
    }
    fn y(p: usize) -> Observable {
        pauli_on(Axis::Y, p, 3).unwrap()
    }

    fn assign(pairs: &[(Observable, f64)]) -> OutcomeAssignment {
        OutcomeAssignment::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn post_selection_probabilities_at_default_params() {
        let psi = psi_state(&PsiParams::default());
        let zzz = assign(&[(z(1), 1.0), (z(2), 1.0), (z(3), 1.0)]);
        assert!((outcome_probability(&psi, &zzz).unwrap() - 0.25).abs() < 1e-12);
        let xxz = assign(&[(x(1), 1.0), (x(2), 1.0), (z(3), 1.0)]);
        assert!((outcome_probability(&psi, &xxz).unwrap() - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn parity_certainty_on_ghz() {
        let xxx = pauli_product(&[(1, Axis::X), (2, Axis::X), (3, Axis::X)], 3).unwrap();
        let p = outcome_probability(&ghz_mermin_state(), &assign(&[(xxx, -1.0)])).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_certainties() {
        let psi = psi_state(&PsiParams::default());
        let p = conditional_probability(&psi, (&x(2), -1.0), &assign(&[(z(1), 1.0)])).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        let p = conditional_probability(&psi, (&hardy_projector_3(), 1.0), &assign(&[(z(3), 1.0)]))
            .unwrap();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_on_the_other_branch_is_one_half() {
        // Oracle: on sz1 = −1, psi collapses to |−⟩ ⊗ (−a|+⟩|+⟩ + b|−⟩|−⟩)/N.
        // With a = b = 1/2 the particle-2 reduced state is (|+⟩⟨+| + |−⟩⟨−|)/2,
        // so σx⁽²⁾ = −1 has probability ½(|⟨x−|+⟩|² + |⟨x−|−⟩|²) = ½.
        let psi = psi_state(&PsiParams::default());
        let p = conditional_probability(&psi, (&x(2), -1.0), &assign(&[(z(1), -1.0)])).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn conditional_errors() {
        let psi = psi_state(&PsiParams::default());
        // sz1 = −1, sz2 = −1, sz3 = +1 never happens on psi
        let null = assign(&[(z(1), -1.0), (z(2), -1.0), (z(3), 1.0)]);
        assert!(matches!(
            conditional_probability(
                &psi,
                (&x(1), 1.0),
                &assign(&[(z(2), -1.0), (z(3), 1.0), (z(1), -1.0)])
            ),
            Err(Error::NonCommuting { .. })
        ));
        let pi = hardy_projector_3();
        assert!(matches!(
            conditional_probability(&psi, (&pi, 1.0), &null),
            Err(Error::UndefinedConditional(_))
        ));
        assert!(matches!(
            OutcomeAssignment::new(alloc::vec![(z(1), 1.0), (x(1), 1.0)]),
            Err(Error::NonCommuting { .. })
        ));
        assert!(matches!(
            OutcomeAssignment::single(z(1), 0.5),
            Err(Error::ValueNotInSpectrum { .. })
        ));
    }

    #[test]
    fn collapse_reproduces_hardy_product() {
        let psi = psi_state(&PsiParams::default());
        let post = collapse(&psi, &z(3), 1.0).unwrap();
        let expected = hardy_state().tensor(&ket("+").unwrap());
        assert!((post.overlap(&expected).unwrap() - 1.0).abs() < 1e-12);
        let twice = collapse(&post, &z(3), 1.0).unwrap();
        assert!(twice.max_abs_diff(&post).unwrap() < 1e-15);
    }

    #[test]
    fn collapse_edge_cases() {
        let pp = ket("++").unwrap();
        let z1 = pauli_on(Axis::Z, 1, 2).unwrap();
        assert_eq!(collapse(&pp, &z1, 1.0).unwrap(), pp);
        assert!(matches!(
            collapse(&pp, &z1, -1.0),
            Err(Error::CollapseOnNull(_))
        ));
        assert!(matches!(
            collapse(&pp, &z1, 3.0),
            Err(Error::ValueNotInSpectrum { .. })
        ));
    }

    #[test]
    fn collapse_on_sy_fixes_mermin_a() {
        let post = collapse(&ghz_mermin_state(), &y(1), 1.0).unwrap();
        let a1 = mermin_a(1).unwrap();
        assert!((post.expectation(a1.operator()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn commutes_checks() {
        let pi = hardy_projector_3();
        assert!(commutes(&pi, &z(1)).unwrap());
        assert!(!commutes(&pi, &x(1)).unwrap());
        let id = Observable::new(crate::hilbert::Operator::identity(8).unwrap()).unwrap();
        assert!(commutes(&id, &y(2)).unwrap());
        let z2 = pauli_on(Axis::Z, 1, 2).unwrap();
        assert!(matches!(
            commutes(&z2, &z(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampling_is_reproducible_and_trial_local() {
        let psi = psi_state(&PsiParams::default());
        let obs = [z(1), z(2), z(3)];
        let a = sample_joint(&psi, &obs, 11, 200).unwrap();
        let b = sample_joint(&psi, &obs, 11, 200).unwrap();
        assert_eq!(a, b);
        let sampler = JointSampler::new(&psi, &obs, 11).unwrap();
        assert_eq!(sampler.trial(137), a[137]);
        let c = sample_joint(&psi, &obs, 12, 200).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_eigenstate_is_deterministic() {
        let plus = ket("+").unwrap();
        let sz = crate::spin::pauli(Axis::Z);
        let records = sample_joint(&plus, &[sz], 3, 500).unwrap();
        assert!(records.iter().all(|r| r.values() == alloc::vec![1.0]));
    }

    #[test]
    fn sampling_rejects_incompatible_sets() {
        let psi = psi_state(&PsiParams::default());
        assert!(matches!(
            sample_joint(&psi, &[z(1), x(1)], 0, 10),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn ghz_parity_holds_in_every_trial() {
        let records = sample_joint(&ghz_mermin_state(), &[x(1), x(2), x(3)], 5, 2000).unwrap();
        assert!(records.iter().all(|r| r.product() == -1.0));
        for r in &records {
            assert!((r.post_state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
