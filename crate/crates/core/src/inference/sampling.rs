//! Monte Carlo companions to the scenarios.
//!
//! Each scenario maps to a handful of joint measurements. Every outcome
//! tuple is counted and compared with its Born-rule probability: tuples of
//! probability strictly between 0 and 1 get a z-score, tuples of probability
//! 0 or 1 are hard constraints that must hold in every trial.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

// f64 math in no_std; shadowed by the inherent methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::Result;
use crate::hilbert::{Observable, StateVector};
use crate::measurement::{outcome_probability, JointSampler, OutcomeAssignment, RNG_ALGORITHM};
use crate::random;
use crate::spin::{hardy_projector_3, mermin_a, mermin_b, pauli_on, Axis};
use crate::states::{ghz_mermin_state, psi_state, PsiParams};

use super::Scenario;

/// Random states pooled in the state-independent impossibility scans.
pub const RANDOM_SCAN_STATES: usize = 20;
/// Calibration threshold on `|z|`.
pub const Z_LIMIT: f64 = 4.0;
const NULL: f64 = 1e-12;
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyRow {
    pub outcome: Vec<f64>,
    pub count: u64,
    pub frequency: f64,
    /// Analytic probability (mean over states for pooled scans).
    pub expected: f64,
    /// `None` for hard-constraint rows.
    pub z_score: Option<f64>,
    /// Trials contradicting a probability-0 or probability-1 row.
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub name: String,
    pub observables: Vec<String>,
    pub states: usize,
    pub trials: u64,
    pub rows: Vec<FrequencyRow>,
    /// Required product of all outcomes in every trial, when there is one.
    pub parity: Option<f64>,
    pub parity_violations: u64,
    /// Outcome tuples with positive probability that never showed up.
    pub unobserved: Vec<Vec<f64>>,
}

impl Experiment {
    pub fn hard_violations(&self) -> u64 {
        self.rows.iter().map(|r| r.violations).sum::<u64>() + self.parity_violations
    }

    pub fn max_abs_z(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.z_score)
            .map(f64::abs)
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.hard_violations() == 0 && self.max_abs_z() < Z_LIMIT
    }

    /// Row for a given outcome tuple.
    pub fn row(&self, outcome: &[f64]) -> Option<&FrequencyRow> {
        self.rows.iter().find(|r| r.outcome == outcome)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingReport {
    pub scenario: Scenario,
    pub seed: u64,
    pub trials: u64,
    pub rng: &'static str,
    pub experiments: Vec<Experiment>,
}

impl SamplingReport {
    pub fn passed(&self) -> bool {
        self.experiments.iter().all(Experiment::passed)
    }
}

struct Plan {
    name: String,
    states: Vec<StateVector>,
    observables: Vec<Observable>,
    parity: Option<f64>,
}

fn outcome_tuples(observables: &[Observable]) -> Vec<Vec<usize>> {
    let mut tuples = vec![Vec::new()];
    for op in observables {
        let n = op.eigenvalues().len();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..n).rev().map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    tuples
}

fn run_plan(plan: &Plan, index: u64, seed: u64, trials: u64) -> Result<Experiment> {
    let tuples = outcome_tuples(&plan.observables);
    let radix: Vec<usize> = plan
        .observables
        .iter()
        .map(|o| o.eigenvalues().len())
        .collect();
    let flat = |picks: &[usize]| {
        picks
            .iter()
            .zip(&radix)
            .fold(0usize, |acc, (&k, &r)| acc * r + k)
    };
    let slots = radix.iter().product::<usize>();

    let mut counts = vec![0u64; slots];
    let mut probs = vec![Vec::with_capacity(plan.states.len()); slots];
    let mut parity_violations = 0u64;
    for (s, state) in plan.states.iter().enumerate() {
        for t in &tuples {
            let pairs = plan
                .observables
                .iter()
                .zip(t)
                .map(|(o, &k)| (o.clone(), o.eigenvalues()[k]))
                .collect();
            probs[flat(t)].push(outcome_probability(state, &OutcomeAssignment::new(pairs)?)?);
        }
        let stream_seed = seed.wrapping_add(SEED_STRIDE.wrapping_mul(index * 64 + s as u64 + 1));
        let sampler = JointSampler::new(state, &plan.observables, stream_seed)?;
        for trial in 0..trials {
            let (picks, _) = sampler.draw(trial);
            counts[flat(&picks)] += 1;
            if let Some(sign) = plan.parity {
                let product: f64 = plan
                    .observables
                    .iter()
                    .zip(&picks)
                    .map(|(o, &k)| o.eigenvalues()[k])
                    .product();
                if product != sign {
                    parity_violations += 1;
                }
            }
        }
    }

    let states = plan.states.len() as f64;
    let total = trials * plan.states.len() as u64;
    let mut rows = Vec::with_capacity(slots);
    let mut unobserved = Vec::new();
    for t in &tuples {
        let slot = flat(t);
        let outcome: Vec<f64> = plan
            .observables
            .iter()
            .zip(t)
            .map(|(o, &k)| o.eigenvalues()[k])
            .collect();
        let ps = &probs[slot];
        let expected = ps.iter().sum::<f64>() / states;
        let count = counts[slot];
        let frequency = if total == 0 {
            0.0
        } else {
            count as f64 / total as f64
        };
        let always_zero = ps.iter().all(|&p| p <= NULL);
        let always_one = ps.iter().all(|&p| p >= 1.0 - NULL);
        let (z_score, violations) = if always_zero {
            (None, count)
        } else if always_one {
            (None, total - count)
        } else {
            // pooled variance of the frequency: Σ_s p_s(1 − p_s) / (S² N)
            let var =
                ps.iter().map(|p| p * (1.0 - p)).sum::<f64>() / (states * states * trials as f64);
            (Some((frequency - expected) / var.sqrt()), 0)
        };
        if !always_zero && count == 0 {
            unobserved.push(outcome.clone());
        }
        rows.push(FrequencyRow {
            outcome,
            count,
            frequency,
            expected,
            z_score,
            violations,
        });
    }

    Ok(Experiment {
        name: plan.name.clone(),
        observables: plan
            .observables
            .iter()
            .map(|o| String::from(o.label()))
            .collect(),
        states: plan.states.len(),
        trials,
        rows,
        parity: plan.parity,
        parity_violations,
        unobserved,
    })
}

fn random_states(seed: u64, count: usize) -> Vec<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    (0..count).map(|_| random::state(&mut rng, 8)).collect()
}

fn plans(scenario: Scenario, params: &PsiParams, seed: u64) -> Result<Vec<Plan>> {
    let z = |p| pauli_on(Axis::Z, p, 3);
    let x = |p| pauli_on(Axis::X, p, 3);
    let y = |p| pauli_on(Axis::Y, p, 3);
    let plan = |name: &str, states: Vec<StateVector>, observables: Vec<Observable>, parity| Plan {
        name: name.into(),
        states,
        observables,
        parity,
    };
    let psi = || vec![psi_state(params)];
    let mu = || vec![ghz_mermin_state()];
    Ok(match scenario {
        Scenario::EprPsi => vec![plan(
            "psi: sz(1) sz(2) sz(3)",
            psi(),
            vec![z(1)?, z(2)?, z(3)?],
            None,
        )],
        Scenario::BellHardy => vec![
            plan(
                "psi: sx(1) sx(2) sz(3)",
                psi(),
                vec![x(1)?, x(2)?, z(3)?],
                None,
            ),
            plan(
                "random states: sz(1) sz(2) pi(1+2)",
                random_states(seed, RANDOM_SCAN_STATES),
                vec![z(1)?, z(2)?, hardy_projector_3()],
                None,
            ),
        ],
        Scenario::EprGhz => {
            let mut v = vec![plan(
                "mu: sy(1) sy(2) sy(3)",
                mu(),
                vec![y(1)?, y(2)?, y(3)?],
                None,
            )];
            for j in 1..=3 {
                let name = format!("mu: sy({j}) A{j}");
                // A_j takes the value measured for sy(j)
                v.push(plan(&name, mu(), vec![y(j)?, mermin_a(j)?], Some(1.0)));
            }
            v
        }
        Scenario::BellGhz => {
            let mut v = vec![plan(
                "mu: sx(1) sx(2) sx(3)",
                mu(),
                vec![x(1)?, x(2)?, x(3)?],
                Some(-1.0),
            )];
            for j in 1..=3 {
                let name = format!("mu: sx({j}) B{j}");
                v.push(plan(&name, mu(), vec![x(j)?, mermin_b(j)?], Some(1.0)));
            }
            v.push(plan(
                "mu: B1 B2 B3",
                mu(),
                vec![mermin_b(1)?, mermin_b(2)?, mermin_b(3)?],
                Some(1.0),
            ));
            v.push(plan(
                "random states: B1 B2 B3",
                random_states(seed, RANDOM_SCAN_STATES),
                vec![mermin_b(1)?, mermin_b(2)?, mermin_b(3)?],
                Some(1.0),
            ));
            v
        }
    })
}

/// Runs every sampling experiment of `scenario` with `trials` trials per state.
pub fn sample_scenario(
    scenario: Scenario,
    params: &PsiParams,
    seed: u64,
    trials: u64,
) -> Result<SamplingReport> {
    let experiments = plans(scenario, params, seed)?
        .iter()
        .enumerate()
        .map(|(k, p)| run_plan(p, k as u64, seed, trials))
        .collect::<Result<Vec<_>>>()?;
    Ok(SamplingReport {
        scenario,
        seed,
        trials,
        rng: RNG_ALGORITHM,
        experiments,
    })
}
