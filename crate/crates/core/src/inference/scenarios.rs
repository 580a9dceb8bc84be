//! The four scenario runners: two incompleteness arguments and two
//! contradictions between joint SERs and quantum predictions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hilbert::{has_common_eigenstate, Observable, Operator, StateVector, Tensor};
use crate::measurement::{
    collapse, commutes, conditional_probability, outcome_probability, OutcomeAssignment,
};
use crate::spin::{
    complement_of, hardy_projector, hardy_projector_3, mermin_a, mermin_b, pauli_on, pauli_product,
    Axis,
};
use crate::states::{ghz_mermin_state, hardy_state, ket, psi_state, PsiParams};

use super::{certify_ser_with, signed, Certification, Region, SerClaim, CERTAINTY_TOL};

/// Tolerance for exact operator and probability identities.
const IDENTITY_TOL: f64 = 1e-12;
const PLUMBING: &str = "plumbing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    EprPsi,
    EprGhz,
    BellHardy,
    BellGhz,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::EprPsi,
        Scenario::EprGhz,
        Scenario::BellHardy,
        Scenario::BellGhz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::EprPsi => "epr-psi",
            Scenario::EprGhz => "epr-ghz",
            Scenario::BellHardy => "bell-hardy",
            Scenario::BellGhz => "bell-ghz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Whether the scenario runs on the `(a, b)` family.
    pub fn uses_params(self) -> bool {
        matches!(self, Scenario::EprPsi | Scenario::BellHardy)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioOptions {
    /// Certainty threshold for SER certification.
    pub tolerance: f64,
    /// Replace the claim with this index (emission order) by its flipped
    /// prediction. Fault injection for exercising the failure path.
    pub flip_ser: Option<usize>,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            tolerance: CERTAINTY_TOL,
            flip_ser: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckValue {
    Number(f64),
    Integer(u64),
    Bool(bool),
    Text(String),
}

/// One verified statement: what was expected, what was computed, and whether they agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub description: String,
    /// The claim being checked, or `"plumbing"` for internal consistency checks.
    pub anchor: String,
    pub expected: CheckValue,
    pub computed: CheckValue,
    pub pass: bool,
}

impl Check {
    fn close(
        description: impl Into<String>,
        anchor: &str,
        expected: f64,
        computed: f64,
        tol: f64,
    ) -> Self {
        Check {
            description: description.into(),
            anchor: anchor.into(),
            expected: CheckValue::Number(expected),
            computed: CheckValue::Number(computed),
            pass: (expected - computed).abs() < tol,
        }
    }

    fn below(description: impl Into<String>, anchor: &str, bound: f64, computed: f64) -> Self {
        Check {
            description: description.into(),
            anchor: anchor.into(),
            expected: CheckValue::Text(format!("< {bound:e}")),
            computed: CheckValue::Number(computed),
            pass: computed < bound,
        }
    }

    fn flag(description: impl Into<String>, anchor: &str, expected: bool, computed: bool) -> Self {
        Check {
            description: description.into(),
            anchor: anchor.into(),
            expected: CheckValue::Bool(expected),
            computed: CheckValue::Bool(computed),
            pass: expected == computed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub claim: SerClaim,
    pub certification: Certification,
}

#[derive(Clone, Debug)]
pub struct PostSelection {
    pub assignment: OutcomeAssignment,
    pub probability: f64,
}

#[derive(Clone, Debug)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub parameters: Option<PsiParams>,
    pub post_selection: Option<PostSelection>,
    pub ser_claims: Vec<ClaimResult>,
    pub incompleteness_verdict: Option<bool>,
    pub contradiction_verdict: Option<bool>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn all_certified(&self) -> bool {
        self.ser_claims
            .iter()
            .all(|c| c.certification.is_certified())
    }
}

/// Collects claims and checks while a scenario runs.
struct Builder {
    state: StateVector,
    options: ScenarioOptions,
    claims: Vec<ClaimResult>,
    checks: Vec<Check>,
}

impl Builder {
    fn new(state: StateVector, options: ScenarioOptions) -> Self {
        let mut b = Builder {
            state,
            options,
            claims: Vec::new(),
            checks: Vec::new(),
        };
        let norm = b.state.norm_sqr();
        b.checks.push(Check::close(
            "state is normalized",
            PLUMBING,
            1.0,
            norm,
            IDENTITY_TOL,
        ));
        b
    }

    fn claim(&mut self, claim: SerClaim, anchor: &str) -> Result<()> {
        let claim = if self.options.flip_ser == Some(self.claims.len()) {
            claim.flipped()
        } else {
            claim
        };
        let certification = certify_ser_with(&self.state, &claim, self.options.tolerance);
        self.checks.push(Check {
            description: format!(
                "SER {} certified, regions {} -> {}",
                claim.describe(),
                claim.inferring_region,
                claim.target_region
            ),
            anchor: anchor.into(),
            expected: CheckValue::Text(String::from("certified")),
            computed: CheckValue::Text(format!("{certification}")),
            pass: certification.is_certified(),
        });
        self.claims.push(ClaimResult {
            claim,
            certification,
        });
        Ok(())
    }

    fn finish(self) -> Result<(Vec<ClaimResult>, Vec<Check>)> {
        if let Some(index) = self.options.flip_ser {
            if index >= self.claims.len() {
                return Err(Error::NoSuchClaim {
                    index,
                    count: self.claims.len(),
                });
            }
        }
        Ok((self.claims, self.checks))
    }
}

fn z3(p: usize) -> Result<Observable> {
    pauli_on(Axis::Z, p, 3)
}

fn x3(p: usize) -> Result<Observable> {
    pauli_on(Axis::X, p, 3)
}

fn y3(p: usize) -> Result<Observable> {
    pauli_on(Axis::Y, p, 3)
}

fn single_claim(
    target: Observable,
    value: f64,
    given: Observable,
    given_value: f64,
    from: &[usize],
    to: &[usize],
) -> Result<SerClaim> {
    Ok(SerClaim::new(
        target,
        value,
        OutcomeAssignment::single(given, given_value)?,
        Region::of(from),
        Region::of(to),
    ))
}

fn pm(v: f64) -> &'static str {
    if v > 0.0 {
        "+"
    } else {
        "-"
    }
}

fn branches() -> impl Iterator<Item = [f64; 3]> {
    (0..8u8).map(|k| {
        let bit = |i: u8| if k >> (2 - i) & 1 == 0 { 1.0 } else { -1.0 };
        [bit(0), bit(1), bit(2)]
    })
}

fn projector(op: &Observable, value: f64) -> Operator {
    op.projector_for(value)
        .expect("value taken from the spectrum")
        .clone()
}

/// Incompleteness on `a(|+++⟩ − |+−+⟩ − |−++⟩) + b|−−−⟩`: after post-selecting
/// `sz = (+1, +1, +1)`, SERs `sx(1) = −1`, `sx(2) = −1`, `pi(1+2) = 1` are
/// inferred jointly although the three observables share no eigenstate.
pub fn run_epr_psi(params: &PsiParams, options: &ScenarioOptions) -> Result<ScenarioReport> {
    let psi = psi_state(params);
    let a_sq = params.a().norm_sqr();
    let mut b = Builder::new(psi.clone(), *options);
    let (z1, z2, z3_) = (z3(1)?, z3(2)?, z3(3)?);
    let (x1, x2) = (x3(1)?, x3(2)?);
    let pi = hardy_projector_3();

    let post = OutcomeAssignment::new(vec![
        (z1.clone(), 1.0),
        (z2.clone(), 1.0),
        (z3_.clone(), 1.0),
    ])?;
    let post_p = outcome_probability(&psi, &post)?;
    b.checks.push(Check::close(
        "post-selection sz(1) = sz(2) = sz(3) = +1 has probability |a|^2",
        "P_psi(sz1=+1, sz2=+1, sz3=+1) = |a|^2",
        a_sq,
        post_p,
        IDENTITY_TOL,
    ));

    b.claim(
        single_claim(x2.clone(), -1.0, z1.clone(), 1.0, &[1], &[2])?,
        "P_psi(sx2=-1 | sz1=+1) = 1",
    )?;
    b.claim(
        single_claim(x1.clone(), -1.0, z2.clone(), 1.0, &[2], &[1])?,
        "P_psi(sx1=-1 | sz2=+1) = 1",
    )?;
    b.claim(
        single_claim(pi.clone(), 1.0, z3_.clone(), 1.0, &[3], &[1, 2])?,
        "P_psi(pi12=1 | sz3=+1) = 1",
    )?;

    let compat = "pi(1+2) is compatible with sz(1), sz(2) but not with sx(1), sx(2)";
    for (op, expected) in [(&z1, true), (&z2, true), (&x1, false), (&x2, false)] {
        b.checks.push(Check::flag(
            format!("pi(1+2) commutes with {}", op.label()),
            compat,
            expected,
            commutes(&pi, op)?,
        ));
    }

    let common = has_common_eigenstate(&[x1.clone(), x2.clone(), pi.clone()])?;
    b.checks.push(Check::flag(
        "sx(1), sx(2), pi(1+2) have a common eigenstate",
        "no common eigenstate of sx1 (x) 1, 1 (x) sx2, pi12",
        false,
        common,
    ));

    // Hardy state: same conditional certainties, eigenstate of pi, but the
    // pi value rests on the preparation, which is not separated from the
    // inferring measurements.
    let eta = hardy_state();
    let hardy = "Hardy state satisfies the sx certainties and is a pi(1+2) = 1 eigenstate";
    for (target, given) in [(2, 1), (1, 2)] {
        let p = conditional_probability(
            &eta,
            (&pauli_on(Axis::X, target, 2)?, -1.0),
            &OutcomeAssignment::single(pauli_on(Axis::Z, given, 2)?, 1.0)?,
        )?;
        b.checks.push(Check::close(
            format!("Hardy state: P(sx({target}) = -1 | sz({given}) = +1) = 1"),
            hardy,
            1.0,
            p,
            options.tolerance,
        ));
    }
    let eta_image = hardy_projector().operator().apply(&eta)?;
    b.checks.push(Check::below(
        "Hardy state: max |pi(1+2) eta - eta|",
        hardy,
        IDENTITY_TOL,
        eta_image.max_abs_diff(&eta)?,
    ));
    let product = eta.tensor(&ket("+")?);
    let collapsed = collapse(&psi, &z3_, 1.0)?;
    b.checks.push(Check::close(
        "collapse on sz(3) = +1 gives Hardy state (x) |+> (overlap modulus)",
        "psi = eta (x) |+> entangled with |--> (x) |->",
        1.0,
        collapsed.overlap(&product)?,
        IDENTITY_TOL,
    ));
    let prepared = SerClaim::new(
        pi.clone(),
        1.0,
        OutcomeAssignment::empty(),
        Region::of(&[1, 2]),
        Region::of(&[1, 2]),
    );
    let verdict = certify_ser_with(&product, &prepared, options.tolerance);
    b.checks.push(Check {
        description: String::from(
            "Hardy state: pi(1+2) = 1 from the preparation is not a SER (region overlap)",
        ),
        anchor: String::from(
            "preparation of the Hardy state is not spacelike separated from the measurements",
        ),
        expected: CheckValue::Text(format!("{}", Certification::RegionsOverlap)),
        computed: CheckValue::Text(format!("{verdict}")),
        pass: verdict == Certification::RegionsOverlap,
    });

    let (claims, checks) = b.finish()?;
    let certified = claims.iter().all(|c| c.certification.is_certified());
    Ok(ScenarioReport {
        scenario: Scenario::EprPsi,
        parameters: Some(*params),
        post_selection: Some(PostSelection {
            assignment: post,
            probability: post_p,
        }),
        ser_claims: claims,
        incompleteness_verdict: Some(certified && !common),
        contradiction_verdict: None,
        checks,
    })
}

/// Incompleteness on the GHZ-Mermin state: in every `sy` branch
/// `(e1, e2, e3)`, each `A_j = e_j` is a SER, while no two `A_j` share an
/// eigenstate.
pub fn run_epr_ghz(options: &ScenarioOptions) -> Result<ScenarioReport> {
    let mu = ghz_mermin_state();
    let mut b = Builder::new(mu.clone(), *options);
    let ys = [y3(1)?, y3(2)?, y3(3)?];
    let a = [mermin_a(1)?, mermin_a(2)?, mermin_a(3)?];

    for eps in branches() {
        let tag = format!("({}{}{})", pm(eps[0]), pm(eps[1]), pm(eps[2]));
        let joint = OutcomeAssignment::new(ys.iter().cloned().zip(eps).collect())?;
        let p = outcome_probability(&mu, &joint)?;
        b.checks.push(Check {
            description: format!("sy branch {tag} can occur"),
            anchor: String::from("SERs inferred whatever the sy results"),
            expected: CheckValue::Text(String::from("> 0")),
            computed: CheckValue::Number(p),
            pass: p > IDENTITY_TOL,
        });
        for j in 0..3 {
            let claim = single_claim(
                a[j].clone(),
                eps[j],
                ys[j].clone(),
                eps[j],
                &[j + 1],
                &complement_of(j + 1),
            )?;
            b.claim(
                claim,
                &format!("P_mu(A{0}={1} | sy{0}={1}) = 1", j + 1, signed(eps[j])),
            )?;
        }
    }

    let mut any_common = false;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let common = has_common_eigenstate(&[a[i].clone(), a[j].clone()])?;
        any_common |= common;
        b.checks.push(Check::flag(
            format!("A{} and A{} have a common eigenstate", i + 1, j + 1),
            "no common eigenstate for any two A_j",
            false,
            common,
        ));
    }

    let (claims, checks) = b.finish()?;
    let certified = claims.iter().all(|c| c.certification.is_certified());
    Ok(ScenarioReport {
        scenario: Scenario::EprGhz,
        parameters: None,
        post_selection: None,
        ser_claims: claims,
        incompleteness_verdict: Some(certified && !any_common),
        contradiction_verdict: None,
        checks,
    })
}

/// Hardy-type contradiction: post-selecting `sx(1) = sx(2) = sz(3) = +1`
/// yields SERs `sz(2) = −1`, `sz(1) = −1`, `pi(1+2) = 1` on compatible
/// observables, a joint outcome no quantum state can produce.
pub fn run_bell_hardy(params: &PsiParams, options: &ScenarioOptions) -> Result<ScenarioReport> {
    let psi = psi_state(params);
    let a_sq = params.a().norm_sqr();
    let mut b = Builder::new(psi.clone(), *options);
    let (z1, z2, z3_) = (z3(1)?, z3(2)?, z3(3)?);
    let (x1, x2) = (x3(1)?, x3(2)?);
    let pi = hardy_projector_3();

    let post = OutcomeAssignment::new(vec![
        (x1.clone(), 1.0),
        (x2.clone(), 1.0),
        (z3_.clone(), 1.0),
    ])?;
    let post_p = outcome_probability(&psi, &post)?;
    b.checks.push(Check::close(
        "post-selection sx(1) = sx(2) = sz(3) = +1 has probability |a|^2/4",
        "P_psi(sx1=+1, sx2=+1, sz3=+1) = |a|^2/4",
        a_sq / 4.0,
        post_p,
        IDENTITY_TOL,
    ));

    b.claim(
        single_claim(z2.clone(), -1.0, x1.clone(), 1.0, &[1], &[2])?,
        "P_psi(sz2=-1 | sx1=+1) = 1",
    )?;
    b.claim(
        single_claim(z1.clone(), -1.0, x2.clone(), 1.0, &[2], &[1])?,
        "P_psi(sz1=-1 | sx2=+1) = 1",
    )?;
    b.claim(
        single_claim(pi.clone(), 1.0, z3_.clone(), 1.0, &[3], &[1, 2])?,
        "P_psi(pi12=1 | sz3=+1) = 1",
    )?;

    let compat = "sz(1), sz(2), pi(1+2) are compatible";
    for (p, q) in [(&z1, &z2), (&z1, &pi), (&z2, &pi)] {
        b.checks.push(Check::flag(
            format!("{} commutes with {}", p.label(), q.label()),
            compat,
            true,
            commutes(p, q)?,
        ));
    }

    let zero_op = &(&projector(&z1, -1.0) * &projector(&z2, -1.0)) * &projector(&pi, 1.0);
    let zero_norm = zero_op.max_abs();
    let impossible = "sz1 = sz2 = -1 forces pi12 = 0 in any state";
    b.checks.push(Check::below(
        "max |P(sz(1)=-1) P(sz(2)=-1) P(pi(1+2)=1)|",
        impossible,
        IDENTITY_TOL,
        zero_norm,
    ));
    let inferred = OutcomeAssignment::new(vec![
        (z1.clone(), -1.0),
        (z2.clone(), -1.0),
        (pi.clone(), 1.0),
    ])?;
    b.checks.push(Check::below(
        "P_psi(sz(1) = -1, sz(2) = -1, pi(1+2) = 1)",
        impossible,
        IDENTITY_TOL,
        outcome_probability(&psi, &inferred)?,
    ));

    let (claims, checks) = b.finish()?;
    let certified = claims.iter().all(|c| c.certification.is_certified());
    Ok(ScenarioReport {
        scenario: Scenario::BellHardy,
        parameters: Some(*params),
        post_selection: Some(PostSelection {
            assignment: post,
            probability: post_p,
        }),
        ser_claims: claims,
        incompleteness_verdict: None,
        contradiction_verdict: Some(certified && zero_norm < IDENTITY_TOL),
        checks,
    })
}

/// Mermin-type contradiction: in every reachable `sx` branch the SERs
/// `B_j = e_j` multiply to `e1 e2 e3 = −1`, yet `B1 B2 B3 = 𝟙`.
pub fn run_bell_ghz(options: &ScenarioOptions) -> Result<ScenarioReport> {
    let mu = ghz_mermin_state();
    let mut b = Builder::new(mu.clone(), *options);
    let xs = [x3(1)?, x3(2)?, x3(3)?];
    let bs = [mermin_b(1)?, mermin_b(2)?, mermin_b(3)?];

    let mut inferred_all_negative = true;
    for eps in branches() {
        let tag = format!("({}{}{})", pm(eps[0]), pm(eps[1]), pm(eps[2]));
        let joint = OutcomeAssignment::new(xs.iter().cloned().zip(eps).collect())?;
        let p = outcome_probability(&mu, &joint)?;
        let product = eps[0] * eps[1] * eps[2];
        if p <= IDENTITY_TOL {
            b.checks.push(Check::close(
                format!("sx branch {tag} is unreachable and has e1 e2 e3 = +1"),
                "P_mu(sx1 sx2 sx3 = -1) = 1",
                1.0,
                product,
                0.5,
            ));
            continue;
        }
        for j in 0..3 {
            let claim = single_claim(
                bs[j].clone(),
                eps[j],
                xs[j].clone(),
                eps[j],
                &[j + 1],
                &complement_of(j + 1),
            )?;
            b.claim(
                claim,
                &format!("P_mu(B{0}={1} | sx{0}={1}) = 1", j + 1, signed(eps[j])),
            )?;
        }
        inferred_all_negative &= product == -1.0;
        b.checks.push(Check::close(
            format!("sx branch {tag}: inferred B1 B2 B3 = e1 e2 e3"),
            "inferred SERs satisfy e1 e2 e3 = -1",
            -1.0,
            product,
            0.5,
        ));
    }

    let xxx = pauli_product(&[(1, Axis::X), (2, Axis::X), (3, Axis::X)], 3)?;
    let parity = outcome_probability(&mu, &OutcomeAssignment::single(xxx, -1.0)?)?;
    b.checks.push(Check::close(
        "P_mu(sx(1) sx(2) sx(3) = -1)",
        "P_mu(sx1 sx2 sx3 = -1) = 1",
        1.0,
        parity,
        IDENTITY_TOL,
    ));

    let product = &(bs[0].operator() * bs[1].operator()) * bs[2].operator();
    let identity_defect = product.max_abs_diff(&Operator::identity(8)?)?;
    b.checks.push(Check::below(
        "max |B1 B2 B3 - 1|",
        "B1 B2 B3 is the unit operator",
        IDENTITY_TOL,
        identity_defect,
    ));

    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        b.checks.push(Check::flag(
            format!("B{} commutes with B{}", i + 1, j + 1),
            "B1, B2, B3 are compatible",
            true,
            commutes(&bs[i], &bs[j])?,
        ));
    }

    let (claims, checks) = b.finish()?;
    let certified = claims.iter().all(|c| c.certification.is_certified());
    let contradiction = certified
        && inferred_all_negative
        && (parity - 1.0).abs() < IDENTITY_TOL
        && identity_defect < IDENTITY_TOL;
    Ok(ScenarioReport {
        scenario: Scenario::BellGhz,
        parameters: None,
        post_selection: None,
        ser_claims: claims,
        incompleteness_verdict: None,
        contradiction_verdict: Some(contradiction),
        checks,
    })
}

/// Dispatches on `scenario`; `params` is ignored by the GHZ scenarios.
pub fn run_scenario(
    scenario: Scenario,
    params: &PsiParams,
    options: &ScenarioOptions,
) -> Result<ScenarioReport> {
    match scenario {
        Scenario::EprPsi => run_epr_psi(params, options),
        Scenario::EprGhz => run_epr_ghz(options),
        Scenario::BellHardy => run_bell_hardy(params, options),
        Scenario::BellGhz => run_bell_ghz(options),
    }
}
