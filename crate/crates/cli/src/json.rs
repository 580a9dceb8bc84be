use std::str::FromStr;

use jser_core::inference::{
    Certification, CheckValue, ClaimResult, Experiment, SamplingReport, Z_LIMIT,
};
use jser_core::states::PsiParams;
use serde_json::{json, Map, Number, Value};

use crate::Report;

/// Reals are written with 17 significant digits so they round-trip exactly.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(
            Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"),
        )
    } else {
        Value::Null
    }
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn check_value(v: &CheckValue) -> Value {
    match v {
        CheckValue::Number(x) => num(*x),
        CheckValue::Integer(n) => json!(n),
        CheckValue::Bool(b) => json!(b),
        CheckValue::Text(s) => json!(s),
    }
}

fn params(p: &PsiParams) -> Value {
    json!({
        "a": { "re": num(p.a().re), "im": num(p.a().im) },
        "b": { "re": num(p.b().re), "im": num(p.b().im) },
    })
}

fn status(c: &Certification) -> &'static str {
    match c {
        Certification::Certified { .. } => "certified",
        Certification::NotCertain { .. } => "not_certain",
        Certification::RegionsOverlap => "regions_overlap",
        Certification::ConditioningOutsideRegion { .. } => "conditioning_outside_region",
        Certification::TargetOutsideRegion { .. } => "target_outside_region",
        Certification::Undefined(_) => "undefined",
    }
}

fn claim(c: &ClaimResult) -> Value {
    let conditioning: Vec<Value> = c
        .claim
        .conditioning
        .describe()
        .into_iter()
        .map(|(label, value)| json!({ "observable": label, "value": num(value) }))
        .collect();
    json!({
        "claim": c.claim.describe(),
        "target": c.claim.target.label(),
        "predicted_value": num(c.claim.predicted_value),
        "conditioning": conditioning,
        "inferring_region": c.claim.inferring_region.particles(),
        "target_region": c.claim.target_region.particles(),
        "status": status(&c.certification),
        "certified": c.certification.is_certified(),
        "probability": c.certification.probability().map_or(Value::Null, num),
        "detail": c.certification.to_string(),
    })
}

fn experiment(e: &Experiment) -> Value {
    json!({
        "name": e.name,
        "observables": e.observables,
        "states": e.states,
        "trials_per_state": e.trials,
        "parity": e.parity.map_or(Value::Null, num),
        "parity_violations": e.parity_violations,
        "hard_violations": e.hard_violations(),
        "max_abs_z": num(e.max_abs_z()),
        "unobserved": e.unobserved.iter().map(|o| nums(o)).collect::<Vec<_>>(),
        "pass": e.passed(),
    })
}

fn sampling(s: &SamplingReport) -> Value {
    let mut frequencies = Vec::new();
    let mut z_scores = Vec::new();
    for e in &s.experiments {
        for r in &e.rows {
            frequencies.push(json!({
                "experiment": e.name,
                "outcome": nums(&r.outcome),
                "count": r.count,
                "frequency": num(r.frequency),
                "expected": num(r.expected),
                "violations": r.violations,
            }));
            if let Some(z) = r.z_score {
                z_scores.push(
                    json!({ "experiment": e.name, "outcome": nums(&r.outcome), "z": num(z) }),
                );
            }
        }
    }
    json!({
        "trials": s.trials,
        "rng": s.rng,
        "z_limit": num(Z_LIMIT),
        "experiments": s.experiments.iter().map(experiment).collect::<Vec<_>>(),
        "frequencies": frequencies,
        "z_scores": z_scores,
        "pass": s.passed(),
    })
}

fn verdict(v: Option<bool>) -> Value {
    v.map_or(Value::Null, Value::Bool)
}

fn report(r: &Report) -> Value {
    let a = &r.analytic;
    let checks: Vec<Value> = r
        .checks()
        .iter()
        .map(|c| {
            json!({
                "description": c.description,
                "paper_anchor": c.anchor,
                "expected": check_value(&c.expected),
                "computed": check_value(&c.computed),
                "pass": c.pass,
            })
        })
        .collect();
    let post_selection = a.post_selection.as_ref().map_or(Value::Null, |p| {
        let outcomes: Vec<Value> = p
            .assignment
            .describe()
            .into_iter()
            .map(|(label, value)| json!({ "observable": label, "value": num(value) }))
            .collect();
        json!({ "outcomes": outcomes, "probability": num(p.probability) })
    });
    let mut m = Map::new();
    m.insert("scenario".into(), json!(r.scenario.name()));
    m.insert(
        "parameters".into(),
        a.parameters.as_ref().map_or(Value::Null, params),
    );
    m.insert("seed".into(), json!(r.seed));
    m.insert(
        "pass".into(),
        json!(checks.iter().all(|c| c["pass"] == true)),
    );
    m.insert("checks".into(), Value::Array(checks));
    m.insert("post_selection".into(), post_selection);
    m.insert(
        "ser_claims".into(),
        Value::Array(a.ser_claims.iter().map(claim).collect()),
    );
    m.insert(
        "sampling".into(),
        r.sampling.as_ref().map_or(Value::Null, sampling),
    );
    m.insert(
        "verdicts".into(),
        json!({
            "incompleteness": verdict(a.incompleteness_verdict),
            "contradiction": verdict(a.contradiction_verdict),
        }),
    );
    m.insert(
        "incompleteness_verdict".into(),
        verdict(a.incompleteness_verdict),
    );
    m.insert(
        "contradiction_verdict".into(),
        verdict(a.contradiction_verdict),
    );
    Value::Object(m)
}

/// One object for a single scenario, an array for several.
pub fn render(reports: &[Report]) -> String {
    let value = match reports {
        [single] => report(single),
        many => Value::Array(many.iter().map(report).collect()),
    };
    let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
    s.push('\n');
    s
}
