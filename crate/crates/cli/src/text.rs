use std::fmt::Write;

use jser_core::inference::{CheckValue, SamplingReport};

use crate::Report;

fn value(v: &CheckValue) -> String {
    match v {
        CheckValue::Number(x) => format!("{x}"),
        CheckValue::Integer(n) => format!("{n}"),
        CheckValue::Bool(b) => format!("{b}"),
        CheckValue::Text(s) => s.clone(),
    }
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn signed(v: f64) -> String {
    format!("{v:+}")
}

fn sampling(out: &mut String, s: &SamplingReport) {
    let _ = writeln!(
        out,
        "sampling: {} trials per state, seed {}, rng {}",
        s.trials, s.seed, s.rng
    );
    for e in &s.experiments {
        let states = if e.states > 1 {
            format!(" ({} states pooled)", e.states)
        } else {
            String::new()
        };
        let _ = writeln!(out, "  {}{}", e.name, states);
        for r in &e.rows {
            let outcome: Vec<String> = r.outcome.iter().map(|&v| signed(v)).collect();
            let z = match r.z_score {
                Some(z) => format!("z = {z:+.3}"),
                None => format!("violations = {}", r.violations),
            };
            let _ = writeln!(
                out,
                "    ({}) count {:>8}  freq {:.6}  expected {:.6}  {}",
                outcome.join(", "),
                r.count,
                r.frequency,
                r.expected,
                z
            );
        }
        if let Some(p) = e.parity {
            let _ = writeln!(
                out,
                "    product = {} in every trial: {} violations",
                signed(p),
                e.parity_violations
            );
        }
        let _ = writeln!(
            out,
            "    max |z| = {:.3}, hard violations = {} -> {}",
            e.max_abs_z(),
            e.hard_violations(),
            if e.passed() { "PASS" } else { "FAIL" }
        );
    }
}

fn report(out: &mut String, r: &Report) {
    let a = &r.analytic;
    let _ = writeln!(out, "scenario: {}", r.scenario.name());
    if let Some(p) = &a.parameters {
        let _ = writeln!(out, "parameters: a = {}, b = {}", p.a(), p.b());
    }
    if let Some(p) = &a.post_selection {
        let outcomes: Vec<String> = p
            .assignment
            .describe()
            .into_iter()
            .map(|(l, v)| format!("{l} = {}", signed(v)))
            .collect();
        let _ = writeln!(
            out,
            "post-selection probability P({}) = {}",
            outcomes.join(", "),
            p.probability
        );
    }
    let _ = writeln!(out, "SER claims:");
    for c in &a.ser_claims {
        let _ = writeln!(
            out,
            "  {}  [{} -> {}]  {}",
            c.claim.describe(),
            c.claim.inferring_region,
            c.claim.target_region,
            c.certification
        );
    }
    let checks = r.checks();
    let _ = writeln!(out, "checks:");
    for c in &checks {
        let _ = writeln!(
            out,
            "  {}  {}  [{}]  expected {}, computed {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.description,
            c.anchor,
            value(&c.expected),
            value(&c.computed)
        );
    }
    if let Some(s) = &r.sampling {
        sampling(out, s);
    }
    let _ = writeln!(
        out,
        "verdicts: incompleteness = {}, contradiction = {}",
        verdict(a.incompleteness_verdict),
        verdict(a.contradiction_verdict)
    );
    let passed = checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(
        out,
        "result: {} ({passed}/{} checks passed)",
        if passed == checks.len() {
            "PASS"
        } else {
            "FAIL"
        },
        checks.len()
    );
}

pub fn render(reports: &[Report]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        report(&mut out, r);
    }
    out
}
