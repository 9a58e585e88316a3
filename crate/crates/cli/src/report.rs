//! Text and JSON forms of stage reports.

use std::fmt::Write as _;

use cmc4_core::render;
use cmc4_core::replay::{FixtureMatch, StageReport, StepRecord, Verdict};
use serde::Serialize;

#[derive(Serialize)]
struct StageJson<'a> {
    stage: &'a str,
    verdict: &'static str,
    elapsed_ms: f64,
    steps: Vec<StepJson<'a>>,
    checks: Vec<CheckJson<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notes: Option<&'a [String]>,
}

#[derive(Serialize)]
struct StepJson<'a> {
    id: &'a str,
    paper_eq: Option<&'a str>,
    #[serde(rename = "match")]
    fixture_match: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diff: Option<&'a [String]>,
    method: String,
    weight: Option<i64>,
    degree_summary: String,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    removed_factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notes: Option<&'a [String]>,
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "Certified",
        Verdict::BestEffort => "BestEffort",
        Verdict::Failed => "Failed",
    }
}

/// `"sylvester-bareiss"` and `"linear solve"` become `SylvesterBareiss`
/// and `LinearSolve`.
pub fn method_name(m: &str) -> String {
    m.split(|c: char| c == '-' || c == ' ' || c == '_')
        .filter(|w| !w.is_empty())
        .map(|w| {
            let mut cs = w.chars();
            cs.next()
                .map(|c| c.to_uppercase().chain(cs).collect::<String>())
                .unwrap_or_default()
        })
        .collect()
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn step_json(s: &StepRecord, verbose: bool) -> StepJson<'_> {
    let (name, scalar, diff) = match &s.fixture_match {
        FixtureMatch::Exact => ("Exact", None, None),
        FixtureMatch::UpToScalar { num, den } => {
            let r = if *den == 1.into() {
                num.to_string()
            } else {
                format!("{num}/{den}")
            };
            ("UpToScalar", Some(r), None)
        }
        FixtureMatch::Mismatch { diff } => ("Mismatch", None, Some(diff.as_slice())),
        FixtureMatch::NoFixture => ("NoFixture", None, None),
    };
    StepJson {
        id: &s.id,
        paper_eq: (!s.paper_eq.is_empty()).then_some(s.paper_eq.as_str()),
        fixture_match: name,
        scalar,
        diff,
        method: method_name(&s.method),
        weight: s.weight.value(),
        degree_summary: s.degree_summary(),
        elapsed_ms: ms(s.elapsed),
        derived: verbose.then(|| render(&s.derived)),
        removed_factors: verbose.then(|| {
            s.removed_factors
                .iter()
                .map(|(p, k)| format!("({})^{k}", render(p)))
                .collect()
        }),
        notes: (verbose && !s.notes.is_empty()).then_some(s.notes.as_slice()),
    }
}

/// JSON array with one object per report; `[]` when there are none.
pub fn emit_json(reports: &[StageReport], verbose: bool) -> String {
    let stages: Vec<StageJson<'_>> = reports
        .iter()
        .map(|r| StageJson {
            stage: r.stage.name(),
            verdict: verdict_name(r.verdict),
            elapsed_ms: ms(r.elapsed),
            steps: r.steps.iter().map(|s| step_json(s, verbose)).collect(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: &c.name,
                    passed: c.passed,
                    detail: &c.detail,
                })
                .collect(),
            notes: (!r.notes.is_empty()).then_some(r.notes.as_slice()),
        })
        .collect();
    if stages.is_empty() {
        return "[]".to_string();
    }
    serde_json::to_string_pretty(&stages).expect("report serializes")
}

/// Human-readable report.
pub fn emit_text(reports: &[StageReport], verbose: bool) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "== {} {} ({:.1} ms)",
            r.stage.name(),
            r.verdict,
            ms(r.elapsed)
        );
        for s in &r.steps {
            let _ = writeln!(
                out,
                "  {:<28} {:<10} {:<14} {:<20} {}",
                s.id,
                s.paper_eq,
                s.fixture_match.to_string(),
                s.method,
                s.degree_summary()
            );
            if let FixtureMatch::Mismatch { diff } = &s.fixture_match {
                for d in diff {
                    let _ = writeln!(out, "      {d}");
                }
            }
            if verbose {
                for n in &s.notes {
                    let _ = writeln!(out, "      note: {n}");
                }
                let _ = writeln!(out, "      = {}", render(&s.derived));
            }
        }
        for c in &r.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            if c.detail.is_empty() || c.detail.len() > 120 {
                let _ = writeln!(out, "  [{mark}] {}", c.name);
            } else {
                let _ = writeln!(out, "  [{mark}] {} ({})", c.name, c.detail);
            }
        }
        for n in &r.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let _ = writeln!(
        out,
        "{} stage(s): {} certified, {} best-effort, {} failed",
        reports.len(),
        count(Verdict::Certified),
        count(Verdict::BestEffort),
        count(Verdict::Failed)
    );
    out
}
