//! Stage drivers. Each stage recomputes a block of the argument with the
//! lower layers and compares every intermediate polynomial with its
//! transcription.

mod case_a;
mod case_b;
mod frame_stage;
mod section3;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::elim::{degree_summary, strip_factors_compressed};
use crate::exprio::{render, FixtureSet};
use crate::poly::{Monomial, Poly, VarTable, Weight};

pub use section3::{
    closure_budget_default, newton4, newton5, radial_forms, ClosureBudget, RadialForms,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    Identities,
    Lemma33,
    Lemma34,
    CaseA,
    CaseB,
    Frame,
    CaseIII,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Identities,
        Stage::Lemma33,
        Stage::Lemma34,
        Stage::CaseA,
        Stage::CaseB,
        Stage::Frame,
        Stage::CaseIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Identities => "identities",
            Stage::Lemma33 => "lemma33",
            Stage::Lemma34 => "lemma34",
            Stage::CaseA => "caseA",
            Stage::CaseB => "caseB",
            Stage::Frame => "frame",
            Stage::CaseIII => "caseiii",
        }
    }

    pub fn from_name(s: &str) -> Option<Stage> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
    }

    /// Stage that must be certified first.
    pub fn prerequisite(self) -> Option<Stage> {
        match self {
            Stage::Lemma34 => Some(Stage::Lemma33),
            Stage::CaseIII => Some(Stage::Lemma34),
            _ => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureMatch {
    Exact,
    /// `den * derived = num * fixture`.
    UpToScalar {
        num: BigInt,
        den: BigInt,
    },
    Mismatch {
        diff: Vec<String>,
    },
    NoFixture,
}

impl FixtureMatch {
    pub fn is_ok(&self) -> bool {
        matches!(
            self,
            FixtureMatch::Exact | FixtureMatch::UpToScalar { .. } | FixtureMatch::NoFixture
        )
    }
}

impl fmt::Display for FixtureMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureMatch::Exact => f.write_str("exact"),
            FixtureMatch::UpToScalar { num, den } if den.is_one() => write!(f, "scalar {num}"),
            FixtureMatch::UpToScalar { num, den } => write!(f, "scalar {num}/{den}"),
            FixtureMatch::Mismatch { .. } => f.write_str("mismatch"),
            FixtureMatch::NoFixture => f.write_str("no-fixture"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    BestEffort,
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::BestEffort => "best-effort",
            Verdict::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub id: String,
    /// Fixture id the step is checked against; empty when there is none.
    pub paper_eq: String,
    pub derived: Poly,
    pub fixture_match: FixtureMatch,
    pub method: String,
    pub removed_factors: Vec<(Poly, u32)>,
    pub weight: Weight,
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl StepRecord {
    pub fn degree_summary(&self) -> String {
        degree_summary(&self.derived)
    }
}

/// A yes/no fact established by a stage, such as a nonvanishing resultant.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: Stage,
    pub steps: Vec<StepRecord>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

impl StageReport {
    pub fn step(&self, id: &str) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.id == id)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Compares a derived polynomial with a transcription after removing the
/// given nonvanishing factors from both.
pub fn compare_fixture(derived: &Poly, fixture: Option<&Poly>, declared: &[Poly]) -> FixtureMatch {
    let Some(fixture) = fixture else {
        return FixtureMatch::NoFixture;
    };
    let derived = match derived.to_table(fixture.vars()) {
        Ok(d) => d,
        Err(e) => {
            return FixtureMatch::Mismatch {
                diff: vec![e.to_string()],
            }
        }
    };
    let derived = &derived;
    let declared: Vec<Poly> = declared
        .iter()
        .filter_map(|f| f.to_table(fixture.vars()).ok())
        .collect();
    let declared = &declared[..];
    if derived == fixture {
        return FixtureMatch::Exact;
    }
    if derived.is_zero() || fixture.is_zero() {
        return FixtureMatch::Mismatch {
            diff: monomial_diff(derived, fixture),
        };
    }
    let d = strip_factors_compressed(derived, declared)
        .map(|r| r.0)
        .unwrap_or_else(|_| derived.clone());
    let f = strip_factors_compressed(fixture, declared)
        .map(|r| r.0)
        .unwrap_or_else(|_| fixture.clone());
    if d == f {
        return FixtureMatch::Exact;
    }
    let (ld, lf) = (
        d.leading_coeff().expect("nonzero"),
        f.leading_coeff().expect("nonzero"),
    );
    if d.len() == f.len() && &d.scale(lf) == &f.scale(ld) {
        let g = ld.gcd(lf);
        let (mut num, mut den) = (ld / &g, lf / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        return FixtureMatch::UpToScalar { num, den };
    }
    FixtureMatch::Mismatch {
        diff: monomial_diff(&d, &f),
    }
}

fn monomial_diff(d: &Poly, f: &Poly) -> Vec<String> {
    let dp = d.primitive_part().unwrap_or_else(|_| d.clone());
    let fp = f.primitive_part().unwrap_or_else(|_| f.clone());
    let diff = &dp - &fp;
    let vars = d.vars();
    diff.terms()
        .iter()
        .take(10)
        .map(|(m, c)| {
            let one = Poly::term(vars, m.clone(), BigInt::one());
            let _: &Monomial = m;
            format!("{} * {}", c, render(&one))
        })
        .collect()
}

/// Tunables for the replay.
#[derive(Debug, Clone)]
pub struct ReplayOptions {
    pub closure_budget: ClosureBudget,
    /// Compute the resultant in `kap` directly instead of only the one in
    /// `u = kap^2`. This is the slowest step of the whole replay.
    pub kappa_resultant: bool,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions {
            closure_budget: closure_budget_default(),
            kappa_resultant: true,
        }
    }
}

/// Runs stages against a fixture set, caching reports so prerequisites are
/// computed once.
pub struct Replay {
    fixtures: Arc<FixtureSet>,
    options: ReplayOptions,
    cache: Mutex<HashMap<Stage, StageReport>>,
}

impl Replay {
    pub fn new(fixtures: FixtureSet) -> Self {
        Replay::with_options(fixtures, ReplayOptions::default())
    }

    pub fn with_options(fixtures: FixtureSet, options: ReplayOptions) -> Self {
        Replay {
            fixtures: Arc::new(fixtures),
            options,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn fixtures(&self) -> &FixtureSet {
        &self.fixtures
    }

    pub fn options(&self) -> &ReplayOptions {
        &self.options
    }

    pub fn run(&self, stage: Stage) -> StageReport {
        if let Some(r) = self.cache.lock().expect("cache lock").get(&stage) {
            return r.clone();
        }
        let report = match stage.prerequisite() {
            Some(pre) if !self.run(pre).certified() => {
                let mut b = StageBuilder::new(stage, &self.fixtures);
                b.check(
                    &format!("prerequisite {pre} certified"),
                    false,
                    "prerequisite stage failed".into(),
                );
                b.finish(false)
            }
            _ => match stage {
                Stage::Identities => section3::run_identities(&self.fixtures),
                Stage::Lemma33 => section3::run_lemma33(&self.fixtures),
                Stage::Lemma34 => section3::run_lemma34(&self.fixtures),
                Stage::CaseIII => {
                    section3::run_caseiii_closure(&self.fixtures, &self.options.closure_budget)
                }
                Stage::Frame => frame_stage::run_frame(&self.fixtures),
                Stage::CaseA => case_a::run_case_a(&self.fixtures, self.options.kappa_resultant),
                Stage::CaseB => case_b::run_case_b(&self.fixtures),
            },
        };
        self.cache
            .lock()
            .expect("cache lock")
            .insert(stage, report.clone());
        report
    }
}

pub fn run_identities(fixtures: &FixtureSet) -> StageReport {
    section3::run_identities(fixtures)
}

pub fn run_lemma33(fixtures: &FixtureSet) -> StageReport {
    section3::run_lemma33(fixtures)
}

pub fn run_lemma34(fixtures: &FixtureSet) -> StageReport {
    section3::run_lemma34(fixtures)
}

pub fn run_caseiii_closure(fixtures: &FixtureSet, budget: &ClosureBudget) -> StageReport {
    section3::run_caseiii_closure(fixtures, budget)
}

pub fn run_frame(fixtures: &FixtureSet) -> StageReport {
    frame_stage::run_frame(fixtures)
}

pub fn run_case_a(fixtures: &FixtureSet, kappa_resultant: bool) -> StageReport {
    case_a::run_case_a(fixtures, kappa_resultant)
}

pub fn run_case_b(fixtures: &FixtureSet) -> StageReport {
    case_b::run_case_b(fixtures)
}

/// Accumulates steps and checks for one stage.
pub(crate) struct StageBuilder<'a> {
    stage: Stage,
    fixtures: &'a FixtureSet,
    steps: Vec<StepRecord>,
    checks: Vec<Check>,
    notes: Vec<String>,
    start: Instant,
    clock: Instant,
}

impl<'a> StageBuilder<'a> {
    pub(crate) fn new(stage: Stage, fixtures: &'a FixtureSet) -> Self {
        let now = Instant::now();
        StageBuilder {
            stage,
            fixtures,
            steps: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            start: now,
            clock: now,
        }
    }

    /// Restarts the per-step clock.
    pub(crate) fn tick(&mut self) {
        self.clock = Instant::now();
    }

    /// Records a derived polynomial, checked against fixture `eq` modulo
    /// the `declared` factors. An empty `eq` records a step without fixture.
    pub(crate) fn step(
        &mut self,
        id: &str,
        eq: &str,
        derived: &Poly,
        method: &str,
        declared: &[Poly],
        removed: Vec<(Poly, u32)>,
    ) -> FixtureMatch {
        let derived = derived
            .to_table(&VarTable::registry())
            .unwrap_or_else(|_| derived.clone());
        let fixture = if eq.is_empty() {
            None
        } else {
            self.fixtures.get(eq).map(|f| &f.poly)
        };
        let fixture_match = if !eq.is_empty() && fixture.is_none() {
            FixtureMatch::Mismatch {
                diff: vec![format!("fixture `{eq}` is missing")],
            }
        } else {
            compare_fixture(&derived, fixture, declared)
        };
        let weight = derived.weight().unwrap_or(Weight::Inhomogeneous);
        let elapsed = self.clock.elapsed();
        self.steps.push(StepRecord {
            id: id.into(),
            paper_eq: eq.into(),
            derived,
            fixture_match: fixture_match.clone(),
            method: method.into(),
            removed_factors: removed,
            weight,
            elapsed,
            notes: Vec::new(),
        });
        self.clock = Instant::now();
        fixture_match
    }

    pub(crate) fn note(&mut self, text: String) {
        if let Some(s) = self.steps.last_mut() {
            s.notes.push(text);
        }
    }

    pub(crate) fn summary(&mut self, text: String) {
        self.notes.push(text);
    }

    pub(crate) fn fixture(&self, id: &str) -> Option<&'a Poly> {
        self.fixtures.get(id).map(|f| &f.poly)
    }

    pub(crate) fn check(&mut self, name: &str, passed: bool, detail: String) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
        passed
    }

    /// Records a failure that prevented the stage from continuing.
    pub(crate) fn abort(&mut self, what: &str, err: impl fmt::Display) {
        self.check(what, false, err.to_string());
    }

    pub(crate) fn finish(self, best_effort: bool) -> StageReport {
        let ok = self.steps.iter().all(|s| s.fixture_match.is_ok())
            && self.checks.iter().all(|c| c.passed);
        let verdict = if !ok {
            Verdict::Failed
        } else if best_effort {
            Verdict::BestEffort
        } else {
            Verdict::Certified
        };
        StageReport {
            stage: self.stage,
            steps: self.steps,
            checks: self.checks,
            notes: self.notes,
            verdict,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Shorthand for parsing over the registry inside stage code.
pub(crate) fn rp(s: &str) -> Poly {
    crate::exprio::parse(s, &VarTable::registry()).expect("built-in expression parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_ratio_is_reported() {
        let f = rp("lam^2 - c");
        assert_eq!(compare_fixture(&f, Some(&f), &[]), FixtureMatch::Exact);
        let m = compare_fixture(&rp("-3*lam^2 + 3*c"), Some(&f), &[]);
        assert_eq!(
            m,
            FixtureMatch::UpToScalar {
                num: BigInt::from(-3),
                den: BigInt::one()
            }
        );
        let m = compare_fixture(&rp("2*lam^2 - 2*c"), Some(&rp("3*lam^2 - 3*c")), &[]);
        assert_eq!(
            m,
            FixtureMatch::UpToScalar {
                num: BigInt::from(2),
                den: BigInt::from(3)
            }
        );
    }

    #[test]
    fn declared_factors_are_ignored() {
        let m = compare_fixture(&rp("lam^3 - c*lam"), Some(&rp("lam^2 - c")), &[rp("lam")]);
        assert_eq!(m, FixtureMatch::Exact);
        let m = compare_fixture(&rp("lam^3 - c*lam"), Some(&rp("lam^2 - c")), &[]);
        assert!(matches!(m, FixtureMatch::Mismatch { .. }));
    }

    #[test]
    fn zero_and_missing() {
        assert!(matches!(
            compare_fixture(&rp("0"), Some(&rp("c")), &[]),
            FixtureMatch::Mismatch { .. }
        ));
        assert_eq!(
            compare_fixture(&rp("c"), None, &[]),
            FixtureMatch::NoFixture
        );
    }

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::ALL {
            assert_eq!(Stage::from_name(s.name()), Some(s));
        }
        assert_eq!(Stage::from_name("CASEA"), Some(Stage::CaseA));
    }
}
