//! Suite registry and runner.
//!
//! Every identity the engine knows how to check is a [`CheckDef`]: an id,
//! a descriptive anchor, the ids it depends on and a function from a
//! [`Session`] to a verdict. A check whose dependency did not pass is
//! skipped. Checks run in dependency waves on a worker pool; the report is
//! always assembled in catalog order, and carries no timing, so identical
//! inputs give identical bytes.

mod checks;
pub mod scenario;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use checks::{CATALOG, REQUIRED_ANCHORS};
pub use scenario::{Scenario, Session};

use crate::error::{Error, Result};
use crate::outcome::Outcome;

/// Result of running one check body.
pub enum Verdict {
    Checked { outcome: Outcome, note: Option<String> },
    Skipped(String),
}

pub type CheckFn = fn(&Session, &mut ChaCha8Rng) -> Result<Verdict>;

pub struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub needs: &'static [&'static str],
    pub run: CheckFn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub pass: bool,
    pub first_order: Option<usize>,
    pub sample: Option<String>,
    pub note: Option<String>,
    /// Wall-clock time; kept out of the serialized report.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errored: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub scenario: String,
    pub fingerprint: String,
    pub order: usize,
    pub degree: usize,
    pub seed: u64,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    /// No check failed or errored.
    pub fn ok(&self) -> bool {
        self.summary.failed == 0 && self.summary.errored == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(5);
        let a = self.checks.iter().map(|c| c.anchor.chars().count()).max().unwrap_or(6).max(6);
        let mut out = format!(
            "scenario {}  order {}  degree {}  seed {}\nfingerprint {}\n\n",
            self.scenario, self.order, self.degree, self.seed, self.fingerprint
        );
        out.push_str(&format!("{:<w$}  {:<a$}  {:<6}  {:<5}  detail\n", "check", "anchor", "status", "order"));
        for c in &self.checks {
            let ord = c.first_order.map(|k| format!("h^{k}")).unwrap_or_else(|| "-".into());
            let detail = c.sample.as_deref().or(c.note.as_deref()).unwrap_or("");
            let detail = detail.replace('\n', " ");
            let anchor_pad = a - c.anchor.chars().count();
            out.push_str(&format!(
                "{:<w$}  {}{}  {:<6}  {:<5}  {}\n",
                c.id,
                c.anchor,
                " ".repeat(anchor_pad),
                c.status.as_str(),
                ord,
                detail
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "\n{} checks: {} passed, {} failed, {} skipped, {} errored\n",
            s.total, s.passed, s.failed, s.skipped, s.errored
        ));
        out
    }
}

/// The JSON schema of [`SuiteReport`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

/// Scenarios shipped with the crate.
pub const BUNDLED: &[(&str, &str)] = &[
    ("moyal_r2", include_str!("../../scenarios/moyal_r2.scn")),
    ("jordanian_line", include_str!("../../scenarios/jordanian_line.scn")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".scn").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Hash of the scenario text together with the effective order, degree and seed.
pub fn fingerprint(sc: &Scenario) -> String {
    let mut h = Sha256::new();
    h.update(sc.source.as_bytes());
    h.update(format!("\norder={}\ndegree={}\nstar-degree={}\n", sc.order, sc.degree, sc.star_degree).as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn check_seed(seed: u64, id: &str) -> u64 {
    let d = Sha256::digest(format!("{seed}:{id}").as_bytes());
    u64::from_le_bytes(d[..8].try_into().expect("eight bytes"))
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Check ids to run; `None` runs the scenario's selection or the full catalog.
    pub selection: Option<Vec<String>>,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

fn lookup(id: &str) -> Option<&'static CheckDef> {
    CATALOG.iter().find(|c| c.id == id)
}

/// Selected checks plus everything they depend on, in catalog order.
fn closure(selection: &[String]) -> Result<Vec<&'static CheckDef>> {
    let mut want: Vec<&str> = Vec::new();
    let mut stack: Vec<&str> = Vec::new();
    for s in selection {
        let c = lookup(s).ok_or_else(|| Error::Config(format!("unknown check id `{s}`")))?;
        stack.push(c.id);
    }
    while let Some(id) = stack.pop() {
        if want.contains(&id) {
            continue;
        }
        want.push(id);
        stack.extend(lookup(id).expect("catalog ids resolve").needs.iter().copied());
    }
    Ok(CATALOG.iter().filter(|c| want.contains(&c.id)).collect())
}

fn run_one(def: &CheckDef, session: &Session) -> CheckResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(check_seed(session.scenario.seed, def.id));
    let got = catch_unwind(AssertUnwindSafe(|| (def.run)(session, &mut rng)));
    let mut r = CheckResult {
        id: def.id.into(),
        anchor: def.anchor.into(),
        status: Status::Error,
        pass: false,
        first_order: None,
        sample: None,
        note: None,
        elapsed_ms: 0,
    };
    match got {
        Ok(Ok(Verdict::Checked { outcome, note })) => {
            r.status = if outcome.pass { Status::Pass } else { Status::Fail };
            r.pass = outcome.pass;
            if !outcome.pass {
                r.first_order = outcome.first_order;
                r.sample = outcome.sample;
            }
            r.note = note;
        }
        Ok(Ok(Verdict::Skipped(why))) => {
            r.status = Status::Skip;
            r.note = Some(why);
        }
        Ok(Err(e)) => r.note = Some(e.to_string()),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "check panicked".into());
            r.note = Some(format!("internal error: {msg}"));
        }
    }
    r.elapsed_ms = start.elapsed().as_millis();
    r
}

/// Runs the selected checks of a session.
pub fn run_suite(session: &Session, opts: &RunOptions) -> Result<SuiteReport> {
    let selection = opts.selection.clone().or_else(|| session.scenario.checks.clone());
    let defs: Vec<&CheckDef> = match &selection {
        Some(s) => closure(s)?,
        None => CATALOG.iter().collect(),
    };
    let mut level: HashMap<&str, usize> = HashMap::new();
    for d in &defs {
        let l = d.needs.iter().map(|n| level[n] + 1).max().unwrap_or(0);
        level.insert(d.id, l);
    }
    let depth = level.values().copied().max().map_or(0, |m| m + 1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;

    let mut done: HashMap<&str, CheckResult> = HashMap::new();
    for l in 0..depth {
        let wave: Vec<&CheckDef> = defs.iter().copied().filter(|d| level[d.id] == l).collect();
        let (blocked, ready): (Vec<&CheckDef>, Vec<&CheckDef>) =
            wave.into_iter().partition(|d| d.needs.iter().any(|n| done[n].status != Status::Pass));
        for d in blocked {
            let bad: Vec<&str> = d.needs.iter().copied().filter(|n| done[n].status != Status::Pass).collect();
            done.insert(
                d.id,
                CheckResult {
                    id: d.id.into(),
                    anchor: d.anchor.into(),
                    status: Status::Skip,
                    pass: false,
                    first_order: None,
                    sample: None,
                    note: Some(format!("depends on {}", bad.join(", "))),
                    elapsed_ms: 0,
                },
            );
        }
        let results: Vec<CheckResult> = pool.install(|| ready.par_iter().map(|d| run_one(d, session)).collect());
        for r in results {
            let id = lookup(&r.id).expect("known id").id;
            done.insert(id, r);
        }
    }

    let checks: Vec<CheckResult> = defs.iter().map(|d| done.remove(d.id).expect("every check ran")).collect();
    let mut summary = Summary { total: checks.len(), ..Summary::default() };
    for c in &checks {
        match c.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skip => summary.skipped += 1,
            Status::Error => summary.errored += 1,
        }
    }
    let sc = &session.scenario;
    Ok(SuiteReport {
        scenario: sc.name.clone(),
        fingerprint: fingerprint(sc),
        order: sc.order,
        degree: sc.degree,
        seed: sc.seed,
        summary,
        checks,
    })
}

#[cfg(test)]
mod tests;
