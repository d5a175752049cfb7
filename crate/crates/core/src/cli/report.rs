//! Running a scenario and assembling its report.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::catalog::{CheckInfo, Suite};
use super::checks::{run_check, Context, Outcome, Setting, Witness};
use super::{with_field, CliError, Kind, Scenario};
use crate::field::Field;

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub window: Option<(i64, i64)>,
    /// Record wall-clock milliseconds; otherwise every `millis` is 0 and reports are reproducible.
    pub timings: bool,
    /// Worker threads; 0 picks the available parallelism.
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub suite: Suite,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: Scenario,
    pub checks: Vec<CheckEntry>,
    pub normalizations: BTreeMap<String, String>,
    pub version: String,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failures().next().is_some())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let mut s = scenario.clone();
    if let Some(seed) = opts.seed {
        s.seed = seed;
    }
    if let Some((lo, hi)) = opts.window {
        s.window = Some([lo, hi]);
    }
    s.validate()?;
    let checks = s.requested_checks()?;
    with_field!(s.field_order(), F => run_typed::<F>(&s, &checks, opts))
}

fn run_typed<F: Field + Send + Sync>(s: &Scenario, checks: &[&'static CheckInfo], opts: &RunOptions) -> Result<Report, CliError> {
    let setting = match s.kind {
        Kind::FiniteGroup => Setting::Group(s.group().expect("validated")?),
        Kind::CrossedModel => Setting::Model(s.model::<F>().expect("validated")?),
        Kind::Emss => match s.model::<F>() {
            Some(m) => Setting::Model(m?),
            None => Setting::Field,
        },
        Kind::DgEngine => Setting::Field,
    };
    let ctx = Context { seed: s.seed, window: s.window_pair(), setting };
    let normalizations = normalizations(&ctx);
    let results = run_all(checks, &ctx, opts);
    let entries = checks
        .iter()
        .zip(results)
        .map(|(info, (outcome, millis))| {
            let (status, witness, reason) = match outcome {
                Outcome::Pass => (Status::Pass, None, None),
                Outcome::Fail(w) => (Status::Fail, Some(w), None),
                Outcome::Skipped(r) => (Status::Skipped, None, Some(r)),
            };
            CheckEntry { id: info.id.into(), suite: info.suite, anchor: info.anchor.into(), status, witness, reason, millis }
        })
        .collect();
    Ok(Report { scenario: s.clone(), checks: entries, normalizations, version: env!("CARGO_PKG_VERSION").into() })
}

/// Runs the checks on a small pool; results come back in request order.
fn run_all<F: Field + Send + Sync>(checks: &[&'static CheckInfo], ctx: &Context<F>, opts: &RunOptions) -> Vec<(Outcome, u64)> {
    let jobs = match opts.jobs {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
    .min(checks.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<(Outcome, u64)>>> = Mutex::new(vec![None; checks.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(info) = checks.get(i) else { break };
                let start = Instant::now();
                let outcome = run_check(info.id, ctx);
                let millis = if opts.timings { start.elapsed().as_millis() as u64 } else { 0 };
                slots.lock().expect("no poisoned slot")[i] = Some((outcome, millis));
            });
        }
    });
    slots.into_inner().expect("no poisoned slot").into_iter().map(|r| r.expect("every check ran")).collect()
}

fn normalizations<F: Field>(ctx: &Context<F>) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        out.insert(k.to_string(), v);
    };
    put("field", format!("F_{}", F::ORDER));
    match &ctx.setting {
        Setting::Group(_) => {
            put("hecke.basis", "T_D = char_D for D in U\\G/U".into());
            put("hecke.product", "(f1 * f2)(x) = sum over y in G/U of f1(y) f2(y^-1 x)".into());
            put("hecke.j0", "J0(f)(x) = f(x^-1)".into());
        }
        Setting::Model(m) => {
            let norm = match m.anti_involution() {
                Ok((_, n)) => n.to_string(),
                Err(e) => format!("none found: {e}"),
            };
            put("model.anti_involution", norm);
            let chi: Vec<String> = m.duality_character().iter().map(|x| x.value().to_string()).collect();
            put("model.duality_character", format!("[{}]", chi.join(", ")));
            put("model.pairing", "dual basis of Hom(E^{d-i}, k); the top monomial pairs to 1".into());
            put("model.shift", format!("Δ_gr(M)^i = (M^(d-i))*, d = {}", m.d()));
            put("emss.grading", "Tor at (s, t) = (-homological degree, internal degree); Ext^{s,t} with t the map degree".into());
        }
        Setting::Field => {
            put("engine.algebra", "Λ(y), |y| = 1, y of weight 1, d = 0".into());
            put("emss.grading", "Tor at (s, t) = (-homological degree, internal degree); Ext^{s,t} with t the map degree".into());
        }
    }
    out
}
