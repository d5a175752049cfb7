//! Check implementations. Each check returns the first counterexample it meets.

mod degree0;
mod engine;
mod model;

use std::fmt::Debug;

use serde::Serialize;

use crate::field::Field;
use crate::smoothrep::FinGroupDatum;
use crate::yoneda::CrossedModel;

/// The offending basis tuple together with both sides of the failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
    Skipped(String),
}

#[derive(Debug)]
pub(crate) enum Failure {
    Witness(Witness),
    Skip(String),
    Error(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

pub(crate) type CheckResult = Result<(), Failure>;

pub(crate) fn ensure_eq<T: PartialEq + Debug>(lhs: &T, rhs: &T, at: impl FnOnce() -> String) -> CheckResult {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::Witness(Witness { at: at(), lhs: format!("{lhs:?}"), rhs: format!("{rhs:?}") }))
    }
}

pub(crate) fn ensure(cond: bool, at: impl FnOnce() -> String, lhs: impl FnOnce() -> String, rhs: &str) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(Failure::Witness(Witness { at: at(), lhs: lhs(), rhs: rhs.to_string() }))
    }
}

/// What a scenario supplies to its checks.
#[derive(Clone, Debug)]
pub enum Setting<F: Field> {
    Group(FinGroupDatum),
    Model(CrossedModel<F>),
    Field,
}

#[derive(Clone, Debug)]
pub struct Context<F: Field> {
    pub seed: u64,
    pub window: Option<(i64, i64)>,
    pub setting: Setting<F>,
}

impl<F: Field> Context<F> {
    pub(crate) fn group(&self) -> Result<&FinGroupDatum, Failure> {
        match &self.setting {
            Setting::Group(g) => Ok(g),
            _ => Err(Failure::Skip("needs a finite group".into())),
        }
    }

    pub(crate) fn model(&self) -> Result<&CrossedModel<F>, Failure> {
        match &self.setting {
            Setting::Model(m) => Ok(m),
            _ => Err(Failure::Skip("needs a crossed model".into())),
        }
    }
}

/// Runs the check `id`; unknown ids are skipped.
pub fn run_check<F: Field>(id: &str, ctx: &Context<F>) -> Outcome {
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(id, ctx)));
    match result {
        Ok(Ok(())) => Outcome::Pass,
        Ok(Err(Failure::Witness(w))) => Outcome::Fail(w),
        Ok(Err(Failure::Skip(reason))) => Outcome::Skipped(reason),
        Ok(Err(Failure::Error(message))) => Outcome::Fail(Witness { at: "error".into(), lhs: message, rhs: String::new() }),
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Outcome::Fail(Witness { at: "panic".into(), lhs: message, rhs: String::new() })
        }
    }
}

fn dispatch<F: Field>(id: &str, ctx: &Context<F>) -> CheckResult {
    if let Some(r) = degree0::run(id, ctx) {
        return r;
    }
    if let Some(r) = model::run(id, ctx) {
        return r;
    }
    if let Some(r) = engine::run(id, ctx) {
        return r;
    }
    Err(Failure::Skip(format!("no implementation for {id}")))
}
