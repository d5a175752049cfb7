//! Scenario files, the check catalog and JSON reports behind the `verify` binary.

pub mod catalog;
pub mod checks;
mod report;
mod scenario;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{checks_in, find_check, list_checks, CheckInfo, Suite};
pub use checks::{run_check, Context, Outcome, Setting, Witness};
pub use report::{run_scenario, CheckEntry, Report, RunOptions, Status};
pub use scenario::{CConfig, GroupConfig, ModelConfig, Scenario, SUPPORTED_PRIMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    FiniteGroup,
    CrossedModel,
    DgEngine,
    Emss,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::FiniteGroup => "finite-group",
            Kind::CrossedModel => "crossed-model",
            Kind::DgEngine => "dg-engine",
            Kind::Emss => "emss",
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// A bad scenario: `key` is dotted, `line` is 1-based when known.
    #[error("{}key `{key}`: {message}", line.map(|l| format!("line {l}, ")).unwrap_or_default())]
    Config { line: Option<usize>, key: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config { line: None, key: key.into(), message: message.into() }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Config { line, .. } => *line,
            CliError::Io { .. } => None,
        }
    }

    pub fn key(&self) -> Option<&str> {
        match self {
            CliError::Config { key, .. } => Some(key),
            CliError::Io { .. } => None,
        }
    }
}

/// Runs `$body` with `$f` bound to the prime field of order `$p`.
macro_rules! with_field {
    ($p:expr, $f:ident => $body:expr) => {
        match $p {
            2 => {
                type $f = $crate::field::F2;
                $body
            }
            3 => {
                type $f = $crate::field::F3;
                $body
            }
            5 => {
                type $f = $crate::field::F5;
                $body
            }
            7 => {
                type $f = $crate::field::F7;
                $body
            }
            11 => {
                type $f = $crate::field::F11;
                $body
            }
            13 => {
                type $f = $crate::field::F13;
                $body
            }
            other => unreachable!("unsupported prime {other} survived validation"),
        }
    };
}
pub(crate) use with_field;
