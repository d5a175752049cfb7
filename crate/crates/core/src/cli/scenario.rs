//! Scenario files: TOML with one section per parameter block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::catalog::{find_check, checks_in, CheckInfo, Suite};
use super::{with_field, CliError, Kind};
use crate::exactla::Matrix;
use crate::field::Field;
use crate::smoothrep::FinGroupDatum;
use crate::yoneda::CrossedModel;

pub const SUPPORTED_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

const MAX_GROUP_ORDER: usize = 64;
const MAX_WINDOW: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub checks: Vec<String>,
    /// Field order for `dg-engine` and `emss` scenarios without a model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelConfig>,
}

/// `G` by its multiplication table on `0..n`, and `U` as a list of elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub p: u32,
    pub mul: Vec<Vec<usize>>,
    pub subgroup: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub p: u32,
    pub d: usize,
    #[serde(rename = "C")]
    pub c: CConfig,
}

/// The finite group `C` and its action on `(Z/p)^d`; `mul` defaults to the cyclic group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CConfig {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<usize>>>,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl Scenario {
    /// Parses and validates; errors carry the offending line and key.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let s: Scenario = toml::from_str(text).map_err(|e| syntax_error(text, &e))?;
        s.validate().map_err(|e| locate(text, e))?;
        Ok(s)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn field_order(&self) -> u32 {
        match (&self.group, &self.model) {
            (Some(g), _) => g.p,
            (_, Some(m)) => m.p,
            _ => self.p.unwrap_or(3),
        }
    }

    pub fn window_pair(&self) -> Option<(i64, i64)> {
        self.window.map(|[lo, hi]| (lo, hi))
    }

    /// Suites first, then single checks, in catalog order and without repeats.
    pub fn requested_checks(&self) -> Result<Vec<&'static CheckInfo>, CliError> {
        let mut out: Vec<&'static CheckInfo> = Vec::new();
        for (i, name) in self.suites.iter().enumerate() {
            let suite = Suite::parse(name).ok_or_else(|| CliError::config(format!("suites[{i}]"), format!("unknown suite `{name}`")))?;
            if !suite.runs_on(self.kind) {
                return Err(CliError::config(format!("suites[{i}]"), format!("suite `{name}` does not run on {} scenarios", self.kind)));
            }
            out.extend(checks_in(suite).filter(|c| !out.iter().any(|o| o.id == c.id)).collect::<Vec<_>>());
        }
        for (i, id) in self.checks.iter().enumerate() {
            let info = find_check(id).ok_or_else(|| CliError::config(format!("checks[{i}]"), format!("unknown check `{id}`")))?;
            if !info.suite.runs_on(self.kind) {
                return Err(CliError::config(format!("checks[{i}]"), format!("check `{id}` does not run on {} scenarios", self.kind)));
            }
            if !out.iter().any(|o| o.id == info.id) {
                out.push(info);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let forbid = |present: bool, key: &str| if present { Err(CliError::config(key, format!("not allowed for {} scenarios", self.kind))) } else { Ok(()) };
        match self.kind {
            Kind::FiniteGroup => {
                forbid(self.model.is_some(), "model")?;
                forbid(self.p.is_some(), "p")?;
                if self.group.is_none() {
                    return Err(CliError::config("group", "a finite-group scenario needs a [group] section"));
                }
            }
            Kind::CrossedModel => {
                forbid(self.group.is_some(), "group")?;
                forbid(self.p.is_some(), "p")?;
                if self.model.is_none() {
                    return Err(CliError::config("model", "a crossed-model scenario needs a [model] section"));
                }
            }
            Kind::DgEngine => {
                forbid(self.group.is_some(), "group")?;
                forbid(self.model.is_some(), "model")?;
            }
            Kind::Emss => {
                forbid(self.group.is_some(), "group")?;
                forbid(self.p.is_some() && self.model.is_some(), "p")?;
            }
        }
        check_prime(self.field_order(), match (&self.group, &self.model) {
            (Some(_), _) => "group.p",
            (_, Some(_)) => "model.p",
            _ => "p",
        })?;
        if let Some([lo, hi]) = self.window {
            if lo > hi {
                return Err(CliError::config("window", format!("empty window [{lo}, {hi}]")));
            }
            if hi - lo > MAX_WINDOW || lo.abs() > 2 * MAX_WINDOW || hi.abs() > 2 * MAX_WINDOW {
                return Err(CliError::config("window", format!("window [{lo}, {hi}] is too wide for desk scale")));
            }
        }
        if let Some(g) = &self.group {
            self.group_datum(g)?;
        }
        if let Some(m) = &self.model {
            with_field!(m.p, F => { self.model_of::<F>(m)?; });
        }
        self.requested_checks()?;
        Ok(())
    }

    fn group_datum(&self, g: &GroupConfig) -> Result<FinGroupDatum, CliError> {
        if g.mul.len() > MAX_GROUP_ORDER {
            return Err(CliError::config("group.mul", format!("groups of order above {MAX_GROUP_ORDER} are out of scope")));
        }
        FinGroupDatum::from_table(g.mul.clone(), g.subgroup.clone()).map_err(|e| CliError::config("group.mul", e.to_string()))
    }

    pub fn group(&self) -> Option<Result<FinGroupDatum, CliError>> {
        self.group.as_ref().map(|g| self.group_datum(g))
    }

    fn model_of<F: Field>(&self, m: &ModelConfig) -> Result<CrossedModel<F>, CliError> {
        let c = &m.c;
        if c.order == 0 || c.order > MAX_GROUP_ORDER {
            return Err(CliError::config("model.C.order", format!("order {} outside 1..={MAX_GROUP_ORDER}", c.order)));
        }
        let table = match &c.mul {
            Some(t) => {
                if t.len() != c.order {
                    return Err(CliError::config("model.C.mul", format!("{} rows for a group of order {}", t.len(), c.order)));
                }
                t.clone()
            }
            None => (0..c.order).map(|a| (0..c.order).map(|b| (a + b) % c.order).collect()).collect(),
        };
        let everything = (0..c.order).collect();
        let group = FinGroupDatum::from_table(table, everything).map_err(|e| CliError::config("model.C.mul", e.to_string()))?;
        let group = group.with_subgroup(vec![group.id()]).map_err(|e| CliError::config("model.C.mul", e.to_string()))?;
        let mut config = Vec::with_capacity(c.order);
        for x in 0..c.order {
            let key = format!("model.C.action.{x}");
            let rows = c.action.get(&x.to_string()).ok_or_else(|| CliError::config(&key, "missing action matrix"))?;
            if rows.len() != m.d || rows.iter().any(|r| r.len() != m.d) {
                return Err(CliError::config(&key, format!("expected a {0} x {0} matrix", m.d)));
            }
            config.push(Matrix::from_fn(m.d, m.d, |r, k| F::from_i64(rows[r][k])));
        }
        if let Some(extra) = c.action.keys().find(|k| k.parse::<usize>().map_or(true, |x| x >= c.order)) {
            return Err(CliError::config(format!("model.C.action.{extra}"), "not an element of C"));
        }
        CrossedModel::new(m.d, group, config).map_err(|e| CliError::config("model", e.to_string()))
    }

    pub fn model<F: Field>(&self) -> Option<Result<CrossedModel<F>, CliError>> {
        self.model.as_ref().map(|m| self.model_of(m))
    }
}

fn check_prime(p: u32, key: &str) -> Result<(), CliError> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(CliError::config(key, format!("unsupported field order {p}; expected one of {SUPPORTED_PRIMES:?}")))
    }
}

fn line_at(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn syntax_error(text: &str, e: &toml::de::Error) -> CliError {
    let line = e.span().map(|s| line_at(text, s.start));
    let key = line
        .and_then(|l| text.lines().nth(l - 1))
        .map(|raw| {
            let raw = raw.trim();
            match raw.split_once('=') {
                Some((k, _)) => k.trim().to_string(),
                None => raw.trim_matches(|c| c == '[' || c == ']').to_string(),
            }
        })
        .unwrap_or_default();
    CliError::Config { line, key, message: e.message().to_string() }
}

/// Finds the line defining the last segment of a dotted key, inside its section.
fn locate(text: &str, e: CliError) -> CliError {
    let CliError::Config { line: None, key, message } = e else { return e };
    let bare = key.split('[').next().unwrap_or(&key);
    let (section, leaf) = match bare.rsplit_once('.') {
        Some((s, l)) => (s.to_string(), l.to_string()),
        None => (String::new(), bare.to_string()),
    };
    let mut current = String::new();
    let mut found = None;
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if let Some(h) = t.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            current = h.trim().to_string();
            if current == bare {
                found = Some(i + 1);
                break;
            }
            continue;
        }
        if let Some((k, _)) = t.split_once('=') {
            let k = k.trim().trim_matches('"');
            if current == section && k == leaf {
                found = Some(i + 1);
                break;
            }
        }
    }
    CliError::Config { line: found, key, message }
}
