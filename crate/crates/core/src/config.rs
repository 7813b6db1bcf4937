//! Run configuration: built-in defaults, an optional TOML file, then
//! `TRACELAB_*` environment variables.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The shipped defaults; also the documentation of every key.
pub const DEFAULT_CONFIG: &str = include_str!("../tracelab.toml");
pub const ENV_PREFIX: &str = "TRACELAB_";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "pretty" => Ok(Format::Pretty),
            other => Err(Error::Input(format!("unknown format {other:?} (json, csv or pretty)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub identity: f64,
    pub round: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub group_order: usize,
    pub subgroup_catalog: usize,
    pub weyl_group: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylGrid {
    pub grid_rank1: usize,
    pub grid_rank2: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub format: Format,
    pub trials: usize,
    pub tolerance: Tolerances,
    pub caps: Caps,
    pub weyl: WeylGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        toml::from_str(DEFAULT_CONFIG).expect("shipped defaults parse")
    }
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

fn parse_env_value(raw: &str) -> toml::Value {
    if let Ok(i) = raw.parse::<i64>() {
        toml::Value::Integer(i)
    } else if let Ok(f) = raw.parse::<f64>() {
        toml::Value::Float(f)
    } else {
        toml::Value::String(raw.to_string())
    }
}

/// Maps `TRACELAB_CAPS_GROUP_ORDER` to `caps.group_order`, `TRACELAB_SEED` to `seed`.
fn env_key(name: &str) -> Option<Vec<String>> {
    let rest = name.strip_prefix(ENV_PREFIX)?.to_ascii_lowercase();
    if rest == "config" {
        return None;
    }
    for section in ["tolerance", "caps", "weyl"] {
        if let Some(key) = rest.strip_prefix(section).and_then(|r| r.strip_prefix('_')) {
            return Some(vec![section.to_string(), key.to_string()]);
        }
    }
    Some(vec![rest])
}

impl RunConfig {
    /// Defaults, then `file` (if any), then the given environment variables.
    pub fn load(file: Option<&Path>, env: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let mut table: toml::Table = toml::from_str(DEFAULT_CONFIG).expect("shipped defaults parse");
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)?;
            let over: toml::Table =
                toml::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            merge(&mut table, over);
        }
        let mut vars: Vec<(String, String)> = env.into_iter().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect();
        vars.sort();
        for (name, raw) in vars {
            let Some(path) = env_key(&name) else { continue };
            let mut over = toml::Table::new();
            let value = parse_env_value(&raw);
            if let [section, key] = path.as_slice() {
                let mut inner = toml::Table::new();
                inner.insert(key.clone(), value);
                over.insert(section.clone(), toml::Value::Table(inner));
            } else {
                over.insert(path[0].clone(), value);
            }
            merge(&mut table, over);
        }
        let text = toml::to_string(&table).map_err(|e| Error::Input(e.to_string()))?;
        let config: RunConfig = toml::from_str(&text).map_err(|e| Error::Input(format!("configuration: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    /// Defaults, the file named by `TRACELAB_CONFIG` if set, then the process environment.
    pub fn from_env(file: Option<&Path>) -> Result<Self> {
        let env_file = std::env::var_os("TRACELAB_CONFIG").map(std::path::PathBuf::from);
        Self::load(file.or(env_file.as_deref()), std::env::vars())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.identity >= 0.0 && self.tolerance.round >= 0.0) {
            return Err(Error::Input("tolerances must be nonnegative".into()));
        }
        if self.trials == 0 {
            return Err(Error::Input("trials must be positive".into()));
        }
        Ok(())
    }
}
