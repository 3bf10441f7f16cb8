//! Resolved run configuration: defaults, then a `key = value` config file,
//! then command-line flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

pub const DEFAULT_RESTARTS: usize = 20;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SHOTS: usize = 100_000;
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Fragility,
    Mutinfo,
    Mm,
    Distribute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Z,
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Plus,
    Minus,
}

/// Every setting a command may read. Unset fields are omitted from the echo.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settings: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<Which>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<Label>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghz: Option<SignArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dicke: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only: Option<Vec<u8>>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr, $($f:ident),*) => {
        $( if $hi.$f.is_none() { $hi.$f = $lo.$f.clone(); } )*
    };
}

impl RunConfig {
    /// Fields of `self` win; missing ones are taken from `lower`.
    pub fn overlay(mut self, lower: &RunConfig) -> RunConfig {
        overlay!(
            self, lower, n, seed, restarts, tol, shots, state, settings, out, format, e, epsilon, estimate, which, k,
            trials, basis, from, to, ghz, dicke, keep, only
        );
        self
    }

    /// Fills the values every command has a default for.
    pub fn with_defaults(mut self) -> RunConfig {
        self.seed.get_or_insert(klyshko::rng::DEFAULT_SEED);
        self.format.get_or_insert(Format::Json);
        self
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(klyshko::rng::DEFAULT_SEED)
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage(format!("{} needs --n", self.command)))
    }

    pub fn require_state(&self) -> Result<&Path, CliError> {
        self.state
            .as_deref()
            .ok_or_else(|| CliError::Usage(format!("{} needs --state FILE", self.command)))
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// ignored. Values are read as JSON when possible (numbers, booleans,
/// lists) and as plain strings otherwise.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut map = Map::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        let parsed = serde_json::from_str::<Value>(value).unwrap_or_else(|_| Value::String(value.to_string()));
        map.insert(key, parsed);
    }
    serde_json::from_value(Value::Object(map)).map_err(|e| CliError::Usage(format!("config file: {e}")))
}

pub fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_lines() {
        let c = parse_config("# run\nn = 3\nseed=7\ntol = 1e-9\nstate = ghz.json\nformat = csv\nkeep = [0, 1]\n").unwrap();
        assert_eq!(c.n, Some(3));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.tol, Some(1e-9));
        assert_eq!(c.state, Some(PathBuf::from("ghz.json")));
        assert_eq!(c.format, Some(Format::Csv));
        assert_eq!(c.keep, Some(vec![0, 1]));
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config("n = 3\nseed = 1").unwrap();
        let flags = RunConfig { n: Some(4), ..RunConfig::default() };
        let merged = flags.overlay(&file);
        assert_eq!((merged.n, merged.seed), (Some(4), Some(1)));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("n 3").is_err());
        assert!(parse_config("n = three").is_err());
    }
}
