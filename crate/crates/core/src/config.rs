//! Key=value run configuration and worker-pool setup shared by the CLI.
//!
//! A config file holds one `key = value` per line, with keys spelled like the
//! long CLI flags (`s-range`, `n-max`, ...). Blank lines and `#` comments are
//! ignored. Flags given on the command line take precedence.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "TURNOVER_WORKERS";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: expected `key = value`, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("config line {line}: key `{key}` given twice")]
    Duplicate { line: usize, key: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {message}")]
    Value { key: String, message: String },
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Every key a config file may set.
pub const KNOWN_KEYS: &[&str] = &[
    "signature",
    "selection",
    "case",
    "lift",
    "branch",
    "branches",
    "s",
    "t",
    "s-range",
    "t-range",
    "n-max",
    "out",
    "csv",
    "jsonl",
    "workers",
    "max-seconds",
];

/// Parsed config file; values stay as strings until a subcommand claims them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { line: k + 1, text: raw.to_string() });
            };
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey(key));
            }
            if values.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(ConfigError::Duplicate { line: k + 1, key });
            }
        }
        Ok(RunConfig { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// `flag` if given, otherwise the parsed config value.
    pub fn pick<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, ConfigError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e: T::Err| ConfigError::Value { key: key.to_string(), message: e.to_string() }),
        }
    }
}

/// Worker count: flag, then config, then `TURNOVER_WORKERS`, then rayon's default (0).
pub fn resolve_workers(flag: Option<usize>, config: &RunConfig) -> Result<usize, ConfigError> {
    if let Some(n) = config.pick("workers", flag)? {
        return Ok(n);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e: std::num::ParseIntError| ConfigError::Value { key: WORKERS_ENV.to_string(), message: e.to_string() }),
        Err(_) => Ok(0),
    }
}

/// Runs `f` on a dedicated pool of `workers` threads (0 means one per core).
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let cfg = RunConfig::parse("# scan\nsignature = 3,3,4\n\ns = 0.29  # inside\nworkers=2\n").unwrap();
        assert_eq!(cfg.get("signature"), Some("3,3,4"));
        assert_eq!(cfg.pick::<f64>("s", None).unwrap(), Some(0.29));
        assert_eq!(cfg.pick::<f64>("s", Some(0.5)).unwrap(), Some(0.5));
        assert_eq!(cfg.pick::<f64>("t", None).unwrap(), None);
        assert_eq!(resolve_workers(None, &cfg).unwrap(), 2);
        assert_eq!(resolve_workers(Some(3), &cfg).unwrap(), 3);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(RunConfig::parse("signature 3,3,4"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(RunConfig::parse("colour = red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(RunConfig::parse("s=1\ns=2"), Err(ConfigError::Duplicate { line: 2, .. })));
        let cfg = RunConfig::parse("s = abc").unwrap();
        assert!(matches!(cfg.pick::<f64>("s", None), Err(ConfigError::Value { .. })));
    }
}
