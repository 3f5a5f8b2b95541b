//! Runtime configuration: a small key=value file selected by the
//! `QHOM_CONFIG` environment variable or the `--config` flag.
//!
//! Recognized keys (all optional):
//!   step_cap   = <u64>        cap on Groebner reduction work (default 50000000)
//!   window     = <usize>      Hilbert-plateau window override (default max(3, d))
//!   experiment = true|false   allow the rank criterion on 3-syzygy curves
//!   output     = text|json    default report format

use crate::engine::GbLimits;
use crate::error::{Error, Result};

pub const CONFIG_ENV: &str = "QHOM_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub step_cap: u64,
    pub window: Option<usize>,
    pub experiment: bool,
    pub output: OutputFormat,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            step_cap: GbLimits::default().max_reductions,
            window: None,
            experiment: false,
            output: OutputFormat::Text,
        }
    }
}

impl AnalysisConfig {
    pub fn limits(&self) -> GbLimits {
        GbLimits {
            max_reductions: self.step_cap,
        }
    }

    /// Plateau window for a curve of degree d, honoring the override.
    pub fn window_for(&self, d: u32) -> usize {
        self.window.unwrap_or_else(|| 3.max(d as usize))
    }

    pub fn parse(contents: &str) -> Result<Self> {
        let mut cfg = AnalysisConfig::default();
        for (lineno, raw) in contents.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "step_cap" => {
                    cfg.step_cap = value.parse().map_err(|_| {
                        Error::InvalidConfig(format!("step_cap: bad integer '{}'", value))
                    })?;
                }
                "window" => {
                    cfg.window = Some(value.parse().map_err(|_| {
                        Error::InvalidConfig(format!("window: bad integer '{}'", value))
                    })?);
                }
                "experiment" => {
                    cfg.experiment = match value {
                        "true" => true,
                        "false" => false,
                        _ => {
                            return Err(Error::InvalidConfig(format!(
                                "experiment: expected true or false, got '{}'",
                                value
                            )))
                        }
                    };
                }
                "output" => {
                    cfg.output = match value {
                        "text" => OutputFormat::Text,
                        "json" => OutputFormat::Json,
                        _ => {
                            return Err(Error::InvalidConfig(format!(
                                "output: expected text or json, got '{}'",
                                value
                            )))
                        }
                    };
                }
                _ => {
                    return Err(Error::InvalidConfig(format!("unknown key '{}'", key)));
                }
            }
        }
        Ok(cfg)
    }

    /// Load from an explicit path, else from `QHOM_CONFIG`, else defaults.
    pub fn load(path: Option<&str>) -> Result<Self> {
        let chosen = match path {
            Some(p) => Some(p.to_string()),
            None => std::env::var(CONFIG_ENV).ok(),
        };
        match chosen {
            None => Ok(AnalysisConfig::default()),
            Some(p) => {
                let contents =
                    std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {}", p, e)))?;
                AnalysisConfig::parse(&contents)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_parse() {
        let cfg = AnalysisConfig::default();
        assert_eq!(cfg.window_for(7), 7);
        assert_eq!(cfg.window_for(2), 3);

        let cfg = AnalysisConfig::parse(
            "# comment\nstep_cap = 1000\nwindow=5\nexperiment = true\noutput = json\n",
        )
        .unwrap();
        assert_eq!(cfg.step_cap, 1000);
        assert_eq!(cfg.window_for(12), 5);
        assert!(cfg.experiment);
        assert_eq!(cfg.output, OutputFormat::Json);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(AnalysisConfig::parse("nonsense").is_err());
        assert!(AnalysisConfig::parse("speed = fast").is_err());
        assert!(AnalysisConfig::parse("step_cap = many").is_err());
    }
}
