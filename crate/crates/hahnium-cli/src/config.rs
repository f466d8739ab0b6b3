//! Run settings merged from the config file, the environment and flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use hahnium::verify::Budget;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    HartreeBohr,
    NaturalCompton,
    Cgs,
}

impl UnitSystem {
    pub fn name(self) -> &'static str {
        match self {
            UnitSystem::HartreeBohr => "hartree_bohr",
            UnitSystem::NaturalCompton => "natural_compton",
            UnitSystem::Cgs => "cgs",
        }
    }
}

impl FromStr for UnitSystem {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "hartree_bohr" => Ok(UnitSystem::HartreeBohr),
            "natural_compton" => Ok(UnitSystem::NaturalCompton),
            "cgs" => Ok(UnitSystem::Cgs),
            _ => Err(CliError::Input(format!(
                "unknown unit system {s:?} (hartree_bohr, natural_compton or cgs)"
            ))),
        }
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CliError::Input(format!("unknown output format {s:?} (json or csv)"))),
        }
    }
}

pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Resolved settings. `unit_system: None` means the model's default.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub unit_system: Option<UnitSystem>,
    pub rel_tol: f64,
    pub output_format: OutputFormat,
    pub verify_budget: Budget,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            unit_system: None,
            rel_tol: DEFAULT_REL_TOL,
            output_format: OutputFormat::Json,
            verify_budget: Budget::Full,
        }
    }
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    units: Option<String>,
    rel_tol: Option<f64>,
    format: Option<String>,
    budget: Option<String>,
}

/// Command-line overrides, already split out of the parsed arguments.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub units: Option<String>,
    pub rel_tol: Option<f64>,
    pub format: Option<String>,
    pub budget: Option<String>,
}

impl RunConfig {
    /// File values first, then `overrides` on top.
    pub fn resolve(config_file: Option<&Path>, overrides: &Overrides) -> Result<Self, CliError> {
        let file = match config_file {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Input(format!("cannot read config {}: {e}", p.display()))
                })?;
                toml::from_str::<FileConfig>(&text).map_err(|e| {
                    CliError::Input(format!("bad config {}: {}", p.display(), e.message()))
                })?
            }
            None => FileConfig::default(),
        };
        let mut cfg = RunConfig::default();
        if let Some(u) = overrides.units.as_ref().or(file.units.as_ref()) {
            cfg.unit_system = Some(u.parse()?);
        }
        if let Some(f) = overrides.format.as_ref().or(file.format.as_ref()) {
            cfg.output_format = f.parse()?;
        }
        if let Some(b) = overrides.budget.as_ref().or(file.budget.as_ref()) {
            cfg.verify_budget = b.parse().map_err(|e: hahnium::Error| CliError::Input(e.to_string()))?;
        }
        if let Some(t) = overrides.rel_tol.or(file.rel_tol) {
            if !(1e-15..=1e-3).contains(&t) {
                return Err(CliError::Input(format!(
                    "rel_tol must lie in [1e-15, 1e-3], got {t:e}"
                )));
            }
            cfg.rel_tol = t;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "units = \"cgs\"\nrel_tol = 1e-10\nformat = \"csv\"\nbudget = \"small\"").unwrap();
        let cfg = RunConfig::resolve(Some(f.path()), &Overrides::default()).unwrap();
        assert_eq!(cfg.unit_system, Some(UnitSystem::Cgs));
        assert_eq!(cfg.rel_tol, 1e-10);
        assert_eq!(cfg.output_format, OutputFormat::Csv);
        assert_eq!(cfg.verify_budget, Budget::Small);
        let o = Overrides {
            units: Some("hartree_bohr".into()),
            budget: Some("full".into()),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(f.path()), &o).unwrap();
        assert_eq!(cfg.unit_system, Some(UnitSystem::HartreeBohr));
        assert_eq!(cfg.verify_budget, Budget::Full);
    }

    #[test]
    fn rejects_bad_values() {
        let o = Overrides {
            rel_tol: Some(1e-2),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &o).is_err());
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "colour = \"blue\"").unwrap();
        assert!(RunConfig::resolve(Some(f.path()), &Overrides::default()).is_err());
    }
}
