use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const TOOL: &str = "mparity";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Envelope shared by every command's JSON output.
#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub scenario: Option<String>,
    /// SHA-256 of the scenario file bytes, or of the parameter string for
    /// commands without a scenario.
    pub scenario_hash: String,
    pub passed: bool,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn emit(&self, file: Option<&Path>) -> CliResult<()> {
        let text = self.to_json();
        print!("{text}");
        if let Some(path) = file {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            }
            std::fs::write(path, text).map_err(|e| CliError::io(path, e))?;
        }
        Ok(())
    }
}

/// One checked law or quantity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub worst_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, cases: usize, worst_deviation: f64, tolerance: f64) -> Self {
        Check { name: name.into(), cases, worst_deviation, tolerance, passed: worst_deviation <= tolerance }
    }
}
