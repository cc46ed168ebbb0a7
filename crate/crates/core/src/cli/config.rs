//! Optional key-value config file (TOML). Command-line flags win over it.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;
use crate::design::TMinMode;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub out_dir: Option<PathBuf>,
    /// Coupling-to-pair matching tolerance.
    pub tol: Option<f64>,
    pub max_order: Option<u64>,
    pub m_threshold: Option<u64>,
    pub beat_min: Option<f64>,
    pub t_min_mode: Option<TMinMode>,
    pub grid_points: Option<usize>,
    pub horizon_periods: Option<f64>,
    pub integrator_dt: Option<f64>,
    pub energy_tol: Option<f64>,
    pub verify_tol: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}
