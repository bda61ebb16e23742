//! Experiment configuration read from TOML.
//!
//! ```toml
//! t_values = [0.1, 1.0, 10.0]
//! alpha_m = 0.5
//! epsilon = 0.5
//! C = 1.0
//!
//! [model]
//! kind = "xy_lattice"
//! half_width = 1
//! coupling = 1.0
//! boundary_strength = 0.5
//!
//! [state]
//! kind = "gibbs_product"
//! beta_a = 0.2
//! beta_b = 1.0
//!
//! [output]
//! dir = "results/xy"
//! formats = ["csv", "json"]
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use fcstat_core::models::{AndersonSpec, LeadCoupling, XYLatticeSpec};
use fcstat_core::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
}

impl ConfigError {
    fn invalid(field: &str, message: impl Into<String>) -> Self {
        Self::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub state: StateConfig,
    #[serde(default = "default_t_values")]
    pub t_values: Vec<f64>,
    #[serde(default = "default_alpha_m")]
    pub alpha_m: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Fixed `C` for the strong tail bound.
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    /// Points of the log grid `C ∈ [1e−2, 1e2]` scanned for the best strong
    /// tail bound; 0 disables the scan.
    #[serde(default = "default_c_grid_points")]
    pub c_grid_points: usize,
    #[serde(default = "default_s_points")]
    pub s_points: usize,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

fn default_t_values() -> Vec<f64> {
    vec![0.1, 1.0, 10.0, 100.0, 1000.0]
}

fn default_alpha_m() -> f64 {
    0.5
}

fn default_epsilon() -> f64 {
    0.5
}

fn default_s_points() -> usize {
    fcstat_core::bounds::DEFAULT_S_POINTS
}

fn default_c_grid_points() -> usize {
    fcstat_core::bounds::DEFAULT_C_GRID.2
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    XyLattice {
        half_width: usize,
        coupling: f64,
        boundary_strength: f64,
    },
    Anderson(AndersonConfig),
    /// JSON file with `h_a`, `h_b`, `v` as `[[[re, im], ...], ...]`; a relative
    /// path is resolved against the config file's directory.
    Explicit {
        path: PathBuf,
    },
}

/// Lead couplings are either a nearest-site strength `coupling` or explicit
/// vectors `v_left`/`v_right` (entry `k` couples to lead site `∓(k+1)`) given
/// as `[re, im]` pairs. The `_down` variants override the spin-down vectors,
/// which otherwise equal the spin-up ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AndersonConfig {
    pub lead_length: usize,
    pub dot_energy: f64,
    pub interaction: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_left: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_right: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_left_down: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_right_down: Option<Vec<[f64; 2]>>,
    #[serde(default = "default_true")]
    pub include_dot_in_measured_energy: bool,
}

fn to_complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

impl AndersonConfig {
    pub fn to_spec(&self) -> Result<AndersonSpec, ConfigError> {
        let explicit = self.v_left.is_some() || self.v_right.is_some();
        let (left, right) = match (self.coupling, explicit) {
            (Some(_), true) => {
                return Err(ConfigError::invalid(
                    "model.coupling",
                    "give either `coupling` or `v_left`/`v_right`, not both",
                ))
            }
            (Some(lambda), false) => (
                LeadCoupling::nearest_site(self.lead_length, lambda),
                LeadCoupling::nearest_site(self.lead_length, lambda),
            ),
            (None, _) => {
                let side =
                    |up: &Option<Vec<[f64; 2]>>, down: &Option<Vec<[f64; 2]>>, name: &str| {
                        let up = up.as_deref().ok_or_else(|| {
                            ConfigError::invalid(name, "missing lead coupling vector")
                        })?;
                        let down = down.as_deref().unwrap_or(up);
                        Ok::<_, ConfigError>(LeadCoupling {
                            up: to_complex(up),
                            down: to_complex(down),
                        })
                    };
                (
                    side(&self.v_left, &self.v_left_down, "model.v_left")?,
                    side(&self.v_right, &self.v_right_down, "model.v_right")?,
                )
            }
        };
        Ok(AndersonSpec {
            lead_length: self.lead_length,
            dot_energy: self.dot_energy,
            interaction: self.interaction,
            left,
            right,
            include_dot_in_measured_energy: self.include_dot_in_measured_energy,
        })
    }
}

impl ModelConfig {
    pub fn xy_spec(&self) -> Option<XYLatticeSpec> {
        match *self {
            ModelConfig::XyLattice {
                half_width,
                coupling,
                boundary_strength,
            } => Some(XYLatticeSpec {
                half_width,
                coupling,
                boundary_strength,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateConfig {
    #[default]
    MaximallyMixed,
    GibbsProduct {
        beta_a: f64,
        beta_b: f64,
    },
    PureRandom {
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bin_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_output_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv]
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: default_output_dir(),
            formats: default_formats(),
        }
    }
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses and validates a config; `origin` is used in error messages.
pub fn parse_config(text: &str, origin: &Path) -> Result<ExperimentConfig, ConfigError> {
    let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        ConfigError::Parse {
            path: origin.to_path_buf(),
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads, parses and validates a config file. Relative `explicit` model
/// paths are resolved against the file's directory.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text, path)?;
    if let ModelConfig::Explicit { path: model_path } = &mut cfg.model {
        if model_path.is_relative() {
            if let Some(dir) = path.parent() {
                *model_path = dir.join(&*model_path);
            }
        }
    }
    Ok(cfg)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.t_values.is_empty() {
            return Err(ConfigError::invalid("t_values", "must not be empty"));
        }
        if let Some(t) = self.t_values.iter().find(|t| !t.is_finite() || **t < 0.0) {
            return Err(ConfigError::invalid(
                "t_values",
                format!("times must be finite and ≥ 0, got {t}"),
            ));
        }
        if !(self.alpha_m > 0.0) || !self.alpha_m.is_finite() {
            return Err(ConfigError::invalid(
                "alpha_m",
                format!("must be > 0, got {}", self.alpha_m),
            ));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(ConfigError::invalid(
                "epsilon",
                format!("must be > 0, got {}", self.epsilon),
            ));
        }
        if let Some(c) = self.c {
            if !(c > 0.0) || !c.is_finite() {
                return Err(ConfigError::invalid("C", format!("must be > 0, got {c}")));
            }
        }
        if self.c_grid_points == 1 {
            return Err(ConfigError::invalid(
                "c_grid_points",
                "must be 0 or ≥ 2, got 1".to_string(),
            ));
        }
        if self.s_points < 3 || self.s_points.is_multiple_of(2) {
            return Err(ConfigError::invalid(
                "s_points",
                format!("must be odd and ≥ 3, got {}", self.s_points),
            ));
        }
        for (name, tol) in [
            ("tolerances.cluster_tol", self.tolerances.cluster_tol),
            ("tolerances.bin_tol", self.tolerances.bin_tol),
        ] {
            if let Some(x) = tol {
                if !(x > 0.0) || !x.is_finite() {
                    return Err(ConfigError::invalid(name, format!("must be > 0, got {x}")));
                }
            }
        }
        if self.output.formats.is_empty() {
            return Err(ConfigError::invalid(
                "output.formats",
                "must name at least one of csv, json",
            ));
        }
        if self.max_dim == Some(0) {
            return Err(ConfigError::invalid("max_dim", "must be positive"));
        }
        match &self.model {
            ModelConfig::XyLattice {
                half_width,
                coupling,
                boundary_strength,
            } => {
                if *half_width == 0 {
                    return Err(ConfigError::invalid("model.half_width", "must be ≥ 1"));
                }
                if !coupling.is_finite() || !boundary_strength.is_finite() {
                    return Err(ConfigError::invalid("model", "couplings must be finite"));
                }
            }
            ModelConfig::Anderson(a) => {
                if a.lead_length == 0 {
                    return Err(ConfigError::invalid("model.lead_length", "must be ≥ 1"));
                }
                a.to_spec()?;
            }
            ModelConfig::Explicit { .. } => {}
        }
        if let StateConfig::GibbsProduct { beta_a, beta_b } = self.state {
            if !beta_a.is_finite() || !beta_b.is_finite() {
                return Err(ConfigError::invalid(
                    "state",
                    "inverse temperatures must be finite",
                ));
            }
        }
        Ok(())
    }
}
