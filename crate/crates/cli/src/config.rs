//! Run configuration. Values are resolved as flags, then the key=value
//! config file, then built-in defaults. `TADPOLE_OUTPUT_DIR` is consulted
//! only when neither source names an output directory.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const OUTPUT_DIR_ENV: &str = "TADPOLE_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::usage(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quad_tol: f64,
    pub root_tol: f64,
    pub grid_n: usize,
    pub l_trunc_factor: f64,
    pub output_dir: PathBuf,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            quad_tol: 1e-10,
            root_tol: 1e-10,
            grid_n: 400,
            l_trunc_factor: 20.0,
            output_dir: PathBuf::from("."),
            format: Format::Csv,
        }
    }
}

/// Optional overrides, one layer of the precedence stack.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub quad_tol: Option<f64>,
    pub root_tol: Option<f64>,
    pub grid_n: Option<usize>,
    pub l_trunc_factor: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigLayer {
    /// Parses a flat `key = value` file. Blank lines and `#` comments are
    /// skipped, and unknown keys are rejected.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut layer = ConfigLayer::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| CliError::usage(format!("config line {}: invalid {what} `{value}`", no + 1));
            match key {
                "quad_tol" => layer.quad_tol = Some(value.parse().map_err(|_| bad(key))?),
                "root_tol" => layer.root_tol = Some(value.parse().map_err(|_| bad(key))?),
                "grid_n" => layer.grid_n = Some(value.parse().map_err(|_| bad(key))?),
                "L_trunc_factor" | "l_trunc_factor" => {
                    layer.l_trunc_factor = Some(value.parse().map_err(|_| bad(key))?)
                }
                "output_dir" => layer.output_dir = Some(PathBuf::from(value)),
                "format" => layer.format = Some(value.parse()?),
                other => {
                    return Err(CliError::usage(format!("config line {}: unknown key `{other}`", no + 1)))
                }
            }
        }
        Ok(layer)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            quad_tol: self.quad_tol.or(lower.quad_tol),
            root_tol: self.root_tol.or(lower.root_tol),
            grid_n: self.grid_n.or(lower.grid_n),
            l_trunc_factor: self.l_trunc_factor.or(lower.l_trunc_factor),
            output_dir: self.output_dir.or(lower.output_dir),
            format: self.format.or(lower.format),
        }
    }
}

impl RunConfig {
    /// Resolves flags over the file layer over defaults, with `env_dir`
    /// as the output-directory fallback.
    pub fn resolve(flags: ConfigLayer, file: ConfigLayer, env_dir: Option<PathBuf>) -> CliResult<Self> {
        let merged = flags.over(file);
        let d = RunConfig::default();
        let cfg = RunConfig {
            quad_tol: merged.quad_tol.unwrap_or(d.quad_tol),
            root_tol: merged.root_tol.unwrap_or(d.root_tol),
            grid_n: merged.grid_n.unwrap_or(d.grid_n),
            l_trunc_factor: merged.l_trunc_factor.unwrap_or(d.l_trunc_factor),
            output_dir: merged
                .output_dir
                .or(env_dir.filter(|p| !p.as_os_str().is_empty()))
                .unwrap_or(d.output_dir),
            format: merged.format.unwrap_or(d.format),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::usage(format!("{name} must be a positive number, got {v}")))
            }
        };
        positive("quad_tol", self.quad_tol)?;
        positive("root_tol", self.root_tol)?;
        positive("L_trunc_factor", self.l_trunc_factor)?;
        if self.grid_n < 2 {
            return Err(CliError::usage(format!("grid_n must be at least 2, got {}", self.grid_n)));
        }
        Ok(())
    }

    /// Canonical text of the settings that affect numerical output. The
    /// output directory is left out so relocated runs hash the same.
    pub fn canonical(&self) -> String {
        format!(
            "quad_tol={:e}\nroot_tol={:e}\ngrid_n={}\nL_trunc_factor={:e}\nformat={}\n",
            self.quad_tol, self.root_tol, self.grid_n, self.l_trunc_factor, self.format
        )
    }

    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn solver(&self) -> tadpole::WaveSolver64 {
        tadpole::WaveSolver::new(self.quad_tol, self.root_tol)
    }
}
