//! Flat `key = value` configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are an
//! error. Later assignments win, so command-line overrides are applied by
//! calling [`Config::set`] after loading the file.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::background::BackgroundParams;
use crate::detection::DetectionParams;
use crate::frames::EntryDirection;
use crate::metrics::MetricsParams;
use crate::ParamError;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("config key `{key}`: cannot parse `{value}`")]
    BadValue { key: String, value: String },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{}: {source}", path.display())]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    Baseline,
    #[default]
    Multi,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Multi => "multi",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" => Ok(Algorithm::Baseline),
            "multi" => Ok(Algorithm::Multi),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

/// Every tunable of the pipeline and the evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub background: BackgroundParams,
    pub use_mrf: bool,
    pub mrf_iterations: usize,
    pub warmup_frames: usize,
    pub detection: DetectionParams,
    pub metrics: MetricsParams,
    pub algorithm: Algorithm,
    pub entry_direction: EntryDirection,
    pub initial_count: u32,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            background: BackgroundParams::default(),
            use_mrf: true,
            mrf_iterations: 1,
            warmup_frames: 1,
            detection: DetectionParams::default(),
            metrics: MetricsParams::default(),
            algorithm: Algorithm::Multi,
            entry_direction: EntryDirection::InsideIsTop,
            initial_count: 0,
        }
    }
}

pub const KEYS: [&str; 15] = [
    "alpha",
    "sigma",
    "eta",
    "theta_pf",
    "gamma",
    "use_mrf",
    "mrf_iterations",
    "warmup_frames",
    "k_min_pixels",
    "l_min_pixels",
    "max_assoc_dist",
    "window_w",
    "algorithm",
    "entry_direction",
    "initial_count",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

impl Config {
    /// Applies one assignment without re-validating the whole config.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key.trim() {
            "alpha" => self.background.alpha = parse("alpha", value)?,
            "sigma" => self.background.sigma = parse("sigma", value)?,
            "eta" => self.background.eta = parse("eta", value)?,
            "theta_pf" => self.background.theta_pf = parse("theta_pf", value)?,
            "gamma" => self.background.gamma = parse("gamma", value)?,
            "use_mrf" => self.use_mrf = parse("use_mrf", value)?,
            "mrf_iterations" => self.mrf_iterations = parse("mrf_iterations", value)?,
            "warmup_frames" => self.warmup_frames = parse("warmup_frames", value)?,
            "k_min_pixels" => self.detection.k_min_pixels = parse("k_min_pixels", value)?,
            "l_min_pixels" => self.detection.l_min_pixels = parse("l_min_pixels", value)?,
            "max_assoc_dist" => self.detection.max_assoc_dist = parse("max_assoc_dist", value)?,
            "window_w" => self.metrics.window_w = parse("window_w", value)?,
            "algorithm" => self.algorithm = parse("algorithm", value)?,
            "entry_direction" => self.entry_direction = parse("entry_direction", value)?,
            "initial_count" => self.initial_count = parse("initial_count", value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Parses `key=value` (as given on a command line).
    pub fn set_assignment(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (k, v) = assignment.split_once('=').ok_or(ConfigError::Syntax { line: 0 })?;
        self.set(k, v)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.background.validate()?;
        self.detection.validate()?;
        self.metrics.validate()?;
        if self.mrf_iterations < 1 {
            return Err(ParamError::new("mrf_iterations", "must be at least 1"));
        }
        if self.warmup_frames < 1 {
            return Err(ParamError::new("warmup_frames", "must be at least 1"));
        }
        Ok(())
    }

    /// The effective configuration in the file format; re-reading it
    /// reproduces `self` exactly.
    pub fn to_text(&self) -> String {
        let b = &self.background;
        let d = &self.detection;
        format!(
            "alpha = {}\nsigma = {}\neta = {}\ntheta_pf = {}\ngamma = {}\nuse_mrf = {}\n\
             mrf_iterations = {}\nwarmup_frames = {}\nk_min_pixels = {}\nl_min_pixels = {}\n\
             max_assoc_dist = {}\nwindow_w = {}\nalgorithm = {}\nentry_direction = {}\n\
             initial_count = {}\n",
            b.alpha,
            b.sigma,
            b.eta,
            b.theta_pf,
            b.gamma,
            self.use_mrf,
            self.mrf_iterations,
            self.warmup_frames,
            d.k_min_pixels,
            d.l_min_pixels,
            d.max_assoc_dist,
            self.metrics.window_w,
            self.algorithm,
            self.entry_direction,
            self.initial_count,
        )
    }
}
