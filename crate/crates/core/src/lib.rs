//! Room occupancy from overhead thermal tripwires.
//!
//! A 32 x 24 thermal sensor above a doorway watches people pass beneath it.
//! Counting happens in three stages:
//!
//! 1. [`background`]: a per-pixel running Gaussian average separates warm
//!    bodies from the floor, optionally smoothed by an MRF pass.
//! 2. [`detection`]: foreground masks become events, either one event per
//!    nonempty run of frames (baseline) or one per tracked blob (multi-person).
//! 3. [`classification`]: the vertical path of each event's centroid across
//!    the image mid-line decides entry, exit or lingering.
//!
//! [`pipeline`] chains the stages for a recording and merges several doors;
//! [`metrics`] scores estimated count series against ground truth;
//! [`synthgen`] renders synthetic recordings with exact annotations.
//!
//! ```
//! use thermal_tripwire::{config::Config, pipeline::run_pipeline, synthgen};
//!
//! let scenario = synthgen::named_scenario("single-entry")?;
//! let (recording, truth) = synthgen::generate(&scenario)?;
//! let out = run_pipeline(&recording, &Config::default())?;
//! assert_eq!(out.counts.last(), Some(1));
//! assert_eq!(truth.deltas().len(), 1);
//! # Ok::<(), thermal_tripwire::Error>(())
//! ```

pub mod background;
pub mod classification;
pub mod config;
pub mod detection;
mod error;
pub mod formats;
pub mod frames;
pub mod metrics;
pub mod pipeline;
pub mod synthgen;

pub use error::{Error, FormatError, Result};

/// A parameter outside its admissible range.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parameter `{name}`: {message}")]
pub struct ParamError {
    pub name: &'static str,
    pub message: String,
}

impl ParamError {
    pub fn new(name: &'static str, message: impl Into<String>) -> Self {
        Self {
            name,
            message: message.into(),
        }
    }
}
