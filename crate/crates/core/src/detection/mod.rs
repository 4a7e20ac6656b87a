//! Event detection from foreground mask streams.
//!
//! Two detectors are provided. [`BaselineSegmenter`] treats every nonempty
//! run of masks as a single person. [`Tracker`] splits each mask into blobs
//! and links them frame to frame, so several people in the doorway at once
//! produce separate events.

mod baseline;
mod blobs;
mod tracker;

pub use baseline::{baseline_segment, BaselineEvent, BaselineSegmenter};
pub use blobs::{centroid_of, extract_blobs, Blob, Centroid};
pub use tracker::{step_tracks, track_events, BlobTrack, StepOutcome, TrackState, Tracker};

use crate::ParamError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionParams {
    /// Baseline: a run must reach this many foreground pixels in some frame.
    pub k_min_pixels: usize,
    /// Multi-person: minimum blob size.
    pub l_min_pixels: usize,
    /// Association gate in pixels; infinite disables it.
    pub max_assoc_dist: f64,
}

impl Default for DetectionParams {
    fn default() -> Self {
        Self {
            k_min_pixels: 100,
            l_min_pixels: 100,
            max_assoc_dist: f64::INFINITY,
        }
    }
}

impl DetectionParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.k_min_pixels < 1 {
            return Err(ParamError::new("k_min_pixels", "must be at least 1"));
        }
        if self.l_min_pixels < 1 {
            return Err(ParamError::new("l_min_pixels", "must be at least 1"));
        }
        if self.max_assoc_dist.is_nan() || self.max_assoc_dist < 0.0 {
            return Err(ParamError::new(
                "max_assoc_dist",
                format!("must be non-negative, got {}", self.max_assoc_dist),
            ));
        }
        Ok(())
    }
}
