//! Frame, recording, annotation and count-series types.
//!
//! A frame is a 24 x 32 grid of Celsius temperatures stored row-major. Row 0
//! is the top of the image and the columns run along the door frame, so a
//! person walking through the door moves along the row axis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::FormatError;

pub const ROWS: usize = 24;
pub const COLS: usize = 32;
pub const PIXELS: usize = ROWS * COLS;

/// Temperatures outside this band are treated as corrupt input.
pub const MIN_TEMP: f64 = -20.0;
pub const MAX_TEMP: f64 = 120.0;

pub const DEFAULT_FPS: f64 = 16.0;

/// Row/column of a row-major pixel index.
#[inline]
pub fn pixel_coords(index: usize) -> (usize, usize) {
    (index / COLS, index % COLS)
}

#[inline]
pub fn pixel_index(row: usize, col: usize) -> usize {
    row * COLS + col
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalFrame {
    index: usize,
    temps: Box<[f64; PIXELS]>,
}

impl ThermalFrame {
    /// Builds a frame after checking arity, finiteness and the sanity band.
    pub fn new(index: usize, temps: &[f64]) -> Result<Self, FormatError> {
        if temps.len() != PIXELS {
            return Err(FormatError::Arity {
                frame: index,
                expected: PIXELS,
                found: temps.len(),
            });
        }
        for (pixel, &t) in temps.iter().enumerate() {
            if !t.is_finite() {
                return Err(FormatError::NonFinite { frame: index, pixel });
            }
            if !(MIN_TEMP..=MAX_TEMP).contains(&t) {
                return Err(FormatError::OutOfBand {
                    frame: index,
                    pixel,
                    value: t,
                });
            }
        }
        let mut buf = Box::new([0.0; PIXELS]);
        buf.copy_from_slice(temps);
        Ok(Self { index, temps: buf })
    }

    /// A frame with the same temperature everywhere.
    pub fn uniform(index: usize, temp: f64) -> Result<Self, FormatError> {
        Self::new(index, &[temp; PIXELS])
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn temps(&self) -> &[f64; PIXELS] {
        &self.temps
    }

    pub fn temp(&self, row: usize, col: usize) -> f64 {
        self.temps[pixel_index(row, col)]
    }
}

/// Which vertical half of the image lies inside the room.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EntryDirection {
    #[default]
    InsideIsTop,
    InsideIsBottom,
}

impl EntryDirection {
    pub fn flipped(self) -> Self {
        match self {
            Self::InsideIsTop => Self::InsideIsBottom,
            Self::InsideIsBottom => Self::InsideIsTop,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::InsideIsTop => "inside-is-top",
            Self::InsideIsBottom => "inside-is-bottom",
        }
    }
}

impl fmt::Display for EntryDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntryDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inside-is-top" => Ok(Self::InsideIsTop),
            "inside-is-bottom" => Ok(Self::InsideIsBottom),
            other => Err(format!(
                "unknown entry direction `{other}` (expected inside-is-top or inside-is-bottom)"
            )),
        }
    }
}

/// Metadata that the CSV layout does not carry.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordingMeta {
    pub fps: f64,
    pub door_id: String,
    pub entry_direction: EntryDirection,
}

impl Default for RecordingMeta {
    fn default() -> Self {
        Self {
            fps: DEFAULT_FPS,
            door_id: "door".to_string(),
            entry_direction: EntryDirection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    frames: Vec<ThermalFrame>,
    pub fps: f64,
    pub door_id: String,
    pub entry_direction: EntryDirection,
}

impl Recording {
    /// Frame indices must run 0, 1, 2, ... and fps must be positive.
    pub fn new(frames: Vec<ThermalFrame>, meta: RecordingMeta) -> Result<Self, FormatError> {
        if !(meta.fps.is_finite() && meta.fps > 0.0) {
            return Err(FormatError::Fps(meta.fps));
        }
        for (expected, frame) in frames.iter().enumerate() {
            if frame.index != expected {
                return Err(FormatError::NonContiguous {
                    expected,
                    found: frame.index,
                });
            }
        }
        Ok(Self {
            frames,
            fps: meta.fps,
            door_id: meta.door_id,
            entry_direction: meta.entry_direction,
        })
    }

    pub fn meta(&self) -> RecordingMeta {
        RecordingMeta {
            fps: self.fps,
            door_id: self.door_id.clone(),
            entry_direction: self.entry_direction,
        }
    }

    pub fn frames(&self) -> &[ThermalFrame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// Sparse per-frame count changes, with zero entries elided.
pub type DeltaMap = BTreeMap<usize, i64>;

/// Ground-truth annotations: the count change at each annotated frame plus
/// the room count before the first frame.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnotationTrack {
    deltas: DeltaMap,
    pub initial_count: u32,
}

impl AnnotationTrack {
    pub fn new(deltas: DeltaMap, initial_count: u32) -> Result<Self, FormatError> {
        if let Some((&frame, _)) = deltas.iter().find(|(_, &d)| d == 0) {
            return Err(FormatError::ZeroDelta { frame });
        }
        Ok(Self {
            deltas,
            initial_count,
        })
    }

    pub fn deltas(&self) -> &DeltaMap {
        &self.deltas
    }

    /// Fails if any annotated frame falls outside a recording of `n_frames`.
    pub fn check_within(&self, n_frames: usize) -> Result<(), FormatError> {
        match self.deltas.keys().next_back() {
            Some(&frame) if frame >= n_frames => {
                Err(FormatError::DeltaOutOfRange { frame, n_frames })
            }
            _ => Ok(()),
        }
    }
}

/// Adds every entry of `other` into `into`, dropping entries that sum to zero.
pub fn merge_deltas(into: &mut DeltaMap, other: &DeltaMap) {
    for (&frame, &delta) in other {
        let slot = into.entry(frame).or_insert(0);
        *slot += delta;
        if *slot == 0 {
            into.remove(&frame);
        }
    }
}

/// Per-frame occupancy. Negative values are legal: a drifting estimate is
/// reported as-is rather than clamped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountSeries {
    pub counts: Vec<i64>,
}

impl CountSeries {
    pub fn new(counts: Vec<i64>) -> Self {
        Self { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn last(&self) -> Option<i64> {
        self.counts.last().copied()
    }
}

impl From<Vec<i64>> for CountSeries {
    fn from(counts: Vec<i64>) -> Self {
        Self { counts }
    }
}

/// Prefix sum of the annotated deltas; a change takes effect at its own frame.
pub fn cumulative_counts(ann: &AnnotationTrack, n_frames: usize) -> Result<CountSeries, FormatError> {
    ann.check_within(n_frames)?;
    Ok(counts_from_deltas(ann.deltas(), i64::from(ann.initial_count), n_frames))
}

pub(crate) fn counts_from_deltas(deltas: &DeltaMap, initial: i64, n_frames: usize) -> CountSeries {
    let mut counts = Vec::with_capacity(n_frames);
    let mut level = initial;
    let mut pending = deltas.iter().peekable();
    for n in 0..n_frames {
        while let Some((_, d)) = pending.next_if(|(&f, _)| f == n) {
            level += d;
        }
        counts.push(level);
    }
    CountSeries { counts }
}
