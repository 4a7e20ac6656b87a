//! Entry/exit decisions from the vertical centroid path of an event.
//!
//! The image is split at row 11.5 into an upper and a lower 32 x 12 half.
//! Moving from the lower half into the upper one is an upward crossing. An
//! event counts only when its first and last crossings agree in direction;
//! otherwise (or with no crossing at all) the person lingered.

use std::fmt;
use std::str::FromStr;

use crate::detection::{centroid_of, BaselineEvent, BlobTrack};
use crate::frames::{merge_deltas, DeltaMap, EntryDirection, ROWS};

pub const MIDLINE: f64 = 11.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Lower half to upper half.
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Entry,
    Exit,
    Lingering,
}

impl Verdict {
    pub fn delta(self) -> i64 {
        match self {
            Verdict::Entry => 1,
            Verdict::Exit => -1,
            Verdict::Lingering => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Entry => "entry",
            Verdict::Exit => "exit",
            Verdict::Lingering => "lingering",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "entry" => Ok(Verdict::Entry),
            "exit" => Ok(Verdict::Exit),
            "lingering" => Ok(Verdict::Lingering),
            other => Err(format!("unknown verdict `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSource {
    Baseline,
    BlobTrack(u64),
}

/// Vertical centroid per event frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidTrace {
    /// `(frame, v)` in frame order.
    pub samples: Vec<(usize, f64)>,
    pub source: TraceSource,
}

impl CentroidTrace {
    /// Panics if a sample lies outside the image rows or the trace is empty.
    pub fn new(samples: Vec<(usize, f64)>, source: TraceSource) -> Self {
        assert!(!samples.is_empty(), "centroid trace needs at least one sample");
        assert!(
            samples.iter().all(|&(_, v)| (0.0..=(ROWS - 1) as f64).contains(&v)),
            "centroid row outside image"
        );
        Self { samples, source }
    }

    /// Trace over consecutive frames starting at `start`.
    pub fn from_rows(start: usize, rows: &[f64]) -> Self {
        Self::new(
            rows.iter().enumerate().map(|(i, &v)| (start + i, v)).collect(),
            TraceSource::Baseline,
        )
    }

    pub fn from_track(track: &BlobTrack) -> Self {
        Self::new(
            track.blobs.iter().map(|b| (b.frame_index, b.centroid.v)).collect(),
            TraceSource::BlobTrack(track.track_id),
        )
    }

    /// Centroid of all foreground pixels in each frame of the run.
    pub fn from_baseline(event: &BaselineEvent) -> Self {
        let samples = event
            .foreground
            .iter()
            .enumerate()
            .map(|(i, px)| {
                let c = centroid_of(px).expect("baseline frames are nonempty");
                (event.start_frame + i, c.v)
            })
            .collect();
        Self::new(samples, TraceSource::Baseline)
    }

    pub fn end_frame(&self) -> usize {
        self.samples.last().map(|s| s.0).unwrap_or(0)
    }

    /// Mirror top/bottom: v -> 23 - v.
    pub fn flipped(&self) -> Self {
        let top = (ROWS - 1) as f64;
        Self {
            samples: self.samples.iter().map(|&(f, v)| (f, top - v)).collect(),
            source: self.source,
        }
    }
}

/// Mid-line crossings as `(frame, direction)`, stamped at the later sample.
/// A sample exactly on the mid-line stays in the previous sample's half;
/// leading on-line samples take the half of the first sample off the line,
/// which keeps the rule symmetric under a vertical flip.
pub fn crossings(trace: &CentroidTrace) -> Vec<(usize, Direction)> {
    let mut out = Vec::new();
    let mut prev: Option<Half> = None;
    for &(frame, v) in &trace.samples {
        let half = if v < MIDLINE {
            Half::Upper
        } else if v > MIDLINE {
            Half::Lower
        } else {
            match prev {
                Some(h) => h,
                None => continue,
            }
        };
        match (prev, half) {
            (Some(Half::Lower), Half::Upper) => out.push((frame, Direction::Up)),
            (Some(Half::Upper), Half::Lower) => out.push((frame, Direction::Down)),
            _ => {}
        }
        prev = Some(half);
    }
    out
}

pub fn classify(trace: &CentroidTrace, inside: EntryDirection) -> Verdict {
    let xs = crossings(trace);
    let (Some(&(_, first)), Some(&(_, last))) = (xs.first(), xs.last()) else {
        return Verdict::Lingering;
    };
    if first != last {
        return Verdict::Lingering;
    }
    let toward_room = match inside {
        EntryDirection::InsideIsTop => Direction::Up,
        EntryDirection::InsideIsBottom => Direction::Down,
    };
    if first == toward_room {
        Verdict::Entry
    } else {
        Verdict::Exit
    }
}

/// A completed, classified event.
#[derive(Debug, Clone, PartialEq)]
pub struct DoorEvent {
    pub end_frame: usize,
    pub verdict: Verdict,
    pub trace: CentroidTrace,
    pub door_id: String,
}

impl DoorEvent {
    pub fn from_trace(trace: CentroidTrace, inside: EntryDirection, door_id: &str) -> Self {
        Self {
            end_frame: trace.end_frame(),
            verdict: classify(&trace, inside),
            trace,
            door_id: door_id.to_string(),
        }
    }
}

/// Entry adds one and exit subtracts one at the event's end frame;
/// coinciding changes are summed and zero sums dropped.
pub fn events_to_deltas(events: &[DoorEvent]) -> DeltaMap {
    let mut deltas = DeltaMap::new();
    for e in events {
        let d = e.verdict.delta();
        if d != 0 {
            merge_deltas(&mut deltas, &[(e.end_frame, d)].into_iter().collect());
        }
    }
    deltas
}
