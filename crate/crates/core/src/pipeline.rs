//! End-to-end counting: background subtraction, event detection and
//! classification for one door, plus aggregation over doors.

use crate::background::{BackgroundModel, ForegroundMask};
use crate::classification::{events_to_deltas, CentroidTrace, DoorEvent};
use crate::config::{Algorithm, Config};
use crate::detection::{BaselineSegmenter, Tracker};
use crate::error::Result;
use crate::frames::{counts_from_deltas, merge_deltas, CountSeries, DeltaMap, EntryDirection, Recording, ThermalFrame};
use crate::FormatError;

enum Detector {
    Baseline(BaselineSegmenter),
    Multi(Tracker),
}

/// Frame-at-a-time processor for one door.
///
/// The background model is seeded from the first `warmup_frames` frames
/// (assumed empty); those frames are still classified afterwards like any
/// other.
pub struct DoorCounter {
    config: Config,
    inside: EntryDirection,
    door_id: String,
    model: Option<BackgroundModel>,
    warmup: Vec<ThermalFrame>,
    detector: Detector,
    events: Vec<DoorEvent>,
}

impl DoorCounter {
    pub fn new(config: &Config, inside: EntryDirection, door_id: &str) -> Result<Self> {
        config.validate()?;
        let detector = match config.algorithm {
            Algorithm::Baseline => Detector::Baseline(BaselineSegmenter::new(config.detection.k_min_pixels)),
            Algorithm::Multi => Detector::Multi(Tracker::new(config.detection)),
        };
        Ok(Self {
            config: config.clone(),
            inside,
            door_id: door_id.to_string(),
            model: None,
            warmup: Vec::new(),
            detector,
            events: Vec::new(),
        })
    }

    /// Feeds frames; masks are produced once the warm-up is complete, so
    /// the callback may see them delayed.
    pub fn push<F>(&mut self, frame: &ThermalFrame, mut on_mask: F) -> Result<()>
    where
        F: FnMut(&ThermalFrame, &ForegroundMask),
    {
        if self.model.is_none() {
            self.warmup.push(frame.clone());
            if self.warmup.len() < self.config.warmup_frames {
                return Ok(());
            }
            self.model = Some(BackgroundModel::init_averaged(&self.warmup, self.config.background)?);
            for f in std::mem::take(&mut self.warmup) {
                self.process(&f, &mut on_mask);
            }
            return Ok(());
        }
        self.process(frame, &mut on_mask);
        Ok(())
    }

    fn process<F>(&mut self, frame: &ThermalFrame, on_mask: &mut F)
    where
        F: FnMut(&ThermalFrame, &ForegroundMask),
    {
        let model = self.model.as_mut().expect("model initialised");
        let mask = model.subtract(frame, self.config.use_mrf, self.config.mrf_iterations);
        on_mask(frame, &mask);
        let n = frame.index();
        match &mut self.detector {
            Detector::Baseline(seg) => {
                if let Some(ev) = seg.push(n, &mask) {
                    let trace = CentroidTrace::from_baseline(&ev);
                    self.events.push(DoorEvent::from_trace(trace, self.inside, &self.door_id));
                }
            }
            Detector::Multi(tracker) => {
                for t in tracker.push(n, &mask) {
                    let trace = CentroidTrace::from_track(&t);
                    self.events.push(DoorEvent::from_trace(trace, self.inside, &self.door_id));
                }
            }
        }
    }

    /// Flushes a short warm-up and any open events.
    pub fn finish<F>(mut self, mut on_mask: F) -> Result<Vec<DoorEvent>>
    where
        F: FnMut(&ThermalFrame, &ForegroundMask),
    {
        if self.model.is_none() && !self.warmup.is_empty() {
            self.model = Some(BackgroundModel::init_averaged(&self.warmup, self.config.background)?);
            for f in std::mem::take(&mut self.warmup) {
                self.process(&f, &mut on_mask);
            }
        }
        let traces: Vec<CentroidTrace> = match &mut self.detector {
            Detector::Baseline(seg) => seg.finish().iter().map(CentroidTrace::from_baseline).collect(),
            Detector::Multi(tracker) => tracker.finish().iter().map(CentroidTrace::from_track).collect(),
        };
        for trace in traces {
            self.events.push(DoorEvent::from_trace(trace, self.inside, &self.door_id));
        }
        Ok(self.events)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub events: Vec<DoorEvent>,
    pub deltas: DeltaMap,
    pub counts: CountSeries,
}

/// Counts one recording. Door orientation and id come from the recording.
pub fn run_pipeline(rec: &Recording, config: &Config) -> Result<PipelineOutput> {
    run_pipeline_with(rec, config, |_, _| {})
}

/// As [`run_pipeline`], also handing every mask to `on_mask`.
pub fn run_pipeline_with<F>(rec: &Recording, config: &Config, mut on_mask: F) -> Result<PipelineOutput>
where
    F: FnMut(&ThermalFrame, &ForegroundMask),
{
    let mut counter = DoorCounter::new(config, rec.entry_direction, &rec.door_id)?;
    for frame in rec.frames() {
        counter.push(frame, &mut on_mask)?;
    }
    let events = counter.finish(&mut on_mask)?;
    let deltas = events_to_deltas(&events);
    let counts = counts_from_deltas(&deltas, i64::from(config.initial_count), rec.len());
    Ok(PipelineOutput { events, deltas, counts })
}

/// Merges per-door deltas on a shared clock and integrates them.
pub fn aggregate_doors(delta_maps: &[DeltaMap], initial: u32, n_frames: usize) -> Result<CountSeries, FormatError> {
    let mut all = DeltaMap::new();
    for map in delta_maps {
        if let Some((&frame, _)) = map.iter().next_back() {
            if frame >= n_frames {
                return Err(FormatError::DeltaOutOfRange { frame, n_frames });
            }
        }
        merge_deltas(&mut all, map);
    }
    Ok(counts_from_deltas(&all, i64::from(initial), n_frames))
}

/// One row of the per-frame blob table.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobRow {
    pub frame: usize,
    pub track_id: u64,
    pub size: usize,
    pub centroid_v: f64,
    pub centroid_h: f64,
}

/// One row of the per-frame occupancy table; the centroid covers all
/// foreground pixels and is `None` for an empty mask.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameRow {
    pub frame: usize,
    pub foreground_pixels: usize,
    pub centroid_v: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Inspection {
    pub blobs: Vec<BlobRow>,
    pub frames: Vec<FrameRow>,
}

/// Per-frame mask occupancy and tracked blobs, for plotting and debugging.
/// Blobs are always tracked with the multi-person tracker.
pub fn inspect(rec: &Recording, config: &Config) -> Result<Inspection> {
    let mut tracker = Tracker::new(config.detection);
    let mut out = Inspection::default();
    run_pipeline_with(rec, config, |frame, mask| {
        let n = frame.index();
        let fg: Vec<usize> = mask.foreground().collect();
        out.frames.push(FrameRow {
            frame: n,
            foreground_pixels: fg.len(),
            centroid_v: crate::detection::centroid_of(&fg).map(|c| c.v),
        });
        tracker.push(n, mask);
        for track in tracker.open_tracks() {
            let blob = track.last();
            if blob.frame_index == n {
                out.blobs.push(BlobRow {
                    frame: n,
                    track_id: track.track_id,
                    size: blob.size(),
                    centroid_v: blob.centroid.v,
                    centroid_h: blob.centroid.h,
                });
            }
        }
    })?;
    Ok(out)
}
