use crate::background::ForegroundMask;

use super::blobs::{extract_blobs, Blob};
use super::DetectionParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackState {
    Open,
    Terminated,
}

/// Blobs linked across consecutive frames; one track is one event.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobTrack {
    pub track_id: u64,
    pub blobs: Vec<Blob>,
    pub state: TrackState,
}

impl BlobTrack {
    fn born(track_id: u64, blob: Blob) -> Self {
        Self {
            track_id,
            blobs: vec![blob],
            state: TrackState::Open,
        }
    }

    pub fn last(&self) -> &Blob {
        self.blobs.last().expect("track holds at least one blob")
    }

    pub fn start_frame(&self) -> usize {
        self.blobs[0].frame_index
    }

    pub fn end_frame(&self) -> usize {
        self.last().frame_index
    }

    pub fn len(&self) -> usize {
        self.blobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blobs.is_empty()
    }
}

/// Outcome of associating one frame's blobs with the open tracks.
#[derive(Debug, Default)]
pub struct StepOutcome {
    pub grown: Vec<BlobTrack>,
    pub born: Vec<BlobTrack>,
    pub terminated: Vec<BlobTrack>,
}

/// Greedy global nearest-centroid association.
///
/// Repeatedly links the unmatched (track, blob) pair with the smallest
/// centroid distance; ties go to the lower track id, then the lower blob
/// position. Pairs farther apart than `max_dist` are never linked. Unlinked
/// blobs start tracks with ids from `next_id`; unlinked tracks terminate.
pub fn step_tracks(
    open: Vec<BlobTrack>,
    current: Vec<Blob>,
    max_dist: f64,
    next_id: &mut u64,
) -> StepOutcome {
    let mut pairs: Vec<(f64, u64, usize, usize)> = Vec::with_capacity(open.len() * current.len());
    for (ti, track) in open.iter().enumerate() {
        let prev = track.last().centroid;
        for (bi, blob) in current.iter().enumerate() {
            let d = prev.distance(&blob.centroid);
            if d <= max_dist {
                pairs.push((d, track.track_id, bi, ti));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut track_match: Vec<Option<usize>> = vec![None; open.len()];
    let mut blob_taken = vec![false; current.len()];
    let mut remaining = open.len().min(current.len());
    for &(_, _, bi, ti) in &pairs {
        if remaining == 0 {
            break;
        }
        if track_match[ti].is_none() && !blob_taken[bi] {
            track_match[ti] = Some(bi);
            blob_taken[bi] = true;
            remaining -= 1;
        }
    }

    let mut slots: Vec<Option<Blob>> = current.into_iter().map(Some).collect();
    let mut out = StepOutcome::default();
    for (mut track, matched) in open.into_iter().zip(track_match) {
        match matched {
            Some(bi) => {
                track.blobs.push(slots[bi].take().expect("blob matched once"));
                out.grown.push(track);
            }
            None => {
                track.state = TrackState::Terminated;
                out.terminated.push(track);
            }
        }
    }
    for blob in slots.into_iter().flatten() {
        out.born.push(BlobTrack::born(*next_id, blob));
        *next_id += 1;
    }
    out
}

/// Streaming multi-person event detector.
#[derive(Debug, Clone)]
pub struct Tracker {
    params: DetectionParams,
    open: Vec<BlobTrack>,
    next_id: u64,
}

impl Tracker {
    pub fn new(params: DetectionParams) -> Self {
        Self {
            params,
            open: Vec::new(),
            next_id: 0,
        }
    }

    pub fn open_tracks(&self) -> &[BlobTrack] {
        &self.open
    }

    /// Feeds one frame's mask; returns tracks that ended before this frame.
    pub fn push(&mut self, frame_index: usize, mask: &ForegroundMask) -> Vec<BlobTrack> {
        let blobs = extract_blobs(mask, frame_index, self.params.l_min_pixels);
        self.push_blobs(blobs)
    }

    pub fn push_blobs(&mut self, blobs: Vec<Blob>) -> Vec<BlobTrack> {
        let open = std::mem::take(&mut self.open);
        let step = step_tracks(open, blobs, self.params.max_assoc_dist, &mut self.next_id);
        self.open = step.grown;
        self.open.extend(step.born);
        self.open.sort_by_key(|t| t.track_id);
        step.terminated
    }

    /// Terminates whatever is still open at end of stream.
    pub fn finish(&mut self) -> Vec<BlobTrack> {
        let mut rest = std::mem::take(&mut self.open);
        for t in &mut rest {
            t.state = TrackState::Terminated;
        }
        rest
    }
}

/// Runs the tracker over a whole mask stream; tracks come back in
/// termination order (ties by id).
pub fn track_events<'a, I>(masks: I, params: DetectionParams) -> Vec<BlobTrack>
where
    I: IntoIterator<Item = &'a ForegroundMask>,
{
    let mut tracker = Tracker::new(params);
    let mut done = Vec::new();
    for (n, mask) in masks.into_iter().enumerate() {
        done.extend(tracker.push(n, mask));
    }
    done.extend(tracker.finish());
    done
}
