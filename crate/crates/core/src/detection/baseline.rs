use crate::background::ForegroundMask;

/// A maximal run of nonempty masks in which some frame reaches `K` pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineEvent {
    pub start_frame: usize,
    /// Inclusive.
    pub end_frame: usize,
    /// Foreground pixel indices for each frame of the run.
    pub foreground: Vec<Vec<usize>>,
}

impl BaselineEvent {
    pub fn len(&self) -> usize {
        self.foreground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.foreground.is_empty()
    }

    pub fn peak_pixels(&self) -> usize {
        self.foreground.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Streaming single-person event detector. A run closes on the first empty
/// frame (or at end of stream) and is kept only if its peak reaches `K`.
#[derive(Debug, Clone)]
pub struct BaselineSegmenter {
    k_min: usize,
    current: Option<BaselineEvent>,
}

impl BaselineSegmenter {
    pub fn new(k_min: usize) -> Self {
        Self { k_min, current: None }
    }

    pub fn push(&mut self, frame_index: usize, mask: &ForegroundMask) -> Option<BaselineEvent> {
        let pixels: Vec<usize> = mask.foreground().collect();
        if pixels.is_empty() {
            return self.close();
        }
        let run = self.current.get_or_insert_with(|| BaselineEvent {
            start_frame: frame_index,
            end_frame: frame_index,
            foreground: Vec::new(),
        });
        run.end_frame = frame_index;
        run.foreground.push(pixels);
        None
    }

    pub fn finish(&mut self) -> Option<BaselineEvent> {
        self.close()
    }

    fn close(&mut self) -> Option<BaselineEvent> {
        self.current.take().filter(|run| run.peak_pixels() >= self.k_min)
    }
}

pub fn baseline_segment<'a, I>(masks: I, k_min: usize) -> Vec<BaselineEvent>
where
    I: IntoIterator<Item = &'a ForegroundMask>,
{
    let mut seg = BaselineSegmenter::new(k_min);
    let mut events = Vec::new();
    for (n, mask) in masks.into_iter().enumerate() {
        events.extend(seg.push(n, mask));
    }
    events.extend(seg.finish());
    events
}
