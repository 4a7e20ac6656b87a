//! Deterministic synthetic doorway recordings with exact annotations.
//!
//! Every frame starts at a uniform background temperature. Each walker is an
//! ellipse with a flat warm core (normalised radius <= 0.5) and a raised-cosine
//! falloff to the background at the rim. Walkers enter fully outside the
//! image on one edge and travel along the row axis; a lingering walker stops
//! at a turning row, waits, and walks back out the way it came.
//!
//! Sensor noise is Gaussian. Samples come from SplitMix64
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z = z ^ (z >> 31)
//! ```
//!
//! seeded with the scenario seed, mapped to uniforms as
//! `u = ((z >> 11) + 1) / 2^53` (so `u` lies in `(0, 1]`), and turned into a
//! normal deviate by Box-Muller using two uniforms per sample and keeping only
//! the cosine branch: `sqrt(-2 ln u1) * cos(2 pi u2)`. One deviate is drawn
//! for every pixel of every frame in row-major order, and the final
//! temperature is rounded to 0.01 C.
//!
//! The annotation for a walker that passes through is stamped at the last
//! frame in which any of its pixels is warmer than `background + 3 * noise`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::classification::Direction;
use crate::frames::{
    AnnotationTrack, DeltaMap, EntryDirection, Recording, RecordingMeta, ThermalFrame, COLS, PIXELS, ROWS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("scenario `{scenario}`: {message}")]
    Invalid { scenario: String, message: String },
    #[error("unknown scenario `{0}`")]
    Unknown(String),
}

/// SplitMix64 with Box-Muller normals; see the module docs for the exact
/// recurrence.
#[derive(Debug, Clone)]
pub struct NoiseSource {
    state: u64,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in (0, 1].
    pub fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
    }

    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }
}

/// Stop-and-turn-back behaviour for a walker that never crosses fully.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linger {
    /// Row at which the walker's centre stops.
    pub turn_row: f64,
    /// Frames spent standing still.
    pub pause_frames: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Walker {
    pub start_frame: usize,
    pub direction: Direction,
    /// Rows per frame.
    pub speed: f64,
    pub body_temp: f64,
    pub radius_rows: f64,
    pub radius_cols: f64,
    /// Column of the body centre.
    pub column: f64,
    pub linger: Option<Linger>,
}

impl Walker {
    pub const DEFAULT_SPEED: f64 = 2.0;
    pub const DEFAULT_RADIUS_ROWS: f64 = 9.0;
    pub const DEFAULT_RADIUS_COLS: f64 = 7.0;
    pub const DEFAULT_WARMTH: f64 = 8.0;

    /// Default body walking through the middle of the doorway.
    pub fn new(start_frame: usize, direction: Direction, background_temp: f64) -> Self {
        Self {
            start_frame,
            direction,
            speed: Self::DEFAULT_SPEED,
            body_temp: background_temp + Self::DEFAULT_WARMTH,
            radius_rows: Self::DEFAULT_RADIUS_ROWS,
            radius_cols: Self::DEFAULT_RADIUS_COLS,
            column: (COLS - 1) as f64 / 2.0,
            linger: None,
        }
    }

    pub fn at_column(mut self, column: f64) -> Self {
        self.column = column;
        self
    }

    pub fn with_speed(mut self, speed: f64) -> Self {
        self.speed = speed;
        self
    }

    pub fn lingering(mut self, turn_row: f64, pause_frames: usize) -> Self {
        self.linger = Some(Linger { turn_row, pause_frames });
        self
    }

    fn sign(&self) -> f64 {
        match self.direction {
            Direction::Up => -1.0,
            Direction::Down => 1.0,
        }
    }

    fn entry_row(&self) -> f64 {
        match self.direction {
            Direction::Up => (ROWS - 1) as f64 + self.radius_rows,
            Direction::Down => -self.radius_rows,
        }
    }

    /// Frames after `start_frame` until the walker is gone again.
    pub fn duration(&self) -> usize {
        let span = match self.linger {
            None => ((ROWS - 1) as f64 + 2.0 * self.radius_rows) / self.speed,
            Some(l) => 2.0 * (l.turn_row - self.entry_row()).abs() / self.speed + l.pause_frames as f64,
        };
        span.ceil() as usize
    }

    pub fn end_frame(&self) -> usize {
        self.start_frame + self.duration()
    }

    /// Centre row at frame `t`, or `None` outside the walker's lifetime.
    pub fn centre_row(&self, t: usize) -> Option<f64> {
        if t < self.start_frame || t > self.end_frame() {
            return None;
        }
        let k = (t - self.start_frame) as f64;
        let entry = self.entry_row();
        let s = self.sign();
        Some(match self.linger {
            None => entry + s * self.speed * k,
            Some(l) => {
                let reach = (l.turn_row - entry).abs() / self.speed;
                if k <= reach {
                    entry + s * self.speed * k
                } else if k <= reach + l.pause_frames as f64 {
                    l.turn_row
                } else {
                    let back = (k - reach - l.pause_frames as f64) * self.speed;
                    l.turn_row - s * back
                }
            }
        })
    }
}

/// A stationary warm object appearing at `start_frame`.
#[derive(Debug, Clone, PartialEq)]
pub struct WarmSpot {
    pub start_frame: usize,
    pub row: f64,
    pub column: f64,
    pub radius_rows: f64,
    pub radius_cols: f64,
    pub warmth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub n_frames: usize,
    pub fps: f64,
    pub background_temp: f64,
    pub noise_std: f64,
    pub entry_direction: EntryDirection,
    pub initial_count: u32,
    pub walkers: Vec<Walker>,
    pub clutter: Vec<WarmSpot>,
}

impl Scenario {
    pub const DEFAULT_BACKGROUND: f64 = 22.0;
    pub const DEFAULT_NOISE: f64 = 0.1;

    pub fn empty(name: &str, n_frames: usize) -> Self {
        Self {
            name: name.to_string(),
            seed: 0,
            n_frames,
            fps: crate::frames::DEFAULT_FPS,
            background_temp: Self::DEFAULT_BACKGROUND,
            noise_std: Self::DEFAULT_NOISE,
            entry_direction: EntryDirection::InsideIsTop,
            initial_count: 0,
            walkers: Vec::new(),
            clutter: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn walker(&self, start_frame: usize, direction: Direction) -> Walker {
        Walker::new(start_frame, direction, self.background_temp)
    }

    fn invalid(&self, message: impl Into<String>) -> ScenarioError {
        ScenarioError::Invalid {
            scenario: self.name.clone(),
            message: message.into(),
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return Err(self.invalid("noise_std must be finite and non-negative"));
        }
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(self.invalid("fps must be positive"));
        }
        if !self.background_temp.is_finite() {
            return Err(self.invalid("background temperature must be finite"));
        }
        for (i, w) in self.walkers.iter().enumerate() {
            let bad = |m: &str| self.invalid(format!("walker {i}: {m}"));
            if w.body_temp <= self.background_temp + 3.0 * self.noise_std {
                return Err(bad("body must be warmer than background + 3 noise std"));
            }
            if !(w.speed > 0.0 && w.speed.is_finite()) {
                return Err(bad("speed must be positive"));
            }
            if !(w.radius_rows > 0.0 && w.radius_cols > 0.0) {
                return Err(bad("radii must be positive"));
            }
            if !(0.0..=(COLS - 1) as f64).contains(&w.column) {
                return Err(bad("column outside the image"));
            }
            if let Some(l) = w.linger {
                if !(0.0..=(ROWS - 1) as f64).contains(&l.turn_row) {
                    return Err(bad("turning row outside the image"));
                }
            }
            if w.end_frame() >= self.n_frames {
                return Err(bad("does not finish within the recording"));
            }
        }
        for (i, c) in self.clutter.iter().enumerate() {
            if !(c.radius_rows > 0.0 && c.radius_cols > 0.0 && c.warmth > 0.0) {
                return Err(self.invalid(format!("clutter {i}: radii and warmth must be positive")));
            }
        }
        Ok(())
    }

    /// Noise-free temperature rise above background at every pixel.
    pub fn warmth_at(&self, t: usize) -> [f64; PIXELS] {
        let mut out = [0.0; PIXELS];
        for w in &self.walkers {
            if let Some(v) = w.centre_row(t) {
                splat(&mut out, v, w.column, w.radius_rows, w.radius_cols, w.body_temp - self.background_temp);
            }
        }
        for c in &self.clutter {
            if t >= c.start_frame {
                splat(&mut out, c.row, c.column, c.radius_rows, c.radius_cols, c.warmth);
            }
        }
        out
    }

    fn walker_visible(&self, w: &Walker, t: usize) -> bool {
        let Some(v) = w.centre_row(t) else { return false };
        let mut buf = [0.0; PIXELS];
        splat(&mut buf, v, w.column, w.radius_rows, w.radius_cols, w.body_temp - self.background_temp);
        let thr = 3.0 * self.noise_std;
        buf.iter().any(|&d| d > thr)
    }

    /// Ground-truth count changes implied by the walkers.
    pub fn annotations(&self) -> Result<DeltaMap, ScenarioError> {
        let mut deltas = DeltaMap::new();
        for (i, w) in self.walkers.iter().enumerate() {
            if w.linger.is_some() {
                continue;
            }
            let last = (w.start_frame..=w.end_frame())
                .rev()
                .find(|&t| self.walker_visible(w, t))
                .ok_or_else(|| self.invalid(format!("walker {i} never visible")))?;
            let toward_room = match self.entry_direction {
                EntryDirection::InsideIsTop => Direction::Up,
                EntryDirection::InsideIsBottom => Direction::Down,
            };
            let d = if w.direction == toward_room { 1 } else { -1 };
            crate::frames::merge_deltas(&mut deltas, &[(last, d)].into_iter().collect());
        }
        Ok(deltas)
    }
}

/// Profile of the body: 1 in the core, raised cosine to 0 at the rim.
fn falloff(rho: f64) -> f64 {
    if rho <= 0.5 {
        1.0
    } else if rho < 1.0 {
        0.5 * (1.0 + (PI * (rho - 0.5) / 0.5).cos())
    } else {
        0.0
    }
}

fn splat(out: &mut [f64; PIXELS], v: f64, h: f64, rv: f64, rh: f64, amplitude: f64) {
    let r_lo = (v - rv).floor().max(0.0) as usize;
    let r_hi = (v + rv).ceil().min((ROWS - 1) as f64);
    if r_hi < 0.0 {
        return;
    }
    let c_lo = (h - rh).floor().max(0.0) as usize;
    let c_hi = (h + rh).ceil().min((COLS - 1) as f64) as usize;
    for r in r_lo..=r_hi as usize {
        for c in c_lo..=c_hi {
            let dv = (r as f64 - v) / rv;
            let dh = (c as f64 - h) / rh;
            let warm = amplitude * falloff((dv * dv + dh * dh).sqrt());
            let px = &mut out[r * COLS + c];
            if warm > *px {
                *px = warm;
            }
        }
    }
}

/// Renders the scenario into a recording plus its ground-truth annotations.
pub fn generate(scenario: &Scenario) -> Result<(Recording, AnnotationTrack), ScenarioError> {
    scenario.validate()?;
    let mut rng = NoiseSource::new(scenario.seed);
    let mut frames = Vec::with_capacity(scenario.n_frames);
    let mut temps = [0.0; PIXELS];
    for t in 0..scenario.n_frames {
        let warmth = scenario.warmth_at(t);
        for (out, w) in temps.iter_mut().zip(warmth.iter()) {
            let raw = scenario.background_temp + w + scenario.noise_std * rng.next_normal();
            *out = (raw * 100.0).round() / 100.0;
        }
        let frame = ThermalFrame::new(t, &temps).map_err(|e| scenario.invalid(e.to_string()))?;
        frames.push(frame);
    }
    let meta = RecordingMeta {
        fps: scenario.fps,
        door_id: scenario.name.clone(),
        entry_direction: scenario.entry_direction,
    };
    let rec = Recording::new(frames, meta).map_err(|e| scenario.invalid(e.to_string()))?;
    let ann = AnnotationTrack::new(scenario.annotations()?, scenario.initial_count)
        .map_err(|e| scenario.invalid(e.to_string()))?;
    Ok((rec, ann))
}

pub const SUITE: [&str; 7] = [
    "single-entry",
    "single-exit",
    "lingering",
    "two-simultaneous",
    "back-to-back",
    "slow-walker",
    "warm-clutter",
];

/// Looks up one of the [`SUITE`] scenarios by name, with seed 0.
pub fn named_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    let mut s = Scenario::empty(name, 80);
    match name {
        "single-entry" => {
            s.walkers.push(s.walker(10, Direction::Up));
        }
        "single-exit" => {
            s.initial_count = 1;
            s.walkers.push(s.walker(10, Direction::Down));
        }
        "lingering" => {
            s.n_frames = 90;
            s.walkers.push(s.walker(10, Direction::Up).lingering(6.0, 24));
        }
        "two-simultaneous" => {
            // Mirror images about the centre column, so both leave together.
            s.walkers.push(s.walker(10, Direction::Up).at_column(7.5));
            s.walkers.push(s.walker(10, Direction::Up).at_column(23.5));
        }
        "back-to-back" => {
            // 28 frames = 1.75 s between the two starts.
            s.n_frames = 110;
            s.walkers.push(s.walker(10, Direction::Up));
            s.walkers.push(s.walker(38, Direction::Up));
        }
        "slow-walker" => {
            s.n_frames = 100;
            s.walkers.push(s.walker(10, Direction::Up).with_speed(1.0));
        }
        "warm-clutter" => {
            s.clutter.push(WarmSpot {
                start_frame: 20,
                row: 18.0,
                column: 26.0,
                radius_rows: 3.0,
                radius_cols: 4.0,
                warmth: 4.0,
            });
        }
        other => return Err(ScenarioError::Unknown(other.to_string())),
    }
    Ok(s)
}

/// The fixed catalogue of doorway situations.
pub fn standard_suite() -> Vec<Scenario> {
    SUITE
        .iter()
        .map(|n| named_scenario(n).expect("suite names are known"))
        .collect()
}
