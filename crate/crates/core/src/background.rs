//! Running Gaussian average background model with optional MRF refinement.
//!
//! Each pixel keeps a running mean temperature. A pixel is background when the
//! Gaussian density of its deviation from that mean is at least `eta`. The
//! MRF pass turns that fixed threshold into a spatially adaptive one: the
//! threshold for pixel `x` becomes `theta_pf * exp((Q_F - Q_B) / gamma)`,
//! where `Q_F` and `Q_B` count foreground and background labels among the
//! in-bounds 8-neighbours of `x`. Both decisions are evaluated on log
//! densities so the exponential never overflows.

use std::f64::consts::PI;

use crate::frames::{pixel_coords, ThermalFrame, COLS, PIXELS, ROWS};
use crate::ParamError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackgroundParams {
    pub alpha: f64,
    pub sigma: f64,
    pub eta: f64,
    pub theta_pf: f64,
    pub gamma: f64,
}

impl Default for BackgroundParams {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            sigma: 0.4,
            eta: 0.015,
            theta_pf: 0.015,
            gamma: 0.2,
        }
    }
}

impl BackgroundParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ParamError::new(name, format!("must be positive, got {v}")))
            }
        };
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ParamError::new(
                "alpha",
                format!("must lie in (0, 1), got {}", self.alpha),
            ));
        }
        positive("sigma", self.sigma)?;
        positive("eta", self.eta)?;
        positive("theta_pf", self.theta_pf)?;
        positive("gamma", self.gamma)
    }

    /// Deviation |T - mu| at which the density equals `eta`, or `None` when
    /// `eta` exceeds the Gaussian peak (every pixel is foreground).
    pub fn flip_deviation(&self) -> Option<f64> {
        let arg = -2.0 * (self.eta * self.sigma * (2.0 * PI).sqrt()).ln();
        (arg >= 0.0).then(|| self.sigma * arg.sqrt())
    }
}

/// Binary foreground mask, row-major; `true` is foreground.
#[derive(Clone, PartialEq, Eq)]
pub struct ForegroundMask {
    bits: Box<[bool; PIXELS]>,
}

impl Default for ForegroundMask {
    fn default() -> Self {
        Self::empty()
    }
}

impl std::fmt::Debug for ForegroundMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ForegroundMask ({} set)", self.count())?;
        for row in self.bits.chunks(COLS) {
            let line: String = row.iter().map(|&b| if b { '#' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl ForegroundMask {
    pub fn empty() -> Self {
        Self {
            bits: Box::new([false; PIXELS]),
        }
    }

    pub fn from_bits(bits: [bool; PIXELS]) -> Self {
        Self {
            bits: Box::new(bits),
        }
    }

    /// Panics unless `bits.len() == PIXELS`.
    pub fn from_slice(bits: &[bool]) -> Self {
        let mut mask = Self::empty();
        mask.bits.copy_from_slice(bits);
        mask
    }

    pub fn bits(&self) -> &[bool; PIXELS] {
        &self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.bits[index] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Indices of foreground pixels in ascending order.
    pub fn foreground(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// `(foreground, background)` counts over the in-bounds 8-neighbourhood.
    pub fn neighbour_counts(&self, index: usize) -> (u8, u8) {
        let (r, c) = pixel_coords(index);
        let (mut fg, mut bg) = (0u8, 0u8);
        for nr in r.saturating_sub(1)..=(r + 1).min(ROWS - 1) {
            for nc in c.saturating_sub(1)..=(c + 1).min(COLS - 1) {
                if nr == r && nc == c {
                    continue;
                }
                if self.bits[nr * COLS + nc] {
                    fg += 1;
                } else {
                    bg += 1;
                }
            }
        }
        (fg, bg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackgroundModel {
    mu: Box<[f64; PIXELS]>,
    params: BackgroundParams,
    // Cached constants of the log density.
    log_norm: f64,
    inv_two_var: f64,
    log_eta: f64,
    log_theta_pf: f64,
}

impl BackgroundModel {
    /// Seeds the mean from one frame assumed to contain nobody.
    pub fn init(first_frame: &ThermalFrame, params: BackgroundParams) -> Result<Self, ParamError> {
        Self::init_averaged(std::slice::from_ref(first_frame), params)
    }

    /// Seeds the mean with the per-pixel average of `frames` (at least one).
    pub fn init_averaged(frames: &[ThermalFrame], params: BackgroundParams) -> Result<Self, ParamError> {
        params.validate()?;
        if frames.is_empty() {
            return Err(ParamError::new("warmup_frames", "no frames to initialise from"));
        }
        let mut mu = Box::new([0.0; PIXELS]);
        if let [only] = frames {
            mu.copy_from_slice(only.temps());
        } else {
            for frame in frames {
                for (m, t) in mu.iter_mut().zip(frame.temps().iter()) {
                    *m += t;
                }
            }
            let n = frames.len() as f64;
            mu.iter_mut().for_each(|m| *m /= n);
        }
        Ok(Self {
            mu,
            log_norm: -(params.sigma * (2.0 * PI).sqrt()).ln(),
            inv_two_var: 1.0 / (2.0 * params.sigma * params.sigma),
            log_eta: params.eta.ln(),
            log_theta_pf: params.theta_pf.ln(),
            params,
        })
    }

    /// Replaces the running mean with the given frame.
    pub fn reinit(&mut self, frame: &ThermalFrame) {
        self.mu.copy_from_slice(frame.temps());
    }

    pub fn mu(&self) -> &[f64; PIXELS] {
        &self.mu
    }

    pub fn params(&self) -> &BackgroundParams {
        &self.params
    }

    /// Gaussian density of temperature `t` at pixel `x` under the model.
    pub fn density(&self, x: usize, t: f64) -> f64 {
        self.log_density(x, t).exp()
    }

    pub fn log_density(&self, x: usize, t: f64) -> f64 {
        let d = t - self.mu[x];
        self.log_norm - d * d * self.inv_two_var
    }

    /// Fixed-threshold test: background iff density >= eta.
    pub fn classify(&self, frame: &ThermalFrame) -> ForegroundMask {
        let mut mask = ForegroundMask::empty();
        for (x, &t) in frame.temps().iter().enumerate() {
            mask.bits[x] = self.log_density(x, t) < self.log_eta;
        }
        mask
    }

    /// One synchronous MRF pass: every decision reads `initial` only.
    pub fn refine(&self, frame: &ThermalFrame, initial: &ForegroundMask) -> ForegroundMask {
        let mut out = ForegroundMask::empty();
        let inv_gamma = 1.0 / self.params.gamma;
        for (x, &t) in frame.temps().iter().enumerate() {
            let (qf, qb) = initial.neighbour_counts(x);
            let bias = (f64::from(qf) - f64::from(qb)) * inv_gamma;
            out.bits[x] = self.log_density(x, t) < self.log_theta_pf + bias;
        }
        out
    }

    /// Mean update: background pixels move toward the frame, foreground
    /// pixels keep their mean.
    pub fn update(&mut self, frame: &ThermalFrame, mask: &ForegroundMask) {
        let a = self.params.alpha;
        for ((m, &t), &fg) in self.mu.iter_mut().zip(frame.temps().iter()).zip(mask.bits.iter()) {
            if !fg {
                *m = a * t + (1.0 - a) * *m;
            }
        }
    }

    /// Classify, optionally refine `mrf_iterations` times, then update the
    /// model with the final mask.
    pub fn subtract(&mut self, frame: &ThermalFrame, use_mrf: bool, mrf_iterations: usize) -> ForegroundMask {
        let mut mask = self.classify(frame);
        if use_mrf {
            for _ in 0..mrf_iterations {
                let next = self.refine(frame, &mask);
                if next == mask {
                    break;
                }
                mask = next;
            }
        }
        self.update(frame, &mask);
        mask
    }
}
