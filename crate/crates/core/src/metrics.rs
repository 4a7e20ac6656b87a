//! Count-estimate evaluation: MAE, per-person MAE and the windowed
//! count-change correct classification rate (CCR_WCC).
//!
//! CCR_WCC looks at count *changes* rather than counts. With the change
//! series `dy[i] = y[i+1] - y[i]` (0-based here; the usual 1-based `n`
//! maps to `i = n - 1`), each true change is compared against estimated
//! changes within `±w` frames:
//!
//! ```text
//! e[i]     = min_{|d| <= w, i+d in range} |dy[i] - dyhat[i+d]|
//! d[i]     = the minimising offset (smallest |d| first, then negative)
//! matched  = #{i : dy[i] != 0 and e[i] == 0}
//! N_hat    = { i + d[i] : all i }
//! M        = #{j not in N_hat : dyhat[j] != 0}
//! CCR_WCC  = matched / (#{i : dy[i] != 0 or e[i] != 0} + M)
//! ```
//!
//! Offsets that leave the series are skipped, never clamped. When there are
//! no changes anywhere the rate is defined as 1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::CountSeries;
use crate::ParamError;

pub const DEFAULT_WINDOW: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("series lengths differ: truth has {truth} frames, estimate has {estimate}")]
    LengthMismatch { truth: usize, estimate: usize },
    #[error("need at least {needed} frames, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("per-person MAE undefined: ground-truth counts sum to zero")]
    ZeroOccupancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsParams {
    pub window_w: usize,
}

impl Default for MetricsParams {
    fn default() -> Self {
        Self {
            window_w: DEFAULT_WINDOW,
        }
    }
}

impl MetricsParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        // usize already excludes negative windows.
        Ok(())
    }
}

fn check(truth: &CountSeries, est: &CountSeries, needed: usize) -> Result<(), MetricsError> {
    if truth.len() != est.len() {
        return Err(MetricsError::LengthMismatch {
            truth: truth.len(),
            estimate: est.len(),
        });
    }
    if truth.len() < needed {
        return Err(MetricsError::TooShort {
            needed,
            got: truth.len(),
        });
    }
    Ok(())
}

fn abs_error_sum(truth: &CountSeries, est: &CountSeries) -> u64 {
    truth
        .counts
        .iter()
        .zip(&est.counts)
        .map(|(y, yh)| (yh - y).unsigned_abs())
        .sum()
}

pub fn mae(truth: &CountSeries, est: &CountSeries) -> Result<f64, MetricsError> {
    check(truth, est, 1)?;
    Ok(abs_error_sum(truth, est) as f64 / truth.len() as f64)
}

/// Absolute error summed over frames, divided by the summed true count.
pub fn mae_pp(truth: &CountSeries, est: &CountSeries) -> Result<f64, MetricsError> {
    check(truth, est, 1)?;
    let occupancy: i64 = truth.counts.iter().sum();
    if occupancy == 0 {
        return Err(MetricsError::ZeroOccupancy);
    }
    Ok(abs_error_sum(truth, est) as f64 / occupancy as f64)
}

/// Per-change diagnostics behind a CCR_WCC value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CcrBreakdown {
    /// `e[i]` for every change slot.
    pub errors: Vec<u64>,
    /// Chosen offset `d[i]` for every change slot.
    pub offsets: Vec<i64>,
    /// True changes with `e == 0`.
    pub matched: usize,
    /// True changes with `e != 0`.
    pub missed: usize,
    /// Slots without a true change but with `e != 0`, plus `M`.
    pub spurious: usize,
    /// `M`: estimated changes never selected as anyone's best offset.
    pub unclaimed: usize,
}

impl CcrBreakdown {
    pub fn rate(&self) -> f64 {
        let denom = self.matched + self.missed + self.spurious;
        if denom == 0 {
            1.0
        } else {
            self.matched as f64 / denom as f64
        }
    }
}

fn diffs(counts: &[i64]) -> Vec<i64> {
    counts.windows(2).map(|p| p[1] - p[0]).collect()
}

/// Offsets in tie-break order: 0, -1, +1, -2, +2, ...
fn offsets(w: usize) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=w as i64).flat_map(|k| [-k, k]))
}

pub fn ccr_wcc_breakdown(truth: &CountSeries, est: &CountSeries, w: usize) -> Result<CcrBreakdown, MetricsError> {
    check(truth, est, 2)?;
    let dy = diffs(&truth.counts);
    let dyh = diffs(&est.counts);
    let slots = dy.len() as i64;

    let mut out = CcrBreakdown {
        errors: Vec::with_capacity(dy.len()),
        offsets: Vec::with_capacity(dy.len()),
        ..Default::default()
    };
    let mut claimed = vec![false; dy.len()];
    for (i, &change) in dy.iter().enumerate() {
        let mut best: Option<(u64, i64)> = None;
        for d in offsets(w) {
            let j = i as i64 + d;
            if !(0..slots).contains(&j) {
                continue;
            }
            let err = (change - dyh[j as usize]).unsigned_abs();
            if best.is_none_or(|(e, _)| err < e) {
                best = Some((err, d));
                if err == 0 {
                    break;
                }
            }
        }
        // Offset 0 is always in range, so `best` is set.
        let (err, d) = best.expect("offset 0 always in range");
        claimed[(i as i64 + d) as usize] = true;
        out.errors.push(err);
        out.offsets.push(d);
        match (change != 0, err == 0) {
            (true, true) => out.matched += 1,
            (true, false) => out.missed += 1,
            (false, false) => out.spurious += 1,
            (false, true) => {}
        }
    }
    out.unclaimed = dyh
        .iter()
        .zip(&claimed)
        .filter(|(&c, &taken)| c != 0 && !taken)
        .count();
    out.spurious += out.unclaimed;
    Ok(out)
}

pub fn ccr_wcc(truth: &CountSeries, est: &CountSeries, w: usize) -> Result<f64, MetricsError> {
    ccr_wcc_breakdown(truth, est, w).map(|b| b.rate())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub mae: f64,
    /// `None` when the true counts sum to zero.
    pub mae_pp: Option<f64>,
    pub ccr_wcc: f64,
    pub w: usize,
    pub n_frames: usize,
    pub matched: usize,
    pub missed: usize,
    pub spurious: usize,
}

pub fn evaluate(truth: &CountSeries, est: &CountSeries, params: MetricsParams) -> Result<MetricsReport, MetricsError> {
    let breakdown = ccr_wcc_breakdown(truth, est, params.window_w)?;
    let mae_pp = match mae_pp(truth, est) {
        Ok(v) => Some(v),
        Err(MetricsError::ZeroOccupancy) => None,
        Err(e) => return Err(e),
    };
    Ok(MetricsReport {
        mae: mae(truth, est)?,
        mae_pp,
        ccr_wcc: breakdown.rate(),
        w: params.window_w,
        n_frames: truth.len(),
        matched: breakdown.matched,
        missed: breakdown.missed,
        spurious: breakdown.spurious,
    })
}
