//! Invariant checks shared by the `properties` and `acceptance` targets.
//!
//! Every check drives a proptest runner with a fixed ChaCha seed, so both
//! targets see the same cases on every run.
#![allow(dead_code)]

use std::cell::Cell;
use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, RngAlgorithm, TestRng, TestRunner};

use thermal_tripwire::background::{BackgroundModel, BackgroundParams, ForegroundMask};
use thermal_tripwire::classification::{classify, crossings, CentroidTrace, Direction, Verdict, MIDLINE};
use thermal_tripwire::config::{Algorithm, Config};
use thermal_tripwire::detection::{baseline_segment, extract_blobs, step_tracks};
use thermal_tripwire::formats;
use thermal_tripwire::frames::{
    cumulative_counts, merge_deltas, AnnotationTrack, CountSeries, DeltaMap, EntryDirection,
    Recording, RecordingMeta, ThermalFrame, COLS, PIXELS, ROWS,
};
use thermal_tripwire::metrics::{ccr_wcc, mae, mae_pp};
use thermal_tripwire::pipeline::{run_pipeline, run_pipeline_with};
use thermal_tripwire::synthgen::{generate, named_scenario, Scenario};

/// `Ok(note)` on success; the note is empty unless the check is a diagnostic.
pub type Check = fn() -> Result<String, String>;

pub const PROPERTIES: &[(&str, Check)] = &[
    ("formats: recording round trip", recording_round_trip),
    ("formats: annotations round trip", annotations_round_trip),
    ("formats: counts round trip", counts_round_trip),
    ("formats: cumulative counts monotone in deltas", cumulative_monotone),
    ("formats: cumulative counts length", cumulative_length),
    ("background: decision monotonicity", decision_monotonicity),
    ("background: MRF agrees with RGA when Q_F == Q_B", mrf_agrees_when_balanced),
    ("background: foreground freeze", foreground_freeze),
    ("background: log-domain MRF threshold stays finite", log_domain_no_overflow),
    ("background: deterministic mask stream", deterministic_masks),
    ("detection: blobs disjoint and complete", blobs_disjoint_and_complete),
    ("detection: step conservation", step_conservation),
    ("detection: baseline events never touch", baseline_events_separated),
    ("detection: deterministic tracks", deterministic_tracks),
    ("classification: mirror antisymmetry", mirror_antisymmetry),
    ("classification: crossing parity", crossing_parity),
    ("classification: deltas sum to net count change", deltas_sum_to_net_change),
    ("metrics: mae_pp identity", mae_pp_identity),
    ("metrics: ccr(truth, truth) == 1", ccr_self_is_one),
    ("metrics: shift tolerance", ccr_shift_tolerance),
    ("metrics: monotonicity in w (diagnostic)", ccr_monotone_in_w),
    ("synthgen: deterministic, body footprint in range", synthgen_footprint),
    ("cli: config text round trip", config_round_trip),
    ("cli: baseline 1 vs multi 2 on two-simultaneous", baseline_vs_multi),
];

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        RunnerConfig {
            cases,
            failure_persistence: None,
            ..RunnerConfig::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<String, String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    runner(cases)
        .run(&strategy, test)
        .map(|()| String::new())
        .map_err(|e| e.to_string())
}

// ---- oracles and strategies -------------------------------------------

/// Breadth-first 8-connected components of at least `l_min` pixels, each
/// sorted ascending; the list is sorted too.
pub fn flood_fill_components(mask: &[bool], l_min: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; PIXELS];
    let mut out = Vec::new();
    for start in 0..PIXELS {
        if !mask[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![];
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            comp.push(p);
            let (r, c) = (p / COLS, p % COLS);
            for dr in -1i64..=1 {
                for dc in -1i64..=1 {
                    let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                    if nr < 0 || nc < 0 || nr >= ROWS as i64 || nc >= COLS as i64 {
                        continue;
                    }
                    let q = nr as usize * COLS + nc as usize;
                    if mask[q] && !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        if comp.len() >= l_min {
            comp.sort_unstable();
            out.push(comp);
        }
    }
    out.sort();
    out
}

pub fn mask_bits() -> impl Strategy<Value = Vec<bool>> {
    (0.02f64..0.75).prop_flat_map(|p| prop::collection::vec(prop::bool::weighted(p), PIXELS))
}

fn temps_near(centre: f64, spread: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(centre - spread..centre + spread, PIXELS)
}

fn frame(index: usize, temps: &[f64]) -> ThermalFrame {
    ThermalFrame::new(index, temps).expect("temperatures in band")
}

fn series(counts: Vec<i64>) -> CountSeries {
    CountSeries::from(counts)
}

/// Random walk of counts; about one frame in five changes.
fn count_walk(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -2i64..=2], 2..=max_len).prop_map(|steps| {
        let mut c = 0;
        steps
            .into_iter()
            .map(|s| {
                c += s;
                c
            })
            .collect()
    })
}

fn nonzero_delta() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

/// A small scenario of up to three walkers with random directions.
fn random_scenario() -> impl Strategy<Value = Scenario> {
    let walker = (0usize..60, any::<bool>(), 0usize..3);
    (any::<u64>(), prop::collection::vec(walker, 0..=3), 0u32..3).prop_map(|(seed, walkers, initial)| {
        let mut s = Scenario::empty("random", 100).with_seed(seed);
        s.initial_count = initial;
        for (start, up, lane) in walkers {
            let dir = if up { Direction::Up } else { Direction::Down };
            let column = [7.5, 15.5, 23.5][lane];
            s.walkers.push(s.walker(start, dir).at_column(column));
        }
        s
    })
}

// ---- formats -----------------------------------------------------------

pub fn recording_round_trip() -> Result<String, String> {
    let temp = prop_oneof![-20.0f64..=120.0, Just(22.0625), Just(-20.0), Just(120.0), Just(0.1 + 0.2)];
    let frames = prop::collection::vec(prop::collection::vec(temp, PIXELS), 0..4);
    run(32, frames, |frames| {
        let frames: Vec<ThermalFrame> = frames.iter().enumerate().map(|(i, t)| frame(i, t)).collect();
        let rec = Recording::new(frames, RecordingMeta::default()).unwrap();
        let mut buf = Vec::new();
        formats::write_recording_to(&rec, &mut buf).unwrap();
        let back = formats::read_recording(buf.as_slice(), RecordingMeta::default()).unwrap();
        prop_assert_eq!(back.len(), rec.len());
        for (a, b) in rec.frames().iter().zip(back.frames()) {
            prop_assert_eq!(a.index(), b.index());
            let bits_a: Vec<u64> = a.temps().iter().map(|t| t.to_bits()).collect();
            let bits_b: Vec<u64> = b.temps().iter().map(|t| t.to_bits()).collect();
            prop_assert_eq!(bits_a, bits_b);
        }
        Ok(())
    })
}

pub fn annotations_round_trip() -> Result<String, String> {
    let deltas = prop::collection::btree_map(0usize..10_000, nonzero_delta(), 0..30);
    run(256, (deltas, 0u32..50), |(deltas, initial)| {
        let mut buf = Vec::new();
        formats::write_annotations_to(&deltas, &mut buf).unwrap();
        let back = formats::read_annotations(buf.as_slice(), initial).unwrap();
        prop_assert_eq!(back.deltas(), &deltas);
        prop_assert_eq!(back.initial_count, initial);
        Ok(())
    })
}

pub fn counts_round_trip() -> Result<String, String> {
    run(256, prop::collection::vec(-1000i64..1000, 0..60), |counts| {
        let s = series(counts);
        let mut buf = Vec::new();
        formats::write_counts_to(&s, &mut buf).unwrap();
        prop_assert_eq!(formats::read_counts(buf.as_slice()).unwrap(), s);
        Ok(())
    })
}

pub fn cumulative_monotone() -> Result<String, String> {
    let input = (1usize..80).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::btree_map(0..n, nonzero_delta(), 0..10),
            0..n,
            0u32..5,
        )
    });
    run(256, input, |(n, deltas, k, initial)| {
        let base = cumulative_counts(&AnnotationTrack::new(deltas.clone(), initial).unwrap(), n).unwrap();
        let mut bumped = deltas;
        merge_deltas(&mut bumped, &DeltaMap::from([(k, 1)]));
        let after = cumulative_counts(&AnnotationTrack::new(bumped, initial).unwrap(), n).unwrap();
        for i in 0..n {
            let expect = base.counts[i] + i64::from(i >= k);
            prop_assert_eq!(after.counts[i], expect, "frame {}", i);
        }
        Ok(())
    })
}

pub fn cumulative_length() -> Result<String, String> {
    let deltas = prop::collection::btree_map(0usize..200, nonzero_delta(), 0..10);
    run(256, (deltas, 0usize..50), |(deltas, extra)| {
        let n = deltas.keys().next_back().map_or(0, |k| k + 1) + extra;
        let ann = AnnotationTrack::new(deltas, 0).unwrap();
        prop_assert_eq!(cumulative_counts(&ann, n).unwrap().len(), n);
        Ok(())
    })
}

// ---- background --------------------------------------------------------

pub fn decision_monotonicity() -> Result<String, String> {
    let input = (0.0f64..40.0, 0.0f64..10.0, 0.0f64..10.0, any::<bool>());
    run(2048, input, |(mu, a, b, below)| {
        let (near, far) = if a <= b { (a, b) } else { (b, a) };
        let sign = if below { -1.0 } else { 1.0 };
        let model = BackgroundModel::init(&ThermalFrame::uniform(0, mu).unwrap(), BackgroundParams::default()).unwrap();
        let fg_near = model.classify(&ThermalFrame::uniform(1, mu + sign * near).unwrap()).get(0);
        let fg_far = model.classify(&ThermalFrame::uniform(1, mu + sign * far).unwrap()).get(0);
        prop_assert!(!fg_near || fg_far, "foreground at {} but background at {}", near, far);
        Ok(())
    })
}

pub fn mrf_agrees_when_balanced() -> Result<String, String> {
    run(64, (temps_near(22.0, 3.0), temps_near(22.0, 3.0)), |(mu, temps)| {
        let model = BackgroundModel::init(&frame(0, &mu), BackgroundParams::default()).unwrap();
        let f = frame(1, &temps);
        let initial = model.classify(&f);
        let refined = model.refine(&f, &initial);
        for x in 0..PIXELS {
            let (qf, qb) = initial.neighbour_counts(x);
            if qf == qb {
                prop_assert_eq!(refined.get(x), initial.get(x), "pixel {}", x);
            }
        }
        Ok(())
    })
}

pub fn foreground_freeze() -> Result<String, String> {
    let input = (temps_near(22.0, 5.0), temps_near(22.0, 5.0), mask_bits(), 0.001f64..0.999);
    run(64, input, |(mu, temps, bits, alpha)| {
        let params = BackgroundParams {
            alpha,
            ..BackgroundParams::default()
        };
        let mut model = BackgroundModel::init(&frame(0, &mu), params).unwrap();
        let before = *model.mu();
        let mask = ForegroundMask::from_slice(&bits);
        model.update(&frame(1, &temps), &mask);
        for x in 0..PIXELS {
            if bits[x] {
                prop_assert_eq!(model.mu()[x].to_bits(), before[x].to_bits());
            } else {
                prop_assert_eq!(model.mu()[x], alpha * temps[x] + (1.0 - alpha) * before[x]);
            }
        }
        Ok(())
    })
}

pub fn log_domain_no_overflow() -> Result<String, String> {
    // With gamma = 0.01 and Q_F - Q_B = 8 the linear-domain threshold would
    // be theta * e^800, which overflows.
    let input = (0.01f64..1.0, mask_bits(), -20.0f64..=120.0, 0.0f64..40.0);
    run(64, input, |(gamma, bits, t, mu)| {
        let params = BackgroundParams {
            gamma,
            ..BackgroundParams::default()
        };
        let model = BackgroundModel::init(&ThermalFrame::uniform(0, mu).unwrap(), params).unwrap();
        let f = ThermalFrame::uniform(1, t).unwrap();
        prop_assert!(model.log_density(0, t).is_finite());
        let initial = ForegroundMask::from_slice(&bits);
        let refined = model.refine(&f, &initial);
        // More foreground neighbours never turn a pixel back to background.
        let log_f = model.log_density(0, t);
        for x in 0..PIXELS {
            let (qf, qb) = initial.neighbour_counts(x);
            let threshold = params.theta_pf.ln() + (f64::from(qf) - f64::from(qb)) / gamma;
            prop_assert!(threshold.is_finite());
            prop_assert_eq!(refined.get(x), log_f < threshold, "pixel {}", x);
        }
        let all_fg = model.refine(&f, &ForegroundMask::from_slice(&[true; PIXELS]));
        for x in refined.foreground() {
            prop_assert!(all_fg.get(x));
        }
        Ok(())
    })
}

fn masks_of(rec: &Recording, cfg: &Config) -> (Vec<ForegroundMask>, thermal_tripwire::pipeline::PipelineOutput) {
    let mut masks = Vec::new();
    let out = run_pipeline_with(rec, cfg, |_, m| masks.push(m.clone())).unwrap();
    (masks, out)
}

pub fn deterministic_masks() -> Result<String, String> {
    run(6, random_scenario(), |s| {
        let (rec, _) = generate(&s).unwrap();
        let cfg = Config::default();
        prop_assert_eq!(masks_of(&rec, &cfg).0, masks_of(&rec, &cfg).0);
        Ok(())
    })
}

// ---- detection ---------------------------------------------------------

pub fn blobs_disjoint_and_complete() -> Result<String, String> {
    let l = prop_oneof![Just(1usize), Just(10), Just(100), 1usize..200];
    run(256, (mask_bits(), l), |(bits, l_min)| {
        let blobs = extract_blobs(&ForegroundMask::from_slice(&bits), 0, l_min);
        let mut union = BTreeSet::new();
        for b in &blobs {
            prop_assert!(b.size() >= l_min);
            for &p in &b.pixels {
                prop_assert!(union.insert(p), "pixel {} in two blobs", p);
            }
        }
        let expected: BTreeSet<usize> = flood_fill_components(&bits, l_min).into_iter().flatten().collect();
        prop_assert_eq!(union, expected);
        Ok(())
    })
}

pub fn step_conservation() -> Result<String, String> {
    let dist = prop_oneof![Just(f64::INFINITY), 0.0f64..30.0];
    run(256, (mask_bits(), mask_bits(), 1usize..40, dist), |(a, b, l_min, dist)| {
        let mut next_id = 0;
        let first = extract_blobs(&ForegroundMask::from_slice(&a), 0, l_min);
        let open = step_tracks(Vec::new(), first, dist, &mut next_id).born;
        let current = extract_blobs(&ForegroundMask::from_slice(&b), 1, l_min);
        let (n_open, n_current) = (open.len(), current.len());
        let out = step_tracks(open, current, dist, &mut next_id);
        prop_assert_eq!(out.grown.len() + out.terminated.len(), n_open);
        prop_assert_eq!(out.grown.len() + out.born.len(), n_current);
        Ok(())
    })
}

pub fn baseline_events_separated() -> Result<String, String> {
    // Frames are empty or carry a random count of foreground pixels.
    let one = prop_oneof![2 => Just(0usize), 3 => 1usize..300];
    run(256, (prop::collection::vec(one, 0..60), 1usize..200), |(sizes, k)| {
        let masks: Vec<ForegroundMask> = sizes
            .iter()
            .map(|&n| {
                let mut bits = [false; PIXELS];
                bits[..n].iter_mut().for_each(|b| *b = true);
                ForegroundMask::from_bits(bits)
            })
            .collect();
        let events = baseline_segment(&masks, k);
        for pair in events.windows(2) {
            prop_assert!(pair[1].start_frame > pair[0].end_frame + 1);
        }
        for e in &events {
            prop_assert!(e.peak_pixels() >= k);
            prop_assert!((e.start_frame..=e.end_frame).all(|n| sizes[n] > 0));
            prop_assert!(e.start_frame == 0 || sizes[e.start_frame - 1] == 0);
            prop_assert!(e.end_frame + 1 == sizes.len() || sizes[e.end_frame + 1] == 0);
        }
        Ok(())
    })
}

pub fn deterministic_tracks() -> Result<String, String> {
    run(6, random_scenario(), |s| {
        let (rec, _) = generate(&s).unwrap();
        let cfg = Config::default();
        let a = run_pipeline(&rec, &cfg).unwrap();
        let b = run_pipeline(&rec, &cfg).unwrap();
        prop_assert_eq!(a, b);
        Ok(())
    })
}

// ---- classification ----------------------------------------------------

fn row() -> impl Strategy<Value = f64> {
    prop_oneof![4 => 0.0f64..=23.0, 1 => Just(MIDLINE), 1 => Just(11.0), 1 => Just(12.0)]
}

fn off_line_row() -> impl Strategy<Value = f64> {
    (0.0f64..=23.0).prop_filter("off the midline", |v| *v != MIDLINE)
}

pub fn mirror_antisymmetry() -> Result<String, String> {
    let inside = prop_oneof![Just(EntryDirection::InsideIsTop), Just(EntryDirection::InsideIsBottom)];
    run(2048, (prop::collection::vec(row(), 1..30), inside), |(rows, inside)| {
        let trace = CentroidTrace::from_rows(0, &rows);
        let mirrored = trace.flipped();
        let v = classify(&trace, inside);
        prop_assert_eq!(classify(&trace, inside), v);
        prop_assert_eq!(classify(&mirrored, inside.flipped()), v);
        let swapped = match v {
            Verdict::Entry => Verdict::Exit,
            Verdict::Exit => Verdict::Entry,
            Verdict::Lingering => Verdict::Lingering,
        };
        prop_assert_eq!(classify(&mirrored, inside), swapped);
        Ok(())
    })
}

pub fn crossing_parity() -> Result<String, String> {
    let rows = (off_line_row(), prop::collection::vec(row(), 0..30), off_line_row());
    run(2048, rows, |(first, middle, last)| {
        let mut all = vec![first];
        all.extend(middle);
        all.push(last);
        let n = crossings(&CentroidTrace::from_rows(0, &all)).len();
        let same_half = (first < MIDLINE) == (last < MIDLINE);
        prop_assert_eq!(n.is_multiple_of(2), same_half, "{} crossings", n);
        Ok(())
    })
}

pub fn deltas_sum_to_net_change() -> Result<String, String> {
    let algorithm = prop_oneof![Just(Algorithm::Baseline), Just(Algorithm::Multi)];
    run(12, (random_scenario(), algorithm), |(s, algorithm)| {
        let (rec, _) = generate(&s).unwrap();
        let cfg = Config {
            algorithm,
            initial_count: s.initial_count,
            ..Config::default()
        };
        let out = run_pipeline(&rec, &cfg).unwrap();
        let sum: i64 = out.deltas.values().sum();
        let net = out.counts.last().unwrap() - i64::from(s.initial_count);
        prop_assert_eq!(sum, net);
        Ok(())
    })
}

// ---- metrics -----------------------------------------------------------

pub fn mae_pp_identity() -> Result<String, String> {
    let pair = (2usize..60).prop_flat_map(|n| {
        (
            prop::collection::vec(0i64..20, n).prop_filter("occupied", |v| v.iter().sum::<i64>() > 0),
            prop::collection::vec(-5i64..25, n),
        )
    });
    run(1024, pair, |(truth, est)| {
        let total: i64 = truth.iter().sum();
        let n = truth.len() as f64;
        let (t, e) = (series(truth), series(est));
        let direct = mae(&t, &e).unwrap() * n / total as f64;
        let got = mae_pp(&t, &e).unwrap();
        prop_assert!((got - direct).abs() <= 1e-12 * direct.abs().max(1.0), "{} vs {}", got, direct);
        Ok(())
    })
}

pub fn ccr_self_is_one() -> Result<String, String> {
    run(1024, (count_walk(60), 0usize..20), |(truth, w)| {
        let t = series(truth);
        prop_assert_eq!(ccr_wcc(&t, &t, w).unwrap(), 1.0);
        Ok(())
    })
}

/// Sparse changes at least `2w + 2` slots apart and `w + 1` from either end,
/// plus a shift `s` with `|s| <= w`.
fn shifted_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, usize, i64)> {
    (0usize..6).prop_flat_map(|w| {
        let gaps = prop::collection::vec((0usize..6, nonzero_delta()), 0..5);
        (Just(w), gaps, 0usize..5, -(w as i64)..=(w as i64))
    })
    .prop_map(|(w, changes, tail, s)| {
        let mut slots = Vec::new();
        let mut pos = w + 1;
        for (gap, d) in changes {
            pos += gap;
            slots.push((pos, d));
            pos += 2 * w + 2;
        }
        let n = pos + w + 1 + tail;
        let build = |shift: i64| {
            let mut steps = vec![0i64; n];
            for &(slot, d) in &slots {
                steps[(slot as i64 + shift) as usize + 1] += d;
            }
            let mut c = 0;
            steps
                .into_iter()
                .map(|d| {
                    c += d;
                    c
                })
                .collect::<Vec<i64>>()
        };
        (build(0), build(s), w, s)
    })
}

pub fn ccr_shift_tolerance() -> Result<String, String> {
    run(1024, shifted_pair(), |(truth, est, w, s)| {
        let got = ccr_wcc(&series(truth), &series(est), w).unwrap();
        prop_assert_eq!(got, 1.0, "w={} s={}", w, s);
        Ok(())
    })
}

pub fn ccr_monotone_in_w() -> Result<String, String> {
    let pair = (2usize..=50).prop_flat_map(|n| (count_walk(n), count_walk(n)));
    let decreases = Cell::new(0usize);
    let checked = Cell::new(0usize);
    run(1000, pair, |(a, b)| {
        let n = a.len().min(b.len());
        if n < 2 {
            return Ok(());
        }
        let (t, e) = (series(a[..n].to_vec()), series(b[..n].to_vec()));
        for w in 0..8 {
            checked.set(checked.get() + 1);
            if ccr_wcc(&t, &e, w + 1).unwrap() < ccr_wcc(&t, &e, w).unwrap() {
                decreases.set(decreases.get() + 1);
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "diagnostic: {} of {} w -> w+1 steps decrease",
        decreases.get(),
        checked.get()
    ))
}

// ---- synthgen ----------------------------------------------------------

pub fn synthgen_footprint() -> Result<String, String> {
    run(16, (any::<u64>(), 0usize..30), |(seed, start)| {
        let mut s = Scenario::empty("footprint", 80).with_seed(seed);
        let walker = s.walker(start, Direction::Up);
        let mid = start + walker.duration() / 2;
        s.walkers.push(walker);
        let warmth = s.warmth_at(mid);
        let area = warmth.iter().filter(|&&w| w > 3.0 * s.noise_std).count();
        prop_assert!((100..=300).contains(&area), "area {}", area);
        let (a, ann_a) = generate(&s).unwrap();
        let (b, ann_b) = generate(&s).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(ann_a, ann_b);
        Ok(())
    })
}

// ---- cli ---------------------------------------------------------------

fn random_config() -> impl Strategy<Value = Config> {
    (
        (0.01f64..0.2, 0.2f64..1.0, 0.005f64..0.05, 0.005f64..0.05, 0.05f64..1.0),
        any::<bool>(),
        1usize..4,
        1usize..4,
        (50usize..150, 50usize..150, prop_oneof![Just(f64::INFINITY), 2.0f64..20.0]),
        (0usize..20, any::<bool>(), any::<bool>(), 0u32..3),
    )
        .prop_map(|(bg, use_mrf, mrf_iterations, warmup_frames, det, rest)| {
            let mut cfg = Config::default();
            (
                cfg.background.alpha,
                cfg.background.sigma,
                cfg.background.eta,
                cfg.background.theta_pf,
                cfg.background.gamma,
            ) = bg;
            cfg.use_mrf = use_mrf;
            cfg.mrf_iterations = mrf_iterations;
            cfg.warmup_frames = warmup_frames;
            (cfg.detection.k_min_pixels, cfg.detection.l_min_pixels, cfg.detection.max_assoc_dist) = det;
            cfg.metrics.window_w = rest.0;
            cfg.algorithm = if rest.1 { Algorithm::Multi } else { Algorithm::Baseline };
            cfg.entry_direction = if rest.2 {
                EntryDirection::InsideIsTop
            } else {
                EntryDirection::InsideIsBottom
            };
            cfg.initial_count = rest.3;
            cfg
        })
}

pub fn config_round_trip() -> Result<String, String> {
    let (rec, _) = generate(&named_scenario("back-to-back").unwrap().with_seed(5)).unwrap();
    run(16, random_config(), |cfg| {
        let back = Config::from_text(&cfg.to_text()).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(run_pipeline(&rec, &back).unwrap(), run_pipeline(&rec, &cfg).unwrap());
        Ok(())
    })
}

pub fn baseline_vs_multi() -> Result<String, String> {
    run(8, any::<u64>(), |seed| {
        let (rec, _) = generate(&named_scenario("two-simultaneous").unwrap().with_seed(seed)).unwrap();
        let last = |algorithm| {
            let cfg = Config {
                algorithm,
                ..Config::default()
            };
            run_pipeline(&rec, &cfg).unwrap().counts.last().unwrap()
        };
        prop_assert_eq!(last(Algorithm::Baseline), 1);
        prop_assert_eq!(last(Algorithm::Multi), 2);
        Ok(())
    })
}
