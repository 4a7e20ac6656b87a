//! Scores both detectors on every synthetic scenario over a range of seeds.
//!
//! cargo run --example synthetic_suite -- [seeds]

use thermal_tripwire::config::{Algorithm, Config};
use thermal_tripwire::frames::cumulative_counts;
use thermal_tripwire::metrics::ccr_wcc;
use thermal_tripwire::pipeline::run_pipeline;
use thermal_tripwire::synthgen::{generate, standard_suite};

fn main() -> Result<(), thermal_tripwire::Error> {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    println!("{:<18} {:>9} {:>9} {:>12}", "scenario", "baseline", "multi", "mean |jitter|");
    for scenario in standard_suite() {
        let mut score = [0.0; 2];
        let mut jitter = 0.0;
        let mut n_jitter = 0usize;
        for seed in 0..seeds {
            let s = scenario.clone().with_seed(seed);
            let (rec, ann) = generate(&s)?;
            let truth = cumulative_counts(&ann, rec.len())?;
            for (i, algorithm) in [Algorithm::Baseline, Algorithm::Multi].into_iter().enumerate() {
                let cfg = Config {
                    algorithm,
                    initial_count: ann.initial_count,
                    ..Config::default()
                };
                let out = run_pipeline(&rec, &cfg)?;
                score[i] += ccr_wcc(&truth, &out.counts, cfg.metrics.window_w)?;
                if algorithm == Algorithm::Multi && out.deltas.len() == ann.deltas().len() {
                    for (est, gt) in out.deltas.keys().zip(ann.deltas().keys()) {
                        jitter += (*est as f64 - *gt as f64).abs();
                        n_jitter += 1;
                    }
                }
            }
        }
        let n = seeds as f64;
        let jitter = if n_jitter > 0 { jitter / n_jitter as f64 } else { 0.0 };
        println!(
            "{:<18} {:>9.3} {:>9.3} {:>12.1}",
            scenario.name,
            score[0] / n,
            score[1] / n,
            jitter
        );
    }
    Ok(())
}
