//! Full round trip through files: render a scenario, write CSVs, read
//! them back, count and score.
//!
//! cargo run --example end_to_end -- [scenario] [seed]

use thermal_tripwire::config::Config;
use thermal_tripwire::formats;
use thermal_tripwire::frames::{cumulative_counts, RecordingMeta};
use thermal_tripwire::metrics::evaluate;
use thermal_tripwire::pipeline::run_pipeline;
use thermal_tripwire::synthgen::{generate, named_scenario};

fn main() -> Result<(), thermal_tripwire::Error> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "back-to-back".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let scenario = named_scenario(&name)?.with_seed(seed);
    let (rec, ann) = generate(&scenario)?;
    let dir = tempfile::tempdir().expect("temp dir");
    let rec_path = dir.path().join("recording.csv");
    let ann_path = dir.path().join("annotations.csv");
    formats::write_recording(&rec, &rec_path)?;
    formats::write_annotations(&ann, &ann_path)?;

    let rec = formats::parse_recording(&rec_path, RecordingMeta::default())?;
    let ann = formats::parse_annotations(&ann_path, scenario.initial_count)?;
    let cfg = Config {
        initial_count: ann.initial_count,
        ..Config::default()
    };
    let out = run_pipeline(&rec, &cfg)?;
    for e in &out.events {
        println!("frame {:>3}: {}", e.end_frame, e.verdict);
    }
    let truth = cumulative_counts(&ann, rec.len())?;
    let report = evaluate(&truth, &out.counts, cfg.metrics)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
    Ok(())
}
