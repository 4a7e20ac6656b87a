//! Two people crossing side by side: connected components per frame and
//! the tracks they form.
//!
//! cargo run --example blob_tracking

use thermal_tripwire::config::Config;
use thermal_tripwire::detection::{extract_blobs, Tracker};
use thermal_tripwire::pipeline::run_pipeline_with;
use thermal_tripwire::synthgen::{generate, named_scenario};

fn main() -> Result<(), thermal_tripwire::Error> {
    let (rec, _) = generate(&named_scenario("two-simultaneous")?.with_seed(1))?;
    let cfg = Config::default();
    let mut tracker = Tracker::new(cfg.detection);
    let mut finished = Vec::new();
    run_pipeline_with(&rec, &cfg, |frame, mask| {
        let blobs = extract_blobs(mask, frame.index(), cfg.detection.l_min_pixels);
        if !blobs.is_empty() {
            let desc: Vec<String> = blobs
                .iter()
                .map(|b| format!("{}px @ ({:.1}, {:.1})", b.size(), b.centroid.v, b.centroid.h))
                .collect();
            println!("frame {:>3}: {}", frame.index(), desc.join("  "));
        }
        finished.extend(tracker.push_blobs(blobs));
    })?;
    finished.extend(tracker.finish());

    println!("\n{} track(s)", finished.len());
    for t in &finished {
        println!(
            "  track {}: frames {}..={}, column {:.1}",
            t.track_id,
            t.start_frame(),
            t.end_frame(),
            t.last().centroid.h
        );
    }
    Ok(())
}
