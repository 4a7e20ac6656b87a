//! Background subtraction on a synthetic walk-through: plain Gaussian test
//! versus the neighbourhood-refined mask, plus where the flip happens.
//!
//! cargo run --example background_subtraction

use thermal_tripwire::background::{BackgroundModel, BackgroundParams};
use thermal_tripwire::synthgen::{generate, named_scenario};

fn main() -> Result<(), thermal_tripwire::Error> {
    let params = BackgroundParams::default();
    if let Some(d) = params.flip_deviation() {
        println!("a pixel flips to foreground once |T - mu| > {d:.4} C");
    }

    let (rec, _) = generate(&named_scenario("single-entry")?.with_seed(7))?;
    let mut model = BackgroundModel::init(&rec.frames()[0], params)?;
    println!("{:>5} {:>8} {:>8}", "frame", "gauss", "mrf");
    for frame in rec.frames().iter().step_by(4) {
        let plain = model.classify(frame);
        let refined = model.subtract(frame, true, 1);
        println!("{:>5} {:>8} {:>8}", frame.index(), plain.count(), refined.count());
    }

    // Draw the mask at the busiest frame.
    let mut model = BackgroundModel::init(&rec.frames()[0], params)?;
    let mut best = (0, model.classify(&rec.frames()[0]));
    for frame in rec.frames() {
        let m = model.subtract(frame, true, 1);
        if m.count() > best.1.count() {
            best = (frame.index(), m);
        }
    }
    println!("\nmask at frame {}:\n{:?}", best.0, best.1);
    Ok(())
}
