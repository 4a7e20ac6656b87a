//! A room with two doors: count each stream separately and merge on the
//! shared frame clock.
//!
//! cargo run --example two_doors

use thermal_tripwire::classification::Direction;
use thermal_tripwire::config::Config;
use thermal_tripwire::pipeline::{aggregate_doors, run_pipeline};
use thermal_tripwire::synthgen::{generate, Scenario};

fn main() -> Result<(), thermal_tripwire::Error> {
    let mut front = Scenario::empty("front", 120).with_seed(1);
    front.walkers.push(front.walker(10, Direction::Up));
    front.walkers.push(front.walker(70, Direction::Up));
    let mut back = Scenario::empty("back", 120).with_seed(2);
    back.walkers.push(back.walker(40, Direction::Down));

    let cfg = Config::default();
    let mut deltas = Vec::new();
    for s in [&front, &back] {
        let (rec, _) = generate(s)?;
        let out = run_pipeline(&rec, &cfg)?;
        println!("{}: {:?}", s.name, out.deltas);
        deltas.push(out.deltas);
    }
    let counts = aggregate_doors(&deltas, cfg.initial_count, 120)?;
    let changes: Vec<(usize, i64)> = counts
        .counts
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, w)| (i + 1, w[1]))
        .collect();
    println!("room count changes: {changes:?}, final {:?}", counts.last());
    Ok(())
}
