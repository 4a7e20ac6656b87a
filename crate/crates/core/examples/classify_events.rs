//! Midline crossing rules on hand-written centroid traces.
//!
//! cargo run --example classify_events

use thermal_tripwire::classification::{classify, crossings, CentroidTrace};
use thermal_tripwire::frames::EntryDirection;

fn main() {
    let cases: [(&str, &[f64]); 5] = [
        ("walk in", &[22.0, 18.0, 14.0, 10.0, 6.0, 2.0]),
        ("walk out", &[1.0, 6.0, 11.0, 16.0, 21.0]),
        ("peek and retreat", &[22.0, 16.0, 10.0, 9.0, 15.0, 22.0]),
        ("never crosses", &[20.0, 17.0, 14.0, 17.0]),
        ("dither then enter", &[14.0, 10.0, 13.0, 9.0, 5.0]),
    ];
    for (name, rows) in cases {
        let trace = CentroidTrace::from_rows(0, rows);
        let cross: Vec<String> = crossings(&trace)
            .iter()
            .map(|(f, d)| format!("{d:?}@{f}"))
            .collect();
        println!(
            "{:<18} crossings [{}] -> {} (inside-is-bottom: {})",
            name,
            cross.join(", "),
            classify(&trace, EntryDirection::InsideIsTop),
            classify(&trace, EntryDirection::InsideIsBottom),
        );
    }
}
