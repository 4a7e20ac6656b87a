//! The three accuracy figures on small hand-made count series.
//!
//! cargo run --example metrics

use thermal_tripwire::frames::CountSeries;
use thermal_tripwire::metrics::{ccr_wcc_breakdown, evaluate, MetricsParams};

fn show(label: &str, truth: &[i64], est: &[i64], w: usize) {
    let truth = CountSeries::from(truth.to_vec());
    let est = CountSeries::from(est.to_vec());
    let report = evaluate(&truth, &est, MetricsParams { window_w: w }).expect("valid series");
    let b = ccr_wcc_breakdown(&truth, &est, w).expect("valid series");
    let mae_pp = report.mae_pp.map_or("n/a".to_string(), |v| format!("{v:.3}"));
    println!(
        "{label:<22} w={w:<2} mae={:.3} mae_pp={mae_pp} ccr={:.3} offsets={:?}",
        report.mae, report.ccr_wcc, b.offsets
    );
}

fn main() {
    let truth = [0, 0, 0, 1, 1, 1, 1, 2, 2, 2];
    show("exact", &truth, &truth, 2);
    show("late by one", &truth, &[0, 0, 0, 0, 1, 1, 1, 1, 2, 2], 2);
    show("late by one, w=0", &truth, &[0, 0, 0, 0, 1, 1, 1, 1, 2, 2], 0);
    show("missed second", &truth, &[0, 0, 0, 1, 1, 1, 1, 1, 1, 1], 2);
    show("spurious blip", &[0; 8], &[0, 0, 1, 0, 0, 0, 0, 0], 2);
}
