//! Runs the H¹ vanishing battery over nilpotent groups of order at most 16
//! and abelian coefficient groups of order at most 49.

use std::time::Instant;

use cohomoforge::theorems::{vanishing_battery, BatteryConfig};

fn main() {
    let start = Instant::now();
    let mut config = BatteryConfig::default();
    if let Some(limit) = std::env::args().nth(1) {
        config.same_prime_aut_limit = limit.parse().expect("numeric limit");
    }
    let report = vanishing_battery(&config);
    let skipped = report.rows.iter().filter(|r| r.skipped).count();
    println!(
        "pairs: {}  action classes: {}  with A^G = 0: {}  skipped same-prime pairs: {}",
        report.rows.len(),
        report.action_classes,
        report.fixed_point_free,
        skipped
    );
    for e in &report.exceptions {
        println!("exception: {e}");
    }
    println!(
        "{} in {:.1?}",
        if report.passed() { "PASS" } else { "FAIL" },
        start.elapsed()
    );
}
