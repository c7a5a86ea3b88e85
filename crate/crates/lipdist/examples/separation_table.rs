//! Pairwise separation tables for both families: every pair of distinct
//! members stays boundedly far apart at finite resolution while the whole
//! family sits inside one bounded ball.
//!
//! ```sh
//! cargo run -p lipdist --example separation_table
//! ```

use lipdist::io::separation_csv;
use lipdist::{
    interval_separation_experiment, pulse_separation_experiment, ExperimentConfig, Family,
};

fn main() -> lipdist::Result<()> {
    // interval family: 8 spaces of 7 points each, exact pairwise distances
    let cfg = ExperimentConfig::new(Family::Interval, 3, 2);
    let ce = interval_separation_experiment(&cfg)?;
    print!("{}", separation_csv(&ce));
    println!(
        "=> min gap {} | max value {} (bound {})\n",
        ce.min_gap.unwrap(),
        ce.max_value.unwrap(),
        lipdist::experiments::INTERVAL_MAP_COST_BOUND
    );

    // pulse family: mismatched pulse counts give infinite pairs, matched
    // ones are positively separated
    let cfg = ExperimentConfig::new(Family::Pulse, 3, 2);
    let ce2 = pulse_separation_experiment(&cfg)?;
    print!("{}", separation_csv(&ce2));
    println!(
        "=> threshold {} | min gap {} | {} infinite pairs",
        ce2.threshold,
        ce2.min_gap.unwrap(),
        ce2.infinite_pairs
    );
    Ok(())
}
