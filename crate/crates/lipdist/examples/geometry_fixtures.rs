//! Closed-form geometric quantities recomputed from constructed spaces:
//! the sqrt(5)-straddle, the sqrt(2)-peak distance, and the (5/2)-block
//! displacement, each at scales 1 through 3.
//!
//! ```sh
//! cargo run -p lipdist --example geometry_fixtures
//! ```

use lipdist::geometry_fixture_suite;

fn main() {
    let report = geometry_fixture_suite();
    println!(
        "{:<14} {:>3} {:>24} {:>24} {:>10}",
        "fixture", "n", "expected", "actual", "status"
    );
    for c in &report.checks {
        println!(
            "{:<14} {:>3} {:>24} {:>24} {:>10}",
            c.name,
            c.scale,
            c.expected,
            c.actual,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    println!(
        "all {} fixtures within relative {}: {}",
        report.checks.len(),
        report.tolerance,
        report.all_pass()
    );
}
