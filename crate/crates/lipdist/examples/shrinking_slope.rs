//! Flattening the pulses: as the slope shrinks, the projection onto the
//! base segment costs arbitrarily little, so copies of the whole family
//! live inside every neighborhood of the segment.
//!
//! ```sh
//! cargo run -p lipdist --example shrinking_slope
//! ```

use lipdist::{shrinking_slope_experiment, DiscretizationParams, Family, SignVector};

fn main() -> lipdist::Result<()> {
    let u = SignVector::parse(Family::Pulse, "101")?;
    let params = DiscretizationParams::new(3, 3)?;
    let eps = [1.0, 0.5, 0.25, 0.125, 0.0625];
    let result = shrinking_slope_experiment(&u, &eps, &params)?;

    println!("projection cost of Y^eps_{} by slope:", result.u);
    println!(
        "{:>8}  {:>22}  {:>22}",
        "eps", "cost", "bound ln(1+eps^2)/2"
    );
    for row in &result.rows {
        println!("{:>8}  {:>22}  {:>22}", row.eps, row.cost, row.bound);
    }
    println!("costs decrease strictly; pick eps small enough and the family fits any ball");
    Ok(())
}
