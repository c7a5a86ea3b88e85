//! The pulse-curve family in the plane and its chordal metric.
//!
//! A sign vector over `{0,1}` chooses, at each scale, either a flat segment
//! or a triangular pulse. Distances are measured through the ambient plane
//! (chordal), not along the curve, which is what makes the peak and straddle
//! distances below come out as exact closed forms.
//!
//! ```sh
//! cargo run -p lipdist --example pulse_family
//! ```

use lipdist::construct::{block_left, pulse_foot_x, pulse_peak_height, pulse_peak_x};
use lipdist::{pulse_height, pulse_space, DiscretizationParams, SignVector};

fn main() -> lipdist::Result<()> {
    let u = SignVector::pulse(&[1, 0, 1])?;
    let params = DiscretizationParams::new(3, 2)?;
    let y = pulse_space(&u, &params)?;

    println!("Y_{} landmarks (k = 2 keeps breakpoints only):", u);
    for (i, c) in y.coords().unwrap().iter().enumerate() {
        println!("  {:<10} ({}, {})", y.label(i), c[0], c[1]);
    }

    // heights follow the piecewise closed form
    let n = 1;
    println!(
        "block {n}: left {} -> height {}, peak {} -> height {}, foot {} -> height {}",
        block_left(n),
        pulse_height(&u, block_left(n), 1.0)?,
        pulse_peak_x(n),
        pulse_height(&u, pulse_peak_x(n), 1.0)?,
        pulse_foot_x(n),
        pulse_height(&u, pulse_foot_x(n), 1.0)?,
    );

    // chordal geometry: the peak sits at 45 degrees above the block start
    let left = y.find_coord(block_left(1), 0.0).unwrap();
    let peak = y
        .find_coord(pulse_peak_x(1), pulse_peak_height(1, 1.0))
        .unwrap();
    println!(
        "dist(left of block 1, its peak) = {}   (sqrt 2 / 8 = {})",
        y.dist(left, peak),
        2f64.sqrt() / 8.0
    );

    // straddling a pulse's left endpoint: sqrt(5) * delta
    let fine = pulse_space(
        &SignVector::pulse(&[1, 0])?,
        &DiscretizationParams::new(2, 9)?,
    )?;
    let delta = 1.0 / 32.0;
    let a = fine.find_coord(0.5 - delta, 0.0).unwrap();
    let b = fine.find_coord(0.5 + delta, delta).unwrap();
    println!(
        "straddle distance at delta = 1/32: {}   (sqrt 5 / 32 = {})",
        fine.dist(a, b),
        5f64.sqrt() / 32.0
    );
    Ok(())
}
