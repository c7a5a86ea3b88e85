//! Finite metric spaces, validation, and the Lipschitz cost of a bijection.
//!
//! ```sh
//! cargo run -p lipdist --example metric_basics
//! ```

use std::sync::Arc;

use lipdist::{FiniteMetricSpace, PointMap};

fn main() -> lipdist::Result<()> {
    // an equilateral triangle with unit sides
    let x = Arc::new(FiniteMetricSpace::new(
        "equilateral",
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ],
        None,
    )?);
    println!("{}: {}", x.name(), x.validate());

    // the same triangle with one side stretched to 2
    let y = Arc::new(FiniteMetricSpace::new(
        "stretched",
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 2.0],
            vec![1.0, 2.0, 0.0],
        ],
        None,
    )?);
    println!("{}: {}", y.name(), y.validate());

    // a matrix that breaks the triangle inequality is reported, not rejected
    let broken = FiniteMetricSpace::new(
        "broken",
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ],
        None,
    )?;
    println!("{}: {}", broken.name(), broken.validate());

    // any bijection between x and y stretches one pair by 2 and nothing
    // contracts, so the cost is |ln 2| + |ln 1| = ln 2
    let f = PointMap::new(Arc::clone(&x), Arc::clone(&y), vec![0, 1, 2])?;
    let report = f.lipschitz_cost();
    println!(
        "identity assignment: dil = {}, dil_inv = {}, cost = {}",
        report.dil_forward, report.dil_inverse, report.cost
    );
    println!(
        "is it a (ln 2)-isometry?   {}",
        f.is_epsilon_isometry(std::f64::consts::LN_2)?
    );
    println!(
        "is it a (ln 2 / 2)-isometry? {}",
        f.is_epsilon_isometry(0.5 * std::f64::consts::LN_2)?
    );
    Ok(())
}
