//! Sound bounds around the exact distance: the sorted-spectrum lower bound
//! and the local-search upper bound, with and without a search budget.
//!
//! ```sh
//! cargo run -p lipdist --example bounds
//! ```

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lipdist::{
    exact_distance, local_search_upper_bound, spectrum_lower_bound, FiniteMetricSpace, SearchBudget,
};

fn random_space(rng: &mut impl Rng, n: usize) -> Arc<FiniteMetricSpace> {
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.gen_range(1.0..2.0);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    Arc::new(FiniteMetricSpace::new("rand", labels, matrix, None).unwrap())
}

fn main() -> lipdist::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let x = random_space(&mut rng, 7);
    let y = random_space(&mut rng, 7);

    let lower = spectrum_lower_bound(&x, &y)?;
    let (upper, _) = local_search_upper_bound(&x, &y, 8, 42)?;
    let exact = exact_distance(&x, &y, &SearchBudget::UNLIMITED);
    println!("spectrum lower bound : {lower}");
    println!("exact distance       : {}", exact.value.unwrap());
    println!("local-search upper   : {upper}");

    // a zero budget skips the tree entirely and returns the bracket alone
    let bracket = exact_distance(&x, &y, &SearchBudget::zero());
    let (lo, hi) = bracket.bracket.unwrap();
    println!("zero-budget bracket  : [{lo}, {hi}]");

    // a tiny node budget explores a bit and stays sound
    let partial = exact_distance(&x, &y, &SearchBudget::nodes(25));
    let (lo, hi) = partial.bracket.unwrap();
    println!(
        "25-node bracket      : [{lo}, {hi}] after {} nodes",
        partial.nodes_explored
    );
    Ok(())
}
