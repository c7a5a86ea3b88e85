//! The shrinking-interval family on the line and its block-affine maps.
//!
//! Each sign vector `u` over `{1,2}` picks, at every scale `n`, an interval
//! `[1/2^n, 1/2^n + 1/2^(n+u_n)]`; the space `X_u` is the union of those
//! intervals plus the origin. Between any two members the block-affine map
//! (same block, same relative position) has Lipschitz cost at most `2 ln 2`,
//! so the whole family sits inside one bounded ball.
//!
//! ```sh
//! cargo run -p lipdist --example interval_family
//! ```

use lipdist::{canonical_interval_map, interval_space, DiscretizationParams, SignVector};

fn main() -> lipdist::Result<()> {
    let params = DiscretizationParams::new(2, 2)?;
    let u = SignVector::interval(&[1, 1])?;
    let v = SignVector::interval(&[2, 2])?;

    let xu = interval_space(&u, &params)?;
    println!("X_{} samples:", u);
    for i in 0..xu.len() {
        println!("  {:<8} x = {}", xu.label(i), xu.coords().unwrap()[i][0]);
    }

    let f = canonical_interval_map(&u, &v, &params)?;
    let report = f.lipschitz_cost();
    println!(
        "block-affine map X_{u} -> X_{v}: dil = {}, dil_inv = {}, cost = {} (= ln 3)",
        report.dil_forward, report.dil_inverse, report.cost
    );

    // the bound holds at any resolution and for any pair of sign vectors
    let params = DiscretizationParams::new(5, 3)?;
    let mut worst: f64 = 0.0;
    for u in SignVector::enumerate_all(lipdist::Family::Interval, 5)? {
        let f = canonical_interval_map(&u, &SignVector::interval(&[1, 1, 1, 1, 1])?, &params)?;
        worst = worst.max(f.lipschitz_cost().cost);
    }
    println!(
        "worst cost against X_11111 over all 32 vectors at N=5, k=3: {worst} <= {}",
        2.0 * std::f64::consts::LN_2
    );
    Ok(())
}
