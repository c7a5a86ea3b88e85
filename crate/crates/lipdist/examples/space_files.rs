//! Space and map files: saving, loading, and the bit-exact round trip.
//!
//! ```sh
//! cargo run -p lipdist --example space_files
//! ```

use lipdist::io::{MapFile, SpaceFile};
use lipdist::{canonical_interval_map, pulse_space, DiscretizationParams, Family, SignVector};

fn main() -> lipdist::Result<()> {
    let u = SignVector::parse(Family::Pulse, "10")?;
    let params = DiscretizationParams::new(2, 2)?;
    let space = pulse_space(&u, &params)?;

    let file = SpaceFile::from_space(&space);
    let text = file.to_json_string();
    println!("{text}");

    let reloaded = SpaceFile::parse_json(&text)?.into_space()?;
    println!(
        "round trip keeps every distance bit: {}",
        space.dist_matrix() == reloaded.dist_matrix()
    );
    println!(
        "provenance survives: {:?}\n",
        reloaded.provenance().unwrap()
    );

    // map files record a bijection between two named spaces
    let a = SignVector::interval(&[1, 1])?;
    let b = SignVector::interval(&[2, 2])?;
    let map = canonical_interval_map(&a, &b, &params)?;
    let map_file = MapFile::from_map(&map);
    println!("{}", map_file.to_json_string());
    Ok(())
}
