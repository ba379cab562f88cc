//! Homotopy census of a set and its complement: spanning-tree holonomy per
//! component, checked against translates seen in a 4 × 4 cover window.
//!
//! cargo run --example holonomy_census

use torus_minimal::classify::classify_complement;
use torus_minimal::grid::{complement, connected_components, Adjacency, GridResolution, TorusGridSet};
use torus_minimal::homotopy::{all_holonomies, set_homotopy_census, window_holonomies};

fn main() -> torus_minimal::Result<()> {
    let n = GridResolution::new(32)?;
    // A (2,1) band, a small ring and a dot.
    let s = TorusGridSet::from_fn(n, Adjacency::EIGHT, |i, j| {
        let band = (i + 32 - (2 * j) % 32) % 32 < 2;
        let ring = (24..30).contains(&i) && (4..10).contains(&j) && !((25..29).contains(&i) && (5..9).contains(&j));
        band || ring || (i, j) == (10, 28)
    });
    for e in set_homotopy_census(&s)? {
        println!("component {}: {}", e.component, e.homotopy);
    }
    let labels = connected_components(&s);
    let tree = all_holonomies(&s, &labels);
    let window = window_holonomies(&s, 4, 2);
    println!("tree and window holonomy agree: {}", tree == window);

    let c = complement(&s);
    println!("complement components: {}", set_homotopy_census(&c)?.len());
    println!("complement shape: {:?}", classify_complement(&s)?);
    Ok(())
}
