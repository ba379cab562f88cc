//! A horizontal circle under an irrational horizontal translation: type 2
//! with a rational (zero) vertical rotation number, so the set is the orbit
//! of a periodic circloid.
//!
//! cargo run --example invariant_circle

use torus_minimal::classify::{classify_minimal_set, ClassifyParams};
use torus_minimal::dynamics::TorusMapSpec;
use torus_minimal::grid::{Adjacency, GridResolution, TorusGridSet};

fn main() -> torus_minimal::Result<()> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let map = TorusMapSpec::translation(golden, 0.0);
    let m = TorusGridSet::from_fn(GridResolution::new(256)?, Adjacency::EIGHT, |_, j| j == 0);
    let report = classify_minimal_set(&map, &m, &ClassifyParams::default(), None)?;
    println!("class: {}", report.class);
    let rot = report.rotation.as_ref().expect("type 2 carries rotation evidence");
    if let Some(o) = &rot.orthogonal {
        println!(
            "orthogonal rotation along {:?}: {:.9} -> {}",
            o.vector, o.value, o.rational_verdict
        );
    }
    println!(
        "circloid boundary orbit covers the set within {:?} cells",
        rot.circloid_coverage
    );
    if let Some(c) = &report.circloid {
        println!("circloid body: {} cells", c.len());
    }
    Ok(())
}
