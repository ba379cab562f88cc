//! The fixed point of the cat map is a type 3 minimal set: its complement is
//! doubly essential and the quotient ladder sees one class mapped to itself.
//!
//! cargo run --example anosov_fixed_point

use torus_minimal::classify::{classify_minimal_set, ClassifyParams};
use torus_minimal::dynamics::TorusMapSpec;
use torus_minimal::grid::{Adjacency, GridResolution, TorusGridSet};
use torus_minimal::lattice::Mat2;

fn main() -> torus_minimal::Result<()> {
    let cat = TorusMapSpec::linear_toral(Mat2::new(2, 1, 1, 1), 0.0, 0.0)?;
    let n = GridResolution::new(256)?;
    let m = TorusGridSet::from_cells(n, Adjacency::EIGHT, [(0, 0)]);
    let params = ClassifyParams {
        nonwandering: true,
        ..ClassifyParams::default()
    };
    let report = classify_minimal_set(&cat, &m, &params, None)?;
    println!("class: {}", report.class);
    if let Some(ladder) = &report.quotient_ladder {
        for r in &ladder.rungs {
            println!("  n={:<4} set classes {}  cycle {:?}", r.n, r.m_classes, r.cycle);
        }
    }
    for c in &report.caveats {
        println!("  caveat: {c}");
    }
    Ok(())
}
