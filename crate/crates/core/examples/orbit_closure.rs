//! Orbit closures on the grid: a totally irrational translation fills the
//! torus, a rational one closes up on a finite orbit. The minimality probe
//! measures how far sampled orbits stay from covering the set.
//!
//! cargo run --example orbit_closure

use torus_minimal::dynamics::{minimality_check, orbit_closure_raster, TorusMapSpec};
use torus_minimal::grid::GridResolution;

fn main() -> torus_minimal::Result<()> {
    let n = GridResolution::new(64)?;
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    for (name, map) in [
        ("irrational", TorusMapSpec::translation(golden, 2f64.sqrt() - 1.0)),
        ("rational 1/5", TorusMapSpec::translation(0.2, 0.4)),
    ] {
        let o = orbit_closure_raster(&map, [0.0, 0.0], n, 4096, 4, 1 << 20);
        let cert = minimality_check(&map, &o.set, 8, 20_000, 2.0 / 64.0)?;
        println!(
            "{name:<13} {} cells after {} steps (stable at {:?}); minimality {} with deficit {:.4}",
            o.set.len(),
            o.iterations,
            o.stabilized_at,
            if cert.passed { "passes" } else { "fails" },
            cert.max_deficit
        );
    }
    Ok(())
}
