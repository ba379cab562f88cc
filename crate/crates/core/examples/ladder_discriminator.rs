//! The resolution ladder tells a periodic orbit of classes from a Cantor set
//! of them: a period-3 orbit keeps three classes cycling, the synthetic
//! Cantor cross-section multiplies its classes by four per rung.
//!
//! cargo run --example ladder_discriminator

use torus_minimal::classify::{cantor_cross_section, periodic_vs_cantor};
use torus_minimal::dynamics::{orbit_closure_raster, TorusMapSpec};
use torus_minimal::grid::GridResolution;

fn main() -> torus_minimal::Result<()> {
    let ladder = [
        GridResolution::new(64)?,
        GridResolution::new(128)?,
        GridResolution::new(256)?,
    ];

    let t = TorusMapSpec::translation(1.0 / 3.0, 0.0);
    let orbit = |r: GridResolution| Ok(orbit_closure_raster(&t, [0.0, 0.0], r, 64, 4, 10_000).set);
    let ev = periodic_vs_cantor(&t, &orbit, &ladder)?;
    for r in &ev.rungs {
        println!("period 3  n={:<4} classes {:<3} cycle {:?}", r.n, r.m_classes, r.cycle);
    }
    println!("verdict: {:?}", ev.verdict);

    let id = TorusMapSpec::translation(0.0, 0.0);
    let ev = periodic_vs_cantor(&id, &cantor_cross_section, &ladder)?;
    for r in &ev.rungs {
        println!(
            "Cantor    n={:<4} classes {:<3} accumulated {}",
            r.n, r.m_classes, r.accumulated
        );
    }
    println!("verdict: {:?}", ev.verdict);
    Ok(())
}
