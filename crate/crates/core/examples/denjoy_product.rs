//! Denjoy counterexample times a vertical rotation. The complement is a
//! family of vertical wandering annuli and the horizontal rotation number is
//! irrational: an irrational semiconjugacy case of type 2.
//!
//! cargo run --release --example denjoy_product [n]

use torus_minimal::classify::{classify_minimal_set, ClassifyParams};
use torus_minimal::dynamics::{denjoy_product_set, Behavior};
use torus_minimal::grid::GridResolution;

fn main() -> torus_minimal::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let d = denjoy_product_set(golden, 2f64.sqrt() - 1.0, 0.5, 64, GridResolution::new(n)?)?;
    println!(
        "{} gaps rasterized into {} columns out of {n}",
        d.gap_columns.len(),
        n - d.set.len() / n
    );
    let report = classify_minimal_set(&d.map, &d.set, &ClassifyParams::default(), None)?;
    println!("class: {}", report.class);
    println!("complementary annuli: {}", report.census.len());
    let wandering = report
        .component_verdicts
        .iter()
        .filter(|c| c.behavior == Behavior::Wandering)
        .count();
    println!("wandering up to horizon {}: {wandering}", report.params.horizon);
    if let Some(o) = report.rotation.as_ref().and_then(|r| r.orthogonal.as_ref()) {
        println!(
            "rotation transverse to {:?}: {:.6} (order reversing chart: {}) -> {}",
            o.vector, o.value, o.order_reversing, o.rational_verdict
        );
    }
    Ok(())
}
