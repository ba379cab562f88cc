//! Frontier operators on an annulus strip: a thick wavy band with a hole,
//! its upper frontier circloid, and the idempotence of the frontier word.
//!
//! cargo run --example circloid_frontier

use torus_minimal::circloid::{
    annulus_chart, circloid_lower_frontier, circloid_upper_frontier, frontier_word, StripSet,
};
use torus_minimal::grid::GridResolution;

fn main() -> torus_minimal::Result<()> {
    let n = GridResolution::new(64)?;
    let chart = annulus_chart(1, 0)?;
    let wave = |x: usize| ((x as f64 / 64.0 * std::f64::consts::TAU).sin() * 5.0).round() as i64;
    let band = StripSet::from_fn(chart, n, |x, v| {
        let d = v - wave(x);
        (-3..=3).contains(&d) && !(x == 20 && d == 0)
    });
    println!("band: {} cells, {} components", band.len(), band.component_count());

    let upper = circloid_upper_frontier(&band)?;
    let lower = circloid_lower_frontier(&band)?;
    println!(
        "upper circloid: {} cells, essential {}",
        upper.body.len(),
        upper.body.is_essential()
    );
    println!(
        "lower circloid: {} cells, essential {}",
        lower.body.len(),
        lower.body.is_essential()
    );
    println!(
        "boundary inside the band's boundary: {}",
        upper.body.boundary().is_subset(&band.boundary())
    );

    let once = frontier_word(&band, "+-")?;
    let twice = frontier_word(&band, "+-+-")?;
    println!("U+-+- = U+-: {}", once.same_cells(&twice));
    Ok(())
}
